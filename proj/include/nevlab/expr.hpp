#pragma once

#include "nevlab/homogeneous.hpp"

namespace nevlab {

// Curve-component expressions over z: complex literals `a+bi` (the
// imaginary unit is a number suffix, `2i`, or bare `i`), `z`, `exp(...)`
// with an argument at most linear in z, operators + - * and integer ^,
// parentheses. Throws PARSE_ERROR / EXP_ARGUMENT with a position.
ExpPoly parse_curve_expression(const std::string& text);

// Form expressions over w0..wN with the same operator set, no exp. The
// result may be inhomogeneous; homogeneity is validated by the caller
// against the declared degree. Unknown or out-of-range variables throw
// DIMENSION_MISMATCH.
MultiPoly parse_form_expression(const std::string& text, int num_vars);

}  // namespace nevlab

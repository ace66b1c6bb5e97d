#include "nevlab/scenario.hpp"

#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "nevlab/expr.hpp"

namespace nevlab {

using json = nlohmann::ordered_json;

RGrid GridSpec::make() const {
  if (spacing == "geometric") return RGrid::geometric(r_min, r_max, points);
  if (spacing == "linear") return RGrid::linear(r_min, r_max, points);
  throw Error("INVALID_VALUE", "unknown grid spacing '" + spacing + "'");
}

bool CheckSpec::operator==(const CheckSpec& o) const {
  return type == o.type && curves == o.curves &&
         hypersurfaces == o.hypersurfaces &&
         multiplicities == o.multiplicities && q == o.q &&
         variable_index == o.variable_index &&
         options.epsilon == o.options.epsilon &&
         options.exceptional_fraction == o.options.exceptional_fraction &&
         options.lhs_scale == o.options.lhs_scale &&
         options.degree_bound == o.options.degree_bound &&
         options.m_max == o.options.m_max &&
         options.truncation == o.options.truncation;
}

bool Scenario::operator==(const Scenario& o) const {
  if (dimension != o.dimension || !(grid == o.grid) || seed != o.seed ||
      curves.size() != o.curves.size() ||
      hypersurfaces.size() != o.hypersurfaces.size() || !(checks == o.checks))
    return false;
  for (std::size_t i = 0; i < curves.size(); ++i) {
    if (curves[i].label != o.curves[i].label ||
        curves[i].component_exprs != o.curves[i].component_exprs)
      return false;
  }
  for (std::size_t i = 0; i < hypersurfaces.size(); ++i) {
    if (hypersurfaces[i].label != o.hypersurfaces[i].label ||
        hypersurfaces[i].form_expr != o.hypersurfaces[i].form_expr ||
        hypersurfaces[i].degree != o.hypersurfaces[i].degree)
      return false;
  }
  return true;
}

const CurveSpec& Scenario::curve(const std::string& label) const {
  for (const auto& c : curves)
    if (c.label == label) return c;
  throw Error("UNRESOLVED_REFERENCE", "unknown curve '" + label + "'");
}

const HypersurfaceSpec& Scenario::hypersurface(const std::string& label) const {
  for (const auto& h : hypersurfaces)
    if (h.label == label) return h;
  throw Error("UNRESOLVED_REFERENCE", "unknown hypersurface '" + label + "'");
}

namespace {

const std::set<std::string> kCheckTypes = {
    "fmt",        "cartan",     "main-smt",        "tf-transfer",
    "counting-transfer", "degeneracy", "uniqueness", "general-position",
    "certificate", "profile"};

CheckOptions parse_options(const json& j) {
  CheckOptions o;
  if (!j.is_object()) return o;
  if (j.contains("epsilon")) o.epsilon = j.at("epsilon").get<double>();
  if (j.contains("exceptional_fraction"))
    o.exceptional_fraction = j.at("exceptional_fraction").get<double>();
  if (j.contains("lhs_scale")) o.lhs_scale = j.at("lhs_scale").get<double>();
  if (j.contains("degree_bound"))
    o.degree_bound = j.at("degree_bound").get<int>();
  if (j.contains("m_max")) o.m_max = j.at("m_max").get<int>();
  if (j.contains("truncation")) o.truncation = j.at("truncation").get<int>();
  return o;
}

json options_to_json(const CheckOptions& o) {
  const CheckOptions defaults;
  json j = json::object();
  if (o.epsilon != defaults.epsilon) j["epsilon"] = o.epsilon;
  if (o.exceptional_fraction != defaults.exceptional_fraction)
    j["exceptional_fraction"] = o.exceptional_fraction;
  if (o.lhs_scale != defaults.lhs_scale) j["lhs_scale"] = o.lhs_scale;
  if (o.degree_bound != defaults.degree_bound)
    j["degree_bound"] = o.degree_bound;
  if (o.m_max != defaults.m_max) j["m_max"] = o.m_max;
  if (o.truncation != defaults.truncation) j["truncation"] = o.truncation;
  return j;
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error("PARSE_ERROR", std::string("scenario is not valid JSON: ") +
                                   e.what());
  }
  try {
    Scenario s;
    if (!doc.contains("N"))
      throw Error("PARSE_ERROR", "missing ambient dimension \"N\"");
    s.dimension = doc.at("N").get<int>();
    if (s.dimension < 1)
      throw Error("INVALID_VALUE", "ambient dimension N must be >= 1");
    if (doc.contains("seed")) s.seed = doc.at("seed").get<unsigned>();
    if (doc.contains("grid")) {
      const auto& g = doc.at("grid");
      if (g.contains("r_min")) s.grid.r_min = g.at("r_min").get<double>();
      if (g.contains("r_max")) s.grid.r_max = g.at("r_max").get<double>();
      if (g.contains("points")) s.grid.points = g.at("points").get<int>();
      if (g.contains("spacing"))
        s.grid.spacing = g.at("spacing").get<std::string>();
    }
    const RGrid grid = s.grid.make();  // validates

    if (doc.contains("curves")) {
      for (const auto& [label, comps] : doc.at("curves").items()) {
        CurveSpec cs;
        cs.label = label;
        if (!comps.is_array() ||
            comps.size() != static_cast<std::size_t>(s.dimension + 1))
          throw Error("DIMENSION_MISMATCH",
                      "curve '" + label + "' needs exactly N+1 = " +
                          std::to_string(s.dimension + 1) + " components");
        std::vector<ExpPoly> parsed;
        for (const auto& c : comps) {
          cs.component_exprs.push_back(c.get<std::string>());
          parsed.push_back(parse_curve_expression(cs.component_exprs.back()));
        }
        cs.curve = reduce_representation(std::move(parsed), label,
                                         grid.r_max());
        s.curves.push_back(std::move(cs));
      }
    }

    if (doc.contains("hypersurfaces")) {
      for (const auto& [label, spec] : doc.at("hypersurfaces").items()) {
        HypersurfaceSpec hs;
        hs.label = label;
        if (!spec.contains("form") || !spec.contains("degree"))
          throw Error("PARSE_ERROR", "hypersurface '" + label +
                                         "' needs \"form\" and \"degree\"");
        hs.form_expr = spec.at("form").get<std::string>();
        hs.degree = spec.at("degree").get<int>();
        MultiPoly p = parse_form_expression(hs.form_expr, s.dimension + 1);
        if (p.is_zero())
          throw Error("INVALID_VALUE",
                      "hypersurface '" + label + "' has a zero defining form");
        hs.hypersurface =
            Hypersurface{HomogeneousPolynomial(std::move(p), hs.degree), label};
        s.hypersurfaces.push_back(std::move(hs));
      }
    }

    if (doc.contains("checks")) {
      for (const auto& c : doc.at("checks")) {
        CheckSpec spec;
        spec.type = c.at("type").get<std::string>();
        if (!kCheckTypes.count(spec.type))
          throw Error("PARSE_ERROR", "unknown check type '" + spec.type + "'");
        if (c.contains("curve"))
          spec.curves.push_back(c.at("curve").get<std::string>());
        if (c.contains("curves"))
          for (const auto& l : c.at("curves"))
            spec.curves.push_back(l.get<std::string>());
        if (c.contains("hypersurface"))
          spec.hypersurfaces.push_back(c.at("hypersurface").get<std::string>());
        if (c.contains("hypersurfaces"))
          for (const auto& l : c.at("hypersurfaces"))
            spec.hypersurfaces.push_back(l.get<std::string>());
        if (c.contains("l"))
          for (const auto& v : c.at("l"))
            spec.multiplicities.push_back(v.get<double>());
        if (c.contains("q")) spec.q = c.at("q").get<int>();
        if (c.contains("variable"))
          spec.variable_index = c.at("variable").get<int>();
        if (c.contains("options")) spec.options = parse_options(c.at("options"));
        spec.options.seed = s.seed;
        // References must resolve now, not at run time.
        for (const auto& l : spec.curves) s.curve(l);
        for (const auto& l : spec.hypersurfaces) s.hypersurface(l);
        s.checks.push_back(std::move(spec));
      }
    }
    return s;
  } catch (const json::exception& e) {
    throw Error("PARSE_ERROR", std::string("scenario structure: ") + e.what());
  }
}

Scenario load_scenario(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in)
    throw Error("IO_ERROR", "cannot read scenario file " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string serialize_scenario(const Scenario& s) {
  json doc;
  doc["N"] = s.dimension;
  if (s.seed != 0) doc["seed"] = s.seed;
  doc["grid"] = {{"r_min", s.grid.r_min},
                 {"r_max", s.grid.r_max},
                 {"points", s.grid.points},
                 {"spacing", s.grid.spacing}};
  json curves = json::object();
  for (const auto& c : s.curves) curves[c.label] = c.component_exprs;
  doc["curves"] = curves;
  json hyps = json::object();
  for (const auto& h : s.hypersurfaces)
    hyps[h.label] = {{"form", h.form_expr}, {"degree", h.degree}};
  doc["hypersurfaces"] = hyps;
  json checks = json::array();
  for (const auto& c : s.checks) {
    json jc;
    jc["type"] = c.type;
    if (!c.curves.empty()) jc["curves"] = c.curves;
    if (!c.hypersurfaces.empty()) jc["hypersurfaces"] = c.hypersurfaces;
    if (!c.multiplicities.empty()) jc["l"] = c.multiplicities;
    if (c.q != 0) jc["q"] = c.q;
    if (c.variable_index >= 0) jc["variable"] = c.variable_index;
    const json opts = options_to_json(c.options);
    if (!opts.empty()) jc["options"] = opts;
    checks.push_back(jc);
  }
  doc["checks"] = checks;
  return doc.dump(2) + "\n";
}

}  // namespace nevlab

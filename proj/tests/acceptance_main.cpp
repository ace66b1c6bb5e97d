// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.
// argv: <nevlab-binary> <scenario-dir> <work-dir>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <numbers>
#include <random>
#include <sstream>

#include "jensen_oracle.hpp"
#include "nevlab/runner.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
using namespace nevlab;
using namespace nevlab::testsupport;
using json = nlohmann::ordered_json;

namespace {

constexpr double kPi = std::numbers::pi;

int failures = 0;
std::string nevlab_bin;
fs::path scenario_dir;
fs::path work_dir;

class Criterion {
 public:
  Criterion(int number, std::string title)
      : number_(number), title_(std::move(title)),
        start_(std::chrono::steady_clock::now()) {}

  void check(bool ok, const std::string& detail) {
    if (!ok) {
      problems_.push_back(detail);
    }
  }

  ~Criterion() {
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      start_)
            .count();
    char line[512];
    if (problems_.empty()) {
      std::snprintf(line, sizeof line, "[PASS] criterion %2d: %s (%.1fs)",
                    number_, title_.c_str(), secs);
      std::cout << line << "\n";
    } else {
      std::snprintf(line, sizeof line, "[FAIL] criterion %2d: %s (%.1fs)",
                    number_, title_.c_str(), secs);
      std::cout << line << "\n";
      for (const auto& p : problems_) std::cout << "        - " << p << "\n";
      ++failures;
    }
  }

  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  int number_;
  std::string title_;
  std::chrono::steady_clock::time_point start_;
  std::vector<std::string> problems_;
};

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = nevlab_bin + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {};
  RunResult res;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe))
    res.output.append(buf, n);
  const int status = pclose(pipe);
  if (WIFEXITED(status)) res.exit_code = WEXITSTATUS(status);
  return res;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Random reduced polynomial curve in P^N with component degrees <= 4.
HolomorphicCurve random_poly_curve(std::mt19937_64& rng, int dimension) {
  std::uniform_int_distribution<int> deg(0, 4);
  std::vector<ExpPoly> comps;
  for (int i = 0; i <= dimension; ++i) {
    std::vector<Complex> coeffs;
    const int d = deg(rng);
    for (int k = 0; k <= d; ++k) coeffs.push_back(random_complex(rng));
    UnivariatePoly p(coeffs);
    if (p.is_zero()) p = UnivariatePoly::constant(Complex(1.0));
    comps.push_back(ExpPoly::from_poly(p));
  }
  return reduce_representation(comps, "random", 55.0);
}

// Random hypersurface of degree <= 3 whose composite with f is nonzero.
Hypersurface random_hypersurface(std::mt19937_64& rng,
                                 const HolomorphicCurve& f) {
  const int nv = static_cast<int>(f.components.size());
  std::uniform_int_distribution<int> deg(1, 3);
  std::uniform_real_distribution<double> pick(0.0, 1.0);
  for (;;) {
    const int d = deg(rng);
    MultiPoly p(nv);
    for (const auto& e : monomials_of_degree(nv, d))
      if (pick(rng) < 0.5) p.add_term(e, random_complex(rng));
    if (p.is_zero()) continue;
    Hypersurface h{HomogeneousPolynomial(p, d), "D"};
    if (!compose(h.defining_form, f).is_zero()) return h;
  }
}

void criterion_1() {
  Criterion c(1, "Jensen-route agreement on 20 random polynomial scenarios");
  std::mt19937_64 rng(1001);
  const RGrid grid = RGrid::geometric(2.0, 50.0, 40);
  std::uniform_int_distribution<int> dim(1, 3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_poly_curve(rng, dim(rng));
    const auto d = random_hypersurface(rng, f);
    const ExpPoly composite = compose(d.defining_form, f);
    const ZeroAtlas atlas = locate_zeros(composite, grid.r_max());
    for (int m : {0, 1, 2}) {
      for (double r : grid.radii) {
        const double closed =
            counting_from_atlas(atlas, effective_radius(atlas, r), m);
        const double numeric = counting_by_integration(atlas, r, m);
        const double tol = 1e-6 * std::max(1.0, std::abs(closed));
        if (std::abs(closed - numeric) > tol) {
          c.check(false, "trial " + std::to_string(trial) + " M=" +
                             std::to_string(m) + " r=" + std::to_string(r) +
                             ": " + std::to_string(closed) + " vs " +
                             std::to_string(numeric));
          return;
        }
      }
    }
  }
  c.check(c.elapsed() < 60.0, "runtime exceeded 60 s");
}

void criterion_2() {
  Criterion c(2, "backend agreement on 50 random polynomials");
  std::mt19937_64 rng(2002);
  std::uniform_int_distribution<int> ndeg(1, 6);
  std::uniform_real_distribution<double> radius(0.2, 2.9);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Complex> roots;
    for (int i = ndeg(rng); i > 0; --i)
      roots.push_back(std::polar(radius(rng), angle(rng)));
    const UnivariatePoly p = poly_from_roots(roots);
    const auto exact = locate_zeros_polynomial(p, 3.0);
    const auto analytic = locate_zeros_analytic(ExpPoly::from_poly(p), 3.0);
    c.check(exact.total_multiplicity() == analytic.total_multiplicity(),
            "trial " + std::to_string(trial) + ": total multiplicity differs");
    for (const auto& z : exact.zeros) {
      bool matched = false;
      for (const auto& az : analytic.zeros)
        if (std::abs(az.location - z.location) <= 1e-6 &&
            az.multiplicity == z.multiplicity)
          matched = true;
      c.check(matched, "trial " + std::to_string(trial) +
                           ": unmatched zero at " +
                           complex_to_string(z.location));
    }
  }
  c.check(c.elapsed() < 60.0, "runtime exceeded 60 s");
}

void criterion_3() {
  Criterion c(3, "FMT residual spread <= 0.05 (10 polynomial + exponential)");
  std::mt19937_64 rng(3003);
  const RGrid grid = RGrid::geometric(2.0, 50.0, 40);
  std::uniform_int_distribution<int> dim(1, 2);
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = random_poly_curve(rng, dim(rng));
    const auto d = random_hypersurface(rng, f);
    const auto rep = check_fmt(f, d, grid);
    c.check(rep.verdict == Verdict::verified_on_grid,
            "polynomial trial " + std::to_string(trial) + ": " +
                verdict_name(rep.verdict));
    c.check(rep.margins.residual_spread <= 0.05,
            "polynomial trial " + std::to_string(trial) + " spread " +
                std::to_string(rep.margins.residual_spread));
  }
  const auto f = reduce_representation(
      {ExpPoly::constant(Complex(1.0)), ExpPoly::exponential(Complex(1.0))},
      "f", grid.r_max());
  const auto d = Hypersurface{
      make_form(2, 2, {{{2, 0}, Complex(1.0)}, {{0, 2}, Complex(1.0)}}), "D3"};
  const auto rep = check_fmt(f, d, grid);
  c.check(rep.verdict == Verdict::verified_on_grid,
          "exponential case: " + verdict_name(rep.verdict));
  c.check(rep.margins.residual_spread <= 0.05,
          "exponential case spread " +
              std::to_string(rep.margins.residual_spread));
}

void criterion_4() {
  Criterion c(4, "characteristic oracle: pi*T/r within 1e-3 of 1 at r=40");
  const auto f = reduce_representation(
      {ExpPoly::constant(Complex(1.0)), ExpPoly::exponential(Complex(1.0))},
      "f", 41.0);
  RGrid grid;
  grid.radii = {40.0};
  const auto t = characteristic(f, grid);
  const double ratio = kPi * t[0] / 40.0;
  c.check(std::abs(ratio - 1.0) <= 1e-3,
          "pi*T/r = " + std::to_string(ratio));
}

void criterion_5() {
  Criterion c(5, "Eq.(41) transfer spread <= 0.05 (tight + two polynomial)");
  const RGrid grid = RGrid::geometric(2.0, 50.0, 40);
  struct Case {
    std::string name;
    HolomorphicCurve f;
    std::vector<Hypersurface> ds;
  };
  std::vector<Case> cases;
  const auto sq0 = make_form(2, 2, {{{2, 0}, Complex(1.0)}});
  const auto sq1 = make_form(2, 2, {{{0, 2}, Complex(1.0)}});
  cases.push_back({"tight",
                   reduce_representation({ExpPoly::constant(Complex(1.0)),
                                          ExpPoly::exponential(Complex(1.0))},
                                         "f", grid.r_max()),
                   {{sq0, "D1"}, {sq1, "D2"}}});
  cases.push_back({"line-squares",
                   reduce_representation(
                       {ExpPoly::constant(Complex(1.0)), ExpPoly::variable()},
                       "f", grid.r_max()),
                   {{sq0, "D1"}, {sq1, "D2"}}});
  cases.push_back(
      {"parabola-squares",
       reduce_representation({ExpPoly::constant(Complex(1.0)),
                              ExpPoly::variable(),
                              ExpPoly::variable() * ExpPoly::variable()},
                             "f", grid.r_max()),
       {{make_form(3, 2, {{{2, 0, 0}, Complex(1.0)}}), "D1"},
        {make_form(3, 2, {{{0, 2, 0}, Complex(1.0)}}), "D2"},
        {make_form(3, 2, {{{0, 0, 2}, Complex(1.0)}}), "D3"}}});
  for (const auto& cs : cases) {
    const auto setup = build_smt_setup(cs.f, cs.ds, grid.r_max());
    const auto rep = check_tf_transfer(cs.f, setup.derived, setup.n, grid);
    c.check(rep.verdict == Verdict::verified_on_grid,
            cs.name + ": " + verdict_name(rep.verdict));
    c.check(rep.margins.residual_spread <= 0.05,
            cs.name + " spread " +
                std::to_string(rep.margins.residual_spread));
  }
}

void criterion_6() {
  Criterion c(6, "counting transfer identity <= 1e-6 everywhere");
  const RGrid grid = RGrid::geometric(2.0, 50.0, 40);
  const auto sq0 = make_form(2, 2, {{{2, 0}, Complex(1.0)}});
  const auto sq1 = make_form(2, 2, {{{0, 2}, Complex(1.0)}});
  struct Case {
    std::string name;
    HolomorphicCurve f;
  };
  std::vector<Case> cases;
  cases.push_back({"tight", reduce_representation(
                                {ExpPoly::constant(Complex(1.0)),
                                 ExpPoly::exponential(Complex(1.0))},
                                "f", grid.r_max())});
  cases.push_back({"line-squares",
                   reduce_representation({ExpPoly::constant(Complex(1.0)),
                                          ExpPoly::variable()},
                                         "f", grid.r_max())});
  for (const auto& cs : cases) {
    std::vector<Hypersurface> ds{{sq0, "D1"}, {sq1, "D2"}};
    // main-smt preconditions must hold for the case to count
    const auto smt = check_main_smt(cs.f, ds, grid);
    c.check(smt.verdict == Verdict::verified_on_grid,
            cs.name + " main-smt preconditions: " + verdict_name(smt.verdict));
    const auto setup = build_smt_setup(cs.f, ds, grid.r_max());
    const auto rep = check_counting_transfer(cs.f, setup, grid);
    c.check(rep.verdict == Verdict::verified_on_grid,
            cs.name + ": " + verdict_name(rep.verdict));
    c.check(rep.margins.residual_spread <= 1e-6,
            cs.name + " worst difference " +
                std::to_string(rep.margins.residual_spread));
  }
}

void criterion_7() {
  Criterion c(7, "Theorem 1.3 tight case: verified and RHS/LHS in [0.95,1.10]");
  const RGrid grid = RGrid::geometric(2.0, 50.0, 40);
  const auto f = reduce_representation(
      {ExpPoly::constant(Complex(1.0)), ExpPoly::exponential(Complex(1.0))},
      "f", grid.r_max());
  std::vector<Hypersurface> ds{
      {make_form(2, 2, {{{2, 0}, Complex(1.0)}}), "D1"},
      {make_form(2, 2, {{{0, 2}, Complex(1.0)}}), "D2"}};
  CheckOptions opts;
  opts.epsilon = 0.05;
  const auto rep = check_main_smt(f, ds, grid, opts);
  c.check(rep.verdict == Verdict::verified_on_grid,
          "verdict: " + verdict_name(rep.verdict));
  for (double r : rep.exceptional_radii)
    c.check(r < 5.0, "violation past r=5 at r=" + std::to_string(r));
  const double ratio = rep.rhs.back() / rep.lhs.back();
  c.check(ratio >= 0.95 && ratio <= 1.10,
          "RHS/LHS at r=50: " + std::to_string(ratio));
}

void criterion_8() {
  Criterion c(8, "Cartan check: parabola verifies, degenerate curve unmet");
  const RGrid grid = RGrid::geometric(2.0, 30.0, 24);
  std::vector<Hypersurface> hs{
      {make_form(3, 1, {{{1, 0, 0}, Complex(1.0)}}), "H0"},
      {make_form(3, 1, {{{0, 1, 0}, Complex(1.0)}}), "H1"},
      {make_form(3, 1, {{{0, 0, 1}, Complex(1.0)}}), "H2"},
      {make_form(3, 1,
                 {{{1, 0, 0}, Complex(1.0)},
                  {{0, 1, 0}, Complex(1.0)},
                  {{0, 0, 1}, Complex(1.0)}}),
       "H3"}};
  const ExpPoly one = ExpPoly::constant(Complex(1.0));
  const ExpPoly z = ExpPoly::variable();
  const auto f = reduce_representation({one, z, z * z}, "f", grid.r_max());
  const auto good = check_cartan(f, hs, grid);
  c.check(good.verdict == Verdict::verified_on_grid,
          "parabola: " + verdict_name(good.verdict));
  const auto g =
      reduce_representation({one, z, z.scaled(Complex(2.0))}, "g",
                            grid.r_max());
  const auto bad = check_cartan(g, hs, grid);
  c.check(bad.verdict == Verdict::hypothesis_unmet,
          "degenerate: " + verdict_name(bad.verdict));
}

void criterion_9() {
  Criterion c(9, "certificates re-expand to 1e-9; norm bound <= 1+1e-6");
  struct Family {
    std::string name;
    std::vector<HomogeneousPolynomial> forms;
    HolomorphicCurve curve;
    double sample_radius;
  };
  const ExpPoly one = ExpPoly::constant(Complex(1.0));
  const ExpPoly z = ExpPoly::variable();
  const ExpPoly ez = ExpPoly::exponential(Complex(1.0));
  std::vector<Family> families;
  families.push_back({"p1-coords",
                      {make_form(2, 1, {{{1, 0}, Complex(1.0)}}),
                       make_form(2, 1, {{{0, 1}, Complex(1.0)}})},
                      reduce_representation({one, z}, "f", 10.0),
                      2.0});
  families.push_back({"p1-squares",
                      {make_form(2, 2, {{{2, 0}, Complex(1.0)}}),
                       make_form(2, 2, {{{0, 2}, Complex(1.0)}})},
                      reduce_representation({one, ez}, "f", 10.0),
                      1.0});
  families.push_back(
      {"p1-mixed",
       {make_form(2, 2, {{{2, 0}, Complex(1.0)}, {{0, 2}, Complex(1.0)}}),
        make_form(2, 2, {{{1, 1}, Complex(1.0)}})},
       reduce_representation({one, z}, "f", 10.0), 2.0});
  families.push_back({"p2-planes",
                      {make_form(3, 1, {{{1, 0, 0}, Complex(1.0)}}),
                       make_form(3, 1, {{{0, 1, 0}, Complex(1.0)}}),
                       make_form(3, 1, {{{0, 0, 1}, Complex(1.0)}})},
                      reduce_representation({one, z, z * z}, "f", 10.0),
                      2.0});
  families.push_back({"p2-squares",
                      {make_form(3, 2, {{{2, 0, 0}, Complex(1.0)}}),
                       make_form(3, 2, {{{0, 2, 0}, Complex(1.0)}}),
                       make_form(3, 2, {{{0, 0, 2}, Complex(1.0)}})},
                      reduce_representation({one, z, z * z}, "f", 10.0),
                      1.5});
  for (const auto& fam : families) {
    const auto set = find_certificate_set(fam.forms);
    for (const auto& cert : set.certificates)
      c.check(cert.residual <= 1e-9,
              fam.name + " var " + std::to_string(cert.variable_index) +
                  " residual " + std::to_string(cert.residual));
    std::vector<Complex> samples;
    for (int k = 0; k < 64; ++k)
      samples.push_back(
          std::polar(fam.sample_radius, 2.0 * kPi * k / 64));
    const double ratio = verify_norm_bound(set, fam.curve, samples);
    c.check(ratio <= 1.0 + 1e-6,
            fam.name + " norm-bound ratio " + std::to_string(ratio));
  }
}

void criterion_10() {
  Criterion c(10, "degeneracy criterion verdicts with threshold flag");
  const auto a =
      evaluate_degeneracy_criterion(MultiplicityProfile{{10, 10, 10}}, 2);
  c.check(a.verdict == Verdict::degeneracy_implied,
          "q=2 l=(10,10,10): " + verdict_name(a.verdict));
  const auto b =
      evaluate_degeneracy_criterion(MultiplicityProfile{{4, 4, 4, 4}}, 3);
  c.check(b.verdict == Verdict::not_implied,
          "q=3 l=(4,4,4,4): " + verdict_name(b.verdict));
  const auto d =
      evaluate_degeneracy_criterion(MultiplicityProfile{{10, 10, 10, 10}}, 3);
  c.check(d.verdict == Verdict::not_implied,
          "q=3 l=(10,10,10,10): " + verdict_name(d.verdict));
  bool flagged = false;
  for (const auto& n : d.notes)
    if (n.find("threshold-dependent") != std::string::npos) flagged = true;
  c.check(flagged, "threshold mismatch not flagged");
}

void criterion_11() {
  Criterion c(11, "uniqueness harness: trivial, shared-set witness, degree");
  const auto identical = run_cli(
      "run " + (scenario_dir / "uniqueness_identical.json").string() +
      " --out " + (work_dir / "uniq_id").string());
  c.check(identical.exit_code == 0,
          "identical curves exit " + std::to_string(identical.exit_code));
  const std::string id_report =
      slurp(work_dir / "uniq_id" / "01-uniqueness" / "report.json");
  c.check(id_report.find("trivially consistent") != std::string::npos,
          "identical-curve report lacks the trivial-consistency note");

  const auto mirror = run_cli(
      "run " + (scenario_dir / "uniqueness_mirror.json").string() + " --out " +
      (work_dir / "uniq_mirror").string());
  c.check(mirror.exit_code == 2,
          "mirror curves exit " + std::to_string(mirror.exit_code));
  const json rep = json::parse(
      slurp(work_dir / "uniq_mirror" / "01-uniqueness" / "report.json"));
  c.check(rep.at("verdict") == "shared-set-fails",
          "mirror verdict: " + rep.at("verdict").get<std::string>());
  const double wre = rep.at("witness_point").at("re").get<double>();
  const double wim = rep.at("witness_point").at("im").get<double>();
  c.check(std::abs(Complex(wre, wim) - Complex(0.0, kPi / 2)) <= 1e-6,
          "witness point (" + std::to_string(wre) + ", " +
              std::to_string(wim) + ") not at i pi/2");

  const auto lowdeg = run_cli(
      "run " + (scenario_dir / "uniqueness_low_degree.json").string());
  c.check(lowdeg.exit_code == 2,
          "low-degree scenario exit " + std::to_string(lowdeg.exit_code));
}

void criterion_12(double total_elapsed) {
  Criterion c(12, "determinism: byte-identical artifacts; suite under 5 min");
  const std::vector<std::string> files = {"tight_p1.json",
                                          "cartan_parabola.json",
                                          "uniqueness_mirror.json",
                                          "degeneracy_arithmetic.json"};
  for (const auto& file : files) {
    const fs::path a = work_dir / ("det_a_" + file);
    const fs::path b = work_dir / ("det_b_" + file);
    run_cli("run " + (scenario_dir / file).string() + " --seed 7 --out " +
            a.string());
    run_cli("run " + (scenario_dir / file).string() + " --seed 7 --out " +
            b.string());
    std::vector<fs::path> rel;
    for (const auto& e : fs::recursive_directory_iterator(a))
      if (e.is_regular_file()) rel.push_back(fs::relative(e.path(), a));
    std::sort(rel.begin(), rel.end());
    c.check(!rel.empty(), file + ": no artifacts written");
    for (const auto& r : rel) {
      if (!fs::exists(b / r)) {
        c.check(false, file + ": missing " + r.string() + " in second run");
        continue;
      }
      c.check(slurp(a / r) == slurp(b / r),
              file + ": " + r.string() + " differs between runs");
    }
  }
  c.check(total_elapsed + c.elapsed() < 300.0,
          "suite wall clock " + std::to_string(total_elapsed) + " s");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 4) {
    std::cerr << "usage: acceptance <nevlab> <scenario-dir> <work-dir>\n";
    return 2;
  }
  nevlab_bin = argv[1];
  scenario_dir = argv[2];
  work_dir = argv[3];
  fs::remove_all(work_dir);
  fs::create_directories(work_dir);

  const auto t0 = std::chrono::steady_clock::now();
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  criterion_12(elapsed);

  if (failures == 0) {
    std::cout << "acceptance: all criteria passed\n";
    return 0;
  }
  std::cout << "acceptance: " << failures << " criterion(s) failed\n";
  return 1;
}

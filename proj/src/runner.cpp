#include "nevlab/runner.hpp"

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "nevlab/parallel.hpp"

namespace nevlab {

using json = nlohmann::ordered_json;

namespace {

json number(double v) {
  // nlohmann serializes doubles with 17 significant digits already; this
  // keeps NaN/inf textual instead of null.
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? json("nan") : json(v > 0 ? "inf" : "-inf");
}

json complex_json(Complex c) {
  return json{{"re", number(c.real())}, {"im", number(c.imag())}};
}

json report_to_json(const TheoremReport& rep) {
  json j;
  j["schema"] = 1;
  j["theorem"] = rep.theorem;
  j["verdict"] = verdict_name(rep.verdict);
  json hyps = json::array();
  for (const auto& h : rep.hypotheses)
    hyps.push_back({{"name", h.name},
                    {"status", hypothesis_status_name(h.status)},
                    {"detail", h.detail}});
  j["hypotheses"] = hyps;
  j["margins"] = {{"min_slack", number(rep.margins.min_slack)},
                  {"fitted_constant", number(rep.margins.fitted_constant)},
                  {"residual_spread", number(rep.margins.residual_spread)}};
  if (rep.witness_radius) j["witness_radius"] = number(*rep.witness_radius);
  if (rep.witness_point) j["witness_point"] = complex_json(*rep.witness_point);
  if (!rep.exceptional_radii.empty()) {
    json ex = json::array();
    for (double r : rep.exceptional_radii) ex.push_back(number(r));
    j["exceptional_radii"] = ex;
  }
  if (!rep.notes.empty()) j["notes"] = rep.notes;
  if (!rep.radii.empty()) {
    json rj = json::array(), lj = json::array(), hj = json::array();
    for (double r : rep.radii) rj.push_back(number(r));
    for (double v : rep.lhs) lj.push_back(number(v));
    for (double v : rep.rhs) hj.push_back(number(v));
    j["radii"] = rj;
    j["lhs"] = lj;
    j["rhs"] = hj;
  } else if (!rep.lhs.empty()) {
    j["lhs"] = number(rep.lhs[0]);
    j["rhs"] = number(rep.rhs[0]);
  }
  return j;
}

std::string format_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string report_to_text(const TheoremReport& rep) {
  std::ostringstream os;
  os << "theorem: " << rep.theorem << "\n";
  os << "verdict: " << verdict_name(rep.verdict) << "\n";
  for (const auto& h : rep.hypotheses)
    os << "hypothesis: " << h.name << " = "
       << hypothesis_status_name(h.status) << " (" << h.detail << ")\n";
  os << "min_slack: " << format_g(rep.margins.min_slack) << "\n";
  os << "fitted_constant: " << format_g(rep.margins.fitted_constant) << "\n";
  os << "residual_spread: " << format_g(rep.margins.residual_spread) << "\n";
  if (rep.witness_radius)
    os << "witness_radius: " << format_g(*rep.witness_radius) << "\n";
  if (rep.witness_point)
    os << "witness_point: " << complex_to_string(*rep.witness_point) << "\n";
  for (const auto& n : rep.notes) os << "note: " << n << "\n";
  if (!rep.exceptional_radii.empty()) {
    os << "exceptional_radii:";
    for (double r : rep.exceptional_radii) os << " " << format_g(r);
    os << "\n";
  }
  if (!rep.radii.empty()) {
    os << "\nr,lhs,rhs\n";
    for (std::size_t i = 0; i < rep.radii.size(); ++i)
      os << format_g(rep.radii[i]) << "," << format_g(rep.lhs[i]) << ","
         << format_g(rep.rhs[i]) << "\n";
  } else if (!rep.lhs.empty()) {
    os << "\nlhs,rhs\n"
       << format_g(rep.lhs[0]) << "," << format_g(rep.rhs[0]) << "\n";
  }
  return os.str();
}

std::string report_to_csv(const TheoremReport& rep) {
  if (rep.radii.empty()) return "";
  std::ostringstream os;
  os << "r,lhs,rhs";
  for (const auto& [tag, v] : rep.columns) os << "," << tag;
  os << "\n";
  for (std::size_t i = 0; i < rep.radii.size(); ++i) {
    os << format_g(rep.radii[i]) << "," << format_g(rep.lhs[i]) << ","
       << format_g(rep.rhs[i]);
    for (const auto& [tag, v] : rep.columns) os << "," << format_g(v[i]);
    os << "\n";
  }
  return os.str();
}

CheckResult from_report(const TheoremReport& rep, const std::string& name) {
  CheckResult res;
  res.name = name;
  res.verdict = verdict_name(rep.verdict);
  res.exit_code = verdict_exit_code(rep.verdict);
  res.report_json = report_to_json(rep).dump(2) + "\n";
  res.report_text = report_to_text(rep);
  res.profile_csv = report_to_csv(rep);
  return res;
}

std::vector<Hypersurface> resolve_hypersurfaces(const Scenario& s,
                                                const CheckSpec& c) {
  std::vector<Hypersurface> out;
  if (c.hypersurfaces.empty()) {
    for (const auto& h : s.hypersurfaces) out.push_back(*h.hypersurface);
  } else {
    for (const auto& label : c.hypersurfaces)
      out.push_back(*s.hypersurface(label).hypersurface);
  }
  return out;
}

const HolomorphicCurve& resolve_curve(const Scenario& s, const CheckSpec& c,
                                      std::size_t index = 0) {
  if (c.curves.size() <= index)
    throw Error("UNRESOLVED_REFERENCE",
                "check '" + c.type + "' needs a curve reference");
  return s.curve(c.curves[index]).curve;
}

CheckResult run_general_position(const Scenario& s, const CheckSpec& c,
                                 const std::string& name) {
  const auto ds = resolve_hypersurfaces(s, c);
  const auto rep = check_general_position(ds, s.dimension, c.options.m_max,
                                          c.options.seed);
  json j;
  j["schema"] = 1;
  j["check"] = "general-position";
  std::string status;
  int exit_code = 0;
  switch (rep.status) {
    case GeneralPosition::yes:
      status = "in-general-position";
      exit_code = 0;
      break;
    case GeneralPosition::no:
      status = "not-in-general-position";
      exit_code = 1;
      break;
    case GeneralPosition::undecided_at_bound:
      status = "undecided-at-bound";
      exit_code = 2;
      break;
  }
  j["verdict"] = status;
  json subsets = json::array();
  std::ostringstream text;
  text << "check: general-position\nverdict: " << status << "\n";
  for (const auto& sub : rep.subsets) {
    json js;
    js["indices"] = sub.indices;
    json labels = json::array();
    text << "subset";
    for (int idx : sub.indices) {
      labels.push_back(ds[idx].label);
      text << " " << ds[idx].label;
    }
    js["labels"] = labels;
    js["certified"] = sub.certified;
    text << ": " << (sub.certified ? "certified" : "no certificate") << "\n";
    subsets.push_back(js);
  }
  j["subsets"] = subsets;
  if (!rep.common_zero.empty()) {
    json pt = json::array();
    for (const auto& v : rep.common_zero) pt.push_back(complex_json(v));
    j["common_zero"] = pt;
    text << "common_zero:";
    for (const auto& v : rep.common_zero)
      text << " " << complex_to_string(v);
    text << "\n";
  }
  CheckResult res;
  res.name = name;
  res.verdict = status;
  res.exit_code = exit_code;
  res.report_json = j.dump(2) + "\n";
  res.report_text = text.str();
  return res;
}

CheckResult run_certificate(const Scenario& s, const CheckSpec& c,
                            const std::string& name) {
  auto ds = resolve_hypersurfaces(s, c);
  std::vector<HomogeneousPolynomial> forms;
  for (const auto& d : ds) forms.push_back(d.defining_form);
  auto [n, normalized] = normalize_degrees(forms);
  json j;
  j["schema"] = 1;
  j["check"] = "certificate";
  j["common_degree"] = n;
  std::ostringstream text;
  text << "check: certificate\ncommon_degree: " << n << "\n";
  CheckResult res;
  res.name = name;
  try {
    if (c.variable_index >= 0) {
      const auto cert = find_nullstellensatz_certificate(
          normalized, c.variable_index, c.options.m_max);
      j["variable"] = cert.variable_index;
      j["m_k"] = cert.exponent;
      j["c1"] = number(cert.bound_constant);
      j["residual"] = number(cert.residual);
      json cofs = json::array();
      text << "variable: " << cert.variable_index << "\nm_k: " << cert.exponent
           << "\nc1: " << format_g(cert.bound_constant) << "\n";
      for (std::size_t i = 0; i < cert.cofactors.size(); ++i) {
        cofs.push_back(cert.cofactors[i].to_string());
        text << "b_" << cert.variable_index << i << ": "
             << cert.cofactors[i].to_string() << "\n";
      }
      j["cofactors"] = cofs;
    } else {
      const auto set = find_certificate_set(normalized, c.options.m_max);
      j["c1"] = number(set.c1);
      text << "c1: " << format_g(set.c1) << "\n";
      json certs = json::array();
      for (const auto& cert : set.certificates) {
        json jc;
        jc["variable"] = cert.variable_index;
        jc["m_k"] = cert.exponent;
        jc["residual"] = number(cert.residual);
        json cofs = json::array();
        for (const auto& b : cert.cofactors) cofs.push_back(b.to_string());
        jc["cofactors"] = cofs;
        certs.push_back(jc);
        text << "variable " << cert.variable_index << ": m_k = "
             << cert.exponent << "\n";
      }
      j["certificates"] = certs;
    }
    j["verdict"] = "certificate-found";
    res.verdict = "certificate-found";
    res.exit_code = 0;
  } catch (const Error& e) {
    if (std::string(e.code()) != "NO_CERTIFICATE") throw;
    j["verdict"] = "no-certificate";
    j["error"] = e.what();
    text << "verdict: no-certificate\nerror: " << e.what() << "\n";
    res.verdict = "no-certificate";
    res.exit_code = 2;
  }
  text << "verdict: " << res.verdict << "\n";
  res.report_json = j.dump(2) + "\n";
  res.report_text = text.str();
  return res;
}

CheckResult run_profile(const Scenario& s, const CheckSpec& c,
                        const std::string& name) {
  const auto& f = resolve_curve(s, c);
  const RGrid grid = s.grid.make();
  NevanlinnaProfile prof;
  prof.grid = grid;
  prof.add("T_" + c.curves[0], characteristic(f, grid));
  if (!c.hypersurfaces.empty()) {
    for (const auto& label : c.hypersurfaces) {
      const auto& d = *s.hypersurface(label).hypersurface;
      std::vector<int> truncs;
      if (c.options.truncation >= 1) truncs.push_back(c.options.truncation);
      const auto hp = hypersurface_profile(f, d, grid, truncs, true);
      prof.add("m_f(" + label + ")", hp.proximity);
      prof.add("N_f(" + label + ")", hp.counting_full);
      for (const auto& [m, col] : hp.counting_truncated)
        prof.add("N_f^" + std::to_string(m) + "(" + label + ")", col);
    }
  }
  json j;
  j["schema"] = 1;
  j["check"] = "profile";
  j["verdict"] = "verified-on-grid";
  j["columns"] = [&] {
    json cols = json::array();
    cols.push_back("r");
    for (const auto& [tag, v] : prof.values) cols.push_back(tag);
    return cols;
  }();
  CheckResult res;
  res.name = name;
  res.verdict = "verified-on-grid";
  res.exit_code = 0;
  res.report_json = j.dump(2) + "\n";
  res.report_text = "check: profile\nverdict: verified-on-grid\n";
  res.profile_csv = prof.to_csv();
  return res;
}

}  // namespace

CheckResult run_check(const Scenario& s, const CheckSpec& c, int index) {
  char prefix[16];
  std::snprintf(prefix, sizeof prefix, "%02d-", index + 1);
  const std::string name = prefix + c.type;
  const RGrid grid = s.grid.make();

  if (c.type == "fmt") {
    const auto& f = resolve_curve(s, c);
    if (c.hypersurfaces.empty())
      throw Error("UNRESOLVED_REFERENCE", "fmt check needs a hypersurface");
    const auto& d = *s.hypersurface(c.hypersurfaces[0]).hypersurface;
    return from_report(check_fmt(f, d, grid, c.options), name);
  }
  if (c.type == "cartan") {
    const auto& f = resolve_curve(s, c);
    const auto hs = resolve_hypersurfaces(s, c);
    return from_report(check_cartan(f, hs, grid, c.options), name);
  }
  if (c.type == "main-smt") {
    const auto& f = resolve_curve(s, c);
    const auto ds = resolve_hypersurfaces(s, c);
    return from_report(check_main_smt(f, ds, grid, c.options), name);
  }
  if (c.type == "tf-transfer") {
    const auto& f = resolve_curve(s, c);
    const auto ds = resolve_hypersurfaces(s, c);
    const auto setup = build_smt_setup(f, ds, grid.r_max());
    return from_report(
        check_tf_transfer(f, setup.derived, setup.n, grid, c.options), name);
  }
  if (c.type == "counting-transfer") {
    const auto& f = resolve_curve(s, c);
    const auto ds = resolve_hypersurfaces(s, c);
    const auto setup = build_smt_setup(f, ds, grid.r_max());
    return from_report(check_counting_transfer(f, setup, grid, c.options),
                       name);
  }
  if (c.type == "degeneracy") {
    MultiplicityProfile profile;
    int q = c.q;
    if (!c.multiplicities.empty()) {
      profile.l = c.multiplicities;
      if (q == 0) q = static_cast<int>(c.multiplicities.size()) - 1;
    } else {
      const auto& f = resolve_curve(s, c);
      const auto ds = resolve_hypersurfaces(s, c);
      const auto setup = build_smt_setup(f, ds, grid.r_max());
      profile = make_multiplicity_profile(f, setup.with_sum, grid.r_max());
      q = static_cast<int>(ds.size());
    }
    return from_report(evaluate_degeneracy_criterion(profile, q), name);
  }
  if (c.type == "uniqueness") {
    if (c.curves.size() < 2)
      throw Error("UNRESOLVED_REFERENCE",
                  "uniqueness check needs two curve references");
    const auto& f = resolve_curve(s, c, 0);
    const auto& g = resolve_curve(s, c, 1);
    const auto ds = resolve_hypersurfaces(s, c);
    return from_report(run_uniqueness_experiment(f, g, ds, grid, c.options),
                       name);
  }
  if (c.type == "general-position") return run_general_position(s, c, name);
  if (c.type == "certificate") return run_certificate(s, c, name);
  if (c.type == "profile") return run_profile(s, c, name);
  throw Error("PARSE_ERROR", "unknown check type '" + c.type + "'");
}

void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content) {
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw Error("IO_ERROR", "cannot write " + tmp);
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

int run_scenario(const Scenario& scenario,
                 const std::filesystem::path& out_dir,
                 std::vector<CheckResult>* results) {
  std::vector<CheckResult> local(scenario.checks.size());
  std::vector<std::exception_ptr> errors(scenario.checks.size());
  parallel_for(scenario.checks.size(), [&](std::size_t i) {
    try {
      local[i] = run_check(scenario, scenario.checks[i], static_cast<int>(i));
    } catch (...) {
      errors[i] = std::current_exception();
    }
  });
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    for (const auto& res : local) {
      const auto dir = out_dir / res.name;
      std::filesystem::create_directories(dir);
      write_file_atomic(dir / "report.json", res.report_json);
      write_file_atomic(dir / "report.txt", res.report_text);
      if (!res.profile_csv.empty())
        write_file_atomic(dir / "profile.csv", res.profile_csv);
    }
  }

  int exit_code = 0;
  bool any_violated = false, any_unmet = false;
  for (const auto& res : local) {
    if (res.exit_code == 1) any_violated = true;
    if (res.exit_code == 2) any_unmet = true;
  }
  if (any_unmet)
    exit_code = 2;
  else if (any_violated)
    exit_code = 1;
  if (results) *results = std::move(local);
  return exit_code;
}

}  // namespace nevlab

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include <qdisc/classify.hpp>
#include <qdisc/state_io.hpp>

#include "verify_suite.hpp"

namespace {

using namespace qdisc;
using ojson = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitUnphysical = 3;
constexpr int kExitNotConverged = 4;

constexpr const char* kScanVersion = "# qdisc scan v1";
constexpr const char* kScanHeader =
    "t,d2_exact_or_bound,d1_exact_or_blank,d1_lower,d1_numeric,negativity,realignment_negativity,ppt";

struct RunConfig {
  double tol = 1e-10;
  int starts = 32;
  std::uint64_t seed = 0;
  int max_iter = 2000;
  std::string format = "json";
  std::string out;

  MinimizerConfig minimizer() const {
    if (starts < 1) throw InvalidInput("--starts must be >= 1");
    if (!(tol > 0.0)) throw InvalidInput("--tol must be positive");
    if (max_iter < 1) throw InvalidInput("--max-iter must be >= 1");
    return {starts, seed, tol, max_iter};
  }
};

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

// Writes to --out when given, stdout otherwise.
void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw InvalidInput("cannot write '" + out + "'");
  f << text;
}

ojson matrix_json(const RMatrix& m) {
  ojson a = ojson::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ojson row = ojson::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    a.push_back(row);
  }
  return a;
}

// ---- basis -----------------------------------------------------------------

int cmd_basis(int d, const RunConfig& cfg) {
  const Algebra alg(d);
  const GellMannBasis& b = alg.basis;
  const int n = b.size();
  double orth = 0.0, dsum = 0.0, fsum = 0.0, d2 = 0.0, f2 = 0.0;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      orth = std::max(orth, std::abs(trace_product(b[j], b[k]) - (j == k ? 2.0 : 0.0)));
      for (int l = 0; l < n; ++l) {
        const double dh = alg.tensors.dhat(j, k, l), fh = alg.tensors.fhat(j, k, l);
        dsum += dh;
        fsum += std::abs(fh);
        d2 += dh * dh;
        f2 += fh * fh;
      }
    }
  std::vector<int> diag1;
  for (int p : b.diagonal_indices()) diag1.push_back(p + 1);

  std::ostringstream os;
  if (cfg.format == "csv") {
    os << "# qdisc basis v1\n";
    os << "# d=" << d << " generators=" << n << " orthogonality_residual=" << num(orth) << "\n";
    os << "# dhat_sum=" << num(dsum) << " dhat_sq_sum=" << num(d2) << " fhat_abs_sum=" << num(fsum)
       << " fhat_sq_sum=" << num(f2) << "\n";
    os << "# diagonal_indices=";
    for (std::size_t i = 0; i < diag1.size(); ++i) os << (i ? " " : "") << diag1[i];
    os << "\n";
    os << "index,row,col,re,im\n";
    for (int j = 0; j < n; ++j)
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
          if (b[j](r, c) != Complex(0.0, 0.0))
            os << j + 1 << "," << r << "," << c << "," << num(b[j](r, c).real()) << ","
               << num(b[j](r, c).imag()) << "\n";
  } else {
    ojson j;
    j["d"] = d;
    j["generators"] = n;
    j["dprime"] = b.dprime();
    j["dprimeprime"] = b.dprimeprime();
    j["diagonal_indices"] = diag1;
    j["checksums"] = {{"orthogonality_residual", orth},
                      {"dhat_sum", dsum},
                      {"dhat_sq_sum", d2},
                      {"fhat_abs_sum", fsum},
                      {"fhat_sq_sum", f2}};
    ojson gens = ojson::array();
    for (int k = 0; k < n; ++k)
      gens.push_back({{"index", k + 1}, {"re", matrix_json(b[k].real())}, {"im", matrix_json(b[k].imag())}});
    j["matrices"] = gens;
    os << j.dump(2) << "\n";
  }
  emit(os.str(), cfg.out);
  return kExitOk;
}

// ---- discord ---------------------------------------------------------------

ojson estimate_json(const std::string& quantity, const DiscordEstimate& e) {
  ojson j;
  j["quantity"] = quantity;
  j["method"] = to_string(e.method);
  j["value"] = e.value;
  if (e.method == Method::numerical_min) {
    j["converged"] = e.converged;
    j["best_residual"] = e.best_residual;
    j["starts"] = e.starts;
    j["seed"] = e.seed;
    j["iterations"] = e.iterations;
    ojson th = ojson::array();
    for (Eigen::Index k = 0; k < e.theta.size(); ++k) th.push_back(e.theta(k));
    j["theta"] = th;
  }
  return j;
}

DiscordEstimate simple_estimate(double v, Method m) {
  DiscordEstimate e;
  e.value = v;
  e.method = m;
  return e;
}

int cmd_discord(const std::string& path, bool numeric, const RunConfig& cfg) {
  const MinimizerConfig mc = cfg.minimizer();
  const TwoQuditState s = require_physical(load_state(path), "state file");
  const Algebra alg(s.d());
  const GellMannBasis& b = alg.basis;

  std::vector<std::pair<std::string, DiscordEstimate>> est;
  ojson corr;
  corr["lmm"] = s.is_lmm();
  if (s.is_lmm()) {
    const CorrelationAnalysis a = analyze_correlation(alg, s.K());
    corr["orthogonal"] = a.orthogonal;
    corr["t"] = a.t;
    corr["jordan"] = a.orthogonal ? to_string(a.kind) : "none";
    const char* cls = a.kind == JordanKind::automorphism        ? "a"
                      : a.kind == JordanKind::anti_automorphism ? "aa"
                                                                : "none";
    corr["class"] = cls;
    if (const auto v = analytic_d1(alg, s)) est.emplace_back("D1", simple_estimate(*v, Method::analytic));
    if (a.orthogonal) est.emplace_back("D2", simple_estimate(d2_exact_orthogonal(s.d(), a.t), Method::analytic));
    const LowerBounds lb = lower_bounds(b, s.K());
    est.emplace_back("D1", simple_estimate(lb.d1, Method::lower_bound));
    est.emplace_back("D2", simple_estimate(lb.d2, Method::lower_bound));
  }
  bool converged = true;
  if (numeric) {
    const DiscordEstimate d1 = minimize_d1(b, s, mc);
    const DiscordEstimate d2 = minimize_d2(b, s, mc);
    converged = d1.converged && d2.converged;
    est.emplace_back("D1", d1);
    est.emplace_back("D2", d2);
  }
  const EntanglementReport er = entanglement_report(s.rho(), s.d());

  std::ostringstream os;
  if (cfg.format == "csv") {
    os << "# qdisc discord v1\n";
    os << "quantity,method,value,converged\n";
    for (const auto& [q, e] : est)
      os << q << "," << to_string(e.method) << "," << num(e.value) << ","
         << (e.method == Method::numerical_min ? (e.converged ? "1" : "0") : "") << "\n";
  } else {
    ojson j;
    j["d"] = s.d();
    j["correlation"] = corr;
    ojson arr = ojson::array();
    for (const auto& [q, e] : est) arr.push_back(estimate_json(q, e));
    j["estimates"] = arr;
    j["entanglement"] = {{"negativity", er.negativity},
                         {"realignment_negativity", er.realignment_negativity},
                         {"reduction_min_eig", er.reduction_min_eig},
                         {"min_pt_eigenvalue", er.min_pt_eigenvalue},
                         {"gurvits_barnum_separable", er.gurvits_barnum_separable},
                         {"ppt", er.ppt}};
    os << j.dump(2) << "\n";
  }
  emit(os.str(), cfg.out);
  if (!converged) {
    std::cerr << "warning: minimizer did not reach the requested tolerance\n";
    return kExitNotConverged;
  }
  return kExitOk;
}

// ---- scan ------------------------------------------------------------------

struct ScanFamily {
  RMatrix K1;  // K(t) = t·K1
  Interval default_range;
};

std::vector<double> parse_weights(const std::string& s, std::size_t count, const std::string& family) {
  std::vector<double> w;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw InvalidInput(family + ": cannot parse weight '" + item + "'");
    w.push_back(v);
  }
  if (w.size() != count)
    throw InvalidInput(family + ": expected " + std::to_string(count) + " comma-separated weights");
  for (double v : w)
    if (!(v >= 0.0 && v <= 1.0)) throw InvalidInput(family + ": weights must lie in [0, 1]");
  return w;
}

ScanFamily make_family(const std::string& spec, const GellMannBasis& b) {
  const int d = b.d();
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  const int n = b.size();
  auto require_d3 = [&] {
    if (d != 3) throw InvalidInput("family '" + kind + "' requires --d 3");
  };
  ScanFamily f;
  if (kind == "werner" && arg.empty()) {
    f.K1 = RMatrix::Identity(n, n);
  } else if (kind == "isotropic" && arg.empty()) {
    f.K1 = transposition_matrix(b);
  } else if (kind == "sign") {
    require_d3();
    f.K1 = SignMatrix::from_string(arg).matrix();
  } else if (kind == "pair") {
    require_d3();
    const double pa = parse_weights(arg, 1, "pair")[0];
    f.K1 = bell_diagonal(b, {{BellLabel{0, 0}, pa}, {BellLabel{2, 2}, 1.0 - pa}}).K();
    f.default_range = {0.0, 1.0};
    return f;
  } else if (kind == "line") {
    require_d3();
    const auto w = parse_weights(arg, 3, "line");
    if (std::abs(w[0] + w[1] + w[2] - 1.0) > 1e-12) throw InvalidInput("line: weights must sum to 1");
    f.K1 = bell_diagonal(b, {{BellLabel{0, 0}, w[0]}, {BellLabel{1, 1}, w[1]}, {BellLabel{2, 2}, w[2]}}).K();
    f.default_range = {0.0, 1.0};
    return f;
  } else {
    throw InvalidInput("unknown family '" + spec +
                       "' (expected sign:<8 signs>, isotropic, werner, pair:<p>, line:<p1,p2,p3>)");
  }
  f.default_range = t_range(correlation_family(b, f.K1));
  return f;
}

int cmd_scan(const std::string& spec, int d, std::optional<double> t_min, std::optional<double> t_max, int steps,
             bool numeric, const RunConfig& cfg) {
  const MinimizerConfig mc = cfg.minimizer();
  if (steps < 1) throw InvalidInput("--t-steps must be >= 1");
  const Algebra alg(d);
  const GellMannBasis& b = alg.basis;
  const ScanFamily fam = make_family(spec, b);
  const double lo = t_min.value_or(fam.default_range.lo);
  const double hi = t_max.value_or(fam.default_range.hi);
  if (!(lo <= hi)) throw InvalidInput("--t-min must not exceed --t-max");
  if (steps == 1 && lo != hi) throw InvalidInput("--t-steps 1 needs --t-min equal to --t-max");

  std::ostringstream os;
  os << kScanVersion << " family=" << spec << " d=" << d << "\n" << kScanHeader << "\n";
  bool converged = true;
  for (int i = 0; i < steps; ++i) {
    const double t = steps == 1 ? lo : (i == steps - 1 ? hi : lo + (hi - lo) * i / (steps - 1));
    const TwoQuditState s = require_physical(lmm_state(b, RMatrix(t * fam.K1)), "scan grid point");
    const CorrelationAnalysis a = analyze_correlation(alg, s.K());
    const LowerBounds lb = lower_bounds(b, s.K());
    const double d2 = a.orthogonal ? d2_exact_orthogonal(d, a.t) : lb.d2;
    const std::optional<double> d1 = analytic_d1(alg, s);
    std::string d1n;
    if (numeric) {
      const DiscordEstimate e = minimize_d1(b, s, mc);
      converged = converged && e.converged;
      d1n = num(e.value);
    }
    const double neg = negativity(s.rho(), d);
    const double rneg = realignment_negativity(s.rho(), d);
    const bool ppt = min_pt_eigenvalue(s.rho(), d) >= -1e-9;
    os << num(t) << "," << num(d2) << "," << (d1 ? num(*d1) : "") << "," << num(lb.d1) << "," << d1n << ","
       << num(neg) << "," << num(rneg) << "," << (ppt ? 1 : 0) << "\n";
  }
  emit(os.str(), cfg.out);
  if (!converged) {
    std::cerr << "warning: minimizer did not reach the requested tolerance at some grid point\n";
    return kExitNotConverged;
  }
  return kExitOk;
}

// ---- appendix-c ------------------------------------------------------------

ojson interval_json(const Interval& r) { return ojson::array({r.lo, r.hi}); }

ojson sign_list(const std::vector<SignMatrix>& v) {
  ojson a = ojson::array();
  for (const auto& m : v) a.push_back(m.str());
  return a;
}

int cmd_appendix_c(bool as_json, bool fixtures, const RunConfig& cfg) {
  const Algebra alg(3);
  const AppendixCReport rep = appendix_c_report(alg, cfg.seed);
  std::optional<AppendixBReport> brep;
  if (fixtures) brep = verify_appendix_b(alg.basis);

  std::ostringstream os;
  if (as_json) {
    ojson j;
    j["counts_match"] = rep.counts_match;
    ojson classes = ojson::array();
    for (const auto& c : rep.classes) {
      ojson r;
      r["id"] = c.class_id;
      r["index"] = c.index;
      r["mirror"] = c.mirror;
      r["size"] = c.members.size();
      ojson sl = ojson::array();
      for (Eigen::Index k = 0; k < c.slopes.size(); ++k) sl.push_back(c.slopes(k));
      r["slopes"] = sl;
      r["t_range"] = interval_json(c.t_range);
      r["ppt_range"] = interval_json(c.ppt_range);
      r["negativity_zero"] = c.negativity_zero;
      r["realignment_zero"] = c.realignment_zero;
      ojson orbits = ojson::array();
      for (const auto& o : c.orbits)
        orbits.push_back({{"members", sign_list(o.members)},
                          {"ppt_range", interval_json(o.ppt_range)},
                          {"negativity_zero", o.negativity_zero},
                          {"realignment_zero", o.realignment_zero}});
      r["orbits"] = orbits;
      classes.push_back(r);
    }
    j["classes"] = classes;
    j["jordan_good"] = {{"automorphisms", sign_list(rep.jordan_good.automorphisms)},
                        {"anti_automorphisms", sign_list(rep.jordan_good.anti_automorphisms)},
                        {"classifier_agrees", rep.jordan_good.classifier_agrees}};
    ojson la = ojson::array();
    for (const auto& c : rep.la3la8) la.push_back({{"signs", c.signs.str()}, {"max_residual", c.max_residual}});
    j["la3la8"] = la;
    j["conflicts"] = rep.conflicts;
    if (brep) {
      ojson e = ojson::array();
      for (const auto& c : brep->entries)
        e.push_back({{"label", label_string(c.label)},
                     {"max_abs_diff", c.max_abs_diff},
                     {"matches", c.matches},
                     {"equals", c.equals},
                     {"computed", matrix_json(c.computed)}});
      ojson dup = ojson::array();
      for (const auto& [a, c] : brep->tabulated_duplicates) dup.push_back({label_string(a), label_string(c)});
      j["fixtures"] = {{"direct_matches", brep->direct_matches}, {"entries", e}, {"tabulated_duplicates", dup}};
    }
    os << j.dump(2) << "\n";
  } else {
    os << "isospectral classes: " << rep.classes.size() << "\n";
    for (const auto& c : rep.classes)
      os << "  " << std::left << std::setw(4) << c.class_id << " size " << std::setw(3) << c.members.size()
         << " t in [" << num(c.t_range.lo) << ", " << num(c.t_range.hi) << "]  PPT [" << num(c.ppt_range.lo)
         << ", " << num(c.ppt_range.hi) << "]" << (c.negativity_zero && c.realignment_zero ? "  N=N_R=0" : "")
         << "\n";
    os << "Jordan-good: " << rep.jordan_good.automorphisms.size() << " automorphisms, "
       << rep.jordan_good.anti_automorphisms.size() << " anti-automorphisms\n";
    double la = 0.0;
    for (const auto& c : rep.la3la8) la = std::max(la, c.max_residual);
    os << "lambda3/lambda8 identity max residual: " << la << "\n";
    os << "tabulated values not reproduced: " << rep.conflicts.size() << "\n";
    for (const auto& s : rep.conflicts) os << "  - " << s << "\n";
    if (brep) {
      os << "V matrices matching R(W): " << brep->direct_matches << " of " << brep->entries.size() << "\n";
      for (const auto& c : brep->entries) {
        os << "  V" << label_string(c.label) << (c.matches ? " match" : " differs") << " (max diff "
           << num(c.max_abs_diff) << ")";
        if (!c.equals.empty()) {
          os << "; equals";
          for (const auto& e : c.equals) os << " " << e;
        }
        os << "\n";
      }
      for (const auto& [a, c] : brep->tabulated_duplicates)
        os << "  tabulated V" << label_string(a) << " duplicates V" << label_string(c) << "\n";
    }
    os << "counts " << (rep.counts_match ? "match" : "DO NOT match") << "\n";
  }
  emit(os.str(), cfg.out);
  return rep.counts_match ? kExitOk : 1;
}

// ---- verify ----------------------------------------------------------------

int cmd_verify(int d, bool inject, const RunConfig& cfg) {
  if (d < 3) throw DimensionError("verify: --d must be >= 3");
  std::ostringstream os;
  const bool ok = verify::run({d, cfg.seed, inject}, os);
  emit(os.str(), cfg.out);
  return ok ? kExitOk : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometric discord and entanglement toolkit for two qudits"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub, bool minimizer) {
    sub->add_option("--seed", cfg.seed, "Seed for every random draw");
    sub->add_option("--out", cfg.out, "Output file (default stdout)");
    if (minimizer) {
      sub->add_option("--starts", cfg.starts, "Minimizer start count")->check(CLI::PositiveNumber);
      sub->add_option("--tol", cfg.tol, "Minimizer tolerance on the objective spread");
      sub->add_option("--max-iter", cfg.max_iter, "Iteration cap per start");
    }
  };

  int d = 3;
  auto* basis = app.add_subcommand("basis", "Print generators and structure-constant checksums");
  basis->add_option("--d", d, "Local dimension (>= 3)")->required();
  basis->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "csv"}));
  common(basis, false);

  std::string state_path;
  bool numeric = false;
  auto* discord = app.add_subcommand("discord", "Discord values, bounds and entanglement for a state file");
  discord->add_option("--state", state_path, "State JSON file")->required();
  discord->add_flag("--numeric", numeric, "Also run the multistart minimizer");
  discord->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "csv"}));
  common(discord, true);

  std::string family;
  std::optional<double> t_min, t_max;
  int t_steps = 51;
  auto* scan = app.add_subcommand("scan", "Sweep a one-parameter family and write CSV");
  scan->add_option("--family", family, "sign:<8 signs> | isotropic | werner | pair:<p> | line:<p1,p2,p3>")
      ->required();
  scan->add_option("--d", d, "Local dimension (>= 3)");
  scan->add_option("--t-min", t_min);
  scan->add_option("--t-max", t_max);
  scan->add_option("--t-steps", t_steps);
  scan->add_flag("--numeric", numeric, "Fill the d1_numeric column");
  common(scan, true);

  bool as_json = false, fixtures = false;
  auto* appc = app.add_subcommand("appendix-c", "Qutrit sign-matrix classification report");
  appc->add_flag("--json", as_json);
  appc->add_flag("--check-fixtures", fixtures, "Compare the tabulated Bell-operator matrices");
  common(appc, false);

  bool inject = false;
  int verify_d = 4;
  auto* verify = app.add_subcommand("verify", "Run the invariant self-test suite");
  verify->add_option("--d", verify_d, "Largest dimension to check (default 4)");
  verify->add_flag("--inject-failure", inject, "Add a failing check (self-test of the exit code)");
  common(verify, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*basis) return cmd_basis(d, cfg);
    if (*discord) return cmd_discord(state_path, numeric, cfg);
    if (*scan) return cmd_scan(family, d, t_min, t_max, t_steps, numeric, cfg);
    if (*appc) return cmd_appendix_c(as_json, fixtures, cfg);
    if (*verify) return cmd_verify(verify_d, inject, cfg);
  } catch (const UnphysicalState& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUnphysical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}

#pragma once

#include <cstdint>
#include <functional>
#include <iomanip>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include <qdisc/classify.hpp>

namespace qdisc::verify {

struct CheckResult {
  std::string name;
  double residual = 0.0;
  double limit = 0.0;
  bool pass = false;
};

struct SuiteOptions {
  int max_d = 4;
  std::uint64_t seed = 0;
  bool inject_failure = false;
};

class Suite {
 public:
  explicit Suite(const SuiteOptions& opt) : opt_(opt), rng_(opt.seed) {}

  // residual must stay at or below limit
  void check(const std::string& name, double residual, double limit) {
    results_.push_back({name, residual, limit, residual <= limit});
  }

  std::mt19937_64& rng() { return rng_; }
  const SuiteOptions& options() const { return opt_; }
  const std::vector<CheckResult>& results() const { return results_; }

  bool passed() const {
    for (const auto& r : results_)
      if (!r.pass) return false;
    return !results_.empty();
  }

 private:
  SuiteOptions opt_;
  std::mt19937_64 rng_;
  std::vector<CheckResult> results_;
};

inline void algebra_checks(Suite& s, const Algebra& alg) {
  const GellMannBasis& b = alg.basis;
  const int d = b.d(), n = b.size();
  const std::string tag = " d=" + std::to_string(d);
  double tr = 0.0, orth = 0.0;
  for (int j = 0; j < n; ++j) {
    tr = std::max(tr, std::abs(b[j].trace()));
    for (int k = 0; k < n; ++k)
      orth = std::max(orth, std::abs(trace_product(b[j], b[k]) - (j == k ? 2.0 : 0.0)));
  }
  s.check("trace of generators" + tag, tr, 1e-12);
  s.check("generator orthogonality" + tag, orth, 1e-12);

  double delta_tr = 0.0;
  for (int j = 0; j < n; ++j) delta_tr = std::max(delta_tr, std::abs(alg.tensors.Delta[j].trace()));
  s.check("trace of Delta_j" + tag, delta_tr, 1e-12);

  RVector acc = RVector::Zero(n);
  for (int k = 0; k < n; ++k) {
    const RVector e = RVector::Unit(n, k);
    acc += star(alg.tensors, e, e);
  }
  s.check("sum of e_k star e_k" + tag, max_abs(acc), 1e-12);

  CMatrix sq = CMatrix::Zero(d, d);
  for (int p : b.diagonal_indices()) sq += b[p] * b[p];
  s.check("sum of squared diagonal generators" + tag,
          max_abs(CMatrix(sq - (2.0 * (d - 1) / d) * identity(d))), 1e-12);
}

inline void covariance_checks(Suite& s, const Algebra& alg, int samples) {
  const GellMannBasis& b = alg.basis;
  const int n = b.size();
  const std::string tag = " d=" + std::to_string(b.d());
  std::normal_distribution<double> g;
  double res = 0.0, jordan = 0.0;
  for (int i = 0; i < samples; ++i) {
    const RMatrix r = adjoint_rep(b, random_special_unitary(b, s.rng()));
    RVector x(n), y(n);
    for (int k = 0; k < n; ++k) x(k) = g(s.rng()), y(k) = g(s.rng());
    res = std::max(res, max_abs(RVector(r * star(alg.tensors, x, y) - star(alg.tensors, r * x, r * y))));
    res = std::max(res, max_abs(RVector(r * wedge(alg.tensors, x, y) - wedge(alg.tensors, r * x, r * y))));
    if (jordan_classify(alg, r).kind != JordanKind::automorphism) jordan = 1.0;
  }
  s.check("star/wedge covariance under R(U)" + tag, res, 1e-10);
  s.check("R(U) classified as automorphism" + tag, jordan, 0.0);
}

inline void path_checks(Suite& s, const Algebra& alg, int samples) {
  const GellMannBasis& b = alg.basis;
  const int n = b.size();
  const std::string tag = " d=" + std::to_string(b.d());
  std::normal_distribution<double> g;
  double res = 0.0, d2 = 0.0;
  for (int i = 0; i < samples; ++i) {
    RMatrix K(n, n);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) K(j, k) = 0.1 * g(s.rng());
    const TwoQuditState st = lmm_state(b, K);
    const MeasurementFrame f = frame_from_unitary(b, random_special_unitary(b, s.rng()));
    const CMatrix direct = q_matrix(disturbance(st, f));
    res = std::max(res, max_abs(CMatrix(q_lmm_expansion(alg, K, f) - direct)));
    const double dd = b.d();
    d2 = std::max(d2, std::abs(d2_frame_value(b, K, f) - dd / (dd - 1) * direct.trace().real()));
  }
  s.check("Q expansion equals S S^dagger" + tag, res, 1e-10);
  s.check("D2 frame value equals (d/(d-1)) tr Q" + tag, d2, 1e-10);
}

inline void spectra_checks(Suite& s, const Algebra& alg) {
  const GellMannBasis& b = alg.basis;
  const int d = b.d();
  const std::string tag = " d=" + std::to_string(d);
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  const double t = u(s.rng());
  const SpectraTable tab = spectra(d, t);
  auto diff = [](const RVector& a, const RVector& c) { return max_abs(RVector(a - c)); };
  s.check("spectrum of L_d" + tag, diff(hermitian_eigenvalues(l_operator(b)), expand_spectrum(tab.L)), 1e-10);
  s.check("spectrum of K_d + L_d" + tag,
          diff(hermitian_eigenvalues(CMatrix(k_operator(b) + l_operator(b))), expand_spectrum(tab.KL)), 1e-10);
  const MeasurementFrame f0 = canonical_frame(b);
  const CMatrix id = identity(d);
  s.check("spectrum of Q for class a" + tag,
          diff(hermitian_eigenvalues(q_class_a(alg, t, f0, id)), expand_spectrum(tab.Qa)), 1e-10);
  s.check("spectrum of Q for class aa" + tag,
          diff(hermitian_eigenvalues(q_class_aa(alg, t, f0, id, id)), expand_spectrum(tab.Qaa)), 1e-10);
}

inline void invariance_checks(Suite& s, const Algebra& alg, int frames) {
  const GellMannBasis& b = alg.basis;
  const int d = b.d();
  const std::string tag = " d=" + std::to_string(d);
  const double t = 0.2;
  const TwoQuditState wa = class_a_state(b, random_special_unitary(b, s.rng()), t);
  const TwoQuditState waa =
      class_aa_state(b, random_special_unitary(b, s.rng()), random_special_unitary(b, s.rng()), t);
  double ea = 0.0, eaa = 0.0;
  for (int i = 0; i < frames; ++i) {
    const MeasurementFrame f = frame_from_unitary(b, random_special_unitary(b, s.rng()));
    ea = std::max(ea, std::abs(d1_frame_value(wa, f) - d1_exact_class_a(d, t)));
    eaa = std::max(eaa, std::abs(d1_frame_value(waa, f) - d1_exact_class_aa(d, t)));
  }
  s.check("class a D1 is frame independent" + tag, ea, 1e-10);
  s.check("class aa D1 is frame independent" + tag, eaa, 1e-10);
}

inline void entanglement_checks(Suite& s, const Algebra& alg) {
  const GellMannBasis& b = alg.basis;
  const int d = b.d();
  const std::string tag = " d=" + std::to_string(d);
  const TwoQuditState p = bell_projector(b, {0, 0});
  s.check("negativity of a Bell projector" + tag, std::abs(negativity(p.rho(), d) - (d - 1) / 2.0), 1e-10);
  const double p_sep = 1.0 / (d + 1);
  const TwoQuditState iso = isotropic(b, p_sep);
  s.check("isotropic PPT at p = 1/(d+1)" + tag, std::max(0.0, -min_pt_eigenvalue(iso.rho(), d)), 1e-10);
}

inline void qutrit_checks(Suite& s, const Algebra& alg) {
  const AppendixCReport rep = appendix_c_report(alg, s.options().seed);
  s.check("16 isospectral sign classes with tabulated sizes", rep.counts_match ? 0.0 : 1.0, 0.0);
  const std::size_t good = rep.jordan_good.automorphisms.size() + rep.jordan_good.anti_automorphisms.size();
  s.check("8 Jordan-good sign matrices", std::abs(double(good) - 8.0), 0.0);
  double la = 0.0;
  for (const auto& c : rep.la3la8) la = std::max(la, c.max_residual);
  s.check("lambda3/lambda8 identity for Jordan-good signs", la, 1e-10);
}

inline bool run(const SuiteOptions& opt, std::ostream& out) {
  Suite s(opt);
  for (int d = 3; d <= std::max(4, opt.max_d); ++d) {
    const Algebra alg(d);
    algebra_checks(s, alg);
    spectra_checks(s, alg);
    if (d <= 4) {
      covariance_checks(s, alg, 20);
      path_checks(s, alg, 10);
      invariance_checks(s, alg, 10);
      entanglement_checks(s, alg);
    }
    if (d == 3) qutrit_checks(s, alg);
  }
  if (opt.inject_failure) s.check("injected failure", 1.0, 0.0);
  for (const auto& r : s.results())
    out << (r.pass ? "PASS " : "FAIL ") << r.name << "  residual=" << std::setprecision(3) << r.residual
        << " limit=" << r.limit << "\n";
  out << (s.passed() ? "verify: all checks passed\n" : "verify: FAILED\n");
  return s.passed();
}

}  // namespace qdisc::verify

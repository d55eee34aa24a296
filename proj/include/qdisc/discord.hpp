#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>

#include "measurement.hpp"
#include "nelder_mead.hpp"

namespace qdisc {

enum class Method { analytic, lower_bound, numerical_min };

inline const char* to_string(Method m) {
  switch (m) {
    case Method::analytic: return "analytic";
    case Method::lower_bound: return "lower_bound";
    case Method::numerical_min: return "numerical_min";
  }
  return "?";
}

struct DiscordEstimate {
  double value = 0.0;
  Method method = Method::numerical_min;
  std::optional<MeasurementFrame> frame;
  RVector theta;
  int starts = 0;
  double best_residual = 0.0;
  std::uint64_t seed = 0;
  bool converged = true;
  int iterations = 0;
};

struct MinimizerConfig {
  int starts = 32;
  std::uint64_t seed = 0;
  double tol = 1e-10;
  int max_iter = 2000;
};

// (4/(d³(d-1))) tr(KKᵀℳ)
inline double d2_frame_value(const GellMannBasis& b, const RMatrix& K, const MeasurementFrame& f) {
  require_square(K, b.size(), "d2_frame_value");
  const double d = b.d();
  return 4.0 / (d * d * d * (d - 1)) * (K * K.transpose() * f.M_real).trace();
}

inline double d2_frame_value(const GellMannBasis& b, const TwoQuditState& s, const MeasurementFrame& f) {
  if (!s.is_lmm()) throw InvalidInput("d2_frame_value: state is not locally maximally mixed");
  return d2_frame_value(b, s.K(), f);
}

// Sum of the m0 smallest eigenvalues of a PSD matrix: min tr(PA) over rank-m0 projectors.
inline double lemma2_min(const RMatrix& a, int m0) {
  if (a.rows() != a.cols()) throw DimensionError("lemma2_min: matrix is not square");
  const int n0 = static_cast<int>(a.rows());
  if (m0 <= 0 || m0 >= n0) throw InvalidInput("lemma2_min: m0 must satisfy 0 < m0 < n0");
  if (max_abs(RMatrix(a - a.transpose())) > 1e-9) throw InvalidInput("lemma2_min: matrix is not symmetric");
  const RVector ev = symmetric_eigenvalues(a);
  if (ev(0) < -1e-9) throw InvalidInput("lemma2_min: matrix is not positive semidefinite");
  return ev.head(m0).sum();
}

inline double xi(const GellMannBasis& b, const RMatrix& K) {
  require_square(K, b.size(), "xi");
  const int d = b.d();
  return lemma2_min(K * K.transpose(), d * (d - 1));
}

struct LowerBounds {
  double d2 = 0.0;
  double d1 = 0.0;
};

inline LowerBounds lower_bounds(const GellMannBasis& b, const RMatrix& K) {
  const double d = b.d();
  const double x = std::max(0.0, xi(b, K));
  return {4.0 / (d * d * d * (d - 1)) * x, std::sqrt(x) / (d * (d - 1))};
}

inline void require_range(double t, double lo, double hi, const char* what) {
  if (t < lo - 1e-12 || t > hi + 1e-12)
    throw UnphysicalState(std::string(what) + ": t outside the physical range");
}

inline double d1_exact_class_a(int d, double t) {
  if (d < 3) throw DimensionError("d1_exact_class_a: only d >= 3 is supported");
  require_range(t, -d / (2.0 * (d - 1)), d / (2.0 * (d + 1)), "d1_exact_class_a");
  return std::abs(t);
}

inline double d1_exact_class_aa(int d, double t) {
  if (d < 3) throw DimensionError("d1_exact_class_aa: only d >= 3 is supported");
  require_range(t, -d / (2.0 * (d * d - 1)), d / 2.0, "d1_exact_class_aa");
  return 2.0 * std::abs(t) / d;
}

inline double d2_exact_orthogonal(int d, double t) {
  if (d < 3) throw DimensionError("d2_exact_orthogonal: only d >= 3 is supported");
  require_range(t, -d / 2.0, d / 2.0, "d2_exact_orthogonal");
  return 4.0 * t * t / (double(d) * d);
}

// L_d = Σ_k λ_{k²-1} ⊗ λ_{k²-1}
inline CMatrix l_operator(const GellMannBasis& b) {
  CMatrix out = CMatrix::Zero(b.d() * b.d(), b.d() * b.d());
  for (int p : b.diagonal_indices()) out += kron(b[p], b[p]);
  return out;
}

// K_d = (d-2) Σ_j λ_j ⊗ λ_jᵀ
inline CMatrix k_operator(const GellMannBasis& b) {
  CMatrix out = CMatrix::Zero(b.d() * b.d(), b.d() * b.d());
  for (int j = 0; j < b.size(); ++j) out += kron(b[j], b[j].transpose());
  return double(b.d() - 2) * out;
}

struct SpectraTable {
  Spectrum L;
  Spectrum KL;
  Spectrum Qa;
  Spectrum Qaa;
};

inline SpectraTable spectra(int d, double t) {
  if (d < 3) throw DimensionError("spectra: only d >= 3 is supported");
  const double dd = d, d4 = std::pow(dd, 4);
  SpectraTable s;
  s.L = {{2.0 * (dd - 1) / dd, d}, {-2.0 / dd, d * (d - 1)}};
  s.KL = {{2.0 * (dd * dd * (dd - 2) + 1) / dd, 1}, {-2.0 * (dd - 1) / dd, d * (d - 1)}, {2.0 / dd, d - 1}};
  s.Qa = {{4.0 * t * t / d4, d * (d - 1)}, {0.0, d}};
  s.Qaa = {{4.0 * t * t * (dd - 1) * (dd - 1) / d4, 1}, {4.0 * t * t / d4, d - 1}, {0.0, d * (d - 1)}};
  return s;
}

inline double trace_sqrt(const Spectrum& s) {
  double acc = 0.0;
  for (const auto& e : s) acc += e.multiplicity * std::sqrt(std::max(0.0, e.value));
  return acc;
}

enum class JordanKind { automorphism, anti_automorphism, neither };

inline const char* to_string(JordanKind k) {
  switch (k) {
    case JordanKind::automorphism: return "automorphism";
    case JordanKind::anti_automorphism: return "anti_automorphism";
    case JordanKind::neither: return "neither";
  }
  return "?";
}

struct JordanClass {
  JordanKind kind = JordanKind::neither;
  double orthogonality_defect = 0.0;
  double star_defect = 0.0;         // max |V(a⋆b) - Va⋆Vb| over basis pairs
  double wedge_plus_defect = 0.0;   // max |V(a∧b) - Va∧Vb|
  double wedge_minus_defect = 0.0;  // max |V(a∧b) + Va∧Vb|
  int wedge_sign = 0;               // +1, -1 or 0 when neither holds
};

// Covariance on basis pairs: V(e_a⋆e_b) = Ve_a⋆Ve_b is Σ_j V_ij Δ_j = VᵀΔ_iV for every i.
inline JordanClass jordan_classify(const Algebra& alg, const RMatrix& v, double tol = 1e-10) {
  const StructureTensors& t = alg.tensors;
  const int n = t.n;
  require_square(v, n, "jordan_classify");
  JordanClass c;
  c.orthogonality_defect = max_abs(RMatrix(v.transpose() * v - RMatrix::Identity(n, n)));
  if (c.orthogonality_defect > 1e-9) throw InvalidInput("jordan_classify: matrix is not orthogonal");
  for (int i = 0; i < n; ++i) {
    RMatrix ld = RMatrix::Zero(n, n), lf = RMatrix::Zero(n, n);
    for (int j = 0; j < n; ++j) {
      if (v(i, j) == 0.0) continue;
      ld += v(i, j) * t.Delta[j];
      lf += v(i, j) * t.F[j];
    }
    const RMatrix rd = v.transpose() * t.Delta[i] * v;
    const RMatrix rf = v.transpose() * t.F[i] * v;
    c.star_defect = std::max(c.star_defect, t.dprime * max_abs(RMatrix(ld - rd)));
    c.wedge_plus_defect = std::max(c.wedge_plus_defect, t.dprime * max_abs(RMatrix(lf - rf)));
    c.wedge_minus_defect = std::max(c.wedge_minus_defect, t.dprime * max_abs(RMatrix(lf + rf)));
  }
  if (c.star_defect < tol && c.wedge_plus_defect < tol) {
    c.kind = JordanKind::automorphism;
    c.wedge_sign = 1;
  } else if (c.star_defect < tol && c.wedge_minus_defect < tol) {
    c.kind = JordanKind::anti_automorphism;
    c.wedge_sign = -1;
  }
  return c;
}

// ‖Σ_k (IℳI e_k)⋆e_k‖∞ for a diagonal sign vector I.
inline double imi_star_residual(const Algebra& alg, const RVector& signs, const MeasurementFrame& f) {
  require_length(signs, alg.n(), "imi_star_residual");
  const RMatrix imi = signs.asDiagonal() * f.M_real * signs.asDiagonal();
  return star_sum_criterion(alg.tensors, imi, RMatrix::Identity(alg.n(), alg.n())).residual_norm;
}

// Detects K = t·V0 with V0 orthogonal and, when possible, the Jordan type of V0.
struct CorrelationAnalysis {
  bool orthogonal = false;
  double t = 0.0;
  JordanKind kind = JordanKind::neither;
};

inline CorrelationAnalysis analyze_correlation(const Algebra& alg, const RMatrix& K, double tol = 1e-9) {
  const int n = alg.n();
  require_square(K, n, "analyze_correlation");
  CorrelationAnalysis a;
  const RMatrix kk = K * K.transpose();
  const double s2 = kk.trace() / n;
  if (s2 < 1e-24) {
    a.orthogonal = true;
    return a;
  }
  if (max_abs(RMatrix(kk - s2 * RMatrix::Identity(n, n))) > tol * std::max(1.0, s2)) return a;
  a.orthogonal = true;
  const double s = std::sqrt(s2);
  a.t = s;
  for (double sign : {1.0, -1.0}) {
    const RMatrix v = K / (sign * s);
    if (!is_orthogonal(v, 1e-9)) continue;
    const JordanClass c = jordan_classify(alg, v, 1e-8);
    if (c.kind != JordanKind::neither) {
      a.t = sign * s;
      a.kind = c.kind;
      break;
    }
  }
  return a;
}

// Analytic D1 when the correlation matrix lies in class a or aa.
inline std::optional<double> analytic_d1(const Algebra& alg, const TwoQuditState& s) {
  if (!s.is_lmm()) return std::nullopt;
  const CorrelationAnalysis a = analyze_correlation(alg, s.K());
  if (a.t == 0.0 && a.orthogonal) return 0.0;
  if (a.kind == JordanKind::automorphism) return d1_exact_class_a(alg.d(), a.t);
  if (a.kind == JordanKind::anti_automorphism) return d1_exact_class_aa(alg.d(), a.t);
  return std::nullopt;
}

namespace detail {

inline double d1_objective(const GellMannBasis& b, const CMatrix& rho, const RVector& theta) {
  const int d = b.d();
  const CMatrix u = unitary_from_parameters(b, theta);
  return d / (2.0 * (d - 1)) * trace_norm_hermitian(rho - apply_measurement(rho, u));
}

inline double d2_objective(const GellMannBasis& b, const CMatrix& rho, const RVector& theta) {
  const int d = b.d();
  const CMatrix u = unitary_from_parameters(b, theta);
  return d / double(d - 1) * (rho - apply_measurement(rho, u)).squaredNorm();
}

// Start s uses θ = 0 for s = 0 and a Gaussian draw seeded by (seed, s) otherwise.
inline RVector start_point(int n, std::uint64_t seed, int s) {
  if (s == 0) return RVector::Zero(n);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(s)};
  std::mt19937_64 rng(seq);
  return gaussian_parameters(n, rng);
}

inline DiscordEstimate multistart(const GellMannBasis& b, const TwoQuditState& s,
                                  const MinimizerConfig& cfg, bool trace_norm) {
  if (cfg.starts < 1) throw InvalidInput("minimizer: starts must be >= 1");
  if (!(cfg.tol > 0.0)) throw InvalidInput("minimizer: tol must be positive");
  if (s.d() != b.d()) throw DimensionError("minimizer: state and basis dimensions differ");
  const PhysicalityReport rep = validate(s.rho());
  if (!rep.physical) throw UnphysicalState("minimizer: " + describe(rep));
  const CMatrix rho = s.rho();
  auto f = [&](const RVector& th) {
    return trace_norm ? d1_objective(b, rho, th) : d2_objective(b, rho, th);
  };
  SimplexOptions opt;
  opt.tol = cfg.tol;
  opt.max_iter = cfg.max_iter;

  DiscordEstimate best;
  best.value = std::numeric_limits<double>::infinity();
  best.method = Method::numerical_min;
  best.starts = cfg.starts;
  best.seed = cfg.seed;
  for (int k = 0; k < cfg.starts; ++k) {
    const SimplexResult r = nelder_mead(f, start_point(b.size(), cfg.seed, k), opt);
    best.iterations += r.iterations;
    const bool better = r.value < best.value - 1e-12;
    const bool tie = std::abs(r.value - best.value) <= 1e-12 && r.x.norm() < best.theta.norm();
    if (better || tie) {
      best.value = r.value;
      best.theta = r.x;
      best.best_residual = r.spread;
    }
  }
  best.value = std::max(0.0, best.value);
  best.converged = best.best_residual <= cfg.tol;
  best.frame = frame_from_unitary(b, unitary_from_parameters(b, best.theta));
  return best;
}

}  // namespace detail

inline DiscordEstimate minimize_d1(const GellMannBasis& b, const TwoQuditState& s,
                                   const MinimizerConfig& cfg = {}) {
  return detail::multistart(b, s, cfg, true);
}

inline DiscordEstimate minimize_d2(const GellMannBasis& b, const TwoQuditState& s,
                                   const MinimizerConfig& cfg = {}) {
  return detail::multistart(b, s, cfg, false);
}

// D1 objective at a given frame.
inline double d1_frame_value(const TwoQuditState& s, const MeasurementFrame& f) {
  const int d = s.d();
  return d / (2.0 * (d - 1)) * trace_norm_hermitian(disturbance(s, f));
}

}  // namespace qdisc

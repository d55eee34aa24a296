#pragma once

#include <compare>
#include <functional>
#include <limits>
#include <map>
#include <string>

#include "lie_algebra.hpp"

namespace qdisc {

struct CoherenceForm {
  RVector x;
  RVector y;
  RMatrix K;
};

// Two-qudit state in coherence form (x, y, K) with its density matrix cached.
// Subsystem A is the left Kronecker factor.
class TwoQuditState {
 public:
  TwoQuditState(int d, RVector x, RVector y, RMatrix K, CMatrix rho)
      : d_(d), x_(std::move(x)), y_(std::move(y)), K_(std::move(K)), rho_(std::move(rho)) {}

  int d() const { return d_; }
  const RVector& x() const { return x_; }
  const RVector& y() const { return y_; }
  const RMatrix& K() const { return K_; }
  const CMatrix& rho() const { return rho_; }

  bool is_lmm(double tol = 1e-10) const {
    return x_.cwiseAbs().maxCoeff() <= tol && y_.cwiseAbs().maxCoeff() <= tol;
  }

 private:
  int d_;
  RVector x_, y_;
  RMatrix K_;
  CMatrix rho_;
};

inline CMatrix assemble_density(const GellMannBasis& b, const RVector& x, const RVector& y,
                                const RMatrix& K) {
  const int d = b.d(), n = b.size();
  require_length(x, n, "assemble");
  require_length(y, n, "assemble");
  require_square(K, n, "assemble");
  const CMatrix id = identity(d);
  CMatrix rho = identity(d * d);
  const double dpp = b.dprimeprime();
  if (x.cwiseAbs().maxCoeff() > 0) rho += dpp * kron(expand(b, x), id);
  if (y.cwiseAbs().maxCoeff() > 0) rho += dpp * kron(id, expand(b, y));
  for (int k = 0; k < n; ++k) {
    if (K.col(k).cwiseAbs().maxCoeff() == 0.0) continue;
    rho += kron(expand(b, RVector(K.col(k))), b[k]);
  }
  return rho / double(d * d);
}

inline TwoQuditState assemble(const GellMannBasis& b, const RVector& x, const RVector& y,
                              const RMatrix& K) {
  return TwoQuditState(b.d(), x, y, K, assemble_density(b, x, y, K));
}

inline CoherenceForm decompose_state(const GellMannBasis& b, const CMatrix& rho) {
  const int d = b.d(), n = b.size();
  require_square(rho, d * d, "decompose_state");
  if (hermiticity_defect(rho) > 1e-9)
    throw InvalidInput("decompose_state: density matrix is not Hermitian within 1e-9");
  CoherenceForm c;
  c.x.resize(n);
  c.y.resize(n);
  c.K.resize(n, n);
  const CMatrix ra = partial_trace_b(rho, d);
  const CMatrix rb = partial_trace_a(rho, d);
  const double scale = d / std::sqrt(2.0 * d * (d - 1));
  for (int j = 0; j < n; ++j) {
    c.x(j) = scale * trace_product(ra, b[j]).real();
    c.y(j) = scale * trace_product(rb, b[j]).real();
  }
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      c.K(j, k) = 0.25 * d * d * trace_with_product(rho, b[j], b[k]).real();
  return c;
}

inline TwoQuditState from_density(const GellMannBasis& b, const CMatrix& rho) {
  CoherenceForm c = decompose_state(b, rho);
  return TwoQuditState(b.d(), std::move(c.x), std::move(c.y), std::move(c.K), rho);
}

struct PhysicalityReport {
  double hermiticity_defect = 0.0;
  double trace_defect = 0.0;
  double min_eigenvalue = 0.0;
  bool physical = false;
};

inline PhysicalityReport validate(const CMatrix& rho) {
  PhysicalityReport r;
  if (rho.rows() != rho.cols() || rho.rows() == 0) {
    r.hermiticity_defect = std::numeric_limits<double>::infinity();
    return r;
  }
  r.hermiticity_defect = hermiticity_defect(rho);
  r.trace_defect = std::abs(rho.trace() - Complex(1.0, 0.0));
  r.min_eigenvalue = min_eigenvalue(rho);
  r.physical = r.hermiticity_defect <= 1e-9 && r.trace_defect <= 1e-10 && r.min_eigenvalue >= -1e-9;
  return r;
}

inline std::string describe(const PhysicalityReport& r) {
  return "hermiticity defect " + std::to_string(r.hermiticity_defect) + ", trace defect " +
         std::to_string(r.trace_defect) + ", min eigenvalue " + std::to_string(r.min_eigenvalue);
}

inline TwoQuditState require_physical(TwoQuditState s, const char* what) {
  const PhysicalityReport r = validate(s.rho());
  if (!r.physical) throw UnphysicalState(std::string(what) + ": not a density matrix (" + describe(r) + ")");
  return s;
}

struct BellLabel {
  int m = 0;
  int n = 0;
  auto operator<=>(const BellLabel&) const = default;
};

inline void require_label(int d, const BellLabel& a) {
  if (a.m < 0 || a.m >= d || a.n < 0 || a.n >= d)
    throw InvalidInput("Bell label (" + std::to_string(a.m) + "," + std::to_string(a.n) +
                       ") outside 0..d-1");
}

// W_{(m,n)} = Σ_k ω^{kn} |k><k+m|
inline CMatrix weyl_operator(int d, const BellLabel& a) {
  require_label(d, a);
  CMatrix w = CMatrix::Zero(d, d);
  const double pi = std::acos(-1.0);
  for (int k = 0; k < d; ++k)
    w(k, (k + a.m) % d) = std::polar(1.0, 2.0 * pi * ((k * a.n) % d) / d);
  return w;
}

inline CVector maximally_entangled_vector(int d) {
  CVector psi = CVector::Zero(d * d);
  for (int k = 0; k < d; ++k) psi(k * d + k) = 1.0 / std::sqrt(double(d));
  return psi;
}

inline CMatrix bell_projector_density(int d, const BellLabel& a) {
  const CVector v = kron(weyl_operator(d, a), identity(d)) * maximally_entangled_vector(d);
  return v * v.adjoint();
}

inline TwoQuditState bell_projector(const GellMannBasis& b, const BellLabel& a) {
  return from_density(b, bell_projector_density(b.d(), a));
}

inline TwoQuditState lmm_state(const GellMannBasis& b, const RMatrix& K) {
  const RVector z = RVector::Zero(b.size());
  return assemble(b, z, z, K);
}

inline TwoQuditState bell_diagonal(const GellMannBasis& b, const std::map<BellLabel, double>& weights) {
  const int d = b.d();
  double total = 0.0;
  for (const auto& [label, p] : weights) {
    require_label(d, label);
    if (!(p >= 0.0)) throw InvalidInput("bell_diagonal: negative or NaN weight");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) throw InvalidInput("bell_diagonal: weights do not sum to 1");
  CMatrix rho = CMatrix::Zero(d * d, d * d);
  RMatrix K = RMatrix::Zero(b.size(), b.size());
  for (const auto& [label, p] : weights) {
    if (p == 0.0) continue;
    const TwoQuditState pa = bell_projector(b, label);
    rho += (p / total) * pa.rho();
    K += (p / total) * pa.K();
  }
  const RVector z = RVector::Zero(b.size());
  return TwoQuditState(d, z, z, K, rho);
}

inline TwoQuditState isotropic(const GellMannBasis& b, double p) {
  const int d = b.d();
  if (p < -1.0 / (d * d - 1) - 1e-15 || p > 1.0 + 1e-15)
    throw UnphysicalState("isotropic: p outside [-1/(d^2-1), 1]");
  const RMatrix K = p * (d / 2.0) * transposition_matrix(b);
  return require_physical(lmm_state(b, K), "isotropic");
}

inline TwoQuditState class_a_state(const GellMannBasis& b, const CMatrix& u, double t) {
  return require_physical(lmm_state(b, t * adjoint_rep(b, u)), "class_a_state");
}

inline TwoQuditState class_aa_state(const GellMannBasis& b, const CMatrix& u1, const CMatrix& u2,
                                    double t) {
  const RMatrix T = adjoint_rep(b, u1) * transposition_matrix(b) * adjoint_rep(b, u2).transpose();
  return require_physical(lmm_state(b, t * T), "class_aa_state");
}

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double t, double tol = 0.0) const { return t >= lo - tol && t <= hi + tol; }
};

using DensityFamily = std::function<CMatrix(double)>;

// Maximal interval around 0 where rho(t) >= 0, for rho(t) = rho(0) + t·B with
// rho(0) ∝ 𝕀. Endpoints come from the eigenvalues of B, not from scanning.
inline Interval t_range(const DensityFamily& family) {
  const CMatrix a = family(0.0);
  const CMatrix slope = family(1.0) - a;
  const double scale = std::max(1.0, max_abs(a) + max_abs(slope));
  for (double t : {-1.0, 0.5, 2.0}) {
    if (max_abs(CMatrix(family(t) - a - t * slope)) > 1e-10 * scale * std::max(1.0, std::abs(t)))
      throw InvalidInput("t_range: family is not affine in t");
  }
  const Eigen::Index dim = a.rows();
  const double c = a.trace().real() / double(dim);
  if (max_abs(CMatrix(a - c * identity(static_cast<int>(dim)))) > 1e-10 || c <= 0.0)
    throw InvalidInput("t_range: family at t=0 is not proportional to the identity");
  const RVector s = hermitian_eigenvalues(slope);
  Interval r{-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  for (Eigen::Index j = 0; j < s.size(); ++j) {
    if (s(j) > 1e-14) r.lo = std::max(r.lo, -c / s(j));
    if (s(j) < -1e-14) r.hi = std::min(r.hi, -c / s(j));
  }
  return r;
}

// LMM family rho(t) with correlation matrix t·K.
inline DensityFamily correlation_family(const GellMannBasis& b, const RMatrix& K) {
  const RVector z = RVector::Zero(b.size());
  const int d = b.d();
  const CMatrix c = assemble_density(b, z, z, K) * double(d * d) - identity(d * d);
  const CMatrix id = identity(d * d);
  const double norm = 1.0 / (d * d);
  return [c, id, norm](double t) -> CMatrix { return norm * (id + t * c); };
}

inline DensityFamily diagonal_correlation_family(const GellMannBasis& b, const RVector& signs) {
  require_length(signs, b.size(), "diagonal_correlation_family");
  return correlation_family(b, RMatrix(signs.asDiagonal()));
}

inline TwoQuditState sign_class_state(const GellMannBasis& b, const RVector& signs, double t) {
  if (b.d() != 3) throw DimensionError("sign_class_state: requires d = 3");
  require_length(signs, 8, "sign_class_state");
  for (int k = 0; k < 8; ++k)
    if (std::abs(std::abs(signs(k)) - 1.0) > 0) throw InvalidInput("sign_class_state: entries must be +-1");
  const Interval r = t_range(diagonal_correlation_family(b, signs));
  if (!r.contains(t, 1e-12)) throw UnphysicalState("sign_class_state: t outside positivity range");
  return lmm_state(b, t * RMatrix(signs.asDiagonal()));
}

// One-qudit state (1/d)(𝕀 + d''<n,λ>).
inline CMatrix one_qudit_state(const GellMannBasis& b, const RVector& n) {
  CMatrix rho = identity(b.d()) + b.dprimeprime() * expand(b, n);
  return rho / double(b.d());
}

}  // namespace qdisc

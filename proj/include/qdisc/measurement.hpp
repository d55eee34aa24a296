#pragma once

#include <vector>

#include "states.hpp"

namespace qdisc {

// Local von Neumann measurement on subsystem A with projectors U|k><k|U†.
struct MeasurementFrame {
  CMatrix U;
  std::vector<CMatrix> projectors;
  RMatrix V;       // R(U)
  RMatrix P_real;  // V P0 Vᵀ
  RMatrix M_real;  // 𝕀 - P_real
};

// Real projector onto the span of the diagonal generators.
inline RMatrix canonical_real_projector(const GellMannBasis& b) {
  RMatrix p0 = RMatrix::Zero(b.size(), b.size());
  for (int j : b.diagonal_indices()) p0(j, j) = 1.0;
  return p0;
}

inline MeasurementFrame frame_from_unitary(const GellMannBasis& b, const CMatrix& u) {
  require_square(u, b.d(), "frame_from_unitary");
  if (!is_special_unitary(u, 1e-9))
    throw InvalidInput("frame_from_unitary: input is not special unitary within 1e-9");
  MeasurementFrame f;
  f.U = u;
  for (int k = 0; k < b.d(); ++k) f.projectors.push_back(u.col(k) * u.col(k).adjoint());
  f.V = adjoint_rep(b, u);
  f.P_real = f.V * canonical_real_projector(b) * f.V.transpose();
  f.M_real = RMatrix::Identity(b.size(), b.size()) - f.P_real;
  return f;
}

inline MeasurementFrame canonical_frame(const GellMannBasis& b) {
  return frame_from_unitary(b, identity(b.d()));
}

// (Φ ⊗ id)(rho) for projectors onto the columns of u.
inline CMatrix apply_measurement(const CMatrix& rho, const CMatrix& u) {
  const int d = static_cast<int>(u.rows());
  require_square(rho, d * d, "apply_measurement");
  const CMatrix ul = kron(u, identity(d));
  CMatrix r = ul.adjoint() * rho * ul;
  for (int a = 0; a < d; ++a)
    for (int c = 0; c < d; ++c)
      if (a != c) r.block(a * d, c * d, d, d).setZero();
  return ul * r * ul.adjoint();
}

// (Φ ⊗ id)(rho) with Φ(A) = Σ_k P_k A P_k.
inline CMatrix apply_measurement(const CMatrix& rho, const MeasurementFrame& f) {
  return apply_measurement(rho, f.U);
}

inline CMatrix apply_measurement(const TwoQuditState& s, const MeasurementFrame& f) {
  return apply_measurement(s.rho(), f);
}

inline CMatrix disturbance(const CMatrix& rho, const MeasurementFrame& f) {
  return rho - apply_measurement(rho, f);
}

inline CMatrix disturbance(const TwoQuditState& s, const MeasurementFrame& f) {
  return disturbance(s.rho(), f);
}

// (1/d²)[d''<ℳx,λ>⊗𝕀 + Σ_k <ℳKe_k,λ>⊗λ_k]
inline CMatrix disturbance_from_coherence(const GellMannBasis& b, const TwoQuditState& s,
                                          const MeasurementFrame& f) {
  const int d = b.d();
  const RVector mx = f.M_real * s.x();
  const RMatrix mk = f.M_real * s.K();
  CMatrix out = b.dprimeprime() * kron(expand(b, mx), identity(d));
  for (int k = 0; k < b.size(); ++k) out += kron(expand(b, RVector(mk.col(k))), b[k]);
  return out / double(d * d);
}

inline CMatrix q_matrix(const CMatrix& s) { return hermitian_part(s * s.adjoint()); }

// Σ_{j,k} C_{jk} λ_j ⊗ λ_k
inline CMatrix expand_pair(const GellMannBasis& b, const RMatrix& c) {
  const int d = b.d();
  CMatrix out = CMatrix::Zero(d * d, d * d);
  for (int k = 0; k < b.size(); ++k) {
    const RVector col = c.col(k);
    if (col.cwiseAbs().maxCoeff() == 0.0) continue;
    out += kron(expand(b, col), b[k]);
  }
  return out;
}

// Five-term star/wedge expansion of Q for an LMM state with correlation matrix K.
inline CMatrix q_lmm_expansion(const Algebra& alg, const RMatrix& K, const MeasurementFrame& f) {
  const GellMannBasis& b = alg.basis;
  const StructureTensors& t = alg.tensors;
  const int d = b.d(), n = b.size();
  require_square(K, n, "q_lmm_expansion");
  const double dp = b.dprime();
  const RMatrix a = f.M_real * K;  // columns a_j = ℳKe_j
  const RMatrix eye = RMatrix::Identity(n, n);

  double norm_sum = 0.0;
  RVector self_star = RVector::Zero(n);
  RMatrix gram = a.transpose() * a;
  for (int j = 0; j < n; ++j) {
    norm_sum += gram(j, j);
    self_star += star(t, a.col(j), a.col(j));
  }
  RVector right = RVector::Zero(n);
  RMatrix star_pair = RMatrix::Zero(n, n);
  RMatrix wedge_pair = RMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      const RVector ee_star = star(t, eye.col(j), eye.col(k));
      const RVector ee_wedge = wedge(t, eye.col(j), eye.col(k));
      right += gram(j, k) * ee_star;
      star_pair += star(t, a.col(j), a.col(k)) * ee_star.transpose();
      wedge_pair += wedge(t, a.col(j), a.col(k)) * ee_wedge.transpose();
    }

  const CMatrix id = identity(d);
  CMatrix q = (4.0 / (d * d)) * norm_sum * identity(d * d);
  q += (2.0 / (d * dp)) * kron(expand(b, self_star), id);
  q += (2.0 / (d * dp)) * kron(id, expand(b, right));
  q += (1.0 / (dp * dp)) * expand_pair(b, star_pair);
  q -= (1.0 / (dp * dp)) * expand_pair(b, wedge_pair);
  return q / std::pow(double(d), 4);
}

inline CMatrix q_lmm_expansion(const Algebra& alg, const TwoQuditState& s, const MeasurementFrame& f) {
  if (!s.is_lmm()) throw InvalidInput("q_lmm_expansion: state is not locally maximally mixed");
  return q_lmm_expansion(alg, s.K(), f);
}

struct Theorem3Terms {
  RVector X;
  RMatrix Y;
  CMatrix Q;
};

// Q for K = t·V0 with V0 orthogonal, through the X_k / Y_jk coefficients.
inline Theorem3Terms q_theorem3(const Algebra& alg, double t, const RMatrix& v0,
                                const MeasurementFrame& f) {
  const GellMannBasis& b = alg.basis;
  const StructureTensors& ts = alg.tensors;
  const int d = b.d(), n = b.size();
  require_square(v0, n, "q_theorem3");
  if (!is_orthogonal(v0, 1e-9)) throw InvalidInput("q_theorem3: V0 is not orthogonal within 1e-9");
  const RMatrix& m = f.M_real;
  Theorem3Terms r;
  r.X.resize(n);
  r.Y.resize(n, n);
  for (int k = 0; k < n; ++k) r.X(k) = (m * v0 * ts.Delta[k] * v0.transpose()).trace();
  const RMatrix mv = m * v0;
  const RMatrix vtm = mv.transpose();
  for (int j = 0; j < n; ++j) {
    const RMatrix ld = vtm * ts.Delta[j] * mv;
    const RMatrix lf = vtm * ts.F[j] * mv;
    for (int k = 0; k < n; ++k)
      r.Y(j, k) = (ld * ts.Delta[k]).trace() + (lf * ts.F[k]).trace();
  }
  r.Q = (4.0 * (d - 1) / d) * identity(d * d);
  r.Q += (2.0 / d) * kron(identity(d), expand(b, r.X));
  r.Q += expand_pair(b, r.Y);
  r.Q *= t * t / std::pow(double(d), 4);
  return r;
}

namespace detail {
inline std::vector<CMatrix> rotated_diagonal_generators(const GellMannBasis& b, const CMatrix& u) {
  std::vector<CMatrix> out;
  for (int p : b.diagonal_indices()) out.push_back(u * b[p] * u.adjoint());
  return out;
}
}  // namespace detail

// Closed form of Q for K = t·R(v) (class a). τ(X) = v† X v.
inline CMatrix q_class_a(const Algebra& alg, double t, const MeasurementFrame& f, const CMatrix& v) {
  const GellMannBasis& b = alg.basis;
  const int d = b.d();
  require_square(v, d, "q_class_a");
  if (!is_special_unitary(v, 1e-9)) throw InvalidInput("q_class_a: v is not special unitary");
  CMatrix q = (4.0 * (d - 1) / d) * identity(d * d);
  for (const CMatrix& a : detail::rotated_diagonal_generators(b, f.U))
    q -= 2.0 * kron(a, v.adjoint() * a * v);
  return q * (t * t / std::pow(double(d), 4));
}

// Closed form of Q for K = t·R(v1) I0 R(v2)ᵀ (class aa). τ(X) = v2 (v1† X v1)ᵀ v2†.
inline CMatrix q_class_aa(const Algebra& alg, double t, const MeasurementFrame& f,
                          const CMatrix& v1, const CMatrix& v2) {
  const GellMannBasis& b = alg.basis;
  const int d = b.d();
  require_square(v1, d, "q_class_aa");
  require_square(v2, d, "q_class_aa");
  if (!is_special_unitary(v1, 1e-9) || !is_special_unitary(v2, 1e-9))
    throw InvalidInput("q_class_aa: inputs are not special unitary");
  auto tau = [&](const CMatrix& x) -> CMatrix {
    return v2 * (v1.adjoint() * x * v1).transpose() * v2.adjoint();
  };
  CMatrix q = (4.0 * (d - 1) / d) * identity(d * d);
  for (int j = 0; j < b.size(); ++j) q += 2.0 * (d - 2) * kron(b[j], tau(b[j]));
  for (const CMatrix& a : detail::rotated_diagonal_generators(b, f.U)) q += 2.0 * kron(a, tau(a));
  return q * (t * t / std::pow(double(d), 4));
}

}  // namespace qdisc

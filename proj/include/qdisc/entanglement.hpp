#pragma once

#include <cmath>

#include "states.hpp"

namespace qdisc {

inline int subsystem_dim(const CMatrix& rho, int d, const char* what) {
  if (d < 2 || rho.rows() != d * d || rho.cols() != d * d)
    throw DimensionError(std::string(what) + ": expected a d²×d² matrix");
  return d;
}

// Transpose on the second (B) factor: <a b|ρᴾᵀ|a' b'> = <a b'|ρ|a' b>.
inline CMatrix partial_transpose(const CMatrix& rho, int d) {
  subsystem_dim(rho, d, "partial_transpose");
  CMatrix out(d * d, d * d);
  for (int a = 0; a < d; ++a)
    for (int ap = 0; ap < d; ++ap) out.block(a * d, ap * d, d, d) = rho.block(a * d, ap * d, d, d).transpose();
  return out;
}

// <m μ|ρᴿ|n ν> = <m n|ρ|μ ν>
inline CMatrix realignment(const CMatrix& rho, int d) {
  subsystem_dim(rho, d, "realignment");
  CMatrix out(d * d, d * d);
  for (int m = 0; m < d; ++m)
    for (int mu = 0; mu < d; ++mu)
      for (int n = 0; n < d; ++n)
        for (int nu = 0; nu < d; ++nu) out(m * d + mu, n * d + nu) = rho(m * d + n, mu * d + nu);
  return out;
}

inline double min_pt_eigenvalue(const CMatrix& rho, int d) {
  return min_eigenvalue(partial_transpose(rho, d));
}

inline double negativity(const CMatrix& rho, int d) {
  return std::max(0.0, 0.5 * (trace_norm(partial_transpose(rho, d)) - 1.0));
}

inline double realignment_negativity(const CMatrix& rho, int d) {
  return std::max(0.0, 0.5 * (trace_norm(realignment(rho, d)) - 1.0));
}

// min eigenvalue over ρ_A⊗𝕀 - ρ and 𝕀⊗ρ_B - ρ; negative means the criterion is violated.
inline double reduction_criterion(const CMatrix& rho, int d) {
  subsystem_dim(rho, d, "reduction_criterion");
  const CMatrix id = identity(d);
  const double a = min_eigenvalue(CMatrix(kron(partial_trace_b(rho, d), id) - rho));
  const double b = min_eigenvalue(CMatrix(kron(id, partial_trace_a(rho, d)) - rho));
  return std::min(a, b);
}

// Sufficient separability condition tr ρ² ≤ 1/(d²-1).
inline bool gurvits_barnum(const CMatrix& rho, int d) {
  subsystem_dim(rho, d, "gurvits_barnum");
  const double purity = trace_product(rho, rho).real();
  return purity <= 1.0 / (double(d) * d - 1.0) + 1e-12;
}

struct EntanglementReport {
  double negativity = 0.0;
  double realignment_negativity = 0.0;
  double reduction_min_eig = 0.0;
  double min_pt_eigenvalue = 0.0;
  bool gurvits_barnum_separable = false;
  bool ppt = true;
};

inline EntanglementReport entanglement_report(const CMatrix& rho, int d) {
  EntanglementReport r;
  r.negativity = negativity(rho, d);
  r.realignment_negativity = realignment_negativity(rho, d);
  r.reduction_min_eig = reduction_criterion(rho, d);
  r.min_pt_eigenvalue = min_pt_eigenvalue(rho, d);
  r.gurvits_barnum_separable = gurvits_barnum(rho, d);
  r.ppt = r.min_pt_eigenvalue >= -1e-9;
  return r;
}

// Bisection on the sign of the smallest eigenvalue of ρ(t)ᴾᵀ.
inline double ppt_boundary(const DensityFamily& family, int d, Interval bracket, double tol = 1e-10) {
  auto g = [&](double t) { return min_pt_eigenvalue(family(t), d); };
  double lo = bracket.lo, hi = bracket.hi;
  const bool neg_lo = g(lo) < 0.0;
  const bool neg_hi = g(hi) < 0.0;
  if (neg_lo == neg_hi) throw InvalidInput("ppt_boundary: no sign change of min eig(ρᴾᵀ) in bracket");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if ((g(mid) < 0.0) == neg_lo)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Partially transposed family; still affine with ρ(0) ∝ 𝕀, so t_range applies.
inline DensityFamily partial_transpose_family(const DensityFamily& family, int d) {
  return [family, d](double t) { return partial_transpose(family(t), d); };
}

// PPT sub-interval of the positivity range, from the two exact ranges.
inline Interval ppt_range(const DensityFamily& family, int d) {
  const Interval a = t_range(family);
  const Interval b = t_range(partial_transpose_family(family, d));
  return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

}  // namespace qdisc

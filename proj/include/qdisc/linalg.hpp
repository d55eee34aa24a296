#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <vector>

#include "errors.hpp"

namespace qdisc {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline CMatrix identity(int n) { return CMatrix::Identity(n, n); }

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& a) {
  return a.size() ? a.cwiseAbs().maxCoeff() : 0.0;
}

inline double hermiticity_defect(const CMatrix& a) { return max_abs(a - a.adjoint()); }

inline CMatrix hermitian_part(const CMatrix& a) { return 0.5 * (a + a.adjoint()); }

// Ascending eigenvalues of the Hermitian part of h.
inline RVector hermitian_eigenvalues(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(h), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

inline RVector symmetric_eigenvalues(const RMatrix& a) {
  RMatrix s = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<RMatrix> es(s, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

inline double min_eigenvalue(const CMatrix& h) { return hermitian_eigenvalues(h)(0); }

// Sum of |eigenvalues|; only valid for Hermitian input.
inline double trace_norm_hermitian(const CMatrix& h) {
  return hermitian_eigenvalues(h).cwiseAbs().sum();
}

// Sum of singular values; any square matrix.
inline double trace_norm(const CMatrix& a) {
  Eigen::JacobiSVD<CMatrix> svd(a);
  return svd.singularValues().sum();
}

// tr sqrt(Q) for PSD Q. Eigenvalues below the roundoff floor count as zero,
// otherwise sqrt turns 1e-18 noise into 1e-9.
inline double trace_sqrt_psd(const CMatrix& q) {
  const RVector ev = hermitian_eigenvalues(q);
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, ev.cwiseAbs().maxCoeff()) *
                       static_cast<double>(ev.size());
  double acc = 0.0;
  for (Eigen::Index k = 0; k < ev.size(); ++k)
    if (ev(k) > floor) acc += std::sqrt(ev(k));
  return acc;
}

// tr(A B) without forming the product.
inline Complex trace_product(const CMatrix& a, const CMatrix& b) {
  return (a.array() * b.transpose().array()).sum();
}

inline bool is_unitary(const CMatrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  return max_abs(u.adjoint() * u - identity(static_cast<int>(u.rows()))) <= tol;
}

inline bool is_special_unitary(const CMatrix& u, double tol) {
  return is_unitary(u, tol) && std::abs(u.determinant() - Complex(1.0, 0.0)) <= tol;
}

inline bool is_orthogonal(const RMatrix& v, double tol) {
  if (v.rows() != v.cols()) return false;
  return max_abs(RMatrix(v.transpose() * v - RMatrix::Identity(v.rows(), v.cols()))) <= tol;
}

// Subsystem A is the slow (left) tensor factor. Tracing out A gives rho_B.
inline CMatrix partial_trace_a(const CMatrix& rho, int d) {
  CMatrix out = CMatrix::Zero(d, d);
  for (int a = 0; a < d; ++a) out += rho.block(a * d, a * d, d, d);
  return out;
}

inline CMatrix partial_trace_b(const CMatrix& rho, int d) {
  CMatrix out(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) out(a, b) = rho.block(a * d, b * d, d, d).trace();
  return out;
}

// tr(rho (A ⊗ B)) in O(d^4) without forming the Kronecker product.
inline Complex trace_with_product(const CMatrix& rho, const CMatrix& a, const CMatrix& b) {
  const Eigen::Index d = a.rows();
  Complex acc = 0.0;
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index ip = 0; ip < d; ++ip) {
      const Complex aval = a(ip, i);
      if (aval == Complex(0.0, 0.0)) continue;
      Complex inner = 0.0;
      for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index jp = 0; jp < d; ++jp) inner += rho(i * d + j, ip * d + jp) * b(jp, j);
      acc += aval * inner;
    }
  return acc;
}

inline void require_square(const CMatrix& m, Eigen::Index n, const char* what) {
  if (m.rows() != n || m.cols() != n)
    throw DimensionError(std::string(what) + ": expected " + std::to_string(n) + "x" +
                         std::to_string(n) + " matrix, got " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
}

inline void require_square(const RMatrix& m, Eigen::Index n, const char* what) {
  if (m.rows() != n || m.cols() != n)
    throw DimensionError(std::string(what) + ": expected " + std::to_string(n) + "x" +
                         std::to_string(n) + " matrix, got " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
}

inline void require_length(const RVector& v, Eigen::Index n, const char* what) {
  if (v.size() != n)
    throw DimensionError(std::string(what) + ": expected length " + std::to_string(n) + ", got " +
                         std::to_string(v.size()));
}

// Eigenvalues grouped into (value, multiplicity) with a clustering tolerance.
struct SpectrumEntry {
  double value;
  int multiplicity;
};
using Spectrum = std::vector<SpectrumEntry>;

inline Spectrum group_eigenvalues(const RVector& ascending, double tol) {
  Spectrum out;
  for (Eigen::Index i = 0; i < ascending.size(); ++i) {
    const double v = ascending(i);
    if (!out.empty() && std::abs(v - out.back().value) <= tol) {
      auto& e = out.back();
      e.value = (e.value * e.multiplicity + v) / (e.multiplicity + 1);
      ++e.multiplicity;
    } else {
      out.push_back({v, 1});
    }
  }
  return out;
}

// Expands a spectrum back into a sorted list of values.
inline RVector expand_spectrum(const Spectrum& s) {
  int n = 0;
  for (const auto& e : s) n += e.multiplicity;
  RVector out(n);
  int k = 0;
  for (const auto& e : s)
    for (int m = 0; m < e.multiplicity; ++m) out(k++) = e.value;
  std::sort(out.data(), out.data() + n);
  return out;
}

}  // namespace qdisc

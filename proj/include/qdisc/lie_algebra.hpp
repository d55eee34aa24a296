#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "linalg.hpp"

namespace qdisc {

// Generalized Gell-Mann generators of su(d). Indices are 0-based in code;
// generator j here is lambda_{j+1} in the usual 1-based numbering.
//
// Ordering: pairs (p,q), p<q, lexicographic; each pair gives the symmetric
// generator then the antisymmetric one. The level-k diagonal generator sits at
// 1-based position k^2-1. For d=3 this is the standard lambda_1..lambda_8.
class GellMannBasis {
 public:
  explicit GellMannBasis(int d) : d_(d) {
    if (d < 3)
      throw DimensionError("dimension d=" + std::to_string(d) +
                           " unsupported: only d >= 3 is supported");
    const int n = d * d - 1;
    gens_.assign(n, CMatrix::Zero(d, d));
    int p = 0, q = 1;
    auto next_pair = [&] {
      if (++q == d) {
        ++p;
        q = p + 1;
      }
    };
    int pos = 1;  // 1-based
    int level = 2;
    while (pos <= n) {
      if (pos == level * level - 1) {
        CMatrix g = CMatrix::Zero(d, d);
        const double c = std::sqrt(2.0 / (level * (level - 1)));
        for (int i = 0; i < level - 1; ++i) g(i, i) = c;
        g(level - 1, level - 1) = -c * (level - 1);
        gens_[pos - 1] = g;
        diag_.push_back(pos - 1);
        ++level;
        ++pos;
      } else {
        CMatrix s = CMatrix::Zero(d, d), a = CMatrix::Zero(d, d);
        s(p, q) = s(q, p) = 1.0;
        a(p, q) = Complex(0.0, -1.0);
        a(q, p) = Complex(0.0, 1.0);
        gens_[pos - 1] = s;
        gens_[pos] = a;
        next_pair();
        pos += 2;
      }
    }
    dpp_ = std::sqrt(d * (d - 1) / 2.0);
    dp_ = dpp_ / (d - 2);
  }

  int d() const { return d_; }
  int size() const { return d_ * d_ - 1; }
  const CMatrix& operator[](int j) const { return gens_[j]; }
  const std::vector<CMatrix>& generators() const { return gens_; }
  double dprime() const { return dp_; }
  double dprimeprime() const { return dpp_; }
  // 0-based positions k^2-2, k = 2..d.
  const std::vector<int>& diagonal_indices() const { return diag_; }

 private:
  int d_;
  std::vector<CMatrix> gens_;
  std::vector<int> diag_;
  double dp_ = 0.0, dpp_ = 0.0;
};

inline GellMannBasis build_basis(int d) { return GellMannBasis(d); }

// Delta[j](k,l) = dhat_{jkl}, F[j](k,l) = fhat_{jkl}.
struct StructureTensors {
  int d = 0;
  int n = 0;
  double dprime = 0.0;
  std::vector<RMatrix> Delta;
  std::vector<RMatrix> F;

  double dhat(int j, int k, int l) const { return Delta[j](k, l); }
  double fhat(int j, int k, int l) const { return F[j](k, l); }
};

inline StructureTensors structure_tensors(const GellMannBasis& b) {
  StructureTensors t;
  t.d = b.d();
  t.n = b.size();
  t.dprime = b.dprime();
  const int n = t.n;
  t.Delta.assign(n, RMatrix::Zero(n, n));
  t.F.assign(n, RMatrix::Zero(n, n));
  for (int j = 0; j < n; ++j)
    for (int k = j; k < n; ++k) {
      const CMatrix ab = b[j] * b[k];
      const CMatrix ba = b[k] * b[j];
      const CMatrix anti = ab + ba;
      const CMatrix comm = ab - ba;
      for (int l = 0; l < n; ++l) {
        const double dv = 0.25 * trace_product(anti, b[l]).real();
        // (1/4i) tr([a,b] c) = -i/4 tr(...); keep the real part
        const double fv = (Complex(0.0, -0.25) * trace_product(comm, b[l])).real();
        t.Delta[l](j, k) = t.Delta[l](k, j) = dv;
        t.F[l](j, k) = fv;
        t.F[l](k, j) = -fv;
      }
    }
  // Delta_l(j,k) = dhat_{jkl}; total symmetry makes this equal to dhat_{ljk}.
  // F_l(j,k) = fhat_{jkl} = fhat_{ljk} by cyclicity.
  return t;
}

inline void require_coeff(const StructureTensors& t, const RVector& v, const char* what) {
  require_length(v, t.n, what);
}

inline RVector star(const StructureTensors& t, const RVector& n, const RVector& m) {
  require_coeff(t, n, "star");
  require_coeff(t, m, "star");
  RVector out(t.n);
  for (int j = 0; j < t.n; ++j) out(j) = t.dprime * n.dot(t.Delta[j] * m);
  return out;
}

inline RVector wedge(const StructureTensors& t, const RVector& n, const RVector& m) {
  require_coeff(t, n, "wedge");
  require_coeff(t, m, "wedge");
  RVector out(t.n);
  for (int j = 0; j < t.n; ++j) out(j) = t.dprime * n.dot(t.F[j] * m);
  return out;
}

// Basis and tensors bundled; most downstream operations need both.
struct Algebra {
  GellMannBasis basis;
  StructureTensors tensors;

  explicit Algebra(int d) : basis(d), tensors(structure_tensors(basis)) {}
  int d() const { return basis.d(); }
  int n() const { return basis.size(); }
};

struct Coefficients {
  double a0 = 0.0;
  RVector a;
};

// <a, lambda>
inline CMatrix expand(const GellMannBasis& b, const RVector& a) {
  require_length(a, b.size(), "expand");
  CMatrix out = CMatrix::Zero(b.d(), b.d());
  for (int j = 0; j < b.size(); ++j)
    if (a(j) != 0.0) out += a(j) * b[j];
  return out;
}

inline CMatrix expand(const GellMannBasis& b, double a0, const RVector& a) {
  CMatrix out = expand(b, a);
  out.diagonal().array() += a0;
  return out;
}

inline CMatrix expand(const GellMannBasis& b, const Coefficients& c) { return expand(b, c.a0, c.a); }

inline Coefficients decompose(const GellMannBasis& b, const CMatrix& m) {
  require_square(m, b.d(), "decompose");
  if (hermiticity_defect(m) > 1e-9)
    throw InvalidInput("decompose: matrix is not Hermitian within 1e-9");
  Coefficients c;
  c.a0 = m.trace().real() / b.d();
  c.a.resize(b.size());
  for (int j = 0; j < b.size(); ++j) c.a(j) = 0.5 * trace_product(m, b[j]).real();
  return c;
}

// Coefficients of A∘B = (AB+BA)/2.
inline Coefficients jordan_product(const Algebra& alg, const Coefficients& x,
                                   const Coefficients& y) {
  require_coeff(alg.tensors, x.a, "jordan_product");
  require_coeff(alg.tensors, y.a, "jordan_product");
  const double d = alg.d();
  Coefficients c;
  c.a0 = x.a0 * y.a0 + (2.0 / d) * x.a.dot(y.a);
  c.a = y.a0 * x.a + x.a0 * y.a + star(alg.tensors, x.a, y.a) / alg.basis.dprime();
  return c;
}

namespace detail {
inline RMatrix adjoint_unchecked(const GellMannBasis& b, const CMatrix& u) {
  const int n = b.size();
  RMatrix r(n, n);
  const CMatrix ud = u.adjoint();
  for (int k = 0; k < n; ++k) {
    const CMatrix rot = u * b[k] * ud;
    for (int j = 0; j < n; ++j) r(j, k) = 0.5 * trace_product(rot, b[j]).real();
  }
  return r;
}
}  // namespace detail

// R(U)_{jk} = tr(U λ_k U† λ_j)/2 for U in SU(d).
inline RMatrix adjoint_rep(const GellMannBasis& b, const CMatrix& u) {
  require_square(u, b.d(), "adjoint_rep");
  if (!is_special_unitary(u, 1e-9))
    throw InvalidInput("adjoint_rep: input is not special unitary within 1e-9");
  return detail::adjoint_unchecked(b, u);
}

// Same map for any unitary; the global phase drops out of U·U†.
inline RMatrix adjoint_rep_unitary(const GellMannBasis& b, const CMatrix& u) {
  require_square(u, b.d(), "adjoint_rep_unitary");
  if (!is_unitary(u, 1e-9)) throw InvalidInput("adjoint_rep_unitary: input is not unitary");
  return detail::adjoint_unchecked(b, u);
}

// Coefficient-space image of transposition: +1 on symmetric, -1 on antisymmetric generators.
inline RMatrix transposition_matrix(const GellMannBasis& b) {
  RMatrix t = RMatrix::Zero(b.size(), b.size());
  for (int k = 0; k < b.size(); ++k) t(k, k) = 0.5 * trace_product(b[k].transpose(), b[k]).real();
  return t;
}

struct StarSumResult {
  RVector residual;
  double residual_norm = 0.0;  // sup norm
  double trace_defect = 0.0;   // max_j |tr(Aᵀ Δ_j B)|
  bool satisfied = false;
};

// Σ_k (A e_k)⋆(B e_k), together with the equivalent trace form.
inline StarSumResult star_sum_criterion(const StructureTensors& t, const RMatrix& a,
                                        const RMatrix& b, double tol = 1e-10) {
  require_square(a, t.n, "star_sum_criterion");
  require_square(b, t.n, "star_sum_criterion");
  StarSumResult r;
  r.residual = RVector::Zero(t.n);
  for (int k = 0; k < t.n; ++k) r.residual += star(t, a.col(k), b.col(k));
  r.residual_norm = r.residual.cwiseAbs().maxCoeff();
  for (int j = 0; j < t.n; ++j)
    r.trace_defect = std::max(r.trace_defect, std::abs((a.transpose() * t.Delta[j] * b).trace()));
  r.satisfied = r.residual_norm < tol;
  return r;
}

// exp(i<θ,λ>) through the eigendecomposition of the Hermitian generator.
inline CMatrix unitary_from_parameters(const GellMannBasis& b, const RVector& theta) {
  const CMatrix h = expand(b, theta);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(h));
  const CVector phases = (Complex(0.0, 1.0) * es.eigenvalues().cast<Complex>()).array().exp();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

inline RVector gaussian_parameters(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  RVector theta(n);
  for (int j = 0; j < n; ++j) theta(j) = g(rng);
  return theta;
}

inline CMatrix random_special_unitary(const GellMannBasis& b, std::mt19937_64& rng) {
  return unitary_from_parameters(b, gaussian_parameters(b.size(), rng));
}

inline CMatrix random_special_unitary(const GellMannBasis& b, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_special_unitary(b, rng);
}

}  // namespace qdisc

#pragma once

#include <cmath>
#include <random>
#include <vector>

#include <qdisc/classify.hpp>

namespace qdisc::testing {

inline RMatrix random_matrix(int n, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> g;
  RMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = scale * g(rng);
  return m;
}

inline RVector random_vector(int n, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> g;
  RVector v(n);
  for (int i = 0; i < n; ++i) v(i) = scale * g(rng);
  return v;
}

// Haar-like orthogonal matrix from QR of a Gaussian matrix.
inline RMatrix random_orthogonal(int n, std::mt19937_64& rng) {
  const RMatrix a = random_matrix(n, rng);
  Eigen::HouseholderQR<RMatrix> qr(a);
  RMatrix q = qr.householderQ();
  const RMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < n; ++k)
    if (r(k, k) < 0) q.col(k) *= -1.0;
  return q;
}

inline CMatrix random_hermitian(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = Complex(g(rng), g(rng));
  return hermitian_part(m);
}

// Random weights on the simplex with `count` entries.
inline std::vector<double> random_weights(int count, std::mt19937_64& rng) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> w(count);
  double total = 0.0;
  for (double& x : w) total += (x = e(rng));
  for (double& x : w) x /= total;
  return w;
}

// Textbook qutrit Gell-Mann matrices λ1..λ8, written out entry by entry.
inline std::vector<CMatrix> textbook_gell_mann() {
  const Complex i(0.0, 1.0);
  const double r3 = 1.0 / std::sqrt(3.0);
  std::vector<CMatrix> l(8, CMatrix::Zero(3, 3));
  l[0] << 0, 1, 0, 1, 0, 0, 0, 0, 0;
  l[1] << 0, -i, 0, i, 0, 0, 0, 0, 0;
  l[2] << 1, 0, 0, 0, -1, 0, 0, 0, 0;
  l[3] << 0, 0, 1, 0, 0, 0, 1, 0, 0;
  l[4] << 0, 0, -i, 0, 0, 0, i, 0, 0;
  l[5] << 0, 0, 0, 0, 0, 1, 0, 1, 0;
  l[6] << 0, 0, 0, 0, 0, -i, 0, i, 0;
  l[7] << r3, 0, 0, 0, r3, 0, 0, 0, -2 * r3;
  return l;
}

// Correlation matrix of p_a P_(0,0) + p_b P_(2,2), entered as printed.
inline RMatrix printed_pair_matrix(double pa, double pb) {
  const double h = 1.5, q = 0.75, s = 0.75 * std::sqrt(3.0);
  RMatrix k(8, 8);
  k << h * pa, 0, 0, -q * pb, s * pb, 0, 0, 0,
       0, -h * pa, 0, -s * pb, -q * pb, 0, 0, 0,
       0, 0, q * (2 * pa - pb), 0, 0, 0, 0, -s * pb,
       0, 0, 0, h * pa, 0, -q * pb, -s * pb, 0,
       0, 0, 0, 0, -h * pa, s * pb, -q * pb, 0,
       -q * pb, -s * pb, 0, 0, 0, h * pa, 0, 0,
       -s * pb, q * pb, 0, 0, 0, 0, -h * pa, 0,
       0, 0, s * pb, 0, 0, 0, 0, q * (2 * pa - pb);
  return k;
}

// Correlation matrix of the line mixture over (0,0), (1,1), (2,2), entered as printed.
inline RMatrix printed_line_matrix(double pa, double pb, double pg) {
  const double h = 1.5, q = 0.75, s = 0.75 * std::sqrt(3.0);
  RMatrix k(8, 8);
  k << h * pa, 0, 0, -q * pg, s * pg, -q * pb, s * pb, 0,
       0, -h * pa, 0, -s * pg, -q * pg, s * pb, q * pb, 0,
       0, 0, q * (2 * pa - pb - pg), 0, 0, 0, 0, s * (pb - pg),
       -q * pb, s * pb, 0, h * pa, 0, -q * pg, -s * pg, 0,
       -s * pb, -q * pb, 0, 0, -h * pa, s * pg, -q * pg, 0,
       -q * pg, -s * pg, 0, -q * pb, -s * pb, h * pa, 0, 0,
       -s * pg, q * pg, 0, s * pb, -q * pb, 0, -h * pa, 0,
       0, 0, -s * (pb - pg), 0, 0, 0, 0, q * (2 * pa - pb - pg);
  return k;
}

// Partial transpose on B written with four explicit index loops.
inline CMatrix loop_partial_transpose(const CMatrix& rho, int d) {
  CMatrix out(d * d, d * d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int ap = 0; ap < d; ++ap)
        for (int bp = 0; bp < d; ++bp) out(a * d + b, ap * d + bp) = rho(a * d + bp, ap * d + b);
  return out;
}

inline double sorted_diff(RVector a, RVector b) {
  std::sort(a.data(), a.data() + a.size());
  std::sort(b.data(), b.data() + b.size());
  return max_abs(RVector(a - b));
}

}  // namespace qdisc::testing

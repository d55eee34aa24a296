#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "discord.hpp"
#include "entanglement.hpp"

namespace qdisc {

// Diagonal ±1 matrix on R^8 (qutrit correlation matrices K = t·I).
struct SignMatrix {
  std::array<int, 8> s{1, 1, 1, 1, 1, 1, 1, 1};

  static SignMatrix from_string(const std::string& str) {
    if (str.size() != 8) throw InvalidInput("sign string must have 8 characters of '+' or '-'");
    SignMatrix m;
    for (int k = 0; k < 8; ++k) {
      if (str[k] == '+')
        m.s[k] = 1;
      else if (str[k] == '-')
        m.s[k] = -1;
      else
        throw InvalidInput("sign string must have 8 characters of '+' or '-'");
    }
    return m;
  }

  std::string str() const {
    std::string out(8, '+');
    for (int k = 0; k < 8; ++k) out[k] = s[k] > 0 ? '+' : '-';
    return out;
  }

  RVector vector() const {
    RVector v(8);
    for (int k = 0; k < 8; ++k) v(k) = s[k];
    return v;
  }

  RMatrix matrix() const { return RMatrix(vector().asDiagonal()); }

  SignMatrix operator*(const SignMatrix& o) const {
    SignMatrix m;
    for (int k = 0; k < 8; ++k) m.s[k] = s[k] * o.s[k];
    return m;
  }

  SignMatrix operator-() const {
    SignMatrix m;
    for (int k = 0; k < 8; ++k) m.s[k] = -s[k];
    return m;
  }

  auto operator<=>(const SignMatrix&) const = default;
};

inline SignMatrix sign_matrix(std::initializer_list<int> v) {
  SignMatrix m;
  int k = 0;
  for (int x : v) m.s[k++] = x;
  return m;
}

inline const SignMatrix& identity_signs() {
  static const SignMatrix m = sign_matrix({1, 1, 1, 1, 1, 1, 1, 1});
  return m;
}

inline const SignMatrix& transposition_signs() {
  static const SignMatrix m = sign_matrix({1, -1, 1, 1, -1, 1, -1, 1});
  return m;
}

// Binary counting order; bit 7-k set means entry k is -1.
inline std::vector<SignMatrix> enumerate_sign_states() {
  std::vector<SignMatrix> out;
  out.reserve(256);
  for (int i = 0; i < 256; ++i) {
    SignMatrix m;
    for (int k = 0; k < 8; ++k) m.s[k] = ((i >> (7 - k)) & 1) ? -1 : 1;
    out.push_back(m);
  }
  return out;
}

inline void require_qutrit(const GellMannBasis& b, const char* what) {
  if (b.d() != 3) throw DimensionError(std::string(what) + ": requires d = 3");
}

// Sorted eigenvalues of C_I = Σ_k s_k λ_k⊗λ_k; eig ρ(t) = (1 + t·c_j)/9.
inline RVector affine_spectrum(const GellMannBasis& b, const SignMatrix& m) {
  require_qutrit(b, "affine_spectrum");
  CMatrix c = CMatrix::Zero(9, 9);
  for (int k = 0; k < 8; ++k) c += double(m.s[k]) * kron(b[k], b[k]);
  return hermitian_eigenvalues(c);
}

inline DensityFamily sign_family(const GellMannBasis& b, const SignMatrix& m) {
  require_qutrit(b, "sign_family");
  return diagonal_correlation_family(b, m.vector());
}

inline Interval slope_range(const RVector& slopes) {
  return {-1.0 / slopes.maxCoeff(), -1.0 / slopes.minCoeff()};
}

// V_k = R(W_k) for W_1 = diag(1,-1,-1), W_2 = diag(-1,1,-1), W_3 = diag(-1,-1,1).
inline std::array<SignMatrix, 3> local_sign_generators(const GellMannBasis& b) {
  require_qutrit(b, "local_sign_generators");
  std::array<SignMatrix, 3> out;
  const std::array<std::array<double, 3>, 3> w{{{1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}}};
  for (int k = 0; k < 3; ++k) {
    CMatrix u = CMatrix::Zero(3, 3);
    for (int i = 0; i < 3; ++i) u(i, i) = w[k][i];
    const RMatrix r = adjoint_rep(b, u);
    for (int j = 0; j < 8; ++j) {
      if (std::abs(std::abs(r(j, j)) - 1.0) > 1e-12)
        throw InvalidInput("local_sign_generators: adjoint of W_k is not a sign matrix");
      out[k].s[j] = r(j, j) > 0 ? 1 : -1;
    }
  }
  return out;
}

inline std::vector<SignMatrix> local_orbit(const GellMannBasis& b, const SignMatrix& m) {
  std::vector<SignMatrix> out{m};
  for (const SignMatrix& v : local_sign_generators(b)) out.push_back(m * v);
  return out;
}

struct JordanGoodSet {
  std::vector<SignMatrix> automorphisms;
  std::vector<SignMatrix> anti_automorphisms;
  bool classifier_agrees = true;
};

// I = diag(ε1, ε2, 1, ε1ε2ε5, ε5, ε2ε5, ε1ε5, 1), split by jordan_classify.
inline JordanGoodSet jordan_good_matrices(const Algebra& alg) {
  require_qutrit(alg.basis, "jordan_good_matrices");
  JordanGoodSet out;
  for (int e1 : {1, -1})
    for (int e2 : {1, -1})
      for (int e5 : {1, -1}) {
        const SignMatrix m = sign_matrix({e1, e2, 1, e1 * e2 * e5, e5, e2 * e5, e1 * e5, 1});
        const JordanClass c = jordan_classify(alg, m.matrix());
        if (c.kind == JordanKind::automorphism)
          out.automorphisms.push_back(m);
        else if (c.kind == JordanKind::anti_automorphism)
          out.anti_automorphisms.push_back(m);
        else
          out.classifier_agrees = false;
      }
  std::sort(out.automorphisms.begin(), out.automorphisms.end());
  std::sort(out.anti_automorphisms.begin(), out.anti_automorphisms.end());
  return out;
}

// ---------------------------------------------------------------------------
// Tabulated reference data for the qutrit sign-matrix classes.

// One tabulated eigenvalue (c0 + c1·t)/27 with multiplicity.
struct TabulatedEigenvalue {
  double c0;
  double c1;
  int multiplicity;
  std::string text;
};

struct TabulatedPpt {
  std::vector<int> orbits;  // 1-based orbit numbers within the class
  double lo;
  double hi;
  bool lo_numeric;  // only given to about three decimals
  bool hi_numeric;
  std::string label;
};

struct TabulatedClass {
  int index;  // k in E_k
  int size;
  std::vector<SignMatrix> representatives;  // I_{k,1}, I_{k,2}, ...
  std::vector<TabulatedEigenvalue> spectrum;
  bool spectrum_complete;  // false when some eigenvalues are only given numerically
  double t_lo, t_hi;
  bool range_numeric;
  std::vector<TabulatedPpt> ppt;
  bool separable_indicators;  // N = N_R = 0 claimed over the whole range
};

inline const std::vector<TabulatedClass>& tabulated_classes() {
  static const std::vector<TabulatedClass> data = [] {
    const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0), s5 = std::sqrt(5.0);
    std::vector<TabulatedClass> c;
    c.push_back({1, 32,
                 {sign_matrix({1, 1, 1, 1, 1, 1, 1, -1}), sign_matrix({1, 1, 1, 1, 1, -1, -1, -1}),
                  sign_matrix({1, 1, -1, 1, 1, 1, -1, -1}), sign_matrix({1, 1, -1, 1, 1, -1, 1, -1}),
                  sign_matrix({1, 1, -1, 1, -1, 1, 1, -1}), sign_matrix({1, 1, -1, -1, 1, 1, 1, -1}),
                  sign_matrix({1, -1, -1, 1, 1, 1, 1, -1}), sign_matrix({-1, 1, -1, 1, 1, 1, 1, -1})},
                 {{3, -10, 1, "(3-10t)/27"}, {3, -4, 3, "(3-4t)/27"}, {3, 2, 3, "(3+2t)/27"}, {3, 8, 2, "(3+8t)/27"}},
                 true, -3.0 / 8, 3.0 / 10, false,
                 {{{1}, -3.0 / (2 + 6 * s3), 3.0 / 10, false, false, "a"},
                  {{2, 3, 4, 5, 6, 7, 8}, -3.0 / 8, 3.0 / (4 + 6 * s2), false, false, "b"}},
                 false});
    c.push_back({2, 16,
                 {sign_matrix({1, 1, 1, 1, 1, 1, -1, -1}), sign_matrix({1, 1, 1, 1, 1, -1, 1, -1}),
                  sign_matrix({1, 1, 1, 1, -1, 1, 1, -1}), sign_matrix({1, 1, 1, -1, 1, 1, 1, -1})},
                 {{3, -10, 1, "(3-10t)/27"}, {3, -4, 1, "(3-4t)/27"}, {3, 2, 4, "(3+2t)/27"}, {2, 8, 1, "(2+8t)/27"},
                  {3, -(1 + 3 * s5), 1, "(3-(1+3√5)t)/27"}, {3, -(1 - 3 * s5), 1, "(3-(1-3√5)t)/27"}},
                 true, -3.0 / 8, 2.0 / 10, false,
                 {{{1, 2, 3, 4}, -0.316, 2.0 / 10, true, false, "c"}},
                 false});
    c.push_back({3, 16,
                 {identity_signs(), sign_matrix({1, 1, 1, 1, 1, -1, -1, 1}), sign_matrix({1, -1, -1, 1, 1, 1, 1, 1}),
                  sign_matrix({-1, 1, -1, 1, 1, 1, 1, 1})},
                 {{3, -8, 3, "(3-8t)/27"}, {3, 4, 6, "(3+4t)/27"}},
                 true, -3.0 / 4, 3.0 / 8, false,
                 {{{1}, -3.0 / 16, 3.0 / 8, false, false, "d"}, {{2, 3, 4}, -3.0 / 10, 3.0 / 8, false, false, "e"}},
                 false});
    c.push_back({4, 28,
                 {sign_matrix({1, 1, 1, 1, -1, 1, -1, 1}), sign_matrix({1, 1, 1, 1, -1, -1, 1, 1}),
                  sign_matrix({1, -1, 1, 1, 1, 1, -1, 1}), sign_matrix({1, -1, 1, 1, 1, -1, 1, 1}),
                  sign_matrix({1, -1, 1, 1, -1, 1, 1, 1}), sign_matrix({1, -1, 1, -1, 1, 1, 1, 1}),
                  sign_matrix({1, -1, -1, 1, -1, 1, -1, 1})},
                 {{3, -8, 1, "(3-8t)/27"}, {3, -2, 4, "(3-2t)/27"}, {3, 4, 2, "(3+4t)/27"},
                  {3, -(6 * s2 - 4), 1, "(3-(6√2-4)t)/27"}, {3, 6 * s2 + 4, 1, "(3+(6√2+4)t)/27"}},
                 true, -3.0 / (6 * s2 + 4), 3.0 / 8, false, {}, true});
    c.push_back({5, 12,
                 {sign_matrix({1, 1, 1, 1, -1, 1, -1, -1}), sign_matrix({1, 1, 1, 1, -1, -1, 1, -1}),
                  sign_matrix({1, -1, -1, 1, -1, 1, -1, -1})},
                 {{3, -10, 2, "(3-10t)/27"}, {3, 2, 6, "(3+2t)/27"}, {3, 8, 1, "(3+8t)/27"}},
                 true, -3.0 / 8, 3.0 / 10, false, {}, true});
    c.push_back({6, 16,
                 {sign_matrix({1, -1, 1, 1, 1, 1, -1, -1}), sign_matrix({1, -1, 1, 1, 1, -1, 1, -1}),
                  sign_matrix({1, -1, 1, 1, -1, 1, 1, -1}), sign_matrix({1, -1, 1, -1, 1, 1, 1, -1})},
                 {{3, -4, 3, "(3-4t)/27"}, {2, 3, 2, "(2+3t)/27"}, {3, 8, 1, "(3+8t)/27"}},
                 false, -0.3163, 0.3404, true,
                 {{{1, 2, 3, 4}, -0.3163, 3.0 / 10, true, false, "f"}},
                 false});
    c.push_back({7, 4, {transposition_signs()},
                 {{3, -2, 8, "(3-2t)/27"}, {3, 16, 1, "(3+16t)/27"}},
                 true, -3.0 / 16, 3.0 / 2, false,
                 {{{1}, -3.0 / 16, 3.0 / 8, false, false, "E7"}},
                 false});
    c.push_back({8, 4, {sign_matrix({1, -1, 1, 1, -1, 1, -1, -1})},
                 {{3, -4, 3, "(3-4t)/27"}, {3, 2, 4, "(3+2t)/27"}, {3, -(6 * s3 - 2), 1, "(3-(6√3-2)t)/27"},
                  {3, 6 * s3 + 2, 1, "(3+(6√3+2)t)/27"}},
                 true, -3.0 / (6 * s3 + 2), 3.0 / (6 * s3 - 2), false,
                 {{{1}, -3.0 / (6 * s3 + 2), 3.0 / 10, false, false, "g"}},
                 false});
    return c;
  }();
  return data;
}

// The Werner-class summary lists (3-8t)/27 with multiplicity 2.
inline constexpr int tabulated_werner_summary_multiplicity = 2;

// ---------------------------------------------------------------------------

struct OrbitRecord {
  std::vector<SignMatrix> members;
  Interval ppt_range;
  bool negativity_zero = false;   // N < 1e-9 over the sampled grid
  bool realignment_zero = false;  // N_R < 1e-9 over the sampled grid
};

struct SpectralClassRecord {
  std::string class_id;  // "E1".."E8", mirrored classes "E1'".."E8'"
  int index = 0;         // k, 0 if unlabeled
  bool mirror = false;   // ρ(t) of the class equals the E_k family at -t
  std::vector<SignMatrix> members;
  std::vector<OrbitRecord> orbits;
  RVector slopes;
  Interval t_range;
  Interval ppt_range;  // intersection over orbits
  bool negativity_zero = false;
  bool realignment_zero = false;
};

namespace detail {

inline std::vector<long long> slope_key(const RVector& s) {
  std::vector<long long> k;
  for (Eigen::Index i = 0; i < s.size(); ++i) k.push_back(std::llround(s(i) * 1e9));
  return k;
}

inline void fill_orbit_entanglement(const GellMannBasis& b, OrbitRecord& o, const Interval& range) {
  const DensityFamily fam = sign_family(b, o.members.front());
  o.ppt_range = ppt_range(fam, 3);
  double n_max = 0.0, nr_max = 0.0;
  const int points = 50;
  for (int i = 0; i < points; ++i) {
    const double t = range.lo + (range.hi - range.lo) * i / (points - 1);
    const CMatrix rho = fam(t);
    n_max = std::max(n_max, negativity(rho, 3));
    nr_max = std::max(nr_max, realignment_negativity(rho, 3));
  }
  o.negativity_zero = n_max < 1e-9;
  o.realignment_zero = nr_max < 1e-9;
}

}  // namespace detail

// Groups all 256 sign matrices by the slope multiset of ρ(t).
inline std::vector<SpectralClassRecord> group_isospectral(const GellMannBasis& b) {
  require_qutrit(b, "group_isospectral");
  std::map<std::vector<long long>, SpectralClassRecord> groups;
  for (const SignMatrix& m : enumerate_sign_states()) {
    const RVector s = affine_spectrum(b, m);
    auto& g = groups[detail::slope_key(s)];
    if (g.members.empty()) g.slopes = s;
    g.members.push_back(m);
  }
  // Keys must be well separated for rounding to be trustworthy.
  std::vector<RVector> reps;
  for (auto& [k, g] : groups) reps.push_back(g.slopes);
  for (size_t i = 0; i < reps.size(); ++i)
    for (size_t j = i + 1; j < reps.size(); ++j)
      if ((reps[i] - reps[j]).cwiseAbs().maxCoeff() < 1e-3)
        throw InvalidInput("group_isospectral: two classes differ by less than 1e-3");

  std::vector<SpectralClassRecord> out;
  for (auto& [k, g] : groups) out.push_back(std::move(g));

  // Label through the tabulated representatives, then the negated ones.
  const std::array<SignMatrix, 3> gens = local_sign_generators(b);
  for (const TabulatedClass& tc : tabulated_classes()) {
    for (bool mirror : {false, true}) {
      const SignMatrix rep = mirror ? -tc.representatives.front() : tc.representatives.front();
      for (SpectralClassRecord& r : out) {
        if (std::find(r.members.begin(), r.members.end(), rep) == r.members.end()) continue;
        r.index = tc.index;
        r.mirror = mirror;
        r.class_id = "E" + std::to_string(tc.index) + (mirror ? "'" : "");
        std::set<SignMatrix> seen;
        for (const SignMatrix& p : tc.representatives) {
          const SignMatrix q = mirror ? -p : p;
          OrbitRecord o;
          o.members = {q};
          for (const SignMatrix& v : gens) o.members.push_back(q * v);
          for (const SignMatrix& x : o.members) seen.insert(x);
          r.orbits.push_back(std::move(o));
        }
        // Any members not reached by the tabulated representatives form extra orbits.
        for (const SignMatrix& x : r.members) {
          if (seen.count(x)) continue;
          OrbitRecord o;
          o.members = {x};
          for (const SignMatrix& v : gens) o.members.push_back(x * v);
          for (const SignMatrix& y : o.members) seen.insert(y);
          r.orbits.push_back(std::move(o));
        }
      }
    }
  }
  for (size_t i = 0; i < out.size(); ++i)
    if (out[i].class_id.empty()) out[i].class_id = "unlabeled-" + std::to_string(i);

  for (SpectralClassRecord& r : out) {
    r.t_range = slope_range(r.slopes);
    r.ppt_range = r.t_range;
    r.negativity_zero = r.realignment_zero = true;
    for (OrbitRecord& o : r.orbits) {
      detail::fill_orbit_entanglement(b, o, r.t_range);
      r.ppt_range.lo = std::max(r.ppt_range.lo, o.ppt_range.lo);
      r.ppt_range.hi = std::min(r.ppt_range.hi, o.ppt_range.hi);
      r.negativity_zero = r.negativity_zero && o.negativity_zero;
      r.realignment_zero = r.realignment_zero && o.realignment_zero;
    }
  }
  std::sort(out.begin(), out.end(), [](const SpectralClassRecord& a, const SpectralClassRecord& c) {
    if (a.index != c.index) return (a.index == 0 ? 99 : a.index) < (c.index == 0 ? 99 : c.index);
    return a.mirror < c.mirror;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Adjoint matrices V_α = R(W_α) versus the tabulated 8×8 fixtures.

inline const std::map<BellLabel, RMatrix>& tabulated_v_matrices() {
  static const std::map<BellLabel, RMatrix> data = [] {
    const double h = 0.5, r = std::sqrt(3.0) / 2;
    auto m = [](std::initializer_list<std::initializer_list<double>> rows) {
      RMatrix out(8, 8);
      int i = 0;
      for (const auto& row : rows) {
        int j = 0;
        for (double v : row) out(i, j++) = v;
        ++i;
      }
      return out;
    };
    std::map<BellLabel, RMatrix> v;
    v[{0, 1}] = m({{-h, r, 0, 0, 0, 0, 0, 0}, {-r, -h, 0, 0, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0, 0, 0},
                   {0, 0, 0, -h, -r, 0, 0, 0}, {0, 0, 0, r, -h, 0, 0, 0}, {0, 0, 0, 0, 0, -h, r, 0},
                   {0, 0, 0, 0, 0, -r, -h, 0}, {0, 0, 0, 0, 0, 0, 0, 1}});
    v[{0, 2}] = m({{0, 0, 0, 0, 0, 1, 0, 0}, {0, 0, 0, 0, 0, 0, 1, 0}, {0, 0, -h, 0, 0, 0, 0, r},
                   {1, 0, 0, 0, 0, 0, 0, 0}, {0, -1, 0, 0, 0, 0, 0, 0}, {0, 0, 0, 1, 0, 0, 0, 0},
                   {0, 0, 0, 0, -1, 0, 0, 0}, {0, 0, -r, 0, 0, 0, 0, -h}});
    v[{1, 0}] = v[{0, 1}];  // tabulated identically
    v[{2, 0}] = m({{-h, -r, 0, 0, 0, 0, 0, 0}, {r, -h, 0, 0, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0, 0, 0},
                   {0, 0, 0, -h, r, 0, 0, 0}, {0, 0, 0, -r, -h, 0, 0, 0}, {0, 0, 0, 0, 0, -h, -r, 0},
                   {0, 0, 0, 0, 0, r, -h, 0}, {0, 0, 0, 0, 0, 0, 0, 1}});
    v[{1, 1}] = m({{0, 0, 0, -h, -r, 0, 0, 0}, {0, 0, 0, -r, h, 0, 0, 0}, {0, 0, -h, 0, 0, 0, 0, -r},
                   {0, 0, 0, 0, 0, -h, r, 0}, {0, 0, 0, 0, 0, r, h, 0}, {-h, r, 0, 0, 0, 0, 0, 0},
                   {-r, -h, 0, 0, 0, 0, 0, 0}, {0, 0, r, 0, 0, 0, 0, -h}});
    v[{1, 2}] = m({{0, 0, 0, 0, 0, -h, r, 0}, {0, 0, 0, 0, 0, -r, -h, 0}, {0, 0, -h, 0, 0, 0, 0, r},
                   {-h, r, 0, 0, 0, 0, 0, 0}, {r, h, 0, 0, 0, 0, 0, 0}, {0, 0, 0, -h, -r, 0, 0, 0},
                   {0, 0, 0, -r, h, 0, 0, 0}, {0, 0, -r, 0, 0, 0, 0, -h}});
    v[{2, 1}] = m({{0, 0, 0, -h, r, 0, 0, 0}, {0, 0, 0, r, h, 0, 0, 0}, {0, 0, -h, 0, 0, 0, 0, -r},
                   {0, 0, 0, 0, 0, -h, -r, 0}, {0, 0, 0, 0, 0, -r, h, 0}, {-h, -r, 0, 0, 0, 0, 0, 0},
                   {r, -h, 0, 0, 0, 0, 0, 0}, {0, 0, r, 0, 0, 0, 0, -h}});
    v[{2, 2}] = m({{0, 0, 0, 0, 0, -h, -r, 0}, {0, 0, 0, 0, 0, r, -h, 0}, {0, 0, -h, 0, 0, 0, 0, r},
                   {-h, -r, 0, 0, 0, 0, 0, 0}, {-r, h, 0, 0, 0, 0, 0, 0}, {0, 0, 0, -h, r, 0, 0, 0},
                   {0, 0, 0, r, h, 0, 0, 0}, {0, 0, -r, 0, 0, 0, 0, -h}});
    return v;
  }();
  return data;
}

struct VMatrixComparison {
  BellLabel label;
  double max_abs_diff = 0.0;
  bool matches = false;
  std::vector<std::string> equals;  // which computed matrices equal the tabulated one
  RMatrix computed;
  RMatrix tabulated;
};

struct AppendixBReport {
  std::vector<VMatrixComparison> entries;
  int direct_matches = 0;
  std::vector<std::pair<BellLabel, BellLabel>> tabulated_duplicates;
  std::vector<std::pair<BellLabel, BellLabel>> computed_duplicates;
};

inline std::string label_string(const BellLabel& a) {
  return "(" + std::to_string(a.m) + "," + std::to_string(a.n) + ")";
}

inline AppendixBReport verify_appendix_b(const GellMannBasis& b, double tol = 1e-10) {
  require_qutrit(b, "verify_appendix_b");
  AppendixBReport rep;
  std::map<BellLabel, RMatrix> computed;
  for (int m = 0; m < 3; ++m)
    for (int n = 0; n < 3; ++n) computed[{m, n}] = adjoint_rep_unitary(b, weyl_operator(3, {m, n}));
  for (const auto& [label, tab] : tabulated_v_matrices()) {
    VMatrixComparison c;
    c.label = label;
    c.computed = computed[label];
    c.tabulated = tab;
    c.max_abs_diff = max_abs(RMatrix(c.computed - tab));
    c.matches = c.max_abs_diff < tol;
    for (const auto& [other, r] : computed) {
      if (max_abs(RMatrix(r - tab)) < tol) c.equals.push_back("R(W" + label_string(other) + ")");
      if (max_abs(RMatrix(r.transpose() - tab)) < tol)
        c.equals.push_back("R(W" + label_string(other) + ")^T");
    }
    rep.direct_matches += c.matches ? 1 : 0;
    rep.entries.push_back(std::move(c));
  }
  const auto& tabs = tabulated_v_matrices();
  for (auto i = tabs.begin(); i != tabs.end(); ++i)
    for (auto j = std::next(i); j != tabs.end(); ++j) {
      if (max_abs(RMatrix(i->second - j->second)) < tol) rep.tabulated_duplicates.push_back({i->first, j->first});
      if (max_abs(RMatrix(computed[i->first] - computed[j->first])) < tol)
        rep.computed_duplicates.push_back({i->first, j->first});
    }
  return rep;
}

// ---------------------------------------------------------------------------

struct La3La8Check {
  SignMatrix signs;
  double max_residual = 0.0;
};

// Σ_{p=3,8} τ_I(Uλ_pU†)² = (4/3)𝕀 for Jordan-good I, sampled over random U.
inline La3La8Check la3la8_check(const GellMannBasis& b, const SignMatrix& m, int samples,
                                std::mt19937_64& rng) {
  require_qutrit(b, "la3la8_check");
  La3La8Check c{m, 0.0};
  const RVector s = m.vector();
  for (int i = 0; i < samples; ++i) {
    const CMatrix u = random_special_unitary(b, rng);
    CMatrix acc = CMatrix::Zero(3, 3);
    for (int p : b.diagonal_indices()) {
      const Coefficients a = decompose(b, hermitian_part(u * b[p] * u.adjoint()));
      const CMatrix tau = expand(b, a.a0, RVector(s.cwiseProduct(a.a)));
      acc += tau * tau;
    }
    c.max_residual = std::max(c.max_residual, max_abs(CMatrix(acc - (4.0 / 3.0) * identity(3))));
  }
  return c;
}

struct AppendixCReport {
  std::vector<SpectralClassRecord> classes;  // 16 records, E1, E1', E2, ...
  std::map<int, int> class_sizes;            // k -> size of E_k
  bool counts_match = false;
  JordanGoodSet jordan_good;
  std::vector<La3La8Check> la3la8;
  std::vector<std::string> conflicts;  // tabulated values not reproduced
};

namespace detail {

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

inline void compare_tabulated(const TabulatedClass& tc, const SpectralClassRecord& r,
                              std::vector<std::string>& conflicts) {
  const std::string id = "E" + std::to_string(tc.index);
  if (static_cast<int>(r.members.size()) != tc.size)
    conflicts.push_back(id + ": tabulated size " + std::to_string(tc.size) + ", computed " +
                        std::to_string(r.members.size()));
  int total = 0;
  for (const TabulatedEigenvalue& e : tc.spectrum) {
    total += e.multiplicity;
    int found = 0;
    for (Eigen::Index j = 0; j < r.slopes.size(); ++j)
      if (std::abs(3.0 * r.slopes(j) - e.c1) < 1e-8) ++found;
    if (e.c0 != 3.0)
      conflicts.push_back(id + ": tabulated eigenvalue " + e.text +
                          " breaks unit trace; the computed spectrum has slope " + fmt(e.c1) +
                          " with constant 3 (multiplicity " + std::to_string(found) + ")");
    else if (found < e.multiplicity)
      conflicts.push_back(id + ": tabulated eigenvalue " + e.text + " x" + std::to_string(e.multiplicity) +
                          " found only " + std::to_string(found) + " times in the computed spectrum");
    else if (tc.spectrum_complete && found != e.multiplicity)
      conflicts.push_back(id + ": tabulated eigenvalue " + e.text + " multiplicity " +
                          std::to_string(e.multiplicity) + ", computed " + std::to_string(found));
  }
  if (tc.spectrum_complete && total != 9)
    conflicts.push_back(id + ": tabulated multiplicities sum to " + std::to_string(total));
  const double rtol = tc.range_numeric ? 1e-3 : 1e-9;
  if (std::abs(r.t_range.lo - tc.t_lo) > rtol || std::abs(r.t_range.hi - tc.t_hi) > rtol)
    conflicts.push_back(id + ": tabulated t-range [" + fmt(tc.t_lo) + ", " + fmt(tc.t_hi) + "], computed [" +
                        fmt(r.t_range.lo) + ", " + fmt(r.t_range.hi) + "]");
  for (const TabulatedPpt& p : tc.ppt)
    for (int o : p.orbits) {
      if (o < 1 || o > static_cast<int>(r.orbits.size())) continue;
      const Interval& c = r.orbits[o - 1].ppt_range;
      const double lt = p.lo_numeric ? 1e-3 : 1e-6, ht = p.hi_numeric ? 1e-3 : 1e-6;
      if (std::abs(c.lo - p.lo) > lt || std::abs(c.hi - p.hi) > ht)
        conflicts.push_back(id + "," + std::to_string(o) + " (item " + p.label + "): tabulated PPT range [" +
                            fmt(p.lo) + ", " + fmt(p.hi) + "], computed [" + fmt(c.lo) + ", " + fmt(c.hi) + "]");
    }
  if (tc.separable_indicators && !(r.negativity_zero && r.realignment_zero))
    conflicts.push_back(id + ": nonzero negativity or realignment negativity on the t grid");
}

}  // namespace detail

inline AppendixCReport appendix_c_report(const Algebra& alg, std::uint64_t seed = 0) {
  require_qutrit(alg.basis, "appendix_c_report");
  AppendixCReport rep;
  rep.classes = group_isospectral(alg.basis);
  bool ok = rep.classes.size() == 16;
  for (const TabulatedClass& tc : tabulated_classes()) {
    int sizes[2] = {-1, -1};
    for (const SpectralClassRecord& r : rep.classes)
      if (r.index == tc.index) {
        sizes[r.mirror ? 1 : 0] = static_cast<int>(r.members.size());
        if (!r.mirror) detail::compare_tabulated(tc, r, rep.conflicts);
      }
    rep.class_sizes[tc.index] = sizes[0];
    ok = ok && sizes[0] == tc.size && sizes[1] == tc.size;
  }
  for (const SpectralClassRecord& r : rep.classes)
    if (r.index == 3 && !r.mirror) {
      int found = 0;
      for (Eigen::Index j = 0; j < r.slopes.size(); ++j)
        if (std::abs(3.0 * r.slopes(j) + 8.0) < 1e-8) ++found;
      if (found != tabulated_werner_summary_multiplicity)
        rep.conflicts.push_back("E3: Werner-class summary gives (3-8t)/27 multiplicity " +
                                std::to_string(tabulated_werner_summary_multiplicity) + ", computed " +
                                std::to_string(found));
    }
  rep.counts_match = ok;
  rep.jordan_good = jordan_good_matrices(alg);
  std::mt19937_64 rng(seed);
  for (const auto* set : {&rep.jordan_good.automorphisms, &rep.jordan_good.anti_automorphisms})
    for (const SignMatrix& m : *set) rep.la3la8.push_back(la3la8_check(alg.basis, m, 20, rng));
  return rep;
}

}  // namespace qdisc

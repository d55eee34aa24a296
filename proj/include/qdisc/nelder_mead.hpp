#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <vector>

#include "linalg.hpp"

namespace qdisc {

struct SimplexOptions {
  double tol = 1e-10;        // objective spread across the simplex
  int max_iter = 2000;       // shared by all restarts of one run
  double initial_step = 0.3;
  int max_restarts = 3;
};

struct SimplexResult {
  RVector x;
  double value = 0.0;
  double spread = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Nelder–Mead with dimension-adapted coefficients. On convergence the simplex
// is rebuilt around the best vertex; the run stops once a restart no longer
// improves the value by more than tol.
inline SimplexResult nelder_mead(const std::function<double(const RVector&)>& f, const RVector& x0,
                                 const SimplexOptions& opt) {
  const int n = static_cast<int>(x0.size());
  const double alpha = 1.0, gamma = 1.0 + 2.0 / n, rho = 0.75 - 1.0 / (2.0 * n),
               sigma = 1.0 - 1.0 / n;
  std::vector<RVector> pts(n + 1);
  std::vector<double> vals(n + 1);
  std::vector<int> order(n + 1);
  SimplexResult res;
  res.x = x0;
  res.value = f(x0);

  auto build = [&](const RVector& c) {
    pts[0] = c;
    vals[0] = f(c);
    for (int i = 0; i < n; ++i) {
      pts[i + 1] = c;
      pts[i + 1](i) += opt.initial_step;
      vals[i + 1] = f(pts[i + 1]);
    }
  };
  auto sort = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return vals[a] < vals[b]; });
  };

  int iter = 0;
  for (int restart = 0; restart <= opt.max_restarts; ++restart) {
    const double before = res.value;
    build(res.x);
    sort();
    while (iter < opt.max_iter) {
      const int best = order[0], worst = order[n], second = order[n - 1];
      if (vals[worst] - vals[best] <= opt.tol) break;
      ++iter;
      RVector centroid = RVector::Zero(n);
      for (int i = 0; i < n; ++i) centroid += pts[order[i]];
      centroid /= n;
      const RVector xr = centroid + alpha * (centroid - pts[worst]);
      const double fr = f(xr);
      if (fr < vals[best]) {
        const RVector xe = centroid + gamma * (xr - centroid);
        const double fe = f(xe);
        if (fe < fr) {
          pts[worst] = xe;
          vals[worst] = fe;
        } else {
          pts[worst] = xr;
          vals[worst] = fr;
        }
      } else if (fr < vals[second]) {
        pts[worst] = xr;
        vals[worst] = fr;
      } else {
        const bool outside = fr < vals[worst];
        const RVector xc = outside ? RVector(centroid + rho * (xr - centroid))
                                   : RVector(centroid + rho * (pts[worst] - centroid));
        const double fc = f(xc);
        if (fc < (outside ? fr : vals[worst])) {
          pts[worst] = xc;
          vals[worst] = fc;
        } else {
          for (int i = 1; i <= n; ++i) {
            const int k = order[i];
            pts[k] = pts[best] + sigma * (pts[k] - pts[best]);
            vals[k] = f(pts[k]);
          }
        }
      }
      sort();
    }
    const int best = order[0];
    res.spread = vals[order[n]] - vals[best];
    if (vals[best] <= res.value) {
      res.value = vals[best];
      res.x = pts[best];
    }
    res.converged = res.spread <= opt.tol;
    if (iter >= opt.max_iter) break;
    if (restart > 0 && before - res.value <= opt.tol) break;
  }
  res.iterations = iter;
  return res;
}

}  // namespace qdisc

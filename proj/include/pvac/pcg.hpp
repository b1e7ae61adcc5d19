#pragma once

#include <cmath>
#include <vector>

#include <Eigen/Core>

namespace pvac {

struct PcgResult {
  int iterations = 0;
  bool converged = false;
  double residual = 0.0;         ///< last value of the caller's residual measure
  std::vector<double> history;   ///< residual measure before each iteration and at exit
};

/// Preconditioned conjugate gradients for a symmetric positive definite
/// operator given as a callable. `inv_diag` is the Jacobi preconditioner.
/// Stops when measure(r) <= target, where r = b - A x.
template <typename Vec, typename ApplyA, typename Measure>
PcgResult pcg(ApplyA&& apply, const Vec& b, const Vec& inv_diag, Vec& x, double target, int max_iter,
              Measure&& measure) {
  PcgResult res;
  Vec r = b - apply(x);
  double m = measure(r);
  res.history.push_back(m);
  if (m <= target) {
    res.converged = true;
    res.residual = m;
    return res;
  }
  Vec z = inv_diag * r;
  Vec p = z;
  double rz = (r * z).sum();
  for (int it = 1; it <= max_iter; ++it) {
    const Vec Ap = apply(p);
    const double pAp = (p * Ap).sum();
    if (!(pAp > 0.0)) break;
    const double step = rz / pAp;
    x += step * p;
    r -= step * Ap;
    m = measure(r);
    res.history.push_back(m);
    res.iterations = it;
    if (m <= target) {
      res.converged = true;
      break;
    }
    z = inv_diag * r;
    const double rz_new = (r * z).sum();
    p = z + (rz_new / rz) * p;
    rz = rz_new;
  }
  res.residual = m;
  return res;
}

}  // namespace pvac

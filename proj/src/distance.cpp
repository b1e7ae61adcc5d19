#include "pvac/distance.hpp"

#include <cmath>

#include "pvac/norms.hpp"
#include "pvac/stencil.hpp"

namespace pvac {

double distance_functional(const FlowState& a, const FlowState& b, const WeightField& wf, const Grid& g, int N) {
  require_shape(a.v, g, "distance_functional");
  require_shape(b.v, g, "distance_functional");
  if (N < 1) throw ContractViolation("distance_functional: N must be positive");
  if (!(a.base - b.base).isZero(0.0)) throw ContractViolation("distance_functional: runs use different base maps");
  const double al = wf.alpha;
  const Kinematics ka = kinematics_of(a, g);
  const Kinematics kb = kinematics_of(b, g);
  const VectorField dv = a.v - b.v;
  const VectorField de = a.disp - b.disp;
  double Z = 0.5 * weighted_integral(dv.square().rowwise().sum(), weight_powers(wf, al), g);
  Z += al * weighted_integral(ka.J.pow(-1.0 / al - 2.0) * (ka.J - kb.J).square(), weight_powers(wf, 1.0 + al), g);
  if (N >= 2) {
    require_resolution(g, N, N, "distance_functional");
    const ScalarField Jw = ka.J.pow(-1.0 / al);
    for (const auto& mi : multi_indices(1, N - 1)) {
      const VectorField dvm = mixed_partial(dv, g, mi[0], mi[1], mi[2]);
      Z += 0.5 * weighted_integral(dvm.square().rowwise().sum(), weight_powers(wf, al + mi[2]), g);
      const TensorField D = gradient(VectorField(mixed_partial(de, g, mi[0], mi[1], mi[2])), g);
      ScalarField lie(g.size());
      for (Index p = 0; p < g.size(); ++p) lie(p) = (node_matrix(D, p) * node_matrix(ka.A, p)).squaredNorm();
      Z += 0.5 * weighted_integral(lie * Jw, weight_powers(wf, 1.0 + al + mi[2]), g);
    }
  }
  return Z;
}

std::optional<double> fit_growth_rate(const std::vector<double>& t, const std::vector<double>& Z) {
  if (t.size() != Z.size() || t.empty()) throw ContractViolation("fit_growth_rate: mismatched series");
  const double Z0 = Z.front();
  if (!(Z0 > 0.0)) return std::nullopt;
  double sty = 0.0, stt = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double s = t[i] - t.front();
    if (s <= 0.0 || !(Z[i] > 0.0)) continue;
    sty += s * std::log(Z[i] / Z0);
    stt += s * s;
  }
  if (stt == 0.0) return std::nullopt;
  return sty / stt;
}

double DistanceSeries::worst_bound_ratio() const {
  if (Z.empty() || !C || !(Z.front() > 0.0)) return 0.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i)
    worst = std::max(worst, Z[i] / (Z.front() * std::exp(*C * (t[i] - t.front()))));
  return worst;
}

DistanceSeries perturbation_distance(const std::vector<FlowState>& run_a, const std::vector<FlowState>& run_b,
                                     const WeightField& wf, const Grid& g, int N) {
  if (run_a.size() != run_b.size()) throw ContractViolation("perturbation_distance: runs have different lengths");
  DistanceSeries out;
  for (std::size_t i = 0; i < run_a.size(); ++i) {
    if (std::abs(run_a[i].t - run_b[i].t) > 1e-12 * std::max(1.0, std::abs(run_a[i].t)))
      throw ContractViolation("perturbation_distance: runs are sampled at different times");
    out.t.push_back(run_a[i].t);
    out.Z.push_back(distance_functional(run_a[i], run_b[i], wf, g, N));
  }
  out.C = fit_growth_rate(out.t, out.Z);
  return out;
}

}  // namespace pvac

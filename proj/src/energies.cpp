#include "pvac/energies.hpp"

#include <cmath>

namespace pvac {

VectorField positions(const FlowState& s, const Grid& g) {
  VectorField x = s.disp;
  for (int k = 0; k < g.n3; ++k)
    for (int j = 0; j < g.n2; ++j)
      for (int i = 0; i < g.n1; ++i) {
        const Index p = g.index(i, j, k);
        const Eigen::Vector3d X(g.x1(i), g.x2(j), g.x3(k));
        x.row(p) += (s.base * X).transpose().array();
      }
  return x;
}

double table_sum(const EnergyTable& t) {
  double s = 0.0;
  for (const auto& [mi, v] : t) s += v;
  return s;
}

double zeroth_energy(const FlowState& s, const Kinematics& kin, const WeightField& wf, const Grid& g) {
  require_shape(s.v, g, "zeroth_energy");
  require_shape(kin.J, g, "zeroth_energy");
  const double a = wf.alpha;
  const double kinetic = 0.5 * weighted_integral(s.v.square().rowwise().sum(), weight_powers(wf, a), g);
  const double potential = a * weighted_integral(kin.J.pow(-1.0 / a), weight_powers(wf, 1.0 + a), g);
  return kinetic + potential;
}

namespace {

void check(int N, int max_order, const Grid& g, const char* what) {
  if (N < 1 || N > max_order)
    throw ContractViolation(std::string(what) + ": N must lie in [1, " + std::to_string(max_order) + "]");
  require_resolution(g, N + 1, N + 1, what);
}

enum class Part { Lie, Curl, Div };

// Per-node squared norm of the requested Lie derivative of F.
ScalarField lie_part(const VectorField& F, const TensorField& A, const Grid& g, Part part) {
  const TensorField DF = gradient(F, g);
  ScalarField out(g.size());
  for (Index p = 0; p < g.size(); ++p) {
    const Eigen::Matrix3d M = node_matrix(DF, p) * node_matrix(A, p);
    switch (part) {
      case Part::Lie: out(p) = M.squaredNorm(); break;
      case Part::Curl: {
        const double c0 = M(2, 1) - M(1, 2), c1 = M(0, 2) - M(2, 0), c2 = M(1, 0) - M(0, 1);
        out(p) = c0 * c0 + c1 * c1 + c2 * c2;
        break;
      }
      case Part::Div: out(p) = M.trace() * M.trace(); break;
    }
  }
  return out;
}

EnergyTable lie_table(const VectorField& F, const Kinematics& kin, const WeightField& wf, int N, const Grid& g,
                      Part part, double factor) {
  const ScalarField Jw = kin.J.pow(-1.0 / wf.alpha);
  EnergyTable t;
  for (const auto& mi : multi_indices(1, N)) {
    const VectorField d = mixed_partial(F, g, mi[0], mi[1], mi[2]);
    const ScalarField integrand = lie_part(d, kin.A, g, part) * Jw;
    t.emplace_back(mi, factor * weighted_integral(integrand, weight_powers(wf, 1.0 + wf.alpha + mi[2]), g));
  }
  return t;
}

}  // namespace

EnergyTable instant_energy_table(const FlowState& s, const Kinematics& kin, const WeightField& wf, int N,
                                 const Grid& g, int max_order) {
  require_shape(s.v, g, "instant_energy_table");
  require_shape(s.disp, g, "instant_energy_table");
  check(N, max_order, g, "instant_energy_table");
  EnergyTable t = lie_table(s.disp, kin, wf, N, g, Part::Lie, 0.5);
  const auto idx = multi_indices(1, N);
  for (std::size_t q = 0; q < idx.size(); ++q) {
    const auto& mi = idx[q];
    const VectorField d = mixed_partial(s.v, g, mi[0], mi[1], mi[2]);
    t[q].second += 0.5 * weighted_integral(d.square().rowwise().sum(), weight_powers(wf, wf.alpha + mi[2]), g);
  }
  return t;
}

EnergyTable curl_energies(const VectorField& F, const Kinematics& kin, const WeightField& wf, int N, const Grid& g,
                          int max_order) {
  require_shape(F, g, "curl_energies");
  check(N, max_order, g, "curl_energies");
  return lie_table(F, kin, wf, N, g, Part::Curl, 0.5);
}

EnergyTable div_energy(const VectorField& disp, const Kinematics& kin, const WeightField& wf, int N, const Grid& g,
                       int max_order) {
  require_shape(disp, g, "div_energy");
  check(N, max_order, g, "div_energy");
  return lie_table(disp, kin, wf, N, g, Part::Div, 0.5 / wf.alpha);
}

void summarize(EnergyReport& r) {
  r.EN = r.E + table_sum(r.table_E);
  r.BN = table_sum(r.table_B);
  r.CN = table_sum(r.table_C);
  r.DN = table_sum(r.table_D);
  r.TEN = r.EN + r.BN;
}

EnergyReport total_energy(const FlowState& s, const Kinematics& kin, const WeightField& wf, int N, const Grid& g,
                          int max_order) {
  EnergyReport r;
  r.t = s.t;
  r.E = zeroth_energy(s, kin, wf, g);
  r.table_E = instant_energy_table(s, kin, wf, N, g, max_order);
  r.table_B = curl_energies(s.v, kin, wf, N, g, max_order);
  r.table_C = curl_energies(s.disp, kin, wf, N, g, max_order);
  r.table_D = div_energy(s.disp, kin, wf, N, g, max_order);
  summarize(r);
  r.Jmin = kin.J.minCoeff();
  r.Jmax = kin.J.maxCoeff();
  r.Adev = max_a_deviation(kin);
  return r;
}

EnergyReport initial_total_energy(const VectorField& u0, const WeightField& wf, int N, const Grid& g, int max_order) {
  require_shape(u0, g, "initial_total_energy");
  check(N, max_order, g, "initial_total_energy");
  const double a = wf.alpha;
  EnergyReport r;
  // E = int 1/2 w^alpha |u0|^2 + alpha w^(1+alpha).
  r.E = 0.5 * weighted_integral(u0.square().rowwise().sum(), weight_powers(wf, a), g) +
        a * weighted_integral(ScalarField::Ones(g.size()), weight_powers(wf, 1.0 + a), g);
  for (const auto& mi : multi_indices(1, N)) {
    const VectorField d = mixed_partial(u0, g, mi[0], mi[1], mi[2]);
    r.table_E.emplace_back(
        mi, 0.5 * weighted_integral(d.square().rowwise().sum(), weight_powers(wf, a + mi[2]), g));
    const VectorField c0 = [&] {
      VectorField c(g.size(), 3);
      c.col(0) = partial(d.col(2), g, Axis::X2) - partial(d.col(1), g, Axis::X3);
      c.col(1) = partial(d.col(0), g, Axis::X3) - partial(d.col(2), g, Axis::X1);
      c.col(2) = partial(d.col(1), g, Axis::X1) - partial(d.col(0), g, Axis::X2);
      return c;
    }();
    r.table_B.emplace_back(
        mi, 0.5 * weighted_integral(c0.square().rowwise().sum(), weight_powers(wf, 1.0 + a + mi[2]), g));
    r.table_C.emplace_back(mi, 0.0);
    r.table_D.emplace_back(mi, 0.0);
  }
  summarize(r);
  r.Jmin = r.Jmax = 1.0;
  r.Adev = 0.0;
  return r;
}

}  // namespace pvac

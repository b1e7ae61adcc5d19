#pragma once

#include <utility>
#include <vector>

#include "pvac/norms.hpp"
#include "pvac/state.hpp"

namespace pvac {

using EnergyTable = std::vector<std::pair<MultiIndex, double>>;

double table_sum(const EnergyTable& t);

struct EnergyReport {
  double t = 0.0;
  double E = 0.0;
  EnergyTable table_E, table_B, table_C, table_D;
  double EN = 0.0, BN = 0.0, CN = 0.0, DN = 0.0, TEN = 0.0;
  double Jmin = 0.0, Jmax = 0.0, Adev = 0.0;
};

/// int 1/2 w^alpha |v|^2 + alpha w^(1+alpha) J^(-1/alpha), midpoint rule at the nodes.
double zeroth_energy(const FlowState& s, const Kinematics& kin, const WeightField& wf, const Grid& g);

/// E^{m,n} = 1/2 int w^(alpha+n) |d^m d3^n v|^2 + 1/2 int w^(1+alpha+n) J^(-1/alpha) |D_eta d^m d3^n eta|^2
/// for 1 <= |m|+n <= N. Only the displacement is differentiated: every derivative
/// of the affine part base*x is constant, so its Lie gradient vanishes.
EnergyTable instant_energy_table(const FlowState& s, const Kinematics& kin, const WeightField& wf, int N,
                                 const Grid& g, int max_order = kDefaultMaxOrder);

/// 1/2 int w^(1+alpha+n) J^(-1/alpha) |curl_eta d^m d3^n F|^2. Pass v for B, the
/// displacement for C.
EnergyTable curl_energies(const VectorField& F, const Kinematics& kin, const WeightField& wf, int N, const Grid& g,
                          int max_order = kDefaultMaxOrder);

/// 1/(2 alpha) int w^(1+alpha+n) J^(-1/alpha) |div_eta d^m d3^n eta|^2.
EnergyTable div_energy(const VectorField& disp, const Kinematics& kin, const WeightField& wf, int N, const Grid& g,
                       int max_order = kDefaultMaxOrder);

/// Every functional plus J range and max |A - I|. EN = E + sum E^{m,n}, TEN = EN + BN.
EnergyReport total_energy(const FlowState& s, const Kinematics& kin, const WeightField& wf, int N, const Grid& g,
                          int max_order = kDefaultMaxOrder);

/// Same report for eta = x, v = u0 using plain gradients and curls (J = 1, A = I).
EnergyReport initial_total_energy(const VectorField& u0, const WeightField& wf, int N, const Grid& g,
                                  int max_order = kDefaultMaxOrder);

/// Fills EN, BN, CN, DN, TEN from E and the tables.
void summarize(EnergyReport& r);

}  // namespace pvac

#include "pvac/verify.hpp"

#include <cmath>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>

#include "pvac/config.hpp"
#include "pvac/distance.hpp"
#include "pvac/dynamics.hpp"
#include "pvac/field_io.hpp"
#include "pvac/linear_ops.hpp"
#include "pvac/presets.hpp"

namespace pvac {

namespace {

std::string num(double x) {
  std::ostringstream o;
  o.precision(3);
  o << std::scientific << x;
  return o.str();
}

ScalarField random_field(const Grid& g, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  ScalarField f(g.size());
  for (Index p = 0; p < f.size(); ++p) f(p) = nd(rng);
  return f;
}

VectorField random_vector(const Grid& g, std::mt19937_64& rng) {
  VectorField f(g.size(), 3);
  for (int c = 0; c < 3; ++c) f.col(c) = random_field(g, rng);
  return f;
}

}  // namespace

std::vector<PropertyResult> run_verify(unsigned long seed) {
  std::vector<PropertyResult> out;
  std::mt19937_64 rng(seed);
  auto check = [&](const std::string& name, const std::function<std::pair<bool, std::string>()>& fn) {
    PropertyResult r{name, false, ""};
    try {
      auto [ok, d] = fn();
      r.passed = ok;
      r.detail = d;
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    out.push_back(r);
  };

  const Grid g(8, 8, 16);
  const WeightField wf = build_weight(WeightPreset::Parabolic, 2.0, 1.0, g);
  const VectorField disp = random_smooth_displacement(0.1, g, rng);
  const Kinematics kin = compute_kinematics(deformation_gradient(disp, g));

  check("kinematics: A Deta = I", [&] {
    double e = 0.0;
    for (Index p = 0; p < g.size(); ++p)
      e = std::max(e, (node_matrix(kin.A, p) * node_matrix(kin.Deta, p) - Eigen::Matrix3d::Identity())
                          .cwiseAbs()
                          .maxCoeff());
    return std::pair{e <= 1e-12, "max " + num(e)};
  });
  check("kinematics: Piola residual of an affine map is zero", [&] {
    Eigen::Matrix3d M;
    M << 1.2, 0.1, 0.0, -0.2, 0.9, 0.3, 0.05, 0.0, 1.1;
    const Kinematics k = compute_kinematics(deformation_gradient(VectorField::Zero(g.size(), 3), g, M));
    const double e = piola_divergence(k, g).abs().maxCoeff();
    return std::pair{e == 0.0, "max " + num(e)};
  });
  check("kinematics: Curl_eta is antisymmetric with zero diagonal", [&] {
    const LieDerivatives L = lie_derivatives(random_vector(g, rng), kin, g);
    double e = 0.0;
    for (Index p = 0; p < g.size(); ++p) {
      const Eigen::Matrix3d C = node_matrix(L.Curl, p);
      e = std::max({e, (C + C.transpose()).cwiseAbs().maxCoeff(), C.diagonal().cwiseAbs().maxCoeff()});
    }
    return std::pair{e == 0.0, "max " + num(e)};
  });
  check("kinematics: Lie derivatives at the identity are the plain operators", [&] {
    const VectorField F = random_vector(g, rng);
    const LieDerivatives L = lie_derivatives(F, identity_kinematics(g), g);
    const TensorField DF = gradient(F, g);
    const double e = (L.D - DF).abs().maxCoeff() / std::max(1.0, DF.abs().maxCoeff());
    return std::pair{e <= 1e-13, "rel " + num(e)};
  });
  check("kinematics: rates match finite differences", [&] {
    const TensorField Dv = gradient(random_smooth_displacement(0.5, g, rng), g);
    const KinematicRates r = kinematic_rates(kin, Dv);
    const double eps = 1e-6;
    const Kinematics k2 = compute_kinematics(kin.Deta + eps * Dv);
    const double e = ((k2.A - kin.A) / eps - r.dA).abs().maxCoeff();
    return std::pair{e <= 1e-5, "max " + num(e)};
  });

  const ScalarField F = sample(g, [](double x1, double, double x3) { return std::sin(6.283185307179586 * x1) + x3; });
  check("weights: norms are absolutely homogeneous", [&] {
    const double c = -3.7;
    const double e = std::abs(norm_X(ScalarField(c * F), wf, 2, g) - std::abs(c) * norm_X(F, wf, 2, g)) /
                     (std::abs(c) * norm_X(F, wf, 2, g));
    return std::pair{e <= 1e-12, "rel " + num(e)};
  });
  check("weights: norm_X is monotone in b", [&] {
    double prev = 0.0;
    bool ok = true;
    for (int b = 0; b <= 3; ++b) {
      const double n = norm_X(F, wf, b, g);
      ok = ok && n >= prev;
      prev = n;
    }
    return std::pair{ok, "b = 0..3"};
  });
  check("weights: norm_Y at the identity equals the shifted X norm of the gradient", [&] {
    const VectorField V = random_smooth_displacement(1.0, g, rng);
    const double y = norm_Y(V, wf, identity_kinematics(g), 0, g);
    const TensorField D = gradient(V, g);
    const double x = std::sqrt(weighted_integral(D.square().rowwise().sum(), weight_powers(wf, 1.0 + wf.alpha), g));
    const double e = std::abs(x - y) / y;
    return std::pair{e <= 1e-13, "rel " + num(e)};
  });
  check("weights: Hardy ratio is scale invariant", [&] {
    const ScalarField v = sample(g, [](double, double, double x3) { return x3 - 0.5; });
    const double e = std::abs(hardy_ratio(ScalarField(7.5 * v), wf, g) / hardy_ratio(v, wf, g) - 1.0);
    return std::pair{e <= 1e-13, "rel " + num(e)};
  });
  check("weights: vacuum check accepts parabolic and sine, rejects w = 1", [&] {
    WeightField flat = wf;
    flat.column.setOnes();
    const bool ok = check_physical_vacuum(wf, g).ok &&
                    check_physical_vacuum(build_weight(WeightPreset::Sine, 2.0, 1.0, g), g).ok &&
                    !check_physical_vacuum(flat, g).ok;
    return std::pair{ok, ""};
  });

  FlowState st = FlowState::identity(g);
  st.disp = disp;
  st.v = random_smooth_displacement(0.3, g, rng);
  check("energies: entries nonnegative, TEN = EN + BN", [&] {
    const EnergyReport r = total_energy(st, kin, wf, 2, g);
    bool ok = r.Jmin <= r.Jmax && r.Adev >= 0.0;
    for (const auto* t : {&r.table_E, &r.table_B, &r.table_C, &r.table_D})
      for (const auto& [mi, v] : *t) ok = ok && v >= 0.0;
    const double e = std::abs(r.TEN - (r.EN + r.BN)) / r.TEN;
    return std::pair{ok && e <= 1e-12, "rel " + num(e)};
  });
  check("energies: general and initial-data evaluators agree at t = 0", [&] {
    FlowState s0 = FlowState::identity(g);
    s0.v = st.v;
    const EnergyReport a = total_energy(s0, kinematics_of(s0, g), wf, 2, g);
    const EnergyReport b = initial_total_energy(s0.v, wf, 2, g);
    const double e = std::abs(a.TEN - b.TEN) / b.TEN;
    return std::pair{e <= 1e-12, "rel " + num(e)};
  });
  check("energies: v = 0 gives no velocity contribution", [&] {
    FlowState s = st;
    s.v.setZero();
    const EnergyReport r = total_energy(s, kin, wf, 2, g);
    return std::pair{r.BN == 0.0, "BN " + num(r.BN)};
  });

  const EllipticProblem prob(wf, 10.0, g, 1e-10);
  check("elliptic: G is linear", [&] {
    const ScalarField u = random_field(g, rng), v = random_field(g, rng);
    const ScalarField lhs = apply_G(ScalarField(2.0 * u - 0.5 * v), prob);
    const ScalarField rhs = 2.0 * apply_G(u, prob) - 0.5 * apply_G(v, prob);
    const double e = (lhs - rhs).abs().maxCoeff() / rhs.abs().maxCoeff();
    return std::pair{e <= 1e-12, "rel " + num(e)};
  });
  check("elliptic: G is selfadjoint in L^2(w^alpha)", [&] {
    const ScalarField u = random_field(g, rng), v = random_field(g, rng);
    const double a = weighted_inner(apply_G(u, prob), v, prob), b = weighted_inner(u, apply_G(v, prob), prob);
    const double e = std::abs(a - b) / std::max(std::abs(a), 1.0);
    return std::pair{e <= 1e-10, "rel " + num(e)};
  });
  check("elliptic: coercive on 100 random samples", [&] {
    const auto c = coercivity_sample(prob, 100, unsigned(seed));
    return std::pair{c.ok, "min ratio " + num(c.min_ratio)};
  });
  check("elliptic: solve inverts G", [&] {
    const ScalarField u = sample(g, [](double x1, double x2, double x3) {
      return std::cos(6.283185307179586 * x1) * std::sin(6.283185307179586 * x2) * x3 * x3 + x3;
    });
    const auto s = solve(apply_G(u, prob), prob);
    const double e = weighted_norm(ScalarField(s.u - u), prob) / weighted_norm(u, prob);
    return std::pair{e <= 1e-9, "rel " + num(e)};
  });
  check("elliptic: solution independent of the initial guess", [&] {
    const ScalarField G = random_field(g, rng);
    const ScalarField guess = random_field(g, rng);
    const auto a = solve(G, prob), b = solve(G, prob, &guess);
    const double e = weighted_norm(ScalarField(a.u - b.u), prob) / weighted_norm(a.u, prob);
    return std::pair{e <= 1e-9, "rel " + num(e)};
  });

  check("dynamics: acceleration does not depend on v", [&] {
    FlowState s = st;
    const VectorField a = acceleration(s, wf, g);
    s.v = random_vector(g, rng);
    const VectorField b = acceleration(s, wf, g);
    return std::pair{(a == b).all(), ""};
  });
  check("dynamics: L^e symmetric and positive semidefinite", [&] {
    const VectorField u = random_vector(g, rng), v = random_vector(g, rng);
    const VectorField Lu = linear_operator_apply(LinearKind::Elastic, u, kin, wf, g);
    const VectorField Lv = linear_operator_apply(LinearKind::Elastic, v, kin, wf, g);
    const double a = (Lu * v).sum(), b = (u * Lv).sum();
    const double e = std::abs(a - b) / std::max(1.0, std::abs(a));
    const double q = (u * Lu).sum();
    return std::pair{e <= 1e-10 && q >= -1e-10, "sym " + num(e) + ", <u, Lu> " + num(q)};
  });
  check("dynamics: leapfrog energy drift shrinks as dt^2", [&] {
    SimConfig c;
    c.grid = {8, 8, 16};
    c.initial_velocity = "tangential-shear";
    c.amplitude = 0.05;
    c.T_end = 0.2;
    c.output_every = 1000;
    c.guardrails.enforce = false;
    c.dt = 0.01;
    finalize_config(c);
    std::vector<double> d;
    for (double dt : {0.01, 0.005, 0.0025}) {
      c.dt = dt;
      d.push_back(simulate(c).max_energy_drift);
    }
    const double o1 = std::log2(d[0] / d[1]), o2 = std::log2(d[1] / d[2]);
    return std::pair{o1 > 1.7 && o2 > 1.7, "orders " + num(o1) + ", " + num(o2)};
  });
  check("dynamics: Z of a run against itself vanishes", [&] {
    return std::pair{distance_functional(st, st, wf, g, 2) == 0.0, ""};
  });
  check("dynamics: no trace row outside the guardrails", [&] {
    SimConfig c;
    c.grid = {8, 8, 16};
    c.initial_velocity = "tangential-shear";
    c.amplitude = 0.5;
    c.T_end = 1.0;
    finalize_config(c);
    const SimResult r = simulate(c);
    bool ok = r.termination == Termination::GuardrailBreach;
    for (const auto& row : r.trace)
      ok = ok && row.Adev <= c.guardrails.A_dev_max && row.Jmin >= c.guardrails.J_lo && row.Jmax <= c.guardrails.J_hi;
    return std::pair{ok, "rows " + std::to_string(r.trace.size())};
  });

  check("harness: field dump round-trips bit-exactly", [&] {
    const auto dir = std::filesystem::temp_directory_path() / ("pvac_verify_" + std::to_string(seed));
    std::filesystem::create_directories(dir);
    FieldBundle b = make_bundle(g);
    add_vector(b, "disp", disp);
    write_fields((dir / "f").string(), b);
    const FieldBundle r = read_fields((dir / "f").string());
    std::filesystem::remove_all(dir);
    return std::pair{(get_vector(r, "disp") == disp).all(), ""};
  });
  check("harness: reruns are bit-identical", [&] {
    SimConfig c;
    c.grid = {8, 8, 16};
    c.initial_velocity = "irrotational-pulse";
    c.amplitude = 0.01;
    c.T_end = 0.05;
    finalize_config(c);
    const SimResult a = simulate(c), b = simulate(c);
    bool ok = a.trace.size() == b.trace.size();
    for (std::size_t i = 0; ok && i < a.trace.size(); ++i) ok = a.trace[i].TEN == b.trace[i].TEN;
    return std::pair{ok && (a.final_state.disp == b.final_state.disp).all(), ""};
  });
  return out;
}

}  // namespace pvac

#include "pvac/degelliptic.hpp"

#include <cmath>
#include <random>

#include "pvac/pcg.hpp"
#include "pvac/stencil.hpp"

namespace pvac {

EllipticProblem::EllipticProblem(WeightField w, double lam, const Grid& g, double tol_, int max_iter_)
    : wf(std::move(w)), lambda(lam), grid(g), tol(tol_), max_iter(max_iter_) {
  validate();
}

void EllipticProblem::validate() const {
  if (!(lambda > 0.0)) throw ContractViolation("elliptic problem: lambda must be positive");
  if (!(tol > 0.0 && tol <= 1e-4)) throw ContractViolation("elliptic problem: tol must lie in (0, 1e-4]");
  if (max_iter < 1) throw ContractViolation("elliptic problem: max_iter must be positive");
  require_shape(wf.w, grid, "elliptic problem");
  if (wf.flux.size() != grid.n3 + 1) throw ContractViolation("elliptic problem: face weights do not match grid");
}

namespace {

// delta3(W delta3 u) at the nodes, before division by w^alpha.
ScalarField normal_flux_term(const ScalarField& u, const EllipticProblem& prob) {
  const Grid& g = prob.grid;
  ScalarField F = face_difference3(u, g);
  const Index s = g.column_size();
  for (int f = 0; f <= g.n3; ++f) F.segment(f * s, s) *= prob.wf.flux(f);
  return face_divergence3(F, g);
}

ScalarField tangential_laplacian(const ScalarField& u, const Grid& g) {
  return second_partial_tangential(u, g, Axis::X1) + second_partial_tangential(u, g, Axis::X2);
}

Eigen::ArrayXd row_weight(const EllipticProblem& prob) { return weight_powers(prob.wf, prob.wf.alpha); }

ScalarField expand_rows(const Eigen::ArrayXd& rows, const Grid& g) {
  ScalarField out(g.size());
  const Index s = g.column_size();
  for (int k = 0; k < g.n3; ++k) out.segment(k * s, s).setConstant(rows(k));
  return out;
}

}  // namespace

ScalarField apply_G(const ScalarField& u, const EllipticProblem& prob) {
  require_shape(u, prob.grid, "apply_G");
  const Grid& g = prob.grid;
  const ScalarField wa = expand_rows(row_weight(prob), g);
  return prob.lambda * u - tangential_laplacian(u, g) - normal_flux_term(u, prob) / wa;
}

VectorField apply_G(const VectorField& u, const EllipticProblem& prob) {
  require_shape(u, prob.grid, "apply_G");
  VectorField out(u.rows(), 3);
  for (int c = 0; c < 3; ++c) out.col(c) = apply_G(ScalarField(u.col(c)), prob);
  return out;
}

ScalarField apply_form(const ScalarField& u, const EllipticProblem& prob) {
  require_shape(u, prob.grid, "apply_form");
  const Grid& g = prob.grid;
  const ScalarField wa = expand_rows(row_weight(prob), g);
  return (wa * (prob.lambda * u - tangential_laplacian(u, g)) - normal_flux_term(u, prob)) * g.cell_volume();
}

ScalarField form_diagonal(const EllipticProblem& prob) {
  const Grid& g = prob.grid;
  const Eigen::ArrayXd wa = row_weight(prob);
  const double tang = 30.0 / (12.0 * g.h1 * g.h1) + 30.0 / (12.0 * g.h2 * g.h2);
  Eigen::ArrayXd rows(g.n3);
  for (int k = 0; k < g.n3; ++k)
    rows(k) = wa(k) * (prob.lambda + tang) + (prob.wf.flux(k) + prob.wf.flux(k + 1)) / (g.h3 * g.h3);
  return expand_rows(rows, g) * g.cell_volume();
}

double weighted_inner(const ScalarField& f, const ScalarField& h, const EllipticProblem& prob) {
  return weighted_integral(f * h, row_weight(prob), prob.grid);
}

double weighted_norm(const ScalarField& f, const EllipticProblem& prob) {
  return std::sqrt(weighted_inner(f, f, prob));
}

SolveResult<ScalarField> solve(const ScalarField& rhs, const EllipticProblem& prob, const ScalarField* guess) {
  prob.validate();
  require_shape(rhs, prob.grid, "solve");
  if (!all_finite(rhs)) throw ContractViolation("solve: right-hand side is not finite");
  const Grid& g = prob.grid;
  const ScalarField wa = expand_rows(row_weight(prob), g);
  const double vol = g.cell_volume();
  SolveResult<ScalarField> out;
  out.u = guess ? *guess : ScalarField(ScalarField::Zero(g.size()));
  require_shape(out.u, g, "solve guess");
  const double rhs_norm = weighted_norm(rhs, prob);
  if (rhs_norm == 0.0) {
    out.u.setZero();
    out.history.push_back(0.0);
    return out;
  }
  // The form residual is w^alpha (rhs - G u) vol, so the w^alpha-weighted
  // norm of the operator residual is sqrt(sum r^2 / w^alpha / vol).
  auto measure = [&](const ScalarField& r) { return std::sqrt((r.square() / wa).sum() / vol) / rhs_norm; };
  const ScalarField b = wa * rhs * vol;
  const ScalarField inv_diag = form_diagonal(prob).inverse();
  auto apply = [&](const ScalarField& x) { return apply_form(x, prob); };
  const PcgResult res = pcg(apply, b, inv_diag, out.u, prob.tol, prob.max_iter, measure);
  out.iterations = res.iterations;
  out.residual = res.residual;
  out.history = res.history;
  if (!res.converged)
    throw SolverFailure("elliptic solve did not converge: relative residual " + std::to_string(res.residual) +
                            " after " + std::to_string(res.iterations) + " iterations",
                        res.residual, res.iterations);
  return out;
}

SolveResult<VectorField> solve(const VectorField& rhs, const EllipticProblem& prob, const VectorField* guess) {
  require_shape(rhs, prob.grid, "solve");
  SolveResult<VectorField> out;
  out.u.resize(rhs.rows(), 3);
  for (int c = 0; c < 3; ++c) {
    const ScalarField gc = guess ? ScalarField(guess->col(c)) : ScalarField();
    auto r = solve(ScalarField(rhs.col(c)), prob, guess ? &gc : nullptr);
    out.u.col(c) = r.u;
    out.iterations = std::max(out.iterations, r.iterations);
    out.residual = std::max(out.residual, r.residual);
    if (c == 0) out.history = std::move(r.history);
  }
  return out;
}

CoercivityCheck coercivity_sample(const EllipticProblem& prob, int samples, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  CoercivityCheck c;
  c.min_ratio = std::numeric_limits<double>::infinity();
  ScalarField v(prob.grid.size());
  for (int s = 0; s < samples; ++s) {
    for (Index p = 0; p < v.size(); ++p) v(p) = nd(rng);
    const double Bvv = (v * apply_form(v, prob)).sum();
    c.min_ratio = std::min(c.min_ratio, Bvv / (weighted_inner(v, v, prob)));
  }
  c.ok = c.min_ratio > 0.0;
  return c;
}

void require_coercive(const EllipticProblem& prob, int samples, unsigned seed) {
  const auto c = coercivity_sample(prob, samples, seed);
  if (!c.ok)
    throw ConfigError("lambda", "bilinear form is not coercive on random samples (min ratio " +
                                    std::to_string(c.min_ratio) + "); increase lambda");
}

std::optional<double> regularity_gain(const ScalarField& u, const ScalarField& G, const EllipticProblem& prob, int k,
                                      int max_order) {
  if (k < 0 || k + 2 > max_order)
    throw ContractViolation("regularity_gain: k + 2 must not exceed the maximum derivative order");
  const double gn = norm_X(G, prob.wf, k, prob.grid, max_order);
  if (gn == 0.0) return std::nullopt;
  return norm_X(u, prob.wf, k + 2, prob.grid, max_order) / gn;
}

}  // namespace pvac

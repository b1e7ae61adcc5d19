#pragma once

#include <optional>
#include <vector>

#include "pvac/norms.hpp"
#include "pvac/weights.hpp"

namespace pvac {

/// G = [-d1^2 - d2^2 - w^-alpha d3 w^(1+alpha) d3 + lambda].
struct EllipticProblem {
  WeightField wf;
  double lambda = 10.0;
  Grid grid;
  double tol = 1e-10;
  int max_iter = 20000;

  EllipticProblem() = default;
  EllipticProblem(WeightField w, double lam, const Grid& g, double tol_ = 1e-10, int max_iter_ = 20000);
  void validate() const;
};

/// Componentwise G u. Tangential parts use the compact 4th-order second
/// difference; the normal part is the flux form w^-alpha delta3(W delta3 u)
/// with W the face weights of the WeightField, zero on the boundary faces.
ScalarField apply_G(const ScalarField& u, const EllipticProblem& prob);
VectorField apply_G(const VectorField& u, const EllipticProblem& prob);

/// w^alpha G u times the cell volume: the symmetric matrix of the bilinear form
/// B[u, v] = int lambda w^alpha u v + sum_beta d_beta u d_beta(w^alpha v) + w^(alpha+1) d3 u d3 v.
ScalarField apply_form(const ScalarField& u, const EllipticProblem& prob);

/// Diagonal of apply_form.
ScalarField form_diagonal(const EllipticProblem& prob);

/// <f, g> in L^2(w^alpha dx).
double weighted_inner(const ScalarField& f, const ScalarField& g, const EllipticProblem& prob);
double weighted_norm(const ScalarField& f, const EllipticProblem& prob);

template <typename Field>
struct SolveResult {
  Field u;
  int iterations = 0;
  double residual = 0.0;        ///< ||G u - rhs||_{w^alpha} / ||rhs||_{w^alpha}
  std::vector<double> history;  ///< relative residual per iteration (first component for vectors)
};

/// Solves G u = rhs by Jacobi-preconditioned CG on the symmetric form. Throws
/// SolverFailure when the relative w^alpha residual does not reach tol.
SolveResult<ScalarField> solve(const ScalarField& rhs, const EllipticProblem& prob,
                               const ScalarField* guess = nullptr);
SolveResult<VectorField> solve(const VectorField& rhs, const EllipticProblem& prob,
                               const VectorField* guess = nullptr);

struct CoercivityCheck {
  double min_ratio = 0.0;  ///< min over samples of B[v, v] / ||v||^2_{w^alpha}
  bool ok = false;
};

/// Samples B[v, v] on `samples` random v. Throws ConfigError (key "lambda")
/// from the checked variant when some sample is not positive.
CoercivityCheck coercivity_sample(const EllipticProblem& prob, int samples = 100, unsigned seed = 7);
void require_coercive(const EllipticProblem& prob, int samples = 100, unsigned seed = 7);

/// ||u||_{X^{alpha,k+2}} / ||G||_{X^{alpha,k}}; empty when G has zero norm.
std::optional<double> regularity_gain(const ScalarField& u, const ScalarField& G, const EllipticProblem& prob, int k,
                                      int max_order = kDefaultMaxOrder);

}  // namespace pvac

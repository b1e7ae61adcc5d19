#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "pvac/kinematics.hpp"
#include "pvac/presets.hpp"
#include "pvac/stencil.hpp"

using namespace pvac;

namespace {

TensorField uniform_tensor(const Grid& g, const Eigen::Matrix3d& M) {
  TensorField T(g.size(), 9);
  for (Index p = 0; p < g.size(); ++p) set_node_matrix(T, p, M);
  return T;
}

double max_abs(const ScalarField& f) { return f.abs().maxCoeff(); }

}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("constants differentiate to zero exactly") {
  const Grid g(8, 8, 8);
  const ScalarField one = ScalarField::Constant(g.size(), 1.0);
  for (Axis a : {Axis::X1, Axis::X2, Axis::X3}) CHECK(max_abs(partial(one, g, a)) == 0.0);
}

TEST_CASE("identity map has D eta = I exactly") {
  const Grid g(8, 8, 8);
  const TensorField D = deformation_gradient(VectorField(VectorField::Zero(g.size(), 3)), g);
  for (Index p = 0; p < g.size(); ++p) CHECK(node_matrix(D, p) == Eigen::Matrix3d::Identity());
}

TEST_CASE("tangential derivative of sin 2 pi x1 converges at fourth order") {
  std::vector<double> err;
  for (int n : {16, 32, 64}) {
    const Grid g(n, 4, 4);
    const ScalarField f = sample(g, [](double x1, double, double) { return std::sin(oracle::kTau * x1); });
    const ScalarField exact =
        sample(g, [](double x1, double, double) { return oracle::kTau * std::cos(oracle::kTau * x1); });
    err.push_back(max_abs(partial(f, g, Axis::X1) - exact));
  }
  CHECK(oracle::order(err[0], err[1]) >= 3.8);
  CHECK(oracle::order(err[1], err[2]) >= 3.8);
}

TEST_CASE("normal derivative is exact on quadratics, boundary rows included") {
  const Grid g(4, 4, 12);
  const ScalarField f = sample(g, [](double, double, double x3) { return 3.0 * x3 * x3 - x3 + 2.0; });
  const ScalarField exact = sample(g, [](double, double, double x3) { return 6.0 * x3 - 1.0; });
  CHECK(max_abs(partial(f, g, Axis::X3) - exact) <= 1e-12);
}

TEST_CASE("compact tangential second derivative converges at fourth order") {
  std::vector<double> err;
  for (int n : {16, 32}) {
    const Grid g(4, n, 4);
    const ScalarField f = sample(g, [](double, double x2, double) { return std::cos(oracle::kTau * x2); });
    err.push_back(max_abs(second_partial_tangential(f, g, Axis::X2) + oracle::kTau * oracle::kTau * f));
  }
  CHECK(oracle::order(err[0], err[1]) >= 3.8);
}

TEST_CASE("face divergence is the negative adjoint of the face gradient") {
  const Grid g(6, 5, 7);
  std::mt19937_64 rng(11);
  const VectorField F = oracle::gaussian_vector(g, rng);
  TensorField P(face_count(g), 9);
  for (int c = 0; c < 9; ++c)
    for (Index q = 0; q < P.rows(); ++q) P(q, c) = std::normal_distribution<double>()(rng);
  // Boundary faces carry no flux.
  for (int j = 0; j < g.n2; ++j)
    for (int i = 0; i < g.n1; ++i) {
      P.row(face_index(g, i, j, 0)).setZero();
      P.row(face_index(g, i, j, g.n3)).setZero();
    }
  const double lhs = (face_gradient(F, g) * P).sum();
  const double rhs = -(F * face_divergence(P, g)).sum();
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("shape mismatch is a contract violation") {
  const Grid g(8, 8, 8);
  CHECK_THROWS_AS(partial(ScalarField(ScalarField::Zero(10)), g, Axis::X1), ContractViolation);
}

TEST_CASE("composed normal stencil wider than the slab is a resolution error") {
  CHECK_THROWS_AS(require_resolution(Grid(8, 8, 4), 0, 2, "test"), ResolutionError);
  CHECK_NOTHROW(require_resolution(Grid(8, 8, 5), 0, 2, "test"));
  CHECK_NOTHROW(require_resolution(Grid(4, 4, 16), 5, 2, "test"));
}

TEST_CASE("identity kinematics") {
  const Grid g(4, 4, 4);
  const Kinematics k = compute_kinematics(uniform_tensor(g, Eigen::Matrix3d::Identity()));
  for (Index p = 0; p < g.size(); ++p) {
    CHECK(node_matrix(k.A, p) == Eigen::Matrix3d::Identity());
    CHECK(node_matrix(k.a, p) == Eigen::Matrix3d::Identity());
    CHECK(k.J(p) == 1.0);
  }
}

TEST_CASE("uniform dilation: J = 8, A = I/2, a = 4I") {
  const Grid g(4, 4, 4);
  const Kinematics k = compute_kinematics(uniform_tensor(g, 2.0 * Eigen::Matrix3d::Identity()));
  for (Index p = 0; p < g.size(); ++p) {
    CHECK(k.J(p) == 8.0);
    CHECK((node_matrix(k.A, p) - 0.5 * Eigen::Matrix3d::Identity()).norm() == 0.0);
    CHECK((node_matrix(k.a, p) - 4.0 * Eigen::Matrix3d::Identity()).norm() == 0.0);
  }
}

TEST_CASE("random D eta near I against cofactor and LU oracles") {
  const Grid g(6, 6, 6);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-0.1, 0.1);
  TensorField D(g.size(), 9);
  for (Index p = 0; p < g.size(); ++p) {
    Eigen::Matrix3d M = Eigen::Matrix3d::Identity();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) M(i, j) += U(rng);
    set_node_matrix(D, p, M);
  }
  const Kinematics k = compute_kinematics(D);
  double inv_err = 0.0, det_err = 0.0, lu_err = 0.0;
  for (Index p = 0; p < g.size(); ++p) {
    const Eigen::Matrix3d M = node_matrix(D, p), A = node_matrix(k.A, p);
    inv_err = std::max(inv_err, (A * M - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff());
    det_err = std::max(det_err, std::abs(k.J(p) - oracle::det_laplace(M)));
    lu_err = std::max(lu_err, (A - oracle::inverse_lu(M)).cwiseAbs().maxCoeff());
    CHECK((node_matrix(k.a, p) - k.J(p) * A).cwiseAbs().maxCoeff() <= 1e-14);
  }
  CHECK(inv_err <= 1e-12);
  CHECK(det_err <= 1e-13);
  CHECK(lu_err <= 1e-12);
}

TEST_CASE("nonpositive determinant reports the worst node") {
  const Grid g(4, 4, 4);
  TensorField D = uniform_tensor(g, Eigen::Matrix3d::Identity());
  Eigen::Matrix3d flip = Eigen::Matrix3d::Identity();
  flip(2, 2) = -0.5;
  set_node_matrix(D, 17, flip);
  try {
    compute_kinematics(D);
    FAIL("expected DegenerateMapError");
  } catch (const DegenerateMapError& e) {
    CHECK(e.node() == 17);
    CHECK(e.jacobian() == doctest::Approx(-0.5));
  }
}

TEST_CASE("Piola residual vanishes exactly for the identity and affine maps") {
  const Grid g(8, 8, 8);
  CHECK(piola_divergence(identity_kinematics(g), g).abs().maxCoeff() == 0.0);
  Eigen::Matrix3d M;
  M << 1.1, 0.2, -0.1, 0.05, 0.9, 0.3, -0.2, 0.1, 1.2;
  const Kinematics k = compute_kinematics(deformation_gradient(VectorField(VectorField::Zero(g.size(), 3)), g, M));
  CHECK(piola_divergence(k, g).abs().maxCoeff() <= 1e-13);
}

TEST_CASE("Piola residual of a smooth map decreases under refinement") {
  std::vector<double> err;
  for (int n : {16, 32}) {
    const Grid g(n, n, n);
    const Kinematics k = compute_kinematics(deformation_gradient(smooth_displacement(0.05, g), g));
    err.push_back(piola_divergence(k, g).abs().maxCoeff());
  }
  CHECK(err[1] < err[0] / 3.0);
}

TEST_CASE("Lie derivatives at the identity are the plain operators") {
  const Grid g(8, 8, 8);
  const VectorField F = smooth_displacement(1.0, g);
  const LieDerivatives L = lie_derivatives(F, identity_kinematics(g), g);
  const TensorField DF = gradient(F, g);
  CHECK((L.D - DF).abs().maxCoeff() <= 1e-13);
  CHECK((L.div - (DF.col(tcol(0, 0)) + DF.col(tcol(1, 1)) + DF.col(tcol(2, 2)))).abs().maxCoeff() <= 1e-13);
  VectorField curl(g.size(), 3);
  curl.col(0) = DF.col(tcol(2, 1)) - DF.col(tcol(1, 2));
  curl.col(1) = DF.col(tcol(0, 2)) - DF.col(tcol(2, 0));
  curl.col(2) = DF.col(tcol(1, 0)) - DF.col(tcol(0, 1));
  CHECK((L.curl - curl).abs().maxCoeff() <= 1e-13);
}

TEST_CASE("|Curl_eta F|^2 = 2 |curl_eta F|^2 pointwise") {
  const Grid g(6, 6, 6);
  std::mt19937_64 rng(5);
  const Kinematics k = compute_kinematics(deformation_gradient(random_smooth_displacement(0.2, g, rng), g));
  const LieDerivatives L = lie_derivatives(oracle::gaussian_vector(g, rng), k, g);
  const ScalarField lhs = L.Curl.square().rowwise().sum();
  const ScalarField rhs = 2.0 * L.curl.square().rowwise().sum();
  CHECK(((lhs - rhs).abs() / rhs.max(1.0)).maxCoeff() <= 1e-12);
}

TEST_CASE("curl_eta of a Lagrangian gradient decreases under refinement") {
  std::vector<double> err;
  for (int n : {16, 32}) {
    const Grid g(n, n, n);
    const Kinematics k = compute_kinematics(deformation_gradient(smooth_displacement(0.05, g), g));
    const VectorField dh = gradient(smooth_potential(g), g);
    VectorField F(g.size(), 3);
    for (Index p = 0; p < g.size(); ++p)
      F.row(p) = (node_matrix(k.A, p).transpose() * dh.row(p).matrix().transpose()).transpose().array();
    err.push_back(lie_derivatives(F, k, g).curl.abs().maxCoeff());
  }
  CHECK(oracle::order(err[0], err[1]) >= 1.5);
}

TEST_CASE("kinematic rates") {
  const Grid g(6, 6, 6);
  const Kinematics id = identity_kinematics(g);
  SUBCASE("v = 0") {
    const KinematicRates r = kinematic_rates(id, TensorField::Zero(g.size(), 9));
    CHECK(r.dA.abs().maxCoeff() == 0.0);
    CHECK(r.dJ.abs().maxCoeff() == 0.0);
  }
  SUBCASE("eta = x, Dv = I") {
    const KinematicRates r = kinematic_rates(id, uniform_tensor(g, Eigen::Matrix3d::Identity()));
    for (Index p = 0; p < g.size(); ++p) {
      CHECK(node_matrix(r.dA, p) == -Eigen::Matrix3d::Identity());
      CHECK(r.dJ(p) == 3.0);
    }
  }
  SUBCASE("finite difference in time") {
    std::mt19937_64 rng(9);
    const VectorField disp = random_smooth_displacement(0.2, g, rng);
    const VectorField v = random_smooth_displacement(1.0, g, rng);
    const double eps = 1e-6;
    const Kinematics k0 = compute_kinematics(deformation_gradient(disp, g));
    const Kinematics k1 = compute_kinematics(deformation_gradient(VectorField(disp + eps * v), g));
    const KinematicRates r = kinematic_rates(k0, gradient(v, g));
    CHECK((((k1.A - k0.A) / eps) - r.dA).abs().maxCoeff() <= 1e-5);
    CHECK((((k1.J - k0.J) / eps) - r.dJ).abs().maxCoeff() <= 1e-5);
  }
}

TEST_CASE("max A deviation locates its node") {
  const Grid g(4, 4, 4);
  TensorField D = uniform_tensor(g, Eigen::Matrix3d::Identity());
  set_node_matrix(D, 5, Eigen::Matrix3d(0.8 * Eigen::Matrix3d::Identity()));
  Index where = -1;
  CHECK(max_a_deviation(compute_kinematics(D), &where) == doctest::Approx(0.25));
  CHECK(where == 5);
}

}  // TEST_SUITE

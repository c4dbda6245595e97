#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ncball/mobius.hpp"
#include "test_support.hpp"

using namespace ncball;
using ncball::testing::random_tuple;
using ncball::testing::random_unitary;

namespace {

MatrixTuple scalar_point(cd z) {
  Eigen::MatrixXcd m(1, 1);
  m(0, 0) = z;
  return MatrixTuple(1, {m});
}

Eigen::VectorXcd e1_scaled(int d, double t) {
  Eigen::VectorXcd b = Eigen::VectorXcd::Zero(d);
  b(0) = cd(t, 0.0);
  return b;
}

double tuple_gap(const MatrixTuple& x, const MatrixTuple& y) {
  double gap = 0.0;
  for (int j = 0; j < x.d; ++j) {
    gap = std::max(gap, (x.matrices[j] - y.matrices[j]).norm());
  }
  return gap;
}

}  // namespace

TEST_CASE("disc specialization matches the classical Moebius map") {
  Eigen::VectorXcd b(1);
  b(0) = cd(0.5, 0.0);
  BallAutomorphism phi = BallAutomorphism::from_point(b);
  CHECK(phi.signature_residual() <= 1e-12);

  MatrixTuple image = phi.apply(scalar_point(cd(0.3, 0.0)));
  CHECK(std::abs(image.matrices[0](0, 0) - cd(0.2 / 0.85, 0.0)) < 1e-14);

  MatrixTuple at_zero = phi.apply(scalar_point(cd(0.0, 0.0)));
  CHECK(std::abs(at_zero.matrices[0](0, 0) - cd(0.5, 0.0)) < 1e-14);

  MatrixTuple at_b = phi.apply(scalar_point(cd(0.5, 0.0)));
  CHECK(std::abs(at_b.matrices[0](0, 0)) < 1e-14);
}

TEST_CASE("point automorphisms are involutions on matrix tuples") {
  std::mt19937_64 rng(501);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    int d = 1 + trial % 3;
    Eigen::VectorXcd b(d);
    for (int j = 0; j < d; ++j) b(j) = cd(0.3 * unit(rng), 0.3 * unit(rng));
    BallAutomorphism phi = BallAutomorphism::from_point(b);
    MatrixTuple z = random_tuple(rng, d, 2 + trial % 3, 0.6);
    MatrixTuple once = phi.apply(z);
    CHECK(row_norm(once) < 1.0);
    MatrixTuple twice = phi.apply(once);
    CHECK(tuple_gap(twice, z) < 1e-10);
  }
}

TEST_CASE("point automorphisms exchange the origin and the base point") {
  Eigen::VectorXcd b(2);
  b(0) = cd(0.3, 0.1);
  b(1) = cd(-0.2, 0.25);
  BallAutomorphism phi = BallAutomorphism::from_point(b);
  MatrixTuple origin = MatrixTuple::zero(2, 3);
  MatrixTuple image = phi.apply(origin);
  for (int j = 0; j < 2; ++j) {
    Eigen::MatrixXcd expected =
        b(j) * Eigen::MatrixXcd::Identity(3, 3);
    CHECK((image.matrices[j] - expected).norm() < 1e-12);
  }
  MatrixTuple back = phi.apply(image);
  CHECK(tuple_gap(back, origin) < 1e-12);
}

TEST_CASE("the origin automorphism is minus the identity") {
  BallAutomorphism phi =
      BallAutomorphism::from_point(Eigen::VectorXcd::Zero(2));
  std::mt19937_64 rng(502);
  MatrixTuple z = random_tuple(rng, 2, 3, 0.5);
  MatrixTuple image = phi.apply(z);
  CHECK(tuple_gap(image, scale(z, -1.0)) < 1e-13);
}

TEST_CASE("composition acts as the composite map") {
  std::mt19937_64 rng(503);
  BallAutomorphism f = BallAutomorphism::from_point(e1_scaled(2, 0.4));
  Eigen::VectorXcd b(2);
  b(0) = cd(0.1, -0.2);
  b(1) = cd(0.0, 0.3);
  BallAutomorphism g = BallAutomorphism::from_point(b);
  for (int trial = 0; trial < 6; ++trial) {
    MatrixTuple z = random_tuple(rng, 2, 2 + trial % 2, 0.55);
    MatrixTuple composite = compose(f, g).apply(z);
    MatrixTuple stepwise = f.apply(g.apply(z));
    CHECK(tuple_gap(composite, stepwise) < 1e-10);
  }
}

TEST_CASE("inverse undoes the map and composes to a Cartan fixpoint") {
  BallAutomorphism f = BallAutomorphism::from_point(e1_scaled(3, 0.35));
  BallAutomorphism f_inv = inverse(f);
  std::mt19937_64 rng(504);
  for (int trial = 0; trial < 5; ++trial) {
    MatrixTuple z = random_tuple(rng, 3, 2, 0.6);
    CHECK(tuple_gap(f_inv.apply(f.apply(z)), z) < 1e-10);
  }
  CHECK(cartan_check(compose(f_inv, f), 2, 6));
  CHECK(cartan_check(compose(f, f_inv), 2, 6));
}

TEST_CASE("unitary automorphisms permute coordinates exactly") {
  Eigen::MatrixXcd swap = Eigen::MatrixXcd::Zero(2, 2);
  swap(0, 1) = cd(1.0, 0.0);
  swap(1, 0) = cd(1.0, 0.0);
  BallAutomorphism phi = BallAutomorphism::from_unitary(swap);
  std::mt19937_64 rng(505);
  MatrixTuple z = random_tuple(rng, 2, 3, 0.7);
  MatrixTuple image = phi.apply(z);
  CHECK(tuple_gap(image, MatrixTuple(2, {z.matrices[1], z.matrices[0]})) <
        1e-12);

  CHECK_THROWS_AS(BallAutomorphism::from_unitary(2.0 * swap),
                  std::invalid_argument);
}

TEST_CASE("random unitaries act linearly and preserve the row norm") {
  std::mt19937_64 rng(506);
  for (int trial = 0; trial < 6; ++trial) {
    int d = 2 + trial % 2;
    Eigen::MatrixXcd u = random_unitary(rng, d);
    BallAutomorphism phi = BallAutomorphism::from_unitary(u);
    MatrixTuple z = random_tuple(rng, d, 3, 0.65);
    MatrixTuple image = phi.apply(z);
    CHECK(std::abs(row_norm(image) - row_norm(z)) < 1e-10);
    // Coordinates transform by the matrix acting on the index, so each
    // image entry is a fixed linear combination of the originals.
    for (int j = 0; j < d; ++j) {
      Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(3, 3);
      for (int i = 0; i < d; ++i) expected += u(i, j) * z.matrices[i];
      CHECK((image.matrices[j] - expected).norm() < 1e-10);
    }
  }
}

TEST_CASE("diagonal tuples evolve entrywise under disc maps") {
  Eigen::VectorXcd b(1);
  b(0) = cd(0.3, 0.2);
  BallAutomorphism phi = BallAutomorphism::from_point(b);
  Eigen::VectorXcd points(3);
  points << cd(0.1, 0.4), cd(-0.5, 0.0), cd(0.2, -0.3);
  Eigen::MatrixXcd z = points.asDiagonal();
  MatrixTuple image = phi.apply(MatrixTuple(1, {z}));
  for (int k = 0; k < 3; ++k) {
    cd expected = (b(0) - points(k)) /
                  (cd(1.0, 0.0) - std::conj(b(0)) * points(k));
    CHECK(std::abs(image.matrices[0](k, k) - expected) < 1e-13);
    for (int l = 0; l < 3; ++l) {
      if (l != k) CHECK(std::abs(image.matrices[0](k, l)) < 1e-13);
    }
  }
}

TEST_CASE("maps fixing the origin with identity derivative are trivial") {
  CHECK(cartan_check(BallAutomorphism::identity(2), 2, 8));
  CHECK(!cartan_check(BallAutomorphism::from_point(e1_scaled(2, 0.3)), 2, 8));
  Eigen::MatrixXcd swap = Eigen::MatrixXcd::Zero(2, 2);
  swap(0, 1) = cd(1.0, 0.0);
  swap(1, 0) = cd(1.0, 0.0);
  CHECK(!cartan_check(BallAutomorphism::from_unitary(swap), 2, 8));
}

TEST_CASE("invalid blocks and base points are rejected") {
  Eigen::MatrixXcd not_signature = 2.0 * Eigen::MatrixXcd::Identity(3, 3);
  CHECK_THROWS_AS(BallAutomorphism(2, not_signature), std::invalid_argument);

  Eigen::VectorXcd outside(2);
  outside(0) = cd(0.8, 0.0);
  outside(1) = cd(0.7, 0.0);
  CHECK_THROWS_AS(BallAutomorphism::from_point(outside), std::domain_error);
}

TEST_CASE("singular denominators outside the ball are reported") {
  Eigen::VectorXcd b(1);
  b(0) = cd(0.5, 0.0);
  BallAutomorphism phi = BallAutomorphism::from_point(b);
  CHECK_THROWS_AS(phi.apply(scalar_point(cd(2.0, 0.0))), std::domain_error);
}

TEST_CASE("circle averaging extracts homogeneous polynomial components") {
  FreePoly p = FreePoly::constant(2, cd(1.0, 0.0));
  p = p + 2.0 * FreePoly::variable(2, 0);
  p = p + 3.0 * (FreePoly::variable(2, 0) * FreePoly::variable(2, 1));
  p = p + (FreePoly::variable(2, 1) * FreePoly::variable(2, 1));
  std::mt19937_64 rng(507);
  MatrixTuple z = random_tuple(rng, 2, 3, 0.8);
  for (int n = 0; n <= 3; ++n) {
    Eigen::MatrixXcd component = circle_average(p, z, n);
    Eigen::MatrixXcd expected = eval_poly(p.homogeneous_component(n), z);
    CHECK((component - expected).norm() < 1e-13);
  }
}

TEST_CASE("circle averaging recovers Taylor terms of a disc map") {
  Eigen::VectorXcd b(1);
  b(0) = cd(0.5, 0.0);
  BallAutomorphism phi = BallAutomorphism::from_point(b);
  MatrixTuple z = scalar_point(cd(0.3, 0.0));
  auto act = [&phi](const MatrixTuple& x) { return phi.apply(x).matrices[0]; };

  Eigen::MatrixXcd constant = circle_average(act, z, 0);
  CHECK(std::abs(constant(0, 0) - cd(0.5, 0.0)) < 1e-12);

  // The linear coefficient of (b - z) / (1 - conj(b) z) is -(1 - |b|^2).
  Eigen::MatrixXcd linear = circle_average(act, z, 1);
  CHECK(std::abs(linear(0, 0) - cd(-0.75 * 0.3, 0.0)) < 1e-12);
}

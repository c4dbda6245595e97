#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ncball/fock.hpp"
#include "test_support.hpp"

using namespace ncball;
using ncball::testing::random_poly;
using ncball::testing::random_tuple;
using ncball::testing::random_vector;

namespace {

// Partial sum sum_{|k| <= terms} Z^k P W^{*k}, built degree by degree from
// G_m = sum_j Z_j G_{m-1} W_j^*.
Eigen::MatrixXcd szego_series_oracle(const MatrixTuple& z,
                                     const MatrixTuple& w,
                                     const Eigen::MatrixXcd& p, int terms) {
  Eigen::MatrixXcd level = p;
  Eigen::MatrixXcd sum = p;
  for (int m = 1; m <= terms; ++m) {
    Eigen::MatrixXcd next = Eigen::MatrixXcd::Zero(z.n, w.n);
    for (int j = 0; j < z.d; ++j) {
      next += z.matrices[j] * level * w.matrices[j].adjoint();
    }
    level = next;
    sum += level;
  }
  return sum;
}

}  // namespace

TEST_CASE("truncated basis indexing") {
  TruncatedFock space(2, 3);
  CHECK(space.dim == 15);
  CHECK(space.degree_offset(0) == 0);
  CHECK(space.degree_offset(1) == 1);
  CHECK(space.degree_offset(3) == 7);
  for (long long i = 0; i < space.dim; ++i) {
    CHECK(space.index_of(space.word_at(i)) == i);
  }
  CHECK_THROWS_AS(space.index_of(Word({0, 0, 0, 0}, 2)),
                  std::invalid_argument);
}

TEST_CASE("creation operators shift words and kill the top level") {
  CreationTuple lops = creation_operators(2, 2);
  const TruncatedFock& space = lops.space;
  CHECK(space.dim == 7);
  MatrixTuple dense = lops.dense();
  for (int i = 0; i < 2; ++i) {
    for (long long col = 0; col < space.dim; ++col) {
      Word w = space.word_at(col);
      Eigen::VectorXcd image = dense.matrices[i].col(col);
      if (w.length() == space.N) {
        CHECK(image.norm() == 0.0);
      } else {
        Word shifted = Word({i}, 2).concat(w);
        CHECK(image(space.index_of(shifted)) == cd(1.0, 0.0));
        CHECK(image.norm() == doctest::Approx(1.0));
      }
    }
  }
}

TEST_CASE("creation operators are isometries below the top level") {
  CreationTuple lops = creation_operators(3, 3);
  MatrixTuple dense = lops.dense();
  long long interior = lops.space.degree_offset(lops.space.N);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      Eigen::MatrixXcd gram =
          (dense.matrices[i].adjoint() * dense.matrices[j])
              .topLeftCorner(interior, interior);
      Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(interior, interior);
      if (i == j) expected.setIdentity();
      CHECK((gram - expected).norm() == 0.0);
    }
  }
}

TEST_CASE("row of creations projects onto words of positive length") {
  CreationTuple lops = creation_operators(2, 3);
  MatrixTuple dense = lops.dense();
  Eigen::MatrixXcd sum =
      Eigen::MatrixXcd::Zero(lops.space.dim, lops.space.dim);
  for (const auto& m : dense.matrices) sum += m * m.adjoint();
  Eigen::MatrixXcd expected =
      Eigen::MatrixXcd::Identity(lops.space.dim, lops.space.dim);
  expected(0, 0) = cd(0.0, 0.0);
  CHECK((sum - expected).norm() == 0.0);
  CHECK(row_norm(dense) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("creation space dimension guard") {
  CHECK_THROWS_AS(creation_operators(8, 6), std::length_error);
}

TEST_CASE("scalar geometric series sums to four thirds") {
  MatrixTuple z(1, {Eigen::MatrixXcd::Constant(1, 1, cd(0.5, 0.0))});
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Identity(1, 1);
  Eigen::MatrixXcd value = szego_apply(z, z, p);
  CHECK(value(0, 0).real() == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  CHECK(value(0, 0).imag() == doctest::Approx(0.0));
}

TEST_CASE("kernel solve matches the truncated series") {
  std::mt19937_64 rng(201);
  for (int trial = 0; trial < 20; ++trial) {
    int d = 1 + trial % 3;
    int nz = 2 + trial % 2;
    int nw = 2 + (trial / 2) % 2;
    MatrixTuple z = random_tuple(rng, d, nz, 0.6);
    MatrixTuple w = random_tuple(rng, d, nw, 0.6);
    Eigen::MatrixXcd p = ncball::testing::random_matrix(rng, nz, nw);
    Eigen::MatrixXcd direct = szego_apply(z, w, p);
    Eigen::MatrixXcd series = szego_series_oracle(z, w, p, 12);
    double tail = p.norm() * std::pow(0.36, 13) / (1.0 - 0.36);
    CHECK((direct - series).norm() <= tail + 1e-10);
  }
}

TEST_CASE("kernel rejects points outside the ball") {
  MatrixTuple z(1, {Eigen::MatrixXcd::Constant(1, 1, cd(1.0, 0.0))});
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Identity(1, 1);
  CHECK_THROWS_AS(szego_apply(z, z, p), std::domain_error);
}

TEST_CASE("scalar kernel coefficients are the powers of the point") {
  MatrixTuple w(1, {Eigen::MatrixXcd::Constant(1, 1, cd(0.5, 0.0))});
  Eigen::VectorXcd one = Eigen::VectorXcd::Ones(1);
  FreePoly k = kernel_coefficients(w, one, one, 3);
  CHECK(k.terms().size() == 4);
  for (int len = 0; len <= 3; ++len) {
    Word word(std::vector<int>(len, 0), 1);
    CHECK(k.coefficient(word).real() ==
          doctest::Approx(std::pow(0.5, len)).epsilon(1e-14));
  }
}

TEST_CASE("pairing against the kernel reproduces the evaluation pairing") {
  std::mt19937_64 rng(202);
  for (int trial = 0; trial < 30; ++trial) {
    int d = 1 + trial % 3;
    int n = 1 + trial % 4;
    int degree = 1 + trial % 5;
    FreePoly h = random_poly(rng, d, degree, 2);
    MatrixTuple w = random_tuple(rng, d, n, 0.7);
    Eigen::VectorXcd v = random_vector(rng, n);
    Eigen::VectorXcd y = random_vector(rng, n);
    FreePoly kernel = kernel_coefficients(w, v, y, degree);
    cd paired = fock_inner(h, kernel);
    cd direct = (y.adjoint() * eval_poly(h, w) * v).value();
    CHECK(std::abs(paired - direct) <= 1e-10 * (1.0 + std::abs(direct)));
  }
}

TEST_CASE("kernel of a direct sum is the sum of kernels") {
  std::mt19937_64 rng(203);
  MatrixTuple w1 = random_tuple(rng, 2, 2, 0.5);
  MatrixTuple w2 = random_tuple(rng, 2, 3, 0.6);
  Eigen::VectorXcd v1 = random_vector(rng, 2);
  Eigen::VectorXcd y1 = random_vector(rng, 2);
  Eigen::VectorXcd v2 = random_vector(rng, 3);
  Eigen::VectorXcd y2 = random_vector(rng, 3);

  Eigen::VectorXcd v(5), y(5);
  v << v1, v2;
  y << y1, y2;
  FreePoly joint = kernel_coefficients(direct_sum(w1, w2), v, y, 4);
  FreePoly split = kernel_coefficients(w1, v1, y1, 4) +
                   kernel_coefficients(w2, v2, y2, 4);
  CHECK((joint - split).l2_norm() < 1e-12);
}

TEST_CASE("multiplier adjoint identity holds on truncations") {
  MatrixTuple w(1, {Eigen::MatrixXcd::Constant(1, 1, cd(0.5, 0.0))});
  Eigen::VectorXcd one = Eigen::VectorXcd::Ones(1);
  FreePoly p = FreePoly::variable(1, 0);
  double residual = multiplier_adjoint_check(p, w, one, one, 12, 1e-3);
  CHECK(residual <= std::pow(0.5, 11));

  std::mt19937_64 rng(204);
  for (int trial = 0; trial < 10; ++trial) {
    int d = 1 + trial % 2;
    MatrixTuple point = random_tuple(rng, d, 3, 0.3);
    FreePoly q = random_poly(rng, d, 2, 2);
    Eigen::VectorXcd v = random_vector(rng, 3);
    Eigen::VectorXcd y = random_vector(rng, 3);
    CHECK(multiplier_adjoint_check(q, point, v, y, 12, 1e-3) < 1e-11);
  }
}

TEST_CASE("multiplier adjoint check guards the truncation degree") {
  MatrixTuple w(1, {Eigen::MatrixXcd::Constant(1, 1, cd(0.9, 0.0))});
  Eigen::VectorXcd one = Eigen::VectorXcd::Ones(1);
  FreePoly p = FreePoly::variable(1, 0);
  CHECK_THROWS_AS(multiplier_adjoint_check(p, w, one, one, 3, 1e-10),
                  std::invalid_argument);
}

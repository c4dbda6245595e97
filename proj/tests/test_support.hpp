#pragma once

// Deterministic random generators shared by the test binaries.

#include <Eigen/Dense>
#include <Eigen/QR>

#include <random>

#include "ncball/freealg.hpp"

namespace ncball::testing {

inline Eigen::MatrixXcd random_matrix(std::mt19937_64& rng, int rows,
                                      int cols) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      m(r, c) = cd(gauss(rng), gauss(rng));
    }
  }
  return m;
}

inline Eigen::VectorXcd random_vector(std::mt19937_64& rng, int size) {
  return random_matrix(rng, size, 1);
}

inline Eigen::MatrixXcd random_unitary(std::mt19937_64& rng, int size) {
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(random_matrix(rng, size, size));
  return qr.householderQ() * Eigen::MatrixXcd::Identity(size, size);
}

// Tuple rescaled so its row norm equals the requested value.
inline MatrixTuple random_tuple(std::mt19937_64& rng, int d, int n,
                                double target_norm) {
  std::vector<Eigen::MatrixXcd> parts(d);
  for (int j = 0; j < d; ++j) parts[j] = random_matrix(rng, n, n);
  MatrixTuple x(d, std::move(parts));
  double r = row_norm(x);
  return r > 0.0 ? scale(x, cd(target_norm / r, 0.0)) : x;
}

inline FreePoly random_poly(std::mt19937_64& rng, int d, int degree,
                            int terms_per_degree = 3) {
  std::uniform_int_distribution<int> letter(0, d - 1);
  std::normal_distribution<double> gauss(0.0, 1.0);
  FreePoly p(d);
  for (int k = 0; k <= degree; ++k) {
    for (int t = 0; t < terms_per_degree; ++t) {
      std::vector<int> letters(k);
      for (int& l : letters) l = letter(rng);
      p.add_term(Word(letters, d), cd(gauss(rng), gauss(rng)));
    }
  }
  return p;
}

inline FreePoly random_homogeneous_poly(std::mt19937_64& rng, int d,
                                        int degree, int terms = 3) {
  std::uniform_int_distribution<int> letter(0, d - 1);
  std::normal_distribution<double> gauss(0.0, 1.0);
  FreePoly p(d);
  for (int t = 0; t < terms; ++t) {
    std::vector<int> letters(degree);
    for (int& l : letters) l = letter(rng);
    p.add_term(Word(letters, d), cd(gauss(rng), gauss(rng)));
  }
  return p;
}

}  // namespace ncball::testing

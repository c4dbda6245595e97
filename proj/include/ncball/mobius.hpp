#pragma once

// Automorphisms of the matrix ball.  Each one is carried by a
// (d+1) x (d+1) scalar block matrix T = [[a, v], [w, X]] preserving the
// signature form diag(1, -I_d); the action on a tuple ampliates the blocks
// by I_n and takes the matrix fractional transform.  Composition and
// inversion happen on the block matrices.

#include <Eigen/Dense>

#include <functional>

#include "ncball/freealg.hpp"

namespace ncball {

class BallAutomorphism {
 public:
  // Requires T^* diag(1, -I_d) T = diag(1, -I_d) to 1e-10.  The stored
  // block is rescaled by the principal (d+1)-th root of det T, the fixed
  // representative of the projective class.
  BallAutomorphism(int d_in, Eigen::MatrixXcd block_in);

  static BallAutomorphism identity(int d);

  // The involution exchanging 0 and the scalar point b (|b| < 1).
  static BallAutomorphism from_point(const Eigen::VectorXcd& b);

  // Coordinate change Z -> (sum_i Z_i u_i1, ..., sum_i Z_i u_id).
  static BallAutomorphism from_unitary(const Eigen::MatrixXcd& u);

  int d() const { return d_; }
  const Eigen::MatrixXcd& block() const { return block_; }

  cd a() const { return block_(0, 0); }
  Eigen::RowVectorXcd v() const { return block_.row(0).tail(d_); }
  Eigen::VectorXcd w() const { return block_.col(0).tail(d_); }
  Eigen::MatrixXcd x() const { return block_.bottomRightCorner(d_, d_); }

  double signature_residual() const;

  // (aZ + v (x) I)(w (x) I Z + X (x) I)^{-1}, levelwise on tuples of any
  // size.  Throws std::domain_error when the resolvent block is singular,
  // which signals a point outside the domain of the map.
  MatrixTuple apply(const MatrixTuple& z) const;

 private:
  int d_;
  Eigen::MatrixXcd block_;
};

// compose(f, g) acts as f after g.
BallAutomorphism compose(const BallAutomorphism& f, const BallAutomorphism& g);
BallAutomorphism inverse(const BallAutomorphism& f);

// True when the map fixes 0 with identity derivative there (derivative
// taken by central differences at level 1).  When that holds, the map is
// checked to fix `trials` random tuples at the given level; a sample moved
// by more than 1e-9 falsifies the identity and gives a false return.
bool cartan_check(const BallAutomorphism& f, int level, int trials,
                  unsigned seed = 0);

// Degree-n Fourier component (1/M) sum_j f(e^{2 pi i j / M} Z) e^{-2 pi i j n / M}.
// Exact for polynomial integrands of degree below M.
Eigen::MatrixXcd circle_average(
    const std::function<Eigen::MatrixXcd(const MatrixTuple&)>& f,
    const MatrixTuple& z, int n, int M = 64);

Eigen::MatrixXcd circle_average(const FreePoly& p, const MatrixTuple& z,
                                int n, int M = 64);

}  // namespace ncball

#pragma once

// Truncated full Fock space over C^d and the kernel computations living in
// it: left creation operators, the Szego-type kernel evaluated by one
// linear solve, kernel functions attached to a matrix point, and the
// multiplier adjoint identity used to cross-check them.

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "ncball/freealg.hpp"

namespace ncball {

// Index bookkeeping for the span of all words of length <= N.  Basis
// vectors are ordered by degree, then lexicographically within a degree;
// position 0 is the empty word.
struct TruncatedFock {
  int d = 1;
  int N = 0;
  long long dim = 1;

  TruncatedFock(int d_in, int N_in);

  long long degree_offset(int k) const;
  long long index_of(const Word& w) const;
  Word word_at(long long index) const;
};

// Left creation tuple on a truncated Fock space.  L_i sends the basis
// vector of w to that of i.w and kills words of top length N.  Each matrix
// has at most one entry per column, so the sparse form is kept.
struct CreationTuple {
  TruncatedFock space;
  std::vector<Eigen::SparseMatrix<cd>> ops;

  MatrixTuple dense() const;
};

CreationTuple creation_operators(int d, int N);

// Value of the Szego kernel: the unique T with T = P + sum_j Z_j T W_j^*,
// obtained by solving (I - sum_j conj(W_j) (x) Z_j) vec(T) = vec(P).
// Both tuples must lie in the open ball.
Eigen::MatrixXcd szego_apply(const MatrixTuple& z, const MatrixTuple& w,
                             const Eigen::MatrixXcd& p);

// Coefficients through degree N of the kernel function of the point W with
// directions v, y: the word w carries v^* (W^w)^* y.  Pairing a polynomial
// against the result under fock_inner reproduces <h(W)v, y> = y^* h(W) v
// exactly once N >= deg h.
FreePoly kernel_coefficients(const MatrixTuple& w, const Eigen::VectorXcd& v,
                             const Eigen::VectorXcd& y, int N);

// l2 pairing of coefficient lists, linear in the first slot.
cd fock_inner(const FreePoly& f, const FreePoly& g);

// Residual of M_p^* k_{W,v,y} = k_{W,v,p(W)^* y} on coefficients of degree
// <= N - deg p.  The guard rejects N too small for the geometric tail of
// the kernel coefficients to fall under tol.
double multiplier_adjoint_check(const FreePoly& p, const MatrixTuple& w,
                                const Eigen::VectorXcd& v,
                                const Eigen::VectorXcd& y, int N,
                                double tol = 1e-6);

}  // namespace ncball

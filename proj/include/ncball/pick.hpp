#pragma once

// Interpolation feasibility on the matrix ball.  A Pick problem prescribes
// targets at finitely many matrix points; feasibility of a contractive
// interpolant is decided by positivity of the Choi matrix of the
// de Branges-Rovnyak map at the direct sum of the nodes.  No interpolant
// is synthesized.

#include <Eigen/Dense>

#include <vector>

#include "ncball/freealg.hpp"
#include "ncball/ideals.hpp"

namespace ncball {

inline constexpr int kMaxCoefficientDim = 4;

struct PickProblem {
  std::vector<MatrixTuple> nodes;
  std::vector<Eigen::MatrixXcd> targets;
  int e = 1;

  // Validates: at least one node, all nodes strictly inside the ball and
  // over one alphabet, target i of size (n_i e) x (n_i e), 1 <= e <= 4.
  PickProblem(std::vector<MatrixTuple> nodes_in,
              std::vector<Eigen::MatrixXcd> targets_in, int e_in);

  int d() const { return nodes.front().d; }
  int total_level() const;

  MatrixTuple reduced_node() const;
  Eigen::MatrixXcd reduced_target() const;
};

struct ChoiResult {
  Eigen::MatrixXcd choi;  // Hermitian, size (total level)^2 * e
  double solve_rcond;     // 1-norm condition estimate of the kernel solve
};

// Choi matrix sum_{a,b} E_ab (x) Phi(E_ab) of
// Phi(P) = K(Z,Z)(P) (x) I_e - W [K(Z,Z)(P) (x) I_e] W^*
// at the reduced node Z with reduced target W.
ChoiResult dbr_choi(const PickProblem& problem);

struct FeasibilityResult {
  bool feasible = false;
  double margin = 0.0;  // smallest eigenvalue of the Choi matrix
  long long choi_dim = 0;
  double choi_norm = 0.0;
  double solve_rcond = 0.0;
};

// Feasible when the smallest Choi eigenvalue is >= -tol * (1 + ||C||).
FeasibilityResult pick_feasible(const PickProblem& problem, double tol = 1e-9);

// Largest value of ||p(X)|| over the samples; a certified lower bound for
// the sup norm of p over the ball.  Samples must lie strictly inside the
// ball, and on the variety of the ideal when one is given (generator
// residuals at most 1e-8).
double sup_norm_lower_bound(const FreePoly& p,
                            const std::vector<MatrixTuple>& samples);
double sup_norm_lower_bound(const FreePoly& p,
                            const std::vector<MatrixTuple>& samples,
                            const GradedIdeal& variety);

}  // namespace ncball

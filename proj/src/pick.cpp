#include "ncball/pick.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <stdexcept>
#include <string>

namespace ncball {

PickProblem::PickProblem(std::vector<MatrixTuple> nodes_in,
                         std::vector<Eigen::MatrixXcd> targets_in, int e_in)
    : nodes(std::move(nodes_in)), targets(std::move(targets_in)), e(e_in) {
  if (nodes.empty()) {
    throw std::invalid_argument("ncball: interpolation problem needs at least one node");
  }
  if (nodes.size() != targets.size()) {
    throw std::invalid_argument("ncball: node and target counts differ");
  }
  if (e < 1 || e > kMaxCoefficientDim) {
    throw std::invalid_argument("ncball: coefficient dimension e = " +
                                std::to_string(e) + " outside [1, " +
                                std::to_string(kMaxCoefficientDim) + "]");
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].d != nodes.front().d) {
      throw std::invalid_argument("ncball: node " + std::to_string(i) +
                                  " uses a different variable count");
    }
    double r = row_norm(nodes[i]);
    if (r >= 1.0) {
      throw std::domain_error("ncball: node " + std::to_string(i) +
                              " lies outside the open ball (row norm " +
                              std::to_string(r) + ")");
    }
    long long expected = static_cast<long long>(nodes[i].n) * e;
    if (targets[i].rows() != expected || targets[i].cols() != expected) {
      throw std::invalid_argument("ncball: target " + std::to_string(i) +
                                  " must be square of size level*e = " +
                                  std::to_string(expected));
    }
  }
}

int PickProblem::total_level() const {
  int n = 0;
  for (const auto& node : nodes) n += node.n;
  return n;
}

MatrixTuple PickProblem::reduced_node() const {
  MatrixTuple out = nodes.front();
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    out = direct_sum(out, nodes[i]);
  }
  return out;
}

Eigen::MatrixXcd PickProblem::reduced_target() const {
  long long size = static_cast<long long>(total_level()) * e;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(size, size);
  long long at = 0;
  for (const auto& target : targets) {
    out.block(at, at, target.rows(), target.cols()) = target;
    at += target.rows();
  }
  return out;
}

namespace {

double one_norm(const Eigen::MatrixXcd& m) {
  return m.cwiseAbs().colwise().sum().maxCoeff();
}

}  // namespace

ChoiResult dbr_choi(const PickProblem& problem) {
  MatrixTuple z = problem.reduced_node();
  Eigen::MatrixXcd w = problem.reduced_target();
  const long long n = z.n;
  const long long e = problem.e;
  const long long ne = n * e;
  const long long nsq = n * n;

  Eigen::MatrixXcd system = Eigen::MatrixXcd::Identity(nsq, nsq);
  for (int j = 0; j < z.d; ++j) {
    system -= Eigen::kroneckerProduct(z.matrices[j].conjugate(), z.matrices[j]);
  }
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(system);
  // Solving against the identity yields K(Z,Z)(E_ab) for every matrix unit
  // at once: column b*n + a is vec of the kernel value at E_ab.
  Eigen::MatrixXcd kernel_values =
      lu.solve(Eigen::MatrixXcd::Identity(nsq, nsq));
  double rcond = 1.0 / (one_norm(system) * one_norm(kernel_values));

  Eigen::MatrixXcd identity_e = Eigen::MatrixXcd::Identity(e, e);
  Eigen::MatrixXcd choi = Eigen::MatrixXcd::Zero(n * ne, n * ne);
  for (long long a = 0; a < n; ++a) {
    for (long long b = 0; b < n; ++b) {
      Eigen::MatrixXcd value = Eigen::Map<const Eigen::MatrixXcd>(
          kernel_values.col(b * n + a).data(), n, n);
      Eigen::MatrixXcd amplified = Eigen::kroneckerProduct(value, identity_e);
      choi.block(a * ne, b * ne, ne, ne) =
          amplified - w * amplified * w.adjoint();
    }
  }
  choi = 0.5 * (choi + choi.adjoint().eval());
  return ChoiResult{std::move(choi), rcond};
}

FeasibilityResult pick_feasible(const PickProblem& problem, double tol) {
  ChoiResult data = dbr_choi(problem);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      data.choi, Eigen::EigenvaluesOnly);
  FeasibilityResult result;
  result.choi_dim = data.choi.rows();
  result.margin = solver.eigenvalues().minCoeff();
  result.choi_norm = solver.eigenvalues().cwiseAbs().maxCoeff();
  result.solve_rcond = data.solve_rcond;
  result.feasible = result.margin >= -tol * (1.0 + result.choi_norm);
  return result;
}

namespace {

double checked_sample_norm(const FreePoly& p, const MatrixTuple& x,
                           std::size_t index) {
  double r = row_norm(x);
  if (r >= 1.0) {
    throw std::domain_error("ncball: sample " + std::to_string(index) +
                            " lies outside the open ball");
  }
  Eigen::MatrixXcd value = eval_poly(p, x);
  return Eigen::BDCSVD<Eigen::MatrixXcd>(value).singularValues()(0);
}

}  // namespace

double sup_norm_lower_bound(const FreePoly& p,
                            const std::vector<MatrixTuple>& samples) {
  double best = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    best = std::max(best, checked_sample_norm(p, samples[i], i));
  }
  return best;
}

double sup_norm_lower_bound(const FreePoly& p,
                            const std::vector<MatrixTuple>& samples,
                            const GradedIdeal& variety) {
  double best = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (const auto& g : variety.generators()) {
      double residual = eval_poly(g, samples[i]).norm();
      if (residual > 1e-8 * g.l2_norm()) {
        throw std::domain_error("ncball: sample " + std::to_string(i) +
                                " misses the variety (generator residual " +
                                std::to_string(residual) + ")");
      }
    }
    best = std::max(best, checked_sample_norm(p, samples[i], i));
  }
  return best;
}

}  // namespace ncball

#include "ncball/ideals.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ncball {

namespace {

constexpr double kRankTol = 1e-10;
constexpr double kMemberTol = 1e-10;
constexpr long long kDenseShiftCap = 4096;

// Orthonormal basis of the column space, rank decided by column-pivoted QR
// with relative tolerance kRankTol.
Eigen::MatrixXcd orthonormal_column_basis(const Eigen::MatrixXcd& columns) {
  if (columns.cols() == 0) {
    return Eigen::MatrixXcd(columns.rows(), 0);
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(columns);
  qr.setThreshold(kRankTol);
  Eigen::Index rank = qr.rank();
  return qr.householderQ() *
         Eigen::MatrixXcd::Identity(columns.rows(), rank);
}

Eigen::MatrixXcd orthonormal_complement(const Eigen::MatrixXcd& basis,
                                        long long ambient) {
  if (basis.cols() == 0) {
    return Eigen::MatrixXcd::Identity(ambient, ambient);
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(basis);
  Eigen::MatrixXcd full = qr.householderQ();
  return full.rightCols(ambient - basis.cols());
}

double largest_singular_value(const Eigen::MatrixXcd& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  return Eigen::BDCSVD<Eigen::MatrixXcd>(m).singularValues()(0);
}

}  // namespace

GradedIdeal::GradedIdeal(int d_in, std::vector<FreePoly> generators_in)
    : d_(d_in), cache_(std::make_shared<Cache>()) {
  MatrixTuple::zero(d_, 1);  // validates the variable count
  for (std::size_t k = 0; k < generators_in.size(); ++k) {
    const FreePoly& g = generators_in[k];
    if (g.d() != d_) {
      throw std::invalid_argument("ncball: generator " + std::to_string(k) +
                                  " uses a different variable count");
    }
    if (!g.degree()) continue;
    if (!g.is_homogeneous()) {
      throw std::invalid_argument("ncball: generator " + std::to_string(k) +
                                  " is not homogeneous");
    }
    generators_.push_back(g);
  }
}

int GradedIdeal::max_generator_degree() const {
  int deg = 0;
  for (const auto& g : generators_) deg = std::max(deg, *g.degree());
  return deg;
}

Eigen::MatrixXcd GradedIdeal::graded_basis(int n) const {
  if (n < 0) throw std::invalid_argument("ncball: negative degree");
  words_of_length(d_, n);
  std::lock_guard<std::mutex> lock(cache_->mutex);
  if (cache_->bases.size() <= static_cast<std::size_t>(n)) {
    cache_->bases.resize(n + 1);
  }
  for (int k = 0; k <= n; ++k) {
    if (cache_->bases[k]) continue;
    long long level = words_of_length(d_, k);
    std::vector<Eigen::VectorXcd> candidates;
    if (k > 0) {
      const Eigen::MatrixXcd& prev = *cache_->bases[k - 1];
      long long prev_level = level / d_;
      for (Eigen::Index col = 0; col < prev.cols(); ++col) {
        for (int i = 0; i < d_; ++i) {
          Eigen::VectorXcd left = Eigen::VectorXcd::Zero(level);
          left.segment(i * prev_level, prev_level) = prev.col(col);
          candidates.push_back(std::move(left));
          Eigen::VectorXcd right = Eigen::VectorXcd::Zero(level);
          for (long long j = 0; j < prev_level; ++j) {
            right(j * d_ + i) = prev(j, col);
          }
          candidates.push_back(std::move(right));
        }
      }
    }
    for (const auto& g : generators_) {
      if (*g.degree() == k) candidates.push_back(g.coefficient_vector(k));
    }
    Eigen::MatrixXcd stacked(level, candidates.size());
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      stacked.col(c) = candidates[c];
    }
    cache_->bases[k] = orthonormal_column_basis(stacked);
  }
  return *cache_->bases[n];
}

SubproductFiber fiber(const GradedIdeal& ideal, int n) {
  Eigen::MatrixXcd basis = ideal.graded_basis(n);
  return SubproductFiber{n, orthonormal_complement(
                                basis, words_of_length(ideal.d(), n))};
}

namespace {

struct FiberLadder {
  std::vector<Eigen::MatrixXcd> bases;  // fiber bases through degree N
  std::vector<long long> offsets;       // running starts, length N + 2
};

FiberLadder fiber_ladder(const GradedIdeal& ideal, int N) {
  FiberLadder ladder;
  ladder.offsets.push_back(0);
  for (int n = 0; n <= N; ++n) {
    ladder.bases.push_back(fiber(ideal, n).basis);
    ladder.offsets.push_back(ladder.offsets.back() +
                             ladder.bases.back().cols());
  }
  return ladder;
}

// Block of the compressed shift monomial S^w from fiber degree n to degree
// n + |w|: rows of the higher fiber basis restricted to words with prefix
// w, paired against the lower fiber basis.
Eigen::MatrixXcd shift_word_block(const FiberLadder& ladder, int d,
                                  const Word& w, int n) {
  long long level = words_of_length(d, n);
  const Eigen::MatrixXcd& lower = ladder.bases[n];
  const Eigen::MatrixXcd& upper = ladder.bases[n + w.length()];
  return upper.middleRows(w.lex_index() * level, level).adjoint() * lower;
}

}  // namespace

MatrixTuple compressed_shift(const GradedIdeal& ideal, int N) {
  if (N < 0) throw std::invalid_argument("ncball: negative truncation degree");
  FiberLadder ladder = fiber_ladder(ideal, N);
  long long dim = ladder.offsets.back();
  if (dim > kDenseShiftCap) {
    throw std::length_error("ncball: compressed shift of dimension " +
                            std::to_string(dim) + " exceeds dense cap of " +
                            std::to_string(kDenseShiftCap));
  }
  std::vector<Eigen::MatrixXcd> blocks(
      ideal.d(), Eigen::MatrixXcd::Zero(dim, dim));
  for (int i = 0; i < ideal.d(); ++i) {
    Word letter({i}, ideal.d());
    for (int n = 0; n + 1 <= N; ++n) {
      blocks[i].block(ladder.offsets[n + 1], ladder.offsets[n],
                      ladder.bases[n + 1].cols(), ladder.bases[n].cols()) =
          shift_word_block(ladder, ideal.d(), letter, n);
    }
  }
  return MatrixTuple(ideal.d(), std::move(blocks));
}

double membership_residual(const GradedIdeal& ideal, const FreePoly& p) {
  if (p.d() != ideal.d()) {
    throw std::invalid_argument("ncball: polynomial variable count differs from ideal");
  }
  if (!p.degree()) return 0.0;
  if (!p.is_homogeneous()) {
    throw std::invalid_argument("ncball: membership requires a homogeneous polynomial");
  }
  int m = *p.degree();
  Eigen::VectorXcd coeffs = p.coefficient_vector(m);
  Eigen::MatrixXcd basis = ideal.graded_basis(m);
  double distance = basis.cols() == 0
                        ? coeffs.norm()
                        : (coeffs - basis * (basis.adjoint() * coeffs)).norm();
  return distance / coeffs.norm();
}

bool membership(const GradedIdeal& ideal, const FreePoly& p) {
  return membership_residual(ideal, p) <= kMemberTol;
}

NullstellensatzWitness nullstellensatz_witness(const GradedIdeal& ideal,
                                               const FreePoly& p, double t) {
  if (t <= 0.0 || t >= 1.0) {
    throw std::invalid_argument("ncball: witness scale t must lie in (0, 1)");
  }
  NullstellensatzWitness result;
  result.residual = membership_residual(ideal, p);
  if (result.residual <= kMemberTol) {
    result.member = true;
    if (p.degree()) {
      int m = *p.degree();
      result.certificate =
          ideal.graded_basis(m).adjoint() * p.coefficient_vector(m);
    }
    return result;
  }

  int m = *p.degree();
  result.member = false;
  result.point = scale(compressed_shift(ideal, m), cd(t, 0.0));
  result.point_row_norm = row_norm(result.point);
  for (const auto& g : ideal.generators()) {
    result.generator_residuals.push_back(
        eval_poly(g, result.point).norm());
  }
  result.value_norm = largest_singular_value(eval_poly(p, result.point));
  result.value_lower_bound =
      std::pow(t, m) * result.residual * p.coefficient_vector(m).norm();
  return result;
}

double quotient_norm_estimate(const GradedIdeal& ideal, const FreePoly& p,
                              int N) {
  if (p.d() != ideal.d()) {
    throw std::invalid_argument("ncball: polynomial variable count differs from ideal");
  }
  if (!p.degree()) return 0.0;
  int m = *p.degree();
  if (N < m) {
    throw std::invalid_argument("ncball: truncation degree below deg p");
  }
  if (p.is_homogeneous()) {
    // p(S) maps the degree-n fiber into the degree-(n+m) fiber, so the
    // norm is the largest norm among these blocks.
    FiberLadder ladder = fiber_ladder(ideal, N);
    double best = 0.0;
    for (int n = 0; n + m <= N; ++n) {
      if (ladder.bases[n].cols() == 0 || ladder.bases[n + m].cols() == 0) {
        continue;
      }
      Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(
          ladder.bases[n + m].cols(), ladder.bases[n].cols());
      for (const auto& [w, c] : p.terms()) {
        block += c * shift_word_block(ladder, ideal.d(), w, n);
      }
      best = std::max(best, largest_singular_value(block));
    }
    return best;
  }
  return largest_singular_value(eval_poly(p, compressed_shift(ideal, N)));
}

double quotient_norm_estimate(const GradedIdeal& ideal, const OperatorPoly& p,
                              int N) {
  if (p.d != ideal.d()) {
    throw std::invalid_argument("ncball: polynomial variable count differs from ideal");
  }
  if (!p.degree()) return 0.0;
  if (N < *p.degree()) {
    throw std::invalid_argument("ncball: truncation degree below deg p");
  }
  return largest_singular_value(eval_poly(p, compressed_shift(ideal, N)));
}

double homogeneous_multiplier_norm(const GradedIdeal& ideal,
                                   const FreePoly& p) {
  if (!p.degree()) return 0.0;
  if (!p.is_homogeneous()) {
    throw std::invalid_argument(
        "ncball: multiplier norm formula requires a homogeneous polynomial");
  }
  int m = *p.degree();
  Eigen::VectorXcd coeffs = p.coefficient_vector(m);
  Eigen::MatrixXcd basis = ideal.graded_basis(m);
  if (basis.cols() == 0) return coeffs.norm();
  return (coeffs - basis * (basis.adjoint() * coeffs)).norm();
}

Eigen::MatrixXcd matrix_span_subspace(
    int d, const std::vector<MatrixTuple>& points) {
  MatrixTuple::zero(d, 1);  // validates the variable count
  long long rows = 0;
  for (const auto& x : points) {
    if (x.d != d) {
      throw std::invalid_argument("ncball: span point has wrong variable count");
    }
    rows += static_cast<long long>(x.n) * x.n;
  }
  if (rows == 0) return Eigen::MatrixXcd(d, 0);
  Eigen::MatrixXcd stacked(rows, d);
  long long at = 0;
  for (const auto& x : points) {
    long long block = static_cast<long long>(x.n) * x.n;
    for (int j = 0; j < d; ++j) {
      stacked.block(at, j, block, 1) =
          Eigen::Map<const Eigen::VectorXcd>(x.matrices[j].data(), block);
    }
    at += block;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(stacked, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  Eigen::Index rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv(k) > kRankTol * sv(0)) ++rank;
  }
  return svd.matrixV().leftCols(rank);
}

EquivalenceReport verify_unitary_equivalence(const Eigen::MatrixXcd& u,
                                             const GradedIdeal& first,
                                             const GradedIdeal& second,
                                             int N) {
  int d = first.d();
  if (second.d() != d || u.rows() != d || u.cols() != d) {
    throw std::invalid_argument("ncball: coordinate change has wrong size");
  }
  if ((u.adjoint() * u - Eigen::MatrixXcd::Identity(d, d)).norm() > 1e-10) {
    throw std::invalid_argument("ncball: coordinate change is not unitary");
  }
  if (N < std::max(first.max_generator_degree(),
                   second.max_generator_degree())) {
    throw std::invalid_argument(
        "ncball: degree bound below the top generator degree");
  }

  EquivalenceReport report;
  report.equivalent = true;
  report.checked_degree = N;
  Eigen::MatrixXcd power = Eigen::MatrixXcd::Identity(1, 1);
  for (int n = 0; n <= N; ++n) {
    Eigen::MatrixXcd b1 = first.graded_basis(n);
    Eigen::MatrixXcd b2 = second.graded_basis(n);
    if (b1.cols() != b2.cols()) {
      report.equivalent = false;
      report.worst_angle = M_PI / 2.0;
      report.first_mismatch_degree = n;
      return report;
    }
    if (b1.cols() > 0) {
      Eigen::MatrixXcd cross = b2.adjoint() * (power * b1);
      Eigen::BDCSVD<Eigen::MatrixXcd> svd(cross);
      double smallest = svd.singularValues().minCoeff();
      double angle = std::acos(std::clamp(smallest, 0.0, 1.0));
      report.worst_angle = std::max(report.worst_angle, angle);
      if (angle > 1e-8) {
        report.equivalent = false;
        report.first_mismatch_degree = n;
        return report;
      }
    }
    if (n < N) {
      long long next = words_of_length(d, n + 1);
      Eigen::MatrixXcd grown(next, next);
      // Kronecker step kron(u, power): the first letter is the most
      // significant digit of a word's index, so it picks the outer factor.
      for (int r = 0; r < d; ++r) {
        for (int c = 0; c < d; ++c) {
          grown.block(r * power.rows(), c * power.cols(), power.rows(),
                      power.cols()) = u(r, c) * power;
        }
      }
      power = std::move(grown);
    }
  }
  return report;
}

GradedIdeal commutatorize(const GradedIdeal& ideal) {
  std::vector<FreePoly> generators = ideal.generators();
  int d = ideal.d();
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      FreePoly zi = FreePoly::variable(d, i);
      FreePoly zj = FreePoly::variable(d, j);
      generators.push_back(zi * zj - zj * zi);
    }
  }
  return GradedIdeal(d, std::move(generators));
}

}  // namespace ncball

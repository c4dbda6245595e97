#include "ncball/mobius.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace ncball {

namespace {

Eigen::MatrixXcd signature_form(int d) {
  Eigen::MatrixXcd j = -Eigen::MatrixXcd::Identity(d + 1, d + 1);
  j(0, 0) = cd(1.0, 0.0);
  return j;
}

}  // namespace

BallAutomorphism::BallAutomorphism(int d_in, Eigen::MatrixXcd block_in)
    : d_(d_in), block_(std::move(block_in)) {
  MatrixTuple::zero(d_, 1);  // validates the variable count
  if (block_.rows() != d_ + 1 || block_.cols() != d_ + 1) {
    throw std::invalid_argument("ncball: automorphism block must be (d+1) x (d+1)");
  }
  Eigen::MatrixXcd j = signature_form(d_);
  double scale_sq = 1.0 + block_.squaredNorm();
  double residual = (block_.adjoint() * j * block_ - j).norm();
  if (residual > 1e-10 * scale_sq) {
    throw std::invalid_argument(
        "ncball: block does not preserve the signature form (residual " +
        std::to_string(residual) + ")");
  }
  cd det = block_.determinant();
  block_ /= std::pow(det, 1.0 / (d_ + 1));
}

BallAutomorphism BallAutomorphism::identity(int d) {
  return BallAutomorphism(d, Eigen::MatrixXcd::Identity(d + 1, d + 1));
}

BallAutomorphism BallAutomorphism::from_point(const Eigen::VectorXcd& b) {
  int d = static_cast<int>(b.size());
  double beta = b.squaredNorm();
  if (beta >= 1.0) {
    throw std::domain_error("ncball: base point lies outside the open ball");
  }
  double s = 1.0 / std::sqrt(1.0 - beta);
  double kappa = beta > 0.0 ? (s - 1.0) / beta : 0.5;
  Eigen::MatrixXcd block(d + 1, d + 1);
  block(0, 0) = cd(-s, 0.0);
  block.row(0).tail(d) = s * b.transpose();
  block.col(0).tail(d) = -s * b.conjugate();
  block.bottomRightCorner(d, d) =
      Eigen::MatrixXcd::Identity(d, d) + kappa * (b.conjugate() * b.transpose());
  return BallAutomorphism(d, std::move(block));
}

BallAutomorphism BallAutomorphism::from_unitary(const Eigen::MatrixXcd& u) {
  int d = static_cast<int>(u.rows());
  if (u.cols() != d) {
    throw std::invalid_argument("ncball: coordinate change must be square");
  }
  if ((u.adjoint() * u - Eigen::MatrixXcd::Identity(d, d)).norm() > 1e-10) {
    throw std::invalid_argument("ncball: coordinate change is not unitary");
  }
  Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(d + 1, d + 1);
  block(0, 0) = cd(1.0, 0.0);
  block.bottomRightCorner(d, d) = u.adjoint();
  return BallAutomorphism(d, std::move(block));
}

double BallAutomorphism::signature_residual() const {
  Eigen::MatrixXcd j = signature_form(d_);
  return (block_.adjoint() * j * block_ - j).norm();
}

MatrixTuple BallAutomorphism::apply(const MatrixTuple& z) const {
  if (z.d != d_) {
    throw std::invalid_argument("ncball: tuple variable count does not match map");
  }
  const int n = z.n;
  const int dn = d_ * n;
  Eigen::MatrixXcd row(n, dn);
  Eigen::MatrixXcd numerator(n, dn);
  for (int j = 0; j < d_; ++j) {
    row.middleCols(j * n, n) = z.matrices[j];
    numerator.middleCols(j * n, n) =
        a() * z.matrices[j] +
        v()(j) * Eigen::MatrixXcd::Identity(n, n);
  }
  Eigen::MatrixXcd denominator(dn, dn);
  for (int i = 0; i < d_; ++i) {
    denominator.middleRows(i * n, n) = w()(i) * row;
    for (int j = 0; j < d_; ++j) {
      denominator.block(i * n, j * n, n, n) +=
          x()(i, j) * Eigen::MatrixXcd::Identity(n, n);
    }
  }
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(denominator);
  lu.setThreshold(1e-12);
  if (!lu.isInvertible()) {
    throw std::domain_error(
        "ncball: resolvent block is singular; tuple outside the domain of the map");
  }
  Eigen::MatrixXcd image = numerator * lu.inverse();
  std::vector<Eigen::MatrixXcd> parts(d_);
  for (int j = 0; j < d_; ++j) parts[j] = image.middleCols(j * n, n);
  return MatrixTuple(d_, std::move(parts));
}

BallAutomorphism compose(const BallAutomorphism& f, const BallAutomorphism& g) {
  if (f.d() != g.d()) {
    throw std::invalid_argument("ncball: composing maps of different variable counts");
  }
  return BallAutomorphism(f.d(), f.block() * g.block());
}

BallAutomorphism inverse(const BallAutomorphism& f) {
  // For a signature-preserving block, J T^* J is the exact inverse.
  Eigen::MatrixXcd j = signature_form(f.d());
  return BallAutomorphism(f.d(), j * f.block().adjoint() * j);
}

bool cartan_check(const BallAutomorphism& f, int level, int trials,
                  unsigned seed) {
  const int d = f.d();
  MatrixTuple origin = MatrixTuple::zero(d, 1);
  MatrixTuple at_origin = f.apply(origin);
  for (int j = 0; j < d; ++j) {
    if (std::abs(at_origin.matrices[j](0, 0)) > 1e-10) return false;
  }

  const double h = 1e-5;
  Eigen::MatrixXcd jacobian(d, d);
  for (int j = 0; j < d; ++j) {
    MatrixTuple plus = MatrixTuple::zero(d, 1);
    MatrixTuple minus = MatrixTuple::zero(d, 1);
    plus.matrices[j](0, 0) = cd(h, 0.0);
    minus.matrices[j](0, 0) = cd(-h, 0.0);
    MatrixTuple fp = f.apply(plus);
    MatrixTuple fm = f.apply(minus);
    for (int i = 0; i < d; ++i) {
      jacobian(i, j) =
          (fp.matrices[i](0, 0) - fm.matrices[i](0, 0)) / (2.0 * h);
    }
  }
  if ((jacobian - Eigen::MatrixXcd::Identity(d, d)).norm() > 1e-7) {
    return false;
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < trials; ++trial) {
    std::vector<Eigen::MatrixXcd> parts(d);
    for (int j = 0; j < d; ++j) {
      parts[j] = Eigen::MatrixXcd(level, level);
      for (int r = 0; r < level; ++r) {
        for (int c = 0; c < level; ++c) {
          parts[j](r, c) = cd(gauss(rng), gauss(rng));
        }
      }
    }
    MatrixTuple sample(d, std::move(parts));
    double r = row_norm(sample);
    if (r > 0.0) sample = scale(sample, cd(0.5 / r, 0.0));
    MatrixTuple image = f.apply(sample);
    double drift = 0.0;
    double size = 0.0;
    for (int j = 0; j < d; ++j) {
      drift += (image.matrices[j] - sample.matrices[j]).squaredNorm();
      size += sample.matrices[j].squaredNorm();
    }
    if (std::sqrt(drift) > 1e-9 * (1.0 + std::sqrt(size))) return false;
  }
  return true;
}

Eigen::MatrixXcd circle_average(
    const std::function<Eigen::MatrixXcd(const MatrixTuple&)>& f,
    const MatrixTuple& z, int n, int M) {
  if (M < 1) throw std::invalid_argument("ncball: averaging order must be positive");
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(z.n, z.n);
  for (int j = 0; j < M; ++j) {
    double angle = 2.0 * M_PI * j / M;
    cd rotation = std::polar(1.0, angle);
    cd weight = std::polar(1.0, -angle * n);
    sum += weight * f(scale(z, rotation));
  }
  return sum / static_cast<double>(M);
}

Eigen::MatrixXcd circle_average(const FreePoly& p, const MatrixTuple& z,
                                int n, int M) {
  return circle_average(
      [&p](const MatrixTuple& point) { return eval_poly(p, point); }, z, n, M);
}

}  // namespace ncball

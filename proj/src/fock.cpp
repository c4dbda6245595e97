#include "ncball/fock.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <stdexcept>
#include <string>

namespace ncball {

TruncatedFock::TruncatedFock(int d_in, int N_in) : d(d_in), N(N_in) {
  if (N < 0) throw std::invalid_argument("ncball: negative truncation degree");
  dim = words_up_to_length(d, N);
}

long long TruncatedFock::degree_offset(int k) const {
  if (k < 0 || k > N + 1) {
    throw std::invalid_argument("ncball: degree outside truncated space");
  }
  long long offset = 0;
  long long level = 1;
  for (int j = 0; j < k; ++j) {
    offset += level;
    level *= d;
  }
  return offset;
}

long long TruncatedFock::index_of(const Word& w) const {
  if (w.d != d || w.length() > N) {
    throw std::invalid_argument("ncball: word not in truncated space");
  }
  return degree_offset(w.length()) + w.lex_index();
}

Word TruncatedFock::word_at(long long index) const {
  if (index < 0 || index >= dim) {
    throw std::invalid_argument("ncball: basis index out of range");
  }
  int k = 0;
  long long level = 1;
  while (index >= level) {
    index -= level;
    level *= d;
    ++k;
  }
  return Word::from_lex_index(d, k, index);
}

MatrixTuple CreationTuple::dense() const {
  std::vector<Eigen::MatrixXcd> blocks;
  blocks.reserve(ops.size());
  for (const auto& op : ops) blocks.push_back(Eigen::MatrixXcd(op));
  return MatrixTuple(space.d, std::move(blocks));
}

CreationTuple creation_operators(int d, int N) {
  TruncatedFock space(d, N);
  std::vector<Eigen::SparseMatrix<cd>> ops;
  ops.reserve(d);
  for (int i = 0; i < d; ++i) {
    Eigen::SparseMatrix<cd> op(space.dim, space.dim);
    std::vector<Eigen::Triplet<cd>> entries;
    entries.reserve(space.dim);
    for (int k = 0; k < N; ++k) {
      long long level = words_of_length(d, k);
      long long src = space.degree_offset(k);
      // Prepending the letter i maps lexicographic slot j at degree k to
      // slot i*d^k + j at degree k+1.
      long long dst = space.degree_offset(k + 1) + i * level;
      for (long long j = 0; j < level; ++j) {
        entries.emplace_back(dst + j, src + j, cd(1.0, 0.0));
      }
    }
    op.setFromTriplets(entries.begin(), entries.end());
    ops.push_back(std::move(op));
  }
  return CreationTuple{space, std::move(ops)};
}

Eigen::MatrixXcd szego_apply(const MatrixTuple& z, const MatrixTuple& w,
                             const Eigen::MatrixXcd& p) {
  if (z.d != w.d) {
    throw std::invalid_argument("ncball: kernel arguments over different alphabets");
  }
  if (p.rows() != z.n || p.cols() != w.n) {
    throw std::invalid_argument("ncball: kernel coefficient block has wrong shape");
  }
  double rz = row_norm(z);
  double rw = row_norm(w);
  if (rz >= 1.0 || rw >= 1.0) {
    throw std::domain_error("ncball: kernel evaluated outside the open ball (row norms " +
                            std::to_string(rz) + ", " + std::to_string(rw) + ")");
  }
  const long long size = static_cast<long long>(z.n) * w.n;
  Eigen::MatrixXcd system = Eigen::MatrixXcd::Identity(size, size);
  for (int j = 0; j < z.d; ++j) {
    system -= Eigen::kroneckerProduct(w.matrices[j].conjugate(), z.matrices[j]);
  }
  Eigen::VectorXcd rhs = Eigen::Map<const Eigen::VectorXcd>(p.data(), size);
  Eigen::VectorXcd solution = Eigen::PartialPivLU<Eigen::MatrixXcd>(system).solve(rhs);
  return Eigen::Map<const Eigen::MatrixXcd>(solution.data(), z.n, w.n);
}

namespace {

void collect_kernel_terms(const MatrixTuple& w, const Eigen::VectorXcd& v,
                          const Eigen::VectorXcd& y, int remaining,
                          const Word& word, const Eigen::MatrixXcd& product,
                          FreePoly& out) {
  out.add_term(word, std::conj((y.adjoint() * product * v).value()));
  if (remaining == 0) return;
  for (int i = 0; i < w.d; ++i) {
    collect_kernel_terms(w, v, y, remaining - 1, word.concat(Word({i}, w.d)),
                         product * w.matrices[i], out);
  }
}

}  // namespace

FreePoly kernel_coefficients(const MatrixTuple& w, const Eigen::VectorXcd& v,
                             const Eigen::VectorXcd& y, int N) {
  if (v.size() != w.n || y.size() != w.n) {
    throw std::invalid_argument("ncball: kernel direction vectors must have length n");
  }
  words_up_to_length(w.d, N);
  FreePoly out(w.d);
  collect_kernel_terms(w, v, y, N, Word::empty(w.d),
                       Eigen::MatrixXcd::Identity(w.n, w.n), out);
  return out;
}

cd fock_inner(const FreePoly& f, const FreePoly& g) {
  if (f.d() != g.d()) {
    throw std::invalid_argument("ncball: pairing polynomials over different alphabets");
  }
  cd sum(0.0, 0.0);
  for (const auto& [word, coeff] : f.terms()) {
    sum += coeff * std::conj(g.coefficient(word));
  }
  return sum;
}

double multiplier_adjoint_check(const FreePoly& p, const MatrixTuple& w,
                                const Eigen::VectorXcd& v,
                                const Eigen::VectorXcd& y, int N,
                                double tol) {
  if (p.d() != w.d) {
    throw std::invalid_argument("ncball: polynomial alphabet does not match point");
  }
  auto deg = p.degree();
  if (!deg) return 0.0;
  if (*deg > N) {
    throw std::invalid_argument("ncball: truncation degree below deg p");
  }
  double r = row_norm(w);
  if (r >= 1.0) {
    throw std::domain_error("ncball: kernel point outside the open ball");
  }
  double coeff_mass = 0.0;
  for (const auto& [word, c] : p.terms()) coeff_mass += std::abs(c);
  double tail = v.norm() * y.norm() * coeff_mass *
                std::pow(r, N + 1 - *deg) / (1.0 - r);
  if (tail > tol) {
    throw std::invalid_argument(
        "ncball: truncation degree " + std::to_string(N) +
        " leaves kernel tail " + std::to_string(tail) +
        " above tolerance; raise N");
  }

  FreePoly kernel = kernel_coefficients(w, v, y, N);
  const int out_degree = N - *deg;

  // Coefficients of M_p^* applied to the kernel: the adjoint of left
  // multiplication strips matching prefixes.
  FreePoly lhs(p.d());
  for (const auto& [word, c] : kernel.terms()) {
    for (const auto& [prefix, a] : p.terms()) {
      int suffix_len = word.length() - prefix.length();
      if (suffix_len < 0 || suffix_len > out_degree) continue;
      if (!std::equal(prefix.letters.begin(), prefix.letters.end(),
                      word.letters.begin())) {
        continue;
      }
      lhs.add_term(Word(std::vector<int>(word.letters.begin() + prefix.length(),
                                         word.letters.end()),
                        word.d),
                   std::conj(a) * c);
    }
  }

  Eigen::VectorXcd shifted = eval_poly(p, w).adjoint() * y;
  FreePoly rhs = kernel_coefficients(w, v, shifted, out_degree);
  return (lhs - rhs).l2_norm();
}

}  // namespace ncball

#include "ncball/freealg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <stdexcept>
#include <string>

namespace ncball {

namespace {

constexpr long long kBasisCap = 20000;

void check_d(int d) {
  if (d < 1 || d > kMaxVariables) {
    throw std::invalid_argument("ncball: number of variables d = " +
                                std::to_string(d) + " outside [1, " +
                                std::to_string(kMaxVariables) + "]");
  }
}

}  // namespace

long long words_of_length(int d, int n) {
  check_d(d);
  if (n < 0) throw std::invalid_argument("ncball: negative word length");
  long long count = 1;
  for (int k = 0; k < n; ++k) {
    count *= d;
    if (count > kBasisCap) {
      throw std::length_error("ncball: basis of " + std::to_string(d) +
                              "^" + std::to_string(n) +
                              " words exceeds cap of 20000");
    }
  }
  return count;
}

long long words_up_to_length(int d, int n) {
  check_d(d);
  long long total = 0;
  long long level = 1;
  for (int k = 0; k <= n; ++k) {
    total += level;
    if (total > kBasisCap) {
      throw std::length_error(
          "ncball: truncated basis through degree " + std::to_string(n) +
          " exceeds cap of 20000");
    }
    if (k < n) level *= d;
  }
  return total;
}

Word::Word(std::vector<int> letters_in, int d_in)
    : letters(std::move(letters_in)), d(d_in) {
  check_d(d);
  for (int letter : letters) {
    if (letter < 0 || letter >= d) {
      throw std::invalid_argument("ncball: word letter " +
                                  std::to_string(letter) +
                                  " outside alphabet of size " +
                                  std::to_string(d));
    }
  }
}

long long Word::lex_index() const {
  long long index = 0;
  for (int letter : letters) index = index * d + letter;
  return index;
}

Word Word::from_lex_index(int d, int length, long long index) {
  check_d(d);
  std::vector<int> letters(length);
  for (int pos = length - 1; pos >= 0; --pos) {
    letters[pos] = static_cast<int>(index % d);
    index /= d;
  }
  if (index != 0) {
    throw std::invalid_argument("ncball: lexicographic index out of range");
  }
  return Word(std::move(letters), d);
}

Word Word::concat(const Word& other) const {
  if (d != other.d) {
    throw std::invalid_argument("ncball: concatenating words over different alphabets");
  }
  std::vector<int> joined = letters;
  joined.insert(joined.end(), other.letters.begin(), other.letters.end());
  return Word(std::move(joined), d);
}

bool Word::operator<(const Word& other) const {
  if (letters.size() != other.letters.size()) {
    return letters.size() < other.letters.size();
  }
  return letters < other.letters;
}

FreePoly::FreePoly(int d_in) : d_(d_in) { check_d(d_); }

FreePoly FreePoly::constant(int d, cd value) {
  FreePoly p(d);
  p.add_term(Word::empty(d), value);
  return p;
}

FreePoly FreePoly::variable(int d, int i) {
  FreePoly p(d);
  p.add_term(Word({i}, d), cd(1.0, 0.0));
  return p;
}

FreePoly FreePoly::monomial(const Word& w, cd coeff) {
  FreePoly p(w.d);
  p.add_term(w, coeff);
  return p;
}

cd FreePoly::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? cd(0.0, 0.0) : it->second;
}

void FreePoly::add_term(const Word& w, cd coeff) {
  if (w.d != d_) {
    throw std::invalid_argument("ncball: word alphabet does not match polynomial");
  }
  auto it = terms_.find(w);
  if (it == terms_.end()) {
    if (coeff != cd(0.0, 0.0)) terms_.emplace(w, coeff);
    return;
  }
  it->second += coeff;
  if (it->second == cd(0.0, 0.0)) terms_.erase(it);
}

std::optional<int> FreePoly::degree() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.rbegin()->first.length();
}

bool FreePoly::is_homogeneous() const {
  if (terms_.empty()) return true;
  int len = terms_.begin()->first.length();
  return terms_.rbegin()->first.length() == len;
}

FreePoly FreePoly::homogeneous_component(int n) const {
  FreePoly out(d_);
  for (const auto& [w, c] : terms_) {
    if (w.length() == n) out.add_term(w, c);
  }
  return out;
}

double FreePoly::l2_norm() const {
  double sum = 0.0;
  for (const auto& [w, c] : terms_) sum += std::norm(c);
  return std::sqrt(sum);
}

Eigen::VectorXcd FreePoly::coefficient_vector(int n) const {
  long long size = words_of_length(d_, n);
  Eigen::VectorXcd coeffs = Eigen::VectorXcd::Zero(size);
  for (const auto& [w, c] : terms_) {
    if (w.length() == n) coeffs(w.lex_index()) = c;
  }
  return coeffs;
}

FreePoly FreePoly::from_coefficient_vector(int d, int n,
                                           const Eigen::VectorXcd& coeffs) {
  if (coeffs.size() != words_of_length(d, n)) {
    throw std::invalid_argument(
        "ncball: coefficient vector length does not equal d^n");
  }
  FreePoly p(d);
  for (long long i = 0; i < coeffs.size(); ++i) {
    if (coeffs(i) != cd(0.0, 0.0)) {
      p.add_term(Word::from_lex_index(d, n, i), coeffs(i));
    }
  }
  return p;
}

FreePoly& FreePoly::operator+=(const FreePoly& other) {
  if (d_ != other.d_) {
    throw std::invalid_argument("ncball: adding polynomials over different alphabets");
  }
  for (const auto& [w, c] : other.terms_) add_term(w, c);
  return *this;
}

FreePoly& FreePoly::operator-=(const FreePoly& other) {
  if (d_ != other.d_) {
    throw std::invalid_argument("ncball: subtracting polynomials over different alphabets");
  }
  for (const auto& [w, c] : other.terms_) add_term(w, -c);
  return *this;
}

FreePoly operator+(FreePoly lhs, const FreePoly& rhs) {
  lhs += rhs;
  return lhs;
}

FreePoly operator-(FreePoly lhs, const FreePoly& rhs) {
  lhs -= rhs;
  return lhs;
}

FreePoly operator*(const FreePoly& lhs, const FreePoly& rhs) {
  if (lhs.d_ != rhs.d_) {
    throw std::invalid_argument("ncball: multiplying polynomials over different alphabets");
  }
  FreePoly out(lhs.d_);
  for (const auto& [wl, cl] : lhs.terms_) {
    for (const auto& [wr, cr] : rhs.terms_) {
      out.add_term(wl.concat(wr), cl * cr);
    }
  }
  return out;
}

FreePoly operator*(cd scalar, const FreePoly& p) {
  FreePoly out(p.d_);
  if (scalar == cd(0.0, 0.0)) return out;
  for (const auto& [w, c] : p.terms_) out.add_term(w, scalar * c);
  return out;
}

MatrixTuple::MatrixTuple(int d_in, std::vector<Eigen::MatrixXcd> matrices_in)
    : d(d_in), matrices(std::move(matrices_in)) {
  check_d(d);
  if (static_cast<int>(matrices.size()) != d) {
    throw std::invalid_argument("ncball: tuple has " +
                                std::to_string(matrices.size()) +
                                " matrices, expected " + std::to_string(d));
  }
  n = static_cast<int>(matrices.front().rows());
  for (const auto& m : matrices) {
    if (m.rows() != n || m.cols() != n) {
      throw std::invalid_argument("ncball: tuple entries must be square of equal size");
    }
  }
}

MatrixTuple MatrixTuple::zero(int d, int n) {
  check_d(d);
  return MatrixTuple(d, std::vector<Eigen::MatrixXcd>(
                            d, Eigen::MatrixXcd::Zero(n, n)));
}

double row_norm(const MatrixTuple& x) {
  Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(x.n, x.n);
  for (const auto& m : x.matrices) gram += m * m.adjoint();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram,
                                                         Eigen::EigenvaluesOnly);
  double top = solver.eigenvalues().maxCoeff();
  return std::sqrt(std::max(top, 0.0));
}

MatrixTuple direct_sum(const MatrixTuple& x, const MatrixTuple& y) {
  if (x.d != y.d) {
    throw std::invalid_argument("ncball: direct sum of tuples over different alphabets");
  }
  std::vector<Eigen::MatrixXcd> blocks(x.d);
  for (int j = 0; j < x.d; ++j) {
    blocks[j] = Eigen::MatrixXcd::Zero(x.n + y.n, x.n + y.n);
    blocks[j].topLeftCorner(x.n, x.n) = x.matrices[j];
    blocks[j].bottomRightCorner(y.n, y.n) = y.matrices[j];
  }
  return MatrixTuple(x.d, std::move(blocks));
}

MatrixTuple conjugate(const MatrixTuple& x, const Eigen::MatrixXcd& s) {
  if (s.rows() != x.n || s.cols() != x.n) {
    throw std::invalid_argument("ncball: similarity matrix size does not match tuple");
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(s, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (x.n == 0 || sv(sv.size() - 1) <= 1e-12 * sv(0)) {
    throw std::domain_error("ncball: similarity matrix is numerically singular");
  }
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(s);
  std::vector<Eigen::MatrixXcd> out(x.d);
  for (int j = 0; j < x.d; ++j) out[j] = lu.solve(x.matrices[j] * s);
  return MatrixTuple(x.d, std::move(out));
}

MatrixTuple scale(const MatrixTuple& x, cd t) {
  std::vector<Eigen::MatrixXcd> out(x.d);
  for (int j = 0; j < x.d; ++j) out[j] = t * x.matrices[j];
  return MatrixTuple(x.d, std::move(out));
}

namespace {

const Eigen::MatrixXcd& cached_word_product(
    const Word& w, const MatrixTuple& x,
    std::map<Word, Eigen::MatrixXcd>& cache) {
  auto it = cache.find(w);
  if (it != cache.end()) return it->second;
  Eigen::MatrixXcd value;
  if (w.length() == 0) {
    value = Eigen::MatrixXcd::Identity(x.n, x.n);
  } else {
    Word prefix(std::vector<int>(w.letters.begin(), w.letters.end() - 1), w.d);
    value = cached_word_product(prefix, x, cache) * x.matrices[w.letters.back()];
  }
  return cache.emplace(w, std::move(value)).first->second;
}

}  // namespace

Eigen::MatrixXcd word_product(const Word& w, const MatrixTuple& x) {
  if (w.d != x.d) {
    throw std::invalid_argument("ncball: word alphabet does not match tuple");
  }
  std::map<Word, Eigen::MatrixXcd> cache;
  return cached_word_product(w, x, cache);
}

Eigen::MatrixXcd eval_poly(const FreePoly& p, const MatrixTuple& x) {
  if (p.d() != x.d) {
    throw std::invalid_argument("ncball: polynomial alphabet does not match tuple");
  }
  Eigen::MatrixXcd value = Eigen::MatrixXcd::Zero(x.n, x.n);
  std::map<Word, Eigen::MatrixXcd> cache;
  for (const auto& [w, c] : p.terms()) {
    value += c * cached_word_product(w, x, cache);
  }
  return value;
}

OperatorPoly::OperatorPoly(int d_in, int coeff_dim_in)
    : d(d_in), coeff_dim(coeff_dim_in) {
  check_d(d);
  if (coeff_dim < 1) {
    throw std::invalid_argument("ncball: operator coefficients need positive size");
  }
}

void OperatorPoly::add_term(const Word& w, const Eigen::MatrixXcd& coeff) {
  if (w.d != d) {
    throw std::invalid_argument("ncball: word alphabet does not match polynomial");
  }
  if (coeff.rows() != coeff_dim || coeff.cols() != coeff_dim) {
    throw std::invalid_argument("ncball: operator coefficient has wrong size");
  }
  auto it = terms.find(w);
  if (it == terms.end()) {
    if (!coeff.isZero(0.0)) terms.emplace(w, coeff);
    return;
  }
  it->second += coeff;
  if (it->second.isZero(0.0)) terms.erase(it);
}

std::optional<int> OperatorPoly::degree() const {
  if (terms.empty()) return std::nullopt;
  return terms.rbegin()->first.length();
}

OperatorPoly OperatorPoly::from_scalar(const FreePoly& p) {
  OperatorPoly out(p.d(), 1);
  for (const auto& [w, c] : p.terms()) {
    out.add_term(w, c * Eigen::MatrixXcd::Identity(1, 1));
  }
  return out;
}

Eigen::MatrixXcd eval_poly(const OperatorPoly& p, const MatrixTuple& x) {
  if (p.d != x.d) {
    throw std::invalid_argument("ncball: polynomial alphabet does not match tuple");
  }
  const int size = x.n * p.coeff_dim;
  Eigen::MatrixXcd value = Eigen::MatrixXcd::Zero(size, size);
  std::map<Word, Eigen::MatrixXcd> cache;
  for (const auto& [w, coeff] : p.terms) {
    const Eigen::MatrixXcd& prod = cached_word_product(w, x, cache);
    for (int r = 0; r < x.n; ++r) {
      for (int c = 0; c < x.n; ++c) {
        if (prod(r, c) != cd(0.0, 0.0)) {
          value.block(r * p.coeff_dim, c * p.coeff_dim, p.coeff_dim,
                      p.coeff_dim) += prod(r, c) * coeff;
        }
      }
    }
  }
  return value;
}

}  // namespace ncball

#pragma once

// Free noncommutative polynomials in d variables and their evaluation on
// d-tuples of square complex matrices.  Monomials are words over the
// alphabet {0, ..., d-1}; all monomial bases elsewhere in the library use
// the graded lexicographic order implemented by Word::operator<.

#include <Eigen/Dense>

#include <complex>
#include <map>
#include <optional>
#include <vector>

namespace ncball {

using cd = std::complex<double>;

inline constexpr int kMaxVariables = 8;

// Number of words of length exactly n, i.e. d^n.  Throws std::length_error
// once the count would exceed the library-wide basis cap of 20000.
long long words_of_length(int d, int n);

// Number of words of length at most n, with the same cap.
long long words_up_to_length(int d, int n);

// A word in the free monoid on d letters.  The empty word is the unit.
struct Word {
  std::vector<int> letters;
  int d = 1;

  Word() = default;
  Word(std::vector<int> letters_in, int d_in);

  static Word empty(int d_in) { return Word({}, d_in); }

  // Index of this word among all words of the same length, reading the
  // letters as a base-d numeral.  Matches the column ordering of the
  // degree-n coefficient vectors used by the ideal and Fock modules.
  long long lex_index() const;
  static Word from_lex_index(int d, int length, long long index);

  int length() const { return static_cast<int>(letters.size()); }
  Word concat(const Word& other) const;

  bool operator==(const Word& other) const { return letters == other.letters; }
  // Graded lexicographic: shorter words first, ties broken letterwise.
  bool operator<(const Word& other) const;
};

// Finitely supported complex linear combination of words.  Coefficients
// that are exactly zero are never stored, so the zero polynomial has an
// empty term map and no degree.
class FreePoly {
 public:
  explicit FreePoly(int d_in);

  static FreePoly constant(int d, cd value);
  static FreePoly variable(int d, int i);
  static FreePoly monomial(const Word& w, cd coeff);

  int d() const { return d_; }
  const std::map<Word, cd>& terms() const { return terms_; }

  cd coefficient(const Word& w) const;
  void add_term(const Word& w, cd coeff);

  // Degree of the highest word present; nullopt for the zero polynomial.
  std::optional<int> degree() const;
  bool is_homogeneous() const;
  FreePoly homogeneous_component(int n) const;

  double l2_norm() const;

  // Coefficients of the degree-n component as a vector of size d^n in
  // lexicographic order.
  Eigen::VectorXcd coefficient_vector(int n) const;
  static FreePoly from_coefficient_vector(int d, int n,
                                          const Eigen::VectorXcd& coeffs);

  FreePoly& operator+=(const FreePoly& other);
  FreePoly& operator-=(const FreePoly& other);
  friend FreePoly operator+(FreePoly lhs, const FreePoly& rhs);
  friend FreePoly operator-(FreePoly lhs, const FreePoly& rhs);
  friend FreePoly operator*(const FreePoly& lhs, const FreePoly& rhs);
  friend FreePoly operator*(cd scalar, const FreePoly& p);

 private:
  int d_;
  std::map<Word, cd> terms_;
};

// A point of the matrix universe: d matrices of equal size n x n.
struct MatrixTuple {
  int d = 1;
  int n = 0;
  std::vector<Eigen::MatrixXcd> matrices;

  MatrixTuple() = default;
  MatrixTuple(int d_in, std::vector<Eigen::MatrixXcd> matrices_in);

  static MatrixTuple zero(int d, int n);
};

// Norm of the row operator [X_1 ... X_d], computed as the square root of
// the top eigenvalue of sum_j X_j X_j^*.  The open matrix ball is the set
// of tuples with row_norm < 1.
double row_norm(const MatrixTuple& x);

MatrixTuple direct_sum(const MatrixTuple& x, const MatrixTuple& y);

// Entrywise similarity S^{-1} X_j S.  Throws std::domain_error when the
// smallest singular value of S falls below 1e-12 times the largest.
MatrixTuple conjugate(const MatrixTuple& x, const Eigen::MatrixXcd& s);

MatrixTuple scale(const MatrixTuple& x, cd t);

// Product X_{w_0} X_{w_1} ... X_{w_{k-1}}; the empty word gives I_n.
Eigen::MatrixXcd word_product(const Word& w, const MatrixTuple& x);

// Evaluation p(X).  Word products are built once per distinct prefix and
// reused across terms.
Eigen::MatrixXcd eval_poly(const FreePoly& p, const MatrixTuple& x);

// Polynomial with coefficients in M_e, evaluated as
// sum_w kron(X^w, A_w) acting on C^n (x) C^e.
struct OperatorPoly {
  int d = 1;
  int coeff_dim = 1;
  std::map<Word, Eigen::MatrixXcd> terms;

  OperatorPoly(int d_in, int coeff_dim_in);
  void add_term(const Word& w, const Eigen::MatrixXcd& coeff);
  std::optional<int> degree() const;

  static OperatorPoly from_scalar(const FreePoly& p);
};

Eigen::MatrixXcd eval_poly(const OperatorPoly& p, const MatrixTuple& x);

}  // namespace ncball

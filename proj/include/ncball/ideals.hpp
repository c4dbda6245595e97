#pragma once

// Two-sided graded ideals of free polynomials with homogeneous generators,
// handled degree by degree as subspaces of the word spaces C^{d^n}.  On top
// of the graded bases sit the compressed shift tuple, ideal membership with
// constructive witnesses for non-members, quotient norm estimates, and the
// subproduct-system fibers attached to the ideal.

#include <Eigen/Dense>

#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "ncball/freealg.hpp"

namespace ncball {

class GradedIdeal {
 public:
  // Generators must be homogeneous; zero generators are dropped.  An empty
  // list gives the zero ideal.
  GradedIdeal(int d_in, std::vector<FreePoly> generators_in);

  int d() const { return d_; }
  const std::vector<FreePoly>& generators() const { return generators_; }
  int max_generator_degree() const;

  // Orthonormal basis of the degree-n component, as a d^n x rank matrix.
  // Built by closing the previous degree under left and right letter
  // multiplication and adjoining degree-n generators; bases are cached and
  // the cache is safe to share across threads.
  Eigen::MatrixXcd graded_basis(int n) const;

 private:
  struct Cache {
    std::mutex mutex;
    std::vector<std::optional<Eigen::MatrixXcd>> bases;
  };

  int d_;
  std::vector<FreePoly> generators_;
  std::shared_ptr<Cache> cache_;
};

// Degree-n fiber of the subproduct system attached to the ideal: an
// orthonormal basis of the orthogonal complement of the degree-n component
// inside C^{d^n}.
struct SubproductFiber {
  int degree = 0;
  Eigen::MatrixXcd basis;
};

SubproductFiber fiber(const GradedIdeal& ideal, int n);

// Compression of the truncated creation tuple to the joint complement of
// the ideal through degree N, returned densely.  The block of coordinate i
// from fiber degree n to n+1 is Q_{n+1}^* (prepend i) Q_n.
MatrixTuple compressed_shift(const GradedIdeal& ideal, int N);

// Relative distance of a homogeneous p from the matching graded component.
double membership_residual(const GradedIdeal& ideal, const FreePoly& p);

// True when the residual is at most 1e-10.
bool membership(const GradedIdeal& ideal, const FreePoly& p);

struct NullstellensatzWitness {
  bool member = false;
  double residual = 0.0;

  // Member branch: coefficients of p in the orthonormal basis of the
  // degree-(deg p) component.
  Eigen::VectorXcd certificate;

  // Non-member branch: a point of the open ball annihilating every
  // generator while keeping ||p(X)|| bounded away from zero.
  MatrixTuple point;
  double point_row_norm = 0.0;
  std::vector<double> generator_residuals;
  double value_norm = 0.0;
  double value_lower_bound = 0.0;
};

// For homogeneous p: either certify membership in the ideal or produce the
// scaled compressed shift X = t S at truncation degree deg p, which kills
// all generators and satisfies ||p(X)|| >= t^(deg p) ||P p||.
NullstellensatzWitness nullstellensatz_witness(const GradedIdeal& ideal,
                                               const FreePoly& p,
                                               double t = 0.5);

// ||p(S^(N))|| on the compressed space through degree N.  Nondecreasing in
// N; for homogeneous p it equals the l2 norm of the projection of p onto
// the complement of the ideal at every N >= deg p, and it is computed
// blockwise without forming the shift densely.
double quotient_norm_estimate(const GradedIdeal& ideal, const FreePoly& p,
                              int N);
double quotient_norm_estimate(const GradedIdeal& ideal, const OperatorPoly& p,
                              int N);

// l2 norm of the projection of a homogeneous p onto the complement of the
// degree-(deg p) component; this is the multiplier norm of the image of p
// in the quotient.
double homogeneous_multiplier_norm(const GradedIdeal& ideal,
                                   const FreePoly& p);

// Orthonormal basis (d x k) of the span of the coordinate directions
// actually used by the given points: the orthogonal complement of the
// functionals f with sum_j f_j X_j = 0 at every point.  No points means
// the zero subspace.
Eigen::MatrixXcd matrix_span_subspace(int d,
                                      const std::vector<MatrixTuple>& points);

struct EquivalenceReport {
  bool equivalent = false;
  int checked_degree = 0;
  double worst_angle = 0.0;
  int first_mismatch_degree = -1;
};

// Tests whether the coordinate change U (unitary, d x d) carries the
// degree-n component of the first ideal onto that of the second for every
// n <= N, acting on word coordinates as the n-fold Kronecker power.
// Subspaces are compared through principal angles with tolerance 1e-8.
EquivalenceReport verify_unitary_equivalence(const Eigen::MatrixXcd& u,
                                             const GradedIdeal& first,
                                             const GradedIdeal& second, int N);

// Ideal enlarged by all commutators z_i z_j - z_j z_i.  Membership and
// witnesses for the result realize the commutative Nullstellensatz inside
// the free machinery.
GradedIdeal commutatorize(const GradedIdeal& ideal);

}  // namespace ncball

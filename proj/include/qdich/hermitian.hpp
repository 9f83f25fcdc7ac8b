#ifndef QDICH_HERMITIAN_HPP
#define QDICH_HERMITIAN_HPP

#include <utility>
#include <vector>

#include "qdich/types.hpp"

namespace qdich {

// Dense Hermitian operator with spectral data cached at construction.
// Values are immutable after construction and safe to share across threads.
class HermitianOperator {
 public:
  // Validates Hermiticity (1e-12 relative Frobenius), symmetrizes residual noise,
  // and eigendecomposes. Eigenvalues are stored descending.
  explicit HermitianOperator(Matrix entries);

  // Trusted constructor for operators assembled from known spectra
  // (V * diag(evals) * V^dagger); evals need not be sorted.
  static HermitianOperator from_spectrum(const RealVector& evals, const Matrix& eigvecs);

  static HermitianOperator identity(int dim);
  static HermitianOperator zero(int dim);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& entries() const { return entries_; }
  const RealVector& eigenvalues() const { return evals_; }   // descending
  const Matrix& eigenvectors() const { return evecs_; }      // columns match eigenvalues

  double trace() const { return entries_.trace().real(); }
  double max_abs_eigenvalue() const;
  double min_eigenvalue() const { return evals_(evals_.size() - 1); }

  // count of eigenvalues above rank_tol * |lambda|_max
  int rank(double rank_tol = kRankTol) const;

 private:
  HermitianOperator() = default;
  Matrix entries_;
  RealVector evals_;
  Matrix evecs_;
};

// Positive semidefinite, unit-trace operator. Eigenvalues within
// -rank_tolerance*lambda_max of zero are clamped to zero at construction and the
// spectrum is renormalized to unit trace (the pre-clamp trace must already be
// 1 within 1e-10).
class DensityOperator {
 public:
  explicit DensityOperator(const HermitianOperator& op, double rank_tolerance = kRankTol);
  explicit DensityOperator(Matrix entries, double rank_tolerance = kRankTol);

  int dim() const { return op_.dim(); }
  const HermitianOperator& op() const { return op_; }
  const Matrix& entries() const { return op_.entries(); }
  const RealVector& eigenvalues() const { return op_.eigenvalues(); }
  const Matrix& eigenvectors() const { return op_.eigenvectors(); }
  double rank_tolerance() const { return rank_tolerance_; }

  int rank() const { return op_.rank(rank_tolerance_); }
  bool is_pure() const { return rank() == 1; }

 private:
  HermitianOperator op_{HermitianOperator::zero(1)};
  double rank_tolerance_;
};

// Idempotent projector onto a subspace.
struct SupportProjector {
  HermitianOperator projector;
  int rank;

  // projector onto span of eigenvectors with |lambda| > rank_tol * |lambda|_max
  static SupportProjector of(const HermitianOperator& a, double rank_tol = kRankTol);
  static SupportProjector full(int dim);
};

// Pinching channel E_A: X -> sum_i P_i X P_i, one projector per eigenvalue
// cluster of the reference operator. v is the cluster count.
struct PinchingMap {
  std::vector<SupportProjector> projectors;
  int v;

  HermitianOperator apply(const HermitianOperator& x) const;
};

PinchingMap pinching_map(const HermitianOperator& a, double degeneracy_tolerance = kDegeneracyTol);

}  // namespace qdich

#endif

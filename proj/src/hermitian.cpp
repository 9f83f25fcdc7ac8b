#include "qdich/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qdich {

HermitianOperator::HermitianOperator(Matrix entries) {
  if (entries.rows() != entries.cols() || entries.rows() == 0) {
    throw InvalidInputError("HermitianOperator: matrix must be square and nonempty");
  }
  const double scale = entries.norm();
  const double asym = (entries - entries.adjoint()).norm();
  if (asym > kHermTol * std::max(scale, 1.0)) {
    throw InvalidInputError("HermitianOperator: input is not Hermitian within tolerance");
  }
  entries_ = 0.5 * (entries + entries.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(entries_);
  if (es.info() != Eigen::Success) {
    throw Error("HermitianOperator: eigendecomposition failed");
  }
  const int d = dim();
  evals_.resize(d);
  evecs_.resize(d, d);
  // Eigen sorts ascending; store descending
  for (int i = 0; i < d; ++i) {
    evals_(i) = es.eigenvalues()(d - 1 - i);
    evecs_.col(i) = es.eigenvectors().col(d - 1 - i);
  }
}

HermitianOperator HermitianOperator::from_spectrum(const RealVector& evals, const Matrix& eigvecs) {
  const int d = static_cast<int>(evals.size());
  std::vector<int> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return evals(a) > evals(b); });
  HermitianOperator out;
  out.evals_.resize(d);
  out.evecs_.resize(d, d);
  for (int i = 0; i < d; ++i) {
    out.evals_(i) = evals(order[i]);
    out.evecs_.col(i) = eigvecs.col(order[i]);
  }
  out.entries_ = out.evecs_ * out.evals_.asDiagonal() * out.evecs_.adjoint();
  out.entries_ = 0.5 * (out.entries_ + out.entries_.adjoint());
  return out;
}

HermitianOperator HermitianOperator::identity(int dim) {
  return from_spectrum(RealVector::Ones(dim), Matrix::Identity(dim, dim));
}

HermitianOperator HermitianOperator::zero(int dim) {
  return from_spectrum(RealVector::Zero(dim), Matrix::Identity(dim, dim));
}

double HermitianOperator::max_abs_eigenvalue() const {
  return std::max(std::abs(evals_(0)), std::abs(evals_(evals_.size() - 1)));
}

int HermitianOperator::rank(double rank_tol) const {
  const double thresh = rank_tol * max_abs_eigenvalue();
  int r = 0;
  for (int i = 0; i < evals_.size(); ++i) {
    if (std::abs(evals_(i)) > thresh) ++r;
  }
  return r;
}

DensityOperator::DensityOperator(const HermitianOperator& op, double rank_tolerance)
    : rank_tolerance_(rank_tolerance) {
  RealVector ev = op.eigenvalues();
  const double lmax = ev(0);
  if (lmax <= 0.0) {
    throw InvalidInputError("DensityOperator: operator has no positive eigenvalue");
  }
  const double floor = -rank_tolerance * lmax;
  for (int i = 0; i < ev.size(); ++i) {
    if (ev(i) < floor) {
      throw InvalidInputError("DensityOperator: negative eigenvalue beyond rank tolerance");
    }
    if (ev(i) < 0.0) ev(i) = 0.0;
  }
  const double tr = ev.sum();
  if (std::abs(tr - 1.0) > 1e-10) {
    throw InvalidInputError("DensityOperator: trace differs from 1 beyond 1e-10");
  }
  ev /= tr;
  op_ = HermitianOperator::from_spectrum(ev, op.eigenvectors());
}

DensityOperator::DensityOperator(Matrix entries, double rank_tolerance)
    : DensityOperator(HermitianOperator(std::move(entries)), rank_tolerance) {}

SupportProjector SupportProjector::of(const HermitianOperator& a, double rank_tol) {
  const int d = a.dim();
  const double thresh = rank_tol * a.max_abs_eigenvalue();
  Matrix p = Matrix::Zero(d, d);
  int r = 0;
  for (int i = 0; i < d; ++i) {
    if (std::abs(a.eigenvalues()(i)) > thresh) {
      p += a.eigenvectors().col(i) * a.eigenvectors().col(i).adjoint();
      ++r;
    }
  }
  return SupportProjector{HermitianOperator(std::move(p)), r};
}

SupportProjector SupportProjector::full(int dim) {
  return SupportProjector{HermitianOperator::identity(dim), dim};
}

HermitianOperator PinchingMap::apply(const HermitianOperator& x) const {
  const int d = x.dim();
  if (!projectors.empty() && projectors.front().projector.dim() != d) {
    throw InvalidInputError("PinchingMap::apply: dimension mismatch");
  }
  Matrix out = Matrix::Zero(d, d);
  for (const auto& p : projectors) {
    out += p.projector.entries() * x.entries() * p.projector.entries();
  }
  return HermitianOperator(std::move(out));
}

PinchingMap pinching_map(const HermitianOperator& a, double degeneracy_tolerance) {
  const int d = a.dim();
  const RealVector& ev = a.eigenvalues();
  const double range = ev(0) - ev(d - 1);
  const double gap_thresh = degeneracy_tolerance * range;

  PinchingMap map;
  int start = 0;
  for (int i = 1; i <= d; ++i) {
    const bool split = (i == d) || (range <= 0.0 ? false : (ev(i - 1) - ev(i)) > gap_thresh);
    if (i == d || split) {
      Matrix p = Matrix::Zero(d, d);
      for (int k = start; k < i; ++k) {
        p += a.eigenvectors().col(k) * a.eigenvectors().col(k).adjoint();
      }
      map.projectors.push_back(SupportProjector{HermitianOperator(std::move(p)), i - start});
      start = i;
    }
  }
  map.v = static_cast<int>(map.projectors.size());
  return map;
}

}  // namespace qdich

#include "qdich/operators.hpp"

#include <algorithm>
#include <cmath>

namespace qdich {

std::pair<RealVector, Matrix> eig_hermitian(const HermitianOperator& h) {
  return {h.eigenvalues(), h.eigenvectors()};
}

HermitianOperator spectral_transform(const HermitianOperator& a, SpectralFn fn, double p,
                                     bool on_support, double rank_tol) {
  const int d = a.dim();
  const RealVector& ev = a.eigenvalues();
  const double thresh = rank_tol * a.max_abs_eigenvalue();
  RealVector out(d);

  switch (fn) {
    case SpectralFn::Power: {
      const bool fractional = p != std::floor(p);
      const bool needs_support = p < 0.0;
      for (int i = 0; i < d; ++i) {
        const double l = ev(i);
        if (l <= thresh) {
          if (l < -thresh && (fractional || needs_support)) {
            throw InvalidInputError("matrix_power: negative eigenvalue under fractional/negative power");
          }
          if (needs_support && !on_support && std::abs(l) <= thresh) {
            throw SingularOperatorError("matrix_power: negative power of a singular operator");
          }
          out(i) = (l < -thresh) ? std::pow(l, p) : 0.0;  // 0^p = 0 on the support boundary
        } else {
          out(i) = std::pow(l, p);
        }
      }
      break;
    }
    case SpectralFn::Log2: {
      for (int i = 0; i < d; ++i) {
        const double l = ev(i);
        if (l <= thresh) {
          if (l < -thresh) {
            throw InvalidInputError("matrix_log2: negative eigenvalue");
          }
          if (!on_support) {
            throw SingularOperatorError("matrix_log2: log of a singular operator");
          }
          out(i) = 0.0;  // restricted to the support
        } else {
          out(i) = std::log2(l);
        }
      }
      break;
    }
    case SpectralFn::Exp2: {
      for (int i = 0; i < d; ++i) out(i) = std::exp2(ev(i));
      break;
    }
  }
  return HermitianOperator::from_spectrum(out, a.eigenvectors());
}

HermitianOperator matrix_power(const HermitianOperator& a, double p, bool on_support) {
  return spectral_transform(a, SpectralFn::Power, p, on_support);
}

HermitianOperator matrix_log2(const HermitianOperator& a) {
  return spectral_transform(a, SpectralFn::Log2, 0.0, /*on_support=*/true);
}

HermitianOperator matrix_exp2(const HermitianOperator& a) {
  return spectral_transform(a, SpectralFn::Exp2);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  const int ar = static_cast<int>(a.rows()), ac = static_cast<int>(a.cols());
  const int br = static_cast<int>(b.rows()), bc = static_cast<int>(b.cols());
  Matrix out(ar * br, ac * bc);
  for (int i = 0; i < ar; ++i)
    for (int j = 0; j < ac; ++j) out.block(i * br, j * bc, br, bc) = a(i, j) * b;
  return out;
}

HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b) {
  return HermitianOperator(kron(a.entries(), b.entries()));
}

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
  return DensityOperator(kron(a.entries(), b.entries()));
}

DensityOperator tensor_power(const DensityOperator& a, int n) {
  if (n < 1) throw InvalidInputError("tensor_power: n must be >= 1");
  Matrix acc = a.entries();
  for (int i = 1; i < n; ++i) acc = kron(acc, a.entries());
  return DensityOperator(std::move(acc));
}

Matrix partial_trace(const Matrix& x, const std::vector<int>& dims, const std::vector<int>& keep) {
  long long prod = 1;
  for (int d : dims) prod *= d;
  if (prod != x.rows() || x.rows() != x.cols()) {
    throw InvalidInputError("partial_trace: factor dimensions do not match the operator");
  }
  const int nf = static_cast<int>(dims.size());
  std::vector<bool> kept(nf, false);
  for (int k : keep) {
    if (k < 0 || k >= nf) throw InvalidInputError("partial_trace: keep index out of range");
    kept[k] = true;
  }
  std::vector<int> kdims, tdims, kidx, tidx;
  for (int f = 0; f < nf; ++f) (kept[f] ? kdims : tdims).push_back(dims[f]);
  for (int f = 0; f < nf; ++f) (kept[f] ? kidx : tidx).push_back(f);

  // row-major strides over the factor list
  std::vector<long long> stride(nf, 1);
  for (int f = nf - 2; f >= 0; --f) stride[f] = stride[f + 1] * dims[f + 1];

  long long dk = 1, dt = 1;
  for (int d : kdims) dk *= d;
  for (int d : tdims) dt *= d;

  Matrix out = Matrix::Zero(dk, dk);
  std::vector<int> ki(kdims.size(), 0);

  auto offset = [&](const std::vector<int>& sub, const std::vector<int>& idx) {
    long long off = 0;
    for (size_t f = 0; f < sub.size(); ++f) off += stride[idx[f]] * sub[f];
    return off;
  };
  auto advance = [](std::vector<int>& sub, const std::vector<int>& lim) {
    for (int f = static_cast<int>(sub.size()) - 1; f >= 0; --f) {
      if (++sub[f] < lim[f]) return true;
      sub[f] = 0;
    }
    return false;
  };

  for (long long r = 0; r < dk; ++r) {
    std::vector<int> kjv(kdims.size(), 0);
    for (long long c = 0; c < dk; ++c) {
      const long long ro = offset(ki, kidx), co = offset(kjv, kidx);
      Complex acc = 0.0;
      std::vector<int> tv(tdims.size(), 0);
      if (dt == 1) {
        acc = x(ro, co);
      } else {
        do {
          const long long to = offset(tv, tidx);
          acc += x(ro + to, co + to);
        } while (advance(tv, tdims));
      }
      out(r, c) = acc;
      advance(kjv, kdims);
    }
    advance(ki, kdims);
  }
  return out;
}

HermitianOperator partial_trace(const HermitianOperator& x, const std::vector<int>& dims,
                                const std::vector<int>& keep) {
  return HermitianOperator(partial_trace(x.entries(), dims, keep));
}

bool support_contained(const HermitianOperator& a, const HermitianOperator& b, double leak_tol) {
  if (a.dim() != b.dim()) throw InvalidInputError("support_contained: dimension mismatch");
  const SupportProjector pb = SupportProjector::of(b);
  const Matrix comp = Matrix::Identity(a.dim(), a.dim()) - pb.projector.entries();
  const double leak = (comp * a.entries()).trace().real();
  return leak <= leak_tol * std::max(1.0, std::abs(a.trace()));
}

bool supports_orthogonal(const HermitianOperator& a, const HermitianOperator& b, double tol) {
  if (a.dim() != b.dim()) throw InvalidInputError("supports_orthogonal: dimension mismatch");
  const SupportProjector pa = SupportProjector::of(a);
  const SupportProjector pb = SupportProjector::of(b);
  const double overlap = (pa.projector.entries() * pb.projector.entries()).trace().real();
  return overlap <= tol;
}

Matrix support_basis(const HermitianOperator& a, double rank_tol) {
  const double thresh = rank_tol * a.max_abs_eigenvalue();
  std::vector<int> cols;
  for (int i = 0; i < a.dim(); ++i) {
    if (std::abs(a.eigenvalues()(i)) > thresh) cols.push_back(i);
  }
  Matrix basis(a.dim(), cols.size());
  for (size_t c = 0; c < cols.size(); ++c) basis.col(c) = a.eigenvectors().col(cols[c]);
  return basis;
}

Matrix support_intersection_basis(const HermitianOperator& a, const HermitianOperator& b,
                                  double tol) {
  if (a.dim() != b.dim()) throw InvalidInputError("support_intersection_basis: dimension mismatch");
  const Matrix pa = SupportProjector::of(a).projector.entries();
  const Matrix pb = SupportProjector::of(b).projector.entries();
  HermitianOperator t(pa * pb * pa);
  std::vector<int> cols;
  for (int i = 0; i < t.dim(); ++i) {
    if (t.eigenvalues()(i) >= 1.0 - tol) cols.push_back(i);
  }
  Matrix basis(a.dim(), cols.size());
  for (size_t c = 0; c < cols.size(); ++c) basis.col(c) = t.eigenvectors().col(cols[c]);
  return basis;
}

Matrix compress(const Matrix& h, const Matrix& basis) { return basis.adjoint() * h * basis; }

Matrix embed(const Matrix& block, const Matrix& basis) { return basis * block * basis.adjoint(); }

}  // namespace qdich

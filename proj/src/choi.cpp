#include "qdich/choi.hpp"

#include <cmath>

#include "qdich/operators.hpp"

namespace qdich {

ChoiChannel::ChoiChannel(int dim_in, int dim_out, HermitianOperator choi, bool validate)
    : dim_in_(dim_in), dim_out_(dim_out), choi_(std::move(choi)) {
  if (dim_in < 1 || dim_out < 1 || choi_.dim() != dim_in * dim_out) {
    throw InvalidInputError("ChoiChannel: choi dimension must equal dim_in * dim_out");
  }
  if (validate) {
    const double scale = std::max(1.0, choi_.max_abs_eigenvalue());
    if (choi_.min_eigenvalue() < -1e-8 * scale) {
      throw InvalidInputError("ChoiChannel: choi matrix is not PSD within tolerance");
    }
    if (tp_residual() > 1e-7 * std::sqrt(static_cast<double>(dim_in))) {
      throw InvalidInputError("ChoiChannel: trace-preservation residual too large");
    }
  }
}

double ChoiChannel::tp_residual() const {
  const Matrix tr_out =
      partial_trace(choi_.entries(), {dim_in_, dim_out_}, {0});
  return (tr_out - Matrix::Identity(dim_in_, dim_in_)).norm();
}

double ChoiChannel::psd_floor() const { return choi_.min_eigenvalue(); }

ChoiChannel ChoiChannel::identity(int dim) {
  Matrix j = Matrix::Zero(dim * dim, dim * dim);
  for (int i = 0; i < dim; ++i)
    for (int k = 0; k < dim; ++k) j(i * dim + i, k * dim + k) = 1.0;
  return ChoiChannel(dim, dim, HermitianOperator(std::move(j)));
}

ChoiChannel ChoiChannel::replacement(int dim_in, const DensityOperator& target) {
  const Matrix j = kron(Matrix::Identity(dim_in, dim_in), target.entries());
  return ChoiChannel(dim_in, target.dim(), HermitianOperator(j));
}

ChoiChannel ChoiChannel::from_kraus(int dim_in, int dim_out, const std::vector<Matrix>& kraus) {
  Matrix j = Matrix::Zero(dim_in * dim_out, dim_in * dim_out);
  for (const Matrix& k : kraus) {
    if (k.rows() != dim_out || k.cols() != dim_in) {
      throw InvalidInputError("from_kraus: operator shape mismatch");
    }
    for (int i = 0; i < dim_in; ++i)
      for (int i2 = 0; i2 < dim_in; ++i2)
        for (int o = 0; o < dim_out; ++o)
          for (int o2 = 0; o2 < dim_out; ++o2)
            j(i * dim_out + o, i2 * dim_out + o2) += k(o, i) * std::conj(k(o2, i2));
  }
  return ChoiChannel(dim_in, dim_out, HermitianOperator(std::move(j)));
}

ChoiChannel ChoiChannel::classical(const RealMatrix& stochastic, const Matrix& basis_in,
                                   const Matrix& basis_out) {
  const int di = static_cast<int>(stochastic.cols());
  const int dout = static_cast<int>(stochastic.rows());
  if (basis_in.cols() != di || basis_out.cols() != dout) {
    throw InvalidInputError("ChoiChannel::classical: basis shape mismatch");
  }
  // E(X) = sum_k <k|U^+ X U|k> sum_j T_jk |j'><j'| in the given bases;
  // Kraus: K_{jk} = sqrt(T_jk) |out_j><in_k|
  std::vector<Matrix> kraus;
  kraus.reserve(static_cast<size_t>(di) * dout);
  for (int k = 0; k < di; ++k)
    for (int j = 0; j < dout; ++j) {
      if (stochastic(j, k) <= 0.0) continue;
      Matrix op = std::sqrt(stochastic(j, k)) * basis_out.col(j) * basis_in.col(k).adjoint();
      kraus.push_back(std::move(op));
    }
  return from_kraus(di, dout, kraus);
}

HermitianOperator ChoiChannel::apply(const HermitianOperator& a) const {
  if (a.dim() != dim_in_) throw InvalidInputError("ChoiChannel::apply: dimension mismatch");
  Matrix out = Matrix::Zero(dim_out_, dim_out_);
  const Matrix& j = choi_.entries();
  for (int i = 0; i < dim_in_; ++i)
    for (int i2 = 0; i2 < dim_in_; ++i2)
      out += a.entries()(i, i2) * j.block(i * dim_out_, i2 * dim_out_, dim_out_, dim_out_);
  return HermitianOperator(std::move(out));
}

DensityOperator ChoiChannel::apply(const DensityOperator& rho) const {
  return DensityOperator(apply(rho.op()));
}

}  // namespace qdich

#include "qdich/random_states.hpp"

namespace qdich {

namespace {
Matrix gaussian_matrix(int rows, int cols, Rng& rng) {
  Matrix g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const double re = rng.next_gaussian();
      const double im = rng.next_gaussian();
      g(i, j) = Complex(re, im);
    }
  return g;
}
}  // namespace

DensityOperator random_density(int dim, int rank, Rng& rng) {
  if (dim < 1 || rank < 1 || rank > dim) {
    throw InvalidInputError("random_density: need 1 <= rank <= dim");
  }
  const Matrix g = gaussian_matrix(dim, rank, rng);
  Matrix r = g * g.adjoint();
  r /= r.trace().real();
  return DensityOperator(std::move(r));
}

DensityOperator random_density(int dim, int rank, std::uint64_t seed) {
  Rng rng(seed);
  return random_density(dim, rank, rng);
}

HermitianOperator random_hermitian(int dim, Rng& rng) {
  const Matrix g = gaussian_matrix(dim, dim, rng);
  return HermitianOperator(0.5 * (g + g.adjoint()));
}

ChoiChannel random_channel(int dim_in, int dim_out, int env_dim, Rng& rng) {
  if (dim_in < 1 || dim_out < 1 || env_dim < 1) {
    throw InvalidInputError("random_channel: dimensions must be positive");
  }
  if (dim_out * env_dim < dim_in) {
    throw InvalidInputError("random_channel: dim_out * env_dim must be >= dim_in");
  }
  const Matrix g = gaussian_matrix(dim_out * env_dim, dim_in, rng);
  const Eigen::HouseholderQR<Matrix> qr(g);
  const Matrix q = qr.householderQ() * Matrix::Identity(dim_out * env_dim, dim_in);
  // Kraus operators K_e(o, i) = V(o*env + e, i)
  std::vector<Matrix> kraus(env_dim, Matrix(dim_out, dim_in));
  for (int e = 0; e < env_dim; ++e)
    for (int o = 0; o < dim_out; ++o)
      for (int i = 0; i < dim_in; ++i) kraus[e](o, i) = q(o * env_dim + e, i);
  return ChoiChannel::from_kraus(dim_in, dim_out, kraus);
}

ChoiChannel random_channel(int dim_in, int dim_out, int env_dim, std::uint64_t seed) {
  Rng rng(seed);
  return random_channel(dim_in, dim_out, env_dim, rng);
}

}  // namespace qdich

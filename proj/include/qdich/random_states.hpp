#ifndef QDICH_RANDOM_STATES_HPP
#define QDICH_RANDOM_STATES_HPP

#include <cstdint>

#include "qdich/choi.hpp"
#include "qdich/hermitian.hpp"
#include "qdich/rng.hpp"

namespace qdich {

// rho = G G^dagger / Tr, with G a seeded complex Gaussian dim x rank matrix.
DensityOperator random_density(int dim, int rank, std::uint64_t seed);
DensityOperator random_density(int dim, int rank, Rng& rng);

// Random Hermitian with standard Gaussian entries (GUE-style), for generic tests.
HermitianOperator random_hermitian(int dim, Rng& rng);

// Seeded random isometry dim_in -> dim_out (x) env, environment traced out.
ChoiChannel random_channel(int dim_in, int dim_out, int env_dim, std::uint64_t seed);
ChoiChannel random_channel(int dim_in, int dim_out, int env_dim, Rng& rng);

}  // namespace qdich

#endif

#ifndef QDICH_DIVERGENCES_HPP
#define QDICH_DIVERGENCES_HPP

#include "qdich/hermitian.hpp"

namespace qdich {

enum class DivergenceKind { Sandwiched, Petz, LogEuclidean, Umegaki, Max };

enum class OrderTag { Finite, LimitOne, LimitInfinity };

// Extended-real divergence value. +infinity appears exactly when the
// Definition-1 support condition fails, or at the order-infinity limit with
// unbounded ratio.
struct DivergenceValue {
  double value = 0.0;  // finite, or +infinity
  DivergenceKind kind = DivergenceKind::Umegaki;
  OrderTag order_tag = OrderTag::LimitOne;
  double order = 1.0;              // alpha when order_tag == Finite
  bool near_one_fallback = false;  // |alpha-1| < 1e-4: evaluated as Umegaki

  bool is_infinite() const { return std::isinf(value); }
};

double fidelity(const DensityOperator& rho, const DensityOperator& sigma);
double trace_distance(const DensityOperator& rho, const DensityOperator& sigma);
double purified_distance(const DensityOperator& rho, const DensityOperator& sigma);

// Renyi divergence of the given family and order alpha (> 0, != 1); sigma is
// any PSD operator. Support conditions follow Definition 1; on failure the
// value is +infinity. All logs base 2.
DivergenceValue renyi_divergence(DivergenceKind kind, double alpha, const DensityOperator& rho,
                                 const HermitianOperator& sigma);

DivergenceValue umegaki(const DensityOperator& rho, const HermitianOperator& sigma);
DivergenceValue d_max(const DensityOperator& rho, const HermitianOperator& sigma);

double von_neumann_entropy(const DensityOperator& rho);

// Order-infinity limit of the log-Euclidean family:
// lambda_max of supp(rho)-compressed (log rho - log sigma). Requires
// supp(rho) in supp(sigma); +infinity otherwise.
double d_flat_infinity(const DensityOperator& rho, const HermitianOperator& sigma);

// Order-zero limit of the Petz family: -log2 Tr[P_rho sigma]; used by the
// trace-distance exponent at its beta -> infinity endpoint.
double petz_order_zero(const DensityOperator& rho, const HermitianOperator& sigma);

// relative entropy D(tau || omega) between density operators (bits)
double relative_entropy(const DensityOperator& tau, const DensityOperator& omega);

}  // namespace qdich

#endif

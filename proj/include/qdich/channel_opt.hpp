#ifndef QDICH_CHANNEL_OPT_HPP
#define QDICH_CHANNEL_OPT_HPP

#include <optional>

#include "qdich/choi.hpp"
#include "qdich/exponents.hpp"

namespace qdich {

enum class DistanceKind { Purified, Trace };

inline constexpr int kChoiDimCap = 4096;      // hard cap for the general SDP path
inline constexpr int kSdpPreferredCap = 256;  // beyond this, classical instances take the fast path
inline constexpr long long kClassicalVectorCap = 1 << 20;

struct FiniteBlockResult {
  int n = 1;
  int m = 0;
  DistanceKind distance_kind = DistanceKind::Purified;
  double optimal_error = 0.0;
  double optimal_fidelity_sq = 1.0;
  std::optional<ChoiChannel> channel;          // absent beyond the Choi cap (fast path)
  std::optional<RealMatrix> stochastic_map;    // classical fast-path optimizer
  double solver_gap = 0.0;
};

// Optimal fidelity max F(E(rho_in), rho_t) over CPTP E with E(sigma_in) = sigma_t,
// solved as an SDP over (Choi, fidelity-block) variables.
FiniteBlockResult solve_optimal_fidelity(const DensityOperator& rho_in,
                                         const DensityOperator& sigma_in,
                                         const DensityOperator& rho_t,
                                         const DensityOperator& sigma_t, double tol = 1e-7);

// Optimal trace-distance error min d(E(rho_in), rho_t) under the same constraints.
FiniteBlockResult solve_optimal_trace(const DensityOperator& rho_in,
                                      const DensityOperator& sigma_in,
                                      const DensityOperator& rho_t,
                                      const DensityOperator& sigma_t, double tol = 1e-7);

// Simultaneously diagonal reduction of a dichotomy pair; absent when any of the
// four operators fail to commute within tolerance.
struct ClassicalInstance {
  RealVector p1, s1;  // input pair in the common eigenbasis
  RealVector p2, s2;  // target pair
  Matrix basis1, basis2;
};
std::optional<ClassicalInstance> classical_reduce(const Dichotomy& d1, const Dichotomy& d2);

// Classical fast path: maximize F(T p1, p2) = sum_j sqrt((T p1)_j p2_j) over
// column-stochastic T with T s1 = s2. Projected gradient ascent with
// diminishing steps on a smoothed objective, then a dense active-set Newton
// polish.
struct ClassicalFidelityResult {
  double fidelity = 1.0;
  RealMatrix t;  // optimal column-stochastic map (out x in)
};
ClassicalFidelityResult solve_classical_fidelity(const RealVector& p1, const RealVector& s1,
                                                 const RealVector& p2, const RealVector& s2,
                                                 double tol = 1e-9);

// Finite-blocklength error at rate r: consumes n copies, produces m = floor(n r),
// dispatching to the SDP or (for commuting instances beyond the preferred cap)
// the classical fast path.
FiniteBlockResult eps_at_rate(const Dichotomy& d1, const Dichotomy& d2, double r, int n,
                              DistanceKind kind, double tol = 1e-7);

struct MaxTransformResult {
  int m = 0;
  bool monotonicity_ok = true;
  std::vector<std::pair<int, double>> visited;  // (m, error) along the bisection
};

// Largest m with optimal error <= eps, by monotone bisection; monotonicity of
// the error in m is validated on all visited points, not assumed.
MaxTransformResult max_transform_count(const Dichotomy& d1, const Dichotomy& d2, int n, double eps,
                                       DistanceKind kind, double tol = 1e-7, int m_cap = -1);

}  // namespace qdich

#endif

#ifndef QDICH_EXPONENTS_HPP
#define QDICH_EXPONENTS_HPP

#include <optional>
#include <utility>
#include <vector>

#include "qdich/divergences.hpp"

namespace qdich {

// Ordered pair of states on one space, with the support relations precomputed.
struct Dichotomy {
  Dichotomy(DensityOperator rho_in, DensityOperator sigma_in);

  DensityOperator rho;
  DensityOperator sigma;
  bool rho_in_sigma;    // supp(rho) subseteq supp(sigma)
  bool orthogonal;      // supp(rho) perp supp(sigma)

  int dim() const { return rho.dim(); }
};

struct Rate {
  double value = 0.0;       // may be +infinity
  bool indeterminate = false;  // 0/0
};

// first-order rate D(rho1||sigma1) / D(rho2||sigma2)
Rate first_order_rate(const Dichotomy& d1, const Dichotomy& d2);

struct ExponentResult {
  double value = 0.0;        // bits per copy; >= 0, may be +infinity
  double argmax_order = 1.0; // alpha* in [1/2,1] (or delta* in [0,1] for the minimax form)
  std::vector<std::pair<double, double>> curve;  // (order, objective) grid samples
  double rate_threshold = 0.0;
  bool rate_indeterminate = false;
  std::optional<double> cross_check;  // optional companion-evaluator value
  // minimax diagnostics: optimizers at delta* and the explicit-objective value they achieve
  std::optional<Matrix> tau1, tau2;
  std::optional<double> optimizer_objective;
};

// Strong converse exponent under the purified distance:
// sup over alpha in [1/2,1] of (1-alpha)/alpha (r D*_alpha(rho2||sigma2)
//   - D*_{alpha/(2 alpha - 1)}(rho1||sigma1)); the alpha = 1/2 endpoint uses
// D_max and alpha = 1 contributes exactly 0.
ExponentResult sc_exponent_purified(const Dichotomy& d1, const Dichotomy& d2, double r);

// The lower-bound evaluator shares its implementation with the theorem
// formula; this entry point exists so callers (and tests) can say which bound
// they mean.
ExponentResult sc_exponent_lower_bound(const Dichotomy& d1, const Dichotomy& d2, double r);

// objective of the formula above at a single order (shared code path)
double sc_purified_objective(const Dichotomy& d1, const Dichotomy& d2, double r, double alpha);

// Strong converse exponent under the trace distance for pure rho2:
// sup over beta >= 1 of ((beta-1)/beta)(r D_{1/beta}(rho2||sigma2)
//   - D*_beta(rho1||sigma1)), evaluated via beta = alpha/(2 alpha - 1) and
// cross-checked against the purified evaluator.
ExponentResult sc_exponent_trace_pure(const Dichotomy& d1, const Dichotomy& d2, double r);
double sc_trace_objective(const Dichotomy& d1, const Dichotomy& d2, double r, double alpha);

// sup over alpha in (1/2,1) of (1-alpha)/alpha (r Dflat_alpha(rho2||sigma2)
//   - Dflat_beta(rho1||sigma1)), 1/alpha + 1/beta = 2; open endpoints are
// approached on the grid and the exact boundary limits enter as candidates.
ExponentResult f_flat_alpha_form(const Dichotomy& d1, const Dichotomy& d2, double r);
double f_flat_objective(const Dichotomy& d1, const Dichotomy& d2, double r, double alpha);

// sup over delta in [0,1] of the Gibbs-form inner infimum
// g(delta) = -(1-delta) log2 Tr 2^{(log rho1 - delta log sigma1)/(1-delta)}
//            - r (1+delta) log2 Tr 2^{(log rho2 + delta log sigma2)/(1+delta)},
// each exponent compressed to its effective support.
ExponentResult f_minimax_delta_form(const Dichotomy& d1, const Dichotomy& d2, double r);
double f_minimax_inner(const Dichotomy& d1, const Dichotomy& d2, double r, double delta);

// explicit minimax objective r D(t2||rho2) + D(t1||rho1)
//   + delta (r D(t2||sigma2) - D(t1||sigma1)) for probe states
double minimax_probe_objective(const Dichotomy& d1, const Dichotomy& d2, double r, double delta,
                               const DensityOperator& tau1, const DensityOperator& tau2);

}  // namespace qdich

#endif

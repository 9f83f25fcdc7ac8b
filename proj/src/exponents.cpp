#include "qdich/exponents.hpp"

#include <algorithm>
#include <cmath>

#include "qdich/operators.hpp"

namespace qdich {

namespace {

constexpr int kGridPoints = 513;
constexpr double kOrderResolution = 1e-8;
constexpr double kBetaGuard = 1e6;   // beyond this, route the second term to d_max
constexpr double kOpenEndpointGap = 1e-6;

// r*a - b with the extended-real conventions: a = +inf (b finite) -> +inf;
// b = +inf -> -inf regardless of a.
double ext_combine(double r, double a, double b) {
  if (std::isinf(b)) return -infinity();
  if (std::isinf(a)) return infinity();
  return r * a - b;
}

struct GridResult {
  double value;
  double argmax;
  std::vector<std::pair<double, double>> curve;
};

// dense grid followed by golden-section refinement of the best bracket;
// -infinity samples are kept on the curve but never win.
template <typename F>
GridResult grid_golden_maximize(F&& f, double lo, double hi, int npts, double resolution) {
  GridResult out;
  out.curve.reserve(npts);
  double best = -infinity();
  int best_i = -1;
  for (int i = 0; i < npts; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / (npts - 1);
    const double v = f(x);
    out.curve.emplace_back(x, v);
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  out.value = best;
  out.argmax = out.curve[std::max(best_i, 0)].first;
  if (best_i < 0 || std::isinf(best)) return out;

  double a = out.curve[std::max(best_i - 1, 0)].first;
  double b = out.curve[std::min(best_i + 1, npts - 1)].first;
  const double inv_phi = 0.6180339887498949;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > resolution) {
    if (f1 >= f2) {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  const double xm = 0.5 * (a + b);
  const double fm = f(xm);
  for (auto [x, v] : {std::pair{x1, f1}, std::pair{x2, f2}, std::pair{xm, fm}}) {
    if (v > out.value) {
      out.value = v;
      out.argmax = x;
    }
  }
  return out;
}

void require_hypothesis(const Dichotomy& d1, const Dichotomy& d2) {
  if (!d1.rho_in_sigma && !d2.rho_in_sigma) {
    throw HypothesisViolationError(
        "exponent: neither supp(rho1) in supp(sigma1) nor supp(rho2) in supp(sigma2) holds");
  }
}

void attach_rate(ExponentResult& res, const Dichotomy& d1, const Dichotomy& d2) {
  const Rate rate = first_order_rate(d1, d2);
  res.rate_threshold = rate.value;
  res.rate_indeterminate = rate.indeterminate;
}

// eigenvalues of (w1 log rho + w2 log sigma) compressed to basis
RealVector combined_log_spectrum(const DensityOperator& rho, const DensityOperator& sigma,
                                 double w1, double w2, const Matrix& basis) {
  const Matrix m =
      w1 * matrix_log2(rho.op()).entries() + w2 * matrix_log2(sigma.op()).entries();
  return HermitianOperator(compress(m, basis)).eigenvalues();
}

// -(s) log2 Tr 2^{H/s} from the eigenvalues of H, continuous down to s = 0
double scaled_free_energy(const RealVector& h, double s) {
  const double hmax = h.maxCoeff();
  if (s <= 0.0) return -hmax;
  double acc = 0.0;
  for (int i = 0; i < h.size(); ++i) acc += std::exp2((h(i) - hmax) / s);
  return -(hmax + s * std::log2(acc));
}

}  // namespace

Dichotomy::Dichotomy(DensityOperator rho_in, DensityOperator sigma_in)
    : rho(std::move(rho_in)), sigma(std::move(sigma_in)),
      rho_in_sigma(false), orthogonal(false) {
  if (rho.dim() != sigma.dim()) {
    throw InvalidInputError("Dichotomy: rho and sigma must act on a common space");
  }
  rho_in_sigma = support_contained(rho.op(), sigma.op());
  orthogonal = supports_orthogonal(rho.op(), sigma.op());
}

Rate first_order_rate(const Dichotomy& d1, const Dichotomy& d2) {
  const double num = umegaki(d1.rho, d1.sigma.op()).value;
  const double den = umegaki(d2.rho, d2.sigma.op()).value;
  const double zero_tol = 1e-14;
  const bool num_zero = !std::isinf(num) && std::abs(num) <= zero_tol;
  const bool den_zero = !std::isinf(den) && std::abs(den) <= zero_tol;
  if (den_zero) {
    if (num_zero) return Rate{infinity(), true};
    return Rate{infinity(), false};
  }
  if (std::isinf(num)) return Rate{infinity(), false};
  if (std::isinf(den)) return Rate{0.0, false};
  return Rate{num / den, false};
}

double sc_purified_objective(const Dichotomy& d1, const Dichotomy& d2, double r, double alpha) {
  if (alpha >= 1.0) return 0.0;  // exactly zero by construction, no quotient evaluated
  double second;
  if (alpha <= 0.5 || alpha / (2.0 * alpha - 1.0) > kBetaGuard) {
    second = d_max(d1.rho, d1.sigma.op()).value;
  } else {
    const double beta = alpha / (2.0 * alpha - 1.0);
    second = renyi_divergence(DivergenceKind::Sandwiched, beta, d1.rho, d1.sigma.op()).value;
  }
  const double first = renyi_divergence(DivergenceKind::Sandwiched, alpha, d2.rho, d2.sigma.op()).value;
  return (1.0 - alpha) / alpha * ext_combine(r, first, second);
}

ExponentResult sc_exponent_purified(const Dichotomy& d1, const Dichotomy& d2, double r) {
  if (!(r > 0.0)) throw InvalidInputError("sc_exponent_purified: r must be > 0");
  require_hypothesis(d1, d2);
  auto obj = [&](double a) { return sc_purified_objective(d1, d2, r, a); };
  GridResult g = grid_golden_maximize(obj, 0.5, 1.0, kGridPoints, kOrderResolution);
  ExponentResult res;
  res.curve = std::move(g.curve);
  if (g.value > 0.0) {
    res.value = g.value;
    res.argmax_order = g.argmax;
  } else {
    res.value = 0.0;          // the alpha = 1 candidate
    res.argmax_order = 1.0;
  }
  attach_rate(res, d1, d2);
  return res;
}

ExponentResult sc_exponent_lower_bound(const Dichotomy& d1, const Dichotomy& d2, double r) {
  return sc_exponent_purified(d1, d2, r);
}

double sc_trace_objective(const Dichotomy& d1, const Dichotomy& d2, double r, double alpha) {
  if (alpha >= 1.0) return 0.0;
  double second;
  if (alpha <= 0.5 || alpha / (2.0 * alpha - 1.0) > kBetaGuard) {
    second = d_max(d1.rho, d1.sigma.op()).value;
  } else {
    const double beta = alpha / (2.0 * alpha - 1.0);
    second = renyi_divergence(DivergenceKind::Sandwiched, beta, d1.rho, d1.sigma.op()).value;
  }
  // Petz order 1/beta = 2 - 1/alpha in [0,1); 0 is the order-zero limit
  const double gamma = 2.0 - 1.0 / alpha;
  double first;
  if (gamma <= 1e-12) {
    first = petz_order_zero(d2.rho, d2.sigma.op());
  } else {
    first = renyi_divergence(DivergenceKind::Petz, gamma, d2.rho, d2.sigma.op()).value;
  }
  return (1.0 - alpha) / alpha * ext_combine(r, first, second);
}

ExponentResult sc_exponent_trace_pure(const Dichotomy& d1, const Dichotomy& d2, double r) {
  if (!(r > 0.0)) throw InvalidInputError("sc_exponent_trace_pure: r must be > 0");
  if (!d2.rho.is_pure()) {
    throw InvalidInputError("sc_exponent_trace_pure: rho2 must be pure (rank 1)");
  }
  require_hypothesis(d1, d2);
  auto obj = [&](double a) { return sc_trace_objective(d1, d2, r, a); };
  GridResult g = grid_golden_maximize(obj, 0.5, 1.0, kGridPoints, kOrderResolution);
  ExponentResult res;
  res.curve = std::move(g.curve);
  if (g.value > 0.0) {
    res.value = g.value;
    res.argmax_order = g.argmax;
  } else {
    res.value = 0.0;
    res.argmax_order = 1.0;
  }
  attach_rate(res, d1, d2);
  res.cross_check = sc_exponent_purified(d1, d2, r).value;
  return res;
}

double f_flat_objective(const Dichotomy& d1, const Dichotomy& d2, double r, double alpha) {
  const double beta = alpha / (2.0 * alpha - 1.0);
  const double first =
      renyi_divergence(DivergenceKind::LogEuclidean, alpha, d2.rho, d2.sigma.op()).value;
  double second;
  if (beta > kBetaGuard) {
    second = d_flat_infinity(d1.rho, d1.sigma.op());
  } else {
    second = renyi_divergence(DivergenceKind::LogEuclidean, beta, d1.rho, d1.sigma.op()).value;
  }
  return (1.0 - alpha) / alpha * ext_combine(r, first, second);
}

ExponentResult f_flat_alpha_form(const Dichotomy& d1, const Dichotomy& d2, double r) {
  if (!d1.rho_in_sigma) {
    throw HypothesisViolationError("f_flat_alpha_form: supp(rho1) must lie in supp(sigma1)");
  }
  auto obj = [&](double a) { return f_flat_objective(d1, d2, r, a); };
  GridResult g = grid_golden_maximize(obj, 0.5 + kOpenEndpointGap, 1.0 - kOpenEndpointGap,
                                      kGridPoints, kOrderResolution);
  // exact boundary limits: alpha -> 1 gives 0; alpha -> 1/2 gives
  // r Dflat_{1/2}(rho2||sigma2) - lim_{beta->inf} Dflat_beta(rho1||sigma1)
  const double half_limit =
      ext_combine(r, renyi_divergence(DivergenceKind::LogEuclidean, 0.5, d2.rho, d2.sigma.op()).value,
                  d_flat_infinity(d1.rho, d1.sigma.op()));
  ExponentResult res;
  res.curve = std::move(g.curve);
  res.value = g.value;
  res.argmax_order = g.argmax;
  if (half_limit > res.value) {
    res.value = half_limit;
    res.argmax_order = 0.5;
  }
  if (res.value < 0.0) {
    res.value = 0.0;
    res.argmax_order = 1.0;
  }
  attach_rate(res, d1, d2);
  return res;
}

double f_minimax_inner(const Dichotomy& d1, const Dichotomy& d2, double r, double delta) {
  // term 1: inf over tau1 with supp(tau1) in supp(rho1)
  const Matrix b1 = support_basis(d1.rho.op(), d1.rho.rank_tolerance());
  const RealVector h1 = combined_log_spectrum(d1.rho, d1.sigma, 1.0, -delta, b1);
  const double t1 = scaled_free_energy(h1, 1.0 - delta);
  // term 2: inf over tau2 with supp(tau2) in supp(rho2) and supp(sigma2)
  const Matrix b2 = support_intersection_basis(d2.rho.op(), d2.sigma.op());
  if (b2.cols() == 0) return delta > 0.0 ? infinity() : 0.0;
  const RealVector h2 = combined_log_spectrum(d2.rho, d2.sigma, 1.0, delta, b2);
  const double t2 = r * scaled_free_energy(h2, 1.0 + delta);
  return t1 + t2;
}

ExponentResult f_minimax_delta_form(const Dichotomy& d1, const Dichotomy& d2, double r) {
  if (!d1.rho_in_sigma) {
    throw HypothesisViolationError("f_minimax_delta_form: supp(rho1) must lie in supp(sigma1)");
  }
  auto g = [&](double delta) { return f_minimax_inner(d1, d2, r, delta); };
  GridResult gr = grid_golden_maximize(g, 0.0, 1.0, 129, kOrderResolution);
  ExponentResult res;
  res.curve = std::move(gr.curve);
  res.value = std::max(gr.value, 0.0);  // delta = 0 contributes exactly 0
  res.argmax_order = gr.value > 0.0 ? gr.argmax : 0.0;
  attach_rate(res, d1, d2);

  if (std::isinf(res.value)) return res;

  // reported optimizers at delta*
  const double ds = res.argmax_order;
  const Matrix b1 = support_basis(d1.rho.op(), d1.rho.rank_tolerance());
  const Matrix m1 = matrix_log2(d1.rho.op()).entries() - ds * matrix_log2(d1.sigma.op()).entries();
  const HermitianOperator h1c(compress(m1, b1));
  RealVector w1(h1c.dim());
  const double s1 = 1.0 - ds;
  {
    const double hmax = h1c.eigenvalues().maxCoeff();
    for (int i = 0; i < h1c.dim(); ++i) {
      w1(i) = (s1 <= 1e-9) ? ((h1c.eigenvalues()(i) >= hmax - 1e-12 * std::max(1.0, std::abs(hmax))) ? 1.0 : 0.0)
                           : std::exp2((h1c.eigenvalues()(i) - hmax) / s1);
    }
    w1 /= w1.sum();
  }
  const Matrix tau1 = embed(h1c.eigenvectors() * w1.asDiagonal() * h1c.eigenvectors().adjoint(), b1);

  const Matrix b2 = support_intersection_basis(d2.rho.op(), d2.sigma.op());
  const Matrix m2 = matrix_log2(d2.rho.op()).entries() + ds * matrix_log2(d2.sigma.op()).entries();
  const HermitianOperator h2c(compress(m2, b2));
  RealVector w2(h2c.dim());
  {
    const double hmax = h2c.eigenvalues().maxCoeff();
    for (int i = 0; i < h2c.dim(); ++i) w2(i) = std::exp2((h2c.eigenvalues()(i) - hmax) / (1.0 + ds));
    w2 /= w2.sum();
  }
  const Matrix tau2 = embed(h2c.eigenvectors() * w2.asDiagonal() * h2c.eigenvectors().adjoint(), b2);

  res.tau1 = tau1;
  res.tau2 = tau2;
  res.optimizer_objective = minimax_probe_objective(d1, d2, r, ds, DensityOperator(tau1),
                                                    DensityOperator(tau2));
  return res;
}

double minimax_probe_objective(const Dichotomy& d1, const Dichotomy& d2, double r, double delta,
                               const DensityOperator& tau1, const DensityOperator& tau2) {
  const double a = relative_entropy(tau2, d2.rho);
  const double b = relative_entropy(tau1, d1.rho);
  const double c = umegaki(tau2, d2.sigma.op()).value;
  const double d = umegaki(tau1, d1.sigma.op()).value;
  if (std::isinf(a) || std::isinf(b) || std::isinf(c)) return infinity();
  return r * a + b + delta * (r * c - d);
}

}  // namespace qdich

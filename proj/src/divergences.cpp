#include "qdich/divergences.hpp"

#include <cmath>

#include "qdich/operators.hpp"

namespace qdich {

namespace {

void check_dims(int a, int b, const char* who) {
  if (a != b) throw InvalidInputError(std::string(who) + ": dimension mismatch");
}

// log2 of sum_i lambda_i^a over the support of a PSD operator, in the scaled
// log domain so large orders neither overflow nor underflow.
double log2_power_trace(const HermitianOperator& psd, double a) {
  const double lmax = psd.eigenvalues()(0);
  if (lmax <= 0.0) return -infinity();
  const double thresh = kRankTol * lmax;
  double acc = 0.0;
  const double l2max = std::log2(lmax);
  for (int i = 0; i < psd.dim(); ++i) {
    const double l = psd.eigenvalues()(i);
    if (l > thresh) acc += std::exp2(a * (std::log2(l) - l2max));
  }
  return a * l2max + std::log2(acc);
}

// log2 Tr 2^H for eigenvalues h of a compressed exponent matrix
double log2_exp_trace(const RealVector& h) {
  const double hmax = h.maxCoeff();
  double acc = 0.0;
  for (int i = 0; i < h.size(); ++i) acc += std::exp2(h(i) - hmax);
  return hmax + std::log2(acc);
}

DivergenceValue finite_value(DivergenceKind kind, double alpha, double v) {
  return DivergenceValue{v, kind, OrderTag::Finite, alpha, false};
}

DivergenceValue infinite_value(DivergenceKind kind, double alpha,
                               OrderTag tag = OrderTag::Finite) {
  return DivergenceValue{infinity(), kind, tag, alpha, false};
}

double umegaki_raw(const DensityOperator& rho, const HermitianOperator& sigma) {
  // Tr rho (log rho - log sigma) on supp(rho); containment checked by caller
  const HermitianOperator log_sigma = matrix_log2(sigma);
  double v = -(rho.entries() * log_sigma.entries()).trace().real();
  const double thresh = rho.rank_tolerance() * rho.eigenvalues()(0);
  for (int i = 0; i < rho.dim(); ++i) {
    const double l = rho.eigenvalues()(i);
    if (l > thresh) v += l * std::log2(l);
  }
  return v;
}

}  // namespace

double fidelity(const DensityOperator& rho, const DensityOperator& sigma) {
  check_dims(rho.dim(), sigma.dim(), "fidelity");
  const Matrix prod =
      matrix_power(rho.op(), 0.5).entries() * matrix_power(sigma.op(), 0.5).entries();
  Eigen::BDCSVD<Matrix> svd(prod);
  double f = svd.singularValues().sum();
  return std::min(1.0, std::max(0.0, f));
}

double trace_distance(const DensityOperator& rho, const DensityOperator& sigma) {
  check_dims(rho.dim(), sigma.dim(), "trace_distance");
  const HermitianOperator diff(rho.entries() - sigma.entries());
  double d = 0.5 * diff.eigenvalues().cwiseAbs().sum();
  return std::min(1.0, std::max(0.0, d));
}

double purified_distance(const DensityOperator& rho, const DensityOperator& sigma) {
  const double f = fidelity(rho, sigma);
  return std::sqrt(std::max(0.0, 1.0 - f * f));
}

DivergenceValue umegaki(const DensityOperator& rho, const HermitianOperator& sigma) {
  check_dims(rho.dim(), sigma.dim(), "umegaki");
  if (!support_contained(rho.op(), sigma)) {
    return infinite_value(DivergenceKind::Umegaki, 1.0, OrderTag::LimitOne);
  }
  DivergenceValue out = finite_value(DivergenceKind::Umegaki, 1.0, umegaki_raw(rho, sigma));
  out.order_tag = OrderTag::LimitOne;
  return out;
}

double relative_entropy(const DensityOperator& tau, const DensityOperator& omega) {
  return umegaki(tau, omega.op()).value;
}

DivergenceValue d_max(const DensityOperator& rho, const HermitianOperator& sigma) {
  check_dims(rho.dim(), sigma.dim(), "d_max");
  if (!support_contained(rho.op(), sigma)) {
    return infinite_value(DivergenceKind::Max, infinity(), OrderTag::LimitInfinity);
  }
  const HermitianOperator si = matrix_power(sigma, -0.5, /*on_support=*/true);
  const HermitianOperator m(si.entries() * rho.entries() * si.entries());
  DivergenceValue out = finite_value(DivergenceKind::Max, infinity(),
                                     std::log2(std::max(m.eigenvalues()(0), 1e-300)));
  out.order_tag = OrderTag::LimitInfinity;
  return out;
}

double von_neumann_entropy(const DensityOperator& rho) {
  const double thresh = rho.rank_tolerance() * rho.eigenvalues()(0);
  double h = 0.0;
  for (int i = 0; i < rho.dim(); ++i) {
    const double l = rho.eigenvalues()(i);
    if (l > thresh) h -= l * std::log2(l);
  }
  return std::max(0.0, h);
}

DivergenceValue renyi_divergence(DivergenceKind kind, double alpha, const DensityOperator& rho,
                                 const HermitianOperator& sigma) {
  check_dims(rho.dim(), sigma.dim(), "renyi_divergence");
  if (!(alpha > 0.0) || alpha == 1.0) {
    throw InvalidInputError("renyi_divergence: order must be positive and != 1 (use umegaki)");
  }
  if (kind == DivergenceKind::Umegaki || kind == DivergenceKind::Max) {
    throw InvalidInputError("renyi_divergence: kind must be sandwiched, petz or log-euclidean");
  }
  if (std::abs(alpha - 1.0) < 1e-4) {
    // the (alpha-1) quotient is numerically unstable this close to 1
    DivergenceValue out = umegaki(rho, sigma);
    out.kind = kind;
    out.order = alpha;
    out.near_one_fallback = true;
    return out;
  }

  // Definition-1 support conditions
  if (alpha > 1.0) {
    if (!support_contained(rho.op(), sigma)) return infinite_value(kind, alpha);
  } else if (kind == DivergenceKind::LogEuclidean) {
    if (support_intersection_basis(rho.op(), sigma).cols() == 0) {
      return infinite_value(kind, alpha);
    }
  } else {
    if (supports_orthogonal(rho.op(), sigma)) return infinite_value(kind, alpha);
  }

  double log2q = 0.0;
  switch (kind) {
    case DivergenceKind::Sandwiched: {
      const double e = (1.0 - alpha) / (2.0 * alpha);
      const HermitianOperator se = matrix_power(sigma, e, /*on_support=*/true);
      const HermitianOperator m(se.entries() * rho.entries() * se.entries());
      log2q = log2_power_trace(m, alpha);
      break;
    }
    case DivergenceKind::Petz: {
      const HermitianOperator ra = matrix_power(rho.op(), alpha, /*on_support=*/true);
      const HermitianOperator sb = matrix_power(sigma, 1.0 - alpha, /*on_support=*/true);
      const double q = (ra.entries() * sb.entries()).trace().real();
      log2q = std::log2(std::max(q, 1e-300));
      break;
    }
    case DivergenceKind::LogEuclidean: {
      const Matrix basis = support_intersection_basis(rho.op(), sigma);
      const Matrix m = alpha * matrix_log2(rho.op()).entries() +
                       (1.0 - alpha) * matrix_log2(sigma).entries();
      const HermitianOperator mw(compress(m, basis));
      log2q = log2_exp_trace(mw.eigenvalues());
      break;
    }
    default:
      break;
  }
  return finite_value(kind, alpha, log2q / (alpha - 1.0));
}

double d_flat_infinity(const DensityOperator& rho, const HermitianOperator& sigma) {
  check_dims(rho.dim(), sigma.dim(), "d_flat_infinity");
  if (!support_contained(rho.op(), sigma)) return infinity();
  const Matrix basis = support_basis(rho.op(), rho.rank_tolerance());
  const Matrix m = matrix_log2(rho.op()).entries() - matrix_log2(sigma).entries();
  const HermitianOperator mw(compress(m, basis));
  return mw.eigenvalues()(0);
}

double petz_order_zero(const DensityOperator& rho, const HermitianOperator& sigma) {
  check_dims(rho.dim(), sigma.dim(), "petz_order_zero");
  const Matrix p = SupportProjector::of(rho.op(), rho.rank_tolerance()).projector.entries();
  const double q = (p * sigma.entries()).trace().real();
  if (q <= 0.0) return infinity();
  return -std::log2(q);
}

}  // namespace qdich

#include "qdich/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <atomic>
#include <functional>
#include <future>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "qdich/channel_opt.hpp"
#include "qdich/operators.hpp"
#include "qdich/random_states.hpp"

namespace qdich {

namespace {

struct Check {
  std::string name;
  bool equality;
  // returns worst slack over its trials; inequality slack = min(RHS - LHS),
  // equality slack = max |LHS - RHS|
  std::function<double(Rng&, const std::vector<int>&, int)> run;
};

DensityOperator full_rank_state(int dim, Rng& rng) {
  // mixed with 0.01 maximally mixed so support conditions hold generically
  const DensityOperator raw = random_density(dim, dim, rng);
  Matrix m = 0.99 * raw.entries() + (0.01 / dim) * Matrix::Identity(dim, dim);
  return DensityOperator(std::move(m));
}

double dv(DivergenceKind kind, double a, const DensityOperator& rho, const DensityOperator& sig) {
  return renyi_divergence(kind, a, rho, sig.op()).value;
}

// --- check bodies ---------------------------------------------------------

double check_monotone_alpha(DivergenceKind kind, Rng& rng, const std::vector<int>& dims,
                            int trials) {
  double worst = infinity();
  for (int dim : dims) {
    for (int t = 0; t < trials; ++t) {
      const DensityOperator rho = random_density(dim, dim, rng);
      const DensityOperator sig = full_rank_state(dim, rng);
      double lo = 0.05 + 0.9 * rng.next_uniform();
      double hi = lo + 2.0 * rng.next_uniform();
      for (double* a : {&lo, &hi}) {
        if (std::abs(*a - 1.0) < 2e-4) *a += 5e-4;  // keep clear of the umegaki fallback window
      }
      const double dlo = dv(kind, lo, rho, sig);
      const double dhi = dv(kind, hi, rho, sig);
      worst = std::min(worst, dhi - dlo);
    }
  }
  return worst;
}

double check_monotone_sigma(DivergenceKind kind, Rng& rng, const std::vector<int>& dims,
                            int trials) {
  double worst = infinity();
  for (int dim : dims) {
    for (int t = 0; t < trials; ++t) {
      const DensityOperator rho = random_density(dim, dim, rng);
      const DensityOperator sig = full_rank_state(dim, rng);
      const HermitianOperator pert = random_hermitian(dim, rng);
      const Matrix bump = 0.2 * rng.next_uniform() *
                          (pert.entries() * pert.entries().adjoint());
      const HermitianOperator bigger(sig.entries() + bump);
      double a;
      switch (kind) {
        case DivergenceKind::Sandwiched: a = 0.5 + 2.5 * rng.next_uniform(); break;
        case DivergenceKind::Petz: a = 0.05 + 1.9 * rng.next_uniform(); break;
        default: a = 0.05 + 2.95 * rng.next_uniform(); break;
      }
      if (std::abs(a - 1.0) < 2e-4) a += 5e-4;
      const double d_small = renyi_divergence(kind, a, rho, sig.op()).value;
      const double d_big = renyi_divergence(kind, a, rho, bigger).value;
      worst = std::min(worst, d_small - d_big);
    }
  }
  return worst;
}

double check_dpi(DivergenceKind kind, Rng& rng, const std::vector<int>& dims, int trials,
                 bool corrupt) {
  double worst = infinity();
  for (int dim : dims) {
    for (int t = 0; t < trials; ++t) {
      const DensityOperator rho = random_density(dim, dim, rng);
      const DensityOperator sig = full_rank_state(dim, rng);
      const int dout = 2 + static_cast<int>(rng.next_range(0, dims.back() - 2));
      const ChoiChannel ch = random_channel(dim, dout, dim, rng);
      double a;
      switch (kind) {
        case DivergenceKind::Sandwiched: a = 0.5 + 2.5 * rng.next_uniform(); break;
        case DivergenceKind::Petz: a = 0.05 + 1.9 * rng.next_uniform(); break;
        default: a = 0.05 + 0.9 * rng.next_uniform(); break;
      }
      if (std::abs(a - 1.0) < 2e-4) a += 5e-4;
      const DensityOperator nrho = ch.apply(rho);
      const HermitianOperator nsig =
          corrupt ? sig.op() : ch.apply(sig.op());  // mutation control skips one argument
      double lhs;
      if (corrupt && nrho.dim() != nsig.dim()) {
        continue;
      }
      lhs = renyi_divergence(kind, a, nrho, nsig).value;
      const double rhs = renyi_divergence(kind, a, rho, sig.op()).value;
      worst = std::min(worst, rhs - lhs);
    }
  }
  return worst;
}

double check_pinching_approx(Rng& rng, const std::vector<int>& dims, int trials) {
  double worst = infinity();
  const double orders[] = {0.5, 0.8, 2.0};
  for (int dim : dims) {
    for (int t = 0; t < trials; ++t) {
      const DensityOperator rho = random_density(dim, dim, rng);
      const DensityOperator sig = full_rank_state(dim, rng);
      const PinchingMap pm = pinching_map(sig.op());
      const DensityOperator pinched(pm.apply(rho.op()));
      const double a = orders[rng.next_range(0, 2)];
      const double d_pinched = dv(DivergenceKind::Sandwiched, a, pinched, sig);
      const double d_plain = dv(DivergenceKind::Sandwiched, a, rho, sig);
      const double bound = d_pinched + 2.0 * std::log2(static_cast<double>(pm.v));
      worst = std::min(worst, d_plain - d_pinched);  // lower side
      worst = std::min(worst, bound - d_plain);      // upper side
    }
  }
  return worst;
}

double check_pinching_inequality(Rng& rng, const std::vector<int>& dims, int trials) {
  double worst = infinity();
  for (int dim : dims) {
    for (int t = 0; t < trials; ++t) {
      const HermitianOperator a = random_hermitian(dim, rng);
      const DensityOperator sig = random_density(dim, dim, rng);
      const PinchingMap pm = pinching_map(a);
      const HermitianOperator pinched = pm.apply(sig.op());
      const HermitianOperator diff(static_cast<double>(pm.v) * pinched.entries() -
                                   sig.entries());
      worst = std::min(worst, diff.min_eigenvalue());
    }
  }
  return worst;
}

double check_family_order(Rng& rng, const std::vector<int>& dims, int trials) {
  // D_sand <= D_petz <= D_flat on alpha in (0,1)
  double worst = infinity();
  for (int dim : dims) {
    for (int t = 0; t < trials; ++t) {
      const DensityOperator rho = random_density(dim, dim, rng);
      const DensityOperator sig = full_rank_state(dim, rng);
      const double a = 0.05 + 0.9 * rng.next_uniform();
      const double dflat = dv(DivergenceKind::LogEuclidean, a, rho, sig);
      const double dsand = dv(DivergenceKind::Sandwiched, a, rho, sig);
      const double dpetz = dv(DivergenceKind::Petz, a, rho, sig);
      worst = std::min(worst, dpetz - dsand);
      worst = std::min(worst, dflat - dpetz);
    }
  }
  return worst;
}

double check_half_order_fidelity(Rng& rng, const std::vector<int>& dims, int trials) {
  double worst = 0.0;
  for (int dim : dims) {
    for (int t = 0; t < trials; ++t) {
      const DensityOperator rho = random_density(dim, dim, rng);
      const DensityOperator sig = full_rank_state(dim, rng);
      const double lhs = dv(DivergenceKind::Sandwiched, 0.5, rho, sig);
      const double rhs = -2.0 * std::log2(std::max(fidelity(rho, sig), 1e-300));
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  return worst;
}

double check_pure_state_identity(Rng& rng, const std::vector<int>& dims, int trials) {
  double worst = 0.0;
  for (int dim : dims) {
    for (int t = 0; t < trials; ++t) {
      const DensityOperator psi = random_density(dim, 1, rng);
      const DensityOperator sig = full_rank_state(dim, rng);
      const double a = 0.5 + 0.499 * rng.next_uniform();
      if (std::abs(a - 1.0) < 2e-4) continue;
      const double g = 2.0 - 1.0 / a;
      if (g < 1e-3) continue;
      const double lhs = dv(DivergenceKind::Sandwiched, a, psi, sig);
      const double rhs = dv(DivergenceKind::Petz, g, psi, sig);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  return worst;
}

double check_lemma9(Rng& rng, const std::vector<int>& dims, int trials) {
  double worst = infinity();
  for (int dim : dims) {
    for (int t = 0; t < trials; ++t) {
      const DensityOperator phi = random_density(dim, 1, rng);
      const DensityOperator rho = random_density(dim, dim, rng);
      const double p = purified_distance(rho, phi);
      const double d = trace_distance(rho, phi);
      worst = std::min(worst, std::sqrt(d) - p);
    }
  }
  return worst;
}

double check_lemma10(Rng& rng, const std::vector<int>& dims, int trials) {
  double worst = infinity();
  for (int dim : dims) {
    for (int t = 0; t < trials; ++t) {
      const DensityOperator rho = random_density(dim, dim, rng);
      const DensityOperator sig = random_density(dim, dim, rng);
      const DensityOperator tau = random_density(dim, dim, rng);
      const double f_ts = fidelity(tau, sig);
      const double f_rs = fidelity(rho, sig);
      const HermitianOperator diff(rho.entries() - tau.entries());
      const double t1 = diff.eigenvalues().cwiseAbs().sum();
      worst = std::min(worst, f_ts * f_ts - (f_rs * f_rs - std::sqrt(t1)));
    }
  }
  return worst;
}

double check_lemma11(Rng& rng, const std::vector<int>& dims, int trials) {
  double worst = infinity();
  for (int dim : dims) {
    for (int t = 0; t < trials; ++t) {
      const DensityOperator rho = full_rank_state(dim, rng);
      const DensityOperator sig = full_rank_state(dim, rng);
      const DensityOperator tau = random_density(dim, dim, rng);
      const double lhs = -std::log2(std::max(fidelity(rho, sig), 1e-300)) * 2.0;
      const double rhs = relative_entropy(tau, rho) + relative_entropy(tau, sig);
      worst = std::min(worst, rhs - lhs);
    }
  }
  return worst;
}

double check_lemma12(Rng& rng, const std::vector<int>& dims, int trials) {
  double worst = infinity();
  for (int dim : dims) {
    if (dim < 2) continue;
    for (int t = 0; t < trials; ++t) {
      // random orthogonal decomposition into blocks, sigma block-diagonal
      const int nblocks = 2 + static_cast<int>(rng.next_range(0, std::max(dim / 2 - 1, 0)));
      std::vector<int> sizes(nblocks, 1);
      int rest = dim - nblocks;
      for (int i = 0; rest > 0; i = (i + 1) % nblocks) {
        ++sizes[i];
        --rest;
      }
      const HermitianOperator frame = random_hermitian(dim, rng);
      const Matrix v = frame.eigenvectors();
      std::vector<Matrix> proj;
      int col = 0;
      for (int b = 0; b < nblocks; ++b) {
        const Matrix cols = v.middleCols(col, sizes[b]);
        proj.push_back(cols * cols.adjoint());
        col += sizes[b];
      }
      const DensityOperator rho = random_density(dim, dim, rng);
      const DensityOperator sig0 = random_density(dim, dim, rng);
      Matrix sblocks = Matrix::Zero(dim, dim);
      for (const Matrix& p : proj) sblocks += p * sig0.entries() * p;
      const DensityOperator sig(sblocks / sblocks.trace().real());
      Matrix pinched = Matrix::Zero(dim, dim);
      for (const Matrix& p : proj) pinched += p * rho.entries() * p;
      const double lhs = fidelity(DensityOperator(pinched), sig);
      const double rhs = std::sqrt(static_cast<double>(nblocks)) * fidelity(rho, sig);
      worst = std::min(worst, rhs - lhs);
    }
  }
  return worst;
}

double check_fuchs_van_de_graaf(Rng& rng, const std::vector<int>& dims, int trials) {
  double worst = infinity();
  for (int dim : dims) {
    for (int t = 0; t < trials; ++t) {
      const DensityOperator rho = random_density(dim, dim, rng);
      const DensityOperator sig = random_density(dim, dim, rng);
      worst = std::min(worst, purified_distance(rho, sig) - trace_distance(rho, sig));
    }
  }
  return worst;
}

double check_prop6(Rng& rng, const std::vector<int>& dims, int trials) {
  double worst = 0.0;
  const double rates[] = {0.5, 1.0, 1.7, 3.0};
  for (int dim : dims) {
    if (dim > 4) continue;
    for (int t = 0; t < trials; ++t) {
      const Dichotomy d1(full_rank_state(dim, rng), full_rank_state(dim, rng));
      const Dichotomy d2(full_rank_state(dim, rng), full_rank_state(dim, rng));
      const double r = rates[rng.next_range(0, 3)];
      const double a = f_flat_alpha_form(d1, d2, r).value;
      const double b = f_minimax_delta_form(d1, d2, r).value;
      worst = std::max(worst, std::abs(a - b));
    }
  }
  return worst;
}

double check_minimax_probe(Rng& rng, const std::vector<int>& dims, int trials) {
  double worst = infinity();
  for (int dim : dims) {
    if (dim > 4) continue;
    for (int t = 0; t < std::min(trials, 10); ++t) {
      const Dichotomy d1(full_rank_state(dim, rng), full_rank_state(dim, rng));
      const Dichotomy d2(full_rank_state(dim, rng), full_rank_state(dim, rng));
      const double r = 0.5 + 2.5 * rng.next_uniform();
      const ExponentResult res = f_minimax_delta_form(d1, d2, r);
      if (std::isinf(res.value)) continue;
      const double g_star = f_minimax_inner(d1, d2, r, res.argmax_order);
      for (int probe = 0; probe < 100; ++probe) {
        const DensityOperator t1 = random_density(dim, dim, rng);
        const DensityOperator t2 = random_density(dim, dim, rng);
        const double obj = minimax_probe_objective(d1, d2, r, res.argmax_order, t1, t2);
        worst = std::min(worst, obj - g_star);
      }
    }
  }
  return worst;
}

double check_trace_pure_remark(Rng& rng, const std::vector<int>& dims, int trials) {
  double worst = 0.0;
  for (int dim : dims) {
    for (int t = 0; t < std::min(trials, 20); ++t) {
      const Dichotomy d1(full_rank_state(dim, rng), full_rank_state(dim, rng));
      const Dichotomy d2(random_density(dim, 1, rng), full_rank_state(dim, rng));
      const double r = 0.5 + 2.5 * rng.next_uniform();
      const ExponentResult tr = sc_exponent_trace_pure(d1, d2, r);
      worst = std::max(worst, std::abs(tr.value - tr.cross_check.value_or(tr.value)));
    }
  }
  return worst;
}

double check_exponent_zero_below_rate(Rng& rng, const std::vector<int>& dims, int trials) {
  double worst = 0.0;
  for (int dim : dims) {
    for (int t = 0; t < std::min(trials, 25); ++t) {
      const Dichotomy d1(full_rank_state(dim, rng), full_rank_state(dim, rng));
      const Dichotomy d2(full_rank_state(dim, rng), full_rank_state(dim, rng));
      const Rate rate = first_order_rate(d1, d2);
      if (std::isinf(rate.value) || rate.value <= 0.0) continue;
      const double r = rate.value * (0.2 + 0.75 * rng.next_uniform());
      worst = std::max(worst, sc_exponent_purified(d1, d2, r).value);
    }
  }
  return worst;
}

double check_exponent_monotone_r(Rng& rng, const std::vector<int>& dims, int trials) {
  double worst = infinity();
  for (int dim : dims) {
    for (int t = 0; t < std::min(trials, 10); ++t) {
      const Dichotomy d1(full_rank_state(dim, rng), full_rank_state(dim, rng));
      const Dichotomy d2(full_rank_state(dim, rng), full_rank_state(dim, rng));
      double prev = -infinity();
      for (int i = 0; i <= 10; ++i) {
        const double r = 0.25 + 0.35 * i;
        const double v = sc_exponent_purified(d1, d2, r).value;
        worst = std::min(worst, v - prev);
        prev = v;
      }
    }
  }
  return worst;
}

double check_flat_upper_bounds_exponent(Rng& rng, const std::vector<int>& dims, int trials) {
  double worst = infinity();
  for (int dim : dims) {
    if (dim > 4) continue;
    for (int t = 0; t < std::min(trials, 25); ++t) {
      const Dichotomy d1(full_rank_state(dim, rng), full_rank_state(dim, rng));
      const Dichotomy d2(full_rank_state(dim, rng), full_rank_state(dim, rng));
      const double r = 0.5 + 2.5 * rng.next_uniform();
      const double f = f_flat_alpha_form(d1, d2, r).value;
      const double e = sc_exponent_purified(d1, d2, r).value;
      worst = std::min(worst, f - e);
    }
  }
  return worst;
}

double check_remark5_finite_bridge(Rng& rng, const std::vector<int>& dims, int trials) {
  // d_opt <= eps_P <= sqrt(d_opt) for pure targets on qubit instances
  double worst = infinity();
  (void)dims;
  for (int t = 0; t < std::min(trials, 8); ++t) {
    const DensityOperator rho_in = full_rank_state(2, rng);
    const DensityOperator sig_in = full_rank_state(2, rng);
    const DensityOperator rho_t = random_density(2, 1, rng);
    const DensityOperator sig_t = full_rank_state(2, rng);
    const FiniteBlockResult fp = solve_optimal_fidelity(rho_in, sig_in, rho_t, sig_t, 1e-8);
    const FiniteBlockResult ft = solve_optimal_trace(rho_in, sig_in, rho_t, sig_t, 1e-8);
    worst = std::min(worst, fp.optimal_error - ft.optimal_error);
    worst = std::min(worst, std::sqrt(std::max(ft.optimal_error, 0.0)) - fp.optimal_error);
  }
  return worst;
}

std::vector<Check> build_checks(bool include_mutation_control) {
  std::vector<Check> checks;
  auto add = [&](std::string name, bool equality, auto fn) {
    checks.push_back(Check{std::move(name), equality, fn});
  };
  using V = const std::vector<int>&;
  add("prop2i-monotone-alpha-sandwiched", false, [](Rng& r, V d, int t) {
    return check_monotone_alpha(DivergenceKind::Sandwiched, r, d, t);
  });
  add("prop2i-monotone-alpha-petz", false, [](Rng& r, V d, int t) {
    return check_monotone_alpha(DivergenceKind::Petz, r, d, t);
  });
  add("prop2i-monotone-alpha-log-euclidean", false, [](Rng& r, V d, int t) {
    return check_monotone_alpha(DivergenceKind::LogEuclidean, r, d, t);
  });
  add("prop2ii-monotone-sigma-sandwiched", false, [](Rng& r, V d, int t) {
    return check_monotone_sigma(DivergenceKind::Sandwiched, r, d, t);
  });
  add("prop2ii-monotone-sigma-petz", false, [](Rng& r, V d, int t) {
    return check_monotone_sigma(DivergenceKind::Petz, r, d, t);
  });
  add("prop2ii-monotone-sigma-log-euclidean", false, [](Rng& r, V d, int t) {
    return check_monotone_sigma(DivergenceKind::LogEuclidean, r, d, t);
  });
  add("prop2iv-dpi-sandwiched", false, [](Rng& r, V d, int t) {
    return check_dpi(DivergenceKind::Sandwiched, r, d, t, false);
  });
  add("prop2iv-dpi-petz", false, [](Rng& r, V d, int t) {
    return check_dpi(DivergenceKind::Petz, r, d, t, false);
  });
  add("prop2iv-dpi-log-euclidean", false, [](Rng& r, V d, int t) {
    return check_dpi(DivergenceKind::LogEuclidean, r, d, t, false);
  });
  add("prop2v-pinching-approximation", false, check_pinching_approx);
  add("pinching-inequality", false, check_pinching_inequality);
  add("family-ordering-sandwiched-petz-flat", false, check_family_order);
  add("sandwiched-half-equals-fidelity", true, check_half_order_fidelity);
  add("pure-state-identity", true, check_pure_state_identity);
  add("lemma9-improved-fuchs-van-de-graaf", false, check_lemma9);
  add("lemma10-uhlmann-perturbation", false, check_lemma10);
  add("lemma11-fidelity-relative-entropy", false, check_lemma11);
  add("lemma12-block-diagonal-fidelity", false, check_lemma12);
  add("fuchs-van-de-graaf-sandwich", false, check_fuchs_van_de_graaf);
  add("prop6-variational-equality", true, check_prop6);
  add("minimax-probe-soundness", false, check_minimax_probe);
  add("remark-trace-pure-crosscheck", true, check_trace_pure_remark);
  add("remark5-finite-blocklength-bridge", false, check_remark5_finite_bridge);
  add("exponent-zero-below-rate", true, check_exponent_zero_below_rate);
  add("exponent-monotone-in-r", false, check_exponent_monotone_r);
  add("flat-form-upper-bounds-exponent", false, check_flat_upper_bounds_exponent);
  if (include_mutation_control) {
    add("mutation-control-dpi-corrupted", false, [](Rng& r, V d, int t) {
      return check_dpi(DivergenceKind::Sandwiched, r, d, t, true);
    });
  }
  return checks;
}

int thread_count() {
  if (const char* env = std::getenv("QDICH_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace

const std::vector<std::string>& coverage_manifest() {
  static const std::vector<std::string> manifest = {
      "prop2i-monotone-alpha-sandwiched",
      "prop2i-monotone-alpha-petz",
      "prop2i-monotone-alpha-log-euclidean",
      "prop2ii-monotone-sigma-sandwiched",
      "prop2ii-monotone-sigma-petz",
      "prop2ii-monotone-sigma-log-euclidean",
      "prop2iv-dpi-sandwiched",
      "prop2iv-dpi-petz",
      "prop2iv-dpi-log-euclidean",
      "prop2v-pinching-approximation",
      "pinching-inequality",
      "family-ordering-sandwiched-petz-flat",
      "sandwiched-half-equals-fidelity",
      "pure-state-identity",
      "lemma9-improved-fuchs-van-de-graaf",
      "lemma10-uhlmann-perturbation",
      "lemma11-fidelity-relative-entropy",
      "lemma12-block-diagonal-fidelity",
      "fuchs-van-de-graaf-sandwich",
      "prop6-variational-equality",
      "minimax-probe-soundness",
      "remark-trace-pure-crosscheck",
      "remark5-finite-blocklength-bridge",
      "exponent-zero-below-rate",
      "exponent-monotone-in-r",
      "flat-form-upper-bounds-exponent",
  };
  return manifest;
}

SuiteReport run_suite(std::uint64_t seed, int trials, const std::vector<int>& dims,
                      double tolerance, bool include_mutation_control) {
  if (trials < 1) throw InvalidInputError("run_suite: trials must be >= 1");
  for (int d : dims) {
    if (d < 2 || d > 6) throw InvalidInputError("run_suite: dims must lie in {2,...,6}");
  }
  std::vector<Check> checks = build_checks(include_mutation_control);

  // every manifest entry must be present in the check list
  for (const std::string& name : coverage_manifest()) {
    const bool found = std::any_of(checks.begin(), checks.end(),
                                   [&](const Check& c) { return c.name == name; });
    if (!found) throw Error("run_suite: coverage manifest entry missing a check: " + name);
  }

  SuiteReport report;
  report.seed = seed;
  report.dims_tested = dims;
  report.tolerance = tolerance;
  report.checks.resize(checks.size());

  const int nthreads = std::max(1, std::min<int>(thread_count(), static_cast<int>(checks.size())));
  std::vector<std::future<void>> futures;
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    while (true) {
      const size_t i = next.fetch_add(1);
      if (i >= checks.size()) return;
      Rng rng = derived_rng(seed, checks[i].name);
      CheckResult res;
      res.name = checks[i].name;
      res.trials = trials;
      res.equality = checks[i].equality;
      res.worst_slack = checks[i].run(rng, dims, trials);
      res.pass = res.equality ? std::abs(res.worst_slack) <= tolerance
                              : res.worst_slack >= -tolerance;
      report.checks[i] = std::move(res);
    }
  };
  for (int t = 0; t < nthreads; ++t) futures.push_back(std::async(std::launch::async, worker));
  for (auto& f : futures) f.get();

  std::stable_sort(report.checks.begin(), report.checks.end(),
                   [](const CheckResult& a, const CheckResult& b) {
                     const double sa = a.equality ? -std::abs(a.worst_slack) : a.worst_slack;
                     const double sb = b.equality ? -std::abs(b.worst_slack) : b.worst_slack;
                     return sa < sb;
                   });
  report.all_pass = std::all_of(report.checks.begin(), report.checks.end(),
                                [](const CheckResult& c) { return c.pass; });
  return report;
}

std::string SuiteReport::to_json() const {
  nlohmann::json j;
  j["seed"] = seed;
  j["dims"] = dims_tested;
  j["tolerance"] = tolerance;
  j["all_pass"] = all_pass;
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    j["checks"].push_back({{"name", c.name},
                           {"trials", c.trials},
                           {"worst_slack", c.worst_slack},
                           {"equality", c.equality},
                           {"pass", c.pass}});
  }
  return j.dump(1);
}

std::string SuiteReport::to_table() const {
  std::ostringstream out;
  out << "check                                      kind        worst slack   result\n";
  out << "-----------------------------------------------------------------------------\n";
  char buf[64];
  for (const auto& c : checks) {
    std::snprintf(buf, sizeof(buf), "%+.3e", c.worst_slack);
    out << c.name;
    for (size_t i = c.name.size(); i < 43; ++i) out << ' ';
    out << (c.equality ? "equality  " : "inequality") << "  " << buf << "   "
        << (c.pass ? "pass" : "FAIL") << "\n";
  }
  out << (all_pass ? "all checks passed\n" : "FAILURES present\n");
  return out.str();
}

}  // namespace qdich

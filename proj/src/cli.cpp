#include "qdich/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "qdich/channel_opt.hpp"
#include "qdich/state_io.hpp"
#include "qdich/verify.hpp"

namespace qdich {

namespace {

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

int thread_count() {
  if (const char* env = std::getenv("QDICH_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// run fn(i) for i in [0, n), preserving result order regardless of scheduling
template <typename T, typename Fn>
std::vector<T> ordered_parallel(int n, Fn&& fn) {
  std::vector<T> out(n);
  const int nthreads = std::max(1, std::min(thread_count(), n));
  std::atomic<int> next{0};
  auto worker = [&]() {
    while (true) {
      const int i = next.fetch_add(1);
      if (i >= n) return;
      out[i] = fn(i);
    }
  };
  std::vector<std::future<void>> futs;
  for (int t = 0; t < nthreads; ++t) futs.push_back(std::async(std::launch::async, worker));
  for (auto& f : futs) f.get();
  return out;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw InvalidInputError("cannot write output file: " + path);
  out << text;
}

DivergenceKind parse_kind(const std::string& s) {
  if (s == "sandwiched") return DivergenceKind::Sandwiched;
  if (s == "petz") return DivergenceKind::Petz;
  if (s == "log-euclidean") return DivergenceKind::LogEuclidean;
  if (s == "umegaki") return DivergenceKind::Umegaki;
  if (s == "max") return DivergenceKind::Max;
  throw InvalidInputError("--kind: unknown divergence kind: " + s);
}

struct SweepRow {
  double r;
  double exponent;
  double argmax;
  double rate;
};

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "r,exponent,argmax_order,rate_threshold\n";
  for (const auto& row : rows) {
    out << fmt12(row.r) << "," << fmt12(row.exponent) << "," << fmt12(row.argmax) << ","
        << fmt12(row.rate) << "\n";
  }
  return out.str();
}

std::string sweep_json(const std::vector<SweepRow>& rows) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& row : rows) {
    j.push_back({{"r", row.r},
                 {"exponent", row.exponent},
                 {"argmax_order", row.argmax},
                 {"rate_threshold", row.rate}});
  }
  return j.dump(1) + "\n";
}

struct FiniteRow {
  int n;
  int m;
  std::string kind;
  double error;
  double fidelity_sq;
  double neg_log_fid_rate;
  double solver_gap;
};

std::string finite_csv(const std::vector<FiniteRow>& rows) {
  std::ostringstream out;
  out << "n,m,kind,error,fidelity_sq,neg_log_fid_rate,solver_gap\n";
  for (const auto& r : rows) {
    out << r.n << "," << r.m << "," << r.kind << "," << fmt12(r.error) << ","
        << fmt12(r.fidelity_sq) << "," << fmt12(r.neg_log_fid_rate) << ","
        << fmt12(r.solver_gap) << "\n";
  }
  return out.str();
}

std::string finite_json(const std::vector<FiniteRow>& rows) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& r : rows) {
    j.push_back({{"n", r.n},
                 {"m", r.m},
                 {"kind", r.kind},
                 {"error", r.error},
                 {"fidelity_sq", r.fidelity_sq},
                 {"neg_log_fid_rate", r.neg_log_fid_rate},
                 {"solver_gap", r.solver_gap}});
  }
  return j.dump(1) + "\n";
}

int dispatch(const std::vector<std::string>& args) {
  CLI::App app{"quantum dichotomy exponents and finite-blocklength oracles"};
  app.require_subcommand(1);

  std::string rho_path, sigma_path;
  std::string rho1_path, sigma1_path, rho2_path, sigma2_path;
  std::string kind_str = "sandwiched";
  std::string form = "purified";
  std::string out_path;
  std::string format = "csv";
  std::string dist_kind = "purified";
  double alpha = 0.5, r = 1.0, tol = 1e-7, eps = 0.1, tolerance = 1e-6;
  double r_start = 1.0, r_stop = 3.0;
  int r_count = 21, n = 1, n_max = 4;
  std::uint64_t seed = 42;
  int trials = 200;
  std::vector<int> dims = {2, 3, 4};

  auto* div = app.add_subcommand("div", "evaluate a divergence between two states");
  div->add_option("--kind", kind_str, "sandwiched|petz|log-euclidean|umegaki|max");
  div->add_option("--alpha", alpha, "Renyi order");
  div->add_option("--rho", rho_path, "state file")->required();
  div->add_option("--sigma", sigma_path, "state file")->required();

  auto add_dichotomy_opts = [&](CLI::App* cmd) {
    cmd->add_option("--rho1", rho1_path)->required();
    cmd->add_option("--sigma1", sigma1_path)->required();
    cmd->add_option("--rho2", rho2_path)->required();
    cmd->add_option("--sigma2", sigma2_path)->required();
  };

  auto* expo = app.add_subcommand("exponent", "strong converse exponent at one rate");
  add_dichotomy_opts(expo);
  expo->add_option("--r", r, "transformation rate")->required();
  expo->add_option("--form", form, "purified|trace|flat|minimax");

  auto* sweep = app.add_subcommand("sweep", "exponent over an r grid, CSV/JSON");
  add_dichotomy_opts(sweep);
  sweep->add_option("--r-start", r_start)->required();
  sweep->add_option("--r-stop", r_stop)->required();
  sweep->add_option("--r-count", r_count)->check(CLI::PositiveNumber);
  sweep->add_option("--out", out_path);
  sweep->add_option("--format", format, "csv|json");

  auto* finite = app.add_subcommand("finite-n", "finite-blocklength table for n = 1..N");
  add_dichotomy_opts(finite);
  finite->add_option("--r", r)->required();
  finite->add_option("--n-max", n_max)->check(CLI::PositiveNumber);
  finite->add_option("--kind", dist_kind, "purified|trace");
  finite->add_option("--tol", tol);
  finite->add_option("--out", out_path);
  finite->add_option("--format", format, "csv|json");

  auto* mmax = app.add_subcommand("mmax", "largest achievable m within error eps");
  add_dichotomy_opts(mmax);
  mmax->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  mmax->add_option("--eps", eps)->required();
  mmax->add_option("--kind", dist_kind, "purified|trace");
  mmax->add_option("--tol", tol);

  auto* ver = app.add_subcommand("verify", "run the property-check suite");
  ver->add_option("--seed", seed);
  ver->add_option("--trials", trials)->check(CLI::PositiveNumber);
  ver->add_option("--dims", dims, "dimensions, e.g. --dims 2 3 4");
  ver->add_option("--tol", tolerance);
  ver->add_option("--out", out_path, "JSON report path");

  try {
    // CLI11's vector overload consumes arguments in reverse order
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      std::cout << app.help() << std::flush;
      return 0;
    }
    std::cerr << "argument error: " << e.what() << "\n";
    return 1;
  }

  if (tol <= 0.0 || tolerance <= 0.0) {
    std::cerr << "validation error: --tol must be positive\n";
    return 1;
  }

  if (div->parsed()) {
    const DensityOperator rho = load_density(rho_path);
    const DivergenceKind kind = parse_kind(kind_str);
    DivergenceValue v;
    if (kind == DivergenceKind::Umegaki) {
      v = umegaki(rho, load_hermitian(sigma_path));
    } else if (kind == DivergenceKind::Max) {
      v = d_max(rho, load_hermitian(sigma_path));
    } else {
      v = renyi_divergence(kind, alpha, rho, load_hermitian(sigma_path));
    }
    std::cout << fmt12(v.value);
    if (v.near_one_fallback) std::cout << "  # order within 1e-4 of 1: evaluated as umegaki";
    std::cout << "\n";
    return 0;
  }

  if (expo->parsed()) {
    const Dichotomy d1(load_density(rho1_path), load_density(sigma1_path));
    const Dichotomy d2(load_density(rho2_path), load_density(sigma2_path));
    ExponentResult res;
    if (form == "purified") {
      res = sc_exponent_purified(d1, d2, r);
    } else if (form == "trace") {
      res = sc_exponent_trace_pure(d1, d2, r);
    } else if (form == "flat") {
      res = f_flat_alpha_form(d1, d2, r);
    } else if (form == "minimax") {
      res = f_minimax_delta_form(d1, d2, r);
    } else {
      std::cerr << "validation error: --form must be purified|trace|flat|minimax\n";
      return 1;
    }
    std::cout << "value " << fmt12(res.value) << "\n";
    std::cout << "argmax_order " << fmt12(res.argmax_order) << "\n";
    std::cout << "rate_threshold " << fmt12(res.rate_threshold)
              << (res.rate_indeterminate ? "  # indeterminate (0/0)" : "") << "\n";
    return 0;
  }

  if (sweep->parsed()) {
    if (r_count < 1) {
      std::cerr << "validation error: --r-count must be >= 1\n";
      return 1;
    }
    const Dichotomy d1(load_density(rho1_path), load_density(sigma1_path));
    const Dichotomy d2(load_density(rho2_path), load_density(sigma2_path));
    auto rows = ordered_parallel<SweepRow>(r_count, [&](int i) {
      const double ri = r_count == 1
                            ? r_start
                            : r_start + (r_stop - r_start) * static_cast<double>(i) / (r_count - 1);
      const ExponentResult res = sc_exponent_purified(d1, d2, ri);
      return SweepRow{ri, res.value, res.argmax_order, res.rate_threshold};
    });
    write_output(out_path, format == "json" ? sweep_json(rows) : sweep_csv(rows));
    return 0;
  }

  if (finite->parsed()) {
    const Dichotomy d1(load_density(rho1_path), load_density(sigma1_path));
    const Dichotomy d2(load_density(rho2_path), load_density(sigma2_path));
    const DistanceKind kind = dist_kind == "trace" ? DistanceKind::Trace : DistanceKind::Purified;
    auto rows = ordered_parallel<FiniteRow>(n_max, [&](int i) {
      const int ni = i + 1;
      const FiniteBlockResult fb = eps_at_rate(d1, d2, r, ni, kind, tol);
      const double rate = -std::log2(std::max(fb.optimal_fidelity_sq, 1e-300)) / ni;
      return FiniteRow{ni,       fb.m,
                       dist_kind, fb.optimal_error,
                       fb.optimal_fidelity_sq, rate,
                       fb.solver_gap};
    });
    write_output(out_path, format == "json" ? finite_json(rows) : finite_csv(rows));
    return 0;
  }

  if (mmax->parsed()) {
    const Dichotomy d1(load_density(rho1_path), load_density(sigma1_path));
    const Dichotomy d2(load_density(rho2_path), load_density(sigma2_path));
    const DistanceKind kind = dist_kind == "trace" ? DistanceKind::Trace : DistanceKind::Purified;
    const MaxTransformResult res = max_transform_count(d1, d2, n, eps, kind, tol);
    std::cout << res.m << "\n";
    if (!res.monotonicity_ok) {
      std::cerr << "warning: error sequence not monotone on visited points\n";
    }
    return 0;
  }

  if (ver->parsed()) {
    const SuiteReport report = run_suite(seed, trials, dims, tolerance);
    std::cout << report.to_table();
    if (!out_path.empty()) write_output(out_path, report.to_json() + "\n");
    return report.all_pass ? 0 : 3;
  }

  return 1;
}

}  // namespace

int run_command(const std::vector<std::string>& args) {
  try {
    return dispatch(args);
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << " (gap " << e.achieved_gap << ")\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace qdich

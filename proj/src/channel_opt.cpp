#include "qdich/channel_opt.hpp"

#include <algorithm>
#include <cmath>

#include "qdich/operators.hpp"
#include "qdich/sdp.hpp"

namespace qdich {

namespace {

void check_state_inputs(const DensityOperator& sigma_t) {
  // exact sigma-constraint feasibility is witnessed by the replacement channel,
  // which requires sigma_t to be a state; DensityOperator already guarantees it
  if (std::abs(sigma_t.eigenvalues().sum() - 1.0) > 1e-9) {
    throw InvalidInputError("solver: sigma target must have unit trace");
  }
}

void check_choi_cap(int di, int dout) {
  if (static_cast<long long>(di) * dout > kChoiDimCap) {
    throw DimensionCapError("general SDP path: Choi dimension " + std::to_string(di) + "*" +
                            std::to_string(dout) + " exceeds cap " + std::to_string(kChoiDimCap));
  }
}

// shared constraint families: (1) Tr_out J = I_in over a Hermitian basis of the
// input space; (2) Tr_in[(sigma_in^T (x) .) J] = sigma_t over a traceless basis
// of the output space (the trace component is implied by (1)).
void add_cptp_constraints(sdp::HermitianProblem& prob, const DensityOperator& sigma_in,
                          const DensityOperator& sigma_t, int di, int dout) {
  const Matrix io = Matrix::Identity(dout, dout);
  for (const Matrix& e : sdp::hermitian_basis(di)) {
    prob.constraints.push_back({{{0, kron(e, io)}}, e.trace().real()});
  }
  const Matrix sT = sigma_in.entries().transpose();
  for (const Matrix& f : sdp::hermitian_basis_traceless(dout)) {
    prob.constraints.push_back({{{0, kron(sT, f)}}, (f * sigma_t.entries()).trace().real()});
  }
}

ChoiChannel extract_channel(const Matrix& j, int di, int dout) {
  // round solver noise: project onto the PSD cone before constructing
  HermitianOperator h(j);
  RealVector ev = h.eigenvalues();
  for (int i = 0; i < ev.size(); ++i) ev(i) = std::max(ev(i), 0.0);
  return ChoiChannel(di, dout, HermitianOperator::from_spectrum(ev, h.eigenvectors()),
                     /*validate=*/false);
}

}  // namespace

FiniteBlockResult solve_optimal_fidelity(const DensityOperator& rho_in,
                                         const DensityOperator& sigma_in,
                                         const DensityOperator& rho_t,
                                         const DensityOperator& sigma_t, double tol) {
  if (rho_in.dim() != sigma_in.dim() || rho_t.dim() != sigma_t.dim()) {
    throw InvalidInputError("solve_optimal_fidelity: dichotomy dimensions mismatch");
  }
  check_state_inputs(sigma_t);
  const int di = rho_in.dim();
  const int dout = rho_t.dim();
  check_choi_cap(di, dout);

  // fidelity block [[G, X],[X^+, rho_t]] with the fixed corner compressed to
  // supp(rho_t); PSD forces the coupling to vanish on ker(rho_t)
  const Matrix bt = support_basis(rho_t.op(), rho_t.rank_tolerance());
  const int kt = static_cast<int>(bt.cols());
  const Matrix rt = compress(rho_t.entries(), bt);
  const int dw = dout + kt;

  sdp::HermitianProblem prob;
  prob.dims = {di * dout, dw};
  Matrix k = Matrix::Zero(dw, dw);
  k.topRightCorner(dout, kt) = 0.5 * bt;
  k.bottomLeftCorner(kt, dout) = 0.5 * bt.adjoint();
  prob.objective = {Matrix::Zero(di * dout, di * dout), -k};

  add_cptp_constraints(prob, sigma_in, sigma_t, di, dout);
  // W11 = Tr_in[(rho_in^T (x) .) J]
  const Matrix rT = rho_in.entries().transpose();
  for (const Matrix& f : sdp::hermitian_basis(dout)) {
    Matrix aw = Matrix::Zero(dw, dw);
    aw.topLeftCorner(dout, dout) = -f;
    prob.constraints.push_back({{{0, kron(rT, f)}, {1, aw}}, 0.0});
  }
  // W22 = rho_t compressed
  for (const Matrix& f : sdp::hermitian_basis(kt)) {
    Matrix aw = Matrix::Zero(dw, dw);
    aw.bottomRightCorner(kt, kt) = f;
    prob.constraints.push_back({{{1, aw}}, (f * rt).trace().real()});
  }

  sdp::Options opts;
  opts.tol = tol;
  const sdp::HermitianSolution s = sdp::solve_hermitian(prob, opts);
  if (!s.converged && s.rel_gap > 10 * tol) {
    throw SolverError("solve_optimal_fidelity: interior-point method did not reach tolerance",
                      -s.primal_obj, -s.dual_obj, s.rel_gap);
  }
  double f = -0.5 * (s.primal_obj + s.dual_obj);
  f = std::clamp(f, 0.0, 1.0);

  FiniteBlockResult out;
  out.distance_kind = DistanceKind::Purified;
  out.optimal_fidelity_sq = f * f;
  out.optimal_error = std::sqrt(std::max(0.0, 1.0 - f * f));
  out.solver_gap = s.rel_gap;
  out.channel = extract_channel(s.X[0], di, dout);
  return out;
}

FiniteBlockResult solve_optimal_trace(const DensityOperator& rho_in,
                                      const DensityOperator& sigma_in,
                                      const DensityOperator& rho_t,
                                      const DensityOperator& sigma_t, double tol) {
  if (rho_in.dim() != sigma_in.dim() || rho_t.dim() != sigma_t.dim()) {
    throw InvalidInputError("solve_optimal_trace: dichotomy dimensions mismatch");
  }
  check_state_inputs(sigma_t);
  const int di = rho_in.dim();
  const int dout = rho_t.dim();
  check_choi_cap(di, dout);

  sdp::HermitianProblem prob;
  prob.dims = {di * dout, dout, dout};
  prob.objective = {Matrix::Zero(di * dout, di * dout), 0.5 * Matrix::Identity(dout, dout),
                    0.5 * Matrix::Identity(dout, dout)};
  add_cptp_constraints(prob, sigma_in, sigma_t, di, dout);
  // A - B - Tr_in[(rho_in^T (x) .) J] = -rho_t
  const Matrix rT = rho_in.entries().transpose();
  for (const Matrix& f : sdp::hermitian_basis(dout)) {
    prob.constraints.push_back({{{0, -kron(rT, f)}, {1, f}, {2, -f}},
                                -(f * rho_t.entries()).trace().real()});
  }

  sdp::Options opts;
  opts.tol = tol;
  const sdp::HermitianSolution s = sdp::solve_hermitian(prob, opts);
  if (!s.converged && s.rel_gap > 10 * tol) {
    throw SolverError("solve_optimal_trace: interior-point method did not reach tolerance",
                      s.primal_obj, s.dual_obj, s.rel_gap);
  }
  double d = std::clamp(0.5 * (s.primal_obj + s.dual_obj), 0.0, 1.0);

  FiniteBlockResult out;
  out.distance_kind = DistanceKind::Trace;
  out.optimal_error = d;
  out.solver_gap = s.rel_gap;
  ChoiChannel ch = extract_channel(s.X[0], di, dout);
  // diagnostic fidelity of the trace-optimal channel
  const double fd = fidelity(DensityOperator(ch.apply(rho_in.op())), rho_t);
  out.optimal_fidelity_sq = fd * fd;
  out.channel = std::move(ch);
  return out;
}

std::optional<ClassicalInstance> classical_reduce(const Dichotomy& d1, const Dichotomy& d2) {
  auto commute = [](const Matrix& a, const Matrix& b) {
    return (a * b - b * a).norm() <= 1e-10 * std::max(1.0, a.norm() * b.norm());
  };
  if (!commute(d1.rho.entries(), d1.sigma.entries()) ||
      !commute(d2.rho.entries(), d2.sigma.entries())) {
    return std::nullopt;
  }

  // joint eigenbasis of a commuting pair: diagonalize sigma, then rho inside
  // each degenerate eigenspace of sigma
  auto joint_basis = [](const DensityOperator& rho, const DensityOperator& sigma) {
    const int d = rho.dim();
    Matrix u(d, d);
    const RealVector& ev = sigma.eigenvalues();
    const double cluster_tol = 1e-10 * std::max(ev(0) - ev(d - 1), 1.0);
    int start = 0;
    int col = 0;
    for (int i = 1; i <= d; ++i) {
      if (i == d || (ev(i - 1) - ev(i)) > cluster_tol) {
        const int w = i - start;
        const Matrix block = sigma.eigenvectors().middleCols(start, w);
        const HermitianOperator sub(compress(rho.entries(), block));
        const Matrix rotated = block * sub.eigenvectors();
        u.middleCols(col, w) = rotated;
        col += w;
        start = i;
      }
    }
    return u;
  };

  ClassicalInstance inst;
  inst.basis1 = joint_basis(d1.rho, d1.sigma);
  inst.basis2 = joint_basis(d2.rho, d2.sigma);
  auto diag_of = [](const Matrix& u, const Matrix& x, double& offdiag) {
    const Matrix m = u.adjoint() * x * u;
    offdiag = (m - Matrix(m.diagonal().asDiagonal())).norm();
    return m.diagonal().real().eval();
  };
  double off = 0.0, worst = 0.0;
  inst.p1 = diag_of(inst.basis1, d1.rho.entries(), off);
  worst = std::max(worst, off);
  inst.s1 = diag_of(inst.basis1, d1.sigma.entries(), off);
  worst = std::max(worst, off);
  inst.p2 = diag_of(inst.basis2, d2.rho.entries(), off);
  worst = std::max(worst, off);
  inst.s2 = diag_of(inst.basis2, d2.sigma.entries(), off);
  worst = std::max(worst, off);
  if (worst > 1e-8) return std::nullopt;  // clustering failed to split a near-degeneracy
  for (auto* v : {&inst.p1, &inst.s1, &inst.p2, &inst.s2}) {
    for (int i = 0; i < v->size(); ++i) (*v)(i) = std::max((*v)(i), 0.0);
  }
  return inst;
}

// ---------------------------------------------------------------------------
// classical fast path
// ---------------------------------------------------------------------------

namespace {

struct Collapsed {
  RealVector p, s;
  std::vector<std::vector<int>> members;  // original coordinates per class
};

// merge coordinates with equal likelihood ratio p/s (infinite-ratio atoms form
// one class); exact for this problem, see the pair-sufficiency recovery maps
Collapsed collapse_by_ratio(const RealVector& p, const RealVector& s) {
  const int n = static_cast<int>(p.size());
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  auto ratio = [&](int i) {
    if (s(i) > 0.0) return p(i) / s(i);
    return infinity();
  };
  std::sort(order.begin(), order.end(), [&](int a, int b) { return ratio(a) < ratio(b); });

  Collapsed out;
  std::vector<double> ps, ss;
  for (int idx = 0; idx < n; ++idx) {
    const int i = order[idx];
    if (p(i) <= 0.0 && s(i) <= 0.0) continue;  // dead coordinate
    const double r = ratio(i);
    bool merged = false;
    if (!out.members.empty()) {
      const int last = out.members.back().back();
      const double rl = ratio(last);
      const bool both_inf = std::isinf(r) && std::isinf(rl);
      if (both_inf || (!std::isinf(r) && !std::isinf(rl) &&
                       std::abs(r - rl) <= 1e-11 * std::max(1.0, std::max(r, rl)))) {
        merged = true;
      }
    }
    if (merged) {
      out.members.back().push_back(i);
      ps.back() += p(i);
      ss.back() += s(i);
    } else {
      out.members.push_back({i});
      ps.push_back(p(i));
      ss.push_back(s(i));
    }
  }
  out.p = Eigen::Map<RealVector>(ps.data(), ps.size());
  out.s = Eigen::Map<RealVector>(ss.data(), ss.size());
  return out;
}

double classical_objective(const RealMatrix& t, const RealVector& p1, const RealVector& p2,
                           double mu = 0.0) {
  const RealVector q = t * p1;
  double f = 0.0;
  for (int j = 0; j < q.size(); ++j) {
    f += std::sqrt(std::max(q(j) + mu, 0.0) * p2(j));
  }
  return f;
}

// Euclidean projection onto {T >= 0} intersect {1^T T = 1^T, T s1 = s2} by
// Dykstra's alternating scheme; the affine projection solves a bordered
// least-squares system factored once.
class PolytopeProjector {
 public:
  PolytopeProjector(const RealVector& s1, const RealVector& s2)
      : s1_(s1), s2_(s2), din_(static_cast<int>(s1.size())), dout_(static_cast<int>(s2.size())) {
    RealMatrix a(din_ + dout_, din_ + dout_);
    a.setZero();
    a.topLeftCorner(din_, din_) = dout_ * RealMatrix::Identity(din_, din_);
    for (int k = 0; k < din_; ++k)
      for (int j = 0; j < dout_; ++j) a(k, din_ + j) = s1_(k);
    for (int j = 0; j < dout_; ++j)
      for (int k = 0; k < din_; ++k) a(din_ + j, k) = s1_(k);
    a.bottomRightCorner(dout_, dout_) = s1_.squaredNorm() * RealMatrix::Identity(dout_, dout_);
    cod_.compute(a);
  }

  RealMatrix affine(const RealMatrix& v) const {
    RealVector rhs(din_ + dout_);
    rhs.head(din_) = RealVector::Ones(din_) - v.colwise().sum().transpose();
    rhs.tail(dout_) = s2_ - v * s1_;
    const RealVector sol = cod_.solve(rhs);
    RealMatrix out = v;
    out.rowwise() += sol.head(din_).transpose();
    out += sol.tail(dout_) * s1_.transpose();
    return out;
  }

  RealMatrix project(const RealMatrix& v, int iters = 400, double tol = 1e-13) const {
    RealMatrix x = v;
    RealMatrix p = RealMatrix::Zero(dout_, din_);
    RealMatrix q = RealMatrix::Zero(dout_, din_);
    for (int it = 0; it < iters; ++it) {
      const RealMatrix y = affine(x + p);
      p = x + p - y;
      RealMatrix xn = (y + q).cwiseMax(0.0);
      q = y + q - xn;
      const double delta = (xn - x).cwiseAbs().maxCoeff();
      x = std::move(xn);
      if (delta < tol) break;
    }
    return x;
  }

 private:
  RealVector s1_, s2_;
  int din_, dout_;
  Eigen::CompleteOrthogonalDecomposition<RealMatrix> cod_;
};

double feasibility_residual(const RealMatrix& t, const RealVector& s1, const RealVector& s2) {
  double r = (t * s1 - s2).cwiseAbs().maxCoeff();
  r = std::max(r, (t.colwise().sum().transpose() - RealVector::Ones(t.cols())).cwiseAbs().maxCoeff());
  r = std::max(r, std::max(0.0, -t.minCoeff()));
  return r;
}

// active-set Newton polish on the exact objective; keeps the best feasible
// iterate, so it can only improve on the PGA output
RealMatrix newton_polish(RealMatrix t, const RealVector& p1, const RealVector& s1,
                         const RealVector& p2, const RealVector& s2,
                         const PolytopeProjector& proj, double tol) {
  const int din = static_cast<int>(p1.size());
  const int dout = static_cast<int>(p2.size());
  double best_f = classical_objective(t, p1, p2);
  RealMatrix best_t = t;

  const double active_thresh = 1e-12;
  for (int round = 0; round < 60; ++round) {
    std::vector<std::pair<int, int>> free;  // (j,k)
    for (int j = 0; j < dout; ++j)
      for (int k = 0; k < din; ++k)
        if (t(j, k) > active_thresh) free.emplace_back(j, k);
    const int nf = static_cast<int>(free.size());
    if (nf == 0) break;

    // constraints on the free entries
    RealMatrix c(din + dout, nf);
    c.setZero();
    for (int i = 0; i < nf; ++i) {
      const auto [j, k] = free[i];
      c(k, i) = 1.0;
      c(din + j, i) = s1(k);
    }
    // null space of c = orthogonal complement of range(c^T)
    Eigen::ColPivHouseholderQR<RealMatrix> qr(c.transpose());
    const int rank = static_cast<int>(qr.rank());
    const int nz = nf - rank;
    if (nz <= 0) break;
    const RealMatrix qfull = qr.householderQ() * RealMatrix::Identity(nf, nf);
    const RealMatrix z = qfull.rightCols(nz);

    RealVector q_out = t * p1;
    RealVector grad_q(dout), hess_q(dout);
    for (int j = 0; j < dout; ++j) {
      const double qj = std::max(q_out(j), 1e-30);
      grad_q(j) = 0.5 * std::sqrt(p2(j) / qj);
      hess_q(j) = -0.25 * std::sqrt(p2(j)) * std::pow(qj, -1.5);
    }
    RealVector g(nf);
    for (int i = 0; i < nf; ++i) {
      const auto [j, k] = free[i];
      g(i) = grad_q(j) * p1(k);
    }
    const RealVector gz = z.transpose() * g;
    if (gz.norm() < tol * 1e-2) {
      // KKT multipliers: release an active variable with positive reduced gradient
      const RealVector nu = qr.solve(g);
      double best_gain = tol;
      int rel_j = -1, rel_k = -1;
      for (int j = 0; j < dout; ++j)
        for (int k = 0; k < din; ++k) {
          if (t(j, k) > active_thresh) continue;
          const double reduced = grad_q(j) * p1(k) - nu(k) - nu(din + j) * s1(k);
          if (reduced > best_gain) {
            best_gain = reduced;
            rel_j = j;
            rel_k = k;
          }
        }
      if (rel_j < 0) break;  // KKT satisfied
      t(rel_j, rel_k) = 4.0 * active_thresh;
      continue;
    }

    // reduced Newton system
    RealMatrix hz = RealMatrix::Zero(nz, nz);
    for (int j = 0; j < dout; ++j) {
      RealVector aj = RealVector::Zero(nf);
      bool touched = false;
      for (int i = 0; i < nf; ++i) {
        if (free[i].first == j) {
          aj(i) = p1(free[i].second);
          touched = true;
        }
      }
      if (!touched) continue;
      const RealVector zaj = z.transpose() * aj;
      hz += hess_q(j) * zaj * zaj.transpose();
    }
    hz -= 1e-12 * hz.norm() * RealMatrix::Identity(nz, nz);
    RealVector dv = (-hz).ldlt().solve(gz);
    RealVector dir = z * dv;
    if (!dir.allFinite()) break;

    // step to the boundary of the nonnegativity box, then backtrack
    double step = 1.0;
    for (int i = 0; i < nf; ++i) {
      if (dir(i) < 0.0) step = std::min(step, -t(free[i].first, free[i].second) / dir(i));
    }
    bool improved = false;
    for (int bt = 0; bt < 30 && !improved; ++bt) {
      RealMatrix tn = t;
      for (int i = 0; i < nf; ++i) {
        tn(free[i].first, free[i].second) =
            std::max(0.0, t(free[i].first, free[i].second) + step * dir(i));
      }
      if (feasibility_residual(tn, s1, s2) > 1e-9) tn = proj.project(tn, 600);
      const double fn = classical_objective(tn, p1, p2);
      if (fn > best_f + 1e-16) {
        t = tn;
        best_f = fn;
        best_t = tn;
        improved = true;
      } else {
        step *= 0.5;
      }
    }
    if (!improved) break;
  }
  return best_t;
}

}  // namespace

ClassicalFidelityResult solve_classical_fidelity(const RealVector& p1, const RealVector& s1,
                                                 const RealVector& p2, const RealVector& s2,
                                                 double tol) {
  const Collapsed in = collapse_by_ratio(p1, s1);
  const Collapsed outc = collapse_by_ratio(p2, s2);
  const int din = static_cast<int>(in.p.size());
  const int dout = static_cast<int>(outc.p.size());

  const PolytopeProjector proj(in.s, outc.s);
  // feasible start: replacement channel (columns = s2 classes)
  RealMatrix t(dout, din);
  for (int k = 0; k < din; ++k) t.col(k) = outc.s;
  if (feasibility_residual(t, in.s, outc.s) > 1e-12) t = proj.project(t);

  double best_f = classical_objective(t, in.p, outc.p);
  RealMatrix best_t = t;

  // PGA with diminishing steps over a smoothing continuation
  const double pmax = std::max(in.p.maxCoeff(), 1e-12);
  for (const double mu : {1e-4, 1e-8, 1e-12}) {
    const double gcap = 0.5 / std::sqrt(mu);  // gradient bound under smoothing
    const double step0 = 0.5 / (gcap * pmax);
    for (int k = 1; k <= 240; ++k) {
      const RealVector q = t * in.p;
      RealMatrix grad(dout, din);
      for (int j = 0; j < dout; ++j) {
        const double gj = 0.5 * std::sqrt(outc.p(j) / std::max(q(j) + mu, 1e-300));
        for (int c = 0; c < din; ++c) grad(j, c) = gj * in.p(c);
      }
      t = proj.project(t + (step0 / std::sqrt(static_cast<double>(k))) * grad);
      const double f = classical_objective(t, in.p, outc.p);
      if (f > best_f && feasibility_residual(t, in.s, outc.s) < 1e-9) {
        best_f = f;
        best_t = t;
      }
    }
    t = best_t;
  }

  best_t = newton_polish(best_t, in.p, in.s, outc.p, outc.s, proj, tol);
  best_f = classical_objective(best_t, in.p, outc.p);

  // expand to the full coordinates: T_full = R (out recovery) * T * Sigma (in collapse)
  const int nfull_in = static_cast<int>(p1.size());
  const int nfull_out = static_cast<int>(p2.size());
  RealMatrix full = RealMatrix::Zero(nfull_out, nfull_in);
  for (int c = 0; c < dout; ++c) {
    for (int x : outc.members[c]) {
      const double w = outc.s(c) > 0.0 ? s2(x) / outc.s(c) : p2(x) / outc.p(c);
      for (int k = 0; k < din; ++k) {
        for (int y : in.members[k]) full(x, y) = w * best_t(c, k);
      }
    }
  }
  // dead input coordinates (p = s = 0) never receive mass; make their columns
  // stochastic anyway
  for (int y = 0; y < nfull_in; ++y) {
    const double cs = full.col(y).sum();
    if (cs <= 0.0) {
      full.col(y) = s2;
    }
  }

  ClassicalFidelityResult res;
  res.fidelity = std::clamp(best_f, 0.0, 1.0);
  res.t = std::move(full);
  return res;
}

namespace {

RealVector vector_power(const RealVector& v, int n) {
  RealVector out = v;
  for (int i = 1; i < n; ++i) {
    RealVector next(out.size() * v.size());
    for (int a = 0; a < out.size(); ++a)
      for (int b = 0; b < v.size(); ++b) next(a * v.size() + b) = out(a) * v(b);
    out = std::move(next);
  }
  return out;
}

FiniteBlockResult classical_eps_at_rate(const ClassicalInstance& inst, int n, int m, double tol) {
  const long long lin = std::llround(std::pow(static_cast<double>(inst.p1.size()), n));
  const long long lout = std::llround(std::pow(static_cast<double>(inst.p2.size()), m));
  if (lin > kClassicalVectorCap || lout > kClassicalVectorCap) {
    throw DimensionCapError("classical fast path: tensor-power vector length " +
                            std::to_string(std::max(lin, lout)) + " exceeds cap " +
                            std::to_string(kClassicalVectorCap));
  }
  const RealVector p1 = vector_power(inst.p1, n);
  const RealVector s1 = vector_power(inst.s1, n);
  const RealVector p2 = vector_power(inst.p2, m);
  const RealVector s2 = vector_power(inst.s2, m);
  const ClassicalFidelityResult cf = solve_classical_fidelity(p1, s1, p2, s2, tol);

  FiniteBlockResult out;
  out.n = n;
  out.m = m;
  out.distance_kind = DistanceKind::Purified;
  out.optimal_fidelity_sq = cf.fidelity * cf.fidelity;
  out.solver_gap = tol;
  out.optimal_error = std::sqrt(std::max(0.0, 1.0 - out.optimal_fidelity_sq));
  out.stochastic_map = cf.t;
  if (lin * lout <= kChoiDimCap) {
    const Matrix bin = Matrix::Identity(static_cast<int>(lin), static_cast<int>(lin));
    const Matrix bout = Matrix::Identity(static_cast<int>(lout), static_cast<int>(lout));
    out.channel = ChoiChannel::classical(cf.t, bin, bout);
  }
  return out;
}

}  // namespace

FiniteBlockResult eps_at_rate(const Dichotomy& d1, const Dichotomy& d2, double r, int n,
                              DistanceKind kind, double tol) {
  if (n < 1) throw InvalidInputError("eps_at_rate: n must be >= 1");
  if (!(r > 0.0)) throw InvalidInputError("eps_at_rate: r must be > 0");
  const int m = static_cast<int>(std::floor(static_cast<double>(n) * r + 1e-9));
  if (m == 0) {
    FiniteBlockResult out;
    out.n = n;
    out.m = 0;
    out.distance_kind = kind;
    out.optimal_error = 0.0;
    out.optimal_fidelity_sq = 1.0;
    // trace-out channel: X -> Tr(X) on the 1-dimensional target space
    const long long din_ll = std::llround(std::pow(static_cast<double>(d1.dim()), n));
    if (din_ll <= kChoiDimCap) {
      const int din = static_cast<int>(din_ll);
      out.channel = ChoiChannel(din, 1, HermitianOperator(Matrix::Identity(din, din)));
    }
    return out;
  }

  const double din_pow = std::pow(static_cast<double>(d1.dim()), n);
  const double dout_pow = std::pow(static_cast<double>(d2.dim()), m);
  const bool sdp_feasible =
      din_pow * dout_pow <= static_cast<double>(kSdpPreferredCap);
  const auto classical = classical_reduce(d1, d2);
  if (!sdp_feasible && classical.has_value() && kind == DistanceKind::Purified) {
    return classical_eps_at_rate(*classical, n, m, tol);
  }
  if (din_pow * dout_pow > static_cast<double>(kChoiDimCap)) {
    throw DimensionCapError("eps_at_rate: Choi dimension " + std::to_string(din_pow * dout_pow) +
                            " exceeds cap " + std::to_string(kChoiDimCap) +
                            " and no classical reduction applies");
  }

  const DensityOperator rho_in = tensor_power(d1.rho, n);
  const DensityOperator sigma_in = tensor_power(d1.sigma, n);
  const DensityOperator rho_t = tensor_power(d2.rho, m);
  const DensityOperator sigma_t = tensor_power(d2.sigma, m);
  FiniteBlockResult out = (kind == DistanceKind::Purified)
                              ? solve_optimal_fidelity(rho_in, sigma_in, rho_t, sigma_t, tol)
                              : solve_optimal_trace(rho_in, sigma_in, rho_t, sigma_t, tol);
  out.n = n;
  out.m = m;
  return out;
}

MaxTransformResult max_transform_count(const Dichotomy& d1, const Dichotomy& d2, int n, double eps,
                                       DistanceKind kind, double tol, int m_cap) {
  if (eps < 0.0 || eps > 1.0) throw InvalidInputError("max_transform_count: eps must be in [0,1]");
  if (m_cap < 0) {
    // largest m under the dimension caps
    const auto classical = classical_reduce(d1, d2);
    double din_pow = std::pow(static_cast<double>(d1.dim()), n);
    int m = 0;
    while (true) {
      const double dout_pow = std::pow(static_cast<double>(d2.dim()), m + 1);
      const bool sdp_ok = din_pow * dout_pow <= static_cast<double>(kChoiDimCap);
      const bool classical_ok =
          classical.has_value() && kind == DistanceKind::Purified &&
          std::pow(static_cast<double>(d2.dim()), m + 1) <= static_cast<double>(kClassicalVectorCap) &&
          din_pow <= static_cast<double>(kClassicalVectorCap);
      if (!sdp_ok && !classical_ok) break;
      if (++m > (1 << 20)) break;
    }
    m_cap = m;
  }

  MaxTransformResult res;
  auto error_at = [&](int m) {
    if (m == 0) return 0.0;
    const double r = (static_cast<double>(m) + 0.5) / n;  // floor(n r) == m
    const FiniteBlockResult fb = eps_at_rate(d1, d2, r, n, kind, tol);
    res.visited.emplace_back(m, fb.optimal_error);
    return fb.optimal_error;
  };

  int lo = 0;                      // error(0) = 0 <= eps
  if (error_at(m_cap) <= eps + 1e-12) {
    res.m = m_cap;
  } else {
    int hi = m_cap;  // error(hi) > eps
    while (hi - lo > 1) {
      const int mid = (lo + hi) / 2;
      if (error_at(mid) <= eps + 1e-12) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    res.m = lo;
  }

  std::sort(res.visited.begin(), res.visited.end());
  for (size_t i = 1; i < res.visited.size(); ++i) {
    if (res.visited[i].second < res.visited[i - 1].second - 1e-6) {
      res.monotonicity_ok = false;
    }
  }
  return res;
}

}  // namespace qdich

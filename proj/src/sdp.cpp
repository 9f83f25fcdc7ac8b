#include "qdich/sdp.hpp"

#include <algorithm>
#include <cmath>

namespace qdich::sdp {

namespace {

bool chol_safe(const RealMatrix& m, Eigen::LLT<RealMatrix>& llt) {
  llt.compute(m);
  if (llt.info() == Eigen::Success) return true;
  const int d = static_cast<int>(m.rows());
  const double base = std::max(m.trace() / d, 1e-300);
  for (int t = 0; t < 8; ++t) {
    const double jit = base * std::pow(10.0, -14 + 2 * t);
    llt.compute(m + jit * RealMatrix::Identity(d, d));
    if (llt.info() == Eigen::Success) return true;
  }
  return false;
}

// largest a with M + a dM >= 0, via eigmin of L^-1 dM L^-T; 0 on factorization loss
double step_to_boundary(const std::vector<RealMatrix>& m, const std::vector<RealMatrix>& dm) {
  double amax = 1.0;
  Eigen::LLT<RealMatrix> llt;
  for (size_t k = 0; k < m.size(); ++k) {
    if (!chol_safe(m[k], llt)) return 0.0;
    const RealMatrix l = llt.matrixL();
    const RealMatrix li = l.triangularView<Eigen::Lower>().solve(
        RealMatrix::Identity(l.rows(), l.cols()));
    RealMatrix w = li * dm[k] * li.transpose();
    w = 0.5 * (w + w.transpose());
    const double lmin = Eigen::SelfAdjointEigenSolver<RealMatrix>(w).eigenvalues()(0);
    if (lmin < 0.0) amax = std::min(amax, -1.0 / lmin);
  }
  return amax;
}

}  // namespace

Solution solve(const Problem& prob, const Options& opts) {
  const int nb = static_cast<int>(prob.dims.size());
  const int m = static_cast<int>(prob.constraints.size());
  int ntot = 0;
  for (int d : prob.dims) ntot += d;

  double norm_c = 1.0, norm_b = 1.0;
  for (const auto& c : prob.objective) norm_c = std::max(norm_c, c.norm());
  for (const auto& c : prob.constraints) norm_b = std::max(norm_b, std::abs(c.rhs));
  const double zeta = std::max(10.0, 10.0 * std::sqrt(std::max(norm_c, norm_b)));

  Solution sol;
  sol.X.resize(nb);
  sol.S.resize(nb);
  for (int k = 0; k < nb; ++k) {
    sol.X[k] = zeta * RealMatrix::Identity(prob.dims[k], prob.dims[k]);
    sol.S[k] = zeta * RealMatrix::Identity(prob.dims[k], prob.dims[k]);
  }
  sol.y = RealVector::Zero(m);
  RealVector b(m);
  for (int i = 0; i < m; ++i) b(i) = prob.constraints[i].rhs;

  auto apply_A = [&](const std::vector<RealMatrix>& xs) {
    RealVector out = RealVector::Zero(m);
    for (int i = 0; i < m; ++i) {
      double acc = 0.0;
      for (const Term& t : prob.constraints[i].terms) {
        acc += (t.mat.array() * xs[t.block].array()).sum();
      }
      out(i) = acc;
    }
    return out;
  };
  auto apply_AT = [&](const RealVector& v) {
    std::vector<RealMatrix> out(nb);
    for (int k = 0; k < nb; ++k) out[k] = RealMatrix::Zero(prob.dims[k], prob.dims[k]);
    for (int i = 0; i < m; ++i) {
      for (const Term& t : prob.constraints[i].terms) out[t.block] += v(i) * t.mat;
    }
    return out;
  };

  Eigen::LLT<RealMatrix> llt;
  for (int it = 0; it < opts.max_iters; ++it) {
    double xs = 0.0;
    for (int k = 0; k < nb; ++k) xs += (sol.X[k].array() * sol.S[k].array()).sum();
    const double mu = xs / ntot;

    const RealVector rp = b - apply_A(sol.X);
    const std::vector<RealMatrix> aty = apply_AT(sol.y);
    std::vector<RealMatrix> rd(nb);
    double rd_norm2 = 0.0;
    for (int k = 0; k < nb; ++k) {
      rd[k] = prob.objective[k] - sol.S[k] - aty[k];
      rd_norm2 += rd[k].squaredNorm();
    }

    sol.primal_obj = 0.0;
    for (int k = 0; k < nb; ++k) {
      sol.primal_obj += (prob.objective[k].array() * sol.X[k].array()).sum();
    }
    sol.dual_obj = b.dot(sol.y);
    sol.rel_gap = std::abs(sol.primal_obj - sol.dual_obj) /
                  (1.0 + std::abs(sol.primal_obj) + std::abs(sol.dual_obj));
    sol.primal_res = rp.norm() / (1.0 + b.norm());
    sol.dual_res = std::sqrt(rd_norm2) / (1.0 + norm_c);
    sol.iterations = it;
    if (sol.rel_gap < opts.tol && sol.primal_res < opts.tol && sol.dual_res < opts.tol) {
      sol.converged = true;
      return sol;
    }

    // S^{-1} per block
    std::vector<RealMatrix> sinv(nb);
    bool stalled = false;
    for (int k = 0; k < nb; ++k) {
      if (!chol_safe(sol.S[k], llt)) {
        stalled = true;
        break;
      }
      sinv[k] = llt.solve(RealMatrix::Identity(prob.dims[k], prob.dims[k]));
    }
    if (stalled) break;

    // Schur complement M_ij = sum_k Tr(A_i X A_j S^{-1}); cache X A_i S^{-1}
    std::vector<std::vector<RealMatrix>> xas(m);
    for (int i = 0; i < m; ++i) {
      xas[i].reserve(prob.constraints[i].terms.size());
      for (const Term& t : prob.constraints[i].terms) {
        xas[i].push_back(sol.X[t.block] * t.mat * sinv[t.block]);
      }
    }
    RealMatrix schur = RealMatrix::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      for (int j = i; j < m; ++j) {
        double acc = 0.0;
        for (size_t ti = 0; ti < prob.constraints[i].terms.size(); ++ti) {
          const Term& a = prob.constraints[i].terms[ti];
          for (const Term& c : prob.constraints[j].terms) {
            if (a.block != c.block) continue;
            acc += (c.mat.array() * xas[i][ti].array()).sum();
          }
        }
        schur(i, j) = acc;
        schur(j, i) = acc;
      }
    }
    Eigen::LDLT<RealMatrix> schur_ldlt(schur +
                                       1e-13 * schur.trace() / std::max(m, 1) *
                                           RealMatrix::Identity(m, m));

    auto solve_dirs = [&](const std::vector<RealMatrix>& rc, std::vector<RealMatrix>& dx,
                          RealVector& dy, std::vector<RealMatrix>& ds) {
      RealVector rhs(m);
      for (int i = 0; i < m; ++i) {
        double acc = rp(i);
        for (const Term& t : prob.constraints[i].terms) {
          const RealMatrix w = (rc[t.block] - sol.X[t.block] * rd[t.block]) * sinv[t.block];
          acc -= (t.mat.array() * w.array()).sum();
        }
        rhs(i) = acc;
      }
      dy = schur_ldlt.solve(rhs);
      const std::vector<RealMatrix> atdy = apply_AT(dy);
      ds.resize(nb);
      dx.resize(nb);
      for (int k = 0; k < nb; ++k) {
        ds[k] = rd[k] - atdy[k];
        RealMatrix w = (rc[k] - sol.X[k] * ds[k]) * sinv[k];
        dx[k] = 0.5 * (w + w.transpose());
      }
    };

    // predictor
    std::vector<RealMatrix> rc(nb), dxa, dsa;
    RealVector dya;
    for (int k = 0; k < nb; ++k) rc[k] = -(sol.X[k] * sol.S[k]);
    solve_dirs(rc, dxa, dya, dsa);
    const double ap_a = std::min(1.0, opts.step_fraction * step_to_boundary(sol.X, dxa));
    const double ad_a = std::min(1.0, opts.step_fraction * step_to_boundary(sol.S, dsa));
    double xs_aff = 0.0;
    for (int k = 0; k < nb; ++k) {
      xs_aff += ((sol.X[k] + ap_a * dxa[k]).array() * (sol.S[k] + ad_a * dsa[k]).array()).sum();
    }
    const double mu_aff = xs_aff / ntot;
    const double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 1e-8, 1.0);

    // corrector
    for (int k = 0; k < nb; ++k) {
      rc[k] = sigma * mu * RealMatrix::Identity(prob.dims[k], prob.dims[k]) -
              sol.X[k] * sol.S[k] - dxa[k] * dsa[k];
    }
    std::vector<RealMatrix> dx, ds;
    RealVector dy;
    solve_dirs(rc, dx, dy, ds);
    const double ap = std::min(1.0, opts.step_fraction * step_to_boundary(sol.X, dx));
    const double ad = std::min(1.0, opts.step_fraction * step_to_boundary(sol.S, ds));
    if (ap < 1e-10 && ad < 1e-10) break;  // stalled at the boundary

    for (int k = 0; k < nb; ++k) {
      sol.X[k] += ap * dx[k];
      sol.X[k] = 0.5 * (sol.X[k] + sol.X[k].transpose()).eval();
      sol.S[k] += ad * ds[k];
      sol.S[k] = 0.5 * (sol.S[k] + sol.S[k].transpose()).eval();
    }
    sol.y += ad * dy;
  }
  sol.converged = sol.rel_gap < opts.tol && sol.primal_res < opts.tol && sol.dual_res < opts.tol;
  return sol;
}

RealMatrix embed_real(const Matrix& h) {
  const int d = static_cast<int>(h.rows());
  RealMatrix out(2 * d, 2 * d);
  out.topLeftCorner(d, d) = h.real();
  out.topRightCorner(d, d) = -h.imag();
  out.bottomLeftCorner(d, d) = h.imag();
  out.bottomRightCorner(d, d) = h.real();
  return out;
}

Matrix extract_hermitian(const RealMatrix& m) {
  const int d = static_cast<int>(m.rows()) / 2;
  const RealMatrix re = 0.5 * (m.topLeftCorner(d, d) + m.bottomRightCorner(d, d));
  const RealMatrix im = 0.5 * (m.bottomLeftCorner(d, d) - m.topRightCorner(d, d));
  Matrix h = re.cast<Complex>() + Complex(0, 1) * im.cast<Complex>();
  return 0.5 * (h + h.adjoint()).eval();
}

HermitianSolution solve_hermitian(const HermitianProblem& prob, const Options& opts) {
  Problem rp;
  rp.dims.reserve(prob.dims.size());
  for (int d : prob.dims) rp.dims.push_back(2 * d);
  rp.objective.reserve(prob.objective.size());
  for (const Matrix& c : prob.objective) rp.objective.push_back(embed_real(c));
  rp.constraints.reserve(prob.constraints.size());
  for (const auto& c : prob.constraints) {
    Constraint rc;
    rc.rhs = 2.0 * c.rhs;
    for (const auto& t : c.terms) rc.terms.push_back(Term{t.block, embed_real(t.mat)});
    rp.constraints.push_back(std::move(rc));
  }
  const Solution rs = solve(rp, opts);
  HermitianSolution hs;
  hs.X.reserve(rs.X.size());
  for (const auto& x : rs.X) hs.X.push_back(extract_hermitian(x));
  hs.primal_obj = 0.5 * rs.primal_obj;
  hs.dual_obj = 0.5 * rs.dual_obj;
  hs.rel_gap = rs.rel_gap;
  hs.primal_res = rs.primal_res;
  hs.dual_res = rs.dual_res;
  hs.iterations = rs.iterations;
  hs.converged = rs.converged;
  return hs;
}

std::vector<Matrix> hermitian_basis(int dim) {
  std::vector<Matrix> out;
  out.reserve(static_cast<size_t>(dim) * dim);
  for (int i = 0; i < dim; ++i) {
    Matrix e = Matrix::Zero(dim, dim);
    e(i, i) = 1.0;
    out.push_back(std::move(e));
  }
  const double s = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      Matrix e = Matrix::Zero(dim, dim);
      e(i, j) = s;
      e(j, i) = s;
      out.push_back(std::move(e));
      Matrix f = Matrix::Zero(dim, dim);
      f(i, j) = Complex(0, -s);
      f(j, i) = Complex(0, s);
      out.push_back(std::move(f));
    }
  }
  return out;
}

std::vector<Matrix> hermitian_basis_traceless(int dim) {
  std::vector<Matrix> out;
  out.reserve(static_cast<size_t>(dim) * dim - 1);
  for (int k = 1; k < dim; ++k) {
    RealVector v = RealVector::Zero(dim);
    for (int i = 0; i < k; ++i) v(i) = 1.0;
    v(k) = -static_cast<double>(k);
    v /= v.norm();
    Matrix e = Matrix::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) e(i, i) = v(i);
    out.push_back(std::move(e));
  }
  const double s = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      Matrix e = Matrix::Zero(dim, dim);
      e(i, j) = s;
      e(j, i) = s;
      out.push_back(std::move(e));
      Matrix f = Matrix::Zero(dim, dim);
      f(i, j) = Complex(0, -s);
      f(j, i) = Complex(0, s);
      out.push_back(std::move(f));
    }
  }
  return out;
}

}  // namespace qdich::sdp

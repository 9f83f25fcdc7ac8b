#ifndef QDICH_SDP_HPP
#define QDICH_SDP_HPP

#include <vector>

#include "qdich/types.hpp"

namespace qdich::sdp {

// Standard-form dense SDP over real symmetric blocks:
//   minimize  sum_k <C_k, X_k>
//   s.t.      sum over terms of <A_{i,k}, X_k> = b_i,   X_k >= 0.
struct Term {
  int block;
  RealMatrix mat;  // symmetric
};

struct Constraint {
  std::vector<Term> terms;
  double rhs;
};

struct Problem {
  std::vector<int> dims;
  std::vector<RealMatrix> objective;
  std::vector<Constraint> constraints;
};

struct Options {
  double tol = 1e-7;       // relative duality gap and feasibility target
  int max_iters = 200;
  double step_fraction = 0.98;
};

struct Solution {
  std::vector<RealMatrix> X;
  std::vector<RealMatrix> S;
  RealVector y;
  double primal_obj = 0.0;
  double dual_obj = 0.0;
  double rel_gap = 1.0;
  double primal_res = 1.0;
  double dual_res = 1.0;
  int iterations = 0;
  bool converged = false;
};

// Infeasible-start primal-dual interior-point method with Mehrotra
// predictor-corrector steps (HKM direction). Deterministic: no randomized
// pivoting, single-threaded dense linear algebra.
Solution solve(const Problem& prob, const Options& opts = {});

// ----- complex layer: Hermitian blocks embedded as real symmetric blocks of
// twice the size; objectives/rhs double, optima halve.

struct HermitianTerm {
  int block;
  Matrix mat;  // Hermitian
};

struct HermitianConstraint {
  std::vector<HermitianTerm> terms;
  double rhs;
};

struct HermitianProblem {
  std::vector<int> dims;
  std::vector<Matrix> objective;
  std::vector<HermitianConstraint> constraints;
};

struct HermitianSolution {
  std::vector<Matrix> X;
  double primal_obj = 0.0;
  double dual_obj = 0.0;
  double rel_gap = 1.0;
  double primal_res = 1.0;
  double dual_res = 1.0;
  int iterations = 0;
  bool converged = false;
};

RealMatrix embed_real(const Matrix& h);
Matrix extract_hermitian(const RealMatrix& m);

HermitianSolution solve_hermitian(const HermitianProblem& prob, const Options& opts = {});

// orthonormal Hermitian basis (Tr(A B) inner product); traceless variant drops
// the identity direction
std::vector<Matrix> hermitian_basis(int dim);
std::vector<Matrix> hermitian_basis_traceless(int dim);

}  // namespace qdich::sdp

#endif

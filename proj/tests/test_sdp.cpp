#include <doctest.h>

#include "qdich/sdp.hpp"

using namespace qdich;
using namespace qdich::sdp;

TEST_CASE("diagonal SDP reduces to a linear program") {
  // minimize x1 + 2 x2 s.t. x1 + x2 = 1, x >= 0 (two 1x1 blocks)
  Problem p;
  p.dims = {1, 1};
  p.objective = {RealMatrix::Constant(1, 1, 1.0), RealMatrix::Constant(1, 1, 2.0)};
  p.constraints.push_back({{{0, RealMatrix::Constant(1, 1, 1.0)},
                            {1, RealMatrix::Constant(1, 1, 1.0)}},
                           1.0});
  const Solution s = solve(p);
  CHECK(s.converged);
  CHECK(s.primal_obj == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(s.X[0](0, 0) == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("largest eigenvalue as an SDP") {
  // max <A, X> s.t. Tr X = 1, X >= 0 equals lambda_max(A)
  RealMatrix a(3, 3);
  a << 2.0, 1.0, 0.0,
       1.0, -1.0, 0.5,
       0.0, 0.5, 0.3;
  Problem p;
  p.dims = {3};
  p.objective = {-a};  // maximize
  p.constraints.push_back({{{0, RealMatrix::Identity(3, 3)}}, 1.0});
  const Solution s = solve(p);
  CHECK(s.converged);
  const double lmax = Eigen::SelfAdjointEigenSolver<RealMatrix>(a).eigenvalues()(2);
  CHECK(-s.primal_obj == doctest::Approx(lmax).epsilon(1e-7));
  CHECK(s.rel_gap < 1e-7);
}

TEST_CASE("hermitian embedding round trip") {
  Matrix h(2, 2);
  h << Complex(1.0, 0.0), Complex(0.25, -0.5),
       Complex(0.25, 0.5), Complex(-0.75, 0.0);
  const RealMatrix r = embed_real(h);
  CHECK((r - r.transpose()).norm() < 1e-15);
  CHECK((extract_hermitian(r) - h).norm() < 1e-15);
}

TEST_CASE("complex SDP: lambda_max of a Hermitian matrix") {
  Matrix h(2, 2);
  h << Complex(0.5, 0.0), Complex(0.0, -0.8),
       Complex(0.0, 0.8), Complex(-0.25, 0.0);
  HermitianProblem p;
  p.dims = {2};
  p.objective = {-h};
  p.constraints.push_back({{{0, Matrix::Identity(2, 2)}}, 1.0});
  const HermitianSolution s = solve_hermitian(p);
  CHECK(s.converged);
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  CHECK(-s.primal_obj == doctest::Approx(es.eigenvalues()(1)).epsilon(1e-7));
}

TEST_CASE("hermitian basis spans and is orthonormal") {
  for (int d : {2, 3}) {
    const auto basis = hermitian_basis(d);
    CHECK(static_cast<int>(basis.size()) == d * d);
    for (size_t i = 0; i < basis.size(); ++i) {
      for (size_t j = 0; j < basis.size(); ++j) {
        const double ip = (basis[i].adjoint() * basis[j]).trace().real();
        CHECK(ip == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
      }
    }
    const auto traceless = hermitian_basis_traceless(d);
    CHECK(static_cast<int>(traceless.size()) == d * d - 1);
    for (const auto& m : traceless) CHECK(std::abs(m.trace()) < 1e-12);
  }
}

TEST_CASE("solver determinism") {
  RealMatrix a(3, 3);
  a << 1.0, 0.2, 0.1,
       0.2, -0.4, 0.0,
       0.1, 0.0, 0.6;
  Problem p;
  p.dims = {3};
  p.objective = {-a};
  p.constraints.push_back({{{0, RealMatrix::Identity(3, 3)}}, 1.0});
  const Solution s1 = solve(p);
  const Solution s2 = solve(p);
  CHECK(s1.primal_obj == s2.primal_obj);  // bit identical
  CHECK((s1.X[0] - s2.X[0]).norm() == 0.0);
  CHECK(s1.iterations == s2.iterations);
}

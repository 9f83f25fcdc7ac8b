#include <doctest.h>

#include "qdich/operators.hpp"
#include "qdich/random_states.hpp"
#include "qdich/state_io.hpp"

using namespace qdich;

TEST_CASE("eigendecomposition basics") {
  Matrix d = Matrix::Zero(3, 3);
  d(0, 0) = 3.0; d(1, 1) = 1.0; d(2, 2) = 2.0;
  HermitianOperator h(d);
  CHECK(h.eigenvalues()(0) == doctest::Approx(3.0));
  CHECK(h.eigenvalues()(1) == doctest::Approx(2.0));
  CHECK(h.eigenvalues()(2) == doctest::Approx(1.0));

  Matrix x = Matrix::Zero(2, 2);
  x(0, 1) = 1.0; x(1, 0) = 1.0;
  HermitianOperator pauli_x(x);
  CHECK(pauli_x.eigenvalues()(0) == doctest::Approx(1.0));
  CHECK(pauli_x.eigenvalues()(1) == doctest::Approx(-1.0));
}

TEST_CASE("random recomposition residual") {
  Rng rng(11);
  const HermitianOperator h = random_hermitian(5, rng);
  const Matrix recomposed =
      h.eigenvectors() * h.eigenvalues().asDiagonal() * h.eigenvectors().adjoint();
  CHECK((recomposed - h.entries()).norm() < 1e-10 * std::max(1.0, h.entries().norm()));
  CHECK((h.eigenvectors().adjoint() * h.eigenvectors() - Matrix::Identity(5, 5)).norm() < 1e-10);
}

TEST_CASE("non-Hermitian input rejected") {
  Matrix bad = Matrix::Zero(2, 2);
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS(HermitianOperator{bad}, InvalidInputError);
}

TEST_CASE("spectral transform conventions") {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 4.0;
  const HermitianOperator h(d);
  const HermitianOperator sq = matrix_power(h, 0.5, true);
  CHECK(sq.entries()(0, 0).real() == doctest::Approx(2.0));
  CHECK(std::abs(sq.entries()(1, 1)) == doctest::Approx(0.0));

  const HermitianOperator lg = matrix_log2(HermitianOperator::identity(3));
  CHECK(lg.entries().norm() == doctest::Approx(0.0));

  // exp(log(A)) round trip on a full-rank PSD operator
  Rng rng(5);
  const DensityOperator rho = random_density(4, 4, rng);
  const HermitianOperator back = matrix_exp2(matrix_log2(rho.op()));
  CHECK((back.entries() - rho.entries()).norm() < 1e-9);

  // negative power without on_support on singular operator
  CHECK_THROWS_AS(matrix_power(h, -1.0, false), SingularOperatorError);
  CHECK_NOTHROW(matrix_power(h, -1.0, true));
}

TEST_CASE("tensor product") {
  const HermitianOperator i2 = HermitianOperator::identity(2);
  CHECK((tensor(i2, i2).entries() - Matrix::Identity(4, 4)).norm() == doctest::Approx(0.0));

  Matrix a = Matrix::Zero(2, 2), b = Matrix::Zero(2, 2);
  a(0, 0) = 1.0; b(1, 1) = 1.0;
  const HermitianOperator t = tensor(HermitianOperator(a), HermitianOperator(b));
  CHECK(t.entries()(1, 1).real() == doctest::Approx(1.0));
  CHECK(t.entries().trace().real() == doctest::Approx(1.0));

  Rng rng(7);
  const HermitianOperator ha = random_hermitian(3, rng);
  const HermitianOperator hb = random_hermitian(2, rng);
  CHECK(tensor(ha, hb).trace() == doctest::Approx(ha.trace() * hb.trace()));
}

TEST_CASE("partial trace") {
  Rng rng(3);
  const DensityOperator rho = random_density(2, 2, rng);
  const DensityOperator sig = random_density(3, 3, rng);
  const DensityOperator prod = tensor(rho, sig);
  const HermitianOperator back = partial_trace(prod.op(), {2, 3}, {0});
  CHECK((back.entries() - rho.entries()).norm() < 1e-12);

  // maximally entangled pure state reduces to I/2
  Matrix bell = Matrix::Zero(4, 4);
  for (int i : {0, 3})
    for (int j : {0, 3}) bell(i, j) = 0.5;
  const HermitianOperator red = partial_trace(HermitianOperator(bell), {2, 2}, {0});
  CHECK((red.entries() - 0.5 * Matrix::Identity(2, 2)).norm() < 1e-12);

  const HermitianOperator x = random_hermitian(6, rng);
  CHECK(partial_trace(x, {2, 3}, {1}).trace() == doctest::Approx(x.trace()));
  CHECK_THROWS_AS(partial_trace(x, {2, 2}, {0}), InvalidInputError);
}

TEST_CASE("pinching maps") {
  const PinchingMap pid = pinching_map(HermitianOperator::identity(3));
  CHECK(pid.v == 1);
  Rng rng(9);
  const HermitianOperator x = random_hermitian(3, rng);
  CHECK((pid.apply(x).entries() - x.entries()).norm() < 1e-12);

  Matrix d = Matrix::Zero(3, 3);
  d(0, 0) = 1.0; d(1, 1) = 1.0; d(2, 2) = 2.0;
  const PinchingMap pm = pinching_map(HermitianOperator(d));
  CHECK(pm.v == 2);
  std::vector<int> ranks = {pm.projectors[0].rank, pm.projectors[1].rank};
  std::sort(ranks.begin(), ranks.end());
  CHECK(ranks[0] == 1);
  CHECK(ranks[1] == 2);

  // idempotence, trace preservation, diagonal invariance
  const HermitianOperator a = random_hermitian(4, rng);
  const PinchingMap pa = pinching_map(a);
  const HermitianOperator once = pa.apply(x.dim() == 4 ? x : random_hermitian(4, rng));
  const HermitianOperator twice = pa.apply(once);
  CHECK((once.entries() - twice.entries()).norm() < 1e-10);
  CHECK(once.trace() == doctest::Approx(twice.trace()));
}

TEST_CASE("pinching inequality over seeded ensemble") {
  Rng rng(42);
  double worst = 1.0;
  for (int t = 0; t < 200; ++t) {
    const int dim = 2 + static_cast<int>(rng.next_range(0, 4));
    const HermitianOperator a = random_hermitian(dim, rng);
    const DensityOperator sig = random_density(dim, dim, rng);
    const PinchingMap pm = pinching_map(a);
    const HermitianOperator gap(static_cast<double>(pm.v) * pm.apply(sig.op()).entries() -
                                sig.entries());
    worst = std::min(worst, gap.min_eigenvalue());
  }
  CHECK(worst >= -1e-10);
}

TEST_CASE("support projector reproduces the operator") {
  Rng rng(21);
  const DensityOperator rho = random_density(5, 3, rng);
  const SupportProjector p = SupportProjector::of(rho.op());
  CHECK(p.rank == 3);
  const Matrix papa = p.projector.entries() * rho.entries() * p.projector.entries();
  CHECK((papa - rho.entries()).norm() < 1e-10);
  const Matrix psq = p.projector.entries() * p.projector.entries();
  CHECK((psq - p.projector.entries()).norm() < 1e-10);
}

TEST_CASE("random density invariants") {
  const DensityOperator rho = random_density(4, 2, 1);
  CHECK(rho.eigenvalues().sum() == doctest::Approx(1.0));
  CHECK(rho.rank() == 2);
  CHECK(rho.eigenvalues().minCoeff() >= 0.0);

  const DensityOperator again = random_density(4, 2, 1);
  CHECK((rho.entries() - again.entries()).norm() == 0.0);  // bit-identical

  CHECK_THROWS_AS(random_density(2, 3, 1), InvalidInputError);
}

TEST_CASE("random channel invariants") {
  const ChoiChannel ch = random_channel(3, 4, 2, 7);
  Rng rng(13);
  const DensityOperator rho = random_density(3, 3, rng);
  const HermitianOperator out = ch.apply(rho.op());
  CHECK(out.trace() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(ch.tp_residual() < 1e-10);

  const ChoiChannel again = random_channel(3, 4, 2, 7);
  CHECK((ch.choi().entries() - again.choi().entries()).norm() == 0.0);

  CHECK_THROWS_AS(random_channel(4, 2, 1, 3), InvalidInputError);
}

TEST_CASE("density operator clamping and validation") {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0 + 1e-13;
  m(1, 1) = -1e-13;
  CHECK_NOTHROW(DensityOperator{m});
  const DensityOperator rho(m);
  CHECK(rho.eigenvalues().minCoeff() == 0.0);
  CHECK(rho.eigenvalues().sum() == doctest::Approx(1.0));

  Matrix bad = Matrix::Zero(2, 2);
  bad(0, 0) = 1.1; bad(1, 1) = -0.1;
  CHECK_THROWS_AS(DensityOperator{bad}, InvalidInputError);
}

TEST_CASE("partial trace and tensor are mutually consistent") {
  Rng rng(31);
  const HermitianOperator a = random_hermitian(3, rng);
  const HermitianOperator b = random_hermitian(2, rng);
  const HermitianOperator t = tensor(a, b);
  const HermitianOperator back = partial_trace(t, {3, 2}, {0});
  CHECK((back.entries() - b.trace() * a.entries()).norm() < 1e-10);
}

TEST_CASE("state file round trip") {
  Rng rng(17);
  const DensityOperator rho = random_density(3, 3, rng);
  const std::string path = "test_state_roundtrip.json";
  save_matrix(path, rho.entries());
  const Matrix back = load_matrix(path);
  CHECK((back - rho.entries()).norm() < 1e-15);
  std::remove(path.c_str());
}

#include <doctest.h>

#include <cmath>

#include "qdich/divergences.hpp"
#include "qdich/operators.hpp"
#include "qdich/random_states.hpp"

using namespace qdich;

namespace {

DensityOperator diag_state(std::initializer_list<double> probs) {
  const int d = static_cast<int>(probs.size());
  Matrix m = Matrix::Zero(d, d);
  int i = 0;
  for (double p : probs) m(i, i) = p, ++i;
  return DensityOperator(std::move(m));
}

// classical scalar oracle: (1/(a-1)) log2 sum p^a q^(1-a)
double classical_renyi(const std::vector<double>& p, const std::vector<double>& q, double a) {
  double acc = 0.0;
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0 && q[i] > 0.0) acc += std::pow(p[i], a) * std::pow(q[i], 1.0 - a);
  }
  return std::log2(acc) / (a - 1.0);
}

double classical_kl(const std::vector<double>& p, const std::vector<double>& q) {
  double acc = 0.0;
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) acc += p[i] * std::log2(p[i] / q[i]);
  }
  return acc;
}

DensityOperator full_rank(int dim, Rng& rng) {
  const DensityOperator raw = random_density(dim, dim, rng);
  Matrix m = 0.99 * raw.entries() + (0.01 / dim) * Matrix::Identity(dim, dim);
  return DensityOperator(std::move(m));
}

}  // namespace

TEST_CASE("fidelity") {
  Rng rng(2);
  const DensityOperator rho = random_density(3, 3, rng);
  CHECK(fidelity(rho, rho) == doctest::Approx(1.0));

  const DensityOperator e0 = diag_state({1.0, 0.0});
  const DensityOperator e1 = diag_state({0.0, 1.0});
  CHECK(fidelity(e0, e1) == doctest::Approx(0.0));

  // classical Bhattacharyya: sqrt(0.45) + sqrt(0.05)
  const double expected = std::sqrt(0.5 * 0.9) + std::sqrt(0.5 * 0.1);
  CHECK(fidelity(diag_state({0.5, 0.5}), diag_state({0.9, 0.1})) ==
        doctest::Approx(expected).epsilon(1e-12));
  CHECK(expected == doctest::Approx(0.894427190999916).epsilon(1e-12));

  // symmetry
  Rng rng2(8);
  const DensityOperator a = random_density(4, 4, rng2);
  const DensityOperator b = random_density(4, 2, rng2);
  CHECK(std::abs(fidelity(a, b) - fidelity(b, a)) < 1e-10);
}

TEST_CASE("trace and purified distance") {
  const DensityOperator p = diag_state({0.9, 0.1});
  const DensityOperator q = diag_state({0.5, 0.5});
  CHECK(trace_distance(p, p) == doctest::Approx(0.0));
  CHECK(purified_distance(p, p) == doctest::Approx(0.0));

  const DensityOperator e0 = diag_state({1.0, 0.0});
  const DensityOperator e1 = diag_state({0.0, 1.0});
  CHECK(trace_distance(e0, e1) == doctest::Approx(1.0));
  CHECK(purified_distance(e0, e1) == doctest::Approx(1.0));

  CHECK(trace_distance(p, q) == doctest::Approx(0.4).epsilon(1e-12));
  const double pd = std::sqrt(1.0 - std::pow(std::sqrt(0.45) + std::sqrt(0.05), 2));
  CHECK(purified_distance(p, q) == doctest::Approx(pd).epsilon(1e-10));
  CHECK(pd == doctest::Approx(0.447213595499958).epsilon(1e-10));

  // Fuchs-van de Graaf: d <= P on general states
  Rng rng(5);
  for (int t = 0; t < 50; ++t) {
    const DensityOperator a = random_density(3, 3, rng);
    const DensityOperator b = random_density(3, 3, rng);
    CHECK(trace_distance(a, b) <= purified_distance(a, b) + 1e-10);
  }
}

TEST_CASE("renyi divergences: self-divergence is zero") {
  Rng rng(10);
  const DensityOperator rho = full_rank(3, rng);
  for (DivergenceKind kind :
       {DivergenceKind::Sandwiched, DivergenceKind::Petz, DivergenceKind::LogEuclidean}) {
    for (double a : {0.3, 0.6, 2.0, 3.5}) {
      CHECK(std::abs(renyi_divergence(kind, a, rho, rho.op()).value) < 1e-9);
    }
  }
}

TEST_CASE("sandwiched divergence of a pure state against I/2 is one bit") {
  Rng rng(20);
  const DensityOperator psi = random_density(2, 1, rng);
  const HermitianOperator half(Matrix(0.5 * Matrix::Identity(2, 2)));
  for (double a : {0.6, 0.75, 2.0, 3.0}) {
    CHECK(renyi_divergence(DivergenceKind::Sandwiched, a, psi, half).value ==
          doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("commuting states match the scalar formula for all families") {
  const DensityOperator p = diag_state({0.9, 0.1});
  const DensityOperator q = diag_state({0.5, 0.5});
  const double expected = classical_renyi({0.9, 0.1}, {0.5, 0.5}, 2.0);
  CHECK(expected == doctest::Approx(std::log2(2.0 * (0.81 + 0.01))).epsilon(1e-14));
  for (DivergenceKind kind :
       {DivergenceKind::Sandwiched, DivergenceKind::Petz, DivergenceKind::LogEuclidean}) {
    CHECK(renyi_divergence(kind, 2.0, p, q.op()).value ==
          doctest::Approx(expected).epsilon(1e-11));
  }
}

TEST_CASE("support conditions produce infinities") {
  const DensityOperator e0 = diag_state({1.0, 0.0});
  const DensityOperator e1 = diag_state({0.0, 1.0});
  // alpha > 1 requires containment
  CHECK(renyi_divergence(DivergenceKind::Sandwiched, 2.0, e0, e1.op()).is_infinite());
  CHECK(renyi_divergence(DivergenceKind::Petz, 2.0, e0, e1.op()).is_infinite());
  CHECK(renyi_divergence(DivergenceKind::LogEuclidean, 2.0, e0, e1.op()).is_infinite());
  // alpha < 1, orthogonal supports
  CHECK(renyi_divergence(DivergenceKind::Sandwiched, 0.5, e0, e1.op()).is_infinite());
  CHECK(renyi_divergence(DivergenceKind::LogEuclidean, 0.5, e0, e1.op()).is_infinite());
  // alpha < 1 with partial overlap is finite
  const DensityOperator mix = diag_state({0.5, 0.5});
  CHECK(!renyi_divergence(DivergenceKind::Sandwiched, 0.5, e0, mix.op()).is_infinite());
}

TEST_CASE("order validation and near-one fallback") {
  const DensityOperator p = diag_state({0.9, 0.1});
  const DensityOperator q = diag_state({0.5, 0.5});
  CHECK_THROWS_AS(renyi_divergence(DivergenceKind::Petz, -1.0, p, q.op()), InvalidInputError);
  CHECK_THROWS_AS(renyi_divergence(DivergenceKind::Petz, 0.0, p, q.op()), InvalidInputError);
  CHECK_THROWS_AS(renyi_divergence(DivergenceKind::Petz, 1.0, p, q.op()), InvalidInputError);
  const DivergenceValue near = renyi_divergence(DivergenceKind::Sandwiched, 1.0 + 1e-5, p, q.op());
  CHECK(near.near_one_fallback);
  CHECK(near.value == doctest::Approx(umegaki(p, q.op()).value));
}

TEST_CASE("umegaki relative entropy") {
  Rng rng(30);
  const DensityOperator rho = full_rank(4, rng);
  CHECK(std::abs(umegaki(rho, rho.op()).value) < 1e-10);

  const DensityOperator e0 = diag_state({1.0, 0.0});
  const DensityOperator e1 = diag_state({0.0, 1.0});
  CHECK(umegaki(e0, e1.op()).is_infinite());

  const double expected = classical_kl({0.9, 0.1}, {0.5, 0.5});
  CHECK(expected == doctest::Approx(0.9 * std::log2(1.8) + 0.1 * std::log2(0.2)).epsilon(1e-14));
  CHECK(umegaki(diag_state({0.9, 0.1}), diag_state({0.5, 0.5}).op()).value ==
        doctest::Approx(expected).epsilon(1e-12));
  CHECK(expected == doctest::Approx(0.531004406410719).epsilon(1e-12));
}

TEST_CASE("d_max") {
  Rng rng(40);
  const DensityOperator rho = full_rank(3, rng);
  CHECK(std::abs(d_max(rho, rho.op()).value) < 1e-9);

  const DensityOperator psi = random_density(2, 1, rng);
  const HermitianOperator half(Matrix(0.5 * Matrix::Identity(2, 2)));
  CHECK(d_max(psi, half).value == doctest::Approx(1.0).epsilon(1e-10));

  // upper-bounds every sandwiched order
  for (int t = 0; t < 20; ++t) {
    const DensityOperator a = random_density(3, 3, rng);
    const DensityOperator b = full_rank(3, rng);
    const double dm = d_max(a, b.op()).value;
    for (double beta : {2.0, 10.0, 100.0}) {
      CHECK(renyi_divergence(DivergenceKind::Sandwiched, beta, a, b.op()).value <= dm + 1e-9);
    }
  }
}

TEST_CASE("von Neumann entropy") {
  Rng rng(50);
  const DensityOperator psi = random_density(4, 1, rng);
  CHECK(von_neumann_entropy(psi) == doctest::Approx(0.0).epsilon(1e-9));
  const DensityOperator mixed(Matrix(0.25 * Matrix::Identity(4, 4)));
  CHECK(von_neumann_entropy(mixed) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(von_neumann_entropy(diag_state({0.9, 0.1})) ==
        doctest::Approx(-0.9 * std::log2(0.9) - 0.1 * std::log2(0.1)).epsilon(1e-12));
  CHECK(von_neumann_entropy(diag_state({0.9, 0.1})) == doctest::Approx(0.468995593589281));
}

TEST_CASE("monotonicity in order, small ensemble") {
  Rng rng(60);
  for (DivergenceKind kind :
       {DivergenceKind::Sandwiched, DivergenceKind::Petz, DivergenceKind::LogEuclidean}) {
    for (int t = 0; t < 40; ++t) {
      const int dim = 2 + static_cast<int>(rng.next_range(0, 3));
      const DensityOperator rho = random_density(dim, dim, rng);
      const DensityOperator sig = full_rank(dim, rng);
      double lo = 0.1 + 0.8 * rng.next_uniform();
      double hi = lo + 1.5 * rng.next_uniform();
      if (std::abs(hi - 1.0) < 2e-4) hi += 1e-3;
      const double dlo = renyi_divergence(kind, lo, rho, sig.op()).value;
      const double dhi = renyi_divergence(kind, hi, rho, sig.op()).value;
      CHECK(dlo <= dhi + 1e-9);
    }
  }
}

TEST_CASE("family ordering on alpha in (0,1); equality when commuting") {
  Rng rng(70);
  for (int t = 0; t < 30; ++t) {
    const DensityOperator rho = random_density(3, 3, rng);
    const DensityOperator sig = full_rank(3, rng);
    const double a = 0.1 + 0.8 * rng.next_uniform();
    const double dflat = renyi_divergence(DivergenceKind::LogEuclidean, a, rho, sig.op()).value;
    const double dsand = renyi_divergence(DivergenceKind::Sandwiched, a, rho, sig.op()).value;
    const double dpetz = renyi_divergence(DivergenceKind::Petz, a, rho, sig.op()).value;
    CHECK(dsand <= dpetz + 1e-9);
    CHECK(dpetz <= dflat + 1e-9);
  }
  // commuting collapse
  const DensityOperator p = diag_state({0.7, 0.2, 0.1});
  const DensityOperator q = diag_state({0.3, 0.3, 0.4});
  for (double a : {0.25, 0.5, 0.8}) {
    const double ref = classical_renyi({0.7, 0.2, 0.1}, {0.3, 0.3, 0.4}, a);
    for (DivergenceKind kind :
         {DivergenceKind::Sandwiched, DivergenceKind::Petz, DivergenceKind::LogEuclidean}) {
      CHECK(renyi_divergence(kind, a, p, q.op()).value == doctest::Approx(ref).epsilon(1e-10));
    }
  }
}

TEST_CASE("order-1/2 sandwiched equals -2 log2 fidelity") {
  Rng rng(80);
  for (int t = 0; t < 40; ++t) {
    const int dim = 2 + static_cast<int>(rng.next_range(0, 3));
    const DensityOperator rho = random_density(dim, dim, rng);
    const DensityOperator sig = full_rank(dim, rng);
    const double lhs = renyi_divergence(DivergenceKind::Sandwiched, 0.5, rho, sig.op()).value;
    const double rhs = -2.0 * std::log2(fidelity(rho, sig));
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
  }
}

TEST_CASE("pure-state identity between sandwiched and petz orders") {
  Rng rng(90);
  for (int t = 0; t < 40; ++t) {
    const int dim = 2 + static_cast<int>(rng.next_range(0, 3));
    const DensityOperator psi = random_density(dim, 1, rng);
    const DensityOperator sig = full_rank(dim, rng);
    const double a = 0.55 + 0.4 * rng.next_uniform();
    const double lhs = renyi_divergence(DivergenceKind::Sandwiched, a, psi, sig.op()).value;
    const double rhs = renyi_divergence(DivergenceKind::Petz, 2.0 - 1.0 / a, psi, sig.op()).value;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
  }
}

TEST_CASE("data processing inequality, small ensemble") {
  Rng rng(100);
  for (int t = 0; t < 25; ++t) {
    const int dim = 2 + static_cast<int>(rng.next_range(0, 2));
    const DensityOperator rho = random_density(dim, dim, rng);
    const DensityOperator sig = full_rank(dim, rng);
    const ChoiChannel ch = random_channel(dim, dim, dim, rng);
    const DensityOperator nrho = ch.apply(rho);
    const HermitianOperator nsig = ch.apply(sig.op());
    struct Range { DivergenceKind kind; double lo, hi; };
    for (const auto& rg : {Range{DivergenceKind::Sandwiched, 0.5, 3.0},
                           Range{DivergenceKind::Petz, 0.05, 2.0},
                           Range{DivergenceKind::LogEuclidean, 0.05, 1.0}}) {
      double a = rg.lo + (rg.hi - rg.lo) * rng.next_uniform();
      if (std::abs(a - 1.0) < 2e-4) a += 1e-3;
      const double before = renyi_divergence(rg.kind, a, rho, sig.op()).value;
      const double after = renyi_divergence(rg.kind, a, nrho, nsig).value;
      CHECK(after <= before + 1e-9);
    }
  }
}

TEST_CASE("pinching approximation two-sided bound") {
  Rng rng(110);
  for (int t = 0; t < 25; ++t) {
    const int dim = 2 + static_cast<int>(rng.next_range(0, 3));
    const DensityOperator rho = random_density(dim, dim, rng);
    const DensityOperator sig = full_rank(dim, rng);
    const PinchingMap pm = pinching_map(sig.op());
    const DensityOperator pinched(pm.apply(rho.op()));
    for (double a : {0.5, 0.8, 2.0}) {
      const double dp = renyi_divergence(DivergenceKind::Sandwiched, a, pinched, sig.op()).value;
      const double d = renyi_divergence(DivergenceKind::Sandwiched, a, rho, sig.op()).value;
      CHECK(dp <= d + 1e-9);
      CHECK(d <= dp + 2.0 * std::log2(static_cast<double>(pm.v)) + 1e-9);
    }
  }
}

TEST_CASE("appendix lemmas on random ensembles") {
  Rng rng(120);
  for (int t = 0; t < 60; ++t) {
    const int dim = 2 + static_cast<int>(rng.next_range(0, 3));
    // improved Fuchs-van de Graaf for a pure reference
    const DensityOperator phi = random_density(dim, 1, rng);
    const DensityOperator rho = random_density(dim, dim, rng);
    CHECK(purified_distance(rho, phi) <= std::sqrt(trace_distance(rho, phi)) + 1e-9);

    // fidelity perturbation via Uhlmann
    const DensityOperator sig = random_density(dim, dim, rng);
    const DensityOperator tau = random_density(dim, dim, rng);
    const HermitianOperator diff(rho.entries() - tau.entries());
    const double tnorm = diff.eigenvalues().cwiseAbs().sum();
    CHECK(std::pow(fidelity(tau, sig), 2) >=
          std::pow(fidelity(rho, sig), 2) - std::sqrt(tnorm) - 1e-9);

    // -log F^2 <= D(tau||rho) + D(tau||sigma)
    const DensityOperator fr = full_rank(dim, rng);
    const DensityOperator fs = full_rank(dim, rng);
    const double lhs = -2.0 * std::log2(fidelity(fr, fs));
    CHECK(lhs <= relative_entropy(tau, fr) + relative_entropy(tau, fs) + 1e-9);
  }
}

TEST_CASE("block-diagonal pinched fidelity bound") {
  Rng rng(130);
  for (int t = 0; t < 40; ++t) {
    const int dim = 3 + static_cast<int>(rng.next_range(0, 3));
    const int nblocks = 2 + static_cast<int>(rng.next_range(0, dim - 2));
    const HermitianOperator frame = random_hermitian(dim, rng);
    std::vector<int> sizes(nblocks, 1);
    int rest = dim - nblocks;
    for (int i = 0; rest > 0; i = (i + 1) % nblocks) { ++sizes[i]; --rest; }
    std::vector<Matrix> proj;
    int col = 0;
    for (int b = 0; b < nblocks; ++b) {
      const Matrix cols = frame.eigenvectors().middleCols(col, sizes[b]);
      proj.push_back(cols * cols.adjoint());
      col += sizes[b];
    }
    const DensityOperator rho = random_density(dim, dim, rng);
    const DensityOperator sig0 = random_density(dim, dim, rng);
    Matrix sb = Matrix::Zero(dim, dim);
    for (const auto& p : proj) sb += p * sig0.entries() * p;
    const DensityOperator sig(Matrix(sb / sb.trace().real()));
    Matrix pr = Matrix::Zero(dim, dim);
    for (const auto& p : proj) pr += p * rho.entries() * p;
    CHECK(fidelity(DensityOperator(pr), sig) <=
          std::sqrt(static_cast<double>(nblocks)) * fidelity(rho, sig) + 1e-9);
  }
}

TEST_CASE("dimension mismatches are rejected") {
  const DensityOperator a = diag_state({1.0, 0.0});
  const DensityOperator b = diag_state({0.5, 0.25, 0.25});
  CHECK_THROWS_AS(fidelity(a, b), InvalidInputError);
  CHECK_THROWS_AS(trace_distance(a, b), InvalidInputError);
  CHECK_THROWS_AS(renyi_divergence(DivergenceKind::Petz, 2.0, a, b.op()), InvalidInputError);
  CHECK_THROWS_AS(umegaki(a, b.op()), InvalidInputError);
  CHECK_THROWS_AS(d_max(a, b.op()), InvalidInputError);
}

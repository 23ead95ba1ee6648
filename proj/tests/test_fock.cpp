#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "jwcontext/fock.hpp"
#include "jwcontext/random.hpp"

#include <cmath>

using namespace jwcontext;

namespace {

const double kR = 1.0 / std::sqrt(2.0);

FermionState basis_state(int mode_count, const std::string& pattern) {
  FermionState::AmplitudeMap amps{{pattern_from_string(pattern), cplx{1.0, 0.0}}};
  return FermionState::from_amplitudes(mode_count, std::move(amps));
}

}  // namespace

TEST_CASE("pattern string round trip, mode 1 leftmost") {
  CHECK(pattern_from_string("10") == 1);
  CHECK(pattern_from_string("01") == 2);
  CHECK(pattern_to_string(1, 2) == "10");
  CHECK(pattern_to_string(6, 4) == "0110");
  CHECK_THROWS_AS(pattern_from_string("102"), DomainError);
  CHECK_THROWS_AS(pattern_from_string(""), DomainError);
}

TEST_CASE("single particle constructor") {
  const FermionState s =
      FermionState::single_particle(std::vector<cplx>{cplx{kR, 0}, cplx{kR, 0}});
  CHECK(s.mode_count() == 2);
  CHECK(std::abs(s.amplitude(pattern_from_string("10")) - kR) < 1e-15);
  CHECK(std::abs(s.amplitude(pattern_from_string("01")) - kR) < 1e-15);

  const FermionState t = FermionState::single_particle(std::vector<cplx>{cplx{1, 0}});
  CHECK(t.mode_count() == 1);
  CHECK(std::abs(t.amplitude(1) - 1.0) < 1e-15);

  CHECK_THROWS_AS(
      FermionState::single_particle(std::vector<cplx>{cplx{0.5, 0}, cplx{0.5, 0}}),
      NormalizationError);
  CHECK_THROWS_AS(FermionState::single_particle(std::vector<cplx>{}), DomainError);
}

TEST_CASE("single particle number expectation via dense number operator") {
  const FermionState s =
      FermionState::single_particle(std::vector<cplx>{cplx{0.6, 0}, cplx{0, 0.8}});
  const Eigen::VectorXcd v = to_dense_vector(s);
  Eigen::MatrixXcd number = Eigen::MatrixXcd::Zero(4, 4);
  for (int j = 1; j <= 2; ++j)
    number += operator_matrix(j, LadderKind::Creation, 2) *
              operator_matrix(j, LadderKind::Annihilation, 2);
  CHECK(std::abs(v.dot(number * v).real() - 1.0) < 1e-12);
  CHECK(std::abs(s.number_expectation() - 1.0) < 1e-12);
}

TEST_CASE("n particle constructor") {
  const double third = 1.0 / std::sqrt(3.0);
  std::map<std::vector<int>, cplx> coeffs{{{1, 2}, cplx{third, 0}},
                                          {{1, 3}, cplx{third, 0}},
                                          {{2, 3}, cplx{third, 0}}};
  const FermionState s = FermionState::n_particle(3, coeffs);
  CHECK(std::abs(s.amplitude(pattern_from_string("110")) - third) < 1e-15);
  CHECK(std::abs(s.amplitude(pattern_from_string("101")) - third) < 1e-15);
  CHECK(std::abs(s.amplitude(pattern_from_string("011")) - third) < 1e-15);
  CHECK(std::abs(s.number_expectation() - 2.0) < 1e-12);

  const FermionState pair = FermionState::n_particle(
      2, std::map<std::vector<int>, cplx>{{{1, 2}, cplx{1, 0}}});
  CHECK(std::abs(pair.amplitude(pattern_from_string("11")) - 1.0) < 1e-15);
  CHECK(std::abs(pair.number_expectation() - 2.0) < 1e-12);

  CHECK_THROWS_AS(FermionState::n_particle(
                      3, std::map<std::vector<int>, cplx>{{{1, 1}, cplx{1, 0}}}),
                  DomainError);
  CHECK_THROWS_AS(FermionState::n_particle(
                      3, std::map<std::vector<int>, cplx>{{{2, 1}, cplx{1, 0}}}),
                  DomainError);
  CHECK_THROWS_AS(FermionState::n_particle(
                      3, std::map<std::vector<int>, cplx>{{{1, 2}, cplx{0.5, 0}}}),
                  NormalizationError);
}

TEST_CASE("from_amplitudes enforces norm and parity") {
  FermionState::AmplitudeMap mixed{{pattern_from_string("00"), cplx{kR, 0}},
                                   {pattern_from_string("10"), cplx{kR, 0}}};
  CHECK_THROWS_AS(FermionState::from_amplitudes(2, mixed), DomainError);
  // same-parity superposition of 0 and 2 particles is allowed
  FermionState::AmplitudeMap even{{pattern_from_string("00"), cplx{kR, 0}},
                                  {pattern_from_string("11"), cplx{kR, 0}}};
  CHECK(FermionState::from_amplitudes(2, even).single_parity_sector());
  // raw_vector accepts anything in range
  FermionState::AmplitudeMap unnorm{{pattern_from_string("10"), cplx{3.0, 0}}};
  CHECK(FermionState::raw_vector(2, unnorm).norm() == doctest::Approx(3.0));
  FermionState::AmplitudeMap out_of_range{{4, cplx{1, 0}}};
  CHECK_THROWS_AS(FermionState::raw_vector(2, out_of_range), DomainError);
}

TEST_CASE("creation signs follow the mode ordering") {
  const FermionState s10 = basis_state(2, "10");
  SUBCASE("a2^dag on 10 picks up one swap") {
    const FermionState r = apply_creation(s10, 2);
    CHECK(std::abs(r.amplitude(pattern_from_string("11")) - cplx{-1.0, 0}) < 1e-15);
    CHECK(r.amplitudes().size() == 1);
  }
  SUBCASE("a1^dag on 10 is excluded") {
    const FermionState r = apply_creation(s10, 1);
    CHECK(r.amplitudes().empty());
    CHECK(r.norm() == 0.0);
  }
  SUBCASE("a1^dag on 01 has no occupied modes below") {
    const FermionState r = apply_creation(basis_state(2, "01"), 1);
    CHECK(std::abs(r.amplitude(pattern_from_string("11")) - cplx{1.0, 0}) < 1e-15);
  }
}

TEST_CASE("annihilation is the adjoint of creation") {
  const FermionState s11 = basis_state(2, "11");
  const FermionState r = apply_annihilation(s11, 2);
  CHECK(std::abs(r.amplitude(pattern_from_string("10")) - cplx{-1.0, 0}) < 1e-15);
  CHECK(apply_annihilation(basis_state(2, "01"), 1).amplitudes().empty());

  Rng rng(11);
  double worst = 0.0;
  for (int m = 1; m <= 6; ++m) {
    for (int rep = 0; rep < 10; ++rep) {
      const FermionState phi = random_raw_vector(rng, m);
      const FermionState psi = random_raw_vector(rng, m);
      for (int j = 1; j <= m; ++j)
        worst = std::max(worst, std::abs(inner(phi, apply_annihilation(psi, j)) -
                                         inner(apply_creation(phi, j), psi)));
    }
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("a a^dag + a^dag a acts as the identity on basis states") {
  for (int m = 1; m <= 4; ++m) {
    for (Pattern p = 0; p < (Pattern{1} << m); ++p) {
      const FermionState basis =
          FermionState::raw_vector(m, {{p, cplx{1.0, 0}}});
      for (int j = 1; j <= m; ++j) {
        const FermionState create_first = apply_annihilation(apply_creation(basis, j), j);
        const FermionState annihilate_first = apply_creation(apply_annihilation(basis, j), j);
        FermionState::AmplitudeMap sum;
        for (const auto& [q, a] : create_first.amplitudes()) sum[q] += a;
        for (const auto& [q, a] : annihilate_first.amplitudes()) sum[q] += a;
        REQUIRE(sum.size() == 1);
        CHECK(std::abs(sum[p] - cplx{1.0, 0}) < 1e-15);
      }
    }
  }
}

TEST_CASE("double creation annihilates any state") {
  Rng rng(5);
  for (int m = 1; m <= 6; ++m) {
    const FermionState psi = random_raw_vector(rng, m);
    for (int j = 1; j <= m; ++j)
      CHECK(apply_creation(apply_creation(psi, j), j).norm() == 0.0);
  }
}

TEST_CASE("operator matrices satisfy the anticommutation relations") {
  SUBCASE("M=1 creation is |1><0|") {
    const Eigen::MatrixXcd c = operator_matrix(1, LadderKind::Creation, 1);
    CHECK(std::abs(c(1, 0) - cplx{1, 0}) < 1e-15);
    CHECK(std::abs(c(0, 0)) + std::abs(c(0, 1)) + std::abs(c(1, 1)) < 1e-15);
  }
  for (int m = 1; m <= 6; ++m) {
    const Eigen::Index dim = Eigen::Index{1} << m;
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim, dim);
    for (int j = 1; j <= m; ++j) {
      const Eigen::MatrixXcd aj = operator_matrix(j, LadderKind::Annihilation, m);
      for (int k = 1; k <= m; ++k) {
        const Eigen::MatrixXcd ak = operator_matrix(k, LadderKind::Annihilation, m);
        const Eigen::MatrixXcd akd = operator_matrix(k, LadderKind::Creation, m);
        const double delta = (j == k) ? 1.0 : 0.0;
        CHECK((aj * akd + akd * aj - delta * id).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((aj * ak + ak * aj).cwiseAbs().maxCoeff() < 1e-12);
      }
    }
  }
}

TEST_CASE("operator matrices agree with the sparse ladder action") {
  for (int m = 1; m <= 4; ++m) {
    for (int j = 1; j <= m; ++j) {
      for (auto kind : {LadderKind::Creation, LadderKind::Annihilation}) {
        const Eigen::MatrixXcd mat = operator_matrix(j, kind, m);
        for (Pattern p = 0; p < (Pattern{1} << m); ++p) {
          const FermionState basis = FermionState::raw_vector(m, {{p, cplx{1.0, 0}}});
          const FermionState applied = (kind == LadderKind::Creation)
                                           ? apply_creation(basis, j)
                                           : apply_annihilation(basis, j);
          const Eigen::VectorXcd col = mat.col(static_cast<Eigen::Index>(p));
          Eigen::VectorXcd expected = Eigen::VectorXcd::Zero(col.size());
          for (const auto& [q, a] : applied.amplitudes())
            expected[static_cast<Eigen::Index>(q)] = a;
          CHECK((col - expected).cwiseAbs().maxCoeff() < 1e-15);
        }
      }
    }
  }
  CHECK_THROWS_AS(operator_matrix(1, LadderKind::Creation, 13, 12), CapacityError);
  CHECK_THROWS_AS(operator_matrix(3, LadderKind::Creation, 2), DomainError);
}

TEST_CASE("dicke and w constructors") {
  const FermionState w = w_state(4);
  CHECK(w.amplitudes().size() == 4);
  CHECK(std::abs(w.norm() - 1.0) < 1e-12);
  const FermionState d = dicke_state(4, 2);
  CHECK(d.amplitudes().size() == 6);
  CHECK(std::abs(d.number_expectation() - 2.0) < 1e-12);
  CHECK(d.single_parity_sector());
  CHECK_THROWS_AS(dicke_state(3, 4), DomainError);
}

TEST_CASE("density state validation") {
  Rng rng(3);
  const FermionState a = random_physical_state(rng, 2);
  const FermionState b = random_physical_state(rng, 2);
  const DensityState mix = DensityState::from_mixture({0.25, 0.75}, {a, b});
  CHECK(mix.mode_count() == 2);
  const Eigen::MatrixXcd rho = mix.to_matrix();
  CHECK(std::abs(rho.trace().real() - 1.0) < 1e-12);
  CHECK((rho - rho.adjoint()).cwiseAbs().maxCoeff() < 1e-12);

  CHECK_THROWS_AS(DensityState::from_mixture({0.5, 0.4}, {a, b}), NormalizationError);
  CHECK_THROWS_AS(DensityState::from_mixture({-0.1, 1.1}, {a, b}), DomainError);

  SUBCASE("matrix input is validated") {
    CHECK(DensityState::from_matrix(2, rho).mode_count() == 2);
    Eigen::MatrixXcd bad = rho;
    bad(0, 1) += cplx{0.1, 0};  // breaks hermiticity
    CHECK_THROWS_AS(DensityState::from_matrix(2, bad), DomainError);
    CHECK_THROWS_AS(DensityState::from_matrix(2, 2.0 * rho), NormalizationError);
    Eigen::MatrixXcd neg = Eigen::MatrixXcd::Zero(4, 4);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    CHECK_THROWS_AS(DensityState::from_matrix(2, neg), DomainError);
  }
}

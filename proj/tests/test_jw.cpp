#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "jwcontext/jw.hpp"
#include "jwcontext/random.hpp"

#include <cmath>
#include <numbers>

using namespace jwcontext;

namespace {

constexpr double kPi = std::numbers::pi;

double mat_err(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("direction round trip") {
  const Direction d{0.7, -1.3};
  const auto v = d.unit_vector();
  CHECK(std::abs(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] - 1.0) < 1e-15);
  const Direction back = Direction::from_vector(v[0], v[1], v[2]);
  CHECK(back.theta == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(back.phi == doctest::Approx(-1.3).epsilon(1e-12));
  CHECK_THROWS_AS(Direction::from_vector(0, 0, 0), DomainError);
}

TEST_CASE("context allows at most one observable per mode") {
  MeasurementContext ctx(3);
  ctx.set(2, direction_x());
  CHECK_THROWS_AS(ctx.set(2, direction_y()), DomainError);
  CHECK_THROWS_AS(ctx.set(4, direction_z()), DomainError);
  CHECK(ctx.assigned_count() == 1);
  CHECK(!ctx.is_full());
}

TEST_CASE("sigma_z on a single mode is diag(-1, +1)") {
  const Eigen::MatrixXcd z = sigma_component(1, PauliComponent::Z, 1);
  CHECK(std::abs(z(0, 0) - cplx{-1, 0}) < 1e-15);
  CHECK(std::abs(z(1, 1) - cplx{1, 0}) < 1e-15);
  CHECK(std::abs(z(0, 1)) + std::abs(z(1, 0)) < 1e-15);
}

TEST_CASE("sigma ladder commutation relations at M=4") {
  const int m = 4;
  for (int j = 1; j <= m; ++j) {
    const Eigen::MatrixXcd pj = sigma_component(j, PauliComponent::Plus, m);
    const Eigen::MatrixXcd mj = sigma_component(j, PauliComponent::Minus, m);
    const Eigen::MatrixXcd zj = sigma_component(j, PauliComponent::Z, m);
    CHECK(mat_err(pj * mj - mj * pj - zj) < 1e-12);
    CHECK(mat_err(mj - pj.adjoint()) < 1e-12);
    for (int k = 1; k <= m; ++k) {
      if (k == j) continue;
      const Eigen::MatrixXcd pk = sigma_component(k, PauliComponent::Plus, m);
      const Eigen::MatrixXcd mk = sigma_component(k, PauliComponent::Minus, m);
      CHECK(mat_err(zj * pk - pk * zj) < 1e-12);
      CHECK(mat_err(zj * mk - mk * zj) < 1e-12);
      CHECK(mat_err(pj * mk - mk * pj) < 1e-12);
    }
  }
}

TEST_CASE("sigma_direction special angles") {
  SUBCASE("theta = 0 reduces to sigma_z") {
    for (int m = 1; m <= 3; ++m)
      for (int j = 1; j <= m; ++j)
        CHECK(mat_err(sigma_direction({j, direction_z(), ""}, m) -
                      sigma_component(j, PauliComponent::Z, m)) < 1e-15);
  }
  SUBCASE("theta = pi/2, phi = 0 on one mode is the flip matrix") {
    const Eigen::MatrixXcd x = sigma_direction({1, direction_x(), ""}, 1);
    CHECK(std::abs(x(0, 1) - cplx{1, 0}) < 1e-15);
    CHECK(std::abs(x(1, 0) - cplx{1, 0}) < 1e-15);
    CHECK(std::abs(x(0, 0)) + std::abs(x(1, 1)) < 1e-15);
  }
}

TEST_CASE("sigma_direction is Hermitian, involutory, traceless") {
  Rng rng(17);
  for (int m = 1; m <= 5; ++m) {
    const Eigen::Index dim = Eigen::Index{1} << m;
    for (int rep = 0; rep < 5; ++rep) {
      const int j = 1 + static_cast<int>(rng() % m);
      const Eigen::MatrixXcd s = sigma_direction({j, random_direction(rng), ""}, m);
      CHECK(mat_err(s - s.adjoint()) < 1e-12);
      CHECK(mat_err(s * s - Eigen::MatrixXcd::Identity(dim, dim)) < 1e-12);
      CHECK(std::abs(s.trace()) < 1e-12);
    }
  }
  CHECK_THROWS_AS(sigma_direction({1, direction_z(), ""}, 13, 12), CapacityError);
}

TEST_CASE("observables on distinct modes commute for arbitrary directions") {
  Rng rng(23);
  for (int m = 2; m <= 5; ++m)
    for (int rep = 0; rep < 5; ++rep) {
      const int j = 1 + static_cast<int>(rng() % m);
      int k = 1 + static_cast<int>(rng() % m);
      if (k == j) k = (k % m) + 1;
      const Eigen::MatrixXcd sj = sigma_direction({j, random_direction(rng), ""}, m);
      const Eigen::MatrixXcd sk = sigma_direction({k, random_direction(rng), ""}, m);
      CHECK(mat_err(sj * sk - sk * sj) < 1e-12);
    }
}

TEST_CASE("eigenprojector algebra") {
  Rng rng(31);
  for (int m = 1; m <= 4; ++m) {
    const Eigen::Index dim = Eigen::Index{1} << m;
    for (int rep = 0; rep < 4; ++rep) {
      const int j = 1 + static_cast<int>(rng() % m);
      const ObservableSpec spec{j, random_direction(rng), ""};
      const Eigen::MatrixXcd p0 = eigenprojector(spec, 0, m);
      const Eigen::MatrixXcd p1 = eigenprojector(spec, 1, m);
      const Eigen::MatrixXcd s = sigma_direction(spec, m);
      CHECK(mat_err(p0 + p1 - Eigen::MatrixXcd::Identity(dim, dim)) < 1e-12);
      CHECK(mat_err(p0 * p0 - p0) < 1e-12);
      CHECK(mat_err(p1 * p1 - p1) < 1e-12);
      // outcome 0 sits on the eigenvalue -1 branch
      CHECK(mat_err(s * p0 + p0) < 1e-12);
      CHECK(mat_err(s * p1 - p1) < 1e-12);
    }
  }
  CHECK_THROWS_AS(eigenprojector({1, direction_z(), ""}, 2, 1), DomainError);
}

TEST_CASE("hatted pauli matches its defining matrix") {
  SUBCASE("theta = 0") {
    const Eigen::Matrix2cd z = hatted_pauli(direction_z());
    CHECK(std::abs(z(0, 0) - cplx{-1, 0}) < 1e-15);
    CHECK(std::abs(z(1, 1) - cplx{1, 0}) < 1e-15);
  }
  SUBCASE("theta = pi/2, phi = 0") {
    const Eigen::Matrix2cd x = hatted_pauli(direction_x());
    CHECK(std::abs(x(0, 1) - cplx{1, 0}) < 1e-15);
    CHECK(std::abs(x(1, 0) - cplx{1, 0}) < 1e-15);
  }
  SUBCASE("involutory, Hermitian, traceless for random directions") {
    Rng rng(41);
    for (int rep = 0; rep < 20; ++rep) {
      const Eigen::Matrix2cd h = hatted_pauli(random_direction(rng));
      CHECK(mat_err(h * h - Eigen::Matrix2cd::Identity()) < 1e-14);
      CHECK(mat_err(h - h.adjoint()) < 1e-14);
      CHECK(std::abs(h.trace()) < 1e-14);
    }
  }
}

TEST_CASE("fock_to_qubit places amplitudes on computational kets") {
  const double r = 1.0 / std::sqrt(2.0);
  const FermionState w2 =
      FermionState::single_particle(std::vector<cplx>{cplx{r, 0}, cplx{r, 0}});
  const Eigen::VectorXcd v = fock_to_qubit(w2);
  CHECK(std::abs(v[1] - cplx{r, 0}) < 1e-15);  // |10>
  CHECK(std::abs(v[2] - cplx{r, 0}) < 1e-15);  // |01>
  CHECK(std::abs(v[0]) + std::abs(v[3]) < 1e-15);

  const FermionState pair = FermionState::n_particle(
      2, std::map<std::vector<int>, cplx>{{{1, 2}, cplx{1, 0}}});
  CHECK(std::abs(fock_to_qubit(pair)[3] - cplx{1, 0}) < 1e-15);

  const double third = 1.0 / std::sqrt(3.0);
  const FermionState dicke = dicke_state(3, 2);
  const Eigen::VectorXcd dv = fock_to_qubit(dicke);
  CHECK(std::abs(dv[3] - cplx{third, 0}) < 1e-15);  // |110>
  CHECK(std::abs(dv[5] - cplx{third, 0}) < 1e-15);  // |101>
  CHECK(std::abs(dv[6] - cplx{third, 0}) < 1e-15);  // |011>
}

TEST_CASE("apply_sigma_inplace matches the materialized observable") {
  Rng rng(53);
  for (int m = 1; m <= 6; ++m) {
    for (int rep = 0; rep < 5; ++rep) {
      const int j = 1 + static_cast<int>(rng() % m);
      const Direction d = random_direction(rng);
      const Eigen::MatrixXcd s = sigma_direction({j, d, ""}, m);
      Eigen::VectorXcd v = to_dense_vector(random_raw_vector(rng, m));
      const Eigen::VectorXcd expected = s * v;
      apply_sigma_inplace(v, j, d);
      CHECK((v - expected).cwiseAbs().maxCoeff() < 1e-13);
    }
  }
}

TEST_CASE("correspondence on simple states") {
  SUBCASE("occupied single mode, theta = 0") {
    const FermionState occ = FermionState::single_particle(std::vector<cplx>{cplx{1, 0}});
    const auto r = correspondence_check(occ, std::vector<Direction>{direction_z()});
    CHECK(r.lhs == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.rhs == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.abs_diff < 1e-12);
  }
  SUBCASE("two-mode W state, both observables along z") {
    const double r = 1.0 / std::sqrt(2.0);
    const FermionState w2 =
        FermionState::single_particle(std::vector<cplx>{cplx{r, 0}, cplx{r, 0}});
    const auto res =
        correspondence_check(w2, std::vector<Direction>{direction_z(), direction_z()});
    // exactly one occupied mode: sigma_z eigenvalues multiply to -1
    CHECK(res.lhs == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(res.abs_diff < 1e-10);
  }
}

TEST_CASE("correspondence holds for random states and directions") {
  Rng rng(61);
  double worst = 0.0;
  for (int m = 1; m <= 8; ++m) {
    for (int rep = 0; rep < 25; ++rep) {
      const FermionState psi = random_raw_vector(rng, m);  // mixed parity allowed
      std::vector<Direction> dirs;
      for (int j = 0; j < m; ++j) dirs.push_back(random_direction(rng));
      worst = std::max(worst, correspondence_check(psi, dirs).abs_diff);
    }
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("correspondence holds for partial strings with identity slots") {
  Rng rng(67);
  double worst = 0.0;
  for (int m = 2; m <= 6; ++m) {
    for (int rep = 0; rep < 20; ++rep) {
      const FermionState psi = random_raw_vector(rng, m);
      MeasurementContext ctx(m);
      for (int j = 1; j <= m; ++j)
        if (rng() & 1) ctx.set(j, random_direction(rng));
      worst = std::max(worst, correspondence_check(psi, ctx).abs_diff);
    }
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("theta shifted by pi flips the observable sign") {
  Rng rng(71);
  for (int rep = 0; rep < 10; ++rep) {
    Direction d = random_direction(rng);
    const Eigen::MatrixXcd s = sigma_direction({1, d, ""}, 2);
    d.theta += kPi;
    CHECK(mat_err(sigma_direction({1, d, ""}, 2) + s) < 1e-12);
  }
}

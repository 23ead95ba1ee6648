#include "jwcontext/verify.hpp"

#include "jwcontext/correlators.hpp"
#include "jwcontext/fock.hpp"
#include "jwcontext/inequalities.hpp"
#include "jwcontext/jw.hpp"
#include "jwcontext/random.hpp"

#include <cmath>
#include <numbers>

namespace jwcontext {

namespace {

CheckResult check(std::string name, double max_error, double threshold) {
  return {std::move(name), max_error, threshold, max_error <= threshold};
}

double matrix_error(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

Eigen::MatrixXcd anticommutator(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return a * b + b * a;
}

Eigen::MatrixXcd commutator(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return a * b - b * a;
}

}  // namespace

std::vector<CheckResult> verify_fock(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<CheckResult> out;

  double err_adag = 0.0, err_aa = 0.0;
  for (int m = 1; m <= 6; ++m) {
    const Eigen::Index dim = Eigen::Index{1} << m;
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim, dim);
    for (int j = 1; j <= m; ++j) {
      const Eigen::MatrixXcd aj = operator_matrix(j, LadderKind::Annihilation, m);
      for (int k = 1; k <= m; ++k) {
        const Eigen::MatrixXcd ak = operator_matrix(k, LadderKind::Annihilation, m);
        const Eigen::MatrixXcd akdag = operator_matrix(k, LadderKind::Creation, m);
        const double delta = (j == k) ? 1.0 : 0.0;
        err_adag = std::max(err_adag, matrix_error(anticommutator(aj, akdag) - delta * id));
        err_aa = std::max(err_aa, matrix_error(anticommutator(aj, ak)));
      }
    }
  }
  out.push_back(check("fock/anticommutator_a_adag", err_adag, kExactTol));
  out.push_back(check("fock/anticommutator_a_a", err_aa, kExactTol));

  double err_excl = 0.0;
  for (int m = 1; m <= 6; ++m) {
    const FermionState psi = random_raw_vector(rng, m);
    for (int j = 1; j <= m; ++j)
      err_excl = std::max(err_excl, apply_creation(apply_creation(psi, j), j).norm());
  }
  out.push_back(check("fock/double_creation_annihilates", err_excl, 0.0));

  double err_parity = 0.0;
  double err_number = 0.0;
  for (int m = 2; m <= 6; ++m) {
    const FermionState w = w_state(m);
    err_parity = std::max(err_parity, w.single_parity_sector() ? 0.0 : 1.0);
    err_number = std::max(err_number, std::abs(w.number_expectation() - 1.0));
    for (int n = 1; n <= m; ++n) {
      const FermionState d = dicke_state(m, n);
      err_parity = std::max(err_parity, d.single_parity_sector() ? 0.0 : 1.0);
      err_number = std::max(err_number, std::abs(d.number_expectation() - n));
    }
  }
  out.push_back(check("fock/constructor_single_sector", err_parity, 0.0));
  out.push_back(check("fock/number_expectation", err_number, kExactTol));

  double err_adj = 0.0;
  for (int m = 1; m <= 6; ++m) {
    for (int rep = 0; rep < 8; ++rep) {
      const FermionState phi = random_raw_vector(rng, m);
      const FermionState psi = random_raw_vector(rng, m);
      for (int j = 1; j <= m; ++j) {
        const cplx lhs = inner(phi, apply_annihilation(psi, j));
        const cplx rhs = inner(apply_creation(phi, j), psi);
        err_adj = std::max(err_adj, std::abs(lhs - rhs));
      }
    }
  }
  out.push_back(check("fock/ladder_adjointness", err_adj, kExactTol));

  return out;
}

std::vector<CheckResult> verify_jw(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<CheckResult> out;

  // [sigma+_j, sigma-_k] = delta_jk sigma^z_j; [sigma^z_j, sigma+-_k] = +-delta sigma+-_j
  double err_eq7 = 0.0;
  for (int m = 1; m <= 6; ++m) {
    for (int j = 1; j <= m; ++j) {
      const Eigen::MatrixXcd pj = sigma_component(j, PauliComponent::Plus, m);
      const Eigen::MatrixXcd zj = sigma_component(j, PauliComponent::Z, m);
      for (int k = 1; k <= m; ++k) {
        const Eigen::MatrixXcd pk = sigma_component(k, PauliComponent::Plus, m);
        const Eigen::MatrixXcd mk = sigma_component(k, PauliComponent::Minus, m);
        const double delta = (j == k) ? 1.0 : 0.0;
        err_eq7 = std::max(err_eq7, matrix_error(commutator(pj, mk) - delta * zj));
        err_eq7 = std::max(err_eq7, matrix_error(commutator(zj, pk) - delta * 2.0 * pj));
        err_eq7 = std::max(err_eq7, matrix_error(commutator(zj, mk) + delta * 2.0 *
                                                 sigma_component(j, PauliComponent::Minus, m)));
      }
    }
  }
  out.push_back(check("jw/ladder_commutators", err_eq7, kExactTol));

  double err_herm = 0.0, err_invol = 0.0, err_trace = 0.0, err_apply = 0.0;
  for (int m = 1; m <= 6; ++m) {
    const Eigen::Index dim = Eigen::Index{1} << m;
    for (int rep = 0; rep < 4; ++rep) {
      for (int j = 1; j <= m; ++j) {
        const ObservableSpec spec{j, random_direction(rng), ""};
        const Eigen::MatrixXcd s = sigma_direction(spec, m);
        err_herm = std::max(err_herm, matrix_error(s - s.adjoint()));
        err_invol = std::max(err_invol,
                             matrix_error(s * s - Eigen::MatrixXcd::Identity(dim, dim)));
        err_trace = std::max(err_trace, std::abs(s.trace()));
        Eigen::VectorXcd v = to_dense_vector(random_raw_vector(rng, m));
        Eigen::VectorXcd w = s * v;
        apply_sigma_inplace(v, j, spec.direction);
        err_apply = std::max(err_apply, (v - w).cwiseAbs().maxCoeff());
      }
    }
  }
  out.push_back(check("jw/sigma_hermitian", err_herm, kExactTol));
  out.push_back(check("jw/sigma_involutory", err_invol, kExactTol));
  out.push_back(check("jw/sigma_traceless", err_trace, kExactTol));
  out.push_back(check("jw/sigma_sparse_action", err_apply, kExactTol));

  double err_cross = 0.0;
  for (int m = 2; m <= 6; ++m) {
    for (int rep = 0; rep < 4; ++rep) {
      for (int j = 1; j <= m; ++j) {
        for (int k = j + 1; k <= m; ++k) {
          const Eigen::MatrixXcd sj = sigma_direction({j, random_direction(rng), ""}, m);
          const Eigen::MatrixXcd sk = sigma_direction({k, random_direction(rng), ""}, m);
          err_cross = std::max(err_cross, matrix_error(commutator(sj, sk)));
        }
      }
    }
  }
  out.push_back(check("jw/cross_mode_commutativity", err_cross, kExactTol));

  double err_proj = 0.0;
  for (int m = 1; m <= 4; ++m) {
    const Eigen::Index dim = Eigen::Index{1} << m;
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim, dim);
    for (int rep = 0; rep < 4; ++rep) {
      for (int j = 1; j <= m; ++j) {
        const ObservableSpec spec{j, random_direction(rng), ""};
        const Eigen::MatrixXcd p0 = eigenprojector(spec, 0, m);
        const Eigen::MatrixXcd p1 = eigenprojector(spec, 1, m);
        const Eigen::MatrixXcd s = sigma_direction(spec, m);
        err_proj = std::max(err_proj, matrix_error(p0 + p1 - id));
        err_proj = std::max(err_proj, matrix_error(p0 * p0 - p0));
        err_proj = std::max(err_proj, matrix_error(p1 * p1 - p1));
        err_proj = std::max(err_proj, matrix_error(s * p0 + p0));
      }
    }
  }
  out.push_back(check("jw/eigenprojector_algebra", err_proj, kExactTol));

  double err_full = 0.0;
  for (int m = 1; m <= 8; ++m) {
    for (int rep = 0; rep < 100; ++rep) {
      const FermionState psi = random_raw_vector(rng, m);
      std::vector<Direction> dirs;
      for (int j = 0; j < m; ++j) dirs.push_back(random_direction(rng));
      err_full = std::max(err_full, correspondence_check(psi, dirs).abs_diff);
    }
  }
  out.push_back(check("jw/correspondence_full_string", err_full, kEqTol));

  double err_partial = 0.0;
  for (int m = 2; m <= 6; ++m) {
    for (int rep = 0; rep < 50; ++rep) {
      const FermionState psi = random_raw_vector(rng, m);
      MeasurementContext ctx(m);
      for (int j = 1; j <= m; ++j)
        if (rng() & 1) ctx.set(j, random_direction(rng));
      err_partial = std::max(err_partial, correspondence_check(psi, ctx).abs_diff);
    }
  }
  out.push_back(check("jw/correspondence_partial_string", err_partial, kEqTol));

  double err_norm = 0.0;
  for (int m = 1; m <= 8; ++m) {
    const FermionState psi = random_raw_vector(rng, m);
    err_norm = std::max(err_norm, std::abs(fock_to_qubit(psi).norm() - psi.norm()));
  }
  out.push_back(check("jw/fock_to_qubit_norm", err_norm, kExactTol));

  return out;
}

std::vector<CheckResult> verify_correlators(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<CheckResult> out;

  double err_engines = 0.0;
  for (int rep = 0; rep < 200; ++rep) {
    const int m = 1 + static_cast<int>(rng() % 10);
    const int support = 1 + static_cast<int>(rng() % 16);
    const FermionState psi =
        (rep % 4 == 0 && m >= 2)
            ? w_state(m)
            : random_sparse_state(rng, m, std::min<int>(support, 1 << m));
    std::vector<Direction> dirs;
    for (int j = 0; j < m; ++j) dirs.push_back(random_direction(rng));
    const double dense = expectation_dense(psi, MeasurementContext::full(dirs));
    const double fast = expectation_fast(psi, dirs);
    err_engines = std::max(err_engines, std::abs(dense - fast));
  }
  out.push_back(check("correlators/engine_equivalence", err_engines, 1e-9));

  double err_elements = 0.0;
  for (int m = 1; m <= 5; ++m) {
    const Eigen::Index dim = Eigen::Index{1} << m;
    for (int rep = 0; rep < 2; ++rep) {
      std::vector<Direction> dirs;
      for (int j = 0; j < m; ++j) dirs.push_back(random_direction(rng));
      std::vector<Eigen::MatrixXcd> sig;
      for (int j = 1; j <= m; ++j)
        sig.push_back(sigma_direction({j, dirs[static_cast<std::size_t>(j - 1)], ""}, m));
      for (Pattern mu = 0; mu < static_cast<Pattern>(dim); ++mu) {
        Eigen::VectorXcd col = Eigen::VectorXcd::Zero(dim);
        col[static_cast<Eigen::Index>(mu)] = 1.0;
        for (int j = m; j >= 1; --j) col = sig[static_cast<std::size_t>(j - 1)] * col;
        for (Pattern nu = 0; nu < static_cast<Pattern>(dim); ++nu) {
          const cplx dense = col[static_cast<Eigen::Index>(nu)];
          const cplx closed = matrix_element_closed_form(nu, mu, dirs);
          err_elements = std::max(err_elements, std::abs(dense - closed));
        }
      }
    }
  }
  out.push_back(check("correlators/closed_form_elements", err_elements, kExactTol));

  double err_total = 0.0, err_negative = 0.0;
  for (int rep = 0; rep < 10; ++rep) {
    const FermionState psi = random_physical_state(rng, 3);
    std::vector<Direction> dirs{random_direction(rng), random_direction(rng),
                                random_direction(rng)};
    double total = 0.0;
    for (int bits = 0; bits < 8; ++bits) {
      OutcomeContext ctx(3);
      for (int j = 1; j <= 3; ++j)
        ctx.set(j, dirs[static_cast<std::size_t>(j - 1)], (bits >> (j - 1)) & 1);
      const double p = joint_probability(psi, ctx);
      err_negative = std::max(err_negative, std::max(0.0, -p));
      total += p;
    }
    err_total = std::max(err_total, std::abs(total - 1.0));
  }
  out.push_back(check("correlators/probability_normalization", err_total, kEqTol));
  out.push_back(check("correlators/probability_nonnegative", err_negative, kExactTol));

  // Relabeling outcome <-> 1-outcome together with theta -> theta + pi at one
  // mode leaves every joint probability unchanged.
  double err_relabel = 0.0;
  for (int rep = 0; rep < 20; ++rep) {
    const int m = 2 + static_cast<int>(rng() % 3);
    const FermionState psi = random_physical_state(rng, m);
    std::vector<Direction> dirs;
    std::vector<int> outcomes;
    for (int j = 0; j < m; ++j) {
      dirs.push_back(random_direction(rng));
      outcomes.push_back(static_cast<int>(rng() & 1));
    }
    const int flip = 1 + static_cast<int>(rng() % m);
    OutcomeContext a(m), b(m);
    for (int j = 1; j <= m; ++j) {
      Direction d = dirs[static_cast<std::size_t>(j - 1)];
      int o = outcomes[static_cast<std::size_t>(j - 1)];
      a.set(j, d, o);
      if (j == flip) {
        d.theta += std::numbers::pi;
        o = 1 - o;
      }
      b.set(j, d, o);
    }
    err_relabel =
        std::max(err_relabel, std::abs(joint_probability(psi, a) - joint_probability(psi, b)));
  }
  out.push_back(check("correlators/outcome_relabel_invariance", err_relabel, kEqTol));

  double err_expand = 0.0;
  for (int rep = 0; rep < 10; ++rep) {
    const int m = 2 + static_cast<int>(rng() % 2);
    const FermionState psi = random_physical_state(rng, m);
    OutcomeContext ctx(m);
    for (int j = 1; j <= m; ++j)
      ctx.set(j, random_direction(rng), static_cast<int>(rng() & 1));
    err_expand = std::max(err_expand, std::abs(joint_probability(psi, ctx) -
                                               joint_probability_from_correlators(psi, ctx)));
  }
  out.push_back(check("correlators/projector_expansion", err_expand, kEqTol));

  double err_sparse = 0.0;
  for (int rep = 0; rep < 10; ++rep) {
    const int m = 3 + static_cast<int>(rng() % 3);
    const FermionState psi = random_physical_state(rng, m);
    OutcomeContext ctx(m);
    for (int j = 1; j <= m; ++j)
      ctx.set(j, random_direction(rng), static_cast<int>(rng() & 1));
    // dense_cap = 1 forces the sparse projector path
    err_sparse = std::max(err_sparse, std::abs(joint_probability(psi, ctx) -
                                               joint_probability(psi, ctx, 1)));
  }
  out.push_back(check("correlators/sparse_path_agreement", err_sparse, kEqTol));

  return out;
}

std::vector<CheckResult> verify_inequalities(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<CheckResult> out;

  double err_bounds = std::abs(chsh_nchv_bound() - 2.0) + std::abs(pm_nchv_bound() - 4.0);
  for (int m = 2; m <= 5; ++m) err_bounds += std::abs(hardy_nchv_bound(m));
  out.push_back(check("inequalities/nchv_bounds_exact", err_bounds, 0.0));

  const double tsirelson = 2.0 * std::sqrt(2.0);
  double err_cap = 0.0;
  for (int rep = 0; rep < 10000; ++rep) {
    const FermionState psi = random_physical_state(rng, 2);
    const ChshSettings s{random_direction(rng), random_direction(rng),
                         random_direction(rng), random_direction(rng)};
    err_cap = std::max(err_cap, std::abs(chsh_value(psi, s)) - tsirelson);
  }
  out.push_back(check("inequalities/tsirelson_cap", std::max(0.0, err_cap), 1e-9));

  double err_pm = 0.0;
  for (int rep = 0; rep < 50; ++rep)
    err_pm = std::max(err_pm,
                      std::abs(pm_square_value(random_density_state(rng, 2)) - 6.0));
  out.push_back(check("inequalities/pm_state_independent_6", err_pm, kEqTol));

  double err_formula = 0.0;
  for (int i = 0; i <= 20; ++i) {
    const double g1sq = i * 0.05;
    const double g1 = std::sqrt(g1sq);
    const double g2 = std::sqrt(1.0 - g1sq);
    const ChshOptimum opt = chsh_analytic_optimum(g1, g2);
    const FermionState psi = FermionState::single_particle(
        std::vector<cplx>{cplx{g1, 0.0}, cplx{g2, 0.0}});
    err_formula = std::max(err_formula, std::abs(chsh_value(psi, opt.settings) - opt.value));
  }
  out.push_back(check("inequalities/chsh_analytic_settings", err_formula, 1e-9));

  double err_equal = 0.0;
  for (int rep = 0; rep < 10; ++rep) {
    const int m = 2 + static_cast<int>(rng() % 3);
    const FermionState psi = random_physical_state(rng, m);
    HardySettings s;
    for (int j = 0; j < m; ++j) s.unprimed.push_back(random_direction(rng));
    s.primed = s.unprimed;
    err_equal = std::max(err_equal, hardy_value(psi, s));
  }
  out.push_back(check("inequalities/hardy_equal_settings_nonpositive",
                      std::max(0.0, err_equal), kExactTol));

  return out;
}

std::vector<CheckResult> verify_scope(const std::string& scope, std::uint64_t seed) {
  if (scope != "all" && scope != "fock" && scope != "jw" && scope != "correlators" &&
      scope != "inequalities")
    throw DomainError("unknown verify scope: " + scope);
  std::vector<CheckResult> out;
  auto append = [&](std::vector<CheckResult> rows) {
    out.insert(out.end(), rows.begin(), rows.end());
  };
  if (scope == "all" || scope == "fock") append(verify_fock(seed));
  if (scope == "all" || scope == "jw") append(verify_jw(seed + 1));
  if (scope == "all" || scope == "correlators") append(verify_correlators(seed + 2));
  if (scope == "all" || scope == "inequalities") append(verify_inequalities(seed + 3));
  return out;
}

bool all_pass(const std::vector<CheckResult>& results) {
  for (const CheckResult& r : results)
    if (!r.pass) return false;
  return true;
}

}  // namespace jwcontext

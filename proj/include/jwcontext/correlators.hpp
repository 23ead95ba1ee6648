#pragma once

#include "jwcontext/fock.hpp"
#include "jwcontext/jw.hpp"
#include "jwcontext/types.hpp"

#include <optional>
#include <span>
#include <vector>

namespace jwcontext {

// ---------------------------------------------------------------------------
// Dense expectation engine (the oracle)
// ---------------------------------------------------------------------------

/// < psi | prod_j sigma_j | psi > over the assigned modes; identity elsewhere.
double expectation_dense(const FermionState& state, const MeasurementContext& context,
                         int dense_cap = kDefaultDenseCap);
double expectation_dense(const DensityState& state, const MeasurementContext& context,
                         int dense_cap = kDefaultDenseCap);

// ---------------------------------------------------------------------------
// Closed-form engine (standard-form reduction of full-string elements)
// ---------------------------------------------------------------------------

/// One vacuum matrix element
/// < vac | (a_M)^nu_M ... (a_1)^nu_1 sigma_1 ... sigma_M (a_1^dag)^mu_1 ... |vac >
/// in reduced form: a global sign (-1)^eta and per-mode factors evaluated at
/// tilde_theta_j = (-1)^xi_j theta_j.
struct ClosedFormElement {
  Pattern nu = 0;
  Pattern mu = 0;
  int eta = 0;
  std::vector<int> xi;
  std::vector<double> tilde_thetas;
  cplx value{0.0, 0.0};
};

/// eta = sum_{s<t} (mu_s + nu_s) nu_t.
int closed_form_eta(Pattern nu, Pattern mu, int mode_count);

/// xi_j = sum_{s>j} nu_s (so xi_M = 0).
std::vector<int> closed_form_xi(Pattern nu, int mode_count);

ClosedFormElement closed_form_element(Pattern nu, Pattern mu,
                                      std::span<const Direction> directions);

cplx matrix_element_closed_form(Pattern nu, Pattern mu,
                                std::span<const Direction> directions);

/// Full-string expectation as the bilinear sum
/// sum_{nu,mu in support} conj(t_nu) t_mu elem(nu, mu); cost O(S^2 M).
/// Accumulation order is lexicographic in (nu, mu) for reproducibility.
double expectation_fast(const FermionState& state,
                        std::span<const Direction> directions);

/// Requires a full context (one direction per mode).
double expectation_fast(const FermionState& state, const MeasurementContext& context);

// ---------------------------------------------------------------------------
// Joint outcome probabilities
// ---------------------------------------------------------------------------

struct OutcomeSpec {
  Direction direction;
  int outcome = 0;  // 0 <-> eigenvalue -1, 1 <-> eigenvalue +1
};

/// Per-mode (direction, outcome) assignment; unassigned modes are marginalized.
class OutcomeContext {
 public:
  explicit OutcomeContext(int mode_count);
  OutcomeContext& set(int mode, Direction direction, int outcome);
  const std::optional<OutcomeSpec>& at(int mode) const;

  int mode_count() const { return mode_count_; }
  int assigned_count() const;
  bool is_full() const;

 private:
  int mode_count_ = 1;
  std::vector<std::optional<OutcomeSpec>> entries_;
};

/// Probability of the given joint outcomes. For M <= dense_cap the dense
/// projector product is used; above the cap, pure states are handled by
/// sparse projector application on the pattern map (capped at support_cap).
double joint_probability(const FermionState& state, const OutcomeContext& outcomes,
                         int dense_cap = kDefaultDenseCap,
                         std::size_t support_cap = kDefaultSupportCap);

/// Density states take the dense path only (CapacityError above the cap).
double joint_probability(const DensityState& state, const OutcomeContext& outcomes,
                         int dense_cap = kDefaultDenseCap);

/// Cross-validation path: expands every projector as (1 +- sigma)/2 into 2^M
/// correlator terms, each evaluated by the dense engine. Requires a full
/// outcome assignment and M <= dense_cap.
double joint_probability_from_correlators(const FermionState& state,
                                          const OutcomeContext& outcomes,
                                          int dense_cap = kDefaultDenseCap);

}  // namespace jwcontext

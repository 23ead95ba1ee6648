#include "jwcontext/correlators.hpp"
#include "jwcontext/fock.hpp"
#include "jwcontext/inequalities.hpp"
#include "jwcontext/io.hpp"
#include "jwcontext/jw.hpp"
#include "jwcontext/modegrid.hpp"
#include "jwcontext/optimize.hpp"
#include "jwcontext/random.hpp"
#include "jwcontext/verify.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace jwcontext;

namespace {

MeasurementContext context_from_entries(
    int mode_count, const std::map<int, Direction>& entries) {
  MeasurementContext ctx(mode_count);
  for (const auto& [mode, dir] : entries) ctx.set(mode, dir);
  return ctx;
}

OutcomeContext outcomes_from_entries(
    int mode_count, const std::map<int, std::pair<Direction, int>>& entries) {
  OutcomeContext ctx(mode_count);
  for (const auto& [mode, spec] : entries) ctx.set(mode, spec.first, spec.second);
  return ctx;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Jordan-Wigner observables over fermionic modes and "
            "noncontextuality-inequality tools (C++ core)";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<NormalizationError>(m, "NormalizationError", PyExc_ValueError);
  py::register_exception<CapacityError>(m, "CapacityError", PyExc_RuntimeError);

  // ---- fock ----
  py::class_<FermionState>(m, "FermionState")
      .def_static("single_particle",
                  [](const std::vector<cplx>& g, const std::string& label) {
                    return FermionState::single_particle(g, label);
                  },
                  py::arg("g"), py::arg("label") = "")
      .def_static("n_particle", &FermionState::n_particle, py::arg("mode_count"),
                  py::arg("coefficients"), py::arg("label") = "")
      .def_static("from_amplitudes",
                  [](int mode_count, const std::map<Pattern, cplx>& amps,
                     const std::string& label) {
                    return FermionState::from_amplitudes(
                        mode_count, FermionState::AmplitudeMap(amps.begin(), amps.end()),
                        label);
                  },
                  py::arg("mode_count"), py::arg("amplitudes"), py::arg("label") = "")
      .def_static("raw_vector",
                  [](int mode_count, const std::map<Pattern, cplx>& amps,
                     const std::string& label) {
                    return FermionState::raw_vector(
                        mode_count, FermionState::AmplitudeMap(amps.begin(), amps.end()),
                        label);
                  },
                  py::arg("mode_count"), py::arg("amplitudes"), py::arg("label") = "")
      .def_property_readonly("mode_count", &FermionState::mode_count)
      .def_property_readonly("label", &FermionState::label)
      .def("amplitudes",
           [](const FermionState& s) {
             return std::map<Pattern, cplx>(s.amplitudes().begin(), s.amplitudes().end());
           })
      .def("amplitude", &FermionState::amplitude)
      .def("norm", &FermionState::norm)
      .def("number_expectation", &FermionState::number_expectation)
      .def("single_parity_sector", &FermionState::single_parity_sector)
      .def("__repr__", [](const FermionState& s) {
        return "<FermionState M=" + std::to_string(s.mode_count()) + " support=" +
               std::to_string(s.amplitudes().size()) + ">";
      });

  py::class_<DensityState>(m, "DensityState")
      .def_static("pure", &DensityState::pure)
      .def_static("from_mixture", &DensityState::from_mixture, py::arg("weights"),
                  py::arg("states"))
      .def_static("from_matrix", &DensityState::from_matrix, py::arg("mode_count"),
                  py::arg("rho"), py::arg("tol") = kEqTol)
      .def_static("maximally_mixed", &DensityState::maximally_mixed,
                  py::arg("mode_count"), py::arg("dense_cap") = kDefaultDenseCap)
      .def_property_readonly("mode_count", &DensityState::mode_count)
      .def("is_mixture", &DensityState::is_mixture)
      .def("to_matrix", &DensityState::to_matrix, py::arg("dense_cap") = kDefaultDenseCap);

  m.def("w_state", &w_state, py::arg("mode_count"));
  m.def("dicke_state", &dicke_state, py::arg("mode_count"), py::arg("excitations"));
  m.def("apply_creation", &apply_creation, py::arg("state"), py::arg("mode"));
  m.def("apply_annihilation", &apply_annihilation, py::arg("state"), py::arg("mode"));

  py::enum_<LadderKind>(m, "LadderKind")
      .value("Creation", LadderKind::Creation)
      .value("Annihilation", LadderKind::Annihilation);
  m.def("operator_matrix", &operator_matrix, py::arg("mode"), py::arg("kind"),
        py::arg("mode_count"), py::arg("dense_cap") = kDefaultDenseCap);
  m.def("to_dense_vector", &to_dense_vector, py::arg("state"),
        py::arg("dense_cap") = kDefaultDenseCap);
  m.def("pattern_to_string", &pattern_to_string);
  m.def("pattern_from_string", &pattern_from_string);

  // ---- jw ----
  py::class_<Direction>(m, "Direction")
      .def(py::init([](double theta, double phi) {
             return Direction{theta, phi};
           }),
           py::arg("theta") = 0.0, py::arg("phi") = 0.0)
      .def_readwrite("theta", &Direction::theta)
      .def_readwrite("phi", &Direction::phi)
      .def("unit_vector", &Direction::unit_vector)
      .def_static("from_vector", &Direction::from_vector)
      .def("__repr__", [](const Direction& d) {
        return "Direction(theta=" + fmt_sig9(d.theta) + ", phi=" + fmt_sig9(d.phi) + ")";
      });

  py::enum_<PauliComponent>(m, "PauliComponent")
      .value("Plus", PauliComponent::Plus)
      .value("Minus", PauliComponent::Minus)
      .value("Z", PauliComponent::Z);

  m.def("sigma_component", &sigma_component, py::arg("mode"), py::arg("component"),
        py::arg("mode_count"), py::arg("dense_cap") = kDefaultDenseCap);
  m.def("sigma_direction",
        [](int mode, const Direction& d, int mode_count, int dense_cap) {
          return sigma_direction(ObservableSpec{mode, d, ""}, mode_count, dense_cap);
        },
        py::arg("mode"), py::arg("direction"), py::arg("mode_count"),
        py::arg("dense_cap") = kDefaultDenseCap);
  m.def("eigenprojector",
        [](int mode, const Direction& d, int outcome, int mode_count, int dense_cap) {
          return eigenprojector(ObservableSpec{mode, d, ""}, outcome, mode_count,
                                dense_cap);
        },
        py::arg("mode"), py::arg("direction"), py::arg("outcome"), py::arg("mode_count"),
        py::arg("dense_cap") = kDefaultDenseCap);
  m.def("hatted_pauli", &hatted_pauli, py::arg("direction"));
  m.def("fock_to_qubit", &fock_to_qubit, py::arg("state"),
        py::arg("dense_cap") = kDefaultDenseCap);

  m.def("correspondence_check",
        [](const FermionState& state, const std::vector<Direction>& dirs, int dense_cap) {
          const CorrespondenceResult r = correspondence_check(state, dirs, dense_cap);
          return py::make_tuple(r.lhs, r.rhs, r.abs_diff);
        },
        py::arg("state"), py::arg("directions"), py::arg("dense_cap") = kDefaultDenseCap,
        "Returns (lhs, rhs, abs_diff) for the full-string correspondence");
  m.def("correspondence_check_partial",
        [](const FermionState& state, const std::map<int, Direction>& entries,
           int dense_cap) {
          const CorrespondenceResult r = correspondence_check(
              state, context_from_entries(state.mode_count(), entries), dense_cap);
          return py::make_tuple(r.lhs, r.rhs, r.abs_diff);
        },
        py::arg("state"), py::arg("entries"), py::arg("dense_cap") = kDefaultDenseCap,
        "Partial-string correspondence; entries maps mode -> Direction");

  // ---- correlators ----
  m.def("expectation_dense",
        [](const FermionState& state, const std::map<int, Direction>& entries,
           int dense_cap) {
          return expectation_dense(
              state, context_from_entries(state.mode_count(), entries), dense_cap);
        },
        py::arg("state"), py::arg("entries"), py::arg("dense_cap") = kDefaultDenseCap);
  m.def("expectation_dense_mixed",
        [](const DensityState& state, const std::map<int, Direction>& entries,
           int dense_cap) {
          return expectation_dense(
              state, context_from_entries(state.mode_count(), entries), dense_cap);
        },
        py::arg("state"), py::arg("entries"), py::arg("dense_cap") = kDefaultDenseCap);
  m.def("expectation_fast",
        [](const FermionState& state, const std::vector<Direction>& dirs) {
          return expectation_fast(state, dirs);
        },
        py::arg("state"), py::arg("directions"));
  m.def("matrix_element_closed_form",
        [](Pattern nu, Pattern mu, const std::vector<Direction>& dirs) {
          return matrix_element_closed_form(nu, mu, dirs);
        },
        py::arg("nu"), py::arg("mu"), py::arg("directions"));
  m.def("closed_form_eta", &closed_form_eta, py::arg("nu"), py::arg("mu"),
        py::arg("mode_count"));
  m.def("closed_form_xi", &closed_form_xi, py::arg("nu"), py::arg("mode_count"));
  m.def("joint_probability",
        [](const FermionState& state,
           const std::map<int, std::pair<Direction, int>>& entries, int dense_cap) {
          return joint_probability(state, outcomes_from_entries(state.mode_count(), entries),
                                   dense_cap);
        },
        py::arg("state"), py::arg("entries"), py::arg("dense_cap") = kDefaultDenseCap,
        "entries maps mode -> (Direction, outcome)");

  // ---- inequalities ----
  py::class_<ChshSettings>(m, "ChshSettings")
      .def(py::init([](Direction a1, Direction a2, Direction a1p, Direction a2p) {
             return ChshSettings{a1, a2, a1p, a2p};
           }),
           py::arg("a1"), py::arg("a2"), py::arg("a1_primed"), py::arg("a2_primed"))
      .def_readwrite("a1", &ChshSettings::a1)
      .def_readwrite("a2", &ChshSettings::a2)
      .def_readwrite("a1_primed", &ChshSettings::a1_primed)
      .def_readwrite("a2_primed", &ChshSettings::a2_primed);

  py::class_<HardySettings>(m, "HardySettings")
      .def(py::init([](std::vector<Direction> unprimed, std::vector<Direction> primed) {
             return HardySettings{std::move(unprimed), std::move(primed)};
           }),
           py::arg("unprimed"), py::arg("primed"))
      .def_readwrite("unprimed", &HardySettings::unprimed)
      .def_readwrite("primed", &HardySettings::primed);

  py::class_<InequalityReport>(m, "InequalityReport")
      .def_readonly("name", &InequalityReport::name)
      .def_readonly("quantum_value", &InequalityReport::quantum_value)
      .def_readonly("nc_bound", &InequalityReport::nc_bound)
      .def_readonly("margin", &InequalityReport::margin)
      .def_readonly("state_label", &InequalityReport::state_label)
      .def("violated", &InequalityReport::violated)
      .def("render", [](const InequalityReport& r, const std::string& format) {
        return render_report(r, parse_output_format(format));
      }, py::arg("format") = "table");

  m.def("chsh_value",
        py::overload_cast<const FermionState&, const ChshSettings&, int>(&chsh_value),
        py::arg("state"), py::arg("settings"), py::arg("dense_cap") = kDefaultDenseCap);
  m.def("chsh_value_mixed",
        py::overload_cast<const DensityState&, const ChshSettings&, int>(&chsh_value),
        py::arg("state"), py::arg("settings"), py::arg("dense_cap") = kDefaultDenseCap);
  m.def("chsh_analytic_optimum",
        [](double g1, double g2) {
          const ChshOptimum opt = chsh_analytic_optimum(g1, g2);
          return py::make_tuple(opt.settings, opt.value);
        },
        py::arg("g1"), py::arg("g2"));
  m.def("hardy_value", &hardy_value, py::arg("state"), py::arg("settings"),
        py::arg("dense_cap") = kDefaultDenseCap);
  m.def("pm_square_value", &pm_square_value, py::arg("state"),
        py::arg("dense_cap") = kDefaultDenseCap);
  m.def("nchv_bound", &nchv_bound, py::arg("name"), py::arg("mode_count") = 2);

  // ---- optimizer ----
  py::enum_<Inequality>(m, "Inequality")
      .value("Chsh", Inequality::Chsh)
      .value("Hardy", Inequality::Hardy);

  py::class_<OptimizerConfig>(m, "OptimizerConfig")
      .def(py::init<>())
      .def_readwrite("restarts", &OptimizerConfig::restarts)
      .def_readwrite("max_sweeps", &OptimizerConfig::max_sweeps)
      .def_readwrite("tolerance", &OptimizerConfig::tolerance)
      .def_readwrite("seed", &OptimizerConfig::seed)
      .def_readwrite("grid_resolution", &OptimizerConfig::grid_resolution);

  py::class_<AscentResult>(m, "AscentResult")
      .def_readonly("labels", &AscentResult::labels)
      .def_readonly("value", &AscentResult::value)
      .def_readonly("sweeps", &AscentResult::sweeps)
      .def_readonly("converged", &AscentResult::converged)
      .def("trace_values", [](const AscentResult& r) {
        std::vector<double> values;
        for (const TraceRow& row : r.trace) values.push_back(row.value);
        return values;
      });

  m.def("inequality_value",
        [](const FermionState& state, Inequality ineq, const std::vector<Direction>& labels) {
          return inequality_value(state, ineq, labels);
        },
        py::arg("state"), py::arg("inequality"), py::arg("labels"));
  m.def("coordinate_ascent", &coordinate_ascent, py::arg("state"), py::arg("inequality"),
        py::arg("initial"), py::arg("config"));
  m.def("optimize_settings", &optimize_settings, py::arg("state"), py::arg("inequality"),
        py::arg("config"));
  m.def("certify_local_max",
        [](const FermionState& state, Inequality ineq, const std::vector<Direction>& labels,
           double epsilon) {
          return certify_local_max(state, ineq, labels, epsilon);
        },
        py::arg("state"), py::arg("inequality"), py::arg("labels"), py::arg("epsilon"));
  m.def("grid_search",
        [](const FermionState& state, Inequality ineq, int resolution, int refinements) {
          const GridResult r = grid_search(state, ineq, resolution, refinements);
          return py::make_tuple(r.labels, r.value);
        },
        py::arg("state"), py::arg("inequality"), py::arg("resolution"),
        py::arg("refinements") = 6);

  // ---- complementarity ----
  py::class_<ModeGrid>(m, "ModeGrid")
      .def_static("uniform", &ModeGrid::uniform, py::arg("length"), py::arg("point_count"))
      .def_readonly("length", &ModeGrid::length)
      .def_readonly("point_count", &ModeGrid::point_count)
      .def("positions", &ModeGrid::positions)
      .def("momenta", &ModeGrid::momenta);

  m.def("momentum_to_position", &momentum_to_position, py::arg("state"), py::arg("grid"));
  m.def("position_to_momentum", &position_to_momentum, py::arg("state"), py::arg("grid"));
  m.def("position_basis_report", &position_basis_report, py::arg("state"), py::arg("grid"),
        py::arg("config"));

  // ---- verify / io ----
  py::class_<CheckResult>(m, "CheckResult")
      .def_readonly("name", &CheckResult::name)
      .def_readonly("max_error", &CheckResult::max_error)
      .def_readonly("threshold", &CheckResult::threshold)
      .def_readonly("pass_", &CheckResult::pass)
      .def("__repr__", [](const CheckResult& r) {
        return "<CheckResult " + r.name + (r.pass ? " pass>" : " FAIL>");
      });
  m.def("verify_scope", &verify_scope, py::arg("scope") = "all", py::arg("seed") = 42);

  m.def("load_state_file",
        [](const std::string& path) -> py::object {
          const LoadedState s = load_state_file(path);
          if (std::holds_alternative<FermionState>(s))
            return py::cast(std::get<FermionState>(s));
          return py::cast(std::get<DensityState>(s));
        },
        py::arg("path"));
  m.def("save_state_file", &save_state_file, py::arg("path"), py::arg("state"));
  m.def("state_to_json_text", &state_to_json_text, py::arg("state"));

#ifdef JWCONTEXT_VERSION
  m.attr("__version__") = JWCONTEXT_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}

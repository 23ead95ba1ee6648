#include "jwcontext/io.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

namespace jwcontext {

using json = nlohmann::ordered_json;

OutputFormat parse_output_format(const std::string& name) {
  if (name == "table") return OutputFormat::Table;
  if (name == "json") return OutputFormat::Json;
  if (name == "csv") return OutputFormat::Csv;
  throw DomainError("unknown output format: " + name);
}

std::string fmt_sig9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::string fmt_full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// State files
// ---------------------------------------------------------------------------

namespace {

FermionState pure_state_from_json(const json& j) {
  if (!j.contains("mode_count") || !j["mode_count"].is_number_integer())
    throw DomainError("state file needs an integer 'mode_count'");
  if (!j.contains("amplitudes") || !j["amplitudes"].is_array())
    throw DomainError("state file needs an 'amplitudes' array");
  const int mode_count = j["mode_count"].get<int>();
  FermionState::AmplitudeMap amps;
  for (const auto& rec : j["amplitudes"]) {
    if (!rec.contains("pattern") || !rec["pattern"].is_string())
      throw DomainError("amplitude records need a 'pattern' string");
    const std::string bits = rec["pattern"].get<std::string>();
    if (static_cast<int>(bits.size()) != mode_count)
      throw DomainError("pattern length does not match mode_count");
    const double re = rec.value("re", 0.0);
    const double im = rec.value("im", 0.0);
    amps[pattern_from_string(bits)] += cplx{re, im};
  }
  return FermionState::from_amplitudes(mode_count, std::move(amps),
                                       j.value("label", std::string{}));
}

json pure_state_to_json(const FermionState& state) {
  json amps = json::array();
  for (const auto& [p, a] : state.amplitudes())
    amps.push_back({{"pattern", pattern_to_string(p, state.mode_count())},
                    {"re", a.real()},
                    {"im", a.imag()}});
  json j{{"mode_count", state.mode_count()}, {"amplitudes", std::move(amps)}};
  if (!state.label().empty()) j["label"] = state.label();
  return j;
}

json settings_to_json(std::span<const LabeledDirection> settings) {
  json arr = json::array();
  for (const LabeledDirection& s : settings)
    arr.push_back({{"label", s.label},
                   {"theta_rad", s.direction.theta},
                   {"theta_deg", s.direction.theta * 180.0 / std::numbers::pi},
                   {"phi_rad", s.direction.phi},
                   {"phi_deg", s.direction.phi * 180.0 / std::numbers::pi}});
  return arr;
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

LoadedState state_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("state file is not valid JSON: ") + e.what());
  }
  if (j.contains("weights")) {
    if (!j.contains("states") || !j["states"].is_array() || !j["weights"].is_array())
      throw DomainError("mixture files need parallel 'weights' and 'states' arrays");
    std::vector<double> weights;
    std::vector<FermionState> states;
    for (const auto& w : j["weights"]) weights.push_back(w.get<double>());
    for (const auto& s : j["states"]) states.push_back(pure_state_from_json(s));
    return DensityState::from_mixture(std::move(weights), std::move(states));
  }
  return pure_state_from_json(j);
}

LoadedState load_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open state file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return state_from_json_text(buf.str());
}

std::string state_to_json_text(const FermionState& state) {
  return pure_state_to_json(state).dump(2) + "\n";
}

std::string mixture_to_json_text(const DensityState& state) {
  if (!state.is_mixture())
    throw DomainError("only mixture-form density states have a file representation");
  json j;
  j["weights"] = json::array();
  j["states"] = json::array();
  for (const auto& [w, psi] : state.mixture()) {
    j["weights"].push_back(w);
    j["states"].push_back(pure_state_to_json(psi));
  }
  return j.dump(2) + "\n";
}

void save_state_file(const std::string& path, const FermionState& state) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write state file: " + path);
  out << state_to_json_text(state);
}

// ---------------------------------------------------------------------------
// Report rendering
// ---------------------------------------------------------------------------

std::string format_settings_text(std::span<const LabeledDirection> settings) {
  std::string out;
  for (std::size_t i = 0; i < settings.size(); ++i) {
    const LabeledDirection& s = settings[i];
    if (i) out += "; ";
    out += s.label + ": theta=" + fmt_sig9(s.direction.theta) + " rad (" +
           fmt_sig9(s.direction.theta * 180.0 / std::numbers::pi) + " deg) phi=" +
           fmt_sig9(s.direction.phi) + " rad (" +
           fmt_sig9(s.direction.phi * 180.0 / std::numbers::pi) + " deg)";
  }
  return out;
}

std::string render_report(const InequalityReport& report, OutputFormat format) {
  switch (format) {
    case OutputFormat::Json: {
      json j{{"name", report.name},
             {"quantum_value", report.quantum_value},
             {"nc_bound", report.nc_bound},
             {"margin", report.margin},
             {"violated", report.violated()},
             {"state_label", report.state_label},
             {"settings", settings_to_json(report.settings)}};
      return j.dump(2) + "\n";
    }
    case OutputFormat::Csv: {
      std::string out = "name,quantum_value,nc_bound,margin,violated,state_label,settings\n";
      out += report.name + ',' + fmt_full(report.quantum_value) + ',' +
             fmt_full(report.nc_bound) + ',' + fmt_full(report.margin) + ',' +
             (report.violated() ? "true" : "false") + ',' + csv_quote(report.state_label) +
             ',' + csv_quote(format_settings_text(report.settings)) + '\n';
      return out;
    }
    case OutputFormat::Table:
    default: {
      std::ostringstream out;
      out << "inequality     " << report.name << '\n'
          << "state          " << report.state_label << '\n'
          << "quantum value  " << fmt_sig9(report.quantum_value) << '\n'
          << "nc bound       " << fmt_sig9(report.nc_bound) << '\n'
          << "margin         " << fmt_sig9(report.margin) << '\n'
          << "violated       " << (report.violated() ? "yes" : "no") << '\n'
          << "settings\n";
      for (const LabeledDirection& s : report.settings)
        out << "  " << s.label << ": theta=" << fmt_sig9(s.direction.theta) << " rad ("
            << fmt_sig9(s.direction.theta * 180.0 / std::numbers::pi) << " deg) phi="
            << fmt_sig9(s.direction.phi) << " rad ("
            << fmt_sig9(s.direction.phi * 180.0 / std::numbers::pi) << " deg)\n";
      return out.str();
    }
  }
}

std::string render_chsh_scan(std::span<const ChshScanRow> rows, OutputFormat format) {
  switch (format) {
    case OutputFormat::Json: {
      json arr = json::array();
      for (const ChshScanRow& r : rows)
        arr.push_back({{"g1_squared", r.g1_squared},
                       {"analytic_value", r.analytic_value},
                       {"optimized_value", r.optimized_value},
                       {"margin", r.optimized_value - 2.0},
                       {"settings", settings_to_json(chsh_labeled_settings(r.optimized_settings))}});
      return arr.dump(2) + "\n";
    }
    case OutputFormat::Csv: {
      std::string out = "g1_squared,analytic_value,optimized_value,margin,settings\n";
      for (const ChshScanRow& r : rows)
        out += fmt_full(r.g1_squared) + ',' + fmt_full(r.analytic_value) + ',' +
               fmt_full(r.optimized_value) + ',' + fmt_full(r.optimized_value - 2.0) +
               ',' + csv_quote(format_settings_text(chsh_labeled_settings(r.optimized_settings))) +
               '\n';
      return out;
    }
    case OutputFormat::Table:
    default: {
      std::ostringstream out;
      out << "g1_squared     analytic       optimized      margin\n";
      for (const ChshScanRow& r : rows) {
        char line[160];
        std::snprintf(line, sizeof(line), "%-14.9g %-14.9g %-14.9g %-14.9g\n",
                      r.g1_squared, r.analytic_value, r.optimized_value,
                      r.optimized_value - 2.0);
        out << line;
      }
      if (!rows.empty())
        out << "settings (last row): "
            << format_settings_text(chsh_labeled_settings(rows.back().optimized_settings))
            << '\n';
      return out.str();
    }
  }
}

std::string render_verify(std::span<const CheckResult> results, OutputFormat format) {
  switch (format) {
    case OutputFormat::Json: {
      json arr = json::array();
      for (const CheckResult& r : results)
        arr.push_back({{"name", r.name},
                       {"max_error", r.max_error},
                       {"threshold", r.threshold},
                       {"pass", r.pass}});
      return arr.dump(2) + "\n";
    }
    case OutputFormat::Csv: {
      std::string out = "name,max_error,threshold,pass\n";
      for (const CheckResult& r : results)
        out += r.name + ',' + fmt_full(r.max_error) + ',' + fmt_full(r.threshold) + ',' +
               (r.pass ? "true" : "false") + '\n';
      return out;
    }
    case OutputFormat::Table:
    default: {
      std::ostringstream out;
      char line[160];
      std::snprintf(line, sizeof(line), "%-48s %-13s %-13s %s\n", "check", "max_error",
                    "threshold", "status");
      out << line;
      for (const CheckResult& r : results) {
        std::snprintf(line, sizeof(line), "%-48s %-13.3g %-13.3g %s\n", r.name.c_str(),
                      r.max_error, r.threshold, r.pass ? "pass" : "FAIL");
        out << line;
      }
      return out.str();
    }
  }
}

void write_output(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write output file: " + path);
  out << text;
}

}  // namespace jwcontext

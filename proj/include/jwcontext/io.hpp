#pragma once

#include "jwcontext/fock.hpp"
#include "jwcontext/inequalities.hpp"
#include "jwcontext/verify.hpp"

#include <span>
#include <string>
#include <variant>
#include <vector>

namespace jwcontext {

enum class OutputFormat { Table, Json, Csv };

OutputFormat parse_output_format(const std::string& name);

/// 9 significant digits (human tables).
std::string fmt_sig9(double v);
/// Round-trip precision (machine formats).
std::string fmt_full(double v);

using LoadedState = std::variant<FermionState, DensityState>;

/// State files are JSON documents:
///   {"mode_count": M, "amplitudes": [{"pattern": "10", "re": .., "im": ..}], "label": ..}
/// with pattern strings mode 1 leftmost, or mixtures
///   {"weights": [..], "states": [..]}.
LoadedState load_state_file(const std::string& path);
LoadedState state_from_json_text(const std::string& text);

std::string state_to_json_text(const FermionState& state);
std::string mixture_to_json_text(const DensityState& state);
void save_state_file(const std::string& path, const FermionState& state);

/// Canonical settings text, degrees and radians both.
std::string format_settings_text(std::span<const LabeledDirection> settings);

std::string render_report(const InequalityReport& report, OutputFormat format);

struct ChshScanRow {
  double g1_squared = 0.0;
  double analytic_value = 0.0;
  double optimized_value = 0.0;
  ChshSettings optimized_settings;
};

std::string render_chsh_scan(std::span<const ChshScanRow> rows, OutputFormat format);

std::string render_verify(std::span<const CheckResult> results, OutputFormat format);

void write_output(const std::string& path, const std::string& text);

}  // namespace jwcontext

#pragma once

// Frequency sweeps behind the dom, field, energy and emission subcommands.
// Rows always come out in grid order.

#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pbg/app/config.hpp"

namespace pbg::app {

inline constexpr const char* kToolVersion = "0.1.0";

/// A computed quantity was NaN or infinite.
class NonFiniteError : public std::runtime_error {
public:
    NonFiniteError(double w, const std::string& quantity);
};

struct SweepOutput {
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

enum class OutputFormat { csv, json };

/// Metadata as `# key: value` lines, then a header row and one line per row.
void write_csv(std::ostream& out, const SweepOutput& sweep);
/// {"metadata": {...}, "columns": [...], "rows": [[...], ...]}
void write_json(std::ostream& out, const SweepOutput& sweep);
void write_output(std::ostream& out, const SweepOutput& sweep, OutputFormat format);

/// omega, rho * v_bulk for each configured route, T_N.
SweepOutput run_dom(const StackConfig& config);

/// |E|^2 (unit incident amplitude) in cell config.field.cell on
/// omega x (layer, x / thickness); also the cell-local position.
SweepOutput run_field(const StackConfig& config);

/// omega, U_N = integral of n^2 |E|^2 over the stack, T_N.
SweepOutput run_energy(const StackConfig& config);

/// omega, p_rel for each dipole, routed through the first configured DOM route.
SweepOutput run_emission(const StackConfig& config);

} // namespace pbg::app

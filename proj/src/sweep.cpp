#include "pbg/app/sweep.hpp"

#include <cmath>

#include <fmt/format.h>
#include <json.hpp>

#include "pbg/bloch.hpp"
#include "pbg/dom.hpp"
#include "pbg/emission.hpp"
#include "pbg/fields.hpp"

namespace pbg::app {
namespace {

std::string join_routes(const std::vector<DomRoute>& routes)
{
    std::string out;
    for (const auto r : routes) {
        if (!out.empty()) {
            out += ",";
        }
        out += to_string(r);
    }
    return out;
}

SweepOutput start(const StackConfig& config, const std::string& command, const std::vector<DomRoute>& routes)
{
    SweepOutput s;
    s.metadata = {
        {"tool", fmt::format("pbgstack {}", kToolVersion)},
        {"command", command},
        {"config_hash", config_hash(config)},
        {"routes", join_routes(routes)},
        {"periods", std::to_string(config.stack.periods)},
        {"config", canonical_text(config)},
    };
    return s;
}

void push_row(SweepOutput& s, std::vector<double> row, double w)
{
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (!std::isfinite(row[i])) {
            throw NonFiniteError(w, s.columns[i]);
        }
    }
    s.rows.push_back(std::move(row));
}

std::string column_suffix(const std::string& label)
{
    std::string out;
    for (const char c : label) {
        const bool plain = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
        out += plain ? c : '_';
    }
    return out;
}

} // namespace

NonFiniteError::NonFiniteError(double w, const std::string& quantity)
    : std::runtime_error(fmt::format("non-finite {} at omega = {:.17g}", quantity, w))
{
}

void write_csv(std::ostream& out, const SweepOutput& sweep)
{
    for (const auto& [key, value] : sweep.metadata) {
        out << "# " << key << ": " << value << '\n';
    }
    for (std::size_t i = 0; i < sweep.columns.size(); ++i) {
        out << (i ? "," : "") << sweep.columns[i];
    }
    out << '\n';
    for (const auto& row : sweep.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << fmt::format("{:.17g}", row[i]);
        }
        out << '\n';
    }
}

void write_json(std::ostream& out, const SweepOutput& sweep)
{
    nlohmann::ordered_json j;
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (const auto& [key, value] : sweep.metadata) {
        meta[key] = value;
    }
    j["metadata"] = meta;
    j["columns"] = sweep.columns;
    j["rows"] = sweep.rows;
    out << j.dump(1) << '\n';
}

void write_output(std::ostream& out, const SweepOutput& sweep, OutputFormat format)
{
    if (format == OutputFormat::json) {
        write_json(out, sweep);
    } else {
        write_csv(out, sweep);
    }
}

SweepOutput run_dom(const StackConfig& config)
{
    const Stack& stack = config.stack;
    SweepOutput s = start(config, "dom", config.routes);
    s.columns.push_back("omega");
    for (const auto r : config.routes) {
        s.columns.push_back(fmt::format("rho_vbulk_{}", to_string(r)));
    }
    s.columns.push_back("transmittance");
    const double v_bulk = bulk_velocity(stack.cell);
    s.metadata.emplace_back("v_bulk", fmt::format("{:.17g}", v_bulk));

    for (const double w : config.grid.values()) {
        std::vector<double> row{w};
        for (const auto r : config.routes) {
            row.push_back(density_of_modes(stack, w, r).rho * v_bulk);
        }
        row.push_back(stack_amplitudes(stack, w).transmittance());
        push_row(s, std::move(row), w);
    }
    return s;
}

SweepOutput run_field(const StackConfig& config)
{
    const Stack& stack = config.stack;
    SweepOutput s = start(config, "field", {});
    s.metadata.emplace_back("cell", std::to_string(config.field.cell));
    s.metadata.emplace_back("normalization", "unit incident amplitude");
    s.columns = {"omega", "layer", "x_scaled", "x_cell", "intensity"};

    const int samples = config.field.samples;
    for (const double w : config.grid.values()) {
        const CellField field = cell_field(stack, w, config.field.cell);
        for (std::size_t l = 0; l < field.layers().size(); ++l) {
            const LayerField& layer = field.layers()[l];
            for (int j = 0; j < samples; ++j) {
                const double u = static_cast<double>(j) / (samples - 1);
                const double x = layer.begin + u * layer.thickness();
                push_row(s, {w, static_cast<double>(l + 1), u, x, std::norm(layer.value(x))}, w);
            }
        }
    }
    return s;
}

SweepOutput run_energy(const StackConfig& config)
{
    const Stack& stack = config.stack;
    SweepOutput s = start(config, "energy", {});
    s.metadata.emplace_back("normalization", "unit incident amplitude");
    s.columns = {"omega", "energy", "transmittance"};
    for (const double w : config.grid.values()) {
        const auto fields = stack_field(stack, w);
        const double u = stack_energy(fields).total;
        push_row(s, {w, u, stack_amplitudes(stack, w).transmittance()}, w);
    }
    return s;
}

SweepOutput run_emission(const StackConfig& config)
{
    const Stack& stack = config.stack;
    const DomRoute route = config.routes.empty() ? DomRoute::phase_derivative : config.routes.front();
    SweepOutput s = start(config, "emission", {route});
    s.columns.push_back("omega");
    for (const auto& d : config.dipoles) {
        s.columns.push_back("p_rel_" + column_suffix(d.label));
        s.metadata.emplace_back("dipole " + d.label,
                                fmt::format("cell {} layer {} fraction {:.17g} index {:.17g}", d.cell, d.layer + 1,
                                            d.fraction, stack.cell.layers().at(d.layer).index));
    }
    for (const double w : config.grid.values()) {
        std::vector<double> row{w};
        for (const auto& d : config.dipoles) {
            row.push_back(emission_rate(d, stack, w, route).p_rel);
        }
        push_row(s, std::move(row), w);
    }
    return s;
}

} // namespace pbg::app

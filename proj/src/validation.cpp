#include "pbg/app/validation.hpp"

#include <algorithm>
#include <limits>
#include <cmath>

#include <fmt/format.h>

#include "pbg/bloch.hpp"
#include "pbg/dom.hpp"
#include "pbg/errors.hpp"
#include "pbg/fields.hpp"
#include "pbg/oracle.hpp"

namespace pbg::app {
namespace {

constexpr double kEdgeHalfWidth = 5e-4;

std::vector<double> thin(const std::vector<double>& grid, int count)
{
    if (count <= 0 || static_cast<int>(grid.size()) <= count) {
        return grid;
    }
    std::vector<double> out;
    for (int i = 0; i < count; ++i) {
        const auto idx = static_cast<std::size_t>(std::llround(static_cast<double>(i) * (grid.size() - 1) / (count - 1)));
        out.push_back(grid[idx]);
    }
    return out;
}

CheckResult make(std::string name, double deviation, double tolerance, std::string detail = {})
{
    return {std::move(name), deviation, tolerance, deviation <= tolerance, std::move(detail)};
}

/// Runs one check, turning a library exception into a failed entry.
template <class F>
CheckResult guarded(const std::string& name, double tolerance, F&& body)
{
    try {
        return body();
    } catch (const std::exception& e) {
        return {name, std::numeric_limits<double>::infinity(), tolerance, false, e.what()};
    }
}

} // namespace

bool ValidationReport::passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

ValidationReport run_validation(const StackConfig& config, const ValidationOptions& options)
{
    const Stack& stack = config.stack;
    const int periods = stack.periods;
    const auto freqs = thin(config.grid.values(), options.max_frequencies);
    ValidationReport report;

    report.checks.push_back(guarded("unit cell determinant", 1e-12, [&] {
        double worst = 0.0;
        for (const double w : freqs) {
            worst = std::max(worst, std::abs(direct_matrix_product(stack.cell, w).determinant() - 1.0));
        }
        return make("unit cell determinant", worst, 1e-12);
    }));

    report.checks.push_back(guarded("matrix power vs direct product", 1e-10, [&] {
        double worst = 0.0;
        double at = 0.0;
        for (const double w : freqs) {
            const auto cell = cell_amplitudes(stack.cell, w);
            const auto m = matrix_from_amplitudes(cell);
            const double x = bloch_cos(cell.t).x;
            TransferMatrix reduced = smrf_power(m, x, periods);
            if (options.corrupt_smrf) {
                const Complex bump = 1e-6 * (1.0 + std::abs(chebyshev_xi(x, periods - 1)));
                reduced = TransferMatrix(reduced(0, 0) + bump, reduced(0, 1), reduced(1, 0), reduced(1, 1) + bump);
            }
            const double dev = relative_difference(reduced, direct_matrix_product(stack, w));
            if (dev > worst) {
                worst = dev;
                at = w;
            }
        }
        return make("matrix power vs direct product", worst, 1e-10, fmt::format("worst at omega = {:.6g}", at));
    }));

    report.checks.push_back(guarded("stack losslessness", 1e-10, [&] {
        double worst = 0.0;
        for (const double w : freqs) {
            const auto s = stack_amplitudes(stack, w);
            worst = std::max(worst, std::abs(s.transmittance() + s.reflectance() - 1.0));
        }
        return make("stack losslessness", worst, 1e-10);
    }));

    report.checks.push_back(guarded("dom route agreement", 1.0, [&] {
        const auto routes = parse_routes("all", stack.cell);
        double worst_ratio = 0.0;
        double worst_dev = 0.0;
        double at = 0.0;
        for (const double w : freqs) {
            const double tol = near_band_edge(stack.cell, w, kEdgeHalfWidth) ? 1e-4 : 1e-6;
            const double ref = density_of_modes(stack, w, DomRoute::phase_derivative).rho;
            for (const auto r : routes) {
                const double dev = std::abs(density_of_modes(stack, w, r).rho - ref) / std::abs(ref);
                if (dev / tol > worst_ratio) {
                    worst_ratio = dev / tol;
                    worst_dev = dev;
                    at = w;
                }
            }
        }
        CheckResult c = make("dom route agreement", worst_dev, 1e-6, fmt::format("worst at omega = {:.6g}", at));
        c.passed = worst_ratio <= 1.0;
        c.detail += "; 1e-4 within 5e-4 of a band edge";
        return c;
    }));

    const int field_cell = std::clamp(config.field.cell, 1, periods);
    const auto ode_freqs = thin(freqs, options.ode_frequencies);

    report.checks.push_back(guarded("field vs ODE oracle", 1e-8, [&] {
        double worst = 0.0;
        double at = 0.0;
        const double begin = (field_cell - 1) * stack.cell.length();
        const double end = field_cell * stack.cell.length();
        for (const double w : ode_freqs) {
            const auto ode = ode_field_solve(stack, w);
            const auto field = cell_field(stack, w, field_cell);
            for (std::size_t i = 0; i < ode.x.size(); ++i) {
                if (ode.x[i] < begin || ode.x[i] > end) {
                    continue;
                }
                const double dev = std::abs(field.value(std::min(ode.x[i] - begin, field.length())) - ode.value[i]);
                if (dev > worst) {
                    worst = dev;
                    at = w;
                }
            }
        }
        return make("field vs ODE oracle", worst, 1e-8, fmt::format("cell {}, worst at omega = {:.6g}", field_cell, at));
    }));

    report.checks.push_back(guarded("ODE losslessness", 1e-8, [&] {
        double worst = 0.0;
        for (const double w : ode_freqs) {
            const auto ode = ode_field_solve(stack, w);
            worst = std::max(worst, std::abs(std::norm(ode.transmission) + std::norm(ode.reflection) - 1.0));
        }
        return make("ODE losslessness", worst, 1e-8);
    }));

    report.checks.push_back(guarded("interface continuity", 1e-9, [&] {
        double worst = 0.0;
        for (const double w : freqs) {
            const auto fields = stack_field(stack, w);
            for (std::size_t c = 0; c < fields.size(); ++c) {
                const auto& layers = fields[c].layers();
                for (std::size_t l = 0; l + 1 < layers.size(); ++l) {
                    const double x = layers[l].end;
                    const double scale = std::max(1.0, std::abs(layers[l].value(x)));
                    worst = std::max(worst, std::abs(layers[l].value(x) - layers[l + 1].value(x)) / scale);
                    const double k = std::max(1.0, layers[l].wavenumber);
                    worst = std::max(worst, std::abs(layers[l].slope(x) - layers[l + 1].slope(x)) / (k * scale));
                }
                if (c + 1 < fields.size()) {
                    const auto& last = layers.back();
                    const auto& next = fields[c + 1].layers().front();
                    const double scale = std::max(1.0, std::abs(last.value(last.end)));
                    worst = std::max(worst, std::abs(last.value(last.end) - next.value(next.begin)) / scale);
                }
            }
        }
        return make("interface continuity", worst, 1e-9);
    }));

    report.checks.push_back(guarded("energy closed form vs quadrature", 1e-8, [&] {
        double worst = 0.0;
        for (const double w : ode_freqs) {
            const auto fields = stack_field(stack, w);
            const double exact = stack_energy(fields).total;
            worst = std::max(worst, std::abs(stack_energy_quadrature(fields).total - exact) / exact);
        }
        return make("energy closed form vs quadrature", worst, 1e-8);
    }));

    report.checks.push_back(guarded("normalized energy", 1e-8, [&] {
        double worst = 0.0;
        for (const double w : freqs) {
            const auto fields = stack_field(stack, w);
            const auto normalized = normalize(fields, stack_energy(fields));
            worst = std::max(worst, std::abs(stack_energy_quadrature(normalized).total - 1.0));
        }
        return make("normalized energy", worst, 1e-8);
    }));

    return report;
}

void print_report(std::ostream& out, const ValidationReport& report)
{
    for (const auto& c : report.checks) {
        out << fmt::format("{:<6} {:<34} max dev {:<12.3e} tol {:<8.1e} {}\n", c.passed ? "PASS" : "FAIL", c.name,
                           c.max_deviation, c.tolerance, c.detail);
    }
    out << (report.passed() ? "all checks passed\n" : "validation FAILED\n");
}

} // namespace pbg::app

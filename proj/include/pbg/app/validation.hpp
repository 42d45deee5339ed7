#pragma once

// Cross-route and oracle checks run by `pbgstack validate`.

#include <ostream>
#include <string>
#include <vector>

#include "pbg/app/config.hpp"

namespace pbg::app {

struct CheckResult {
    std::string name;
    double max_deviation = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    std::string detail;
};

struct ValidationOptions {
    /// Grid points used by the per-frequency checks (evenly thinned from the config grid).
    int max_frequencies = 64;
    /// Frequencies for the ODE field comparison.
    int ode_frequencies = 6;
    /// Test hook: perturb the reduced matrix power so the harness can be seen failing.
    bool corrupt_smrf = false;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    [[nodiscard]] bool passed() const;
};

ValidationReport run_validation(const StackConfig& config, const ValidationOptions& options = {});

/// One line per check: status, name, max deviation, tolerance.
void print_report(std::ostream& out, const ValidationReport& report);

} // namespace pbg::app

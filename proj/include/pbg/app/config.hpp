#pragma once

// Stack configuration files. See docs/config-schema.json for the format.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "pbg/core.hpp"
#include "pbg/dom.hpp"
#include "pbg/emission.hpp"
#include "pbg/grid.hpp"

namespace pbg::app {

/// Malformed or out-of-range configuration. `path` names the offending field.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string path, const std::string& message);
    [[nodiscard]] const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

struct FieldSampling {
    int cell = 3;
    int samples = 41; ///< points per layer, ends included
};

struct StackConfig {
    Stack stack{UnitCell::quarter_wave(1.0, 2.0), 5};
    SpectralGrid grid{1.0 / 512.0, 1.0, 512};
    std::vector<DomRoute> routes{DomRoute::phase_derivative};
    FieldSampling field;
    std::vector<DipoleSpec> dipoles;
};

/// QW(1, 2), N = 5, 512 points on (0, 1], layer-center dipoles in cell 3.
/// Missing optional fields of a file take these values; field cell and dipoles
/// default to the middle cell.
StackConfig default_config();

StackConfig parse_config(const std::string& text);
StackConfig load_config(const std::filesystem::path& path);

/// Resolved configuration as compact JSON with sorted keys. Flag overrides
/// are included, so the text identifies exactly what was computed.
std::string canonical_text(const StackConfig& config);

/// FNV-1a of canonical_text, as 16 hex digits.
std::string config_hash(const StackConfig& config);

/// "phase" | "closed" | "qw" | "all". "all" drops qw for non quarter-wave cells.
std::vector<DomRoute> parse_routes(const std::string& name, const UnitCell& cell);

} // namespace pbg::app

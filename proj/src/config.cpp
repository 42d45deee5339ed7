#include "pbg/app/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "pbg/bloch.hpp"
#include "pbg/errors.hpp"

namespace pbg::app {
namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::string& path, std::initializer_list<std::string_view> allowed)
{
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const auto key : allowed) {
            known = known || item.key() == key;
        }
        if (!known) {
            throw ConfigError(path + "." + item.key(), "unknown field");
        }
    }
}

const json& require_object(const json& parent, const std::string& key, const std::string& path)
{
    if (!parent.contains(key)) {
        throw ConfigError(path, "missing required field");
    }
    const json& v = parent.at(key);
    if (!v.is_object()) {
        throw ConfigError(path, "expected an object");
    }
    return v;
}

double get_number(const json& obj, const std::string& key, const std::string& path, std::optional<double> fallback = {})
{
    if (!obj.contains(key)) {
        if (fallback) {
            return *fallback;
        }
        throw ConfigError(path, "missing required field");
    }
    const json& v = obj.at(key);
    if (!v.is_number()) {
        throw ConfigError(path, "expected a number");
    }
    const double x = v.get<double>();
    if (!std::isfinite(x)) {
        throw ConfigError(path, "must be finite");
    }
    return x;
}

int get_integer(const json& obj, const std::string& key, const std::string& path, std::optional<int> fallback = {})
{
    if (!obj.contains(key)) {
        if (fallback) {
            return *fallback;
        }
        throw ConfigError(path, "missing required field");
    }
    const json& v = obj.at(key);
    if (!v.is_number_integer()) {
        throw ConfigError(path, "expected an integer");
    }
    const auto x = v.get<std::int64_t>();
    if (x < -1000000000 || x > 1000000000) {
        throw ConfigError(path, "integer out of range");
    }
    return static_cast<int>(x);
}

UnitCell parse_cell(const json& cell)
{
    if (!cell.contains("type") || !cell.at("type").is_string()) {
        throw ConfigError("cell.type", "expected \"quarter_wave\" or \"layers\"");
    }
    const auto type = cell.at("type").get<std::string>();
    try {
        if (type == "quarter_wave") {
            reject_unknown(cell, "cell", {"type", "n1", "n2", "omega0"});
            const double n1 = get_number(cell, "n1", "cell.n1");
            const double n2 = get_number(cell, "n2", "cell.n2");
            const double omega0 = get_number(cell, "omega0", "cell.omega0", 1.0);
            if (!(n1 > 0.0)) {
                throw ConfigError("cell.n1", "index must be positive");
            }
            if (!(n2 > 0.0)) {
                throw ConfigError("cell.n2", "index must be positive");
            }
            if (!(omega0 > 0.0)) {
                throw ConfigError("cell.omega0", "must be positive");
            }
            return UnitCell::quarter_wave(n1, n2, omega0);
        }
        if (type == "layers") {
            reject_unknown(cell, "cell", {"type", "layers", "ambient_index", "omega0"});
            if (!cell.contains("layers") || !cell.at("layers").is_array() || cell.at("layers").empty()) {
                throw ConfigError("cell.layers", "expected a non-empty array");
            }
            std::vector<Layer> layers;
            const auto& arr = cell.at("layers");
            for (std::size_t i = 0; i < arr.size(); ++i) {
                const std::string path = fmt::format("cell.layers[{}]", i);
                if (!arr[i].is_object()) {
                    throw ConfigError(path, "expected an object");
                }
                reject_unknown(arr[i], path, {"index", "thickness"});
                const double index = get_number(arr[i], "index", path + ".index");
                const double thickness = get_number(arr[i], "thickness", path + ".thickness");
                if (!(index > 0.0)) {
                    throw ConfigError(path + ".index", "index must be positive");
                }
                if (!(thickness > 0.0)) {
                    throw ConfigError(path + ".thickness", "thickness must be positive");
                }
                layers.push_back({index, thickness});
            }
            const double ambient = get_number(cell, "ambient_index", "cell.ambient_index");
            if (!(ambient > 0.0)) {
                throw ConfigError("cell.ambient_index", "index must be positive");
            }
            const double omega0 = get_number(cell, "omega0", "cell.omega0", 1.0);
            if (!(omega0 > 0.0)) {
                throw ConfigError("cell.omega0", "must be positive");
            }
            return UnitCell(std::move(layers), ambient, omega0);
        }
    } catch (const DomainError& e) {
        throw ConfigError("cell", e.what());
    }
    throw ConfigError("cell.type", "expected \"quarter_wave\" or \"layers\", got \"" + type + "\"");
}

std::vector<DomRoute> parse_route_list(const json& v, const UnitCell& cell)
{
    if (v.is_string()) {
        try {
            return parse_routes(v.get<std::string>(), cell);
        } catch (const ConfigError& e) {
            throw ConfigError("routes", e.what());
        }
    }
    if (!v.is_array() || v.empty()) {
        throw ConfigError("routes", "expected a route name or a non-empty array of names");
    }
    std::vector<DomRoute> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::string path = fmt::format("routes[{}]", i);
        if (!v[i].is_string() || v[i].get<std::string>() == "all") {
            throw ConfigError(path, "expected \"phase\", \"closed\" or \"qw\"");
        }
        try {
            for (const auto r : parse_routes(v[i].get<std::string>(), cell)) {
                if (std::find(out.begin(), out.end(), r) == out.end()) {
                    out.push_back(r);
                }
            }
        } catch (const ConfigError& e) {
            throw ConfigError(path, e.what());
        }
    }
    return out;
}

std::vector<DipoleSpec> middle_cell_dipoles(const Stack& stack)
{
    const int middle = (stack.periods + 1) / 2;
    std::vector<DipoleSpec> out;
    for (std::size_t i = 0; i < stack.cell.layers().size(); ++i) {
        out.push_back(DipoleSpec::layer_center(middle, i, fmt::format("layer{}_center", i + 1)));
    }
    return out;
}

} // namespace

ConfigError::ConfigError(std::string path, const std::string& message)
    : std::runtime_error(path + ": " + message), path_(std::move(path))
{
}

std::vector<DomRoute> parse_routes(const std::string& name, const UnitCell& cell)
{
    const bool qw = cell.quarter_wave_indices().has_value();
    if (name == "phase") {
        return {DomRoute::phase_derivative};
    }
    if (name == "closed") {
        return {DomRoute::closed_form};
    }
    if (name == "qw") {
        if (!qw) {
            throw ConfigError("route", "the qw route needs a quarter_wave cell");
        }
        return {DomRoute::quarter_wave};
    }
    if (name == "all") {
        if (qw) {
            return {DomRoute::phase_derivative, DomRoute::closed_form, DomRoute::quarter_wave};
        }
        return {DomRoute::phase_derivative, DomRoute::closed_form};
    }
    throw ConfigError("route", "unknown route \"" + name + "\"");
}

StackConfig default_config()
{
    StackConfig c;
    c.dipoles = middle_cell_dipoles(c.stack);
    c.field.cell = (c.stack.periods + 1) / 2;
    return c;
}

StackConfig parse_config(const std::string& text)
{
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("$", std::string("invalid JSON: ") + e.what());
    }
    if (!root.is_object()) {
        throw ConfigError("$", "expected an object");
    }
    reject_unknown(root, "$", {"cell", "periods", "grid", "routes", "field", "dipoles", "description"});

    StackConfig c = default_config();
    const UnitCell cell = parse_cell(require_object(root, "cell", "cell"));
    const int periods = get_integer(root, "periods", "periods");
    if (periods < 1 || periods > kMaxPeriods) {
        throw ConfigError("periods", fmt::format("must lie in [1, {}]", kMaxPeriods));
    }
    c.stack = Stack{cell, periods};

    if (root.contains("grid")) {
        const json& g = require_object(root, "grid", "grid");
        reject_unknown(g, "grid", {"omega_min", "omega_max", "points"});
        c.grid.min = get_number(g, "omega_min", "grid.omega_min", c.grid.min);
        c.grid.max = get_number(g, "omega_max", "grid.omega_max", c.grid.max);
        c.grid.points = get_integer(g, "points", "grid.points", c.grid.points);
        if (!(c.grid.min > 0.0)) {
            throw ConfigError("grid.omega_min", "must be positive");
        }
        if (c.grid.points < 1 || c.grid.points > 1000000) {
            throw ConfigError("grid.points", "must lie in [1, 1000000]");
        }
        if (c.grid.points > 1 && !(c.grid.max > c.grid.min)) {
            throw ConfigError("grid.omega_max", "must exceed omega_min");
        }
    }

    c.routes = root.contains("routes") ? parse_route_list(root.at("routes"), cell)
                                       : std::vector<DomRoute>{DomRoute::phase_derivative};

    c.field.cell = (periods + 1) / 2;
    if (root.contains("field")) {
        const json& f = require_object(root, "field", "field");
        reject_unknown(f, "field", {"cell", "samples"});
        c.field.cell = get_integer(f, "cell", "field.cell", c.field.cell);
        c.field.samples = get_integer(f, "samples", "field.samples", c.field.samples);
        if (c.field.cell < 1 || c.field.cell > periods) {
            throw ConfigError("field.cell", fmt::format("must lie in [1, {}]", periods));
        }
        if (c.field.samples < 2 || c.field.samples > 100000) {
            throw ConfigError("field.samples", "must lie in [2, 100000]");
        }
    }

    if (root.contains("dipoles")) {
        const json& d = root.at("dipoles");
        if (!d.is_array()) {
            throw ConfigError("dipoles", "expected an array");
        }
        c.dipoles.clear();
        for (std::size_t i = 0; i < d.size(); ++i) {
            const std::string path = fmt::format("dipoles[{}]", i);
            if (!d[i].is_object()) {
                throw ConfigError(path, "expected an object");
            }
            reject_unknown(d[i], path, {"cell", "layer", "fraction", "label"});
            DipoleSpec spec;
            spec.cell = get_integer(d[i], "cell", path + ".cell");
            const int layer = get_integer(d[i], "layer", path + ".layer");
            spec.fraction = get_number(d[i], "fraction", path + ".fraction", 0.5);
            if (spec.cell < 1 || spec.cell > periods) {
                throw ConfigError(path + ".cell", fmt::format("must lie in [1, {}]", periods));
            }
            if (layer < 1 || static_cast<std::size_t>(layer) > cell.layers().size()) {
                throw ConfigError(path + ".layer", fmt::format("must lie in [1, {}]", cell.layers().size()));
            }
            if (!(spec.fraction >= 0.0 && spec.fraction <= 1.0)) {
                throw ConfigError(path + ".fraction", "must lie in [0, 1]");
            }
            spec.layer = static_cast<std::size_t>(layer - 1);
            if (d[i].contains("label")) {
                if (!d[i].at("label").is_string()) {
                    throw ConfigError(path + ".label", "expected a string");
                }
                spec.label = d[i].at("label").get<std::string>();
            } else {
                spec.label = fmt::format("cell{}_layer{}", spec.cell, layer);
            }
            c.dipoles.push_back(std::move(spec));
        }
    } else {
        c.dipoles = middle_cell_dipoles(c.stack);
    }
    return c;
}

StackConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("$", "cannot read " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string canonical_text(const StackConfig& config)
{
    json j;
    const UnitCell& cell = config.stack.cell;
    if (const auto& qw = cell.quarter_wave_indices()) {
        j["cell"] = {{"type", "quarter_wave"}, {"n1", qw->n1}, {"n2", qw->n2}, {"omega0", cell.reference_frequency()}};
    } else {
        json layers = json::array();
        for (const auto& l : cell.layers()) {
            layers.push_back({{"index", l.index}, {"thickness", l.thickness}});
        }
        j["cell"] = {{"type", "layers"},
                     {"layers", layers},
                     {"ambient_index", cell.ambient_index()},
                     {"omega0", cell.reference_frequency()}};
    }
    j["periods"] = config.stack.periods;
    j["grid"] = {{"omega_min", config.grid.min}, {"omega_max", config.grid.max}, {"points", config.grid.points}};
    json routes = json::array();
    for (const auto r : config.routes) {
        routes.push_back(to_string(r));
    }
    j["routes"] = routes;
    j["field"] = {{"cell", config.field.cell}, {"samples", config.field.samples}};
    json dipoles = json::array();
    for (const auto& d : config.dipoles) {
        dipoles.push_back({{"cell", d.cell}, {"layer", d.layer + 1}, {"fraction", d.fraction}, {"label", d.label}});
    }
    j["dipoles"] = dipoles;
    return j.dump();
}

std::string config_hash(const StackConfig& config)
{
    std::uint64_t h = 14695981039346656037ull;
    for (const unsigned char ch : canonical_text(config)) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return fmt::format("{:016x}", h);
}

} // namespace pbg::app

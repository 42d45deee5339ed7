// pbgstack: density of modes, fields, stack energy and emission spectra of
// finite quarter-wave and general layered stacks.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "pbg/app/config.hpp"
#include "pbg/app/sweep.hpp"
#include "pbg/app/validation.hpp"
#include "pbg/errors.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitConfig = 2;

struct Options {
    std::string config_path;
    std::string route;
    std::optional<int> cell;
    std::optional<int> points;
    std::string format = "csv";
    std::string out_path;
    std::string mutate;
};

pbg::app::StackConfig resolve(const Options& opt)
{
    using pbg::app::ConfigError;
    auto config = opt.config_path.empty() ? pbg::app::default_config() : pbg::app::load_config(opt.config_path);
    if (!opt.route.empty()) {
        config.routes = pbg::app::parse_routes(opt.route, config.stack.cell);
    }
    if (opt.cell) {
        if (*opt.cell < 1 || *opt.cell > config.stack.periods) {
            throw ConfigError("--cell", fmt::format("must lie in [1, {}]", config.stack.periods));
        }
        config.field.cell = *opt.cell;
    }
    if (opt.points) {
        if (*opt.points < 1 || *opt.points > 1000000) {
            throw ConfigError("--points", "must lie in [1, 1000000]");
        }
        if (*opt.points > 1 && !(config.grid.max > config.grid.min)) {
            throw ConfigError("--points", "grid has zero width");
        }
        config.grid.points = *opt.points;
    }
    return config;
}

int emit(const Options& opt, const pbg::app::SweepOutput& sweep)
{
    const auto format = opt.format == "json" ? pbg::app::OutputFormat::json : pbg::app::OutputFormat::csv;
    if (opt.out_path.empty()) {
        pbg::app::write_output(std::cout, sweep, format);
        return kExitOk;
    }
    std::ofstream file(opt.out_path);
    if (!file) {
        std::cerr << "error: cannot write " << opt.out_path << '\n';
        return kExitConfig;
    }
    pbg::app::write_output(file, sweep, format);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Finite photonic band-gap stacks: DOM, fields, energy and emission sweeps."};
    app.set_version_flag("--version", std::string("pbgstack ") + pbg::app::kToolVersion);
    app.require_subcommand(1);
    app.fallthrough();

    Options opt;
    app.add_option("--config", opt.config_path, "Stack configuration (JSON); built-in QW(1,2), N=5 when omitted");
    app.add_option("--route", opt.route, "DOM route")->check(CLI::IsMember({"phase", "closed", "qw", "all"}));
    app.add_option("--cell", opt.cell, "Cell for the field subcommand (1-based)");
    app.add_option("--points", opt.points, "Number of grid frequencies");
    app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", opt.out_path, "Output file (stdout when omitted)");

    auto* dom = app.add_subcommand("dom", "Density of modes times v_bulk, per route");
    auto* field = app.add_subcommand("field", "|E|^2 inside one cell on frequency x position");
    auto* energy = app.add_subcommand("energy", "Mode energy stored in the stack");
    auto* emission = app.add_subcommand("emission", "Relative emission rate of the configured dipoles");
    auto* validate = app.add_subcommand("validate", "Cross-route and oracle checks; exit 1 on failure");
    validate->add_option("--mutate", opt.mutate, "Test hook: corrupt a stage to see the checks fail")
        ->check(CLI::IsMember({"smrf"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        const auto config = resolve(opt);
        if (*dom) {
            return emit(opt, pbg::app::run_dom(config));
        }
        if (*field) {
            return emit(opt, pbg::app::run_field(config));
        }
        if (*energy) {
            return emit(opt, pbg::app::run_energy(config));
        }
        if (*emission) {
            if (config.dipoles.empty()) {
                throw pbg::app::ConfigError("dipoles", "the emission subcommand needs at least one dipole");
            }
            return emit(opt, pbg::app::run_emission(config));
        }
        if (*validate) {
            pbg::app::ValidationOptions vo;
            vo.corrupt_smrf = opt.mutate == "smrf";
            const auto report = pbg::app::run_validation(config, vo);
            std::ostream* out = &std::cout;
            std::ofstream file;
            if (!opt.out_path.empty()) {
                file.open(opt.out_path);
                if (!file) {
                    std::cerr << "error: cannot write " << opt.out_path << '\n';
                    return kExitConfig;
                }
                out = &file;
            }
            *out << fmt::format("# config_hash: {}\n", pbg::app::config_hash(config));
            pbg::app::print_report(*out, report);
            return report.passed() ? kExitOk : kExitValidation;
        }
    } catch (const pbg::app::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return kExitOk;
}

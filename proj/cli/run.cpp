#include "run.hpp"

#include <CLI11.hpp>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "config.hpp"
#include "emit.hpp"
#include "reports.hpp"

namespace unicrit::cli {

namespace {

struct SubcommandSpec {
    const char* name;
    const char* description;
    Report (*build)(const Config&);
};

constexpr SubcommandSpec kSubcommands[] = {
    {"orbit", "forward orbit with the derivative cocycle", orbit_report},
    {"preimages", "stream the preimage tree of a point", preimages_report},
    {"poincare", "Poincare series truncation at a target point", poincare_report},
    {"forward", "forward derivative series truncation", forward_report},
    {"exponent", "pressure-root estimate of the convergence exponent",
     exponent_report},
    {"rprofile", "backward-contraction profile over a delta grid",
     rprofile_report},
    {"children", "return-time pull-backs of a critical disk", children_report},
    {"returns", "first-entry staircase with marked preimages and interval "
                "ratios", returns_report},
    {"theoremb", "paired Poincare/forward truncation report", theoremb_report},
    {"lb2bc", "derivative growth table beside the contraction profile",
     lb2bc_report},
    {"decay", "pull-back diameter decay over preimage depth", decay_report},
    {"regen-feigenbaum", "regenerate the period-doubling parameter",
     regen_feigenbaum_report},
};

std::set<std::string> resolve_formats(const Config& config) {
    std::set<std::string> formats;
    std::stringstream ss(config.get_string("output.formats", "csv,json"));
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto begin = item.find_first_not_of(" \t");
        if (begin == std::string::npos) continue;
        const auto end = item.find_last_not_of(" \t");
        formats.insert(item.substr(begin, end - begin + 1));
    }
    if (formats.empty()) throw UsageError("output.formats is empty");
    return formats;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"dynamical diagnostics for unicritical polynomials z^d + c"};
    app.require_subcommand(1);
    app.footer(config_key_reference());

    std::string config_path;
    std::vector<std::string> overrides;
    std::string selected;
    for (const SubcommandSpec& spec : kSubcommands) {
        CLI::App* sub = app.add_subcommand(spec.name, spec.description);
        sub->add_option("--config", config_path,
                        "key = value configuration file");
        sub->add_option("--set", overrides,
                        "override one key (key=value, repeatable)");
        sub->callback([&selected, name = spec.name] { selected = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    try {
        Config config;
        if (!config_path.empty()) config = Config::from_file(config_path);
        for (const std::string& assignment : overrides)
            config.apply_override(assignment);

        const SubcommandSpec* spec = nullptr;
        for (const SubcommandSpec& candidate : kSubcommands)
            if (selected == candidate.name) spec = &candidate;
        if (!spec) throw UsageError("no subcommand selected");

        const Report report = spec->build(config);
        const std::set<std::string> formats = resolve_formats(config);
        const std::string dir = config.get_string("output.dir", "out");
        const std::string basename =
            config.get_string("output.basename", spec->name);
        const auto written = emit_report(report, formats, dir, basename);
        for (const auto& path : written)
            out << "wrote " << path.string() << "\n";
        return 0;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return static_cast<int>(e.kind());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace unicrit::cli

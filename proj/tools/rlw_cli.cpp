// Command-line runner for the RLW experiments and the table comparison.

#include "rlw/errors.hpp"
#include "rlw/experiment.hpp"
#include "rlw/report_io.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace {

/// String-typed flags forwarded through ExperimentConfig::set, so the command
/// line and config files share one parser.
struct FlagSet {
    std::vector<std::pair<std::string, CLI::Option*>> options;
    std::map<std::string, std::string> values;
    std::vector<std::string> domain;
    CLI::Option* domain_opt = nullptr;
    std::string config_file;
    bool full_scan = false;
    CLI::Option* full_scan_opt = nullptr;

    void add(CLI::App* app, const std::string& key, const std::string& names,
             const std::string& help) {
        auto* opt = app->add_option(names, values[key], help);
        options.emplace_back(key, opt);
    }

    void apply(rlw::ExperimentConfig& cfg) const {
        if (!config_file.empty()) {
            rlw::apply_config_file(cfg, config_file);
        }
        if (domain_opt != nullptr && domain_opt->count() > 0) {
            cfg.set("domain", domain.at(0) + " " + domain.at(1));
        }
        for (const auto& [key, opt] : options) {
            if (opt->count() > 0) {
                cfg.set(key, values.at(key));
            }
        }
        if (full_scan_opt != nullptr && full_scan_opt->count() > 0) {
            cfg.set("full-scan", "true");
        }
    }
};

void add_common(CLI::App* app, FlagSet& flags) {
    app->add_option("--config", flags.config_file, "flat key=value file (flags override it)");
    flags.add(app, "p", "--p", "exponential B-spline tension");
    flags.add(app, "h", "--h", "knot spacing");
    flags.add(app, "n", "--n", "element count (overrides --h)");
    flags.add(app, "dt", "--dt", "time step");
    flags.add(app, "t-final", "--t-final,--T", "final time");
    flags.domain_opt = app->add_option("--domain", flags.domain, "interval end points a b")
                           ->expected(2);
    flags.add(app, "epsilon", "--epsilon", "nonlinear coefficient");
    flags.add(app, "mu", "--mu", "dispersion coefficient");
    flags.add(app, "inner-iters", "--inner-iters", "inner passes per time step");
    flags.add(app, "inner-update", "--inner-update", "latest | extrapolated");
    flags.add(app, "out", "--out", "output directory");
    flags.add(app, "jobs", "--jobs", "worker threads for the tension scan");
}

void add_recording(CLI::App* app, FlagSet& flags) {
    flags.add(app, "record", "--record", "comma-separated record times");
    flags.add(app, "min-height", "--min-height", "crest detection threshold");
    flags.add(app, "max-crests", "--max-crests", "amplitude columns in report.csv");
}

std::filesystem::path resolve_reference(const std::string& name) {
    std::filesystem::path p(name);
    if (std::filesystem::exists(p)) {
        return p;
    }
    for (const char* dir : {RLW_DATA_DIR, RLW_INSTALLED_DATA_DIR}) {
        const auto bundled = std::filesystem::path(dir) / (name + ".csv");
        if (std::filesystem::exists(bundled)) {
            return bundled;
        }
    }
    return p;
}

int run_one(rlw::ExperimentKind kind, const FlagSet& flags) {
    rlw::ExperimentConfig cfg = rlw::ExperimentConfig::defaults(kind);
    try {
        flags.apply(cfg);
    } catch (const rlw::InvalidParameter& e) {
        std::cerr << "rlw: " << e.what() << '\n';
        return rlw::kExitUsage;
    }
    const auto outcome = rlw::run_experiment(cfg);
    (outcome.exit_code == rlw::kExitOk ? std::cout : std::cerr)
        << "rlw " << rlw::to_string(kind) << ": " << outcome.message << '\n';
    return outcome.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exponential B-spline Galerkin solver for the regularized long wave equation"};
    app.set_help_flag("--help", "print this help message and exit");
    app.set_version_flag("--version", rlw::version_string());
    app.require_subcommand(1);

    std::map<rlw::ExperimentKind, FlagSet> flags;
    std::map<rlw::ExperimentKind, CLI::App*> subs;

    auto* soliton = app.add_subcommand("soliton", "single solitary wave with exact solution");
    add_common(soliton, flags[rlw::ExperimentKind::soliton]);
    add_recording(soliton, flags[rlw::ExperimentKind::soliton]);
    flags[rlw::ExperimentKind::soliton].add(soliton, "c", "--c", "amplitude parameter (amplitude 3c)");
    flags[rlw::ExperimentKind::soliton].add(soliton, "x0", "--x0", "initial crest position");
    subs[rlw::ExperimentKind::soliton] = soliton;

    auto* interact = app.add_subcommand("interact", "two solitary waves overtaking");
    add_common(interact, flags[rlw::ExperimentKind::interact]);
    add_recording(interact, flags[rlw::ExperimentKind::interact]);
    for (const char* k : {"k1", "k2", "x1", "x2"}) {
        flags[rlw::ExperimentKind::interact].add(interact, k, std::string("--") + k, k);
    }
    subs[rlw::ExperimentKind::interact] = interact;

    auto* wavemaker = app.add_subcommand("wavemaker", "solitary waves generated by boundary forcing");
    add_common(wavemaker, flags[rlw::ExperimentKind::wavemaker]);
    add_recording(wavemaker, flags[rlw::ExperimentKind::wavemaker]);
    flags[rlw::ExperimentKind::wavemaker].add(wavemaker, "u0", "--u0", "forcing amplitude");
    flags[rlw::ExperimentKind::wavemaker].add(wavemaker, "tau", "--tau", "ramp duration");
    flags[rlw::ExperimentKind::wavemaker].add(wavemaker, "t0", "--t0", "forcing duration");
    subs[rlw::ExperimentKind::wavemaker] = wavemaker;

    auto* pscan = app.add_subcommand("pscan", "scan the tension p against the soliton Linf error");
    auto& pf = flags[rlw::ExperimentKind::pscan];
    add_common(pscan, pf);
    pf.add(pscan, "c", "--c", "amplitude parameter (amplitude 3c)");
    pf.add(pscan, "x0", "--x0", "initial crest position");
    pf.add(pscan, "candidates", "--candidates", "explicit comma-separated p values");
    pf.add(pscan, "coarse-lo", "--coarse-lo", "coarse grid start");
    pf.add(pscan, "coarse-hi", "--coarse-hi", "coarse grid end");
    pf.add(pscan, "coarse-step", "--coarse-step", "coarse grid spacing");
    pf.add(pscan, "fine-step", "--fine-step", "fine grid spacing around the coarse minimum");
    pf.full_scan_opt = pscan->add_flag("--full-scan", pf.full_scan,
                                        "coarse [0,80] step 0.1 then fine [0,1] step 1e-5");
    subs[rlw::ExperimentKind::pscan] = pscan;

    std::string report_path;
    std::string reference_name;
    std::vector<std::string> tolerance_specs;
    auto* compare = app.add_subcommand("compare", "compare report.csv against a reference table");
    compare->add_option("report", report_path, "report.csv from a run")->required();
    compare->add_option("reference", reference_name,
                        "reference CSV path or bundled name (table2, table3, table6, table7)")
        ->required();
    compare->add_option("--tol", tolerance_specs, "override: column=rel:x,abs:y");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? rlw::kExitOk : rlw::kExitUsage;
    }

    for (const auto& [kind, sub] : subs) {
        if (sub->parsed()) {
            return run_one(kind, flags[kind]);
        }
    }

    try {
        const auto report = rlw::read_csv_table(report_path);
        const auto reference = rlw::read_csv_table(resolve_reference(reference_name));
        auto tolerances = rlw::tolerances_from_comments(reference);
        for (const auto& spec : tolerance_specs) {
            auto [column, tol] = rlw::parse_tolerance(spec);
            tolerances[column] = tol;
        }
        const auto result = rlw::compare_tables(report, reference, tolerances);
        rlw::print_comparison(std::cout, result);
        return result.pass ? rlw::kExitOk : rlw::kExitComparison;
    } catch (const rlw::SchemaError& e) {
        std::cerr << "rlw compare: " << e.what() << '\n';
        return rlw::kExitUsage;
    }
}

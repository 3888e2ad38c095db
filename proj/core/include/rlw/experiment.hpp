#pragma once

#include "rlw/diagnostics.hpp"
#include "rlw/solver.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rlw {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumerical = 2;
inline constexpr int kExitComparison = 3;

enum class ExperimentKind { soliton, interact, wavemaker, pscan };

std::string_view to_string(ExperimentKind kind);
std::optional<ExperimentKind> parse_experiment_kind(std::string_view name);

/// All knobs of one experiment. `defaults()` gives the reference settings;
/// `set()` applies one `key=value` override (config file or command line).
struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::soliton;

    double p = 0.01262;
    double h = 0.125;
    std::optional<int> n_elements; ///< overrides h when set
    double dt = 0.1;
    double t_final = 20.0;
    double a = -40.0;
    double b = 60.0;
    double epsilon = 1.0;
    double mu = 1.0;
    int inner_iters = 3;
    InnerUpdate inner_update = InnerUpdate::latest_iterate;

    // soliton
    double c = 0.1;
    double x0 = 0.0;
    // interact
    double k1 = 0.4;
    double k2 = 0.3;
    double x1 = 15.0;
    double x2 = 35.0;
    // wavemaker
    double u0 = 2.0;
    double tau = 0.3;
    double t0 = 20.0;

    /// Empty means "experiment defaults, clipped to t_final".
    std::vector<double> record_times;
    std::filesystem::path out_dir = ".";
    double min_height = 0.15;
    std::size_t max_crests = 1;
    int jobs = 1;

    // pscan (on the soliton problem, objective L-infinity at t_final)
    std::vector<double> candidates; ///< explicit list replaces the two-stage grid
    double coarse_lo = 0.005;
    double coarse_hi = 5.0;
    double coarse_step = 0.5;
    double fine_step = 1e-3;
    bool full_scan = false; ///< coarse [0, 80] step 0.1, fine [0, 1] step 1e-5

    static ExperimentConfig defaults(ExperimentKind kind);

    /// Element count from n_elements, or from h when (b - a)/h is an integer.
    int resolved_elements() const;
    std::vector<double> resolved_record_times() const;

    /// Throws InvalidParameter for an unknown key or a malformed value.
    void set(std::string_view key, std::string_view value);
    /// Every result-affecting setting as key/value pairs (manifest order).
    std::vector<std::pair<std::string, std::string>> settings() const;
    void validate() const;
};

/// Applies a flat `key=value` file (blank lines and `#` comments allowed).
void apply_config_file(ExperimentConfig& config, const std::filesystem::path& path);

/// Solver problem for soliton / interact / wavemaker configurations.
RLWProblem make_problem(const ExperimentConfig& config);

/// Exact solution when one exists (the single soliton).
std::function<double(double, double)> exact_solution(const ExperimentConfig& config);

RunOptions make_run_options(const ExperimentConfig& config);

/// L-infinity error of the soliton run at t_final as a function of p.
TensionObjective soliton_linf_objective(const ExperimentConfig& config);

struct ExperimentOutcome {
    int exit_code = kExitOk;
    std::string message;
    RunReport report;
    std::optional<PScanResult> scan;
};

/// Runs the experiment and writes report.csv, profile_t<time>.dat per
/// recorded time and manifest.txt into config.out_dir (pscan.csv instead of
/// profiles for a tension scan).
ExperimentOutcome run_experiment(const ExperimentConfig& config);

/// File stem used for the profile written at time t ("profile_t2.5.dat").
std::string profile_file_name(double t);

std::string version_string();

} // namespace rlw

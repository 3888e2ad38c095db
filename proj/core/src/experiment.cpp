#include "rlw/experiment.hpp"

#include "rlw/errors.hpp"
#include "rlw/problems.hpp"
#include "rlw/report_io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#ifndef RLW_VERSION
#define RLW_VERSION "0.0.0"
#endif

namespace rlw {

std::string version_string() { return RLW_VERSION; }

std::string_view to_string(ExperimentKind kind) {
    switch (kind) {
    case ExperimentKind::soliton:
        return "soliton";
    case ExperimentKind::interact:
        return "interact";
    case ExperimentKind::wavemaker:
        return "wavemaker";
    case ExperimentKind::pscan:
        return "pscan";
    }
    return "unknown";
}

std::optional<ExperimentKind> parse_experiment_kind(std::string_view name) {
    for (auto k : {ExperimentKind::soliton, ExperimentKind::interact, ExperimentKind::wavemaker,
                   ExperimentKind::pscan}) {
        if (to_string(k) == name) {
            return k;
        }
    }
    return std::nullopt;
}

ExperimentConfig ExperimentConfig::defaults(ExperimentKind kind) {
    ExperimentConfig cfg;
    cfg.kind = kind;
    switch (kind) {
    case ExperimentKind::soliton:
    case ExperimentKind::pscan:
        break;
    case ExperimentKind::interact:
        cfg.p = 1.0;
        cfg.h = 0.3;
        cfg.a = 0.0;
        cfg.b = 120.0;
        cfg.t_final = 30.0;
        cfg.min_height = 0.5;
        cfg.max_crests = 2;
        break;
    case ExperimentKind::wavemaker:
        cfg.p = 1.0;
        cfg.h = 0.4;
        cfg.a = 0.0;
        cfg.b = 260.0;
        cfg.t_final = 100.0;
        cfg.min_height = 0.5;
        cfg.max_crests = 5;
        break;
    }
    return cfg;
}

int ExperimentConfig::resolved_elements() const {
    if (n_elements) {
        return *n_elements;
    }
    if (!(h > 0.0) || !(b > a)) {
        throw InvalidParameter("config: need h > 0 and a < b");
    }
    const double ratio = (b - a) / h;
    const double n = std::round(ratio);
    if (std::abs(ratio - n) > 1e-8 * ratio) {
        std::ostringstream msg;
        msg << "config: h=" << h << " does not divide [" << a << ", " << b << "]";
        throw InvalidParameter(msg.str());
    }
    return static_cast<int>(n);
}

std::vector<double> ExperimentConfig::resolved_record_times() const {
    if (!record_times.empty()) {
        auto times = record_times;
        std::sort(times.begin(), times.end());
        times.erase(std::unique(times.begin(), times.end()), times.end());
        return times;
    }
    std::vector<double> base;
    switch (kind) {
    case ExperimentKind::soliton:
    case ExperimentKind::pscan:
        base = {0, 4, 8, 12, 16, 20};
        break;
    case ExperimentKind::interact:
        base = {0, 5, 10, 15, 20, 25, 30};
        break;
    case ExperimentKind::wavemaker:
        base = {0, 2.5, 5, 7.5, 10, 15, 20, 40, 60, 80, 100};
        break;
    }
    std::vector<double> times;
    for (double t : base) {
        if (t <= t_final + 1e-12) {
            times.push_back(t);
        }
    }
    if (times.empty() || std::abs(times.back() - t_final) > 1e-12) {
        times.push_back(t_final);
    }
    return times;
}

namespace {

double to_double(std::string_view key, std::string_view value) {
    std::string s(value);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
        throw InvalidParameter("config: '" + std::string(key) + "' expects a number, got '" + s + "'");
    }
    return v;
}

int to_int(std::string_view key, std::string_view value) {
    const double v = to_double(key, value);
    if (v != std::floor(v) || std::abs(v) > 1e9) {
        throw InvalidParameter("config: '" + std::string(key) + "' expects an integer");
    }
    return static_cast<int>(v);
}

bool to_bool(std::string_view key, std::string_view value) {
    if (value == "1" || value == "true" || value == "yes" || value == "on") {
        return true;
    }
    if (value == "0" || value == "false" || value == "no" || value == "off") {
        return false;
    }
    throw InvalidParameter("config: '" + std::string(key) + "' expects true or false");
}

std::vector<double> to_list(std::string_view key, std::string_view value) {
    std::vector<double> out;
    std::string item;
    std::istringstream in{std::string(value)};
    while (std::getline(in, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b == std::string::npos) {
            continue;
        }
        out.push_back(to_double(key, std::string_view(item).substr(b, e - b + 1)));
    }
    if (out.empty()) {
        throw InvalidParameter("config: '" + std::string(key) + "' expects a comma-separated list");
    }
    return out;
}

// shortest round-trip form so manifests stay readable
std::string num(double v) {
    std::array<char, 32> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

std::string list(const std::vector<double>& values) {
    std::string out;
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (k > 0) {
            out += ',';
        }
        out += num(values[k]);
    }
    return out;
}

} // namespace

void ExperimentConfig::set(std::string_view key, std::string_view value) {
    if (key == "experiment") {
        const auto k = parse_experiment_kind(value);
        if (!k) {
            throw InvalidParameter("config: unknown experiment '" + std::string(value) + "'");
        }
        if (*k != kind) {
            throw InvalidParameter("config: file is for experiment '" + std::string(value) + "'");
        }
    } else if (key == "version") {
        // informational only
    } else if (key == "p") {
        p = to_double(key, value);
    } else if (key == "h") {
        h = to_double(key, value);
        n_elements.reset();
    } else if (key == "n") {
        n_elements = to_int(key, value);
    } else if (key == "dt") {
        dt = to_double(key, value);
    } else if (key == "t-final" || key == "T") {
        t_final = to_double(key, value);
    } else if (key == "domain") {
        std::istringstream in{std::string(value)};
        std::string lo;
        std::string hi;
        std::string extra;
        in >> lo >> hi;
        if (lo.empty() || hi.empty() || (in >> extra)) {
            throw InvalidParameter("config: 'domain' expects two numbers 'a b'");
        }
        a = to_double(key, lo);
        b = to_double(key, hi);
    } else if (key == "a") {
        a = to_double(key, value);
    } else if (key == "b") {
        b = to_double(key, value);
    } else if (key == "epsilon") {
        epsilon = to_double(key, value);
    } else if (key == "mu") {
        mu = to_double(key, value);
    } else if (key == "inner-iters") {
        inner_iters = to_int(key, value);
    } else if (key == "inner-update") {
        if (value == "latest") {
            inner_update = InnerUpdate::latest_iterate;
        } else if (value == "extrapolated") {
            inner_update = InnerUpdate::extrapolated;
        } else {
            throw InvalidParameter("config: 'inner-update' expects latest or extrapolated");
        }
    } else if (key == "c") {
        c = to_double(key, value);
        if (kind == ExperimentKind::soliton || kind == ExperimentKind::pscan) {
            min_height = 1.5 * c;
        }
    } else if (key == "x0") {
        x0 = to_double(key, value);
    } else if (key == "k1") {
        k1 = to_double(key, value);
    } else if (key == "k2") {
        k2 = to_double(key, value);
    } else if (key == "x1") {
        x1 = to_double(key, value);
    } else if (key == "x2") {
        x2 = to_double(key, value);
    } else if (key == "u0") {
        u0 = to_double(key, value);
    } else if (key == "tau") {
        tau = to_double(key, value);
    } else if (key == "t0") {
        t0 = to_double(key, value);
    } else if (key == "record") {
        record_times = to_list(key, value);
    } else if (key == "out") {
        out_dir = std::string(value);
    } else if (key == "min-height") {
        min_height = to_double(key, value);
    } else if (key == "max-crests") {
        max_crests = static_cast<std::size_t>(std::max(0, to_int(key, value)));
    } else if (key == "jobs") {
        jobs = to_int(key, value);
    } else if (key == "candidates") {
        candidates = to_list(key, value);
    } else if (key == "coarse-lo") {
        coarse_lo = to_double(key, value);
    } else if (key == "coarse-hi") {
        coarse_hi = to_double(key, value);
    } else if (key == "coarse-step") {
        coarse_step = to_double(key, value);
    } else if (key == "fine-step") {
        fine_step = to_double(key, value);
    } else if (key == "full-scan") {
        full_scan = to_bool(key, value);
    } else {
        throw InvalidParameter("config: unknown key '" + std::string(key) + "'");
    }
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::settings() const {
    std::vector<std::pair<std::string, std::string>> s;
    s.emplace_back("experiment", std::string(to_string(kind)));
    s.emplace_back("p", num(p));
    if (n_elements) {
        s.emplace_back("n", std::to_string(*n_elements));
    } else {
        s.emplace_back("h", num(h));
    }
    s.emplace_back("dt", num(dt));
    s.emplace_back("t-final", num(t_final));
    s.emplace_back("domain", num(a) + " " + num(b));
    s.emplace_back("epsilon", num(epsilon));
    s.emplace_back("mu", num(mu));
    s.emplace_back("inner-iters", std::to_string(inner_iters));
    s.emplace_back("inner-update",
                   inner_update == InnerUpdate::latest_iterate ? "latest" : "extrapolated");
    switch (kind) {
    case ExperimentKind::soliton:
    case ExperimentKind::pscan:
        s.emplace_back("c", num(c));
        s.emplace_back("x0", num(x0));
        break;
    case ExperimentKind::interact:
        s.emplace_back("k1", num(k1));
        s.emplace_back("k2", num(k2));
        s.emplace_back("x1", num(x1));
        s.emplace_back("x2", num(x2));
        break;
    case ExperimentKind::wavemaker:
        s.emplace_back("u0", num(u0));
        s.emplace_back("tau", num(tau));
        s.emplace_back("t0", num(t0));
        break;
    }
    if (kind == ExperimentKind::pscan) {
        if (!candidates.empty()) {
            s.emplace_back("candidates", list(candidates));
        } else {
            s.emplace_back("full-scan", full_scan ? "true" : "false");
            s.emplace_back("coarse-lo", num(coarse_lo));
            s.emplace_back("coarse-hi", num(coarse_hi));
            s.emplace_back("coarse-step", num(coarse_step));
            s.emplace_back("fine-step", num(fine_step));
        }
        s.emplace_back("jobs", std::to_string(jobs));
    } else {
        s.emplace_back("record", list(resolved_record_times()));
        s.emplace_back("min-height", num(min_height));
        s.emplace_back("max-crests", std::to_string(max_crests));
    }
    return s;
}

void ExperimentConfig::validate() const {
    const RLWProblem problem = make_problem(*this);
    problem.validate();
    // p only enters through the basis
    if (kind != ExperimentKind::pscan) {
        ExpBasis check(p, (b - a) / problem.n_elements);
        (void)check;
    }
    if (jobs < 1) {
        throw InvalidParameter("config: jobs must be >= 1");
    }
    if (!(min_height > 0.0)) {
        throw InvalidParameter("config: min-height must be positive");
    }
    switch (kind) {
    case ExperimentKind::soliton:
    case ExperimentKind::pscan:
        SolitonSpec{c, x0, epsilon, mu}.validate();
        break;
    case ExperimentKind::interact:
        (void)soliton_amplitude_for_wave_number(k1);
        (void)soliton_amplitude_for_wave_number(k2);
        break;
    case ExperimentKind::wavemaker:
        WaveMakerSpec{u0, tau, t0}.validate();
        break;
    }
    if (kind == ExperimentKind::pscan && candidates.empty() && !full_scan) {
        (void)ScanRange{coarse_lo, coarse_hi, coarse_step}.points();
        if (!(fine_step > 0.0)) {
            throw InvalidParameter("config: fine-step must be positive");
        }
    }
}

void apply_config_file(ExperimentConfig& config, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidParameter("config: cannot open " + path.string());
    }
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#') {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw InvalidParameter("config: " + path.string() + ":" + std::to_string(line_no) +
                                   ": expected key=value");
        }
        auto strip = [](std::string s) {
            const auto lo = s.find_first_not_of(" \t\r");
            const auto hi = s.find_last_not_of(" \t\r");
            return lo == std::string::npos ? std::string() : s.substr(lo, hi - lo + 1);
        };
        config.set(strip(line.substr(0, eq)), strip(line.substr(eq + 1)));
    }
}

RLWProblem make_problem(const ExperimentConfig& config) {
    RLWProblem problem;
    problem.epsilon = config.epsilon;
    problem.mu = config.mu;
    problem.a = config.a;
    problem.b = config.b;
    problem.n_elements = config.resolved_elements();
    problem.dt = config.dt;
    problem.t_final = config.t_final;
    problem.tension = config.p;
    problem.inner_iters = config.inner_iters;
    problem.inner_update = config.inner_update;

    switch (config.kind) {
    case ExperimentKind::soliton:
    case ExperimentKind::pscan: {
        const SolitonSpec spec{config.c, config.x0, config.epsilon, config.mu};
        problem.initial = [spec](double x) { return exact_soliton(spec, x, 0.0); };
        break;
    }
    case ExperimentKind::interact: {
        const double k1 = config.k1;
        const double k2 = config.k2;
        const double x1 = config.x1;
        const double x2 = config.x2;
        problem.initial = [=](double x) { return two_soliton_ic(k1, k2, x1, x2, x); };
        break;
    }
    case ExperimentKind::wavemaker: {
        const WaveMakerSpec spec{config.u0, config.tau, config.t0};
        problem.left_boundary = [spec](double t) { return wavemaker_beta(spec, t); };
        break;
    }
    }
    return problem;
}

std::function<double(double, double)> exact_solution(const ExperimentConfig& config) {
    if (config.kind != ExperimentKind::soliton && config.kind != ExperimentKind::pscan) {
        return {};
    }
    const SolitonSpec spec{config.c, config.x0, config.epsilon, config.mu};
    return [spec](double x, double t) { return exact_soliton(spec, x, t); };
}

RunOptions make_run_options(const ExperimentConfig& config) {
    RunOptions options;
    options.exact = exact_solution(config);
    options.crest_min_height = config.min_height;
    options.max_crests = config.max_crests;
    return options;
}

TensionObjective soliton_linf_objective(const ExperimentConfig& config) {
    ExperimentConfig base = config;
    base.kind = ExperimentKind::soliton;
    return [base](double p) {
        ExperimentConfig cfg = base;
        cfg.p = p;
        RLWProblem problem = make_problem(cfg);
        RunOptions options;
        options.exact = exact_solution(cfg);
        const double times[] = {cfg.t_final};
        const RunReport report = run(problem, times, options);
        return *report.rows.back().linf;
    };
}

std::string profile_file_name(double t) {
    std::ostringstream out;
    out << "profile_t" << t << ".dat";
    return out.str();
}

namespace {

void write_manifest(const ExperimentConfig& config, const std::filesystem::path& path,
                    const std::vector<std::pair<std::string, std::string>>& extra = {}) {
    std::ofstream out(path);
    out << "# rlw run manifest\n";
    out << "version=" << version_string() << '\n';
    for (const auto& [k, v] : config.settings()) {
        out << k << '=' << v << '\n';
    }
    for (const auto& [k, v] : extra) {
        out << "# " << k << '=' << v << '\n';
    }
}

ExperimentOutcome run_scan(const ExperimentConfig& config) {
    ExperimentOutcome outcome;
    const auto objective = soliton_linf_objective(config);
    try {
        PScanResult result;
        if (!config.candidates.empty()) {
            result = scan_tensions(config.candidates, objective, config.jobs);
        } else if (config.full_scan) {
            result = p_scan(objective, ScanRange{0.0, 80.0, 0.1}, ScanRange{0.0, 1.0, 1e-5},
                            config.jobs);
        } else {
            result = p_scan_refined(objective,
                                    ScanRange{config.coarse_lo, config.coarse_hi, config.coarse_step},
                                    config.fine_step, config.jobs);
        }
        std::ofstream csv(config.out_dir / "pscan.csv");
        csv << "p,Linf\n";
        for (const auto& s : result.samples) {
            csv << format_number(s.p) << ',';
            if (std::isfinite(s.objective)) {
                csv << format_number(s.objective);
            }
            csv << '\n';
        }
        write_manifest(config, config.out_dir / "manifest.txt",
                       {{"best_p", num(result.best_p)}, {"best_linf", num(result.best_objective)}});
        outcome.message = "best p = " + num(result.best_p) + " (Linf " +
                          format_number(result.best_objective) + ")";
        outcome.scan = std::move(result);
    } catch (const NoFeasibleTension& e) {
        outcome.exit_code = kExitNumerical;
        outcome.message = e.what();
    }
    return outcome;
}

} // namespace

ExperimentOutcome run_experiment(const ExperimentConfig& config) {
    ExperimentOutcome outcome;
    try {
        config.validate();
    } catch (const InvalidParameter& e) {
        outcome.exit_code = kExitUsage;
        outcome.message = e.what();
        return outcome;
    } catch (const DegenerateTension& e) {
        outcome.exit_code = kExitNumerical;
        outcome.message = e.what();
        return outcome;
    }

    std::error_code ec;
    std::filesystem::create_directories(config.out_dir, ec);
    if (ec) {
        outcome.exit_code = kExitUsage;
        outcome.message = "cannot create output directory " + config.out_dir.string();
        return outcome;
    }

    if (config.kind == ExperimentKind::pscan) {
        return run_scan(config);
    }

    write_manifest(config, config.out_dir / "manifest.txt");
    std::ofstream csv(config.out_dir / "report.csv");
    ReportCsvWriter writer(csv, config.max_crests);
    writer.write_header();

    RLWProblem problem = make_problem(config);
    RunOptions options = make_run_options(config);
    double last_t = 0.0;
    options.on_record = [&](const ReportRow& row, const CoefficientVector& state,
                            const Discretization& disc) {
        writer.write_row(row);
        last_t = row.t;
        std::ofstream prof(config.out_dir / profile_file_name(row.t));
        const auto u = knot_values(state, disc.basis);
        for (int j = 0; j <= disc.mesh.n_elements(); ++j) {
            prof << format_number(disc.mesh.knot(j)) << ' '
                 << format_number(u[static_cast<std::size_t>(j)]) << '\n';
        }
    };
    const auto times = config.resolved_record_times();
    try {
        outcome.report = run(problem, times, options);
        outcome.message = "wrote " + std::to_string(outcome.report.rows.size()) + " rows to " +
                          (config.out_dir / "report.csv").string();
    } catch (const InvalidParameter& e) {
        outcome.exit_code = kExitUsage;
        outcome.message = e.what();
    } catch (const SingularSystem& e) {
        writer.write_truncation(std::isnan(e.time()) ? last_t : e.time(), e.what());
        outcome.exit_code = kExitNumerical;
        outcome.message = e.what();
    } catch (const DegenerateTension& e) {
        writer.write_truncation(last_t, e.what());
        outcome.exit_code = kExitNumerical;
        outcome.message = e.what();
    }
    return outcome;
}

} // namespace rlw

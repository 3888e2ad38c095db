#include "rlw/diagnostics.hpp"

#include "rlw/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

namespace rlw {

bool RunReport::well_formed() const {
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (r > 0 && !(row.t > rows[r - 1].t)) {
            return false;
        }
        if (!std::isfinite(row.invariants.c1) || !std::isfinite(row.invariants.c2) ||
            !std::isfinite(row.invariants.c3)) {
            return false;
        }
    }
    return true;
}

double linf_error(const CoefficientVector& state, const ExpBasis& basis, const Mesh& mesh,
                  const std::function<double(double)>& exact) {
    const auto u = knot_values(state, basis);
    double worst = 0.0;
    for (int j = 0; j <= mesh.n_elements(); ++j) {
        worst = std::max(worst, std::abs(exact(mesh.knot(j)) - u[static_cast<std::size_t>(j)]));
    }
    return worst;
}

Invariants invariants_from_knots(std::span<const double> u, std::span<const double> ux, double h,
                                 double mu) {
    if (u.size() != ux.size() || u.size() < 2) {
        throw DimensionError("invariants: knot arrays must match and hold at least two values");
    }
    Invariants inv;
    const std::size_t last = u.size() - 1;
    for (std::size_t j = 0; j <= last; ++j) {
        const double w = (j == 0 || j == last) ? 0.5 * h : h;
        const double v = u[j];
        inv.c1 += w * v;
        inv.c2 += w * (v * v + mu * ux[j] * ux[j]);
        inv.c3 += w * (v * v * v + 3.0 * v * v);
    }
    return inv;
}

Invariants invariants(const CoefficientVector& state, const ExpBasis& basis, const Mesh& mesh,
                      double mu) {
    const auto u = knot_values(state, basis);
    const auto ux = knot_slopes(state, basis);
    return invariants_from_knots(u, ux, mesh.h(), mu);
}

std::vector<Crest> track_crests(std::span<const double> u, const Mesh& mesh, double min_height) {
    if (!(min_height > 0.0)) {
        throw InvalidParameter("track_crests: min_height must be positive");
    }
    std::vector<Crest> crests;
    if (u.size() < 3) {
        return crests;
    }
    const double h = mesh.h();
    for (std::size_t j = u.size() - 2; j >= 1; --j) {
        const double left = u[j - 1];
        const double mid = u[j];
        const double right = u[j + 1];
        if (!(mid > min_height) || !(mid > left) || !(mid >= right)) {
            continue;
        }
        // vertex of the parabola through the three knots
        const double curvature = left - 2.0 * mid + right;
        double shift = 0.0;
        double peak = mid;
        if (curvature < 0.0) {
            shift = 0.5 * (left - right) / curvature;
            peak = mid - 0.25 * (left - right) * shift;
        }
        crests.push_back({mesh.knot(static_cast<int>(j)) + shift * h, peak});
    }
    return crests;
}

std::vector<Crest> track_crests(const CoefficientVector& state, const ExpBasis& basis,
                                const Mesh& mesh, double min_height) {
    return track_crests(knot_values(state, basis), mesh, min_height);
}

std::vector<double> ScanRange::points() const {
    if (!(step > 0.0) || !(hi >= lo)) {
        throw InvalidParameter("scan range: require step > 0 and hi >= lo");
    }
    std::vector<double> pts;
    const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    pts.reserve(static_cast<std::size_t>(count) + 1);
    for (long i = 0; i <= count; ++i) {
        pts.push_back(lo + static_cast<double>(i) * step);
    }
    return pts;
}

namespace {

double safe_objective(const TensionObjective& objective, double p) {
    try {
        const double v = objective(p);
        return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
    } catch (const std::exception&) {
        return std::numeric_limits<double>::infinity();
    }
}

} // namespace

PScanResult scan_tensions(std::span<const double> candidates, const TensionObjective& objective,
                          int jobs) {
    std::vector<double> ps(candidates.begin(), candidates.end());
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());

    std::vector<double> values(ps.size(), std::numeric_limits<double>::infinity());
    const int workers = std::clamp(jobs, 1, std::max(1, static_cast<int>(ps.size())));
    if (workers == 1) {
        for (std::size_t k = 0; k < ps.size(); ++k) {
            values[k] = safe_objective(objective, ps[k]);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t k = next++; k < ps.size(); k = next++) {
                    values[k] = safe_objective(objective, ps[k]);
                }
            });
        }
    }

    PScanResult result;
    result.best_objective = std::numeric_limits<double>::infinity();
    result.samples.reserve(ps.size());
    for (std::size_t k = 0; k < ps.size(); ++k) {
        result.samples.push_back({ps[k], values[k]});
        if (values[k] < result.best_objective) {
            result.best_objective = values[k];
            result.best_p = ps[k];
        }
    }
    if (!std::isfinite(result.best_objective)) {
        throw NoFeasibleTension("p_scan: no feasible p among " + std::to_string(ps.size()) +
                                " candidates");
    }
    return result;
}

namespace {

std::vector<double> positive_points(const ScanRange& range) {
    auto pts = range.points();
    std::erase_if(pts, [](double p) { return !(p > 0.0); });
    return pts;
}

PScanResult merge(PScanResult coarse, const PScanResult& fine) {
    for (const auto& s : fine.samples) {
        coarse.samples.push_back(s);
    }
    std::sort(coarse.samples.begin(), coarse.samples.end(),
              [](const ScanSample& x, const ScanSample& y) { return x.p < y.p; });
    if (fine.best_objective < coarse.best_objective ||
        (fine.best_objective == coarse.best_objective && fine.best_p < coarse.best_p)) {
        coarse.best_objective = fine.best_objective;
        coarse.best_p = fine.best_p;
    }
    return coarse;
}

} // namespace

PScanResult p_scan(const TensionObjective& objective, const ScanRange& coarse,
                   const ScanRange& fine, int jobs) {
    const auto coarse_pts = positive_points(coarse);
    const auto fine_pts = positive_points(fine);
    std::optional<PScanResult> first;
    std::optional<PScanResult> second;
    try {
        first = scan_tensions(coarse_pts, objective, jobs);
    } catch (const NoFeasibleTension&) {
    }
    try {
        second = scan_tensions(fine_pts, objective, jobs);
    } catch (const NoFeasibleTension&) {
    }
    if (!first && !second) {
        throw NoFeasibleTension("p_scan: no feasible p");
    }
    if (!first) {
        return *second;
    }
    if (!second) {
        return *first;
    }
    return merge(std::move(*first), *second);
}

PScanResult p_scan_refined(const TensionObjective& objective, const ScanRange& coarse,
                           double fine_step, int jobs) {
    PScanResult first = scan_tensions(positive_points(coarse), objective, jobs);
    const double lo = std::max(fine_step, first.best_p - coarse.step);
    const double hi = first.best_p + coarse.step;
    const auto fine_pts = positive_points(ScanRange{lo, hi, fine_step});
    std::optional<PScanResult> second;
    try {
        second = scan_tensions(fine_pts, objective, jobs);
    } catch (const NoFeasibleTension&) {
        return first;
    }
    return merge(std::move(first), *second);
}

} // namespace rlw

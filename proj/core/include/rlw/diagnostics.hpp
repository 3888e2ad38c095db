#pragma once

#include "rlw/basis.hpp"
#include "rlw/state.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace rlw {

/// Trapezoidal approximations of int u, int (u^2 + mu u_x^2), int (u^3 + 3u^2).
struct Invariants {
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;
};

struct Crest {
    double position = 0.0;
    double amplitude = 0.0;
};

struct ReportRow {
    double t = 0.0;
    std::optional<double> linf; ///< only when an exact solution is known
    Invariants invariants;
    std::vector<Crest> crests;
};

struct RunReport {
    std::vector<ReportRow> rows;
    /// Ordered key/value pairs describing the run (p, h, dt, domain, experiment id, ...).
    std::vector<std::pair<std::string, std::string>> metadata;

    /// Rows strictly increasing in t with finite invariants.
    bool well_formed() const;
};

/// max_j |exact(x_j) - U_N(x_j)| over the knots.
double linf_error(const CoefficientVector& state, const ExpBasis& basis, const Mesh& mesh,
                  const std::function<double(double)>& exact);

Invariants invariants(const CoefficientVector& state, const ExpBasis& basis, const Mesh& mesh,
                      double mu);

/// Trapezoidal invariants from knot values and slopes directly.
Invariants invariants_from_knots(std::span<const double> u, std::span<const double> ux, double h,
                                 double mu);

/// Interior local maxima of the knot values above `min_height`, refined by
/// a parabola through the maximum and its two neighbours. Leading (largest
/// position) crest first.
std::vector<Crest> track_crests(std::span<const double> u, const Mesh& mesh, double min_height);

std::vector<Crest> track_crests(const CoefficientVector& state, const ExpBasis& basis,
                                const Mesh& mesh, double min_height);

// ---------------------------------------------------------------------------
// Tension scan

/// Closed grid lo, lo + step, ..., up to hi.
struct ScanRange {
    double lo = 0.0;
    double hi = 0.0;
    double step = 1.0;

    std::vector<double> points() const;
};

struct ScanSample {
    double p = 0.0;
    double objective = 0.0; ///< +inf when the run failed
};

struct PScanResult {
    double best_p = 0.0;
    double best_objective = 0.0;
    std::vector<ScanSample> samples; ///< ascending in p
};

using TensionObjective = std::function<double(double p)>;

/// Evaluates `objective` at every candidate (up to `jobs` at a time).
///
/// Exceptions and non-finite values count as +inf. Ties go to the smaller
/// p. Throws NoFeasibleTension when nothing is finite.
PScanResult scan_tensions(std::span<const double> candidates, const TensionObjective& objective,
                          int jobs = 1);

/// Two-stage scan: the coarse grid, then the fine grid. Non-positive grid
/// points are skipped.
PScanResult p_scan(const TensionObjective& objective, const ScanRange& coarse,
                   const ScanRange& fine, int jobs = 1);

/// Coarse grid, then a fine grid of spacing `fine_step` spanning one coarse
/// step either side of the coarse minimum.
PScanResult p_scan_refined(const TensionObjective& objective, const ScanRange& coarse,
                           double fine_step, int jobs = 1);

} // namespace rlw

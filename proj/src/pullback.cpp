#include "unicrit/pullback.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "unicrit/accum.hpp"
#include "unicrit/parallel.hpp"

namespace unicrit {

namespace {

double containment_slack(const DiskEnclosure& disk) {
    return 1e-12 * (std::abs(disk.center) + disk.radius + 1.0);
}

// Root of v staying in the chosen component: for a non-critical step the
// component k occupies the angular sector around the step axis, so the root
// nearest that axis in angle is the one inside it.
Complex root_in_sector(const UnicriticalMap& map, Complex v, double axis) {
    Complex best{};
    double best_dist = std::numeric_limits<double>::infinity();
    const double r = real_root(std::abs(v), map.degree);
    const double base_arg = principal_arg(v);
    for (int k = 0; k < map.degree; ++k) {
        const double phi =
            (base_arg + 2.0 * std::numbers::pi * k) / map.degree;
        const double dist = angular_gap(phi, axis);
        if (dist < best_dist) {
            best_dist = dist;
            best = std::polar(r, phi);
        }
    }
    return best;
}

}  // namespace

PullbackChain pull_back_along_orbit(const UnicriticalMap& map,
                                    const DiskEnclosure& D,
                                    const OrbitSegment& reference, int n) {
    if (n < 0) throw UsageError("pull-back depth must be >= 0");
    if (reference.points.size() <= static_cast<std::size_t>(n))
        throw UsageError("reference orbit is shorter than the pull-back depth");
    if (!D.contains(reference.points[static_cast<std::size_t>(n)],
                    containment_slack(D)))
        throw UsageError("reference endpoint lies outside the target disk");

    PullbackChain chain;
    chain.target = D;
    chain.steps.reserve(static_cast<std::size_t>(n));
    chain.tracked_boundary.reserve(static_cast<std::size_t>(n));
    chain.diam_lower = D.diameter();
    chain.diam_upper = D.diameter();

    DiskEnclosure cur = D;
    std::array<Complex, 2> boundary{D.center + Complex{D.radius, 0.0},
                                    D.center - Complex{D.radius, 0.0}};
    for (int i = 1; i <= n; ++i) {
        const Complex ref = reference.points[static_cast<std::size_t>(n - i)];
        std::vector<PullbackStep> comps = disk_preimage_components(map, cur);
        PullbackStep step;
        if (comps.size() == 1) {
            step = comps[0];
            if (!step.outer.contains(ref, containment_slack(step.outer)))
                throw DynamicsError(
                    "branch selection failed: reference point outside the "
                    "critical component enclosure at step " + std::to_string(i));
        } else {
            std::size_t nearest = 0;
            double d1 = std::numeric_limits<double>::infinity();
            double d2 = std::numeric_limits<double>::infinity();
            for (std::size_t k = 0; k < comps.size(); ++k) {
                const double dist = std::abs(comps[k].inner_point - ref);
                if (dist < d1) {
                    d2 = d1;
                    d1 = dist;
                    nearest = k;
                } else if (dist < d2) {
                    d2 = dist;
                }
            }
            step = comps[nearest];
            step.ambiguous = d2 <= 2.0 * d1;
            if (!step.outer.contains(ref, containment_slack(step.outer))) {
                bool found = false;
                for (std::size_t k = 0; k < comps.size(); ++k) {
                    if (comps[k].outer.contains(ref,
                                                containment_slack(comps[k].outer))) {
                        step = comps[k];
                        step.ambiguous = true;  // nearest-root choice disagreed
                        found = true;
                        break;
                    }
                }
                if (!found)
                    throw DynamicsError(
                        "branch selection failed: reference point outside every "
                        "component enclosure at step " + std::to_string(i));
            }
        }
        step.inner_point = ref;
        chain.valid = chain.valid && !step.ambiguous;

        // Backward boundary tracking. Non-critical steps must stay in the
        // selected sector. A critical flag can be spurious (the enclosure,
        // not the true component, reached c), so the tracked pair follows
        // the roots nearest the exact reference preimage: those stay in the
        // reference's component whether or not the fold is genuine, and the
        // distance remains a valid diameter lower bound.
        if (step.critical) {
            for (Complex& b : boundary) {
                const Complex v = b - map.c;
                Complex nearest{};
                double best = std::numeric_limits<double>::infinity();
                for (int k = 0; k < map.degree; ++k) {
                    const Complex cand = branch_root(map.degree, v, k);
                    const double dist = std::abs(cand - ref);
                    if (dist < best) {
                        best = dist;
                        nearest = cand;
                    }
                }
                b = nearest;
            }
        } else {
            boundary = {root_in_sector(map, boundary[0] - map.c, step.sector_axis),
                        root_in_sector(map, boundary[1] - map.c, step.sector_axis)};
        }
        chain.steps.push_back(step);
        chain.tracked_boundary.push_back(boundary);
        cur = step.outer;
    }
    if (n > 0) {
        chain.diam_upper = chain.steps.back().outer.diameter();
        chain.diam_lower = std::abs(boundary[0] - boundary[1]);
    }
    return chain;
}

std::vector<double> geometric_grid(double delta0, int count, double ratio) {
    if (!(delta0 > 0.0)) throw UsageError("grid start must be positive");
    if (count < 1) throw UsageError("grid needs at least one point");
    if (!(ratio > 1.0)) throw UsageError("grid ratio must exceed 1");
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(count));
    double delta = delta0;
    for (int j = 0; j < count; ++j) {
        grid.push_back(delta);
        delta /= ratio;
    }
    return grid;
}

ScaleProfile r_profile(const UnicriticalMap& map,
                       const std::vector<double>& delta_grid, int cutoff,
                       unsigned threads) {
    if (delta_grid.empty()) throw UsageError("delta grid is empty");
    for (double delta : delta_grid)
        if (!(delta > 0.0)) throw UsageError("delta grid values must be positive");
    if (cutoff < 0) throw UsageError("cutoff must be >= 0");

    const OrbitSegment orbit_c = iterate(map, map.c, cutoff);
    if (orbit_c.escaped_at && *orbit_c.escaped_at <= cutoff)
        throw DynamicsError("critical orbit escapes at iterate " +
                            std::to_string(*orbit_c.escaped_at) +
                            "; the contraction profile needs a bounded orbit");

    ScaleProfile profile;
    profile.degree = map.degree;
    profile.cutoff = cutoff;
    profile.rows.resize(delta_grid.size());
    parallel_for(delta_grid.size(), threads, [&](std::size_t j) {
        const double delta = delta_grid[j];
        const DiskEnclosure disk = critical_scale_disk(map, delta);
        ScaleRow row;
        row.delta = delta;
        for (int t = 0; t <= cutoff; ++t) {
            if (std::abs(orbit_c.points[static_cast<std::size_t>(t)]) >
                disk.radius)
                continue;
            row.return_times_used.push_back(t);
            const PullbackChain chain =
                pull_back_along_orbit(map, disk, orbit_c, t);
            if (chain.diam_lower > 0.0)
                row.r_hi = std::min(row.r_hi, delta / chain.diam_lower);
            if (chain.valid) {
                row.r_lo = std::min(row.r_lo, delta / chain.diam_upper);
            } else {
                ++row.excluded_chains;
            }
        }
        row.cutoff_limited = row.return_times_used.empty();
        profile.rows[j] = std::move(row);
    });
    return profile;
}

ChildScan find_children(const UnicriticalMap& map, double delta, int cutoff,
                        double t) {
    if (!(delta > 0.0)) throw UsageError("delta must be positive");
    if (cutoff < 0) throw UsageError("cutoff must be >= 0");
    const DiskEnclosure V = critical_scale_disk(map, delta);
    const OrbitSegment orbit0 = iterate(map, Complex{0.0, 0.0}, cutoff);
    if (orbit0.escaped_at && *orbit0.escaped_at <= cutoff)
        throw DynamicsError("critical orbit escapes at iterate " +
                            std::to_string(*orbit0.escaped_at) +
                            "; the child scan needs a bounded orbit");

    ChildScan scan;
    scan.delta = delta;
    scan.cutoff = cutoff;
    for (int s = 1; s <= cutoff; ++s) {
        if (std::abs(orbit0.points[static_cast<std::size_t>(s)]) > V.radius)
            continue;
        ChildRecord record;
        record.time = s;
        record.enclosure = pull_back_along_orbit(map, V, orbit0, s);
        const auto& steps = record.enclosure.steps;
        const bool final_critical = steps.back().critical;
        bool intermediates_exclude_zero = true;
        bool zero_certified_inside = false;
        for (std::size_t i = 0; i + 1 < steps.size(); ++i) {
            if (std::abs(steps[i].outer.center) <= steps[i].outer.radius)
                intermediates_exclude_zero = false;
            if (std::abs(steps[i].inner_point) < kCollisionTol)
                zero_certified_inside = true;
        }
        if (zero_certified_inside) {
            record.certainty = ChildCertainty::certain_not;
        } else if (record.enclosure.valid && final_critical &&
                   intermediates_exclude_zero) {
            record.certainty = ChildCertainty::certain_child;
        } else {
            record.certainty = ChildCertainty::unknown;
        }
        record.image_diam_lower =
            record.enclosure.prefix_diam_lower(static_cast<std::size_t>(s - 1));
        record.image_diam_upper =
            record.enclosure.prefix_diam_upper(static_cast<std::size_t>(s - 1));
        scan.children.push_back(std::move(record));
    }

    // Child-diameter sum diagnostic, compared against the nice-set bound
    // computed from the profile's r_lo at the same scale.
    ChildSumReport report;
    report.s = t / static_cast<double>(map.degree);
    CompensatedSum sum;
    for (const auto& child : scan.children) {
        if (child.certainty == ChildCertainty::certain_not) continue;
        sum.add(std::pow(child.image_diam_upper, report.s));
    }
    report.sum_upper = sum.value();
    const ScaleProfile local = r_profile(map, {delta}, cutoff, 1);
    report.r_lo = local.rows.front().r_lo;
    if (std::isfinite(report.r_lo) && report.s > 0.0) {
        report.bound = std::pow(delta / report.r_lo, report.s) /
                       (1.0 - std::pow(2.0, -report.s));
        report.comparable = true;
        report.holds = report.sum_upper <= report.bound;
    }
    scan.sum_report = report;
    return scan;
}

namespace {

struct MinReturnDerivCollector {
    double radius = 0.0;
    int degree = 2;
    double min_log = std::numeric_limits<double>::infinity();

    MinReturnDerivCollector fork() const {
        return MinReturnDerivCollector{radius, degree};
    }
    void visit(Complex z, int depth, double log_abs_deriv) {
        if (depth >= 1 && std::abs(z) <= radius)
            min_log = std::min(min_log, degree * log_abs_deriv);
    }
    bool descend(Complex, int, double) { return true; }
    void merge(MinReturnDerivCollector&& o) {
        min_log = std::min(min_log, o.min_log);
    }
};

}  // namespace

ReturnDerivativeStats return_derivative_stats(const UnicriticalMap& map,
                                              double delta, int cutoff,
                                              int tree_cutoff,
                                              const TreeOptions& opts) {
    if (!(delta > 0.0)) throw UsageError("delta must be positive");
    if (cutoff < 0 || tree_cutoff < 0)
        throw UsageError("cutoffs must be >= 0");
    const double radius = real_root(delta, map.degree);

    ReturnDerivativeStats stats;
    stats.delta = delta;
    stats.cutoff = cutoff;
    stats.tree_cutoff = tree_cutoff;

    // m_plus scans the critical orbit; both orbits stop at escape and the
    // scan honestly covers only the computed range.
    const OrbitSegment orbit0 = iterate(map, Complex{0.0, 0.0}, cutoff);
    const OrbitSegment orbit_c = iterate(map, map.c, cutoff);
    const std::size_t scan = std::min(
        {orbit0.points.size(), orbit_c.log_deriv.size(),
         static_cast<std::size_t>(cutoff) + 1});
    for (std::size_t n = 1; n < scan; ++n) {
        if (std::abs(orbit0.points[n]) <= radius)
            stats.m_plus = std::min(stats.m_plus, std::exp(orbit_c.log_deriv[n]));
    }

    MinReturnDerivCollector collector{radius, map.degree};
    detail::chunked_tree_scan(map, Complex{0.0, 0.0}, tree_cutoff, opts,
                              collector);
    if (std::isfinite(collector.min_log))
        stats.m_minus = std::exp(collector.min_log);
    stats.m = std::max(stats.m_plus, stats.m_minus);
    return stats;
}

}  // namespace unicrit

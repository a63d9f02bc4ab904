#include "unicrit/series.hpp"

#include <algorithm>
#include <cmath>

namespace unicrit {

namespace {

double skipped_node_count(int degree, int levels_below) {
    // sum_{j=1..levels_below} d^j, as a double; only feeds a heuristic bound
    double total = 0.0;
    double level = 1.0;
    for (int j = 1; j <= levels_below; ++j) {
        level *= degree;
        total += level;
    }
    return total;
}

// Per-level scaled sums of exp(-t log|Df^n(z)|) over the preimage tree.
struct LevelSumCollector {
    double t = 0.0;
    int max_depth = 0;
    int degree = 2;
    bool prune = false;
    double prune_floor = 0.0;
    std::vector<LogScaledSum> levels;
    CompensatedSum dropped;

    LevelSumCollector(double t_, int max_depth_, int degree_, bool prune_,
                      double floor_)
        : t(t_), max_depth(max_depth_), degree(degree_), prune(prune_),
          prune_floor(floor_), levels(static_cast<std::size_t>(max_depth_) + 1) {}

    LevelSumCollector fork() const {
        return LevelSumCollector(t, max_depth, degree, prune, prune_floor);
    }

    void visit(Complex, int depth, double log_abs_deriv) {
        levels[static_cast<std::size_t>(depth)].add_log(-t * log_abs_deriv);
    }

    bool descend(Complex, int depth, double log_abs_deriv) {
        if (!prune || depth == 0) return true;
        if (std::exp(-t * log_abs_deriv) >= prune_floor) return true;
        dropped.add(prune_floor * skipped_node_count(degree, max_depth - depth));
        return false;
    }

    void merge(LevelSumCollector&& o) {
        for (std::size_t i = 0; i < levels.size(); ++i) levels[i].merge(o.levels[i]);
        dropped.add(o.dropped.sum);
        dropped.add(o.dropped.carry);
    }
};

// Minimum log|Df^n| over the nodes of one level.
struct MinAtDepthCollector {
    int target_depth = 0;
    double min_log_deriv = std::numeric_limits<double>::infinity();

    MinAtDepthCollector fork() const { return MinAtDepthCollector{target_depth}; }
    void visit(Complex, int depth, double log_abs_deriv) {
        if (depth == target_depth)
            min_log_deriv = std::min(min_log_deriv, log_abs_deriv);
    }
    bool descend(Complex, int, double) { return true; }
    void merge(MinAtDepthCollector&& o) {
        min_log_deriv = std::min(min_log_deriv, o.min_log_deriv);
    }
};

// Materializes the log-derivatives of one level; used by the exponent
// bisection so the tree is enumerated once per depth instead of per sample.
struct LeafCollector {
    int target_depth = 0;
    std::vector<double> log_derivs;

    LeafCollector fork() const { return LeafCollector{target_depth, {}}; }
    void visit(Complex, int depth, double log_abs_deriv) {
        if (depth == target_depth) log_derivs.push_back(log_abs_deriv);
    }
    bool descend(Complex, int, double) { return true; }
    void merge(LeafCollector&& o) {
        log_derivs.insert(log_derivs.end(), o.log_derivs.begin(),
                          o.log_derivs.end());
    }
};

LogScaledSum level_scaled_sum(const UnicriticalMap& map, Complex w, double t,
                              int n, const TreeOptions& opts) {
    if (n < 0) throw UsageError("level index must be >= 0");
    LevelSumCollector collector(t, n, map.degree, false, 0.0);
    detail::chunked_tree_scan(map, w, n, opts, collector);
    return collector.levels[static_cast<std::size_t>(n)];
}

}  // namespace

double level_sum(const UnicriticalMap& map, Complex w, double t, int n,
                 const TreeOptions& opts) {
    return level_scaled_sum(map, w, t, n, opts).value();
}

double log_level_sum(const UnicriticalMap& map, Complex w, double t, int n,
                     const TreeOptions& opts) {
    return level_scaled_sum(map, w, t, n, opts).log_value();
}

PoincareTruncation poincare_truncation(const UnicriticalMap& map, Complex w,
                                       double t, int depth, TruncationMode mode,
                                       double prune_floor,
                                       const TreeOptions& opts) {
    if (depth < 0) throw UsageError("truncation depth must be >= 0");
    LevelSumCollector collector(t, depth, map.degree,
                                mode == TruncationMode::pruned, prune_floor);
    detail::chunked_tree_scan(map, w, depth, opts, collector);

    PoincareTruncation out;
    out.target = w;
    out.exponent = t;
    out.depth = depth;
    out.mode = mode;
    out.level_sums.reserve(collector.levels.size());
    CompensatedSum partial;
    for (const auto& level : collector.levels) {
        const double s = level.value();
        out.level_sums.push_back(s);
        partial.add(s);
    }
    out.partial = partial.value();
    out.dropped_mass_bound =
        mode == TruncationMode::pruned ? collector.dropped.value() : 0.0;
    return out;
}

ForwardSeriesTruncation forward_series(const UnicriticalMap& map, double t,
                                       int depth) {
    if (depth < 0) throw UsageError("truncation depth must be >= 0");
    const OrbitSegment orbit = iterate(map, map.c, depth);
    if (orbit.escaped_at && *orbit.escaped_at <= depth)
        throw DynamicsError("critical orbit escapes at iterate " +
                            std::to_string(*orbit.escaped_at) +
                            "; the forward series needs a bounded orbit");
    ForwardSeriesTruncation out;
    out.exponent = t;
    out.depth = depth;
    out.terms.reserve(static_cast<std::size_t>(depth) + 1);
    CompensatedSum partial;
    const double e = t / static_cast<double>(map.degree);
    for (int n = 0; n <= depth; ++n) {
        const double term = std::exp(-e * orbit.log_deriv[static_cast<std::size_t>(n)]);
        out.terms.push_back(term);
        partial.add(term);
    }
    out.partial = partial.value();
    return out;
}

double pressure_estimate(const UnicriticalMap& map, Complex w, double t, int n,
                         const TreeOptions& opts) {
    if (n < 1) throw UsageError("pressure estimate needs level n >= 1");
    return log_level_sum(map, w, t, n, opts) / static_cast<double>(n);
}

ConvergenceExponentEstimate convergence_exponent(const UnicriticalMap& map,
                                                 Complex w, int n, double t_lo,
                                                 double t_hi, double tol,
                                                 const TreeOptions& opts) {
    if (n < 1) throw UsageError("exponent estimate needs level n >= 1");
    if (!(tol > 0.0)) throw UsageError("tolerance must be positive");
    if (!(t_lo < t_hi))
        throw DynamicsError("degenerate exponent bracket [" +
                            std::to_string(t_lo) + ", " + std::to_string(t_hi) + "]");

    LeafCollector leaves{n, {}};
    detail::chunked_tree_scan(map, w, n, opts, leaves);
    auto pressure = [&](double t) {
        LogScaledSum s;
        for (double ld : leaves.log_derivs) s.add_log(-t * ld);
        return s.log_value() / static_cast<double>(n);
    };

    ConvergenceExponentEstimate out;
    out.target = w;
    out.depth = n;
    double lo = t_lo, hi = t_hi;
    const double p_lo = pressure(lo);
    const double p_hi = pressure(hi);
    out.pressure_samples.emplace_back(lo, p_lo);
    out.pressure_samples.emplace_back(hi, p_hi);
    if (!(p_lo > 0.0) || !(p_hi < 0.0))
        throw DynamicsError("pressure bracket does not straddle zero: P(" +
                            std::to_string(lo) + ") = " + std::to_string(p_lo) +
                            ", P(" + std::to_string(hi) + ") = " +
                            std::to_string(p_hi));

    double mid = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
        mid = 0.5 * (lo + hi);
        const double p_mid = pressure(mid);
        out.pressure_samples.emplace_back(mid, p_mid);
        if (std::abs(p_mid) <= tol || (hi - lo) <= tol) break;
        if (p_mid > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    out.root = mid;
    out.bracket = {lo, hi};
    return out;
}

double min_level_derivative(const UnicriticalMap& map, int n,
                            const TreeOptions& opts) {
    if (n < 0) throw UsageError("level index must be >= 0");
    if (n == 0) return 1.0;
    MinAtDepthCollector collector{n};
    detail::chunked_tree_scan(map, Complex{0.0, 0.0}, n, opts, collector);
    return std::exp(collector.min_log_deriv);
}

}  // namespace unicrit

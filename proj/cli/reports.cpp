#include "reports.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace unicrit::cli {

namespace {

Json map_echo(const UnicriticalMap& map) {
    Json j;
    j["degree"] = map.degree;
    j["c"] = encode_complex(map.c);
    return j;
}

std::string join_ints(const std::vector<int>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ';';
        out += std::to_string(values[i]);
    }
    return out;
}

// Tail ratios a[k]/a[k-1] over the last `count` consecutive pairs.
std::vector<double> tail_ratios(std::span<const double> values, int count) {
    std::vector<double> out;
    const int n = static_cast<int>(values.size());
    for (int k = std::max(1, n - count); k < n; ++k) {
        const double prev = values[static_cast<std::size_t>(k - 1)];
        const double cur = values[static_cast<std::size_t>(k)];
        out.push_back(prev == 0.0 ? std::numeric_limits<double>::infinity()
                                  : cur / prev);
    }
    return out;
}

}  // namespace

SeriesTrend trend_from_ratios(std::span<const double> ratios) {
    if (ratios.empty()) return SeriesTrend::inconclusive;
    bool all_shrinking = true;
    bool all_growing = true;
    for (double r : ratios) {
        if (!(r < 0.95)) all_shrinking = false;
        if (!(r > 1.0)) all_growing = false;
    }
    if (all_shrinking) return SeriesTrend::shrinking;
    if (all_growing) return SeriesTrend::growing;
    return SeriesTrend::inconclusive;
}

std::string trend_label(SeriesTrend trend) {
    switch (trend) {
        case SeriesTrend::shrinking: return "shrinking";
        case SeriesTrend::growing: return "growing";
        default: return "inconclusive";
    }
}

std::string paired_verdict(SeriesTrend poincare, SeriesTrend forward) {
    if (poincare == SeriesTrend::shrinking && forward == SeriesTrend::shrinking)
        return "both-shrinking";
    if (poincare == SeriesTrend::growing && forward == SeriesTrend::growing)
        return "both-growing";
    if (poincare == SeriesTrend::inconclusive ||
        forward == SeriesTrend::inconclusive)
        return "inconclusive";
    return "mixed";
}

Report orbit_report(const Config& config) {
    const UnicriticalMap map = resolve_map(config);
    const Complex start{config.get_double("orbit.start_re", 0.0),
                        config.get_double("orbit.start_im", 0.0)};
    const int n = config.get_int("orbit.n", 32);
    const OrbitSegment orbit = iterate(map, start, n);

    Report report;
    report.name = "orbit";
    report.map_echo = map_echo(map);
    report.params["start"] = encode_complex(start);
    report.params["n"] = n;
    report.data = to_json(orbit);

    Table table;
    table.columns = {"k", "re", "im", "abs", "log_deriv"};
    Series magnitude{"|f^k(start)|", {}, {}};
    for (std::size_t k = 0; k < orbit.points.size(); ++k) {
        const Complex p = orbit.points[k];
        table.add_row({static_cast<long long>(k), p.real(), p.imag(),
                       std::abs(p), orbit.log_deriv[k]});
        if (k >= 1) {
            magnitude.x.push_back(static_cast<double>(k));
            magnitude.y.push_back(std::abs(p));
        }
    }
    report.tables.emplace_back("", std::move(table));
    report.plot = PlotSpec{"orbit magnitude", "k", "|f^k|", true, true,
                           {std::move(magnitude)}};
    return report;
}

Report preimages_report(const Config& config) {
    const UnicriticalMap map = resolve_map(config);
    const Complex w{config.get_double("preimages.w_re", 0.0),
                    config.get_double("preimages.w_im", 0.0)};
    const int depth = config.get_int("preimages.depth", 6);
    const TreeOptions opts = resolve_tree_options(config);

    Table table;
    table.columns = {"depth", "re", "im", "log_abs_deriv", "root_path"};
    std::vector<long long> level_counts(static_cast<std::size_t>(depth) + 1, 0);
    const TreeSummary summary = enumerate_preimage_tree(
        map, w, depth,
        [&](const NodeView& node) {
            std::string path;
            for (auto it = node.path.rbegin(); it != node.path.rend(); ++it) {
                if (!path.empty()) path += ';';
                path += std::to_string(static_cast<int>(*it));
            }
            table.add_row({static_cast<long long>(node.depth), node.point.real(),
                           node.point.imag(), node.log_abs_deriv, path});
            ++level_counts[static_cast<std::size_t>(node.depth)];
        },
        opts);

    Report report;
    report.name = "preimages";
    report.map_echo = map_echo(map);
    report.params["w"] = encode_complex(w);
    report.params["depth"] = depth;
    report.data["node_count"] = summary.node_count;
    report.data["max_abs"] = encode_real(summary.max_abs);
    report.data["min_abs"] = encode_real(summary.min_abs);
    report.tables.emplace_back("", std::move(table));

    Series counts{"nodes per level", {}, {}};
    for (std::size_t k = 0; k < level_counts.size(); ++k) {
        counts.x.push_back(static_cast<double>(k) + 1.0);
        counts.y.push_back(static_cast<double>(level_counts[k]));
    }
    report.plot = PlotSpec{"preimage tree level counts", "depth+1", "count",
                           true, true, {std::move(counts)}};
    return report;
}

Report poincare_report(const Config& config) {
    const UnicriticalMap map = resolve_map(config);
    const Complex w{config.get_double("poincare.w_re", 0.0),
                    config.get_double("poincare.w_im", 0.0)};
    const double t = config.get_double("poincare.t", 1.0);
    const int depth = config.get_int("depth.series", 12);
    const bool prune = config.get_bool("tree.prune", false);
    const double floor = config.get_double("tree.prune_floor", 1e-18);
    const TreeOptions opts = resolve_tree_options(config);
    const PoincareTruncation trunc = poincare_truncation(
        map, w, t, depth,
        prune ? TruncationMode::pruned : TruncationMode::exhaustive, floor,
        opts);

    Report report;
    report.name = "poincare";
    report.map_echo = map_echo(map);
    report.params["w"] = encode_complex(w);
    report.params["t"] = t;
    report.params["depth"] = depth;
    report.params["mode"] = prune ? "pruned" : "exhaustive";
    report.data = to_json(trunc);

    Table table;
    table.columns = {"n", "level_sum", "partial"};
    Series levels{"S_n", {}, {}};
    double partial = 0.0;
    for (std::size_t n = 0; n < trunc.level_sums.size(); ++n) {
        partial += trunc.level_sums[n];
        table.add_row({static_cast<long long>(n), trunc.level_sums[n], partial});
        levels.x.push_back(static_cast<double>(n) + 1.0);
        levels.y.push_back(trunc.level_sums[n]);
    }
    report.tables.emplace_back("", std::move(table));
    report.plot = PlotSpec{"Poincare level sums", "n+1", "S_n", true, true,
                           {std::move(levels)}};
    return report;
}

Report forward_report(const Config& config) {
    const UnicriticalMap map = resolve_map(config);
    const double t = config.get_double("forward.t", 1.0);
    const int depth = config.get_int("depth.series", 12);
    const ForwardSeriesTruncation series = forward_series(map, t, depth);

    Report report;
    report.name = "forward";
    report.map_echo = map_echo(map);
    report.params["t"] = t;
    report.params["depth"] = depth;
    report.data = to_json(series);

    Table table;
    table.columns = {"n", "term", "partial"};
    Series terms{"|Df^n(c)|^(-t/d)", {}, {}};
    double partial = 0.0;
    for (std::size_t n = 0; n < series.terms.size(); ++n) {
        partial += series.terms[n];
        table.add_row({static_cast<long long>(n), series.terms[n], partial});
        terms.x.push_back(static_cast<double>(n) + 1.0);
        terms.y.push_back(series.terms[n]);
    }
    report.tables.emplace_back("", std::move(table));
    report.plot = PlotSpec{"forward series terms", "n+1", "term", true, true,
                           {std::move(terms)}};
    return report;
}

Report exponent_report(const Config& config) {
    const UnicriticalMap map = resolve_map(config);
    const Complex w{config.get_double("exponent.w_re", 0.0),
                    config.get_double("exponent.w_im", 0.0)};
    const int depth = config.get_int("exponent.depth", 12);
    const double t_lo = config.get_double("exponent.t_lo", 0.5);
    const double t_hi = config.get_double("exponent.t_hi", 2.0);
    const double tol = config.get_double("exponent.tol", 1e-3);
    const TreeOptions opts = resolve_tree_options(config);
    const ConvergenceExponentEstimate estimate =
        convergence_exponent(map, w, depth, t_lo, t_hi, tol, opts);

    Report report;
    report.name = "exponent";
    report.map_echo = map_echo(map);
    report.params["w"] = encode_complex(w);
    report.params["depth"] = depth;
    report.params["t_lo"] = t_lo;
    report.params["t_hi"] = t_hi;
    report.params["tol"] = tol;
    report.data = to_json(estimate);

    Table table;
    table.columns = {"sample", "t", "pressure"};
    std::vector<std::pair<double, double>> sorted = estimate.pressure_samples;
    std::sort(sorted.begin(), sorted.end());
    Series curve{"P_n(t)", {}, {}};
    for (std::size_t i = 0; i < estimate.pressure_samples.size(); ++i) {
        const auto& [t_sample, p] = estimate.pressure_samples[i];
        table.add_row({static_cast<long long>(i), t_sample, p});
    }
    for (const auto& [t_sample, p] : sorted) {
        curve.x.push_back(t_sample);
        curve.y.push_back(p);
    }
    report.tables.emplace_back("", std::move(table));
    report.plot = PlotSpec{"pressure samples", "t", "P_n(t)", false, false,
                           {std::move(curve)}};
    return report;
}

Report rprofile_report(const Config& config) {
    const UnicriticalMap map = resolve_map(config);
    const std::vector<double> grid = resolve_delta_grid(config);
    const int cutoff = config.get_int("depth.orbit", 512);
    const TreeOptions opts = resolve_tree_options(config);
    const ScaleProfile profile = r_profile(map, grid, cutoff, opts.threads);

    Report report;
    report.name = "rprofile";
    report.map_echo = map_echo(map);
    report.params["cutoff"] = cutoff;
    report.params["grid_size"] = grid.size();
    report.data = to_json(profile);

    Table table;
    table.columns = {"delta",          "r_lo",           "r_hi",
                     "return_times",   "cutoff_limited", "excluded_chains"};
    Series lo{"R_lo", {}, {}}, hi{"R_hi", {}, {}};
    for (const ScaleRow& row : profile.rows) {
        table.add_row({row.delta, row.r_lo, row.r_hi,
                       join_ints(row.return_times_used), row.cutoff_limited,
                       static_cast<long long>(row.excluded_chains)});
        if (std::isfinite(row.r_lo)) {
            lo.x.push_back(row.delta);
            lo.y.push_back(row.r_lo);
        }
        if (std::isfinite(row.r_hi)) {
            hi.x.push_back(row.delta);
            hi.y.push_back(row.r_hi);
        }
    }
    report.tables.emplace_back("", std::move(table));
    report.plot = PlotSpec{"backward-contraction profile", "delta", "R bound",
                           true, true, {std::move(lo), std::move(hi)}};
    return report;
}

Report children_report(const Config& config) {
    const UnicriticalMap map = resolve_map(config);
    const double delta = config.get_double("children.delta", 0.05);
    const double t = config.get_double("children.t", 1.0);
    const int cutoff = config.get_int("depth.orbit", 512);
    const int mminus_depth = config.get_int("mminus.depth", 12);
    const TreeOptions opts = resolve_tree_options(config);
    const ChildScan scan = find_children(map, delta, cutoff, t);
    const ReturnDerivativeStats stats =
        return_derivative_stats(map, delta, cutoff, mminus_depth, opts);

    Report report;
    report.name = "children";
    report.map_echo = map_echo(map);
    report.params["delta"] = delta;
    report.params["t"] = t;
    report.params["cutoff"] = cutoff;
    report.params["mminus_depth"] = mminus_depth;
    report.data = to_json(scan);
    report.data["return_derivative_stats"] = to_json(stats);

    Table table;
    table.columns = {"time",           "certainty",        "image_diam_lower",
                     "image_diam_upper", "chain_diam_lower", "chain_diam_upper",
                     "valid_chain"};
    Series diameters{"image diameter bound", {}, {}};
    for (const ChildRecord& child : scan.children) {
        const char* label = child.certainty == ChildCertainty::certain_child
                                ? "certain-child"
                                : child.certainty == ChildCertainty::certain_not
                                      ? "certain-not"
                                      : "unknown";
        table.add_row({static_cast<long long>(child.time), std::string(label),
                       child.image_diam_lower, child.image_diam_upper,
                       child.enclosure.diam_lower, child.enclosure.diam_upper,
                       child.enclosure.valid});
        diameters.x.push_back(static_cast<double>(child.time));
        diameters.y.push_back(child.image_diam_upper);
    }
    report.tables.emplace_back("", std::move(table));
    report.plot = PlotSpec{"child image diameters", "return time", "diam",
                           true, true, {std::move(diameters)}};
    return report;
}

Report returns_report(const Config& config) {
    const UnicriticalMap map = resolve_map(config);
    const double delta_min = config.get_double("delta.min", 1e-6);
    const double delta_max = config.get_double("delta.max", 0.5);
    const int cutoff = config.get_int("depth.orbit", 4096);
    const double t = config.get_double("returns.t", 1.0);
    const TreeOptions opts = resolve_tree_options(config);

    const ReturnStaircase staircase =
        return_staircase(map, delta_min, delta_max, cutoff);
    ScaleProfile profile;
    std::vector<IntervalRatio> ratios;
    bool have_profile = false;
    {
        // Grid spanning the scanned range for the interval integrals.
        const double ratio = config.get_double("delta.ratio", 2.0);
        int count = config.get_int("delta.count", 0);
        if (count <= 0) {
            count = 1;
            double delta = delta_max;
            while (delta > delta_min && count < 512) {
                delta /= ratio;
                ++count;
            }
        }
        profile = r_profile(map, geometric_grid(delta_max, count, ratio), cutoff,
                            opts.threads);
        have_profile = profile.rows.size() >= 2;
        if (have_profile)
            ratios = close_return_ratios(map, staircase, profile, t);
    }

    Report report;
    report.name = "returns";
    report.map_echo = map_echo(map);
    report.params["delta_min"] = delta_min;
    report.params["delta_max"] = delta_max;
    report.params["cutoff"] = cutoff;
    report.params["t"] = t;
    report.data["staircase"] = to_json(staircase);
    report.data["ratios"] = to_json(ratios);
    report.data["profile"] = to_json(profile);

    Table table;
    table.columns = {"delta_lo", "delta_hi",       "n",
                     "zeta_re",  "zeta_im",        "log_deriv_at_zeta",
                     "verified", "diam_bound_2d",  "r_implied"};
    Series steps{"n(delta)", {}, {}};
    for (const CloseReturn& ret : staircase.returns) {
        double diam_bound = std::numeric_limits<double>::quiet_NaN();
        double r_implied = std::numeric_limits<double>::quiet_NaN();
        if (ret.zeta && ret.verified) {
            const ReturnRBound bound = r_bound_from_return(map, ret);
            diam_bound = bound.diam_bound;
            r_implied = bound.r_implied;
        }
        table.add_row({ret.delta_lo, ret.delta_hi,
                       static_cast<long long>(ret.time),
                       ret.zeta ? Cell(ret.zeta->real()) : Cell(std::string()),
                       ret.zeta ? Cell(ret.zeta->imag()) : Cell(std::string()),
                       ret.log_deriv_at_zeta, ret.verified, diam_bound,
                       r_implied});
        steps.x.push_back(ret.delta_hi);
        steps.y.push_back(static_cast<double>(ret.time));
        steps.x.push_back(ret.delta_lo);
        steps.y.push_back(static_cast<double>(ret.time));
    }
    report.tables.emplace_back("", std::move(table));

    Table ratio_table;
    ratio_table.columns = {"delta_lo", "delta_hi", "n",
                           "integral", "deriv_term", "ratio"};
    for (const IntervalRatio& row : ratios) {
        ratio_table.add_row({row.delta_lo, row.delta_hi,
                             static_cast<long long>(row.time), row.integral,
                             row.deriv_term, row.ratio});
    }
    report.tables.emplace_back("ratios", std::move(ratio_table));
    report.plot = PlotSpec{"first-entry staircase", "delta", "n(delta)", true,
                           true, {std::move(steps)}};
    (void)have_profile;
    return report;
}

Report theoremb_report(const Config& config) {
    const UnicriticalMap map = resolve_map(config);
    const std::vector<double> t_grid = resolve_t_grid(config);
    const int depth = config.get_int("depth.series", 12);
    const bool prune = config.get_bool("tree.prune", false);
    const double floor = config.get_double("tree.prune_floor", 1e-18);
    const TreeOptions opts = resolve_tree_options(config);

    Report report;
    report.name = "theoremb";
    report.map_echo = map_echo(map);
    report.params["depth"] = depth;
    report.params["mode"] = prune ? "pruned" : "exhaustive";

    Table table;
    table.columns = {"t", "forward_partial", "poincare_partial", "verdict"};
    for (int i = 0; i < 5; ++i)
        table.columns.push_back("poincare_ratio_" + std::to_string(i));
    for (int i = 0; i < 5; ++i)
        table.columns.push_back("forward_ratio_" + std::to_string(i));

    Table levels;
    levels.columns = {"t", "n", "level_sum", "forward_term"};

    Json rows = Json::array();
    Series forward_curve{"forward F_N(t)", {}, {}};
    Series poincare_curve{"Poincare P_N(0,t)", {}, {}};
    for (double t : t_grid) {
        const ForwardSeriesTruncation fwd = forward_series(map, t, depth);
        const PoincareTruncation poin = poincare_truncation(
            map, Complex{0.0, 0.0}, t, depth,
            prune ? TruncationMode::pruned : TruncationMode::exhaustive, floor,
            opts);
        const std::vector<double> ps_ratios = tail_ratios(poin.level_sums, 5);
        const std::vector<double> fw_ratios = tail_ratios(fwd.terms, 5);
        const std::string verdict = paired_verdict(trend_from_ratios(ps_ratios),
                                                   trend_from_ratios(fw_ratios));
        std::vector<Cell> row{t, fwd.partial, poin.partial, verdict};
        for (int i = 0; i < 5; ++i)
            row.push_back(i < static_cast<int>(ps_ratios.size())
                              ? Cell(ps_ratios[static_cast<std::size_t>(i)])
                              : Cell(std::string()));
        for (int i = 0; i < 5; ++i)
            row.push_back(i < static_cast<int>(fw_ratios.size())
                              ? Cell(fw_ratios[static_cast<std::size_t>(i)])
                              : Cell(std::string()));
        table.add_row(std::move(row));

        for (int n = 0; n <= depth; ++n)
            levels.add_row({t, static_cast<long long>(n),
                            poin.level_sums[static_cast<std::size_t>(n)],
                            fwd.terms[static_cast<std::size_t>(n)]});

        Json entry;
        entry["t"] = t;
        entry["forward"] = to_json(fwd);
        entry["poincare"] = to_json(poin);
        Json pr = Json::array();
        for (double r : ps_ratios) pr.push_back(encode_real(r));
        Json fr = Json::array();
        for (double r : fw_ratios) fr.push_back(encode_real(r));
        entry["poincare_tail_ratios"] = std::move(pr);
        entry["forward_tail_ratios"] = std::move(fr);
        entry["verdict"] = verdict;
        rows.push_back(std::move(entry));

        forward_curve.x.push_back(t);
        forward_curve.y.push_back(fwd.partial);
        poincare_curve.x.push_back(t);
        poincare_curve.y.push_back(poin.partial);
    }
    report.data["per_t"] = std::move(rows);
    report.tables.emplace_back("", std::move(table));
    report.tables.emplace_back("levels", std::move(levels));
    report.plot =
        PlotSpec{"paired series truncations", "t", "partial sum", true, true,
                 {std::move(forward_curve), std::move(poincare_curve)}};
    return report;
}

Report lb2bc_report(const Config& config) {
    const UnicriticalMap map = resolve_map(config);
    const int n_max_requested = config.get_int("lb2bc.n_max", 8);
    const int cutoff = config.get_int("depth.orbit", 512);
    const TreeOptions opts = resolve_tree_options(config);

    // The preimage minimum is budget-bound; the table truncates with a notice
    // instead of failing.
    int n_max = n_max_requested;
    while (n_max > 0 && leaf_count(map.degree, n_max) > opts.node_budget)
        --n_max;
    const bool truncated = n_max < n_max_requested;

    const OrbitSegment orbit_c = iterate(map, map.c, n_max);

    Report report;
    report.name = "lb2bc";
    report.map_echo = map_echo(map);
    report.params["n_max_requested"] = n_max_requested;
    report.params["n_max"] = n_max;
    report.params["truncated_by_budget"] = truncated;
    report.params["cutoff"] = cutoff;

    Table table;
    table.columns = {"n", "deriv_at_critical_value", "min_preimage_deriv"};
    Series dc{"|Df^n(c)|", {}, {}}, dm{"min |Df^n| over f^-n(0)", {}, {}};
    Json rows = Json::array();
    for (int n = 0; n <= n_max; ++n) {
        const double deriv_c =
            n < static_cast<int>(orbit_c.log_deriv.size())
                ? std::exp(orbit_c.log_deriv[static_cast<std::size_t>(n)])
                : std::numeric_limits<double>::infinity();
        const double min_deriv = min_level_derivative(map, n, opts);
        table.add_row({static_cast<long long>(n), deriv_c, min_deriv});
        Json row;
        row["n"] = n;
        row["deriv_at_critical_value"] = encode_real(deriv_c);
        row["min_preimage_deriv"] = encode_real(min_deriv);
        rows.push_back(std::move(row));
        if (n >= 1) {
            dc.x.push_back(n);
            dc.y.push_back(deriv_c);
            dm.x.push_back(n);
            dm.y.push_back(min_deriv);
        }
    }
    report.data["rows"] = std::move(rows);

    const ScaleProfile profile =
        r_profile(map, resolve_delta_grid(config), cutoff, opts.threads);
    report.data["profile"] = to_json(profile);
    Table profile_table;
    profile_table.columns = {"delta", "r_lo", "r_hi", "cutoff_limited"};
    for (const ScaleRow& row : profile.rows)
        profile_table.add_row({row.delta, row.r_lo, row.r_hi, row.cutoff_limited});

    report.tables.emplace_back("", std::move(table));
    report.tables.emplace_back("profile", std::move(profile_table));
    report.plot = PlotSpec{"derivative growth along returns", "n", "derivative",
                           true, true, {std::move(dc), std::move(dm)}};
    return report;
}

Report decay_report(const Config& config) {
    const UnicriticalMap map = resolve_map(config);
    const double delta_ref = config.get_double("decay.delta_ref", 0.01);
    const int m_max = config.get_int("decay.m_max", 10);
    const TreeOptions opts = resolve_tree_options(config);
    if (m_max < 0) throw UsageError("decay.m_max must be >= 0");
    check_tree_budget(map, m_max, opts);

    // Pull the reference disk back along every preimage branch of 0 and take
    // the widest enclosure per depth.
    std::vector<double> max_diam(static_cast<std::size_t>(m_max) + 1, 0.0);
    const DiskEnclosure ref_disk = critical_scale_disk(map, delta_ref);
    auto descend = [&](auto&& self, Complex z, const DiskEnclosure& enclosure,
                       int depth) -> void {
        max_diam[static_cast<std::size_t>(depth)] =
            std::max(max_diam[static_cast<std::size_t>(depth)],
                     enclosure.diameter());
        if (depth == m_max) return;
        const auto comps = disk_preimage_components(map, enclosure);
        const OneStepPreimages children = preimages_one_step(map, z);
        for (const Complex& child : children.roots) {
            const PullbackStep* chosen = nullptr;
            double best = std::numeric_limits<double>::infinity();
            for (const PullbackStep& comp : comps) {
                if (!comp.outer.contains(child, 1e-12 * (1.0 + comp.outer.radius)))
                    continue;
                const double dist = std::abs(comp.inner_point - child);
                if (dist < best) {
                    best = dist;
                    chosen = &comp;
                }
            }
            if (!chosen)
                throw DynamicsError(
                    "pull-back selection failed in the decay scan at depth " +
                    std::to_string(depth + 1));
            self(self, child, chosen->outer, depth + 1);
        }
    };
    descend(descend, Complex{0.0, 0.0}, ref_disk, 0);

    Report report;
    report.name = "decay";
    report.map_echo = map_echo(map);
    report.params["delta_ref"] = delta_ref;
    report.params["m_max"] = m_max;

    Table table;
    table.columns = {"m", "max_diam_upper", "slope"};
    Series diam{"max pull-back diameter", {}, {}};
    Json rows = Json::array();
    for (int m = 0; m <= m_max; ++m) {
        const double d = max_diam[static_cast<std::size_t>(m)];
        Cell slope_cell{std::string()};
        Json slope_json;
        if (m >= 2 && max_diam[static_cast<std::size_t>(m - 1)] > 0.0 && d > 0.0) {
            const double slope =
                (std::log(d) - std::log(max_diam[static_cast<std::size_t>(m - 1)])) /
                (std::log(static_cast<double>(m)) -
                 std::log(static_cast<double>(m - 1)));
            slope_cell = Cell(slope);
            slope_json = encode_real(slope);
        }
        table.add_row({static_cast<long long>(m), d, slope_cell});
        Json row;
        row["m"] = m;
        row["max_diam_upper"] = encode_real(d);
        row["slope"] = slope_json;
        rows.push_back(std::move(row));
        if (m >= 1) {
            diam.x.push_back(m);
            diam.y.push_back(d);
        }
    }
    report.data["rows"] = std::move(rows);
    report.tables.emplace_back("", std::move(table));
    report.plot = PlotSpec{"pull-back diameter decay", "m", "max diameter",
                           true, true, {std::move(diam)}};
    return report;
}

Report regen_feigenbaum_report(const Config& config) {
    const int max_k = config.get_int("feigenbaum.max_k", 12);
    const double tol = config.get_double("feigenbaum.tol", 1e-12);
    const FeigenbaumRegen regen = regen_feigenbaum(max_k, tol);

    Report report;
    report.name = "regen-feigenbaum";
    report.params["max_k"] = max_k;
    report.params["tol"] = tol;
    report.data["extrapolated"] = regen.extrapolated;
    report.data["pinned"] = kFeigenbaumParameter;
    report.data["difference"] =
        encode_real(regen.extrapolated - kFeigenbaumParameter);

    Table table;
    table.columns = {"k", "superstable_c", "gap_to_pinned"};
    Series gaps{"|c_k - pinned|", {}, {}};
    for (std::size_t i = 0; i < regen.superstable.size(); ++i) {
        const double c = regen.superstable[i];
        const double gap = std::abs(c - kFeigenbaumParameter);
        table.add_row({static_cast<long long>(i + 1), c, gap});
        gaps.x.push_back(static_cast<double>(i + 1));
        gaps.y.push_back(gap);
    }
    report.tables.emplace_back("", std::move(table));
    report.plot = PlotSpec{"superstable parameter gaps", "k", "|c_k - limit|",
                           false, true, {std::move(gaps)}};
    return report;
}

}  // namespace unicrit::cli

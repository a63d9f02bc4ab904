#include "unicrit/serialize.hpp"

#include <cmath>

namespace unicrit {

Json encode_real(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

Json encode_complex(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const OrbitSegment& orbit) {
    Json j;
    j["start"] = encode_complex(orbit.start);
    Json points = Json::array();
    for (const Complex& p : orbit.points) points.push_back(encode_complex(p));
    j["points"] = std::move(points);
    Json log_deriv = Json::array();
    for (double v : orbit.log_deriv) log_deriv.push_back(encode_real(v));
    j["log_deriv"] = std::move(log_deriv);
    if (orbit.escaped_at)
        j["escaped_at"] = *orbit.escaped_at;
    else
        j["escaped_at"] = nullptr;
    return j;
}

Json to_json(const PoincareTruncation& trunc) {
    Json j;
    j["target"] = encode_complex(trunc.target);
    j["exponent"] = trunc.exponent;
    j["depth"] = trunc.depth;
    Json sums = Json::array();
    for (double s : trunc.level_sums) sums.push_back(encode_real(s));
    j["level_sums"] = std::move(sums);
    j["partial"] = encode_real(trunc.partial);
    j["dropped_mass_bound"] = encode_real(trunc.dropped_mass_bound);
    j["mode"] = trunc.mode == TruncationMode::exhaustive ? "exhaustive" : "pruned";
    return j;
}

Json to_json(const ForwardSeriesTruncation& series) {
    Json j;
    j["exponent"] = series.exponent;
    j["depth"] = series.depth;
    Json terms = Json::array();
    for (double t : series.terms) terms.push_back(encode_real(t));
    j["terms"] = std::move(terms);
    j["partial"] = encode_real(series.partial);
    return j;
}

Json to_json(const ConvergenceExponentEstimate& estimate) {
    Json j;
    j["target"] = encode_complex(estimate.target);
    j["depth"] = estimate.depth;
    Json samples = Json::array();
    for (const auto& [t, p] : estimate.pressure_samples)
        samples.push_back(Json::array({t, encode_real(p)}));
    j["pressure_samples"] = std::move(samples);
    j["root"] = estimate.root;
    j["bracket"] = Json::array({estimate.bracket.first, estimate.bracket.second});
    return j;
}

Json to_json(const ScaleProfile& profile) {
    Json j;
    j["degree"] = profile.degree;
    j["cutoff"] = profile.cutoff;
    j["cutoff_limited"] = profile.cutoff_limited();
    Json grid = Json::array();
    Json rows = Json::array();
    for (const ScaleRow& row : profile.rows) {
        grid.push_back(row.delta);
        Json r;
        r["delta"] = row.delta;
        r["r_lo"] = encode_real(row.r_lo);
        r["r_hi"] = encode_real(row.r_hi);
        r["return_times_used"] = row.return_times_used;
        r["cutoff_limited"] = row.cutoff_limited;
        r["excluded_chains"] = row.excluded_chains;
        rows.push_back(std::move(r));
    }
    j["delta_grid"] = std::move(grid);
    j["rows"] = std::move(rows);
    return j;
}

namespace {

const char* certainty_label(ChildCertainty c) {
    switch (c) {
        case ChildCertainty::certain_child: return "certain-child";
        case ChildCertainty::certain_not: return "certain-not";
        default: return "unknown";
    }
}

}  // namespace

Json to_json(const ChildScan& scan) {
    Json j;
    j["delta"] = scan.delta;
    j["cutoff"] = scan.cutoff;
    Json children = Json::array();
    for (const ChildRecord& child : scan.children) {
        Json c;
        c["time"] = child.time;
        c["certainty"] = certainty_label(child.certainty);
        c["image_diam_lower"] = encode_real(child.image_diam_lower);
        c["image_diam_upper"] = encode_real(child.image_diam_upper);
        c["diam_lower"] = encode_real(child.enclosure.diam_lower);
        c["diam_upper"] = encode_real(child.enclosure.diam_upper);
        c["valid_chain"] = child.enclosure.valid;
        children.push_back(std::move(c));
    }
    j["children"] = std::move(children);
    Json report;
    report["s"] = scan.sum_report.s;
    report["sum_upper"] = encode_real(scan.sum_report.sum_upper);
    report["r_lo"] = encode_real(scan.sum_report.r_lo);
    report["bound"] = encode_real(scan.sum_report.bound);
    report["comparable"] = scan.sum_report.comparable;
    report["holds"] = scan.sum_report.holds;
    j["child_sum_report"] = std::move(report);
    return j;
}

Json to_json(const ReturnStaircase& staircase) {
    Json j;
    j["delta_min"] = staircase.delta_min;
    j["delta_max"] = staircase.delta_max;
    j["cutoff"] = staircase.cutoff;
    Json rows = Json::array();
    for (const CloseReturn& ret : staircase.returns) {
        Json r;
        r["delta_hi"] = encode_real(ret.delta_hi);
        r["delta_lo"] = encode_real(ret.delta_lo);
        r["n"] = ret.time;
        r["zeta"] = ret.zeta ? encode_complex(*ret.zeta) : Json(nullptr);
        r["log_deriv_at_zeta"] = encode_real(ret.log_deriv_at_zeta);
        r["forward_residual"] = encode_real(ret.forward_residual);
        r["verified"] = ret.verified;
        rows.push_back(std::move(r));
    }
    j["returns"] = std::move(rows);
    return j;
}

Json to_json(const ReturnDerivativeStats& stats) {
    Json j;
    j["delta"] = stats.delta;
    j["m_plus"] = encode_real(stats.m_plus);
    j["m_minus"] = encode_real(stats.m_minus);
    j["m"] = encode_real(stats.m);
    j["cutoff"] = stats.cutoff;
    j["tree_cutoff"] = stats.tree_cutoff;
    return j;
}

Json to_json(const std::vector<IntervalRatio>& rows) {
    Json arr = Json::array();
    for (const IntervalRatio& row : rows) {
        Json r;
        r["delta_lo"] = encode_real(row.delta_lo);
        r["delta_hi"] = encode_real(row.delta_hi);
        r["n"] = row.time;
        r["integral"] = encode_real(row.integral);
        r["deriv_term"] = encode_real(row.deriv_term);
        r["ratio"] = encode_real(row.ratio);
        arr.push_back(std::move(r));
    }
    return arr;
}

}  // namespace unicrit

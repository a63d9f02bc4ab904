#include "unicrit/returns.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "unicrit/accum.hpp"
#include "unicrit/preimage.hpp"

namespace unicrit {

namespace {

// Root of v with argument in [0, 2*pi/d): the reproducible representative of
// the d symmetric candidates at the final critical step.
Complex canonical_root(const UnicriticalMap& map, Complex v) {
    const double r = real_root(std::abs(v), map.degree);
    double phi = principal_arg(v);
    if (phi < 0.0) phi += 2.0 * std::numbers::pi;
    return std::polar(r, phi / map.degree);
}

struct ZetaTrack {
    Complex zeta{};
    double log_deriv = 0.0;
    bool ok = false;
};

// Pulls the point 0 back `time` steps following the branch choices of the
// chain for the critical pull-back U_delta. Intermediate steps follow the
// chain's sector (or the reference point at an enclosure-critical step); the
// final step is the genuine critical fold and takes the canonical root.
ZetaTrack track_zeta(const UnicriticalMap& map, const PullbackChain& chain,
                     int time) {
    ZetaTrack out;
    Complex q{0.0, 0.0};
    double log_deriv = 0.0;
    for (int i = 1; i <= time; ++i) {
        const Complex v = q - map.c;
        Complex next{};
        if (i == time) {
            next = canonical_root(map, v);
        } else {
            const PullbackStep& step = chain.steps[static_cast<std::size_t>(i - 1)];
            if (step.critical) {
                // Enclosure-level fold: pick the root nearest the exact
                // reference preimage tracked by the chain.
                double best = std::numeric_limits<double>::infinity();
                for (int k = 0; k < map.degree; ++k) {
                    const Complex cand = branch_root(map.degree, v, k);
                    const double dist = std::abs(cand - step.inner_point);
                    if (dist < best) {
                        best = dist;
                        next = cand;
                    }
                }
            } else {
                next = branch_root(map.degree, v, 0);
                double best = angular_gap(principal_arg(next), step.sector_axis);
                for (int k = 1; k < map.degree; ++k) {
                    const Complex cand = branch_root(map.degree, v, k);
                    const double dist =
                        angular_gap(principal_arg(cand), step.sector_axis);
                    if (dist < best) {
                        best = dist;
                        next = cand;
                    }
                }
            }
        }
        q = next;
        log_deriv += map.log_abs_derivative(q);
    }
    out.zeta = q;
    out.log_deriv = log_deriv;
    out.ok = true;
    return out;
}

double integrand(const ScaleRow& row, double e) {
    if (!std::isfinite(row.r_lo)) return 0.0;
    return std::pow(row.r_lo, -e);
}

double exponent_for(const ScaleProfile& profile, double t,
                    IntegralExponent mode) {
    return mode == IntegralExponent::full_t
               ? t
               : t / static_cast<double>(profile.degree);
}

}  // namespace

ReturnStaircase return_staircase(const UnicriticalMap& map, double delta_min,
                                 double delta_max, int cutoff) {
    if (!(delta_min > 0.0) || !(delta_min < delta_max))
        throw UsageError("staircase needs 0 < delta_min < delta_max");
    if (cutoff < 0) throw UsageError("cutoff must be >= 0");
    const OrbitSegment orbit0 = iterate(map, Complex{0.0, 0.0}, cutoff);
    if (orbit0.escaped_at && *orbit0.escaped_at <= cutoff)
        throw DynamicsError("critical orbit escapes at iterate " +
                            std::to_string(*orbit0.escaped_at) +
                            "; the return staircase needs a bounded orbit");

    // Record-close returns: strict running minima of |f^m(0)|.
    struct Record {
        int time;
        double value;  // |f^m(0)|^d, the exact breakpoint scale
    };
    std::vector<Record> records;
    double best = std::numeric_limits<double>::infinity();
    for (int m = 1; m <= cutoff; ++m) {
        const double a = std::abs(orbit0.points[static_cast<std::size_t>(m)]);
        if (a < best) {
            best = a;
            records.push_back({m, std::pow(a, map.degree)});
        }
    }

    ReturnStaircase staircase;
    staircase.delta_min = delta_min;
    staircase.delta_max = delta_max;
    staircase.cutoff = cutoff;

    const double scale = [&] {
        double s = 0.0;
        for (const Complex& p : orbit0.points) s = std::max(s, std::abs(p));
        return std::max(s, 1.0);
    }();

    for (std::size_t k = 0; k < records.size(); ++k) {
        // n(.) equals records[k].time on (records[k].value, prev value].
        const double hi =
            std::min(k == 0 ? std::numeric_limits<double>::infinity()
                            : records[k - 1].value,
                     delta_max);
        const double lo = std::max(records[k].value, delta_min);
        if (!(lo < hi)) continue;
        CloseReturn ret;
        ret.delta_hi = hi;
        ret.delta_lo = lo;
        ret.time = records[k].time;

        const DiskEnclosure disk = critical_scale_disk(map, hi);
        const PullbackChain chain =
            pull_back_along_orbit(map, disk, orbit0, ret.time);
        bool ambiguous_before_final = false;
        for (std::size_t i = 0; i + 1 < chain.steps.size(); ++i)
            ambiguous_before_final |= chain.steps[i].ambiguous;
        if (!ambiguous_before_final) {
            const ZetaTrack track = track_zeta(map, chain, ret.time);
            ret.zeta = track.zeta;
            ret.log_deriv_at_zeta = track.log_deriv;
            // Mandatory forward verification: backward tracking can silently
            // pick a wrong branch and only the forward residual catches it.
            Complex z = track.zeta;
            for (int i = 0; i < ret.time; ++i) z = map.apply(z);
            ret.forward_residual = std::abs(z);
            ret.verified = ret.forward_residual <= 1e-8 * scale;
            if (!ret.verified) ret.zeta.reset();
        }
        staircase.returns.push_back(ret);
    }
    return staircase;
}

ReturnRBound r_bound_from_return(const UnicriticalMap& map,
                                 const CloseReturn& ret) {
    if (ret.time < 1) throw UsageError("close return needs time >= 1");
    if (!ret.zeta)
        throw DynamicsError("close return has no verified marked preimage");
    const DiskEnclosure disk = critical_scale_disk(map, 2.0 * ret.delta_hi);
    const OrbitSegment orbit_c = iterate(map, map.c, ret.time - 1);
    if (orbit_c.escaped_at && *orbit_c.escaped_at <= ret.time - 1)
        throw DynamicsError("critical orbit escapes before the return time");
    const PullbackChain chain =
        pull_back_along_orbit(map, disk, orbit_c, ret.time - 1);
    if (!chain.valid)
        throw DynamicsError("ambiguous pull-back chain at the close return");
    ReturnRBound bound;
    bound.diam_bound = chain.diam_upper;
    bound.r_implied = ret.delta_hi / chain.diam_upper;
    return bound;
}

double contraction_integral(const ScaleProfile& profile, double t,
                            IntegralExponent mode) {
    if (profile.rows.size() < 2)
        throw UsageError("contraction integral needs at least two grid points");
    const double e = exponent_for(profile, t, mode);
    CompensatedSum total;
    for (std::size_t i = 0; i + 1 < profile.rows.size(); ++i) {
        const ScaleRow& a = profile.rows[i];
        const ScaleRow& b = profile.rows[i + 1];
        const double dx = std::abs(std::log(a.delta) - std::log(b.delta));
        total.add(0.5 * (integrand(a, e) + integrand(b, e)) * dx);
    }
    return total.value();
}

double contraction_integral_over(const ScaleProfile& profile, double t,
                                 IntegralExponent mode, double lo, double hi) {
    if (profile.rows.size() < 2)
        throw UsageError("contraction integral needs at least two grid points");
    if (!(lo > 0.0) || !(lo <= hi))
        throw UsageError("integral range needs 0 < lo <= hi");
    const double e = exponent_for(profile, t, mode);
    const double x_lo = std::log(lo);
    const double x_hi = std::log(hi);
    CompensatedSum total;
    for (std::size_t i = 0; i + 1 < profile.rows.size(); ++i) {
        const ScaleRow& a = profile.rows[i];
        const ScaleRow& b = profile.rows[i + 1];
        double xa = std::log(a.delta);
        double xb = std::log(b.delta);
        double ga = integrand(a, e);
        double gb = integrand(b, e);
        if (xa > xb) {
            std::swap(xa, xb);
            std::swap(ga, gb);
        }
        const double left = std::max(xa, x_lo);
        const double right = std::min(xb, x_hi);
        if (left >= right) continue;
        const double span = xb - xa;
        auto interp = [&](double x) {
            if (span == 0.0) return ga;
            const double s = (x - xa) / span;
            return ga + s * (gb - ga);
        };
        total.add(0.5 * (interp(left) + interp(right)) * (right - left));
    }
    return total.value();
}

std::vector<IntervalRatio> close_return_ratios(
    const UnicriticalMap& map, const ReturnStaircase& staircase,
    const ScaleProfile& profile, double t) {
    (void)map;
    std::vector<IntervalRatio> rows;
    for (const CloseReturn& ret : staircase.returns) {
        if (!(ret.delta_lo < ret.delta_hi)) continue;
        if (!ret.zeta || !ret.verified) continue;
        IntervalRatio row;
        row.delta_lo = ret.delta_lo;
        row.delta_hi = ret.delta_hi;
        row.time = ret.time;
        row.integral = contraction_integral_over(
            profile, t, IntegralExponent::t_over_degree, ret.delta_lo,
            ret.delta_hi);
        row.deriv_term = std::exp(-t * ret.log_deriv_at_zeta);
        row.ratio = row.integral / row.deriv_term;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace unicrit

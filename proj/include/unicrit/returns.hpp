#pragma once

#include <optional>
#include <vector>

#include "unicrit/map.hpp"
#include "unicrit/pullback.hpp"

namespace unicrit {

// One step of the first-entry staircase: n(.) is constant on
// (delta_lo, delta_hi], zeta is the marked preimage of 0 in the critical
// pull-back of B~(delta_hi).
struct CloseReturn {
    double delta_hi = 0.0;
    double delta_lo = 0.0;
    int time = 0;  // n(delta_hi)
    std::optional<Complex> zeta;  // absent when branch tracking was ambiguous
    double log_deriv_at_zeta = 0.0;  // log|Df^time(zeta)|
    double forward_residual = 0.0;   // |f^time(zeta)| after re-iteration
    bool verified = false;           // residual within tolerance
};

struct ReturnStaircase {
    double delta_min = 0.0;
    double delta_max = 0.0;
    int cutoff = 0;
    std::vector<CloseReturn> returns;  // ordered by decreasing delta
};

// First-entry times from the running minima of |f^m(0)|: breakpoints sit
// exactly at delta = |f^m(0)|^d for record-close returns m. Each accepted
// zeta is re-iterated forward and flagged unless the residual stays within
// 1e-8 of the orbit scale.
ReturnStaircase return_staircase(const UnicriticalMap& map, double delta_min,
                                 double delta_max, int cutoff);

struct ReturnRBound {
    double diam_bound = 0.0;  // upper bound on diam of the pull-back of
                              // B~(2 delta) by f^(n-1) containing c
    double r_implied = 0.0;   // delta / diam_bound
};

// Diameter bridge at a close return; requires an unambiguous chain.
ReturnRBound r_bound_from_return(const UnicriticalMap& map,
                                 const CloseReturn& ret);

enum class IntegralExponent { full_t, t_over_degree };

// Trapezoid rule in log(delta) for the truncated integral of
// r_lo(delta)^(-e) d(delta)/delta over the profile grid; +inf rows
// contribute 0. e is t or t/d depending on the mode.
double contraction_integral(const ScaleProfile& profile, double t,
                            IntegralExponent mode);

// Same integral restricted to (lo, hi], with the integrand interpolated
// linearly in log(delta) at the clipped endpoints.
double contraction_integral_over(const ScaleProfile& profile, double t,
                                 IntegralExponent mode, double lo, double hi);

struct IntervalRatio {
    double delta_lo = 0.0;
    double delta_hi = 0.0;
    int time = 0;
    double integral = 0.0;    // t/d-mode integral over the interval
    double deriv_term = 0.0;  // |Df^time(zeta)|^{-t}
    double ratio = 0.0;
};

// Per staircase interval: the contraction integral against the derivative
// term at the marked preimage. The spread of the ratios is reported, not
// bounded; returns without a verified zeta are skipped.
std::vector<IntervalRatio> close_return_ratios(const UnicriticalMap& map,
                                               const ReturnStaircase& staircase,
                                               const ScaleProfile& profile,
                                               double t);

}  // namespace unicrit

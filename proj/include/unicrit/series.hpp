#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "unicrit/map.hpp"
#include "unicrit/preimage.hpp"

namespace unicrit {

enum class TruncationMode { exhaustive, pruned };

struct PoincareTruncation {
    Complex target{};
    double exponent = 0.0;
    int depth = 0;
    std::vector<double> level_sums;  // S_n for n = 0..depth, S_0 = 1
    double partial = 0.0;            // sum of level_sums
    double dropped_mass_bound = 0.0; // 0 in exhaustive mode
    TruncationMode mode = TruncationMode::exhaustive;
};

struct ForwardSeriesTruncation {
    double exponent = 0.0;
    int depth = 0;
    std::vector<double> terms;  // |Df^n(c)|^(-t/d) for n = 0..depth
    double partial = 0.0;
};

struct ConvergenceExponentEstimate {
    Complex target{};
    int depth = 0;
    std::vector<std::pair<double, double>> pressure_samples;  // (t, P_n(t))
    double root = 0.0;
    std::pair<double, double> bracket{0.0, 0.0};
};

// One Poincare level: S_n(w, t) = sum over f^{-n}(w) of |Df^n(z)|^{-t},
// accumulated with largest-term rescaling and compensated addition.
double level_sum(const UnicriticalMap& map, Complex w, double t, int n,
                 const TreeOptions& opts = {});

// log S_n(w, t); stays finite where S_n itself would over- or underflow.
double log_level_sum(const UnicriticalMap& map, Complex w, double t, int n,
                     const TreeOptions& opts = {});

// Level sums for n = 0..depth plus their partial sum. In pruned mode,
// subtrees below a node whose own term falls under prune_floor are skipped
// and dropped_mass_bound collects prune_floor times the skipped node count;
// the bound is a heuristic because terms are not monotone along branches.
PoincareTruncation poincare_truncation(const UnicriticalMap& map, Complex w,
                                       double t, int depth,
                                       TruncationMode mode = TruncationMode::exhaustive,
                                       double prune_floor = 1e-18,
                                       const TreeOptions& opts = {});

// Terms |Df^n(c)|^{-t/d} along the critical-value orbit, n = 0..depth.
ForwardSeriesTruncation forward_series(const UnicriticalMap& map, double t,
                                       int depth);

// P_n(t) = (1/n) log S_n(w, t); strictly decreasing in t for fixed n.
double pressure_estimate(const UnicriticalMap& map, Complex w, double t, int n,
                         const TreeOptions& opts = {});

// Bisection root of P_n on [t_lo, t_hi]; requires P_n(t_lo) > 0 > P_n(t_hi).
// Stops when the residual or the bracket width drops below tol.
ConvergenceExponentEstimate convergence_exponent(const UnicriticalMap& map,
                                                 Complex w, int n, double t_lo,
                                                 double t_hi, double tol,
                                                 const TreeOptions& opts = {});

// min over f^{-n}(0) of |Df^n(zeta)|; 1 at n = 0.
double min_level_derivative(const UnicriticalMap& map, int n,
                            const TreeOptions& opts = {});

}  // namespace unicrit

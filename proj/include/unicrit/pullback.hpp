#pragma once

#include <array>
#include <limits>
#include <vector>

#include "unicrit/enclosure.hpp"
#include "unicrit/map.hpp"
#include "unicrit/preimage.hpp"

namespace unicrit {

// A disk pulled back step by step along a reference orbit. steps[i-1] is the
// i-th backward step; its inner_point is the exact reference preimage, so the
// forward image of the last inner_point lands back in the target.
struct PullbackChain {
    DiskEnclosure target;
    std::vector<PullbackStep> steps;
    // Two boundary points of the target tracked backward by exact root
    // choices; their distance is a lower bound on the component diameter.
    std::vector<std::array<Complex, 2>> tracked_boundary;
    double diam_lower = 0.0;
    double diam_upper = 0.0;
    bool valid = true;  // no ambiguous step

    std::size_t length() const { return steps.size(); }
    // Diameter bounds of the prefix after `k` steps (k = 0 is the target).
    double prefix_diam_upper(std::size_t k) const {
        return k == 0 ? target.diameter() : steps[k - 1].outer.diameter();
    }
    double prefix_diam_lower(std::size_t k) const {
        if (k == 0) return target.diameter();
        return std::abs(tracked_boundary[k - 1][0] - tracked_boundary[k - 1][1]);
    }
};

// Pulls D back n steps, at each step selecting the component nearest the
// corresponding reference orbit point. A step is flagged ambiguous when the
// second-nearest candidate is within a factor 2 in distance; a reference
// point outside every candidate enclosure is a selection error.
PullbackChain pull_back_along_orbit(const UnicriticalMap& map,
                                    const DiskEnclosure& D,
                                    const OrbitSegment& reference, int n);

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct ScaleRow {
    double delta = 0.0;
    double r_lo = kInf;  // min delta/diam_upper over valid chains
    double r_hi = kInf;  // min delta/diam_lower over found return times
    std::vector<int> return_times_used;
    bool cutoff_limited = true;  // no return time found below the cutoff
    int excluded_chains = 0;     // ambiguous chains dropped from r_lo
};

struct ScaleProfile {
    int degree = 2;
    int cutoff = 0;
    std::vector<ScaleRow> rows;

    bool cutoff_limited() const {
        for (const auto& row : rows)
            if (row.cutoff_limited) return true;
        return false;
    }
};

// Geometric grid delta_j = delta0 * ratio^(-j), j = 0..count-1.
std::vector<double> geometric_grid(double delta0 = 1.0, int count = 40,
                                   double ratio = 2.0);

// Backward-contraction profile: for each delta, every n <= cutoff with
// f^n(c) inside B~(delta) contributes the pull-back of B~(delta) along the
// critical-value orbit, and the two-sided diameter bounds give
// [r_lo, r_hi] enclosing delta/diam over the enumerated times.
ScaleProfile r_profile(const UnicriticalMap& map,
                       const std::vector<double>& delta_grid, int cutoff,
                       unsigned threads = 1);

enum class ChildCertainty { certain_child, certain_not, unknown };

struct ChildRecord {
    int time = 0;  // s >= 1 with f^s(0) in V
    PullbackChain enclosure;
    double image_diam_lower = 0.0;  // bounds on diam(f(Y))
    double image_diam_upper = 0.0;
    ChildCertainty certainty = ChildCertainty::unknown;
};

struct ChildSumReport {
    double s = 0.0;          // exponent t/d
    double sum_upper = 0.0;  // sum of image_diam_upper^s over candidates
    double r_lo = kInf;      // profile bound at the same delta
    double bound = kInf;     // (1 - 2^-s)^-1 (delta / r_lo)^s
    bool comparable = false; // r_lo finite and candidates complete below cutoff
    bool holds = false;      // sum_upper <= bound when comparable
};

struct ChildScan {
    double delta = 0.0;
    int cutoff = 0;
    std::vector<ChildRecord> children;
    ChildSumReport sum_report;
};

// Return-time pull-backs of V = B~(delta) containing 0, classified by the
// enclosure certificates: a chain whose final step alone is critical and
// whose intermediate enclosures exclude 0 is certainly a d-to-1 child.
ChildScan find_children(const UnicriticalMap& map, double delta, int cutoff,
                        double t);

struct ReturnDerivativeStats {
    double delta = 0.0;
    double m_plus = kInf;   // min |Df^n(c)| over n <= cutoff with f^n(0) in V
    double m_minus = kInf;  // min |Df^n(zeta)|^d over preimages of 0 inside V
    double m = kInf;        // max(m_plus, m_minus)
    int cutoff = 0;         // orbit scan depth
    int tree_cutoff = 0;    // preimage-tree depth for m_minus
};

ReturnDerivativeStats return_derivative_stats(const UnicriticalMap& map,
                                              double delta, int cutoff,
                                              int tree_cutoff,
                                              const TreeOptions& opts = {});

}  // namespace unicrit

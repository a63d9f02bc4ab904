#include "unicrit/presets.hpp"

#include <cmath>

namespace unicrit {

namespace {

// f_c^(2^k)(0) on the real line.
double critical_iterate(double c, int k) {
    double x = 0.0;
    const long steps = 1L << k;
    for (long i = 0; i < steps; ++i) x = x * x + c;
    return x;
}

double bisect_superstable(int k, double lo, double hi, double tol) {
    double f_lo = critical_iterate(lo, k);
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = critical_iterate(mid, k);
        if (f_mid == 0.0) return mid;
        if ((f_mid > 0.0) == (f_lo > 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::vector<double> aitken(const std::vector<double>& seq) {
    std::vector<double> out;
    for (std::size_t i = 0; i + 2 < seq.size(); ++i) {
        const double dd = seq[i + 2] - 2.0 * seq[i + 1] + seq[i];
        if (dd == 0.0) continue;
        const double d = seq[i + 2] - seq[i + 1];
        out.push_back(seq[i + 2] - d * d / dd);
    }
    return out;
}

}  // namespace

FeigenbaumRegen regen_feigenbaum(int max_k, double tol) {
    if (max_k < 3) throw UsageError("regeneration needs max_k >= 3");
    if (!(tol > 0.0)) throw UsageError("tolerance must be positive");
    FeigenbaumRegen out;
    out.superstable.push_back(bisect_superstable(1, -1.5, -0.5, tol));
    double prev2 = 0.0;  // superstable period 1 sits at c = 0
    for (int k = 2; k <= max_k; ++k) {
        const double last = out.superstable.back();
        const double before = out.superstable.size() >= 2
                                  ? out.superstable[out.superstable.size() - 2]
                                  : prev2;
        // The gaps shrink by roughly the universal factor 4.669 per period
        // doubling; start from the extrapolated guess and widen until the
        // iterate changes sign across the bracket.
        const double guess = last + (last - before) / 4.669;
        double width = std::abs(last - before) / 8.0;
        double lo = guess - width;
        double hi = guess + width;
        int tries = 0;
        while (critical_iterate(lo, k) * critical_iterate(hi, k) > 0.0 &&
               tries < 64) {
            lo -= 0.5 * width;
            hi += 0.5 * width;
            ++tries;
        }
        if (tries == 64)
            throw DynamicsError("no sign change found for superstable period 2^" +
                                std::to_string(k));
        out.superstable.push_back(bisect_superstable(k, lo, hi, tol));
    }
    // Three rounds of Aitken acceleration recover the limit to ~1e-13,
    // far beyond the ~2e-8 gap left at k = 12 by bisection alone.
    std::vector<double> seq = out.superstable;
    for (int round = 0; round < 3 && seq.size() >= 3; ++round) seq = aitken(seq);
    out.extrapolated = seq.empty() ? out.superstable.back() : seq.back();
    return out;
}

UnicriticalMap preset_map(const std::string& name) {
    if (name == "chebyshev") return UnicriticalMap(2, Complex{-2.0, 0.0});
    if (name == "basilica") return UnicriticalMap(2, Complex{-1.0, 0.0});
    if (name == "feigenbaum")
        return UnicriticalMap(2, Complex{kFeigenbaumParameter, 0.0});
    throw UsageError("unknown preset '" + name +
                     "' (expected chebyshev, basilica, feigenbaum, or custom)");
}

}  // namespace unicrit

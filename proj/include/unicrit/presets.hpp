#pragma once

#include <string>
#include <vector>

#include "unicrit/map.hpp"

namespace unicrit {

// Real period-doubling limit of z^2 + c; regenerable with regen_feigenbaum.
inline constexpr double kFeigenbaumParameter = -1.4011551890920506;

struct FeigenbaumRegen {
    std::vector<double> superstable;  // parameter with superstable period 2^k,
                                      // k = 1..max_k, bisected to tol
    double extrapolated = 0.0;        // accelerated limit of the sequence
};

// Bisects the superstable 2^k-periodic parameters on the real line up to
// max_k and accelerates the sequence to its limit. With max_k = 12 and
// tol = 1e-12 the extrapolated value matches kFeigenbaumParameter to ~1e-13.
FeigenbaumRegen regen_feigenbaum(int max_k = 12, double tol = 1e-12);

// chebyshev -> (2, -2); basilica -> (2, -1); feigenbaum -> (2, pinned limit).
UnicriticalMap preset_map(const std::string& name);

}  // namespace unicrit

#include "unicrit/map.hpp"

namespace unicrit {

OrbitSegment iterate(const UnicriticalMap& map, Complex start, int n) {
    if (n < 0) throw UsageError("orbit length must be >= 0");
    OrbitSegment orbit;
    orbit.start = start;
    orbit.points.reserve(static_cast<std::size_t>(n) + 1);
    orbit.log_deriv.reserve(static_cast<std::size_t>(n) + 1);
    orbit.points.push_back(start);
    orbit.log_deriv.push_back(0.0);
    const double r_esc = map.escape_radius();
    if (std::abs(start) > r_esc) {
        orbit.escaped_at = 0;
        return orbit;
    }
    for (int k = 1; k <= n; ++k) {
        const Complex prev = orbit.points.back();
        orbit.log_deriv.push_back(orbit.log_deriv.back() +
                                  map.log_abs_derivative(prev));
        orbit.points.push_back(map.apply(prev));
        if (std::abs(orbit.points.back()) > r_esc) {
            orbit.escaped_at = k;
            break;
        }
    }
    return orbit;
}

}  // namespace unicrit

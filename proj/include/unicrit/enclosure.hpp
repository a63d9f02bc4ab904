#pragma once

#include <complex>
#include <vector>

#include "unicrit/errors.hpp"
#include "unicrit/map.hpp"

namespace unicrit {

struct DiskEnclosure {
    Complex center{};
    double radius = 0.0;  // >= 0; radius 0 is a point

    bool contains(Complex z, double slack = 0.0) const {
        return std::abs(z - center) <= radius + slack;
    }
    double diameter() const { return 2.0 * radius; }
};

// B~(delta) = B(0, delta^(1/d)): the disk whose image under z^d has radius
// delta around the critical value.
DiskEnclosure critical_scale_disk(const UnicriticalMap& map, double delta);

// One backward step of the enclosure calculus.
struct PullbackStep {
    DiskEnclosure image;    // the disk that was pulled back
    DiskEnclosure outer;    // certified superset of the chosen component
    Complex inner_point{};  // a tracked preimage point inside the component
    int branch = -1;        // root branch for non-critical steps
    bool critical = false;  // image contains c; outer is centered at 0
    bool ambiguous = false; // branch selection was not clear-cut
    double sector_half_angle = 0.0;  // arcsin(r/|a|)/d for non-critical steps
    double sector_axis = 0.0;        // branch axis angle theta_k
};

// Components of f^{-1}(D). With a = D.center - c and r = D.radius:
// if |a| > r there are d components; component k is covered by the smallest
// disk containing the sector-annulus
//   { rho e^{i theta} : (|a|-r)^{1/d} <= rho <= (|a|+r)^{1/d},
//                       |theta - theta_k| <= arcsin(r/|a|)/d },
// whose enclosing disk has a closed form from the four corner points.
// If |a| <= r the preimage is a single component containing 0, covered by
// B(0, (|a|+r)^{1/d}). Enclosure radii carry a 1e-12 relative inflation so
// the certificates survive binary64 rounding.
std::vector<PullbackStep> disk_preimage_components(const UnicriticalMap& map,
                                                   const DiskEnclosure& D);

// log(outer/inner) for a concentric round annulus; requires 0 < inner <= outer.
double modulus_round(double outer_radius, double inner_radius);

}  // namespace unicrit

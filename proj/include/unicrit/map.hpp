#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <vector>

#include "unicrit/errors.hpp"

namespace unicrit {

using Complex = std::complex<double>;

// f(z) = z^d + c, normalized so the critical point is 0 and the critical
// value is c.
struct UnicriticalMap {
    int degree = 2;
    Complex c{0.0, 0.0};

    UnicriticalMap(int d, Complex param) : degree(d), c(param) {
        if (d < 2) throw UsageError("map degree must be at least 2");
        if (!std::isfinite(param.real()) || !std::isfinite(param.imag()))
            throw UsageError("map parameter must be finite");
    }

    // z^d by binary exponentiation. Every call site shares this definition so
    // rounding is identical throughout.
    Complex pow_degree(Complex z) const {
        Complex result{1.0, 0.0};
        Complex base = z;
        int e = degree;
        while (e > 0) {
            if (e & 1) result *= base;
            e >>= 1;
            if (e > 0) base *= base;
        }
        return result;
    }

    Complex apply(Complex z) const { return pow_degree(z) + c; }

    // log|Df(z)| = log d + (d-1) log|z|; -inf at the critical point.
    double log_abs_derivative(Complex z) const {
        return std::log(static_cast<double>(degree)) +
               (degree - 1) * std::log(std::abs(z));
    }

    // 1 + max(|c|, 1): beyond this radius |f(z)| > |z| and the orbit escapes
    // monotonically.
    double escape_radius() const { return 1.0 + std::max(std::abs(c), 1.0); }
};

struct OrbitSegment {
    Complex start{};
    std::vector<Complex> points;    // points[k] = f^k(start); truncated at escape
    std::vector<double> log_deriv;  // log|Df^k(start)|, log_deriv[0] = 0
    std::optional<int> escaped_at;  // first k with |points[k]| > escape radius
};

// Forward orbit of length n+1 with the derivative cocycle accumulated in log
// space. Iteration stops once the escape radius is crossed; escaped_at records
// the truncation.
OrbitSegment iterate(const UnicriticalMap& map, Complex start, int n);

}  // namespace unicrit

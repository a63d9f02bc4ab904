#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <utility>

namespace unicrit {

// Neumaier-compensated running sum.
struct CompensatedSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            carry += (sum - t) + x;
        } else {
            carry += (x - t) + sum;
        }
        sum = t;
    }

    double value() const { return sum + carry; }
};

// Sum of exp(log_term) values held as exp(log_scale) * acc, rescaling whenever
// a larger term arrives. Keeps depth-20+ derivative products representable.
// merge() folds another accumulator in; operand order is part of the
// deterministic-reduction contract.
struct LogScaledSum {
    double log_scale = -std::numeric_limits<double>::infinity();
    CompensatedSum acc;

    void add_log(double log_term) {
        if (std::isinf(log_term)) {
            if (log_term < 0.0) return;  // exp(-inf) contributes nothing
            log_scale = log_term;        // an infinite term poisons the sum
            acc = CompensatedSum{};
            acc.add(1.0);
            return;
        }
        if (empty()) {
            log_scale = log_term;
            acc.add(1.0);
        } else if (log_term <= log_scale) {
            acc.add(std::exp(log_term - log_scale));
        } else {
            rescale(log_term);
            acc.add(1.0);
        }
    }

    void merge(const LogScaledSum& o) {
        if (o.empty()) return;
        if (empty()) {
            *this = o;
            return;
        }
        if (o.log_scale > log_scale) rescale(o.log_scale);
        const double r = std::exp(o.log_scale - log_scale);
        acc.add(o.acc.sum * r);
        acc.add(o.acc.carry * r);
    }

    bool empty() const { return std::isinf(log_scale) && log_scale < 0.0; }

    double value() const { return empty() ? 0.0 : std::exp(log_scale) * acc.value(); }

    double log_value() const {
        if (empty()) return -std::numeric_limits<double>::infinity();
        return log_scale + std::log(acc.value());
    }

private:
    void rescale(double new_scale) {
        const double r = std::exp(log_scale - new_scale);
        acc.sum *= r;
        acc.carry *= r;
        log_scale = new_scale;
    }
};

// Binary-tree reduction over a fixed index order. The tree shape depends only
// on the item count, so the result is byte-stable across thread counts.
template <typename T, typename Merge>
T pairwise_reduce(std::span<T> items, Merge&& merge) {
    if (items.size() == 1) return std::move(items[0]);
    const std::size_t mid = items.size() / 2;
    T left = pairwise_reduce(items.subspan(0, mid), merge);
    T right = pairwise_reduce(items.subspan(mid), merge);
    merge(left, std::move(right));
    return left;
}

}  // namespace unicrit

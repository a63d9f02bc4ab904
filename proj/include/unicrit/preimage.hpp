#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "unicrit/accum.hpp"
#include "unicrit/errors.hpp"
#include "unicrit/map.hpp"
#include "unicrit/parallel.hpp"

namespace unicrit {

// A tree node closer to 0 than this is treated as a critical collision: the
// derivative product below it vanishes and the corresponding series terms
// would be infinite.
inline constexpr double kCollisionTol = 1e-12;

// Principal argument normalized to (-pi, pi]. atan2 returns -pi for negative
// real inputs with a negative zero imaginary part; fold that onto +pi.
inline double principal_arg(Complex v) {
    const double a = std::atan2(v.imag(), v.real());
    if (a == -std::numbers::pi) return std::numbers::pi;
    return a;
}

// Absolute angular difference folded to [0, pi].
inline double angular_gap(double a, double b) {
    double diff = std::fmod(a - b, 2.0 * std::numbers::pi);
    if (diff > std::numbers::pi) diff -= 2.0 * std::numbers::pi;
    if (diff < -std::numbers::pi) diff += 2.0 * std::numbers::pi;
    return std::abs(diff);
}

// Real d-th root; sqrt is used at d=2 for the correctly rounded result.
inline double real_root(double x, int degree) {
    if (degree == 2) return std::sqrt(x);
    if (degree == 3) return std::cbrt(x);
    return std::pow(x, 1.0 / static_cast<double>(degree));
}

// Branch-k d-th root of v: modulus |v|^(1/d), argument (Arg(v) + 2*pi*k)/d.
inline Complex branch_root(int degree, Complex v, int branch) {
    const double r = real_root(std::abs(v), degree);
    const double phi =
        (principal_arg(v) + 2.0 * std::numbers::pi * branch) / degree;
    return std::polar(r, phi);
}

struct OneStepPreimages {
    std::vector<Complex> roots;  // branch order k = 0..d-1
    bool multiple_root = false;  // w == c: the d-fold root at 0
};

// The d solutions of z^d = w - c.
OneStepPreimages preimages_one_step(const UnicriticalMap& map, Complex w);

// Materialized preimage-tree node (CLI dumps, bindings). Traversal itself
// streams NodeView values and never holds the tree in memory.
struct PreimageNode {
    Complex point{};
    int depth = 0;
    double log_abs_deriv = 0.0;            // log|Df^depth(point)|
    std::vector<std::uint8_t> root_path;   // most recent branch choice first
};

struct NodeView {
    Complex point{};
    int depth = 0;
    double log_abs_deriv = 0.0;
    std::span<const std::uint8_t> path;  // oldest branch choice first

    PreimageNode materialize() const {
        return PreimageNode{point, depth, log_abs_deriv,
                            std::vector<std::uint8_t>(path.rbegin(), path.rend())};
    }
};

struct TreeSummary {
    std::uint64_t node_count = 0;
    double max_abs = 0.0;
    double min_abs = std::numeric_limits<double>::infinity();
};

struct TreeOptions {
    std::uint64_t node_budget = 1ull << 22;
    double collision_tol = kCollisionTol;
    unsigned threads = 1;
};

// d^depth, saturating at uint64 max.
inline std::uint64_t leaf_count(int degree, int depth) {
    std::uint64_t n = 1;
    for (int i = 0; i < depth; ++i) {
        if (n > std::numeric_limits<std::uint64_t>::max() / degree)
            return std::numeric_limits<std::uint64_t>::max();
        n *= static_cast<std::uint64_t>(degree);
    }
    return n;
}

inline void check_tree_budget(const UnicriticalMap& map, int depth,
                              const TreeOptions& opts) {
    if (depth < 0) throw UsageError("tree depth must be >= 0");
    if (leaf_count(map.degree, depth) > opts.node_budget)
        throw BudgetError("preimage tree at depth " + std::to_string(depth) +
                          " exceeds the node budget of " +
                          std::to_string(opts.node_budget));
}

namespace detail {

inline void throw_collision(Complex z, int depth) {
    throw DynamicsError("critical collision: preimage node at depth " +
                        std::to_string(depth) + " lies within " +
                        std::to_string(kCollisionTol) +
                        " of the critical point (|z| = " +
                        std::to_string(std::abs(z)) + ")");
}

// Serial depth-first walk from one node. Collector interface:
//   void visit(Complex z, int depth, double log_abs_deriv)
//   bool descend(Complex z, int depth, double log_abs_deriv)
// visit sees the node first; descend decides whether children are produced.
template <typename Collector>
void walk_subtree(const UnicriticalMap& map, Complex z, int depth,
                  double log_abs_deriv, int max_depth, double collision_tol,
                  Collector& out) {
    if (depth > 0 && std::abs(z) < collision_tol) throw_collision(z, depth);
    out.visit(z, depth, log_abs_deriv);
    if (depth == max_depth || !out.descend(z, depth, log_abs_deriv)) return;
    const Complex v = z - map.c;
    const double r = real_root(std::abs(v), map.degree);
    const double base_arg = principal_arg(v);
    for (int k = 0; k < map.degree; ++k) {
        const Complex child = std::polar(
            r, (base_arg + 2.0 * std::numbers::pi * k) / map.degree);
        const double child_ld =
            log_abs_deriv + map.log_abs_derivative(child);
        walk_subtree(map, child, depth + 1, child_ld, max_depth, collision_tol,
                     out);
    }
}

// Chunked traversal: the tree is split at a fixed depth into subtree tasks
// that run independently; partial results merge pairwise in subtree order.
// The split depth depends only on the degree, never on the thread count, so
// results are byte-stable across worker counts.
template <typename Collector>
void chunked_tree_scan(const UnicriticalMap& map, Complex w, int max_depth,
                       const TreeOptions& opts, Collector& out) {
    check_tree_budget(map, max_depth, opts);
    int split = 0;
    while (split < max_depth && leaf_count(map.degree, split) < 64) ++split;
    if (split == 0 || split >= max_depth) {
        walk_subtree(map, w, 0, 0.0, max_depth, opts.collision_tol, out);
        return;
    }

    struct ChunkRoot {
        Complex point;
        double log_abs_deriv;
    };
    std::vector<ChunkRoot> roots;
    roots.reserve(leaf_count(map.degree, split));
    struct TopCollector {
        Collector* top;
        std::vector<ChunkRoot>* roots;
        int split;
        void visit(Complex z, int depth, double ld) {
            if (depth == split) {
                roots->push_back({z, ld});
            } else {
                top->visit(z, depth, ld);
            }
        }
        bool descend(Complex z, int depth, double ld) {
            if (depth == split) return false;  // handled by a chunk task
            return top->descend(z, depth, ld);
        }
    } top_collector{&out, &roots, split};
    walk_subtree(map, w, 0, 0.0, split, opts.collision_tol, top_collector);
    if (roots.empty()) return;

    std::vector<Collector> parts(roots.size(), out.fork());
    parallel_for(roots.size(), opts.threads, [&](std::size_t i) {
        walk_subtree(map, roots[i].point, split, roots[i].log_abs_deriv,
                     max_depth, opts.collision_tol, parts[i]);
    });
    Collector merged = pairwise_reduce(
        std::span<Collector>(parts),
        [](Collector& a, Collector&& b) { a.merge(std::move(b)); });
    out.merge(std::move(merged));
}

}  // namespace detail

// Streams every node of the depth-N preimage tree of w exactly once,
// depth-first with children in branch order. The depth-0 root is exempt from
// the collision check: its derivative term is the empty product.
template <typename Visit>
TreeSummary enumerate_preimage_tree(const UnicriticalMap& map, Complex w,
                                    int depth, Visit&& visit,
                                    const TreeOptions& opts = {}) {
    check_tree_budget(map, depth, opts);
    TreeSummary summary;
    std::vector<std::uint8_t> path;
    path.reserve(static_cast<std::size_t>(std::max(depth, 0)));

    // Explicit recursion keeps the branch path available as a span.
    auto recurse = [&](auto&& self, Complex z, int d, double ld) -> void {
        if (d > 0 && std::abs(z) < opts.collision_tol)
            detail::throw_collision(z, d);
        ++summary.node_count;
        const double az = std::abs(z);
        summary.max_abs = std::max(summary.max_abs, az);
        summary.min_abs = std::min(summary.min_abs, az);
        visit(NodeView{z, d, ld, std::span<const std::uint8_t>(path)});
        if (d == depth) return;
        const Complex v = z - map.c;
        const double r = real_root(std::abs(v), map.degree);
        const double base_arg = principal_arg(v);
        for (int k = 0; k < map.degree; ++k) {
            const Complex child = std::polar(
                r, (base_arg + 2.0 * std::numbers::pi * k) / map.degree);
            path.push_back(static_cast<std::uint8_t>(k));
            self(self, child, d + 1, ld + map.log_abs_derivative(child));
            path.pop_back();
        }
    };
    recurse(recurse, w, 0, 0.0);
    return summary;
}

}  // namespace unicrit

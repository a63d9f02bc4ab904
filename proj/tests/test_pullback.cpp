#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "unicrit/presets.hpp"
#include "unicrit/pullback.hpp"

using namespace unicrit;

namespace {

// Backward boundary sampling: every sampled boundary point of the target,
// tracked by exact root choices, must stay inside the per-step outer
// enclosures of the chain.
void check_chain_soundness(const UnicriticalMap& map, const PullbackChain& chain,
                           const OrbitSegment& reference, int samples) {
    const int n = static_cast<int>(chain.length());
    for (int i = 0; i < samples; ++i) {
        const double phi = 2.0 * std::numbers::pi * i / samples;
        Complex p = chain.target.center + std::polar(chain.target.radius, phi);
        for (int step = 1; step <= n; ++step) {
            const Complex ref =
                reference.points[static_cast<std::size_t>(n - step)];
            const Complex v = p - map.c;
            Complex best{};
            double best_dist = std::numeric_limits<double>::infinity();
            for (int k = 0; k < map.degree; ++k) {
                const Complex cand = branch_root(map.degree, v, k);
                const double dist = std::abs(cand - ref);
                if (dist < best_dist) {
                    best_dist = dist;
                    best = cand;
                }
            }
            p = best;
            const auto& outer = chain.steps[static_cast<std::size_t>(step - 1)].outer;
            CHECK(outer.contains(p, 1e-9 * (1.0 + outer.radius)));
        }
    }
}

}  // namespace

TEST_CASE("one-step pull-back along the chebyshev orbit") {
    const UnicriticalMap cheb(2, Complex{-2.0, 0.0});
    const OrbitSegment reference =
        iterate(cheb, Complex{std::sqrt(2.0), 0.0}, 1);
    REQUIRE(std::abs(reference.points[1]) < 1e-14);  // f(sqrt 2) = 0
    const DiskEnclosure D{Complex{0.0, 0.0}, 0.1};
    const PullbackChain chain = pull_back_along_orbit(cheb, D, reference, 1);
    REQUIRE(chain.length() == 1);
    CHECK(chain.valid);
    CHECK_FALSE(chain.steps[0].critical);
    CHECK(chain.steps[0].inner_point == reference.points[0]);
    // Linearization gives diam 2*0.1/(2 sqrt 2) = 0.0707; the corner-built
    // enclosure carries up to a sqrt(2)-ish factor over it.
    const double linearized = 0.2 / (2.0 * std::sqrt(2.0));
    CHECK(chain.diam_lower <= chain.diam_upper);
    CHECK(chain.diam_lower >= linearized * 0.9);
    CHECK(chain.diam_upper >= linearized);
    CHECK(chain.diam_upper <= linearized * 1.6);
    check_chain_soundness(cheb, chain, reference, 100);
}

TEST_CASE("zero-step chain keeps the target diameter") {
    const UnicriticalMap map(2, Complex{-1.0, 0.0});
    const OrbitSegment reference = iterate(map, Complex{0.2, 0.1}, 0);
    const DiskEnclosure D{Complex{0.2, 0.1}, 0.3};
    const PullbackChain chain = pull_back_along_orbit(map, D, reference, 0);
    CHECK(chain.length() == 0);
    CHECK(chain.diam_lower == doctest::Approx(0.6));
    CHECK(chain.diam_upper == doctest::Approx(0.6));
    CHECK(chain.valid);
}

TEST_CASE("nearly equidistant candidates flag ambiguity") {
    const UnicriticalMap square(2, Complex{0.0, 0.0});
    const OrbitSegment reference = iterate(square, Complex{0.05, 0.0}, 1);
    const DiskEnclosure D{Complex{1.0, 0.0}, 0.9999};
    REQUIRE(D.contains(reference.points[1]));
    const PullbackChain chain = pull_back_along_orbit(square, D, reference, 1);
    REQUIRE(chain.length() == 1);
    CHECK(chain.steps[0].ambiguous);
    CHECK_FALSE(chain.valid);
}

TEST_CASE("endpoint outside the target disk is a usage error") {
    const UnicriticalMap map(2, Complex{-1.0, 0.0});
    const OrbitSegment reference = iterate(map, Complex{1.9, 0.0}, 1);
    const DiskEnclosure D{Complex{0.0, 0.0}, 0.05};
    CHECK_THROWS_AS(pull_back_along_orbit(map, D, reference, 1), UsageError);
}

TEST_CASE("random chains keep bound ordering and boundary soundness") {
    auto gen = oracles::rng(31337u);
    for (int trial = 0; trial < 10; ++trial) {
        const int degree = 2 + trial % 2;
        const UnicriticalMap map(degree, oracles::random_in_disk(gen, 1.2));
        Complex start = oracles::random_in_disk(gen, 0.9);
        const int n = 2 + trial % 5;
        const OrbitSegment reference = iterate(map, start, n);
        if (reference.escaped_at && *reference.escaped_at <= n) continue;
        const Complex endpoint = reference.points[static_cast<std::size_t>(n)];
        const double radius = 0.02 + 0.1 * (trial % 3);
        const DiskEnclosure D{endpoint + oracles::random_in_disk(gen, radius / 2),
                              radius};
        const PullbackChain chain = pull_back_along_orbit(map, D, reference, n);
        CHECK(chain.length() == static_cast<std::size_t>(n));
        if (chain.valid) CHECK(chain.diam_lower <= chain.diam_upper * (1 + 1e-12));
        // the forward image of the last tracked preimage returns to the target
        Complex forward = chain.steps.back().inner_point;
        for (int k = 0; k < n; ++k) forward = map.apply(forward);
        CHECK(D.contains(forward, 1e-9 * (1.0 + D.radius)));
        check_chain_soundness(map, chain, reference, 60);
    }
}

TEST_CASE("chebyshev profile has no returns below delta = 4") {
    const UnicriticalMap cheb(2, Complex{-2.0, 0.0});
    const ScaleProfile profile =
        r_profile(cheb, geometric_grid(1.0, 10, 2.0), 1000);
    for (const ScaleRow& row : profile.rows) {
        CHECK(row.return_times_used.empty());
        CHECK(std::isinf(row.r_lo));
        CHECK(std::isinf(row.r_hi));
        CHECK(row.cutoff_limited);
    }
    CHECK(profile.cutoff_limited());
}

TEST_CASE("feigenbaum profile carries finite two-sided bounds") {
    const UnicriticalMap fe = preset_map("feigenbaum");
    const ScaleProfile profile =
        r_profile(fe, geometric_grid(0.01, 6, 2.0), 512);
    for (const ScaleRow& row : profile.rows) {
        REQUIRE_FALSE(row.return_times_used.empty());
        CHECK_FALSE(row.cutoff_limited);
        CHECK(std::isfinite(row.r_lo));
        CHECK(std::isfinite(row.r_hi));
        CHECK(row.r_lo <= row.r_hi * (1 + 1e-12));
        // pull-back depths sit one below the critical-orbit entry times
        for (int t : row.return_times_used) CHECK((t + 1) % 2 == 0);
    }
    // single-point grid stays well formed
    const ScaleProfile single = r_profile(fe, {0.01}, 512);
    CHECK(single.rows.size() == 1);
}

TEST_CASE("cross-scale consistency on the feigenbaum profile") {
    const UnicriticalMap fe = preset_map("feigenbaum");
    const ScaleProfile profile =
        r_profile(fe, geometric_grid(0.5, 12, 2.0), 1024);
    for (std::size_t i = 0; i < profile.rows.size(); ++i) {
        for (std::size_t j = 0; j < profile.rows.size(); ++j) {
            const ScaleRow& fine = profile.rows[i];
            const ScaleRow& coarse = profile.rows[j];
            if (!(fine.delta < coarse.delta)) continue;
            if (!std::isfinite(fine.r_hi) || !std::isfinite(coarse.r_lo)) continue;
            CHECK(fine.r_hi >=
                  (fine.delta / coarse.delta) * coarse.r_lo * (1 - 1e-12));
        }
    }
}

TEST_CASE("profile rows are identical across worker counts") {
    const UnicriticalMap fe = preset_map("feigenbaum");
    const auto grid = geometric_grid(0.1, 8, 2.0);
    const ScaleProfile a = r_profile(fe, grid, 256, 1);
    const ScaleProfile b = r_profile(fe, grid, 256, 8);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].r_lo == b.rows[i].r_lo);
        CHECK(a.rows[i].r_hi == b.rows[i].r_hi);
        CHECK(a.rows[i].return_times_used == b.rows[i].return_times_used);
    }
}

TEST_CASE("feigenbaum child scan finds the first return as a certain child") {
    const UnicriticalMap fe = preset_map("feigenbaum");
    const ChildScan scan = find_children(fe, 0.05, 2048, 1.0);
    REQUIRE_FALSE(scan.children.empty());
    // first entry of the critical orbit into B~(0.05), from the orbit oracle
    CHECK(scan.children.front().time == 4);
    CHECK(scan.children.front().certainty == ChildCertainty::certain_child);
    for (const ChildRecord& child : scan.children) {
        CHECK(child.enclosure.steps.back().critical);
        CHECK(child.image_diam_lower <= child.image_diam_upper * (1 + 1e-12));
        if (child.certainty == ChildCertainty::certain_child) {
            const auto& steps = child.enclosure.steps;
            for (std::size_t i = 0; i + 1 < steps.size(); ++i)
                CHECK(std::abs(steps[i].outer.center) > steps[i].outer.radius);
        }
    }
    CHECK(scan.sum_report.s == doctest::Approx(0.5));
    CHECK(scan.sum_report.comparable);
}

TEST_CASE("chebyshev child scan is empty") {
    const UnicriticalMap cheb(2, Complex{-2.0, 0.0});
    CHECK(find_children(cheb, 0.05, 1000, 1.0).children.empty());
    CHECK(find_children(cheb, 0.05, 0, 1.0).children.empty());
}

TEST_CASE("certain-child chains survive a doubled-density replay") {
    const UnicriticalMap fe = preset_map("feigenbaum");
    const ChildScan scan = find_children(fe, 0.05, 512, 1.0);
    const OrbitSegment orbit0 = iterate(fe, Complex{0.0, 0.0}, 512);
    const DiskEnclosure V = critical_scale_disk(fe, 0.05);
    for (const ChildRecord& child : scan.children) {
        if (child.certainty != ChildCertainty::certain_child) continue;
        for (int samples : {100, 200}) {
            // Backward boundary samples never reach the critical point at an
            // intermediate depth, so the certificate is stable under density.
            const int n = child.time;
            for (int i = 0; i < samples; ++i) {
                const double phi = 2.0 * std::numbers::pi * i / samples;
                Complex p = V.center + std::polar(V.radius, phi);
                for (int step = 1; step < n; ++step) {
                    const Complex ref =
                        orbit0.points[static_cast<std::size_t>(n - step)];
                    Complex best{};
                    double best_dist = std::numeric_limits<double>::infinity();
                    for (int k = 0; k < fe.degree; ++k) {
                        const Complex cand = branch_root(fe.degree, p - fe.c, k);
                        const double dist = std::abs(cand - ref);
                        if (dist < best_dist) {
                            best_dist = dist;
                            best = cand;
                        }
                    }
                    p = best;
                    CHECK(std::abs(p) > kCollisionTol);
                }
            }
        }
    }
}

TEST_CASE("return derivative statistics") {
    const UnicriticalMap cheb(2, Complex{-2.0, 0.0});
    SUBCASE("chebyshev: no critical-orbit returns, finite preimage side") {
        const ReturnDerivativeStats stats =
            return_derivative_stats(cheb, 0.05, 100, 12);
        CHECK(std::isinf(stats.m_plus));
        CHECK(std::isfinite(stats.m_minus));
        CHECK(std::isinf(stats.m));
        // brute-force cross-check of the preimage scan
        long double best = std::numeric_limits<long double>::infinity();
        const double radius = std::sqrt(0.05);
        for (int n = 1; n <= 12; ++n) {
            for (const auto& node :
                 oracles::brute_force_level(2, cheb.c, Complex{0.0, 0.0}, n)) {
                if (std::abs(node.point) <= radius)
                    best = std::min(best, node.abs_deriv * node.abs_deriv);
            }
        }
        CHECK(stats.m_minus ==
              doctest::Approx(static_cast<double>(best)).epsilon(1e-9));
    }
    SUBCASE("first-return case at a huge delta") {
        const ReturnDerivativeStats stats =
            return_derivative_stats(cheb, 4.1, 50, 4);
        // |f(0)| = 2 <= 4.1^(1/2) and every deeper derivative is larger
        CHECK(stats.m_plus == doctest::Approx(4.0).epsilon(1e-12));
    }
    SUBCASE("feigenbaum: both sides finite") {
        const UnicriticalMap fe = preset_map("feigenbaum");
        const ReturnDerivativeStats stats =
            return_derivative_stats(fe, 0.05, 100, 12);
        CHECK(std::isfinite(stats.m_plus));
        CHECK(std::isfinite(stats.m_minus));
        CHECK(stats.m == std::max(stats.m_plus, stats.m_minus));
    }
    SUBCASE("budget guard") {
        CHECK_THROWS_AS(return_derivative_stats(cheb, 0.05, 10, 40),
                        BudgetError);
    }
}

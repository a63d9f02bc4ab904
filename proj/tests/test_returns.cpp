#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "unicrit/presets.hpp"
#include "unicrit/returns.hpp"

using namespace unicrit;

TEST_CASE("feigenbaum staircase matches the record-scan oracle") {
    const UnicriticalMap fe = preset_map("feigenbaum");
    const int cutoff = 1024;
    const ReturnStaircase staircase = return_staircase(fe, 1e-6, 0.5, cutoff);
    REQUIRE_FALSE(staircase.returns.empty());

    const auto records = oracles::record_returns(2, fe.c, cutoff);
    // Map record times to breakpoint scales |f^m(0)|^2.
    std::vector<std::pair<int, double>> breakpoints;
    for (const auto& [m, value] : records) breakpoints.emplace_back(m, value * value);

    int previous_time = 0;
    double previous_hi = std::numeric_limits<double>::infinity();
    for (const CloseReturn& ret : staircase.returns) {
        CHECK(ret.time > previous_time);  // strictly increasing as delta falls
        CHECK(ret.delta_hi <= previous_hi);
        previous_time = ret.time;
        previous_hi = ret.delta_lo;
        // each time is a record time and the interval ends sit on records
        bool found = false;
        for (const auto& [m, v] : breakpoints) {
            if (m == ret.time) {
                found = true;
                if (ret.delta_lo > 1e-6 * (1 + 1e-9))
                    CHECK(ret.delta_lo == doctest::Approx(v).epsilon(1e-12));
            }
        }
        CHECK(found);
        // |f^n(0)| <= delta_hi^(1/d)
        const Complex at_time =
            oracles::iterate_plain(2, fe.c, Complex{0.0, 0.0}, ret.time);
        CHECK(std::abs(at_time) <= std::sqrt(ret.delta_hi) * (1 + 1e-12));
    }
}

TEST_CASE("staircase zeta passes forward verification and branch symmetry") {
    const UnicriticalMap fe = preset_map("feigenbaum");
    const ReturnStaircase staircase = return_staircase(fe, 1e-4, 0.5, 512);
    const OrbitSegment orbit0 = iterate(fe, Complex{0.0, 0.0}, 512);
    for (const CloseReturn& ret : staircase.returns) {
        REQUIRE(ret.zeta.has_value());
        CHECK(ret.verified);
        // zeta lies in the enclosure of the critical pull-back U_delta
        const PullbackChain chain = pull_back_along_orbit(
            fe, critical_scale_disk(fe, ret.delta_hi), orbit0, ret.time);
        const auto& outer = chain.steps.back().outer;
        CHECK(outer.contains(*ret.zeta, 1e-9 * (1.0 + outer.radius)));
        CHECK(ret.forward_residual <= 1e-8 * 2.0);
        // f^n(zeta) returns to 0 and zeta sits inside the critical pull-back
        Complex z = *ret.zeta;
        for (int i = 0; i < ret.time; ++i) z = fe.apply(z);
        CHECK(std::abs(z) <= 1e-8 * 2.0);
        // the d symmetric candidates carry the same derivative; rotating the
        // final root by e^{2 pi i / d} must not change log|Df^n|
        const Complex rotated = -*ret.zeta;
        double log_deriv = 0.0;
        Complex q = rotated;
        for (int i = 0; i < ret.time; ++i) {
            log_deriv += fe.log_abs_derivative(q);
            q = fe.apply(q);
        }
        CHECK(std::abs(log_deriv - ret.log_deriv_at_zeta) < 1e-10);
        // the reported choice has argument in [0, 2 pi / d)
        const double phi = std::atan2(ret.zeta->imag(), ret.zeta->real());
        CHECK(phi >= -1e-15);
        CHECK(phi < std::numbers::pi + 1e-15);
    }
}

TEST_CASE("chebyshev staircase is empty below delta = 4 and single above") {
    const UnicriticalMap cheb(2, Complex{-2.0, 0.0});
    CHECK(return_staircase(cheb, 1e-6, 0.5, 1000).returns.empty());
    const ReturnStaircase wide = return_staircase(cheb, 1e-6, 5.0, 1000);
    REQUIRE(wide.returns.size() == 1);
    CHECK(wide.returns[0].time == 1);
    CHECK(wide.returns[0].delta_lo == doctest::Approx(4.0));
    CHECK(wide.returns[0].delta_hi == doctest::Approx(5.0));
}

TEST_CASE("cutoff below the first return leaves the staircase empty") {
    const UnicriticalMap fe = preset_map("feigenbaum");
    CHECK(return_staircase(fe, 1e-3, 0.3, 0).returns.empty());
    // the first record lives at |f^1(0)|^2 = |c|^2 > 0.3
    CHECK(return_staircase(fe, 1e-3, 0.3, 1).returns.empty());
}

TEST_CASE("r bound from a close return") {
    const UnicriticalMap fe = preset_map("feigenbaum");
    const ReturnStaircase staircase = return_staircase(fe, 1e-6, 0.5, 4096);
    REQUIRE_FALSE(staircase.returns.empty());
    const CloseReturn& first = staircase.returns.front();
    const ReturnRBound bound = r_bound_from_return(fe, first);
    CHECK(bound.diam_bound > 0.0);
    CHECK(bound.r_implied > 0.0);
    CHECK(std::isfinite(bound.r_implied));
    // recorded value, cross-checked against the profile's r_hi at the same
    // scale within a factor 2
    CHECK(bound.r_implied == doctest::Approx(0.385892).epsilon(1e-4));
    const ScaleProfile profile = r_profile(fe, {first.delta_hi}, 4096);
    CHECK(bound.r_implied <= 2.0 * profile.rows[0].r_hi);

    SUBCASE("time 1 pulls back zero steps") {
        const UnicriticalMap cheb(2, Complex{-2.0, 0.0});
        const ReturnStaircase wide = return_staircase(cheb, 1e-6, 5.0, 100);
        REQUIRE(wide.returns.size() == 1);
        const ReturnRBound trivial = r_bound_from_return(cheb, wide.returns[0]);
        // W is B~(2 delta) itself: diameter 2 (2 delta)^(1/2)
        CHECK(trivial.diam_bound ==
              doctest::Approx(2.0 * std::sqrt(2.0 * 5.0)).epsilon(1e-12));
    }
    SUBCASE("missing zeta is surfaced") {
        CloseReturn broken = first;
        broken.zeta.reset();
        CHECK_THROWS_AS(r_bound_from_return(fe, broken), DynamicsError);
    }
}

namespace {

ScaleProfile fake_profile(std::vector<std::pair<double, double>> rows,
                          int degree) {
    ScaleProfile profile;
    profile.degree = degree;
    profile.cutoff = 1;
    for (const auto& [delta, r_lo] : rows) {
        ScaleRow row;
        row.delta = delta;
        row.r_lo = r_lo;
        row.r_hi = r_lo;
        row.cutoff_limited = !std::isfinite(r_lo);
        profile.rows.push_back(row);
    }
    return profile;
}

}  // namespace

TEST_CASE("contraction integral closed forms") {
    // constant R = 2 over one dyadic interval, exponent t/d with t = d
    const ScaleProfile profile = fake_profile({{0.2, 2.0}, {0.1, 2.0}}, 2);
    CHECK(contraction_integral(profile, 2.0, IntegralExponent::t_over_degree) ==
          doctest::Approx(std::log(2.0) / 2.0).epsilon(1e-14));
    // full-t mode at t = 2: integrand 1/4
    CHECK(contraction_integral(profile, 2.0, IntegralExponent::full_t) ==
          doctest::Approx(std::log(2.0) / 4.0).epsilon(1e-14));

    const ScaleProfile infinite =
        fake_profile({{0.2, kInf}, {0.1, kInf}, {0.05, kInf}}, 2);
    CHECK(contraction_integral(infinite, 1.0, IntegralExponent::full_t) == 0.0);

    CHECK_THROWS_AS(contraction_integral(fake_profile({{0.1, 2.0}}, 2), 1.0,
                                         IntegralExponent::full_t),
                    UsageError);
}

TEST_CASE("clipped contraction integral interpolates in log delta") {
    const ScaleProfile profile = fake_profile({{0.4, 2.0}, {0.1, 2.0}}, 2);
    // constant integrand 1/2 in t/d mode at t = 2 over (0.2, 0.4]
    CHECK(contraction_integral_over(profile, 2.0,
                                    IntegralExponent::t_over_degree, 0.2, 0.4) ==
          doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-12));
    // ranges outside the grid contribute nothing
    CHECK(contraction_integral_over(profile, 2.0,
                                    IntegralExponent::t_over_degree, 1.0, 2.0) ==
          0.0);
    CHECK_THROWS_AS(contraction_integral_over(profile, 1.0,
                                              IntegralExponent::full_t, 0.0, 1.0),
                    UsageError);
}

TEST_CASE("contraction integral is nonincreasing in t when r_lo >= 1") {
    // The monotonicity premise is that every finite integrand base r_lo is
    // at least 1; profiles of non-contracting maps can sit below 1, where
    // r^(-t) grows with t instead.
    const ScaleProfile contracting = fake_profile(
        {{0.4, 3.0}, {0.2, 2.5}, {0.1, kInf}, {0.05, 1.2}, {0.025, 5.0}}, 2);
    for (const auto mode :
         {IntegralExponent::full_t, IntegralExponent::t_over_degree}) {
        double prev = std::numeric_limits<double>::infinity();
        for (double t : {0.5, 1.0, 1.5, 2.0, 3.0}) {
            const double value = contraction_integral(contracting, t, mode);
            CHECK(value <= prev + 1e-12);
            prev = value;
        }
    }
    // chebyshev has no returns at these scales: identically zero, trivially
    // nonincreasing
    const UnicriticalMap cheb(2, Complex{-2.0, 0.0});
    const ScaleProfile empty = r_profile(cheb, geometric_grid(1.0, 8, 2.0), 500);
    for (double t : {0.5, 1.0, 2.0})
        CHECK(contraction_integral(empty, t, IntegralExponent::full_t) == 0.0);
}

TEST_CASE("interval ratios stay finite with bounded spread") {
    const UnicriticalMap fe = preset_map("feigenbaum");
    const ReturnStaircase staircase = return_staircase(fe, 1e-6, 0.5, 1024);
    const ScaleProfile profile = r_profile(fe, geometric_grid(0.5, 21, 2.0), 1024);
    const auto ratios = close_return_ratios(fe, staircase, profile, 1.0);
    REQUIRE(ratios.size() >= 4);
    for (const IntervalRatio& row : ratios) {
        CHECK(std::isfinite(row.ratio));
        CHECK(row.deriv_term > 0.0);
        CHECK(row.integral >= 0.0);
    }
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        lo = std::min(lo, ratios[i].ratio);
        hi = std::max(hi, ratios[i].ratio);
    }
    CHECK(hi / lo <= 100.0);
}

TEST_CASE("ratios over an empty profile region vanish") {
    const UnicriticalMap cheb(2, Complex{-2.0, 0.0});
    const ReturnStaircase wide = return_staircase(cheb, 1e-6, 5.0, 100);
    const ScaleProfile empty = fake_profile({{5.0, kInf}, {1.0, kInf}}, 2);
    const auto ratios = close_return_ratios(cheb, wide, empty, 1.0);
    REQUIRE(ratios.size() == 1);
    CHECK(ratios[0].integral == 0.0);
    CHECK(ratios[0].ratio == 0.0);
}

TEST_CASE("degenerate intervals are excluded from the ratio table") {
    const UnicriticalMap cheb(2, Complex{-2.0, 0.0});
    ReturnStaircase staircase;
    CloseReturn degenerate;
    degenerate.delta_lo = degenerate.delta_hi = 0.25;
    degenerate.time = 1;
    degenerate.zeta = Complex{0.1, 0.0};
    degenerate.verified = true;
    staircase.returns.push_back(degenerate);
    const ScaleProfile profile = fake_profile({{0.5, 2.0}, {0.125, 2.0}}, 2);
    CHECK(close_return_ratios(cheb, staircase, profile, 1.0).empty());
}

#include "doctest.h"

#include <cmath>

#include "kp2/field.hpp"
#include "kp2/strichartz.hpp"

using namespace kp2;

TEST_CASE("linear_ratio of a single mode is the flat constant") {
    SpectralField f;
    f.set({7, 3}, {2.0, -1.0});
    double expect = std::pow(plancherel_constant(f.torus()), -0.25);
    CHECK(linear_ratio(f, 1.0) == doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("linear_ratio is scale invariant") {
    auto f = make_extremizer_linear(16);
    auto g = f;
    for (auto& m : f.modes()) g.set(m.p, m.amp * std::complex<double>{0.0, -3.7});
    CHECK(linear_ratio(g, 1.0) == doctest::Approx(linear_ratio(f, 1.0)).epsilon(1e-12));
}

TEST_CASE("extremizer ratio grows like N^{1/8} between N = 16 and 64") {
    double r16 = linear_ratio(make_extremizer_linear(16), 1.0);
    double r64 = linear_ratio(make_extremizer_linear(64), 1.0);
    double growth = r64 / r16;
    // 4^{1/8} = 1.189; allow for finite-size drift of the eta-count
    CHECK(growth > 1.05);
    CHECK(growth < 1.45);
}

TEST_CASE("ratios are monotone nondecreasing in T_end") {
    auto f = make_extremizer_linear(64);
    double a = linear_ratio(f, 0.25);
    double b = linear_ratio(f, 0.5);
    double c = linear_ratio(f, 1.0);
    CHECK(a <= b * (1 + 1e-12));
    CHECK(b <= c * (1 + 1e-12));
}

TEST_CASE("sharpness_linear_fit rejects degenerate input") {
    CHECK_THROWS(sharpness_linear_fit({64}));
}

TEST_CASE("sharpness_linear_fit slope lands in the stated window (small range)") {
    std::vector<RatioSample> table;
    auto fit = sharpness_linear_fit({64, 128, 256, 512, 1024}, {}, &table);
    CHECK(fit.slope > 0.09);
    CHECK(fit.slope < 0.16);
    for (auto& s : table) CHECK(s.refinement_delta <= 1e-6);
}

TEST_CASE("shorttime_ratio basics") {
    auto f = make_extremizer_shorttime(64, 0.5, 64);
    double shorter = shorttime_ratio(f, 64, 0.5);
    double full = linear_ratio(f, 1.0);
    CHECK(shorter <= full * (1 + 1e-12));  // integral over a subinterval
    CHECK(shorttime_ratio(f, 64, 0.0) == doctest::Approx(full).epsilon(1e-12));
}

TEST_CASE("shorttime family slope near 1/16 at alpha = 1/2 (small range)") {
    auto fit = shorttime_sharpness_fit({64, 128, 256, 512, 1024}, 0.5);
    CHECK(fit.slope > 0.03);
    CHECK(fit.slope < 0.10);
}

TEST_CASE("shifted band fit: k = 1 band reduces to the |eta| <~ N^2 regime") {
    auto f = make_band_field(8, 1, {8, 16}, 3);
    auto [bx, by] = f.box();
    CHECK(by <= 2 * 8 * 8);
}

TEST_CASE("shifted band fit: slope in k stays below 0.12 and replays exactly") {
    QuadratureSpec q;
    q.refine_tol = 1e-3;
    std::vector<std::uint64_t> seeds{1, 2, 3};
    auto fit = shifted_band_fit(8, {1, 2, 4, 8}, seeds, q);
    CHECK(fit.slope <= 0.12);
    auto again = shifted_band_fit(8, {1, 2, 4, 8}, seeds, q);
    CHECK(fit.slope == doctest::Approx(again.slope).epsilon(1e-12));
}

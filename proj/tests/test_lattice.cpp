#include "doctest.h"

#include <cmath>

#include "kp2/lattice.hpp"
#include "kp2/rng.hpp"

using namespace kp2;

namespace {

FreqNode random_node(std::uint64_t seed, std::uint64_t& ctr, std::int64_t ximax,
                     std::int64_t etamax) {
    std::int64_t xi = 0;
    while (xi == 0) xi = uniform_int(seed, ctr++, -ximax, ximax);
    return {xi, uniform_int(seed, ctr++, -etamax, etamax)};
}

}  // namespace

TEST_CASE("omega matches frozen values") {
    CHECK(omega({1, 0}) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(omega({2, 2}) == doctest::Approx(6.0).epsilon(1e-14));
    CHECK(omega({2, 8}) == doctest::Approx(-24.0).epsilon(1e-14));
    CHECK_THROWS_AS(omega({0, 3}), std::domain_error);
}

TEST_CASE("omega on the irrational torus rescales eta by 1/gamma") {
    TorusSpec torus(3, 4);  // gamma = 3/4
    // xi^3 - (eta/gamma)^2/xi = 8 - (8/3)^2/2 = 8 - 32/9
    CHECK(omega({2, 2}, torus) == doctest::Approx(8.0 - 32.0 / 9.0).epsilon(1e-14));
    CHECK_THROWS_AS(TorusSpec(1, 2), std::invalid_argument);  // gamma must exceed 1/2
    CHECK_THROWS_AS(TorusSpec(5, 4), std::invalid_argument);
}

TEST_CASE("resonance values and omega-difference identity") {
    CHECK(resonance({1, 0}, {1, 0}) == doctest::Approx(6.0).epsilon(1e-14));
    CHECK(resonance({1, 1}, {1, -1}) == doctest::Approx(8.0).epsilon(1e-14));
    // cross-check of the two formulas: omega(2,0) - omega(1,1) - omega(1,-1) = 8 - 0 - 0
    Rat128 lhs = resonance_exact({1, 1}, {1, -1});
    Rat128 rhs = rat_sub(rat_sub(omega_exact({2, 0}), omega_exact({1, 1})), omega_exact({1, -1}));
    CHECK(rat_equal(lhs, rhs));
    CHECK_THROWS_AS(resonance({1, 0}, {-1, 2}), std::domain_error);  // xi1 + xi2 = 0
}

TEST_CASE("resonance identity and symmetry on random samples") {
    std::uint64_t ctr = 0;
    for (int i = 0; i < 2000; ++i) {
        FreqNode p1 = random_node(11, ctr, 1 << 10, 1 << 20);
        FreqNode p2 = random_node(11, ctr, 1 << 10, 1 << 20);
        if (p1.xi + p2.xi == 0) continue;
        Rat128 om = resonance_exact(p1, p2);
        Rat128 diff =
            rat_sub(rat_sub(omega_exact(p1 + p2), omega_exact(p1)), omega_exact(p2));
        CHECK(rat_equal(om, diff));
        CHECK(resonance(p1, p2) == doctest::Approx(resonance(p2, p1)).epsilon(1e-12));
    }
    TorusSpec torus(4, 5);
    for (int i = 0; i < 500; ++i) {
        FreqNode p1 = random_node(12, ctr, 1 << 8, 1 << 12);
        FreqNode p2 = random_node(12, ctr, 1 << 8, 1 << 12);
        if (p1.xi + p2.xi == 0) continue;
        Rat128 om = resonance_exact(p1, p2, torus);
        Rat128 diff = rat_sub(rat_sub(omega_exact(p1 + p2, torus), omega_exact(p1, torus)),
                              omega_exact(p2, torus));
        CHECK(rat_equal(om, diff));
    }
}

TEST_CASE("resonance lower bound (1.4): frozen examples") {
    auto [a, b] = resonance_lower_bound_check({1, 0}, {1, 0});
    CHECK(a == doctest::Approx(6.0));
    CHECK(b == doctest::Approx(6.0));
    auto [c, d] = resonance_lower_bound_check({2, 0}, {-1, 0});
    CHECK(c == doctest::Approx(6.0));
    CHECK(d == doctest::Approx(6.0));
    auto [e, g] = resonance_lower_bound_check({1, 5}, {1, -5});
    CHECK(e == doctest::Approx(56.0));
    CHECK(g == doctest::Approx(6.0));
}

TEST_CASE("resonance lower bound holds on 1e5 random samples, exactly") {
    std::uint64_t ctr = 0;
    int checked = 0;
    while (checked < 100000) {
        FreqNode p1 = random_node(777, ctr, 1 << 10, 1 << 20);
        FreqNode p2 = random_node(777, ctr, 1 << 10, 1 << 20);
        if (p1.xi + p2.xi == 0) continue;
        REQUIRE(resonance_lower_bound_holds_exact(p1, p2));
        auto [om, kdv] = resonance_lower_bound_check(p1, p2);
        REQUIRE(om >= kdv * (1.0 - 1e-12));
        // dyadic-shell form: |Omega| >= (3/4) Nmax^2 Nmin
        auto n1 = shell_of(p1.xi), n2 = shell_of(p2.xi), n3 = shell_of(p1.xi + p2.xi);
        double nmax = double(std::max({n1, n2, n3})), nmin = double(std::min({n1, n2, n3}));
        REQUIRE(om >= 0.75 * nmax * nmax * nmin * (1.0 - 1e-12));
        ++checked;
    }
}

TEST_CASE("KP-I variant loses the resonance lower bound") {
    // the transverse term now cancels the KdV term: (1,3),(1,0) gives 6 - 9/2
    double om = resonance_kp1({1, 3}, {1, 0});
    CHECK(om == doctest::Approx(1.5));
    CHECK(std::fabs(om) < 3.0 * 2.0);  // |Omega_KPI| < 3 |xi1 xi2 (xi1+xi2)|
    CHECK(std::fabs(resonance({1, 3}, {1, 0})) >= 6.0);
}

TEST_CASE("galilean shift and its phase identity") {
    CHECK(galilean_shift({2, 2}, 3) == FreqNode{2, 8});
    CHECK(galilean_shift({2, 2}, 0) == FreqNode{2, 2});
    CHECK(omega({2, 8}) == doctest::Approx(omega({2, 2}) - 2 * 3 * 2 - 3 * 3 * 2));

    // sign oracle for the (3.4) identity: the quadratic coefficient is -A^2 xi
    std::uint64_t ctr = 0;
    for (int i = 0; i < 1000; ++i) {
        FreqNode p = random_node(5, ctr, 1 << 8, 1 << 12);
        std::int64_t A = uniform_int(5, ctr++, -50, 50);
        Rat128 lhs = omega_exact(galilean_shift(p, A));
        Rat128 minus{__int128(omega_exact(p).num) -
                         __int128(2 * A * p.eta + A * A * p.xi) * omega_exact(p).den,
                     omega_exact(p).den};
        CHECK(rat_equal(lhs, minus));
    }
    // the printed "+A^2 xi" variant fails already on the frozen example
    CHECK(omega({2, 8}) != doctest::Approx(omega({2, 2}) - 2 * 3 * 2 + 3 * 3 * 2));
}

TEST_CASE("galilean shift inverts") {
    std::uint64_t ctr = 0;
    for (int i = 0; i < 1000; ++i) {
        FreqNode p = random_node(9, ctr, 1 << 10, 1 << 20);
        std::int64_t A = uniform_int(9, ctr++, -1000, 1000);
        CHECK(galilean_shift(galilean_shift(p, A), -A) == p);
    }
}

TEST_CASE("anisotropic rescale and scaling identity") {
    auto [x1, y1] = anisotropic_rescale({16, 0}, 16);
    CHECK(x1 == doctest::Approx(1.0));
    CHECK(y1 == doctest::Approx(0.0));
    auto [x2, y2] = anisotropic_rescale({2 * 16, 16 * 16}, 16);
    CHECK(x2 == doctest::Approx(2.0));
    CHECK(y2 == doctest::Approx(1.0));
    // omega(4, 8) = 48 = 4^3 * omega_cont(1, 0.5)
    CHECK(omega({4, 8}) == doctest::Approx(48.0));
    CHECK(64.0 * omega_cont(1.0, 0.5) == doctest::Approx(48.0));
    std::uint64_t ctr = 0;
    for (int i = 0; i < 200; ++i) {
        FreqNode p = random_node(3, ctr, 1 << 10, 1 << 16);
        std::int64_t N = std::int64_t(1) << uniform_int(3, ctr++, 0, 8);
        auto [xs, ys] = anisotropic_rescale(p, N);
        CHECK(omega(p) ==
              doctest::Approx(double(N) * double(N) * double(N) * omega_cont(xs, ys))
                  .epsilon(1e-12));
    }
}

TEST_CASE("dyadic shells partition the positive integers") {
    std::int64_t covered = 0;
    for (std::int64_t xi = 1; xi <= (1 << 14); ++xi) {
        std::int64_t N = shell_of(xi);
        REQUIRE(is_dyadic(N));
        REQUIRE(xi >= N);
        REQUIRE(xi < 2 * N);
        REQUIRE(shell_of(-xi) == N);
        ++covered;
    }
    CHECK(covered == (1 << 14));
    CHECK_THROWS_AS(shell_of(0), std::domain_error);
}

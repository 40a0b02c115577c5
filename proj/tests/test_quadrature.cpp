#include "doctest.h"

#include <cmath>

#include "kp2/field.hpp"
#include "kp2/quadrature.hpp"

using namespace kp2;

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

TEST_CASE("p=2 equals the Plancherel value on random 50-mode fields") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        auto f = make_random_field(8, 50, seed);
        QuadratureSpec q;
        q.t_end = 0.7;
        double qnorm = lp_spacetime_norm(f, 2, q);
        double exact = std::sqrt(q.t_end) * l2_norm(f);
        CHECK(qnorm == doctest::Approx(exact).epsilon(1e-10));
    }
}

TEST_CASE("single mode, p=4: |u| is constant") {
    SpectralField f(TorusSpec(3, 4));
    f.set({5, 2}, {0.0, 1.5});
    QuadratureSpec q;
    double got = lp_spacetime_norm(f, 4, q);
    double expect = std::pow(plancherel_constant(f.torus()), 0.25) * 1.5;
    CHECK(got == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("Dirichlet comb, frozen t = 0 slice") {
    // f^ = 1 at xi = N, eta = 0..4; the x-line integral of |D_5|^4 over T is
    // 2 pi * sum_s r(s)^2 with r the autocorrelation counts of {0..4}.
    SpectralField f;
    for (std::int64_t eta = 0; eta <= 4; ++eta) f.set({32, eta}, 1.0);

    int r[9] = {0};
    for (int a = 0; a <= 4; ++a)
        for (int b = 0; b <= 4; ++b) r[a - b + 4]++;
    double qc = 0;
    for (int s = 0; s < 9; ++s) qc += double(r[s]) * r[s];
    CHECK(qc == 85.0);

    double slice = spatial_lp_integral(f, 0.0, 4);
    CHECK(slice == doctest::Approx(kTwoPi * kTwoPi * qc).epsilon(1e-12));
}

TEST_CASE("spatial quadrature is exact beyond 2x oversampling") {
    auto f = make_random_field(8, 30, 5);
    double base = spatial_lp_integral(f, 0.3, 4, 2);
    double fine = spatial_lp_integral(f, 0.3, 4, 4);
    CHECK(fine == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("recentred fast path agrees with the serial reference") {
    QuadratureSpec q;
    q.refine_tol = 1e-9;
    for (std::int64_t N : {16, 64}) {
        auto f = make_extremizer_linear(N);
        double fast = lp_spacetime_norm(f, 4, q);
        double ref = lp_spacetime_norm_reference(f, 4, q).value;
        CHECK(fast == doctest::Approx(ref).epsilon(1e-8));
    }
    auto g = make_random_field(4, 12, 17);
    double fast = lp_spacetime_norm(g, 4, q);
    double ref = lp_spacetime_norm_reference(g, 4, q).value;
    CHECK(fast == doctest::Approx(ref).epsilon(1e-8));
}

TEST_CASE("norm is invariant under Galilean shear of the input") {
    auto f = make_random_field(4, 10, 23);
    QuadratureSpec q;
    q.refine_tol = 1e-9;
    double base = lp_spacetime_norm(f, 4, q);
    for (std::int64_t A : {1, 3, -2}) {
        double sheared = lp_spacetime_norm(galilean_shear(f, A), 4, q);
        CHECK(sheared == doctest::Approx(base).epsilon(1e-8));
    }
}

TEST_CASE("refinement delta is reported and small at acceptance tolerance") {
    auto f = make_extremizer_linear(64);
    QuadratureSpec q;
    auto r = lp_spacetime_norm_full(f, 4, q);
    CHECK(r.refinement_delta <= 1e-6);
    CHECK(r.time_samples >= 16);
}

TEST_CASE("a field with xi = 0 mass is rejected") {
    SpectralField f;
    f.set({0, 1}, 1.0);
    f.set({1, 0}, 1.0);
    QuadratureSpec q;
    CHECK_THROWS_AS(lp_spacetime_norm(f, 4, q), std::domain_error);
}

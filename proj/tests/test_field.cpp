#include "doctest.h"

#include <cmath>
#include <complex>
#include <sstream>

#include "kp2/field.hpp"
#include "kp2/rng.hpp"

using namespace kp2;

TEST_CASE("propagate: identity, single mode, unitarity, group law") {
    SpectralField f;
    f.set({1, 0}, {0.5, 0.25});
    CHECK(propagate(f, 0.0).at({1, 0}) == f.at({1, 0}));
    // omega(1,0) = 1, so t = pi flips the sign
    auto g = propagate(f, 3.14159265358979323846);
    CHECK(std::abs(g.at({1, 0}) + f.at({1, 0})) < 1e-12);

    auto r = make_random_field(8, 50, 42);
    CHECK(l2_norm(propagate(r, 0.37)) == doctest::Approx(l2_norm(r)).epsilon(1e-12));
    auto ab = propagate(propagate(r, 0.2), 0.5);
    auto once = propagate(r, 0.7);
    for (auto& m : once.modes()) CHECK(std::abs(ab.at(m.p) - m.amp) < 1e-12 * std::abs(m.amp));
}

TEST_CASE("propagate never creates xi = 0 amplitude") {
    SpectralField f;
    f.set({0, 3}, 0.0);  // representable as a convolution output index, amplitude zero
    f.set({2, 1}, 1.0);
    auto g = propagate(f, 1.0);
    CHECK(g.at({0, 3}) == std::complex<double>{});
}

TEST_CASE("sobolev norm") {
    SpectralField f;
    f.set({1, 0}, 1.0);
    CHECK(sobolev_norm(f, 0.0) == doctest::Approx(1.0));
    CHECK(sobolev_norm(f, 1.0) == doctest::Approx(2.0));
    SpectralField g;
    g.set({3, 7}, 2.0);
    CHECK(sobolev_norm(g, -0.5) == doctest::Approx(1.0));
}

TEST_CASE("extremizer families have the stated mode counts") {
    auto f16 = make_extremizer_linear(16);
    CHECK(f16.size() == 5);
    for (std::int64_t eta = 0; eta <= 4; ++eta) CHECK(f16.at({16, eta}) == 1.0);
    CHECK(make_extremizer_linear(4).size() == 3);
    // Plancherel on characteristic data
    CHECK(l2_norm(f16) * l2_norm(f16) ==
          doctest::Approx(plancherel_constant(f16.torus()) * 5).epsilon(1e-13));

    auto s = make_extremizer_shorttime(16, 0.5, 16);
    CHECK(s.size() == 9);  // eta = 0..floor(16^{3/4}) = 0..8
    CHECK(make_extremizer_shorttime(4, 1.0, 4).size() == 5);
    CHECK_THROWS(make_extremizer_shorttime(16, 0.5, 37));
}

TEST_CASE("band fields: support, determinism, cardinality") {
    auto f = make_band_field(8, 1, {8, 16}, 7);
    for (auto& m : f.modes()) {
        CHECK(shell_of(m.p.xi) == 8);
        CHECK(m.p.eta >= 64);
        CHECK(m.p.eta <= 128);
    }
    CHECK(f.size() == 8 * (64 + 1));
    auto g = make_band_field(8, 1, {8, 16}, 7);
    CHECK(f == g);  // bitwise-identical on repeat
    auto h = make_band_field(8, 1, {8, 16}, 8);
    CHECK(f.modes()[0].amp != h.modes()[0].amp);
    CHECK_THROWS(make_band_field(8, 2, {8, 16}, 1));   // |I| too wide
    CHECK_THROWS(make_band_field(8, 16, {8, 9}, 1));   // k > N
}

TEST_CASE("real-valued random fields are Hermitian") {
    auto f = make_random_field(8, 20, 3, 1.0, /*real_valued=*/true);
    f.validate();
    for (auto& m : f.modes())
        CHECK(std::abs(f.at({-m.p.xi, -m.p.eta}) - std::conj(m.amp)) < 1e-15);
}

TEST_CASE("field serialization round-trips") {
    auto f = make_random_field(8, 25, 99, 1.0, false, TorusSpec(4, 5));
    std::stringstream ss;
    write_field(ss, f);
    auto g = read_field(ss);
    CHECK(g.torus() == f.torus());
    REQUIRE(g.size() == f.size());
    for (auto& m : f.modes()) CHECK(std::abs(g.at(m.p) - m.amp) < 1e-16);
}

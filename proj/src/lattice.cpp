#include "kp2/lattice.hpp"

#include <bit>
#include <cmath>
#include <cstdlib>

namespace kp2 {

namespace {

__int128 iabs128(__int128 v) { return v < 0 ? -v : v; }

void check_xi(std::int64_t xi, const char* who) {
    if (xi == 0) throw std::domain_error(std::string(who) + ": xi = 0 is not admissible");
}

}  // namespace

TorusSpec::TorusSpec(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (d <= 0 || n <= 0 || 2 * n <= d || n > d)
        throw std::invalid_argument("TorusSpec: gamma must be rational in (1/2, 1]");
}

double Rat128::to_double() const {
    // Single rounding: both halves converted exactly for |num|,|den| < 2^63,
    // long-double fallback above that.
    if (iabs128(num) < (__int128(1) << 62) && iabs128(den) < (__int128(1) << 62))
        return double(std::int64_t(num)) / double(std::int64_t(den));
    return double((long double)(num) / (long double)(den));
}

Rat128 rat_sub(const Rat128& a, const Rat128& b) {
    Rat128 r{a.num * b.den - b.num * a.den, a.den * b.den};
    r.reduce_sign();
    return r;
}

bool rat_equal(const Rat128& a, const Rat128& b) {
    return a.num * b.den == b.num * a.den;
}

bool rat_abs_geq(const Rat128& a, const Rat128& b) {
    return iabs128(a.num) * iabs128(b.den) >= iabs128(b.num) * iabs128(a.den);
}

bool is_dyadic(std::int64_t n) { return n > 0 && (n & (n - 1)) == 0; }

std::int64_t shell_of(std::int64_t xi) {
    check_xi(xi, "shell_of");
    auto a = std::uint64_t(std::llabs(xi));
    return std::int64_t(std::bit_floor(a));
}

Rat128 omega_exact(FreqNode p, const TorusSpec& torus) {
    check_xi(p.xi, "omega");
    // xi^3 - (eta q / p)^2 / xi = (xi^4 p^2 - eta^2 q^2) / (p^2 xi)
    __int128 xi = p.xi, eta = p.eta, pp = torus.num, qq = torus.den;
    Rat128 r{xi * xi * xi * xi * pp * pp - eta * eta * qq * qq, pp * pp * xi};
    r.reduce_sign();
    return r;
}

double omega(FreqNode p, const TorusSpec& torus) { return omega_exact(p, torus).to_double(); }

double omega_cont(double xi, double eta) { return xi * xi * xi - eta * eta / xi; }

Rat128 resonance_exact(FreqNode p1, FreqNode p2, const TorusSpec& torus) {
    check_xi(p1.xi, "resonance");
    check_xi(p2.xi, "resonance");
    check_xi(p1.xi + p2.xi, "resonance");
    __int128 x1 = p1.xi, x2 = p2.xi, e1 = p1.eta, e2 = p2.eta;
    __int128 pp = torus.num, qq = torus.den;
    __int128 prod = x1 * x2 * (x1 + x2);
    __int128 cross = e1 * x2 - e2 * x1;
    // 3 prod + cross^2 q^2 / (p^2 prod)
    Rat128 r{3 * prod * prod * pp * pp + cross * cross * qq * qq, pp * pp * prod};
    r.reduce_sign();
    return r;
}

double resonance(FreqNode p1, FreqNode p2, const TorusSpec& torus) {
    return resonance_exact(p1, p2, torus).to_double();
}

std::pair<double, double> resonance_lower_bound_check(FreqNode p1, FreqNode p2,
                                                      const TorusSpec& torus) {
    double om = resonance(p1, p2, torus);
    __int128 prod = __int128(p1.xi) * p2.xi * (p1.xi + p2.xi);
    double kdv = 3.0 * double((long double)iabs128(prod));
    return {std::fabs(om), kdv};
}

bool resonance_lower_bound_holds_exact(FreqNode p1, FreqNode p2) {
    // Omega * prod = 3 prod^2 + cross^2 >= 3 prod^2, so |Omega| >= 3 |prod| always.
    __int128 prod = __int128(p1.xi) * p2.xi * (p1.xi + p2.xi);
    if (prod == 0) throw std::domain_error("resonance_lower_bound: vanishing xi product");
    __int128 cross = __int128(p1.eta) * p2.xi - __int128(p2.eta) * p1.xi;
    return 3 * prod * prod + cross * cross >= 3 * prod * prod;
}

double omega_kp1(FreqNode p, const TorusSpec& torus) {
    check_xi(p.xi, "omega_kp1");
    double eta = double(p.eta) / torus.gamma();
    return double(p.xi) * double(p.xi) * double(p.xi) + eta * eta / double(p.xi);
}

double resonance_kp1(FreqNode p1, FreqNode p2, const TorusSpec& torus) {
    return omega_kp1(p1 + p2, torus) - omega_kp1(p1, torus) - omega_kp1(p2, torus);
}

FreqNode galilean_shift(FreqNode p, std::int64_t A) { return {p.xi, p.eta + A * p.xi}; }

std::pair<double, double> anisotropic_rescale(FreqNode p, std::int64_t N) {
    if (N < 1) throw std::invalid_argument("anisotropic_rescale: N >= 1 required");
    double n = double(N);
    return {double(p.xi) / n, double(p.eta) / (n * n)};
}

}  // namespace kp2

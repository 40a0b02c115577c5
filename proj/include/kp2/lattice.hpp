#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace kp2 {

// A lattice frequency (xi, eta). On the torus T x T_gamma the eta index is an
// integer multiple of 1/gamma, so the effective y-frequency is eta/gamma.
struct FreqNode {
    std::int64_t xi = 0;
    std::int64_t eta = 0;

    friend bool operator==(const FreqNode&, const FreqNode&) = default;
    friend auto operator<=>(const FreqNode&, const FreqNode&) = default;
};

inline FreqNode operator+(FreqNode a, FreqNode b) { return {a.xi + b.xi, a.eta + b.eta}; }
inline FreqNode operator-(FreqNode a, FreqNode b) { return {a.xi - b.xi, a.eta - b.eta}; }

// y-period divisor gamma = num/den, rational in (1/2, 1]. gamma = 1 is the
// square torus.
struct TorusSpec {
    std::int64_t num = 1;
    std::int64_t den = 1;

    TorusSpec() = default;
    TorusSpec(std::int64_t n, std::int64_t d);

    double gamma() const { return double(num) / double(den); }
    bool square() const { return num == den; }

    friend bool operator==(const TorusSpec&, const TorusSpec&) = default;
};

// Exact rational value held as a 128-bit fraction. Used for the cancellation-free
// dispersion/resonance identities; not a general rational type.
struct Rat128 {
    __int128 num = 0;
    __int128 den = 1;

    void reduce_sign() {
        if (den < 0) { num = -num; den = -den; }
    }
    double to_double() const;
};

Rat128 rat_sub(const Rat128& a, const Rat128& b);
bool rat_equal(const Rat128& a, const Rat128& b);
bool rat_abs_geq(const Rat128& a, const Rat128& b);  // |a| >= |b|

// The dyadic region D_{N,L}: |xi| in [N, 2N), |tau - omega| in the L-shell.
// bottom == true denotes the lowest modulation shell "<= L".
struct DyadicShell {
    std::int64_t N = 1;
    std::int64_t L = 1;
    bool bottom = false;
};

bool is_dyadic(std::int64_t n);

// The unique dyadic N with |xi| in [N, 2N). Requires xi != 0.
std::int64_t shell_of(std::int64_t xi);

// Dispersion relation omega(xi, eta) = xi^3 - (eta/gamma)^2 / xi.
// Evaluated through an exact 128-bit fraction, then divided once.
double omega(FreqNode p, const TorusSpec& torus = {});
Rat128 omega_exact(FreqNode p, const TorusSpec& torus = {});

// Resonance function Omega(p1, p2) =
//   3 xi1 xi2 (xi1+xi2) + (eta1 xi2 - eta2 xi1)^2 / (gamma^2 xi1 xi2 (xi1+xi2)).
// Agrees exactly with omega(p1+p2) - omega(p1) - omega(p2).
double resonance(FreqNode p1, FreqNode p2, const TorusSpec& torus = {});
Rat128 resonance_exact(FreqNode p1, FreqNode p2, const TorusSpec& torus = {});

// (|Omega|, 3 |xi1 xi2 (xi1+xi2)|); the first component is always >= the second.
std::pair<double, double> resonance_lower_bound_check(FreqNode p1, FreqNode p2,
                                                      const TorusSpec& torus = {});

// Exact check |Omega| >= 3 |xi1 xi2 (xi1+xi2)| in integer arithmetic (gamma = 1).
bool resonance_lower_bound_holds_exact(FreqNode p1, FreqNode p2);

// KP-I variant (sign-flipped transverse term), kept only to demonstrate the
// resonance-sign contrast: the lower bound fails for it.
double omega_kp1(FreqNode p, const TorusSpec& torus = {});
double resonance_kp1(FreqNode p1, FreqNode p2, const TorusSpec& torus = {});

// Galilean shear (xi, eta) -> (xi, eta + A xi). The induced phase satisfies
// omega(xi, eta + A xi) = omega(xi, eta) - (2 A eta + A^2 xi gamma^2) / gamma^2;
// on the square torus: omega - 2 A eta - A^2 xi.
FreqNode galilean_shift(FreqNode p, std::int64_t A);

// Anisotropic rescale (xi, eta) -> (xi/N, eta/N^2), so that
// omega(xi, eta) = N^3 * omega_cont(xi/N, eta/N^2).
std::pair<double, double> anisotropic_rescale(FreqNode p, std::int64_t N);

// omega over the reals, same formula; used by the rescale identity and the
// flat-set phase functions.
double omega_cont(double xi, double eta);

}  // namespace kp2

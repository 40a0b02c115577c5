#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "kp2/lattice.hpp"

namespace kp2 {

struct Mode {
    FreqNode p;
    std::complex<double> amp;

    friend bool operator==(const Mode&, const Mode&) = default;
};

// A finite set of Fourier modes on T x T_gamma. Physical fields carry no
// xi = 0 amplitude (mean-zero convention). Modes are kept sorted by (xi, eta)
// so iteration order, and with it every accumulation, is deterministic.
class SpectralField {
public:
    SpectralField() = default;
    explicit SpectralField(TorusSpec torus, bool real_valued = false)
        : torus_(torus), real_valued_(real_valued) {}

    void set(FreqNode p, std::complex<double> a);
    void add(FreqNode p, std::complex<double> a);
    std::complex<double> at(FreqNode p) const;  // 0 if absent

    const std::vector<Mode>& modes() const { return modes_; }
    const TorusSpec& torus() const { return torus_; }
    bool real_valued() const { return real_valued_; }
    void set_real_valued(bool rv) { real_valued_ = rv; }
    bool empty() const { return modes_.empty(); }
    std::size_t size() const { return modes_.size(); }

    // Bounding rectangle (max |xi|, max |eta|) of the support.
    std::pair<std::int64_t, std::int64_t> box() const;

    // Checks mean-zero and, if flagged, Hermitian symmetry; throws on violation.
    void validate() const;

    friend bool operator==(const SpectralField&, const SpectralField&) = default;

private:
    TorusSpec torus_;
    bool real_valued_ = false;
    std::vector<Mode> modes_;  // sorted by p
};

// Plancherel constant (2 pi)^2 gamma: ||f||_{L^2(T^2)}^2 = C_P * sum |f^|^2.
double plancherel_constant(const TorusSpec& torus);

// sqrt(sum |f^|^2), the coefficient l^2 norm.
double l2_coeff_norm(const SpectralField& f);

// ||f||_{L^2(T^2)} under the unnormalized-coefficient convention.
double l2_norm(const SpectralField& f);

// Anisotropic Sobolev norm (sum <xi>^{2s} |f^|^2)^{1/2}, <xi> = 1 + |xi|.
double sobolev_norm(const SpectralField& f, double s);

// Free evolution: multiplies each amplitude by exp(i t omega(xi, eta)).
SpectralField propagate(const SpectralField& f, double t);

// Galilean shear of the whole field: (xi, eta) -> (xi, eta + A xi).
SpectralField galilean_shear(const SpectralField& f, std::int64_t A);

// Section 3.3 family: f^ = 1 at xi = N, eta = 0..floor(sqrt(N)).
SpectralField make_extremizer_linear(std::int64_t N, TorusSpec torus = {});

// Short-time family: f^ = 1 at xi = xi0, eta = 0..floor(N^{(1+alpha)/2}).
// Requires |xi0| in [N, 2N) and 0 < alpha <= 1.
SpectralField make_extremizer_shorttime(std::int64_t N, double alpha, std::int64_t xi0,
                                        TorusSpec torus = {});

// Large-eta band: xi in I (within [N, 2N)), |I| <= max(1, N/k),
// eta in [k N^2, (k+1) N^2], Gaussian amplitudes drawn from `seed`.
struct XiInterval {
    std::int64_t lo = 0;  // inclusive
    std::int64_t hi = 0;  // exclusive
    std::int64_t length() const { return hi - lo; }
};
SpectralField make_band_field(std::int64_t N, std::int64_t k, XiInterval I, std::uint64_t seed,
                              TorusSpec torus = {});

// Random field on |xi| in [N, 2N), |eta| <= eta_const * N^2 with `count` modes.
// Hermitian-symmetrized when real_valued is set.
SpectralField make_random_field(std::int64_t N, int count, std::uint64_t seed,
                                double eta_const = 1.0, bool real_valued = false,
                                TorusSpec torus = {});

// Flat text serialization: header line with gamma and the real flag, then one
// line per mode "xi eta re im".
void write_field(std::ostream& os, const SpectralField& f);
SpectralField read_field(std::istream& is);
void write_field_file(const std::string& path, const SpectralField& f);
SpectralField read_field_file(const std::string& path);

}  // namespace kp2

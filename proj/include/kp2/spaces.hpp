#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "kp2/field.hpp"
#include "kp2/fit.hpp"
#include "kp2/modeset.hpp"

namespace kp2 {

// The fixed bump behind every cutoff: even, identically 1 on [0, 1],
// a smooth exponential bridge on (1, 2), zero beyond.
double bump_eta0(double t);

// Fourier transform of bump_eta0, tabulated once by quadrature; real and even.
double bump_eta0_hat(double mu);

// Dyadic modulation cutoff eta_L(sigma) = eta1(sigma / L) with
// eta1(s) = eta0(s/2) - eta0(s); the bottom shell uses eta0 itself.
double modulation_cutoff(std::int64_t L, bool bottom, double sigma);

// X_N norm: sum over shells of L^{1/2} (1 + L/N^3)^{1/4} || eta_L(tau-omega) f ||_{L^2};
// the bottom shell enters with weight (1 + 1/N^3)^{1/4}.
double xnorm(const ModeSet& f, std::int64_t N);

// Variant with weight L^b and no (1 + L/N^3) factor.
double xnorm_b(const ModeSet& f, std::int64_t N, double b);

// Dual-norm diagnostic: xnorm of the profile divided by (tau - omega + i N^alpha).
double nnorm(const ModeSet& f, std::int64_t N, double alpha);

// Physical-time window parameters of the short-time norms.
struct WindowSpec {
    double alpha = 0.5;
    double t_lo = 0.0;   // t_k grid covers [t_lo, t_hi] padded by one window width
    double t_hi = 1.0;
    int grid_refine = 1;  // multiplies the default t_k density (spacing N^-alpha/4)
};

// Short-time norm: sup over the t_k grid of xnorm applied to the data windowed
// by eta0(N^alpha (t - t_k)); alpha = 0 degenerates to one global window.
double fnorm(const ModeSet& f, std::int64_t N, const WindowSpec& w);
double fnorm_b(const ModeSet& f, std::int64_t N, double b, const WindowSpec& w);

// Windowed profile at a fixed center, exposed for tests.
ModeSet window_modeset(const ModeSet& f, double scale, double t_k);

// Spatial coefficients of u(t) recovered from the tau-profiles.
SpectralField sample_at_time(const ModeSet& f, double t);

// Energy norm over a stored trajectory:
// || P_{<=8} u(0) ||^2 + sum_{N >= 8} N^{2s} sup_t || P_N u(t) ||^2, square-rooted.
double energy_norm(const std::vector<SpectralField>& traj, double s);

// Lemma 2.2 trend: sup_t ||u(t)||_{H^{s,0}} / ||u||_{F^s} over random localized
// data, fitted against N. A bounded embedding shows up as slope ~ 0.
struct ProbeResult {
    FitResult fit;
    double max_quotient = 0;
};
ProbeResult embedding_probe(const std::vector<std::int64_t>& N_list, double s,
                            std::uint64_t suite_seed);

// Lemma 2.4 trend: T-slope of F_N^b / F_N on windowed free evolutions;
// the rate is 1/2 - b up to the endpoint loss.
ProbeResult slack_probe(double b, const std::vector<double>& T_list, std::uint64_t seed);

}  // namespace kp2

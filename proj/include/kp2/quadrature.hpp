#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "kp2/field.hpp"

namespace kp2 {

// Doubling the time grid moved the integral by more than the declared
// tolerance even after max_refine rounds.
struct RefinementError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct QuadratureSpec {
    int spatial_oversample = 2;  // >= 2: rectangle rule exact for |u|^4
    int time_samples = 0;        // Simpson intervals; 0 = phase-range heuristic
    double t_end = 1.0;          // time interval [0, t_end]
    double refine_tol = 1e-6;    // relative tolerance of the doubling check
    int max_refine = 12;
};

struct NormResult {
    double value = 0.0;
    double refinement_delta = 0.0;  // |I(2M) - I(M)| / |I(2M)| at the accepted M
    int time_samples = 0;
};

// || S_KP(t) f ||_{L^p([0, t_end] x T^2)} for p in {2, 4}.
//
// Per time sample the spatial integral is synthesized by FFT on a grid of at
// least `spatial_oversample` times the support box per direction, which makes
// it exact for the quartic integrand; time integration is composite Simpson,
// doubled until stable within refine_tol.
//
// The default path first applies an integer Galilean shear chosen to minimize
// the eta-extent, recentres phases at the midrange omega, and translates the
// support to a minimal box. All three leave |u| and hence the norm unchanged
// and reduce both the grid and the oscillation budget; for a single-xi family
// this collapses to the 1D (t, y) quadrature.
NormResult lp_spacetime_norm_full(const SpectralField& f, int p, const QuadratureSpec& q);
double lp_spacetime_norm(const SpectralField& f, int p, const QuadratureSpec& q);

// Serial bounding-box implementation without any recentring; the reference
// the fast path is tested against.
NormResult lp_spacetime_norm_reference(const SpectralField& f, int p, const QuadratureSpec& q);

// Spatial integral int_{T^2} |S_KP(t) f|^p dx dy at one time.
double spatial_lp_integral(const SpectralField& f, double t, int p, int spatial_oversample = 2);

// Integer shear minimizing the sheared eta-extent of the support.
std::int64_t best_recentre_shear(const SpectralField& f);

}  // namespace kp2

#pragma once

#include <cstdint>
#include <vector>

#include "kp2/field.hpp"
#include "kp2/fit.hpp"
#include "kp2/quadrature.hpp"

namespace kp2 {

// One measured L^4/L^2 quotient together with its quadrature refinement delta.
struct RatioSample {
    double abscissa = 0;
    double ratio = 0;
    double refinement_delta = 0;
};

// || S_KP(t) f ||_{L^4([0, t_end] x T^2)} / || f ||_{L^2(T^2)}.
double linear_ratio(const SpectralField& f, double t_end, QuadratureSpec q = {});
RatioSample linear_ratio_full(const SpectralField& f, double t_end, QuadratureSpec q = {});

// Section 3.3 extremizer family over N_list at t_end = 1; the single-xi support
// collapses the quadrature to the 1D (t, y) sum, so N up to 4096 is cheap.
FitResult sharpness_linear_fit(const std::vector<std::int64_t>& N_list, QuadratureSpec q = {},
                               std::vector<RatioSample>* table = nullptr);

// linear_ratio on the frequency-dependent window [0, N^{-alpha}].
double shorttime_ratio(const SpectralField& f, std::int64_t N, double alpha,
                       QuadratureSpec q = {});

// Short-time extremizer family at fixed alpha; fitted against N.
FitResult shorttime_sharpness_fit(const std::vector<std::int64_t>& N_list, double alpha,
                                  QuadratureSpec q = {}, std::vector<RatioSample>* table = nullptr);

// Random fields with support |eta| <= N^2/eta_margin, measuring the
// Thm 3.6(ii) upper-bound trend on [0, N^{-alpha}]. Reported, not gated.
struct ShorttimeProbe {
    double max_ratio = 0;
    FitResult fit;
};
ShorttimeProbe shorttime_random_probe(const std::vector<std::int64_t>& N_list, double alpha,
                                      std::uint64_t seed, double eta_margin = 16.0,
                                      QuadratureSpec q = {});

// Shifted-band families of Prop 3.8: median ratio over seeds per k, fitted
// against k at fixed N (upper-bound rate k^{1/12}).
FitResult shifted_band_fit(std::int64_t N, const std::vector<std::int64_t>& k_list,
                           const std::vector<std::uint64_t>& seeds, QuadratureSpec q = {},
                           std::vector<RatioSample>* table = nullptr);

}  // namespace kp2

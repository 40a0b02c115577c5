#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kp2/fit.hpp"
#include "kp2/modeset.hpp"

namespace kp2 {

// ||f1 * f2||_{L^2(R x Z^2)}: exact discrete convolution over (xi, eta) and
// exact L^2 of the piecewise-linear tau-convolution of piecewise-constant
// profiles. Parallel over output xi-slices with a deterministic reduction.
double convolve_l2(const ModeSet& f1, const ModeSet& f2);
double convolve_l2_serial(const ModeSet& f1, const ModeSet& f2);  // reference

// Closed-form constant of Prop 4.1 with <x> = 1 + |x| and the eps-branch
// exponent in L_max^{1/2+eps}.
struct BourgainBound {
    double value = 0;
    double term_kdv = 0;       // L_min^{1/2} L_max^{1/4} N_min^{1/4}
    double term_interval = 0;  // L_min^{1/2} I_min^{1/2}
    double term_min = 0;       // min of the two third-term branches
    int min_branch = 0;        // 0: L_max^{1/2+eps} branch, 1: I_min^{1/2} branch
};
BourgainBound bourgain_bound_full(std::int64_t N1, std::int64_t N2, std::int64_t L1,
                                  std::int64_t L2, std::int64_t I1, std::int64_t I2,
                                  double eps = 0.01);
double bourgain_bound(std::int64_t N1, std::int64_t N2, std::int64_t L1, std::int64_t L2,
                      std::int64_t I1, std::int64_t I2, double eps = 0.01);

// Almost-orthogonal xi-window decomposition of Prop 4.4's proof: windows of
// width ceil(D^2 N2 / N1^2 + L_max / N1^2 + 1) covering both supports, paired
// by the sum-and-product constraint. Requires N2 < N1 and same-sign supports.
struct WindowPair {
    XiInterval w1, w2;
};
std::vector<WindowPair> cordoba_window_decompose(const ModeSet& f1, const ModeSet& f2, double D);
std::int64_t cordoba_window_width(std::int64_t N1, std::int64_t N2, double D, std::int64_t Lmax);

// Restriction of a ModeSet to a xi-window.
ModeSet restrict_xi(const ModeSet& f, XiInterval w);

// The Section 9 extremizer pair: characteristic data on single xi-nodes
// xi_i = N_i with eta-intervals [0, ceil(sqrt(N2))) and |tau - omega| <= 1.
std::pair<ModeSet, ModeSet> make_section9_pair(std::int64_t N1, std::int64_t N2, double dtau);

// Quotient ||f1 * f2|| / (||f1|| ||f2||) of the Section 9 pair, fitted
// against N2 (paper rate N2^{1/4} with both L fixed at 1).
FitResult sharpness_bilinear_fit(const std::vector<std::int64_t>& N2_list, std::int64_t N1_ratio,
                                 double dtau = 0.125,
                                 std::vector<std::pair<double, double>>* table = nullptr);

// One randomized-suite case: the measured quotient against the proposition's
// bound, with everything needed to rebuild the case.
struct SuiteCase {
    std::string id;
    double lhs = 0;
    double bound = 0;
    double ratio = 0;
    int detail = 0;  // Prop 4.1: active min-branch
};

struct SuiteResult {
    std::vector<SuiteCase> cases;
    double max_ratio = 0;
};

SuiteResult run_prop41_suite(int cases, std::uint64_t seed, std::int64_t N_max = 128);
SuiteResult run_prop42_suite(int cases, std::uint64_t seed, std::int64_t N_max = 128);
SuiteResult run_prop43_suite(int cases, std::uint64_t seed, std::int64_t N_max = 128);

// Max |convolve_l2(sheared) - convolve_l2| / convolve_l2 over a few pairs.
double galilean_covariance_error(std::uint64_t seed);

}  // namespace kp2

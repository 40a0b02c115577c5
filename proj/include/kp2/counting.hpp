#pragma once

#include <cstdint>
#include <vector>

#include "kp2/lattice.hpp"

namespace kp2 {

// One eta1-slice of the convolution constraint set: for fixed (tau, xi, eta)
// and xi1, the integers eta1 in [eta1_lo, eta1_hi] with
//   |tau - omega(xi1, eta1) - omega(xi - xi1, eta - eta1)| <= L_max.
struct SliceSpec {
    double tau = 0;       // exact when on the 1/8 grid (the suites keep it there)
    std::int64_t xi = 0;  // output xi
    std::int64_t eta = 0;
    std::int64_t xi1 = 0;
    std::int64_t eta1_lo = 0;
    std::int64_t eta1_hi = -1;  // inclusive; lo > hi encodes the empty box
    double L_max = 1;
    TorusSpec torus{};
};

// Exact count by integer enumeration over the bracketed candidate range;
// the admissibility predicate is evaluated in 128-bit rational arithmetic
// whenever tau and L_max sit on the 1/8 grid. Requires xi1 != 0, xi - xi1 != 0.
std::int64_t count_eta_slice(const SliceSpec& s);

// Same count under the second-order transversality hypothesis: additionally
// requires xi1 and xi - xi1 to have the same sign.
std::int64_t count_eta_slice_secondorder(const SliceSpec& s);

// min over the box of |eta1/xi1 - (eta-eta1)/(xi-xi1)| (the slice
// transversality D); the phase derivative in eta1 is 2D / gamma^2.
double slice_transversality(const SliceSpec& s);

struct CountingCase {
    SliceSpec spec;
    std::int64_t count = 0;
    double bound = 0;  // <L_max / D> or 1 + sqrt(L_max N_min)
    double ratio = 0;
};

struct CountingSuite {
    std::vector<CountingCase> cases;
    double max_ratio = 0;
};

// Randomized suites behind the Prop 4.2 / Prop 4.3 counting bounds. Both are
// exact and deterministic for a fixed seed.
CountingSuite counting_suite_prop42(int cases, std::uint64_t seed, std::int64_t N_max = 128);
CountingSuite counting_suite_prop43(int cases, std::uint64_t seed, std::int64_t N_max = 128);

}  // namespace kp2

#include "kp2/bilinear.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "kp2/reduce.hpp"
#include "kp2/rng.hpp"

namespace kp2 {

namespace {

// Exact L^2 over one tau-segment family: the convolution of two
// piecewise-constant profiles is piecewise linear with node values
// c_k = dtau * sum_i A_i B_{k-1-i}; int |pwl|^2 per segment is
// dtau/3 (|c_k|^2 + Re(c_k conj(c_{k+1})) + |c_{k+1}|^2).
double pwl_l2_sq(const std::vector<std::complex<double>>& c, double dtau) {
    double acc = 0;
    for (std::size_t k = 0; k + 1 < c.size(); ++k) {
        acc += std::norm(c[k]) + std::norm(c[k + 1]) +
               (c[k].real() * c[k + 1].real() + c[k].imag() * c[k + 1].imag());
    }
    return acc * dtau / 3.0;
}

struct EtaAccum {
    std::int64_t kmin = 0;
    std::vector<std::complex<double>> vals;  // node values on [kmin, kmin + size)
};

using RowPair = std::pair<const std::vector<const ModeNode*>*, const std::vector<const ModeNode*>*>;

// Contribution of all node pairs with a fixed output xi. Every row pair that
// lands on this xi feeds one shared accumulator per output eta, so cross terms
// between different (xi1, xi2) splittings are kept.
double xi_slice_l2_sq(const std::vector<RowPair>& row_pairs, double dtau) {
    std::map<std::int64_t, EtaAccum> by_eta;
    for (auto& [pa, pb] : row_pairs)
        for (auto* n1 : *pa)
            for (auto* n2 : *pb) {
                std::int64_t eta = n1->p.eta + n2->p.eta;
                const auto& A = n1->prof.cells;
                const auto& B = n2->prof.cells;
                std::int64_t base = n1->prof.first + n2->prof.first;  // support [base, base+m+n]
                std::int64_t m = std::int64_t(A.size()), n = std::int64_t(B.size());
                auto& acc = by_eta[eta];
                if (acc.vals.empty()) {
                    acc.kmin = base;
                    acc.vals.assign(std::size_t(m + n + 1), {});
                } else {
                    std::int64_t lo = std::min(acc.kmin, base);
                    std::int64_t hi =
                        std::max(acc.kmin + std::int64_t(acc.vals.size()), base + m + n + 1);
                    if (lo != acc.kmin || hi != acc.kmin + std::int64_t(acc.vals.size())) {
                        std::vector<std::complex<double>> grown(std::size_t(hi - lo));
                        std::copy(acc.vals.begin(), acc.vals.end(),
                                  grown.begin() + (acc.kmin - lo));
                        acc.kmin = lo;
                        acc.vals = std::move(grown);
                    }
                }
                // c_{base+1+j} += dtau * (A conv B)_j
                for (std::int64_t i = 0; i < m; ++i) {
                    auto ai = A[std::size_t(i)] * dtau;
                    auto* out = acc.vals.data() + (base + 1 + i - acc.kmin);
                    for (std::int64_t j = 0; j < n; ++j) out[j] += ai * B[std::size_t(j)];
                }
            }
    double total = 0;
    for (auto& [eta, acc] : by_eta) total += pwl_l2_sq(acc.vals, dtau);
    return total;
}

double convolve_l2_impl(const ModeSet& f1, const ModeSet& f2, bool parallel) {
    if (f1.empty() || f2.empty()) return 0.0;
    if (std::fabs(f1.dtau() - f2.dtau()) > 1e-15)
        throw std::invalid_argument("convolve_l2: tau-grid mismatch");
    if (!(f1.torus() == f2.torus()))
        throw std::invalid_argument("convolve_l2: torus mismatch");
    double dtau = f1.dtau();

    std::map<std::int64_t, std::vector<const ModeNode*>> rows1, rows2;
    for (auto& n : f1.nodes()) rows1[n.p.xi].push_back(&n);
    for (auto& n : f2.nodes()) rows2[n.p.xi].push_back(&n);

    // group node-row pairs by output xi
    std::map<std::int64_t, std::vector<RowPair>> slices;
    for (auto& [x1, r1] : rows1)
        for (auto& [x2, r2] : rows2) slices[x1 + x2].emplace_back(&r1, &r2);

    std::vector<double> partial(slices.size());
    std::vector<const std::vector<RowPair>*> work;
    for (auto& [xi, rp] : slices) work.push_back(&rp);
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::size_t s = 0; s < work.size(); ++s)
            partial[s] = xi_slice_l2_sq(*work[s], dtau);
    } else {
        for (std::size_t s = 0; s < work.size(); ++s) partial[s] = xi_slice_l2_sq(*work[s], dtau);
    }
    return std::sqrt(pairwise_sum(std::span<const double>(partial)));
}

}  // namespace

double convolve_l2(const ModeSet& f1, const ModeSet& f2) {
    return convolve_l2_impl(f1, f2, true);
}

double convolve_l2_serial(const ModeSet& f1, const ModeSet& f2) {
    return convolve_l2_impl(f1, f2, false);
}

BourgainBound bourgain_bound_full(std::int64_t N1, std::int64_t N2, std::int64_t L1,
                                  std::int64_t L2, std::int64_t I1, std::int64_t I2, double eps) {
    double Lmin = double(std::min(L1, L2)), Lmax = double(std::max(L1, L2));
    double Nmin = double(std::min(N1, N2)), Nmax = double(std::max(N1, N2));
    double Imin = double(std::min(I1, I2));
    BourgainBound b;
    b.term_kdv = std::sqrt(Lmin) * std::pow(Lmax, 0.25) * std::pow(Nmin, 0.25);
    b.term_interval = std::sqrt(Lmin) * std::sqrt(Imin);
    double branch0 = std::sqrt(Lmin) * std::pow(Lmax, 0.5 + eps) * std::pow(Nmin / Nmax, 0.25);
    double branch1 = std::sqrt(Lmin) * std::pow(Lmax, 0.25) * std::pow(Nmin, 0.25) * std::sqrt(Imin);
    b.min_branch = branch0 <= branch1 ? 0 : 1;
    b.term_min = std::min(branch0, branch1);
    b.value = b.term_kdv + b.term_interval + b.term_min;
    return b;
}

double bourgain_bound(std::int64_t N1, std::int64_t N2, std::int64_t L1, std::int64_t L2,
                      std::int64_t I1, std::int64_t I2, double eps) {
    return bourgain_bound_full(N1, N2, L1, L2, I1, I2, eps).value;
}

std::int64_t cordoba_window_width(std::int64_t N1, std::int64_t N2, double D, std::int64_t Lmax) {
    double n1sq = double(N1) * double(N1);
    return std::int64_t(std::ceil(D * D * double(N2) / n1sq + double(Lmax) / n1sq + 1.0 - 1e-12));
}

ModeSet restrict_xi(const ModeSet& f, XiInterval w) {
    ModeSet g(f.torus(), f.dtau(), f.shell(), w);
    for (auto& n : f.nodes())
        if (n.p.xi >= w.lo && n.p.xi < w.hi) g.add_node(n);
    return g;
}

std::vector<WindowPair> cordoba_window_decompose(const ModeSet& f1, const ModeSet& f2, double D) {
    if (f1.shell().N <= f2.shell().N)
        throw std::invalid_argument("cordoba_window_decompose: N2 < N1 required");
    for (auto* f : {&f1, &f2})
        for (auto& n : f->nodes())
            if (n.p.xi <= 0)
                throw std::invalid_argument("cordoba_window_decompose: xi > 0 assumed");
    std::int64_t Lmax = std::max(f1.shell().L, f2.shell().L);
    std::int64_t width = cordoba_window_width(f1.shell().N, f2.shell().N, D, Lmax);

    auto windows = [&](const ModeSet& f) {
        std::int64_t lo = f.window().lo;
        std::vector<XiInterval> out;
        for (std::int64_t a = lo; a < f.window().hi; a += width)
            out.push_back({a, std::min(a + width, f.window().hi)});
        return out;
    };
    std::vector<WindowPair> pairs;
    for (auto& w1 : windows(f1))
        for (auto& w2 : windows(f2)) {
            bool occ1 = false, occ2 = false;
            for (auto& n : f1.nodes()) occ1 |= (n.p.xi >= w1.lo && n.p.xi < w1.hi);
            for (auto& n : f2.nodes()) occ2 |= (n.p.xi >= w2.lo && n.p.xi < w2.hi);
            if (occ1 && occ2) pairs.push_back({w1, w2});
        }
    return pairs;
}

std::pair<ModeSet, ModeSet> make_section9_pair(std::int64_t N1, std::int64_t N2, double dtau) {
    auto m = std::int64_t(std::ceil(std::sqrt(double(N2)) - 1e-9));
    m = std::max<std::int64_t>(m, 1);
    DyadicShell s1{N1, 1, false}, s2{N2, 1, false};
    auto f1 = make_modeset(s1, {N1, N1 + 1}, {0, m - 1}, ProfileKind::characteristic, dtau);
    auto f2 = make_modeset(s2, {N2, N2 + 1}, {0, m - 1}, ProfileKind::characteristic, dtau);
    return {std::move(f1), std::move(f2)};
}

FitResult sharpness_bilinear_fit(const std::vector<std::int64_t>& N2_list, std::int64_t N1_ratio,
                                 double dtau, std::vector<std::pair<double, double>>* table) {
    if (N1_ratio < 1) throw std::invalid_argument("sharpness_bilinear_fit: N1_ratio >= 1");
    std::vector<std::pair<double, double>> samples;
    for (auto N2 : N2_list) {
        auto [f1, f2] = make_section9_pair(N1_ratio * N2, N2, dtau);
        double q = convolve_l2(f1, f2) / (l2_norm(f1) * l2_norm(f2));
        samples.emplace_back(double(N2), q);
        if (table) table->emplace_back(double(N2), q);
    }
    return fit_loglog(std::move(samples));
}

namespace {

std::int64_t dyadic_pow(std::int64_t e) { return std::int64_t(1) << e; }

struct CaseGeometry {
    DyadicShell s1, s2;
    XiInterval I1, I2;
    EtaInterval e1, e2;
    double dtau;
};

// Random shells and boxes kept small enough that the exact convolution stays
// cheap while still reaching N = N_max and L = N^3.
CaseGeometry random_geometry(std::uint64_t seed, std::uint64_t& ctr, std::int64_t N_max,
                             bool same_sign, bool high_low) {
    CaseGeometry g;
    int nexp_max = 0;
    while (dyadic_pow(nexp_max + 1) <= N_max) ++nexp_max;
    int n1e = int(uniform_int(seed, ctr++, 0, nexp_max));
    int n2e = high_low ? int(uniform_int(seed, ctr++, 0, std::max(0, n1e - 2)))
                       : int(uniform_int(seed, ctr++, 0, nexp_max));
    g.s1.N = dyadic_pow(n1e);
    g.s2.N = dyadic_pow(n2e);
    // L up to N^3, ratio capped so cell counts stay bounded
    int lcap1 = 3 * n1e, lcap2 = 3 * n2e;
    int l1e = int(uniform_int(seed, ctr++, 0, lcap1));
    int l2e = int(uniform_int(seed, ctr++, std::max(0, l1e - 3), std::min(lcap2, l1e + 3)));
    g.s1.L = dyadic_pow(l1e);
    g.s2.L = dyadic_pow(std::min(l2e, lcap2));
    g.dtau = double(std::min(g.s1.L, g.s2.L)) / 8.0;

    auto pick_interval = [&](std::int64_t N, bool negative) {
        std::int64_t w = std::min<std::int64_t>(N, uniform_int(seed, ctr++, 1, 4));
        std::int64_t lo = uniform_int(seed, ctr++, N, 2 * N - w);
        if (negative) return XiInterval{-lo - w, -lo};
        return XiInterval{lo, lo + w};
    };
    bool neg2 = !same_sign && (splitmix64(seed, ctr++) & 1);
    g.I1 = pick_interval(g.s1.N, false);
    g.I2 = pick_interval(g.s2.N, neg2);

    auto pick_eta = [&](std::int64_t N) {
        std::int64_t h = uniform_int(seed, ctr++, 0, 3);
        std::int64_t lo = uniform_int(seed, ctr++, -2 * N * N, 2 * N * N);
        return EtaInterval{lo, lo + h};
    };
    g.e1 = pick_eta(g.s1.N);
    g.e2 = pick_eta(g.s2.N);
    return g;
}

bool sum_vanishes(const CaseGeometry& g) {
    for (std::int64_t a = g.I1.lo; a < g.I1.hi; ++a)
        for (std::int64_t b = g.I2.lo; b < g.I2.hi; ++b)
            if (a + b == 0) return true;
    return false;
}

}  // namespace

SuiteResult run_prop41_suite(int cases, std::uint64_t seed, std::int64_t N_max) {
    SuiteResult out;
    std::uint64_t ctr = 0;
    int made = 0;
    while (made < cases) {
        CaseGeometry g = random_geometry(seed, ctr, N_max, false, false);
        if (sum_vanishes(g)) continue;
        auto f1 = make_modeset(g.s1, g.I1, g.e1, ProfileKind::gaussian, g.dtau, seed + ctr);
        auto f2 = make_modeset(g.s2, g.I2, g.e2, ProfileKind::gaussian, g.dtau, seed + ctr + 1);
        double lhs = convolve_l2(f1, f2);
        auto bb = bourgain_bound_full(g.s1.N, g.s2.N, g.s1.L, g.s2.L, g.I1.length(),
                                      g.I2.length());
        double denom = bb.value * l2_norm(f1) * l2_norm(f2);
        SuiteCase c;
        c.id = "p41-" + std::to_string(made);
        c.lhs = lhs;
        c.bound = denom;
        c.ratio = lhs / denom;
        c.detail = bb.min_branch;
        out.max_ratio = std::max(out.max_ratio, c.ratio);
        out.cases.push_back(std::move(c));
        ++made;
    }
    return out;
}

SuiteResult run_prop42_suite(int cases, std::uint64_t seed, std::int64_t N_max) {
    SuiteResult out;
    std::uint64_t ctr = 0;
    int made = 0;
    while (made < cases) {
        CaseGeometry g = random_geometry(seed, ctr, N_max, false, false);
        if (sum_vanishes(g)) continue;
        auto f1 = make_modeset(g.s1, g.I1, g.e1, ProfileKind::gaussian, g.dtau, seed + ctr);
        auto f2 = make_modeset(g.s2, g.I2, g.e2, ProfileKind::gaussian, g.dtau, seed + ctr + 1);
        auto [dmin, dmax] = transversality(f1, f2);
        if (dmin <= 1e-9) continue;  // the bound needs slope separation
        double lhs = convolve_l2(f1, f2);
        double Lmin = double(std::min(g.s1.L, g.s2.L));
        double Lmax = double(std::max(g.s1.L, g.s2.L));
        double Imin = double(std::min(g.I1.length(), g.I2.length()));
        double bound = std::sqrt(Imin) * std::sqrt(Lmin) * std::sqrt(1.0 + Lmax / dmin) *
                       l2_norm(f1) * l2_norm(f2);
        SuiteCase c;
        c.id = "p42-" + std::to_string(made);
        c.lhs = lhs;
        c.bound = bound;
        c.ratio = lhs / bound;
        out.max_ratio = std::max(out.max_ratio, c.ratio);
        out.cases.push_back(std::move(c));
        ++made;
    }
    return out;
}

SuiteResult run_prop43_suite(int cases, std::uint64_t seed, std::int64_t N_max) {
    SuiteResult out;
    std::uint64_t ctr = 0;
    int made = 0;
    while (made < cases) {
        CaseGeometry g = random_geometry(seed, ctr, N_max, /*same_sign=*/true, /*high_low=*/true);
        if (g.s2.N * 4 > g.s1.N) continue;  // N2 << N1
        auto f1 = make_modeset(g.s1, g.I1, g.e1, ProfileKind::gaussian, g.dtau, seed + ctr);
        auto f2 = make_modeset(g.s2, g.I2, g.e2, ProfileKind::gaussian, g.dtau, seed + ctr + 1);
        double lhs = convolve_l2(f1, f2);
        double A = double(std::max(g.I1.length(), g.I2.length()));
        double Lmin = double(std::min(g.s1.L, g.s2.L));
        double Lmax = double(std::max(g.s1.L, g.s2.L));
        double N2 = double(g.s2.N);
        double bound = std::sqrt(1.0 + A) * std::sqrt(Lmin) * std::pow(1.0 + Lmax * N2, 0.25) *
                       l2_norm(f1) * l2_norm(f2);
        SuiteCase c;
        c.id = "p43-" + std::to_string(made);
        c.lhs = lhs;
        c.bound = bound;
        c.ratio = lhs / bound;
        out.max_ratio = std::max(out.max_ratio, c.ratio);
        out.cases.push_back(std::move(c));
        ++made;
    }
    return out;
}

double galilean_covariance_error(std::uint64_t seed) {
    double worst = 0;
    std::uint64_t ctr = 0;
    for (int rep = 0; rep < 6; ++rep) {
        std::int64_t N1 = dyadic_pow(int(uniform_int(seed, ctr++, 2, 5)));
        std::int64_t N2 = dyadic_pow(int(uniform_int(seed, ctr++, 1, 3)));
        DyadicShell s1{N1, 2, false}, s2{N2, 2, false};
        // eta multiples of xi keep every induced phase shift integral
        auto build = [&](DyadicShell s, std::int64_t mult, std::uint64_t sd) {
            ModeSet f({}, 0.25, s, {s.N, s.N + 2});
            std::uint64_t c2 = 0;
            for (std::int64_t xi = s.N; xi < s.N + 2; ++xi)
                for (std::int64_t m = 0; m <= 2; ++m) {
                    FreqNode p{xi, (mult + m) * xi};
                    double w = omega(p, {});
                    ModeNode n;
                    n.p = p;
                    n.prof.first = std::llround((w - double(s.L)) / 0.25);
                    n.prof.cells.resize(std::size_t(2 * s.L / 0.25));
                    for (auto& v : n.prof.cells) v = complex_gaussian(sd, c2++);
                    f.add_node(std::move(n));
                }
            return f;
        };
        auto f1 = build(s1, uniform_int(seed, ctr++, -3, 3), seed + 100 + rep);
        auto f2 = build(s2, uniform_int(seed, ctr++, -3, 3), seed + 200 + rep);
        double base = convolve_l2(f1, f2);
        std::int64_t A = uniform_int(seed, ctr++, -4, 4);
        double sheared = convolve_l2(galilean_shear_recentred(f1, A),
                                     galilean_shear_recentred(f2, A));
        worst = std::max(worst, std::fabs(sheared - base) / base);
    }
    return worst;
}

}  // namespace kp2

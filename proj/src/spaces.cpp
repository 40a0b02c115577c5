#include "kp2/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kp2/rng.hpp"

namespace kp2 {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kMuMax = 400.0;
constexpr double kMuStep = 0.02;

double psi(double s) { return s > 0 ? std::exp(-1.0 / s) : 0.0; }

}  // namespace

double bump_eta0(double t) {
    double a = std::fabs(t);
    if (a <= 1.0) return 1.0;
    if (a >= 2.0) return 0.0;
    double up = psi(2.0 - a);
    return up / (up + psi(a - 1.0));
}

double bump_eta0_hat(double mu) {
    static const std::vector<double> table = [] {
        std::vector<double> tab(std::size_t(kMuMax / kMuStep) + 2);
        const int n = 4096;  // Simpson on [0, 2], integrand is even
        const double h = 2.0 / n;
        for (std::size_t k = 0; k < tab.size(); ++k) {
            double m = double(k) * kMuStep;
            double acc = bump_eta0(0.0);  // cos(0) * eta0(0), endpoint weight 1
            for (int i = 1; i < n; ++i)
                acc += bump_eta0(i * h) * std::cos(m * i * h) * (i % 2 ? 4.0 : 2.0);
            acc += bump_eta0(2.0) * std::cos(2.0 * m);
            tab[k] = 2.0 * acc * h / 3.0;  // times 2: negative half by symmetry
        }
        return tab;
    }();
    double a = std::fabs(mu);
    if (a >= kMuMax) return 0.0;
    double x = a / kMuStep;
    auto k = std::size_t(x);
    double fr = x - double(k);
    return table[k] * (1.0 - fr) + table[k + 1] * fr;
}

double modulation_cutoff(std::int64_t L, bool bottom, double sigma) {
    if (bottom) return bump_eta0(sigma);
    double s = sigma / double(L);
    return bump_eta0(0.5 * s) - bump_eta0(s);
}

namespace {

void check_shell_support(const ModeSet& f, std::int64_t N, const char* who) {
    for (auto& n : f.nodes())
        if (shell_of(n.p.xi) != N)
            throw std::domain_error(std::string(who) + ": support escapes the N-shell");
}

// Shared sum over modulation shells; weight(L, bottom) supplies the factors.
template <typename WeightFn>
double shell_weighted_sum(const ModeSet& f, WeightFn weight) {
    double dtau = f.dtau();
    double sig_max = 0;
    for (auto& n : f.nodes()) {
        double w = omega(n.p, f.torus());
        double lo = double(n.prof.first) * dtau - w;
        double hi = lo + double(n.prof.cells.size()) * dtau;
        sig_max = std::max({sig_max, std::fabs(lo), std::fabs(hi)});
    }
    double total = 0;
    for (std::int64_t L = 0;; L = (L == 0 ? 1 : 2 * L)) {
        bool bottom = (L == 0);
        double mass2 = 0;
        for (auto& n : f.nodes()) {
            double w = omega(n.p, f.torus());
            for (std::size_t c = 0; c < n.prof.cells.size(); ++c) {
                double sigma = (double(n.prof.first) + double(c) + 0.5) * dtau - w;
                double cut = modulation_cutoff(bottom ? 1 : L, bottom, sigma);
                if (cut != 0.0) mass2 += cut * cut * std::norm(n.prof.cells[c]) * dtau;
            }
        }
        if (mass2 > 0) total += weight(bottom ? 1 : L, bottom) * std::sqrt(mass2);
        if (!bottom && double(L) > sig_max) break;  // eta_L vanishes below L
    }
    return total;
}

}  // namespace

double xnorm(const ModeSet& f, std::int64_t N) {
    check_shell_support(f, N, "xnorm");
    double n3 = double(N) * double(N) * double(N);
    return shell_weighted_sum(f, [n3](std::int64_t L, bool) {
        return std::sqrt(double(L)) * std::pow(1.0 + double(L) / n3, 0.25);
    });
}

double xnorm_b(const ModeSet& f, std::int64_t N, double b) {
    check_shell_support(f, N, "xnorm_b");
    return shell_weighted_sum(f, [b](std::int64_t L, bool) { return std::pow(double(L), b); });
}

double nnorm(const ModeSet& f, std::int64_t N, double alpha) {
    check_shell_support(f, N, "nnorm");
    ModeSet g(f.torus(), f.dtau(), f.shell(), f.window());
    double na = std::pow(double(N), alpha);
    for (auto& n : f.nodes()) {
        ModeNode m = n;
        double w = omega(n.p, f.torus());
        for (std::size_t c = 0; c < m.prof.cells.size(); ++c) {
            double tau = (double(m.prof.first) + double(c) + 0.5) * f.dtau();
            m.prof.cells[c] /= std::complex<double>(tau - w, na);
        }
        g.add_node(std::move(m));
    }
    return xnorm(g, N);
}

ModeSet window_modeset(const ModeSet& f, double scale, double t_k) {
    // multiply by eta0(scale (t - t_k)): convolve profiles with
    // (1/2pi) e^{-i sigma t_k} (1/scale) eta0_hat(sigma / scale) on the grid
    double dtau = f.dtau();
    auto half = std::int64_t(std::ceil(kMuMax * 0.999 * scale / dtau));
    std::vector<std::complex<double>> kernel(std::size_t(2 * half + 1));
    for (std::int64_t j = -half; j <= half; ++j) {
        double sigma = double(j) * dtau;
        double mag = bump_eta0_hat(sigma / scale) / (scale * kTwoPi) * dtau;
        kernel[std::size_t(j + half)] = std::polar(mag, -sigma * t_k);
    }
    ModeSet g(f.torus(), f.dtau(), f.shell(), f.window());
    for (auto& n : f.nodes()) {
        ModeNode m;
        m.p = n.p;
        m.prof.first = n.prof.first - half;
        m.prof.cells.assign(n.prof.cells.size() + std::size_t(2 * half), {});
        for (std::size_t i = 0; i < n.prof.cells.size(); ++i) {
            auto v = n.prof.cells[i];
            auto* out = m.prof.cells.data() + i;
            for (std::size_t j = 0; j < kernel.size(); ++j) out[j] += v * kernel[j];
        }
        g.add_node(std::move(m));
    }
    return g;
}

namespace {

std::vector<double> tk_grid(std::int64_t N, const WindowSpec& w) {
    if (w.alpha == 0.0) return {0.5 * (w.t_lo + w.t_hi)};
    double scale = std::pow(double(N), w.alpha);
    double spacing = 1.0 / (scale * 4.0 * double(w.grid_refine));
    double pad = 3.0 / scale;
    std::vector<double> tks;
    for (double t = w.t_lo - pad; t <= w.t_hi + pad + 0.5 * spacing; t += spacing)
        tks.push_back(t);
    return tks;
}

template <typename NormFn>
double windowed_sup(const ModeSet& f, std::int64_t N, const WindowSpec& w, NormFn norm) {
    double scale = w.alpha == 0.0 ? 1.0 : std::pow(double(N), w.alpha);
    double best = 0;
    for (double tk : tk_grid(N, w)) best = std::max(best, norm(window_modeset(f, scale, tk)));
    return best;
}

}  // namespace

double fnorm(const ModeSet& f, std::int64_t N, const WindowSpec& w) {
    return windowed_sup(f, N, w, [N](const ModeSet& g) { return xnorm(g, N); });
}

double fnorm_b(const ModeSet& f, std::int64_t N, double b, const WindowSpec& w) {
    return windowed_sup(f, N, w, [N, b](const ModeSet& g) { return xnorm_b(g, N, b); });
}

SpectralField sample_at_time(const ModeSet& f, double t) {
    SpectralField u(f.torus());
    double dtau = f.dtau();
    for (auto& n : f.nodes()) {
        std::complex<double> acc = 0;
        for (std::size_t c = 0; c < n.prof.cells.size(); ++c) {
            double center = (double(n.prof.first) + double(c) + 0.5) * dtau;
            double x = 0.5 * t * dtau;
            double sinc = x == 0.0 ? 1.0 : std::sin(x) / x;
            acc += n.prof.cells[c] * std::polar(dtau * sinc, t * center);
        }
        u.add(n.p, acc / kTwoPi);
    }
    return u;
}

double energy_norm(const std::vector<SpectralField>& traj, double s) {
    if (traj.empty()) throw std::invalid_argument("energy_norm: empty trajectory");
    double low2 = 0;
    for (auto& m : traj[0].modes())
        if (m.p.xi != 0 && std::llabs(m.p.xi) < 8) low2 += std::norm(m.amp);

    std::int64_t nmax = 1;
    for (auto& m : traj[0].modes())
        if (m.p.xi != 0) nmax = std::max(nmax, shell_of(m.p.xi));
    double total = low2;
    for (std::int64_t N = 8; N <= nmax; N *= 2) {
        double sup2 = 0;
        for (auto& u : traj) {
            double band2 = 0;
            for (auto& m : u.modes())
                if (m.p.xi != 0 && shell_of(m.p.xi) == N) band2 += std::norm(m.amp);
            sup2 = std::max(sup2, band2);
        }
        total += std::pow(double(N), 2 * s) * sup2;
    }
    return std::sqrt(total);
}

namespace {

// Random single-shell space-time data with profiles wide enough that dtau = 1
// resolves every occupied modulation shell.
ModeSet random_localized_modeset(std::int64_t N, std::uint64_t seed) {
    DyadicShell shell{N, 64, false};
    ModeSet f({}, 1.0, shell, {N, 2 * N});
    std::uint64_t ctr = 0;
    for (int i = 0; i < 3; ++i) {
        FreqNode p{uniform_int(seed, ctr++, N, 2 * N - 1),
                   uniform_int(seed, ctr++, -N * N, N * N)};
        double w = omega(p, {});
        std::int64_t L = 8 << uniform_int(seed, ctr++, 0, 3);
        ModeNode n;
        n.p = p;
        n.prof.first = std::int64_t(std::floor(w - double(L)));
        n.prof.cells.resize(std::size_t(2 * L));
        for (auto& c : n.prof.cells) c = complex_gaussian(seed, ctr++);
        f.add_node(std::move(n));
    }
    return f;
}

}  // namespace

ProbeResult embedding_probe(const std::vector<std::int64_t>& N_list, double s,
                            std::uint64_t suite_seed) {
    ProbeResult out;
    std::vector<std::pair<double, double>> samples;
    for (auto N : N_list) {
        auto f = random_localized_modeset(N, suite_seed + std::uint64_t(N));
        double sup_h = 0;
        for (int i = 0; i <= 256; ++i)
            sup_h = std::max(sup_h, sobolev_norm(sample_at_time(f, i / 256.0), s));
        WindowSpec w;
        w.alpha = 0.5;
        double denom = std::pow(double(N), s) * fnorm(f, N, w);
        double quot = sup_h / denom;
        out.max_quotient = std::max(out.max_quotient, quot);
        samples.emplace_back(double(N), quot);
    }
    out.fit = fit_loglog(std::move(samples));
    return out;
}

ProbeResult slack_probe(double b, const std::vector<double>& T_list, std::uint64_t seed) {
    if (b >= 0.5) throw std::invalid_argument("slack_probe: b < 1/2 required");
    ProbeResult out;
    const std::int64_t N = 4;
    std::vector<std::pair<double, double>> samples;
    for (double T : T_list) {
        // u = eta0(t/T) S(t) f: tau-profile a_p T eta0_hat(T (tau - omega))
        DyadicShell shell{N, 2, false};
        double dtau = 0.25;
        ModeSet f({}, dtau, shell, {N, 2 * N});
        std::uint64_t ctr = 0;
        for (int i = 0; i < 3; ++i) {
            FreqNode p{uniform_int(seed, ctr++, N, 2 * N - 1),
                       uniform_int(seed, ctr++, -N * N, N * N)};
            double w = omega(p, {});
            auto amp = complex_gaussian(seed, ctr++);
            auto half = std::int64_t(std::ceil(kMuMax * 0.999 / (T * dtau)));
            ModeNode n;
            n.p = p;
            n.prof.first = std::int64_t(std::floor(w / dtau)) - half;
            n.prof.cells.resize(std::size_t(2 * half + 1));
            for (std::size_t c = 0; c < n.prof.cells.size(); ++c) {
                double tau = (double(n.prof.first) + double(c) + 0.5) * dtau;
                n.prof.cells[c] = amp * T * bump_eta0_hat(T * (tau - w));
            }
            f.add_node(std::move(n));
        }
        WindowSpec w;
        w.alpha = 0.5;
        w.t_lo = -T;
        w.t_hi = T;
        double quot = fnorm_b(f, N, b, w) / fnorm(f, N, w);
        samples.emplace_back(T, quot);
        out.max_quotient = std::max(out.max_quotient, quot);
    }
    out.fit = fit_loglog(std::move(samples));
    return out;
}

}  // namespace kp2

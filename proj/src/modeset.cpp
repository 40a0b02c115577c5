#include "kp2/modeset.hpp"

#include <cmath>
#include <stdexcept>

#include "kp2/rng.hpp"

namespace kp2 {

void ModeSet::validate() const {
    double L = double(shell_.L);
    for (auto& n : nodes_) {
        if (shell_of(n.p.xi) != shell_.N)
            throw std::domain_error("ModeSet: node outside the N-shell");
        if (n.p.xi < window_.lo || n.p.xi >= window_.hi)
            throw std::domain_error("ModeSet: node outside the xi-window");
        double w = omega(n.p, torus_);
        double lo = double(n.prof.first) * dtau_;
        double hi = double(n.prof.first + std::int64_t(n.prof.cells.size())) * dtau_;
        if (lo < w - L - 1e-9 || hi > w + L + 1e-9)
            throw std::domain_error("ModeSet: tau-support escapes the L-shell");
    }
}

ModeSet make_modeset(DyadicShell shell, XiInterval I, EtaInterval eta_box, ProfileKind kind,
                     double dtau, std::uint64_t seed, TorusSpec torus) {
    if (!is_dyadic(shell.N) || !is_dyadic(shell.L))
        throw std::invalid_argument("make_modeset: N and L must be dyadic");
    if (dtau > double(shell.L) / 8.0 + 1e-12)
        throw std::invalid_argument("make_modeset: dtau <= L/8 required");
    ModeSet f(torus, dtau, shell, I);
    std::uint64_t ctr = 0;
    for (std::int64_t xi = I.lo; xi < I.hi; ++xi) {
        if (xi == 0 || shell_of(xi) != shell.N) continue;
        for (std::int64_t eta = eta_box.lo; eta <= eta_box.hi; ++eta) {
            FreqNode p{xi, eta};
            double w = omega(p, torus);
            double L = double(shell.L);
            auto first = std::int64_t(std::ceil((w - L) / dtau - 1e-12));
            auto last = std::int64_t(std::floor((w + L) / dtau + 1e-12));  // exclusive cell end
            if (last <= first) continue;
            ModeNode n;
            n.p = p;
            n.prof.first = first;
            n.prof.cells.resize(std::size_t(last - first));
            for (auto& c : n.prof.cells)
                c = (kind == ProfileKind::characteristic) ? std::complex<double>{1.0, 0.0}
                                                          : complex_gaussian(seed, ctr++);
            f.add_node(std::move(n));
        }
    }
    if (f.empty()) throw std::invalid_argument("make_modeset: no admissible nodes in the box");
    return f;
}

double l2_norm(const ModeSet& f) {
    double acc = 0;
    for (auto& n : f.nodes())
        for (auto& c : n.prof.cells) acc += std::norm(c);
    return std::sqrt(acc * f.dtau());
}

ModeSet scale(ModeSet f, std::complex<double> c) {
    for (auto& n : f.nodes())
        for (auto& v : n.prof.cells) v *= c;
    return f;
}

ModeSet galilean_shear_recentred(const ModeSet& f, std::int64_t A) {
    ModeSet g(f.torus(), f.dtau(), f.shell(), f.window());
    for (auto& n : f.nodes()) {
        FreqNode q = galilean_shift(n.p, A);
        double shift = (omega(q, f.torus()) - omega(n.p, f.torus())) / f.dtau();
        auto cells = std::llround(shift);
        if (std::fabs(shift - double(cells)) > 1e-9)
            throw std::domain_error(
                "galilean_shear_recentred: induced phase is off the tau-grid");
        ModeNode m;
        m.p = q;
        m.prof.first = n.prof.first + cells;
        m.prof.cells = n.prof.cells;
        g.add_node(std::move(m));
    }
    return g;
}

std::pair<double, double> transversality(const ModeSet& f1, const ModeSet& f2) {
    if (f1.empty() || f2.empty())
        throw std::invalid_argument("transversality: nonempty sets required");
    double inv_g1 = 1.0 / f1.torus().gamma(), inv_g2 = 1.0 / f2.torus().gamma();
    double mn = 0, mx = 0;
    bool first = true;
    for (auto& a : f1.nodes())
        for (auto& b : f2.nodes()) {
            double gap = std::fabs(double(a.p.eta) * inv_g1 / double(a.p.xi) -
                                   double(b.p.eta) * inv_g2 / double(b.p.xi));
            if (first) {
                mn = mx = gap;
                first = false;
            } else {
                mn = std::min(mn, gap);
                mx = std::max(mx, gap);
            }
        }
    return {mn, mx};
}

}  // namespace kp2

#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "kp2/field.hpp"
#include "kp2/lattice.hpp"

namespace kp2 {

// Piecewise-constant function on the global tau-grid: value cells[i] on
// [(first + i) dtau, (first + i + 1) dtau).
struct TauProfile {
    std::int64_t first = 0;
    std::vector<std::complex<double>> cells;
};

struct ModeNode {
    FreqNode p;
    TauProfile prof;
};

enum class ProfileKind { characteristic, gaussian };

struct EtaInterval {
    std::int64_t lo = 0;  // inclusive
    std::int64_t hi = 0;  // inclusive
};

// Space-time Fourier data: frequency nodes each carrying a tau-profile
// supported in the declared modulation shell around omega(xi, eta).
class ModeSet {
public:
    ModeSet() = default;
    ModeSet(TorusSpec torus, double dtau, DyadicShell shell, XiInterval window)
        : torus_(torus), dtau_(dtau), shell_(shell), window_(window) {}

    void add_node(ModeNode n) { nodes_.push_back(std::move(n)); }
    const std::vector<ModeNode>& nodes() const { return nodes_; }
    std::vector<ModeNode>& nodes() { return nodes_; }
    double dtau() const { return dtau_; }
    const DyadicShell& shell() const { return shell_; }
    const XiInterval& window() const { return window_; }
    const TorusSpec& torus() const { return torus_; }
    bool empty() const { return nodes_.empty(); }

    // |xi| in the N-shell, xi in the window, tau-support inside the L-shell.
    void validate() const;

private:
    TorusSpec torus_;
    double dtau_ = 0.125;
    DyadicShell shell_;
    XiInterval window_;
    std::vector<ModeNode> nodes_;
};

// Populates the box I x eta_box with nodes whose tau-support is centered on
// omega(xi, eta) with half-width the shell's L. Requires dtau <= L/8.
ModeSet make_modeset(DyadicShell shell, XiInterval I, EtaInterval eta_box, ProfileKind kind,
                     double dtau, std::uint64_t seed = 0, TorusSpec torus = {});

// L^2(R x Z^2) norm: sum over nodes of dtau * sum |cell|^2, square-rooted.
double l2_norm(const ModeSet& f);

ModeSet scale(ModeSet f, std::complex<double> c);

// Shear (xi, eta) -> (xi, eta + A xi) with tau-profiles recentred by the
// induced phase shift omega(sheared) - omega(original). Requires the shift to
// land on the tau-grid (it does whenever gamma = 1 and dtau divides 1).
ModeSet galilean_shear_recentred(const ModeSet& f, std::int64_t A);

// (min, max) over node pairs of the slope gap |eta1/xi1 - eta2/xi2| in
// effective frequency units.
std::pair<double, double> transversality(const ModeSet& f1, const ModeSet& f2);

}  // namespace kp2

#include "kp2/field.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "kp2/rng.hpp"

namespace kp2 {

namespace {

auto mode_less = [](const Mode& m, const FreqNode& p) { return m.p < p; };

}  // namespace

void SpectralField::set(FreqNode p, std::complex<double> a) {
    auto it = std::lower_bound(modes_.begin(), modes_.end(), p, mode_less);
    if (it != modes_.end() && it->p == p)
        it->amp = a;
    else
        modes_.insert(it, Mode{p, a});
}

void SpectralField::add(FreqNode p, std::complex<double> a) {
    auto it = std::lower_bound(modes_.begin(), modes_.end(), p, mode_less);
    if (it != modes_.end() && it->p == p)
        it->amp += a;
    else
        modes_.insert(it, Mode{p, a});
}

std::complex<double> SpectralField::at(FreqNode p) const {
    auto it = std::lower_bound(modes_.begin(), modes_.end(), p, mode_less);
    if (it != modes_.end() && it->p == p) return it->amp;
    return {};
}

std::pair<std::int64_t, std::int64_t> SpectralField::box() const {
    std::int64_t bx = 0, by = 0;
    for (auto& m : modes_) {
        bx = std::max<std::int64_t>(bx, std::llabs(m.p.xi));
        by = std::max<std::int64_t>(by, std::llabs(m.p.eta));
    }
    return {bx, by};
}

void SpectralField::validate() const {
    for (auto& m : modes_) {
        if (m.p.xi == 0 && std::abs(m.amp) != 0.0)
            throw std::domain_error("SpectralField: nonzero amplitude at xi = 0");
    }
    if (real_valued_) {
        for (auto& m : modes_) {
            auto mirror = at({-m.p.xi, -m.p.eta});
            if (std::abs(mirror - std::conj(m.amp)) > 1e-12 * (1.0 + std::abs(m.amp)))
                throw std::domain_error("SpectralField: Hermitian symmetry violated");
        }
    }
}

double plancherel_constant(const TorusSpec& torus) {
    const double two_pi = 6.283185307179586476925286766559;
    return two_pi * two_pi * torus.gamma();
}

double l2_coeff_norm(const SpectralField& f) {
    double s = 0;
    for (auto& m : f.modes()) s += std::norm(m.amp);
    return std::sqrt(s);
}

double l2_norm(const SpectralField& f) {
    return std::sqrt(plancherel_constant(f.torus())) * l2_coeff_norm(f);
}

double sobolev_norm(const SpectralField& f, double s) {
    double acc = 0;
    for (auto& m : f.modes()) acc += std::pow(1.0 + double(std::llabs(m.p.xi)), 2 * s) * std::norm(m.amp);
    return std::sqrt(acc);
}

SpectralField propagate(const SpectralField& f, double t) {
    SpectralField g(f.torus(), f.real_valued());
    for (auto& m : f.modes()) {
        if (m.p.xi == 0) continue;  // mean-zero is preserved, never created
        g.set(m.p, m.amp * std::polar(1.0, t * omega(m.p, f.torus())));
    }
    return g;
}

SpectralField galilean_shear(const SpectralField& f, std::int64_t A) {
    SpectralField g(f.torus(), f.real_valued());
    for (auto& m : f.modes()) g.set(galilean_shift(m.p, A), m.amp);
    return g;
}

SpectralField make_extremizer_linear(std::int64_t N, TorusSpec torus) {
    if (N < 1) throw std::invalid_argument("make_extremizer_linear: N >= 1");
    SpectralField f(torus);
    auto m = std::int64_t(std::floor(std::sqrt(double(N))));
    while ((m + 1) * (m + 1) <= N) ++m;  // exact floor(sqrt(N))
    while (m * m > N) --m;
    for (std::int64_t eta = 0; eta <= m; ++eta) f.set({N, eta}, 1.0);
    return f;
}

SpectralField make_extremizer_shorttime(std::int64_t N, double alpha, std::int64_t xi0,
                                        TorusSpec torus) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("make_extremizer_shorttime: alpha in (0, 1]");
    if (shell_of(xi0) != N)
        throw std::invalid_argument("make_extremizer_shorttime: |xi0| not in [N, 2N)");
    SpectralField f(torus);
    auto top = std::int64_t(std::floor(std::pow(double(N), 0.5 * (1.0 + alpha)) + 1e-9));
    for (std::int64_t eta = 0; eta <= top; ++eta) f.set({xi0, eta}, 1.0);
    return f;
}

SpectralField make_band_field(std::int64_t N, std::int64_t k, XiInterval I, std::uint64_t seed,
                              TorusSpec torus) {
    if (k < 1 || k > N) throw std::invalid_argument("make_band_field: 1 <= k <= N required");
    if (I.length() > std::max<std::int64_t>(1, N / k))
        throw std::invalid_argument("make_band_field: |I| <= max(1, N/k) required");
    SpectralField f(torus);
    std::uint64_t ctr = 0;
    for (std::int64_t xi = I.lo; xi < I.hi; ++xi) {
        if (shell_of(xi) != N) continue;
        for (std::int64_t eta = k * N * N; eta <= (k + 1) * N * N; ++eta)
            f.set({xi, eta}, complex_gaussian(seed, ctr++));
    }
    if (f.empty()) throw std::invalid_argument("make_band_field: empty band");
    return f;
}

SpectralField make_random_field(std::int64_t N, int count, std::uint64_t seed, double eta_const,
                                bool real_valued, TorusSpec torus) {
    SpectralField f(torus, real_valued);
    auto etamax = std::int64_t(eta_const * double(N) * double(N));
    std::uint64_t ctr = 0;
    int placed = 0;
    while (placed < count) {
        std::int64_t xi = uniform_int(seed, ctr++, N, 2 * N - 1);
        if (splitmix64(seed, ctr++) & 1) xi = -xi;
        std::int64_t eta = uniform_int(seed, ctr++, -etamax, etamax);
        auto a = complex_gaussian(seed, ctr++);
        if (real_valued) {
            f.set({xi, eta}, a);
            f.set({-xi, -eta}, std::conj(a));
        } else {
            f.set({xi, eta}, a);
        }
        ++placed;
    }
    return f;
}

void write_field(std::ostream& os, const SpectralField& f) {
    os << "# kp2-field gamma " << f.torus().num << "/" << f.torus().den << " real "
       << (f.real_valued() ? 1 : 0) << "\n";
    os.precision(17);
    for (auto& m : f.modes())
        os << m.p.xi << " " << m.p.eta << " " << m.amp.real() << " " << m.amp.imag() << "\n";
}

SpectralField read_field(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("read_field: empty stream");
    std::istringstream hd(line);
    std::string hash, tag, gword, rword;
    std::int64_t num = 1, den = 1;
    int real_flag = 0;
    char slash = 0;
    hd >> hash >> tag >> gword >> num >> slash >> den >> rword >> real_flag;
    if (hash != "#" || tag != "kp2-field" || gword != "gamma" || slash != '/' || rword != "real")
        throw std::runtime_error("read_field: bad header");
    SpectralField f(TorusSpec(num, den), real_flag != 0);
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::int64_t xi, eta;
        double re, im;
        if (!(ls >> xi >> eta >> re >> im)) throw std::runtime_error("read_field: bad mode line");
        f.set({xi, eta}, {re, im});
    }
    return f;
}

void write_field_file(const std::string& path, const SpectralField& f) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_field_file: cannot open " + path);
    write_field(os, f);
}

SpectralField read_field_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("read_field_file: cannot open " + path);
    return read_field(is);
}

}  // namespace kp2

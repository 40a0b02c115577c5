#include "kp2/quadrature.hpp"

#include <fftw3.h>
#include <omp.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "kp2/reduce.hpp"

namespace kp2 {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// FFTW's planner is not reentrant; plans are cached per grid size and executed
// on per-thread buffers via the thread-safe execute_dft interface.
class PlanCache {
public:
    static fftw_plan get(int nx, int ny) {
        static PlanCache cache;
        std::lock_guard<std::mutex> lock(cache.mu_);
        auto key = std::make_pair(nx, ny);
        auto it = cache.plans_.find(key);
        if (it != cache.plans_.end()) return it->second;
        auto* tmp = fftw_alloc_complex(std::size_t(nx) * ny);
        fftw_plan p = fftw_plan_dft_2d(nx, ny, tmp, tmp, FFTW_BACKWARD,
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(tmp);
        cache.plans_.emplace(key, p);
        return p;
    }

private:
    PlanCache() = default;
    std::mutex mu_;
    std::map<std::pair<int, int>, fftw_plan> plans_;
};

int good_fft_size(std::int64_t n) {
    if (n < 1) n = 1;
    for (std::int64_t s = n;; ++s) {
        std::int64_t m = s;
        for (int f : {2, 3, 5})
            while (m % f == 0) m /= f;
        if (m == 1) return int(s);
    }
}

struct Prepared {
    std::vector<int> ix, iy;
    std::vector<std::complex<double>> amp;
    std::vector<double> freq;  // recentred omega per mode
    int mx = 1, my = 1;
    double measure = 0;  // (2pi/mx) * (2pi gamma/my)
    double freq_radius = 0;
};

Prepared prepare(const SpectralField& f, int oversample, bool recentre) {
    if (oversample < 2) throw std::invalid_argument("quadrature: spatial_oversample >= 2");
    Prepared pr;
    std::int64_t shear = recentre ? best_recentre_shear(f) : 0;

    std::int64_t xlo = 0, xhi = 0, ylo = 0, yhi = 0;
    bool first = true;
    std::vector<FreqNode> nodes;
    nodes.reserve(f.size());
    for (auto& m : f.modes()) {
        if (m.p.xi == 0) {
            if (std::abs(m.amp) == 0.0) continue;
            throw std::domain_error("lp_spacetime_norm: field must be mean-zero");
        }
        FreqNode p = galilean_shift(m.p, shear);
        nodes.push_back(p);
        pr.amp.push_back(m.amp);
        if (first) {
            xlo = xhi = p.xi;
            ylo = yhi = p.eta;
            first = false;
        } else {
            xlo = std::min(xlo, p.xi);
            xhi = std::max(xhi, p.xi);
            ylo = std::min(ylo, p.eta);
            yhi = std::max(yhi, p.eta);
        }
    }
    if (first) return pr;

    std::int64_t sx, sy;  // largest index after translation
    if (recentre) {
        sx = xhi - xlo;
        sy = yhi - ylo;
    } else {
        // bounding-box grid centered at 0
        std::int64_t bx = std::max(std::llabs(xlo), std::llabs(xhi));
        std::int64_t by = std::max(std::llabs(ylo), std::llabs(yhi));
        xlo = -bx;
        ylo = -by;
        sx = 2 * bx;
        sy = 2 * by;
    }
    pr.mx = good_fft_size(std::int64_t(oversample) * (sx + 1));
    pr.my = good_fft_size(std::int64_t(oversample) * (sy + 1));

    double wlo = 0, whi = 0;
    pr.freq.reserve(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        double w = omega(nodes[i], f.torus());
        pr.freq.push_back(w);
        if (i == 0)
            wlo = whi = w;
        else {
            wlo = std::min(wlo, w);
            whi = std::max(whi, w);
        }
        std::int64_t jx = nodes[i].xi - xlo, jy = nodes[i].eta - ylo;
        pr.ix.push_back(int(jx % pr.mx));
        pr.iy.push_back(int(jy % pr.my));
    }
    double c = 0.5 * (wlo + whi);  // common phase; |u| is unaffected
    for (auto& w : pr.freq) w -= c;
    pr.freq_radius = 0.5 * (whi - wlo);
    pr.measure = (kTwoPi / pr.mx) * (kTwoPi * f.torus().gamma() / pr.my);
    return pr;
}

double spatial_integral_at(const Prepared& pr, double t, int p, std::complex<double>* buf) {
    std::size_t n = std::size_t(pr.mx) * pr.my;
    std::fill(buf, buf + n, std::complex<double>{});
    for (std::size_t i = 0; i < pr.amp.size(); ++i)
        buf[std::size_t(pr.ix[i]) * pr.my + pr.iy[i]] += pr.amp[i] * std::polar(1.0, t * pr.freq[i]);
    fftw_plan plan = PlanCache::get(pr.mx, pr.my);
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(buf),
                     reinterpret_cast<fftw_complex*>(buf));
    double acc = 0;
    if (p == 4) {
        for (std::size_t i = 0; i < n; ++i) {
            double a = std::norm(buf[i]);
            acc += a * a;
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) acc += std::norm(buf[i]);
    }
    return acc * pr.measure;
}

double simpson(const std::vector<double>& vals, double h) {
    std::vector<double> weighted(vals.size());
    std::size_t m = vals.size() - 1;  // even
    for (std::size_t j = 0; j <= m; ++j) {
        double w = (j == 0 || j == m) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
        weighted[j] = w * vals[j];
    }
    return pairwise_sum(std::span<const double>(weighted)) * h / 3.0;
}

// Integral of |u|^p over [0, t_end] x T^2 at a fixed even sample count.
double time_integral(const Prepared& pr, int p, double t_end, int m, bool parallel) {
    std::vector<double> vals(std::size_t(m) + 1);
    double h = t_end / m;
    if (parallel) {
        int nt = omp_get_max_threads();
        std::size_t n = std::size_t(pr.mx) * pr.my;
        std::vector<std::vector<std::complex<double>>> bufs(nt);
#pragma omp parallel for schedule(static)
        for (int j = 0; j <= m; ++j) {
            auto& buf = bufs[omp_get_thread_num()];
            if (buf.size() != n) buf.assign(n, {});
            vals[j] = spatial_integral_at(pr, h * j, p, buf.data());
        }
    } else {
        std::vector<std::complex<double>> buf(std::size_t(pr.mx) * pr.my);
        for (int j = 0; j <= m; ++j) vals[j] = spatial_integral_at(pr, h * j, p, buf.data());
    }
    return simpson(vals, h);
}

NormResult run_norm(const SpectralField& f, int p, const QuadratureSpec& q, bool recentre,
                    bool parallel) {
    if (p != 2 && p != 4) throw std::invalid_argument("lp_spacetime_norm: p must be 2 or 4");
    if (q.t_end <= 0) throw std::invalid_argument("lp_spacetime_norm: t_end > 0 required");
    Prepared pr = prepare(f, q.spatial_oversample, recentre);
    NormResult r;
    if (pr.amp.empty()) return r;

    int m = q.time_samples;
    if (m <= 0) {
        // >= 8 samples per 2pi of quadruple-phase range, then refined below
        double range = (p == 4 ? 4.0 : 2.0) * pr.freq_radius * q.t_end;
        m = int(std::min(1e7, std::ceil(8.0 * range / kTwoPi)));
        m = std::max(m, 16);
    }
    if (m % 2) ++m;

    double coarse = time_integral(pr, p, q.t_end, m, parallel);
    for (int round = 0;; ++round) {
        double fine = time_integral(pr, p, q.t_end, 2 * m, parallel);
        double delta = std::fabs(fine - coarse) / std::max(std::fabs(fine), 1e-300);
        if (delta <= q.refine_tol) {
            r.value = std::pow(fine, 1.0 / p);
            r.refinement_delta = delta;
            r.time_samples = m;
            return r;
        }
        if (round >= q.max_refine)
            throw RefinementError("lp_spacetime_norm: time quadrature did not stabilize (delta=" +
                                  std::to_string(delta) + ")");
        coarse = fine;
        m *= 2;
    }
}

}  // namespace

std::int64_t best_recentre_shear(const SpectralField& f) {
    std::vector<FreqNode> pts;
    for (auto& m : f.modes())
        if (m.p.xi != 0) pts.push_back(m.p);
    if (pts.size() < 2) return 0;
    auto span = [&](std::int64_t a) {
        std::int64_t lo = pts[0].eta - a * pts[0].xi, hi = lo;
        for (auto& p : pts) {
            std::int64_t v = p.eta - a * p.xi;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        return hi - lo;
    };
    // span(A) is convex piecewise linear; ternary search over the slope hull
    double smin = 0, smax = 0;
    bool first = true;
    for (auto& p : pts) {
        double s = double(p.eta) / double(p.xi);
        if (first) {
            smin = smax = s;
            first = false;
        } else {
            smin = std::min(smin, s);
            smax = std::max(smax, s);
        }
    }
    std::int64_t lo = std::int64_t(std::floor(smin)) - 1, hi = std::int64_t(std::ceil(smax)) + 1;
    while (hi - lo > 2) {
        std::int64_t m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
        if (span(m1) <= span(m2))
            hi = m2;
        else
            lo = m1;
    }
    std::int64_t best = lo;
    for (std::int64_t a = lo; a <= hi; ++a)
        if (span(a) < span(best)) best = a;
    return best;
}

NormResult lp_spacetime_norm_full(const SpectralField& f, int p, const QuadratureSpec& q) {
    return run_norm(f, p, q, /*recentre=*/true, /*parallel=*/true);
}

double lp_spacetime_norm(const SpectralField& f, int p, const QuadratureSpec& q) {
    return lp_spacetime_norm_full(f, p, q).value;
}

NormResult lp_spacetime_norm_reference(const SpectralField& f, int p, const QuadratureSpec& q) {
    return run_norm(f, p, q, /*recentre=*/false, /*parallel=*/false);
}

double spatial_lp_integral(const SpectralField& f, double t, int p, int spatial_oversample) {
    if (p != 2 && p != 4) throw std::invalid_argument("spatial_lp_integral: p must be 2 or 4");
    Prepared pr = prepare(f, spatial_oversample, /*recentre=*/false);
    if (pr.amp.empty()) return 0.0;
    std::vector<std::complex<double>> buf(std::size_t(pr.mx) * pr.my);
    return spatial_integral_at(pr, t, p, buf.data());
}

}  // namespace kp2

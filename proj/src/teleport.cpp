#include "pcslab/teleport.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pcslab {

namespace {

constexpr double kPi = std::numbers::pi;

// Coherent-state Fock amplitudes e^(-|z|^2/2) z^n / sqrt(n!).
std::vector<Complex> coherent_column(Complex z, int dim) {
    std::vector<Complex> v(dim);
    if (z == Complex(0.0)) {
        v[0] = 1.0;
        return v;
    }
    const double la = std::log(std::abs(z));
    const double ph = std::arg(z);
    for (int n = 0; n < dim; ++n)
        v[n] = std::polar(std::exp(-0.5 * std::norm(z) + n * la - 0.5 * log_factorial(n)),
                          n * ph);
    return v;
}

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.resize(n);
    w.resize(n);
    for (int i = 0; i < n; ++i) {
        double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (t * p1 - p0) / (t * t - 1.0);
            double step = p1 / dp;
            t -= step;
            if (std::abs(step) < 1e-15) break;
        }
        x[i] = t;
        w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
}

// <input| Psi_b(beta)> via the coherent-shift identity: with mu = input - beta,
// the overlap equals (1/sqrt(pi)) sum_{m,n} u_m(mu) conj(u_n(mu)) C[m][n].
Complex overlap_integrand_amp(const TwoModeState& c, Complex mu) {
    const std::vector<Complex> ua = coherent_column(mu, c.na_dim);
    const std::vector<Complex> ub = coherent_column(mu, c.nb_dim);
    Complex acc(0.0);
    for (int m = 0; m < c.na_dim; ++m) {
        if (ua[m] == Complex(0.0)) continue;
        Complex row(0.0);
        const Complex* src = &c.coeffs[static_cast<size_t>(m) * c.nb_dim];
        for (int n = 0; n < c.nb_dim; ++n) row += std::conj(ub[n]) * src[n];
        acc += ua[m] * row;
    }
    return acc / std::sqrt(kPi);
}

double fav_on_mesh(const TwoModeState& channel, const TeleportConfig& cfg, int nr, int nth) {
    std::vector<double> xs, ws;
    gauss_legendre(nr, xs, ws);
    double total = 0.0;
    for (int i = 0; i < nr; ++i) {
        const double r = 0.5 * cfg.radial_max * (xs[i] + 1.0);
        const double wr = 0.5 * cfg.radial_max * ws[i] * r * (2.0 * kPi / nth);
        double ring = 0.0;
        for (int j = 0; j < nth; ++j) {
            const double th = 2.0 * kPi * j / nth;
            const Complex mu = std::polar(r, th); // mu = input - beta
            ring += std::norm(overlap_integrand_amp(channel, mu));
        }
        total += wr * ring;
    }
    return total;
}

} // namespace

double state_fidelity(const TwoModeState& s1, const TwoModeState& s2) {
    return std::norm(inner(s1, s2));
}

BetaMesh make_beta_mesh(const TeleportConfig& cfg) {
    if (!(cfg.radial_max > 0.0) || cfg.radial_count < 8 || cfg.angular_count < 8)
        throw std::invalid_argument("TeleportConfig: radial max > 0 and counts >= 8 required");
    std::vector<double> xs, ws;
    gauss_legendre(cfg.radial_count, xs, ws);
    BetaMesh mesh;
    mesh.nodes.reserve(static_cast<size_t>(cfg.radial_count) * cfg.angular_count);
    for (int i = 0; i < cfg.radial_count; ++i) {
        const double r = 0.5 * cfg.radial_max * (xs[i] + 1.0);
        const double w = 0.5 * cfg.radial_max * ws[i] * r * (2.0 * kPi / cfg.angular_count);
        for (int j = 0; j < cfg.angular_count; ++j) {
            const double th = 2.0 * kPi * j / cfg.angular_count;
            mesh.nodes.emplace_back(cfg.input_amp - std::polar(r, th), w);
        }
    }
    return mesh;
}

std::vector<Complex> bob_state(const TwoModeState& channel, Complex beta_meas,
                               Complex input_amp, const TruncationSpec& t) {
    const int nb = channel.nb_dim;
    const Complex mu = input_amp - beta_meas;
    // h_m = <m|D(-beta)|input> = e^((conj(beta) input - beta conj(input))/2) u_m(mu)
    const Complex phase =
        std::exp(0.5 * (std::conj(beta_meas) * input_amp - beta_meas * std::conj(input_amp)));
    const std::vector<Complex> u = coherent_column(mu, channel.na_dim);
    std::vector<Complex> v(nb, Complex(0.0));
    for (int m = 0; m < channel.na_dim; ++m) {
        const Complex hm = phase * u[m];
        if (hm == Complex(0.0)) continue;
        const Complex* src = &channel.coeffs[static_cast<size_t>(m) * channel.nb_dim];
        for (int n = 0; n < nb; ++n) v[n] += hm * src[n];
    }
    for (auto& c : v) c /= std::sqrt(kPi);

    const int margin = t.margin >= 0 ? t.margin : displacement_margin(std::abs(beta_meas));
    const int dim = nb + margin;
    v.resize(dim, Complex(0.0));
    if (beta_meas == Complex(0.0)) return v;
    const auto mat = detail::displacement_matrix(beta_meas, dim);
    std::vector<Complex> w(dim, Complex(0.0));
    for (int m = 0; m < dim; ++m) {
        Complex acc(0.0);
        const Complex* row = &mat[static_cast<size_t>(m) * dim];
        for (int n = 0; n < dim; ++n) acc += row[n] * v[n];
        w[m] = acc;
    }
    return w;
}

double avg_fidelity_numeric(const TwoModeState& channel, const TeleportConfig& cfg) {
    if (!(cfg.radial_max > 0.0) || cfg.radial_count < 8 || cfg.angular_count < 8)
        throw std::invalid_argument("TeleportConfig: radial max > 0 and counts >= 8 required");
    const double coarse = fav_on_mesh(channel, cfg, cfg.radial_count, cfg.angular_count);
    const double fine = fav_on_mesh(channel, cfg, 2 * cfg.radial_count, 2 * cfg.angular_count);
    if (std::abs(fine - coarse) > 1e-3)
        throw std::runtime_error("avg_fidelity_numeric: mesh-doubling discrepancy above 1e-3");
    return fine;
}

double avg_fidelity_closed(const PcsParams& p, const MeasurementConfig& mcfg,
                           const SeriesControl& ctl) {
    validate(mcfg);
    const int d = p.delta;
    const double g = std::abs(p.gamma);
    const double x = 0.5 * mcfg.coupling;
    const Complex A = weak_value(mcfg);
    const Complex tp = 1.0 + A, tm = 1.0 - A;
    const double l2 = lambda_squared(p, mcfg, ctl);

    // PCS series range: weights g^(2n+d)/(n!(n+d)!) relative to their peak
    int nmax = 1;
    if (g > 0.0) {
        double best = -1e300;
        std::vector<double> lw;
        for (int n = 0;; ++n) {
            double v = (2.0 * n + d) * std::log(g) - log_factorial(n) - log_factorial(n + d);
            lw.push_back(v);
            best = std::max(best, v);
            if (v < best + std::log(ctl.rel_tol) - 6.0 && n > 2.0 * g) {
                nmax = n + 1;
                break;
            }
            if (n + 2 >= ctl.max_terms)
                throw std::runtime_error("avg_fidelity_closed: series range not found");
        }
    }
    // Displacement-element ladder range beyond n+d: terms decay like x^j/sqrt(j!)
    const int extent = 26 + static_cast<int>(std::ceil(4.0 * x * x));
    const int mmax = nmax + d + extent;
    const int kl_max = 2 * (mmax + nmax + d) + 4;

    std::vector<double> lf(kl_max + 1);
    for (int i = 0; i <= kl_max; ++i) lf[i] = log_factorial(i);
    // Laguerre table L_k^{(j)}(x^2): values for k <= mmax+d, j <= mmax+d
    const int kdim = mmax + d + 2, jdim = mmax + d + 2;
    std::vector<double> lag(static_cast<size_t>(jdim) * kdim);
    const double xx = x * x;
    for (int j = 0; j < jdim; ++j) {
        double lm2 = 1.0, lm1 = 1.0 + j - xx;
        lag[static_cast<size_t>(j) * kdim] = 1.0;
        if (kdim > 1) lag[static_cast<size_t>(j) * kdim + 1] = lm1;
        for (int k = 2; k < kdim; ++k) {
            double lk = ((2.0 * k - 1.0 + j - xx) * lm1 - (k - 1.0 + j) * lm2) / k;
            lag[static_cast<size_t>(j) * kdim + k] = lk;
            lm2 = lm1;
            lm1 = lk;
        }
    }

    const double lg = g > 0.0 ? std::log(g) : 0.0;
    const double ph = std::arg(p.gamma);
    Complex total(0.0);
    for (int n = 0; n < nmax; ++n) {
        for (int k = 0; k < nmax; ++k) {
            double logw;
            if (g > 0.0) {
                logw = (n + k + d) * lg -
                       0.5 * (lf[n] + lf[n + d] + lf[k] + lf[k + d]);
            } else {
                if (n > 0 || k > 0 || d > 0) continue;
                logw = 0.0;
            }
            const Complex phase = std::polar(1.0, ph * (n - k));
            for (int m = std::max(0, n - k); m < mmax; ++m) {
                const int l = m + k - n;
                if (l >= mmax) break;
                const int dm = std::abs(m - (n + d));
                const int dl = std::abs(l - (k + d));
                const int mn_m = std::min(m, n + d), mx_m = std::max(m, n + d);
                const int mn_l = std::min(l, k + d), mx_l = std::max(l, k + d);
                const double common =
                    std::exp(logw + lf[m + k] - (m + k) * std::log(2.0) -
                             0.5 * (lf[n] + lf[m] + lf[l] + lf[k]) +
                             0.5 * (lf[mn_l] + lf[mn_m] - lf[mx_l] - lf[mx_m]) - xx);
                if (common == 0.0) continue;
                const double lm = lag[static_cast<size_t>(dm) * kdim + mn_m];
                const double ll = lag[static_cast<size_t>(dl) * kdim + mn_l];
                // sign factors of <m|D(+-x)|n+d> and <l|D(+-x)|k+d>
                const double sig = ((std::max(0, m - (n + d)) + std::max(0, l - (k + d))) % 2 == 0)
                                       ? 1.0
                                       : -1.0;
                const double pxm = std::pow(x, dm), mxm = std::pow(-x, dm);
                const double pxl = std::pow(x, dl), mxl = std::pow(-x, dl);
                const Complex brace = std::norm(tp) * mxm * mxl + tp * std::conj(tm) * mxm * pxl +
                                      std::conj(tp) * tm * pxm * mxl + std::norm(tm) * pxm * pxl;
                total += phase * common * lm * ll * sig * brace;
            }
        }
    }
    const double n2 = g > 0.0 ? 1.0 / bessel_i(d, 2.0 * g, ctl) : 1.0;
    double fav = (n2 * l2 / 8.0) * total.real();
    if (fav < -1e-9 || fav > 1.0 + 1e-9)
        throw std::runtime_error("avg_fidelity_closed: result escaped [0, 1]");
    return std::clamp(fav, 0.0, 1.0);
}

} // namespace pcslab

#include "pcslab/observables.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace pcslab {

const char* moment_kind_name(MomentKind k) {
    switch (k) {
        case MomentKind::AdagA: return "AdagA";
        case MomentKind::BdagB: return "BdagB";
        case MomentKind::AB: return "AB";
        case MomentKind::A2B2: return "A2B2";
        case MomentKind::AdagABdagB: return "AdagABdagB";
        case MomentKind::AdagB: return "AdagB";
        case MomentKind::A2: return "A2";
        case MomentKind::B2: return "B2";
        case MomentKind::A: return "A";
        case MomentKind::B: return "B";
        case MomentKind::Adag2A2: return "Adag2A2";
        case MomentKind::Bdag2B2: return "Bdag2B2";
    }
    throw std::invalid_argument("moment_kind_name: unknown kind");
}

std::array<int, 4> moment_kind_exponents(MomentKind k) {
    switch (k) {
        case MomentKind::AdagA: return {1, 1, 0, 0};
        case MomentKind::BdagB: return {0, 0, 1, 1};
        case MomentKind::AB: return {0, 1, 0, 1};
        case MomentKind::A2B2: return {0, 2, 0, 2};
        case MomentKind::AdagABdagB: return {1, 1, 1, 1};
        case MomentKind::AdagB: return {1, 0, 0, 1};
        case MomentKind::A2: return {0, 2, 0, 0};
        case MomentKind::B2: return {0, 0, 0, 2};
        case MomentKind::A: return {0, 1, 0, 0};
        case MomentKind::B: return {0, 0, 0, 1};
        case MomentKind::Adag2A2: return {2, 2, 0, 0};
        case MomentKind::Bdag2B2: return {0, 0, 2, 2};
    }
    throw std::invalid_argument("moment_kind_exponents: unknown kind");
}

namespace {

// One monomial of O(a + s*x): coeff * x^xpow * s^(odd) * a^dag^p a^q b^dag^r b^t.
struct Mono {
    double coeff;
    int p, q, r, t;
    int xpow;
    bool odd; // carries one factor of the shift sign s
};

const std::vector<Mono>& monomials(MomentKind kind) {
    static const std::vector<Mono> tbl[kMomentKindCount] = {
        /* AdagA */ {{1, 1, 1, 0, 0, 0, false}, {1, 0, 1, 0, 0, 1, true},
                     {1, 1, 0, 0, 0, 1, true},  {1, 0, 0, 0, 0, 2, false}},
        /* BdagB */ {{1, 0, 0, 1, 1, 0, false}},
        /* AB */    {{1, 0, 1, 0, 1, 0, false}, {1, 0, 0, 0, 1, 1, true}},
        /* A2B2 */  {{1, 0, 2, 0, 2, 0, false}, {2, 0, 1, 0, 2, 1, true},
                     {1, 0, 0, 0, 2, 2, false}},
        /* AdagABdagB */ {{1, 1, 1, 1, 1, 0, false}, {1, 0, 1, 1, 1, 1, true},
                          {1, 1, 0, 1, 1, 1, true},  {1, 0, 0, 1, 1, 2, false}},
        /* AdagB */ {{1, 1, 0, 0, 1, 0, false}, {1, 0, 0, 0, 1, 1, true}},
        /* A2 */    {{1, 0, 2, 0, 0, 0, false}, {2, 0, 1, 0, 0, 1, true},
                     {1, 0, 0, 0, 0, 2, false}},
        /* B2 */    {{1, 0, 0, 0, 2, 0, false}},
        /* A */     {{1, 0, 1, 0, 0, 0, false}, {1, 0, 0, 0, 0, 1, true}},
        /* B */     {{1, 0, 0, 0, 1, 0, false}},
        /* Adag2A2 */ {{1, 2, 2, 0, 0, 0, false}, {2, 2, 1, 0, 0, 1, true},
                       {1, 2, 0, 0, 0, 2, false}, {2, 1, 2, 0, 0, 1, true},
                       {4, 1, 1, 0, 0, 2, false}, {2, 1, 0, 0, 0, 3, true},
                       {1, 0, 2, 0, 0, 2, false}, {2, 0, 1, 0, 0, 3, true},
                       {1, 0, 0, 0, 0, 4, false}},
        /* Bdag2B2 */ {{1, 0, 0, 2, 2, 0, false}},
    };
    return tbl[static_cast<int>(kind)];
}

// <phi| a^dag^p a^q b^dag^r b^t D_a(c) |phi>, c real, as a single series in n.
Complex series_phi_op_displaced(const PcsParams& par, int p, int q, int r, int t, double c,
                                const SeriesControl& ctl) {
    const double g = std::abs(par.gamma);
    const int d = par.delta;
    if (g == 0.0) {
        // |phi> = |delta>_a |0>_b : only r = t = 0 survives
        if (t != 0 || r != 0) return 0.0;
        if (d - p < 0) return 0.0;
        const int m = d - p + q;
        const double afac = std::exp(0.5 * (log_factorial(d) - log_factorial(d - p)) +
                                     0.5 * (log_factorial(m) - log_factorial(d - p)));
        return afac * displacement_element(m, d, c);
    }
    const double lg = std::log(g);
    const double ph = std::arg(par.gamma);
    const double logI = std::log(bessel_i(d, 2.0 * g, ctl));
    Complex sum(0.0);
    double scale = 0.0;
    int flat = 0;
    for (int n = t; n < ctl.max_terms; ++n) {
        const int npr = n - t + r; // bra-side b level
        const int kb = npr + d;    // bra-side a level before the ladder string
        if (kb - p < 0) continue;
        const int m = kb - p + q;  // column index of the displacement element
        const double logw = (n + npr + d) * lg -
                            0.5 * (log_factorial(n) + log_factorial(n + d) +
                                   log_factorial(npr) + log_factorial(npr + d)) -
                            logI;
        const double bfac = 0.5 * (log_factorial(n) - log_factorial(n - t)) +
                            0.5 * (log_factorial(npr) - log_factorial(n - t));
        const double afac = 0.5 * (log_factorial(kb) - log_factorial(kb - p)) +
                            0.5 * (log_factorial(m) - log_factorial(kb - p));
        Complex elem = c == 0.0 ? Complex(m == n + d ? 1.0 : 0.0)
                                : displacement_element(m, n + d, c);
        Complex term = std::polar(std::exp(logw + bfac + afac), ph * (n - npr)) * elem;
        sum += term;
        scale = std::max({scale, std::abs(sum), std::abs(term)});
        if (n > t && std::abs(term) <= ctl.rel_tol * scale) {
            if (++flat >= 3) return sum;
        } else {
            flat = 0;
        }
    }
    throw std::runtime_error("closed_form_moment: series did not converge within max_terms");
}

// Bessel ratios of the initial state; the s-th falling moments
// <a^dag^s a^s> = g^s I_(d-s)/I_d and <b^dag^s b^s> = g^s I_(d+s)/I_d.
struct PcsRatios {
    double na1, nb1, na2, nb2;
};

PcsRatios pcs_ratios(const PcsParams& p, const SeriesControl& ctl) {
    const double g = std::abs(p.gamma);
    const int d = p.delta;
    if (g == 0.0)
        return {static_cast<double>(d), 0.0, static_cast<double>(d) * (d - 1.0), 0.0};
    const double i0 = bessel_i(d, 2.0 * g, ctl);
    return {g * bessel_i(d - 1, 2.0 * g, ctl) / i0, g * bessel_i(d + 1, 2.0 * g, ctl) / i0,
            g * g * bessel_i(d - 2, 2.0 * g, ctl) / i0,
            g * g * bessel_i(d + 2, 2.0 * g, ctl) / i0};
}

// E(s*G) = <phi| O(a + s*x) |phi>, closed Bessel forms.
Complex displaced_expectation(MomentKind kind, const PcsParams& p, double x, int s,
                              const SeriesControl& ctl) {
    const PcsRatios r = pcs_ratios(p, ctl);
    const Complex gam = p.gamma;
    const double x2 = x * x;
    switch (kind) {
        case MomentKind::AdagA: return r.na1 + x2;
        case MomentKind::BdagB: return r.nb1;
        case MomentKind::AB: return gam;
        case MomentKind::A2B2: return gam * gam;
        case MomentKind::AdagABdagB: return std::norm(gam) + x2 * r.nb1;
        case MomentKind::AdagB: return 0.0;
        case MomentKind::A2: return x2;
        case MomentKind::B2: return 0.0;
        case MomentKind::A: return s * x;
        case MomentKind::B: return 0.0;
        case MomentKind::Adag2A2: return r.na2 + 4.0 * x2 * r.na1 + x2 * x2;
        case MomentKind::Bdag2B2: return r.nb2;
    }
    throw std::invalid_argument("displaced_expectation: unknown kind");
}

// T(s*G) = <phi| O(a - s*x) D_a(s*G) |phi>.
Complex cross_branch_series(MomentKind kind, const PcsParams& p, double coupling, int s,
                            const SeriesControl& ctl) {
    const double x = 0.5 * coupling;
    Complex sum(0.0);
    for (const Mono& mo : monomials(kind)) {
        double cf = mo.coeff * std::pow(x, mo.xpow);
        if (mo.odd) cf *= -s; // shift sign of O(a - s*x)
        if (cf == 0.0) continue;
        sum += cf * series_phi_op_displaced(p, mo.p, mo.q, mo.r, mo.t, s * coupling, ctl);
    }
    return sum;
}

} // namespace

Complex closed_form_moment(MomentKind kind, const PcsParams& p, const MeasurementConfig& cfg,
                           const SeriesControl& ctl) {
    validate(cfg);
    if (cfg.coupling == 0.0) return displaced_expectation(kind, p, 0.0, +1, ctl);
    const Complex A = weak_value(cfg);
    const Complex tp = 1.0 + A, tm = 1.0 - A;
    const double x = 0.5 * cfg.coupling;
    const double l2 = lambda_squared(p, cfg, ctl);
    const Complex ep = displaced_expectation(kind, p, x, +1, ctl);
    const Complex em = displaced_expectation(kind, p, x, -1, ctl);
    const Complex t_pos = cross_branch_series(kind, p, cfg.coupling, +1, ctl);
    const Complex t_neg = cross_branch_series(kind, p, cfg.coupling, -1, ctl);
    return 0.25 * l2 *
           (std::norm(tp) * ep + std::norm(tm) * em + std::conj(tp) * tm * t_neg +
            std::conj(tm) * tp * t_pos);
}

MomentSet closed_form_moments(const PcsParams& p, const MeasurementConfig& cfg,
                              const SeriesControl& ctl) {
    MomentSet m;
    m.provenance = Provenance::closed_form;
    for (MomentKind k : kAllMomentKinds) m[k] = closed_form_moment(k, p, cfg, ctl);
    return m;
}

MomentSet oracle_moments(const TwoModeState& s) {
    MomentSet m;
    m.provenance = Provenance::oracle;
    for (MomentKind k : kAllMomentKinds) {
        auto e = moment_kind_exponents(k);
        m[k] = moment(s, e[0], e[1], e[2], e[3]);
    }
    return m;
}

double quadrature_squeezing(const MomentSet& m, int which) {
    if (which != 1 && which != 2)
        throw std::invalid_argument("quadrature_squeezing: which must be 1 or 2");
    const double na = m[MomentKind::AdagA].real();
    const double nb = m[MomentKind::BdagB].real();
    const double a2 = m[MomentKind::A2].real();
    const double b2 = m[MomentKind::B2].real();
    const double ab = m[MomentKind::AB].real();
    const double adb = m[MomentKind::AdagB].real();
    const Complex mean = m[MomentKind::A] + m[MomentKind::B];
    if (which == 1)
        return 0.25 * (na + nb + a2 + b2) + 0.5 * (ab + adb) -
               0.5 * mean.real() * mean.real();
    return 0.25 * (na + nb - a2 - b2) - 0.5 * (ab - adb) - 0.5 * mean.imag() * mean.imag();
}

double sum_squeezing(const MomentSet& m, double varpi) {
    const Complex w1 = std::polar(1.0, -varpi);
    const double na = m[MomentKind::AdagA].real();
    const double nb = m[MomentKind::BdagB].real();
    const double re_ab = (w1 * m[MomentKind::AB]).real();
    const double re_a2b2 = (w1 * w1 * m[MomentKind::A2B2]).real();
    const double nanb = m[MomentKind::AdagABdagB].real();
    return 2.0 * (re_a2b2 - 2.0 * re_ab * re_ab + nanb) / (na + nb + 1.0);
}

double cross_correlation(const MomentSet& m) {
    const double na = m[MomentKind::AdagA].real();
    const double nb = m[MomentKind::BdagB].real();
    if (!(na > 0.0) || !(nb > 0.0))
        throw std::invalid_argument("cross_correlation: zero mean photon number");
    return m[MomentKind::AdagABdagB].real() / (na * nb);
}

double autocorrelation(const MomentSet& m, Mode mode) {
    const double n =
        (mode == Mode::a ? m[MomentKind::AdagA] : m[MomentKind::BdagB]).real();
    if (!(n > 0.0)) throw std::invalid_argument("autocorrelation: zero mean photon number");
    const double k =
        (mode == Mode::a ? m[MomentKind::Adag2A2] : m[MomentKind::Bdag2B2]).real();
    return k / (n * n);
}

double hz_correlation(const MomentSet& m) {
    return m[MomentKind::AdagA].real() * m[MomentKind::BdagB].real() -
           std::norm(m[MomentKind::AB]);
}

double epr_correlation(const MomentSet& m) {
    const Complex a = m[MomentKind::A];
    const Complex b = m[MomentKind::B];
    return 2.0 * (1.0 + m[MomentKind::AdagA].real() + m[MomentKind::BdagB].real() -
                  2.0 * m[MomentKind::AB].real()) -
           2.0 * (std::norm(a) + std::norm(b) - 2.0 * (a * b).real());
}

double squeezing_db(double q) {
    if (!(q > -0.25)) throw std::invalid_argument("squeezing_db: q must exceed -1/4");
    return -10.0 * std::log10((q + 0.25) / 0.25);
}

} // namespace pcslab

#include "pcslab/measurement.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pcslab {

void validate(const MeasurementConfig& cfg) {
    if (!(cfg.alpha >= 0.0 && cfg.alpha < std::numbers::pi))
        throw std::invalid_argument("MeasurementConfig: alpha must lie in [0, pi)");
    if (!(cfg.vartheta >= 0.0 && cfg.vartheta < 2.0 * std::numbers::pi))
        throw std::invalid_argument("MeasurementConfig: vartheta must lie in [0, 2*pi)");
    if (!(cfg.coupling >= 0.0) || !std::isfinite(cfg.coupling))
        throw std::invalid_argument("MeasurementConfig: coupling must be finite and >= 0");
}

Complex weak_value(const MeasurementConfig& cfg) {
    validate(cfg);
    return std::polar(1.0, cfg.vartheta) * std::tan(0.5 * cfg.alpha);
}

double capital_p(const PcsParams& p, double coupling, const SeriesControl& ctl) {
    if (!(ctl.rel_tol > 0.0) || ctl.max_terms < 1)
        throw std::invalid_argument("SeriesControl: rel_tol > 0 and max_terms >= 1 required");
    if (!(coupling >= 0.0) || !std::isfinite(coupling))
        throw std::invalid_argument("capital_p: coupling must be finite and >= 0");
    if (coupling == 0.0) return 1.0;
    const double g2 = coupling * coupling;
    const double eg = std::exp(-0.5 * g2);
    const double g = std::abs(p.gamma);
    if (g == 0.0) return eg * laguerre_assoc(p.delta, 0, g2);
    const double lg = std::log(g);
    const double logI = std::log(bessel_i(p.delta, 2.0 * g, ctl));
    double sum = 0.0;
    double scale = 0.0;
    int flat = 0;
    for (int n = 0; n < ctl.max_terms; ++n) {
        double w = std::exp((2.0 * n + p.delta) * lg - log_factorial(n) -
                            log_factorial(n + p.delta) - logI);
        double term = w * laguerre_assoc(n + p.delta, 0, g2);
        sum += term;
        scale = std::max({scale, std::abs(sum), std::abs(term)});
        if (std::abs(term) < ctl.rel_tol * scale) {
            if (++flat >= 3) return eg * sum;
        } else {
            flat = 0;
        }
    }
    throw std::runtime_error("capital_p: series did not converge within max_terms");
}

double lambda_squared(const PcsParams& p, const MeasurementConfig& cfg, const SeriesControl& ctl) {
    const double a2 = std::norm(weak_value(cfg));
    const double P = capital_p(p, cfg.coupling, ctl);
    return 2.0 / (1.0 + a2 + (1.0 - a2) * P);
}

TwoModeState output_state(const PcsParams& p, const MeasurementConfig& cfg, TruncationSpec t) {
    validate(cfg);
    const double half = 0.5 * cfg.coupling;
    if (t.margin < 0) t.margin = displacement_margin(half);
    TwoModeState phi = pcs_state(p, t);
    if (cfg.coupling == 0.0) return phi;
    const Complex A = weak_value(cfg);
    const double lam = std::sqrt(lambda_squared(p, cfg));
    TwoModeState plus = displace_mode(phi, Mode::a, half);
    TwoModeState minus = displace_mode(phi, Mode::a, -half);
    TwoModeState out =
        weighted_sum(0.5 * lam * (1.0 + A), plus, 0.5 * lam * (1.0 - A), minus);
    const double n = state_norm(out);
    if (std::abs(n - 1.0) > 1e-9)
        throw std::runtime_error("output_state: assembled norm deviates from 1 beyond 1e-9");
    return normalize(std::move(out));
}

double success_probability(const PcsParams& p, const MeasurementConfig& cfg,
                           const SeriesControl& ctl) {
    validate(cfg);
    const double a2 = std::norm(weak_value(cfg));
    const double P = capital_p(p, cfg.coupling, ctl);
    const double c = std::cos(0.5 * cfg.alpha);
    return 0.5 * c * c * (1.0 + a2 + (1.0 - a2) * P);
}

TwoModeState approx_weak_coupling(const PcsParams& p, const MeasurementConfig& cfg,
                                  TruncationSpec t) {
    validate(cfg);
    if (t.margin < 0) t.margin = displacement_margin(0.5 * cfg.coupling) / 2 + 6;
    TwoModeState phi = pcs_state(p, t);
    if (cfg.coupling == 0.0) return phi;
    const double re_a = weak_value(cfg).real();
    TwoModeState up = apply_ladder(phi, Mode::a, Ladder::Raise);
    TwoModeState dn = apply_ladder(phi, Mode::a, Ladder::Lower);
    TwoModeState corr = weighted_sum(1.0, up, -1.0, dn);
    return normalize(weighted_sum(1.0, phi, 0.5 * cfg.coupling * re_a, corr));
}

TwoModeState approx_strong_small_gamma(const PcsParams& p, const MeasurementConfig& cfg,
                                       TruncationSpec t) {
    validate(cfg);
    if (p.delta < 0) throw std::invalid_argument("approx_strong_small_gamma: delta >= 0");
    const double half = 0.5 * cfg.coupling;
    const int margin = t.margin >= 0 ? t.margin : displacement_margin(half);
    const int na = p.delta + 2 + margin;
    const int nb = 3;
    const Complex A = weak_value(cfg);
    const Complex tp = 1.0 + A, tm = 1.0 - A;

    auto displaced_fock = [&](int level_a, int level_b, double amp) {
        return displace_mode(TwoModeState::basis(na, nb, level_a, level_b), Mode::a, amp);
    };
    TwoModeState low = weighted_sum(tp, displaced_fock(p.delta, 0, half), tm,
                                    displaced_fock(p.delta, 0, -half));
    TwoModeState high = weighted_sum(tp, displaced_fock(p.delta + 1, 1, half), tm,
                                     displaced_fock(p.delta + 1, 1, -half));
    const Complex w = p.gamma / std::sqrt(1.0 + p.delta);
    return normalize(weighted_sum(1.0, low, w, high));
}

} // namespace pcslab

#ifndef PCSLAB_MEASUREMENT_HPP
#define PCSLAB_MEASUREMENT_HPP

#include "pcslab/twomode.hpp"

namespace pcslab {

/// Pre/postselection of the measured qubit and the coupling strength
/// Gamma = gt/sigma of the pointer interaction. Postselection is onto |H>.
struct MeasurementConfig {
    double alpha = 0.0;    // preselection polar angle, [0, pi)
    double vartheta = 0.0; // preselection phase, [0, 2*pi)
    double coupling = 0.0; // Gamma >= 0
};

void validate(const MeasurementConfig& cfg);

/// e^(i*vartheta) tan(alpha/2).
Complex weak_value(const MeasurementConfig& cfg);

/// P = N_delta^2 e^(-G^2/2) sum_n [|gamma|^(2n+delta)/(n!(n+delta)!)] L_(n+delta)(G^2),
/// which equals Re<phi|D_a(G)|phi>. Equals 1 at G = 0.
double capital_p(const PcsParams& p, double coupling, const SeriesControl& ctl = {});

/// lambda^2 = 2 / [1 + |A|^2 + (1 - |A|^2) P].
double lambda_squared(const PcsParams& p, const MeasurementConfig& cfg,
                      const SeriesControl& ctl = {});

/// Postselected pointer state
///   (lambda/2) [(1 + A) D_a(G/2) + (1 - A) D_a(-G/2)] |phi>,
/// built from two displaced copies of the pair coherent state. Construction
/// doubles as a check of lambda: the assembled norm must be 1 to 1e-9.
TwoModeState output_state(const PcsParams& p, const MeasurementConfig& cfg,
                          TruncationSpec t = {});

/// (1/2) cos^2(alpha/2) [1 + |A|^2 + (1 - |A|^2) P], in [0, 1].
double success_probability(const PcsParams& p, const MeasurementConfig& cfg,
                           const SeriesControl& ctl = {});

/// Normalized first-order state [1 + (G/2)(a^dag - a) Re A] |phi>.
TwoModeState approx_weak_coupling(const PcsParams& p, const MeasurementConfig& cfg,
                                  TruncationSpec t = {});

/// Normalized small-gamma limit state
///   [t+ |G/2, delta> + t- |-G/2, delta>] |0>_b
///   + gamma/sqrt(1+delta) [t+ |G/2, 1+delta> + t- |-G/2, 1+delta>] |1>_b,
/// with displaced Fock kets built by displace_mode.
TwoModeState approx_strong_small_gamma(const PcsParams& p, const MeasurementConfig& cfg,
                                       TruncationSpec t = {});

} // namespace pcslab

#endif

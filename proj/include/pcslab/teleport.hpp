#ifndef PCSLAB_TELEPORT_HPP
#define PCSLAB_TELEPORT_HPP

#include <vector>

#include "pcslab/measurement.hpp"

namespace pcslab {

/// Input amplitude of the coherent state to teleport and the polar quadrature
/// mesh over the joint-measurement outcomes beta.
struct TeleportConfig {
    Complex input_amp = 0.0;
    double radial_max = 6.0;
    int radial_count = 48;
    int angular_count = 64;
};

/// |<s1|s2>|^2 in [0, 1].
double state_fidelity(const TwoModeState& s1, const TwoModeState& s2);

/// Node/weight pairs of the polar integration mesh (Gauss-Legendre radial,
/// uniform angular), centered on cfg.input_amp where the integrand lives.
struct BetaMesh {
    std::vector<std::pair<Complex, double>> nodes; // (beta, d^2beta weight)
};
BetaMesh make_beta_mesh(const TeleportConfig& cfg);

/// Unnormalized conditional mode-b state after the joint measurement outcome
/// beta and Bob's corrective displacement D_b(beta):
///   w = D_b(beta) v,  v_n = (1/sqrt(pi)) sum_m h_m C[m][n],
///   h_m = <m|D_c(-beta)|input_amp>.
std::vector<Complex> bob_state(const TwoModeState& channel, Complex beta_meas,
                               Complex input_amp, const TruncationSpec& t = {});

/// F_av = integral d^2beta |<input|bob>|^2 over the polar mesh; the mesh is
/// doubled once and a discrepancy above 1e-3 is an error.
double avg_fidelity_numeric(const TwoModeState& channel, const TeleportConfig& cfg = {});

/// Closed-form F_av for the postselected pair-coherent channel, as the
/// Kronecker-reduced triple sum of Laguerre terms. Agrees with
/// avg_fidelity_numeric to ~1e-7.
double avg_fidelity_closed(const PcsParams& p, const MeasurementConfig& cfg,
                           const SeriesControl& ctl = {});

} // namespace pcslab

#endif

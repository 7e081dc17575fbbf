#ifndef PCSLAB_TWOMODE_HPP
#define PCSLAB_TWOMODE_HPP

#include <complex>
#include <utility>
#include <vector>

#include "pcslab/specfun.hpp"

namespace pcslab {

using Complex = std::complex<double>;

/// Defining parameters of a pair coherent state: complex amplitude gamma
/// and the (non-negative) photon number difference delta between the modes.
struct PcsParams {
    Complex gamma;
    int delta = 0;
};

/// Grid sizing policy. margin < 0 requests the automatic (minimal) headroom;
/// callers that will displace the state afterwards pass a computed margin.
struct TruncationSpec {
    double tail_prob = 1e-12;
    int margin = -1;
    int hard_dim_limit = 4096;
};

enum class Mode { a, b };
enum class Ladder { Raise, Lower };

/// Amplitude grid over the truncated two-mode Fock basis |n_a>|n_b>.
/// Row-major: coeffs[na * nb_dim + nb].
struct TwoModeState {
    int na_dim = 1;
    int nb_dim = 1;
    std::vector<Complex> coeffs;
    bool normalized = false;
    double tail_prob = 1e-12;

    TwoModeState() : coeffs(1, Complex(0.0)) {}
    TwoModeState(int na, int nb)
        : na_dim(na), nb_dim(nb), coeffs(static_cast<size_t>(na) * nb, Complex(0.0)) {}

    Complex& at(int na, int nb) { return coeffs[static_cast<size_t>(na) * nb_dim + nb]; }
    const Complex& at(int na, int nb) const {
        return coeffs[static_cast<size_t>(na) * nb_dim + nb];
    }

    static TwoModeState vacuum(int na, int nb);
    static TwoModeState basis(int na, int nb, int level_a, int level_b);
};

/// Extra Fock levels needed before displacing by an amplitude of the given
/// magnitude: ceil(|amp|^2 + 10|amp| + 10).
int displacement_margin(double amp_mag);

double state_norm(const TwoModeState& s);

/// c1*s1 + c2*s2 on the union grid (zero-padded).
TwoModeState weighted_sum(Complex c1, const TwoModeState& s1, Complex c2, const TwoModeState& s2);

TwoModeState normalize(TwoModeState s);

/// Builds the pair coherent state with coefficients
///   N_delta gamma^(n+delta/2) / sqrt(n!(n+delta)!)  on |n+delta>_a |n>_b,
/// truncated so the discarded probability mass stays below tail_prob.
TwoModeState pcs_state(const PcsParams& p, const TruncationSpec& t = {});

/// a, a^dag, b, b^dag on the amplitude grid. Output is not normalized.
TwoModeState apply_ladder(const TwoModeState& s, Mode mode, Ladder kind);

/// Applies the unitary displacement matrix <m|D(amp)|n> along one mode.
TwoModeState displace_mode(const TwoModeState& s, Mode mode, Complex amp);

/// <s1|s2> over the (zero-padded) grid.
Complex inner(const TwoModeState& s1, const TwoModeState& s2);

/// Normally ordered expectation <a^dag^p a^q b^dag^r b^t> by brute force.
Complex moment(const TwoModeState& s, int p, int q, int r, int t);

/// Expectation of (-1)^(n_a + n_b), in [-1, 1].
double joint_parity_expectation(const TwoModeState& s);

namespace detail {
/// Dense displacement matrix, column-major in n: D[m * dim + n] = <m|D(amp)|n>.
std::vector<Complex> displacement_matrix(Complex amp, int dim);
/// Applies a dim x dim mode matrix along the chosen mode.
TwoModeState apply_mode_matrix(const TwoModeState& s, Mode mode, const std::vector<Complex>& mat,
                               int dim);
/// Topmost level along a mode whose upward tail mass exceeds tail_prob.
int effective_top_level(const TwoModeState& s, Mode mode);
} // namespace detail

} // namespace pcslab

#endif

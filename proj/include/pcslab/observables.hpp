#ifndef PCSLAB_OBSERVABLES_HPP
#define PCSLAB_OBSERVABLES_HPP

#include <array>

#include "pcslab/measurement.hpp"

namespace pcslab {

/// The twelve normally ordered expectation values every witness consumes.
enum class MomentKind {
    AdagA, BdagB, AB, A2B2, AdagABdagB, AdagB, A2, B2, A, B, Adag2A2, Bdag2B2
};
inline constexpr int kMomentKindCount = 12;
inline constexpr std::array<MomentKind, kMomentKindCount> kAllMomentKinds = {
    MomentKind::AdagA,      MomentKind::BdagB, MomentKind::AB, MomentKind::A2B2,
    MomentKind::AdagABdagB, MomentKind::AdagB, MomentKind::A2, MomentKind::B2,
    MomentKind::A,          MomentKind::B,     MomentKind::Adag2A2, MomentKind::Bdag2B2};

const char* moment_kind_name(MomentKind k);

/// (p, q, r, t) of a^dag^p a^q b^dag^r b^t for the kind.
std::array<int, 4> moment_kind_exponents(MomentKind k);

enum class Provenance { closed_form, oracle };

struct MomentSet {
    std::array<Complex, kMomentKindCount> value{};
    Provenance provenance = Provenance::closed_form;

    const Complex& operator[](MomentKind k) const { return value[static_cast<int>(k)]; }
    Complex& operator[](MomentKind k) { return value[static_cast<int>(k)]; }
};

/// Closed-form expectation of the kind under the postselected state, as the
/// branch sum (lambda^2/4)[|t+|^2 E(+G) + |t-|^2 E(-G) + t+* t- T(-G) + t-* t+ T(+G)]
/// with E the displaced-argument Bessel forms and T single-index Laguerre series.
Complex closed_form_moment(MomentKind kind, const PcsParams& p, const MeasurementConfig& cfg,
                           const SeriesControl& ctl = {});

MomentSet closed_form_moments(const PcsParams& p, const MeasurementConfig& cfg,
                              const SeriesControl& ctl = {});

/// Brute-force moments of an explicit state via the grid engine.
MomentSet oracle_moments(const TwoModeState& s);

/// Q_i = variance of the two-mode quadrature F_i minus 1/4 (epsilon = 0).
double quadrature_squeezing(const MomentSet& m, int which);

/// Sum-squeezing degree S_ab(varpi); squeezed iff negative, floor -1.
double sum_squeezing(const MomentSet& m, double varpi = 0.0);

/// g_ab^(2) = <a^dag a b^dag b> / (<a^dag a><b^dag b>).
double cross_correlation(const MomentSet& m);

/// g^(2)(0) of one mode: <a^dag2 a^2>/<a^dag a>^2 (resp. b).
double autocorrelation(const MomentSet& m, Mode mode);

/// HZ witness E = <Na><Nb> - |<ab>|^2; entangled iff negative.
double hz_correlation(const MomentSet& m);

/// EPR total variance I; inseparable iff I < 2.
double epr_correlation(const MomentSet& m);

/// Standard squeezing level in dB: -10 log10((q + 1/4)/(1/4)).
double squeezing_db(double q);

} // namespace pcslab

#endif

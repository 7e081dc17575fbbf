#ifndef PCSLAB_WIGNER_HPP
#define PCSLAB_WIGNER_HPP

#include <utility>
#include <vector>

#include "pcslab/twomode.hpp"

namespace pcslab {

struct AxisRange {
    double min = -3.0;
    double max = 3.0;
    int count = 81;
};

/// Which 2D cut of the 4D (Re a, Im a, Re b, Im b) phase space; the other
/// two coordinates are fixed at 0.
enum class Plane { ReRe, ImIm };

struct PhaseGrid {
    AxisRange axis1, axis2;
    Plane plane = Plane::ReRe;
};

/// Scaled joint Wigner values on the grid, row-major over axis1 x axis2.
struct WignerCut {
    PhaseGrid grid;
    std::vector<double> values;
};

/// P_J(alpha, beta): joint photon-number parity of the state displaced by
/// -alpha (mode a) and -beta (mode b). Bounded by [-1, 1].
double scaled_joint_wigner(const TwoModeState& s, Complex alpha, Complex beta);

WignerCut wigner_cut_2d(const TwoModeState& s, const PhaseGrid& g, int threads = 0);

/// P_J along the diagonal Re a = Re b = t (ReRe) or Im a = Im b = t (ImIm).
std::vector<std::pair<double, double>> wigner_cut_diag(const TwoModeState& s, Plane plane,
                                                       const AxisRange& axis, int threads = 0);

} // namespace pcslab

#endif

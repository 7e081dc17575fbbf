#include "pcslab/wigner.hpp"

#include <cmath>
#include <stdexcept>

#include "pcslab/parallel.hpp"

namespace pcslab {

namespace {

double checked_parity(const TwoModeState& s) {
    double v = joint_parity_expectation(s);
    if (v < -1.0 - 1e-9 || v > 1.0 + 1e-9)
        throw std::runtime_error("scaled_joint_wigner: value outside [-1, 1]");
    return v;
}

void check_axis(const AxisRange& ax) {
    if (ax.count < 2 || !(ax.min < ax.max))
        throw std::invalid_argument("wigner: axis needs count >= 2 and min < max");
}

double axis_point(const AxisRange& ax, int i) {
    return ax.min + (ax.max - ax.min) * i / (ax.count - 1);
}

Complex plane_coord(Plane p, double t) {
    return p == Plane::ReRe ? Complex(t, 0.0) : Complex(0.0, t);
}

} // namespace

double scaled_joint_wigner(const TwoModeState& s, Complex alpha, Complex beta) {
    return checked_parity(displace_mode(displace_mode(s, Mode::a, -alpha), Mode::b, -beta));
}

WignerCut wigner_cut_2d(const TwoModeState& s, const PhaseGrid& g, int threads) {
    check_axis(g.axis1);
    check_axis(g.axis2);
    WignerCut cut;
    cut.grid = g;
    cut.values.assign(static_cast<size_t>(g.axis1.count) * g.axis2.count, 0.0);

    const double bmax = std::max(std::abs(g.axis2.min), std::abs(g.axis2.max));
    if (s.nb_dim - 1 - detail::effective_top_level(s, Mode::b) < displacement_margin(bmax))
        throw std::runtime_error("wigner_cut_2d: insufficient mode-b headroom");

    // The mode-b displacement matrices repeat identically across rows; build
    // them once and share read-only.
    std::vector<std::vector<Complex>> bmats(g.axis2.count);
    parallel_for(g.axis2.count, threads, [&](int j) {
        bmats[j] = detail::displacement_matrix(-plane_coord(g.plane, axis_point(g.axis2, j)),
                                               s.nb_dim);
    });
    parallel_for(g.axis1.count, threads, [&](int i) {
        TwoModeState row =
            displace_mode(s, Mode::a, -plane_coord(g.plane, axis_point(g.axis1, i)));
        for (int j = 0; j < g.axis2.count; ++j) {
            TwoModeState pt = detail::apply_mode_matrix(row, Mode::b, bmats[j], s.nb_dim);
            cut.values[static_cast<size_t>(i) * g.axis2.count + j] = checked_parity(pt);
        }
    });
    return cut;
}

std::vector<std::pair<double, double>> wigner_cut_diag(const TwoModeState& s, Plane plane,
                                                       const AxisRange& axis, int threads) {
    check_axis(axis);
    std::vector<std::pair<double, double>> out(axis.count);
    parallel_for(axis.count, threads, [&](int i) {
        double t = axis_point(axis, i);
        Complex z = plane_coord(plane, t);
        out[i] = {t, scaled_joint_wigner(s, z, z)};
    });
    return out;
}

} // namespace pcslab

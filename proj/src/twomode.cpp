#include "pcslab/twomode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pcslab {

TwoModeState TwoModeState::vacuum(int na, int nb) { return basis(na, nb, 0, 0); }

TwoModeState TwoModeState::basis(int na, int nb, int level_a, int level_b) {
    if (na < 1 || nb < 1 || level_a < 0 || level_b < 0 || level_a >= na || level_b >= nb)
        throw std::invalid_argument("TwoModeState::basis: bad dimensions or levels");
    TwoModeState s(na, nb);
    s.at(level_a, level_b) = 1.0;
    s.normalized = true;
    return s;
}

int displacement_margin(double amp_mag) {
    double a = std::abs(amp_mag);
    return static_cast<int>(std::ceil(a * a + 10.0 * a + 10.0));
}

double state_norm(const TwoModeState& s) {
    double n2 = 0.0;
    for (const auto& c : s.coeffs) n2 += std::norm(c);
    return std::sqrt(n2);
}

TwoModeState weighted_sum(Complex c1, const TwoModeState& s1, Complex c2, const TwoModeState& s2) {
    TwoModeState out(std::max(s1.na_dim, s2.na_dim), std::max(s1.nb_dim, s2.nb_dim));
    out.tail_prob = std::min(s1.tail_prob, s2.tail_prob);
    for (int i = 0; i < s1.na_dim; ++i)
        for (int j = 0; j < s1.nb_dim; ++j) out.at(i, j) += c1 * s1.at(i, j);
    for (int i = 0; i < s2.na_dim; ++i)
        for (int j = 0; j < s2.nb_dim; ++j) out.at(i, j) += c2 * s2.at(i, j);
    return out;
}

TwoModeState normalize(TwoModeState s) {
    double n = state_norm(s);
    if (n == 0.0) throw std::invalid_argument("normalize: zero state");
    for (auto& c : s.coeffs) c /= n;
    s.normalized = true;
    return s;
}

TwoModeState pcs_state(const PcsParams& p, const TruncationSpec& t) {
    if (p.delta < 0) throw std::invalid_argument("pcs_state: delta must be >= 0");
    if (!std::isfinite(p.gamma.real()) || !std::isfinite(p.gamma.imag()))
        throw std::invalid_argument("pcs_state: gamma must be finite");
    if (!(t.tail_prob > 0.0 && t.tail_prob < 1e-6))
        throw std::invalid_argument("pcs_state: tail_prob out of (0, 1e-6)");
    const int margin = t.margin >= 0 ? t.margin : 6;

    const double g = std::abs(p.gamma);
    int n_cut = 0;
    if (g > 0.0) {
        // normalized weights w_n/I_delta with w_n = g^(2n+delta)/(n!(n+delta)!)
        const double total = bessel_i(p.delta, 2.0 * g);
        double cum = 0.0;
        const double target = (1.0 - t.tail_prob) * total;
        while (true) {
            cum += std::exp((2.0 * n_cut + p.delta) * std::log(g) - log_factorial(n_cut) -
                            log_factorial(n_cut + p.delta));
            if (cum >= target) break;
            ++n_cut;
            if (n_cut + p.delta + margin >= t.hard_dim_limit)
                throw std::runtime_error("pcs_state: cutoff search exceeded hard dimension limit");
        }
    }

    TwoModeState s(n_cut + p.delta + 1 + margin, n_cut + 1 + margin);
    s.tail_prob = t.tail_prob;
    if (g == 0.0) {
        s.at(p.delta, 0) = 1.0;
        s.normalized = true;
        return s;
    }
    const double lg = std::log(g);
    const double ph = std::arg(p.gamma);
    for (int n = 0; n <= n_cut; ++n) {
        double mag = std::exp((n + 0.5 * p.delta) * lg - 0.5 * log_factorial(n) -
                              0.5 * log_factorial(n + p.delta));
        s.at(n + p.delta, n) = std::polar(mag, (n + 0.5 * p.delta) * ph);
    }
    return normalize(std::move(s));
}

TwoModeState apply_ladder(const TwoModeState& s, Mode mode, Ladder kind) {
    const int dim = mode == Mode::a ? s.na_dim : s.nb_dim;
    if (kind == Ladder::Raise) {
        // top level must be effectively empty or amplitude is pushed off the grid
        double top = 0.0;
        if (mode == Mode::a)
            for (int j = 0; j < s.nb_dim; ++j) top += std::norm(s.at(s.na_dim - 1, j));
        else
            for (int i = 0; i < s.na_dim; ++i) top += std::norm(s.at(i, s.nb_dim - 1));
        if (top > s.tail_prob)
            throw std::runtime_error("apply_ladder: truncation overflow (occupied top level)");
    }
    TwoModeState out(s.na_dim, s.nb_dim);
    out.tail_prob = s.tail_prob;
    for (int i = 0; i < s.na_dim; ++i) {
        for (int j = 0; j < s.nb_dim; ++j) {
            int k = mode == Mode::a ? i : j;
            if (kind == Ladder::Lower) {
                if (k + 1 >= dim) continue;
                double f = std::sqrt(k + 1.0);
                out.at(i, j) = f * (mode == Mode::a ? s.at(i + 1, j) : s.at(i, j + 1));
            } else {
                if (k + 1 >= dim) continue;
                double f = std::sqrt(k + 1.0);
                if (mode == Mode::a)
                    out.at(i + 1, j) = f * s.at(i, j);
                else
                    out.at(i, j + 1) = f * s.at(i, j);
            }
        }
    }
    return out;
}

namespace detail {

std::vector<Complex> displacement_matrix(Complex amp, int dim) {
    std::vector<Complex> mat(static_cast<size_t>(dim) * dim);
    for (int m = 0; m < dim; ++m)
        for (int n = 0; n < dim; ++n) mat[static_cast<size_t>(m) * dim + n] = displacement_element(m, n, amp);
    return mat;
}

TwoModeState apply_mode_matrix(const TwoModeState& s, Mode mode, const std::vector<Complex>& mat,
                               int dim) {
    if (mode == Mode::a) {
        if (dim != s.na_dim) throw std::invalid_argument("apply_mode_matrix: dim mismatch");
        TwoModeState out(s.na_dim, s.nb_dim);
        out.tail_prob = s.tail_prob;
        out.normalized = s.normalized;
        for (int m = 0; m < dim; ++m) {
            const Complex* row = &mat[static_cast<size_t>(m) * dim];
            for (int n = 0; n < dim; ++n) {
                const Complex w = row[n];
                if (w == Complex(0.0)) continue;
                const Complex* src = &s.coeffs[static_cast<size_t>(n) * s.nb_dim];
                Complex* dst = &out.coeffs[static_cast<size_t>(m) * s.nb_dim];
                for (int j = 0; j < s.nb_dim; ++j) dst[j] += w * src[j];
            }
        }
        return out;
    }
    if (dim != s.nb_dim) throw std::invalid_argument("apply_mode_matrix: dim mismatch");
    TwoModeState out(s.na_dim, s.nb_dim);
    out.tail_prob = s.tail_prob;
    out.normalized = s.normalized;
    for (int i = 0; i < s.na_dim; ++i) {
        const Complex* src = &s.coeffs[static_cast<size_t>(i) * s.nb_dim];
        Complex* dst = &out.coeffs[static_cast<size_t>(i) * s.nb_dim];
        for (int m = 0; m < dim; ++m) {
            const Complex* row = &mat[static_cast<size_t>(m) * dim];
            Complex acc(0.0);
            for (int n = 0; n < dim; ++n) acc += row[n] * src[n];
            dst[m] = acc;
        }
    }
    return out;
}

int effective_top_level(const TwoModeState& s, Mode mode) {
    const int dim = mode == Mode::a ? s.na_dim : s.nb_dim;
    const double total = state_norm(s);
    const double thresh = s.tail_prob * std::max(total * total, 1e-300);
    double tail = 0.0;
    for (int k = dim - 1; k >= 0; --k) {
        double mass = 0.0;
        if (mode == Mode::a)
            for (int j = 0; j < s.nb_dim; ++j) mass += std::norm(s.at(k, j));
        else
            for (int i = 0; i < s.na_dim; ++i) mass += std::norm(s.at(i, k));
        tail += mass;
        if (tail > thresh) return k;
    }
    return 0;
}

} // namespace detail

TwoModeState displace_mode(const TwoModeState& s, Mode mode, Complex amp) {
    const int dim = mode == Mode::a ? s.na_dim : s.nb_dim;
    if (amp == Complex(0.0)) return s;
    const int top = detail::effective_top_level(s, mode);
    if (dim - 1 - top < displacement_margin(std::abs(amp)))
        throw std::runtime_error("displace_mode: insufficient headroom");
    auto mat = detail::displacement_matrix(amp, dim);
    TwoModeState out = detail::apply_mode_matrix(s, mode, mat, dim);
    const double before = state_norm(s);
    const double after = state_norm(out);
    if (std::abs(after - before) > 1e-9 * std::max(before, 1.0))
        throw std::runtime_error("displace_mode: norm drift beyond 1e-9 (truncation too tight)");
    return out;
}

Complex inner(const TwoModeState& s1, const TwoModeState& s2) {
    const int na = std::min(s1.na_dim, s2.na_dim);
    const int nb = std::min(s1.nb_dim, s2.nb_dim);
    Complex acc(0.0);
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < nb; ++j) acc += std::conj(s1.at(i, j)) * s2.at(i, j);
    return acc;
}

Complex moment(const TwoModeState& s, int p, int q, int r, int t) {
    if (p < 0 || q < 0 || r < 0 || t < 0)
        throw std::invalid_argument("moment: exponents must be >= 0");
    TwoModeState right = s;
    for (int k = 0; k < q; ++k) right = apply_ladder(right, Mode::a, Ladder::Lower);
    for (int k = 0; k < t; ++k) right = apply_ladder(right, Mode::b, Ladder::Lower);
    TwoModeState left = s;
    for (int k = 0; k < p; ++k) left = apply_ladder(left, Mode::a, Ladder::Lower);
    for (int k = 0; k < r; ++k) left = apply_ladder(left, Mode::b, Ladder::Lower);
    return inner(left, right);
}

double joint_parity_expectation(const TwoModeState& s) {
    double acc = 0.0;
    double n2 = 0.0;
    for (int i = 0; i < s.na_dim; ++i) {
        for (int j = 0; j < s.nb_dim; ++j) {
            double w = std::norm(s.at(i, j));
            acc += ((i + j) % 2 == 0 ? w : -w);
            n2 += w;
        }
    }
    if (n2 == 0.0) throw std::invalid_argument("joint_parity_expectation: zero state");
    return acc / n2;
}

} // namespace pcslab

#ifndef PCSLAB_SPECFUN_HPP
#define PCSLAB_SPECFUN_HPP

#include <complex>

namespace pcslab {

/// Truncation policy for the infinite series used throughout the library.
/// A series is cut once the latest term stays below rel_tol times the
/// running scale for three consecutive terms.
struct SeriesControl {
    double rel_tol = 1e-14;
    int max_terms = 10000;
};

/// ln(n!). Exact integer factorial for n <= 20, lgamma above.
double log_factorial(int n);

/// Modified Bessel function of the first kind, integer order, by direct
/// summation of  sum_n x^(2n+d) / (n! (n+d)! 2^(2n+d)).
/// Negative orders use the symmetry I_{-n}(x) = I_n(x).
double bessel_i(int order, double x, const SeriesControl& ctl = {});

/// Associated Laguerre polynomial L_n^{(d)}(x) as the finite sum
/// sum_{m=0..n} (-1)^m C(n+d, m+d) x^m / m!  for n <= 30, and the
/// three-term recurrence above that.
double laguerre_assoc(int n, int d, double x);

/// Displacement operator matrix element <m|D(amp)|n> in the Fock basis,
/// in the Laguerre closed form for both orderings (m >= n and m < n).
std::complex<double> displacement_element(int m, int n, std::complex<double> amp);

} // namespace pcslab

#endif

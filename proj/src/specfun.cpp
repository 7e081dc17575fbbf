#include "pcslab/specfun.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pcslab {

namespace {

// n! for n <= 20 fits in a 64-bit integer exactly.
constexpr double kExactFactorial[21] = {
    1.0, 1.0, 2.0, 6.0, 24.0, 120.0, 720.0, 5040.0, 40320.0, 362880.0,
    3628800.0, 39916800.0, 479001600.0, 6227020800.0, 87178291200.0,
    1307674368000.0, 20922789888000.0, 355687428096000.0,
    6402373705728000.0, 121645100408832000.0, 2432902008176640000.0};

} // namespace

double log_factorial(int n) {
    if (n < 0) throw std::invalid_argument("log_factorial: negative n");
    if (n <= 20) return std::log(kExactFactorial[n]);
    return std::lgamma(static_cast<double>(n) + 1.0);
}

double bessel_i(int order, double x, const SeriesControl& ctl) {
    if (!(ctl.rel_tol > 0.0) || ctl.max_terms < 1)
        throw std::invalid_argument("SeriesControl: rel_tol > 0 and max_terms >= 1 required");
    if (!std::isfinite(x) || x < 0)
        throw std::invalid_argument("bessel_i: x must be finite and >= 0");
    int d = order < 0 ? -order : order; // I_{-n} = I_n
    if (x == 0.0) return d == 0 ? 1.0 : 0.0;

    // term_n = x^(2n+d) / (n! (n+d)! 2^(2n+d)); term_{n+1}/term_n = (x/2)^2 / ((n+1)(n+1+d))
    const double q = 0.25 * x * x;
    double term = std::exp(d * std::log(0.5 * x) - log_factorial(d));
    double sum = term;
    int flat = 0;
    for (int n = 0; n < ctl.max_terms; ++n) {
        term *= q / ((n + 1.0) * (n + 1.0 + d));
        sum += term;
        if (term < ctl.rel_tol * sum) {
            if (++flat >= 3) return sum;
        } else {
            flat = 0;
        }
    }
    throw std::runtime_error("bessel_i: series did not converge within max_terms");
}

double laguerre_assoc(int n, int d, double x) {
    if (n < 0 || d < 0)
        throw std::invalid_argument("laguerre_assoc: negative index");
    if (n == 0) return 1.0;
    if (n <= 30) {
        // exact finite sum in extended precision; term_0 = C(n+d, d),
        // term ratio -x (n-m) / ((m+1)(m+1+d))
        long double term = 1.0L;
        for (int i = 1; i <= n; ++i) term *= (d + i) / static_cast<long double>(i);
        long double sum = term;
        const long double lx = x;
        for (int m = 0; m < n; ++m) {
            term *= -lx * (n - m) / ((m + 1.0L) * (m + 1.0L + d));
            sum += term;
        }
        return static_cast<double>(sum);
    }
    // stable three-term recurrence in the degree
    double lm2 = 1.0;
    double lm1 = 1.0 + d - x;
    for (int k = 2; k <= n; ++k) {
        double lk = ((2.0 * k - 1.0 + d - x) * lm1 - (k - 1.0 + d) * lm2) / k;
        lm2 = lm1;
        lm1 = lk;
    }
    return lm1;
}

std::complex<double> displacement_element(int m, int n, std::complex<double> amp) {
    if (m < 0 || n < 0)
        throw std::invalid_argument("displacement_element: negative index");
    if (!std::isfinite(amp.real()) || !std::isfinite(amp.imag()))
        throw std::invalid_argument("displacement_element: non-finite amplitude");
    const double a2 = std::norm(amp);
    if (a2 == 0.0) return m == n ? 1.0 : 0.0;
    if (m >= n) {
        double pre = std::exp(0.5 * (log_factorial(n) - log_factorial(m)) - 0.5 * a2);
        return pre * std::pow(amp, m - n) * laguerre_assoc(n, m - n, a2);
    }
    double pre = std::exp(0.5 * (log_factorial(m) - log_factorial(n)) - 0.5 * a2);
    return pre * std::pow(-std::conj(amp), n - m) * laguerre_assoc(m, n - m, a2);
}

} // namespace pcslab

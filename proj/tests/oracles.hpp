// Test-only oracles, independent of the library's evaluation paths.
#ifndef PCSLAB_TESTS_ORACLES_HPP
#define PCSLAB_TESTS_ORACLES_HPP

#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace oracles {

using Complex = std::complex<double>;

// --- dense matrix exponential (scaling and squaring, Taylor core) ---

inline std::vector<Complex> matmul(const std::vector<Complex>& a, const std::vector<Complex>& b,
                                   int n) {
    std::vector<Complex> c(static_cast<size_t>(n) * n, Complex(0.0));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            Complex aik = a[static_cast<size_t>(i) * n + k];
            if (aik == Complex(0.0)) continue;
            for (int j = 0; j < n; ++j)
                c[static_cast<size_t>(i) * n + j] += aik * b[static_cast<size_t>(k) * n + j];
        }
    return c;
}

inline std::vector<Complex> expm(std::vector<Complex> m, int n) {
    double norm1 = 0.0;
    for (int j = 0; j < n; ++j) {
        double col = 0.0;
        for (int i = 0; i < n; ++i) col += std::abs(m[static_cast<size_t>(i) * n + j]);
        norm1 = std::max(norm1, col);
    }
    int s = 0;
    while (norm1 > 0.5) {
        norm1 *= 0.5;
        ++s;
    }
    const double scale = std::ldexp(1.0, -s);
    for (auto& v : m) v *= scale;

    std::vector<Complex> result(static_cast<size_t>(n) * n, Complex(0.0));
    for (int i = 0; i < n; ++i) result[static_cast<size_t>(i) * n + i] = 1.0;
    std::vector<Complex> term = result;
    for (int k = 1; k <= 24; ++k) {
        term = matmul(term, m, n);
        for (auto& v : term) v /= static_cast<double>(k);
        for (size_t i = 0; i < result.size(); ++i) result[i] += term[i];
    }
    for (int i = 0; i < s; ++i) result = matmul(result, result, n);
    return result;
}

// <m|exp(amp a^dag - conj(amp) a)|n> by brute force at the given dimension.
inline Complex displacement_element_expm(int row, int col, Complex amp, int dim = 40) {
    std::vector<Complex> gen(static_cast<size_t>(dim) * dim, Complex(0.0));
    for (int n = 0; n + 1 < dim; ++n) {
        const double r = std::sqrt(n + 1.0);
        gen[static_cast<size_t>(n + 1) * dim + n] += amp * r;          // a^dag
        gen[static_cast<size_t>(n) * dim + n + 1] -= std::conj(amp) * r; // a
    }
    auto d = expm(std::move(gen), dim);
    return d[static_cast<size_t>(row) * dim + col];
}

// --- exact rational arithmetic for small Laguerre sums ---

struct Frac {
    long long num = 0, den = 1;
    void reduce() {
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        if (den < 0) {
            num = -num;
            den = -den;
        }
    }
    Frac operator+(const Frac& o) const {
        Frac r{num * o.den + o.num * den, den * o.den};
        r.reduce();
        return r;
    }
    Frac operator*(const Frac& o) const {
        Frac r{num * o.num, den * o.den};
        r.reduce();
        return r;
    }
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

inline long long binom_ll(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// L_n^{(d)}(p/q) = sum_m (-1)^m C(n+d, m+d) (p/q)^m / m!, exact for small n.
inline Frac laguerre_rational(int n, int d, long long p, long long q) {
    Frac total{0, 1};
    Frac xm{1, 1};
    long long mfact = 1;
    for (int m = 0; m <= n; ++m) {
        if (m > 0) {
            xm = xm * Frac{p, q};
            mfact *= m;
        }
        Frac term = xm * Frac{(m % 2 ? -1 : 1) * binom_ll(n + d, m + d), mfact};
        total = total + term;
    }
    return total;
}

// --- direct high-precision Bessel series, n <= 60 terms ---

inline double bessel_i_series_ld(int order, double x, int terms = 60) {
    const int d = order < 0 ? -order : order;
    long double sum = 0.0L;
    for (int n = 0; n < terms; ++n) {
        long double t = 1.0L;
        for (int i = 1; i <= n; ++i) t /= i;
        for (int i = 1; i <= n + d; ++i) t /= i;
        t *= std::pow(static_cast<long double>(x) / 2.0L, 2 * n + d);
        sum += t;
    }
    return static_cast<double>(sum);
}

} // namespace oracles

#endif

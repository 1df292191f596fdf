#include "momint/specfun.hpp"

#include <cmath>

#include "momint/errors.hpp"

namespace momint::specfun {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTwoOverSqrtPi = 1.1283791670955125738961589031215452;
constexpr long double kSqrtPiL = 1.77245385090551602729816748334114518L;
constexpr long double kGamma32L = 0.886226925452758013649083741670572591L;    // Gamma(3/2)
constexpr long double kGamma52L = 1.329340388179137020473625612505858887L;    // Gamma(5/2)
constexpr long double kGammaM12L = -3.544907701811032054596334966682290366L;  // Gamma(-1/2)

bool agree(double a, double b, const EvalAccuracy& acc) {
    return std::abs(a - b) <= acc.abs_tol + acc.rel_tol * std::max(std::abs(a), std::abs(b));
}

double dawson_maclaurin(double x) {
    // D(x) = x - 2x^3/3 + 4x^5/15 - ...;  t_{k+1} = t_k * (-2x^2)/(2k+3)
    const double x2 = x * x;
    double term = x, sum = x;
    for (int k = 0; k < 40; ++k) {
        term *= -2.0 * x2 / (2.0 * k + 3.0);
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

double dawson_sampling(double x) {
    // Exponentially convergent sampling series over odd multiples of h.
    // With h = 0.2 the truncation error is exp(-(pi/(2h))^2) ~ 1.6e-27;
    // summands beyond |x - nh| = 6.5 are below 4e-19 and are dropped.
    const double h = 0.2;
    const double cut = 6.5;
    long double sum = 0.0L;
    int n = static_cast<int>(std::floor((x - cut) / h));
    if (n % 2 == 0) ++n;
    const int n_hi = static_cast<int>(std::ceil((x + cut) / h));
    for (; n <= n_hi; n += 2) {
        const double u = x - n * h;
        sum += std::exp(-u * u) / n;
    }
    return static_cast<double>(sum / kSqrtPiL);
}

double dawson_asymptotic(double x) {
    // D(x) ~ (1/2x) sum_k (2k-1)!!/(2x^2)^k, truncated at the smallest term
    const double inv2x2 = 1.0 / (2.0 * x * x);
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 60; ++k) {
        const double next = term * (2.0 * k - 1.0) * inv2x2;
        if (std::abs(next) >= std::abs(term)) break;
        term = next;
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum / (2.0 * x);
}

// Joint Hankel-expansion core for J_nu and Y_nu, x >= oscillatory_switch.
double hankel_asymptotic(int order, double x, bool want_y) {
    const long double mu = 4.0L * order * order;
    long double t = 1.0L;
    long double P = 1.0L, Q = 0.0L;
    long double prev = 1.0L;
    for (int j = 1; j < 60; ++j) {
        t *= (mu - (2.0L * j - 1.0L) * (2.0L * j - 1.0L)) / (8.0L * j * (long double)x);
        if (fabsl(t) >= prev && j > 2) break;
        prev = fabsl(t);
        switch (j % 4) {
            case 0: P += t; break;
            case 1: Q += t; break;
            case 2: P -= t; break;
            default: Q -= t; break;
        }
        if (fabsl(t) < 1e-20L) break;
    }
    const double chi = x - (0.5 * order + 0.25) * kPi;
    const double amp = std::sqrt(2.0 / (kPi * x));
    if (want_y) return amp * (std::sin(chi) * (double)P + std::cos(chi) * (double)Q);
    return amp * (std::cos(chi) * (double)P - std::sin(chi) * (double)Q);
}

}  // namespace

namespace detail {

double erfi_series(double x) {
    // (2/sqrt(pi)) sum_k x^{2k+1} / (k! (2k+1)); every term has the sign of
    // x, so there is no cancellation.  Accumulated in long double.
    const long double x2 = (long double)x * (long double)x;
    long double u = x;
    long double sum = u;
    for (int k = 1; k < 2000; ++k) {
        u *= x2 / (long double)k;
        const long double term = u / (long double)(2 * k + 1);
        sum += term;
        if (fabsl(term) < 1e-20L * fabsl(sum)) break;
    }
    return (double)((2.0L / kSqrtPiL) * sum);
}

double erfi_via_dawson(double x) {
    return kTwoOverSqrtPi * std::exp(x * x) * dawson(x);
}

std::complex<double> erfi_series(std::complex<double> z) {
    const std::complex<long double> zl(z.real(), z.imag());
    const std::complex<long double> z2 = zl * zl;
    std::complex<long double> u = zl;
    std::complex<long double> sum = u;
    for (int k = 1; k < 2000; ++k) {
        u *= z2 / (long double)k;
        const std::complex<long double> term = u / (long double)(2 * k + 1);
        sum += term;
        if (std::abs(term) < 1e-20L * std::abs(sum)) break;
    }
    const std::complex<long double> r = (2.0L / kSqrtPiL) * sum;
    return {(double)r.real(), (double)r.imag()};
}

std::complex<double> erfi_continued_fraction(std::complex<double> z) {
    // Laplace continued fraction for erfc along u = -iz; requires Re u > 0,
    // i.e. Im z > 0, and is used when the series would cancel badly.
    using C = std::complex<long double>;
    const C zl(z.real(), z.imag());
    const C u(z.imag(), -z.real());
    const long double tiny = 1e-300L;
    C f(tiny, 0.0L), Cc(tiny, 0.0L), D(0.0L, 0.0L);
    for (int m = 1; m <= 400; ++m) {
        const long double a = (m == 1) ? 1.0L : 0.5L * (m - 1);
        D = u + a * D;
        if (D == C(0.0L, 0.0L)) D = C(tiny, 0.0L);
        Cc = u + a / Cc;
        if (Cc == C(0.0L, 0.0L)) Cc = C(tiny, 0.0L);
        D = 1.0L / D;
        const C delta = Cc * D;
        f *= delta;
        if (std::abs(delta - C(1.0L, 0.0L)) < 1e-17L) break;
    }
    // sqrt(pi) exp(u^2) erfc(u) = f  and  u^2 = -z^2, hence
    // erfi(z) = i - i erfc(u) = i - i exp(z^2) f / sqrt(pi)
    const C erfc_u = std::exp(zl * zl) * f / kSqrtPiL;
    const C result = C(0.0L, 1.0L) * (C(1.0L, 0.0L) - erfc_u);
    return {(double)result.real(), (double)result.imag()};
}

double bessel_j_series(int order, double x) {
    const long double xh = 0.5L * (long double)x;
    long double term = 1.0L;
    for (int i = 1; i <= order; ++i) term *= xh / i;
    long double sum = term;
    const long double mx2 = -xh * xh;
    for (int k = 1; k < 200; ++k) {
        term *= mx2 / ((long double)k * (long double)(k + order));
        sum += term;
        if (fabsl(term) < 1e-24L) break;
    }
    return (double)sum;
}

double bessel_j_asymptotic(int order, double x) {
    return hankel_asymptotic(order, x, false);
}

double bessel_y_asymptotic(int order, double x) {
    return hankel_asymptotic(order, x, true);
}

double struve_h_series(int order, double x) {
    // sum_k (-1)^k (x/2)^{2k+order+1} / (Gamma(k+3/2) Gamma(k+order+3/2))
    const long double xh = 0.5L * (long double)x;
    long double t;
    switch (order) {
        case 1: t = xh * xh / (kGamma32L * kGamma52L); break;
        case 0: t = xh / (kGamma32L * kGamma32L); break;
        case -2: t = (1.0L / xh) / (kGamma32L * kGammaM12L); break;
        default: throw DomainError("struve_h_series: unsupported order");
    }
    long double sum = t;
    const long double x2 = xh * xh;
    for (int k = 1; k < 300; ++k) {
        t *= -x2 / (((long double)k + 0.5L) * ((long double)k + order + 0.5L));
        sum += t;
        if (fabsl(t) < 1e-24L * (1.0L + fabsl(sum))) break;
    }
    return (double)sum;
}

double struve_h_asymptotic(int order, double x) {
    // H_nu(x) = Y_nu(x) + (1/pi) sum_k Gamma(k+1/2) (x/2)^{nu-2k-1} / Gamma(nu+1/2-k),
    // truncated at the smallest term; the floor of that term is O(exp(-x)),
    // which bounds the accuracy of this branch near the series handover.
    if (order != 0 && order != 1) throw DomainError("struve_h_asymptotic: unsupported order");
    long double t = (order == 1) ? 2.0L : 2.0L / (long double)x;
    long double sum = t;
    long double prev = fabsl(t);
    const long double x2 = 0.25L * (long double)x * (long double)x;
    for (int k = 0; k < 80; ++k) {
        const long double next = t * ((long double)k + 0.5L) * ((long double)order - 0.5L - k) / x2;
        if (fabsl(next) >= prev) break;
        t = next;
        prev = fabsl(t);
        sum += t;
        if (fabsl(t) < 1e-22L) break;
    }
    const long double pi_l = 3.141592653589793238462643383279502884L;
    return bessel_y_asymptotic(order, x) + (double)(sum / pi_l);
}

}  // namespace detail

double dawson(double x) {
    if (!std::isfinite(x)) throw DomainError("dawson: non-finite argument");
    const double ax = std::abs(x);
    if (ax < 0.25) return dawson_maclaurin(x);
    if (ax <= 7.5) return dawson_sampling(x);
    return dawson_asymptotic(x);
}

double erfi_real(double x, const EvalAccuracy& acc) {
    if (!(std::abs(x) <= erfi_overflow_limit))
        throw OverflowError("erfi_real: |x| exceeds the representable range");
    const double a = detail::erfi_series(x);
    const double b = detail::erfi_via_dawson(x);
    if (!agree(a, b, acc))
        throw NumericalError("erfi_real: series and Dawson paths disagree");
    return a;
}

double erfi_real(double x) {
    return erfi_real(x, EvalAccuracy{});
}

std::complex<double> erfi_complex(std::complex<double> z) {
    if (!(std::isfinite(z.real()) && std::isfinite(z.imag())))
        throw DomainError("erfi_complex: non-finite argument");
    if (z.real() < 0.0) return -erfi_complex(-z);
    if (z.imag() < 0.0) return std::conj(erfi_complex(std::conj(z)));
    if (z.real() * z.real() - z.imag() * z.imag() > 700.0)
        throw OverflowError("erfi_complex: exp(z^2) overflows");
    if (z.imag() == 0.0) return {erfi_real(z.real()), 0.0};
    // The Maclaurin series loses about exp(2 Im(z)^2) relative digits to
    // cancellation; past Im z = 2.125 switch to the continued fraction.
    if (z.imag() <= 2.125) return detail::erfi_series(z);
    return detail::erfi_continued_fraction(z);
}

double hermite(int n, double y) {
    if (n < 0 || n > 60) throw DomainError("hermite: order must be in [0, 60]");
    double hm = 1.0;
    if (n == 0) return hm;
    double h = 2.0 * y;
    for (int k = 1; k < n; ++k) {
        const double hp = 2.0 * y * h - 2.0 * k * hm;
        hm = h;
        h = hp;
    }
    return h;
}

double bessel_j(int order, double x) {
    if (order != 1 && order != 2) throw DomainError("bessel_j: order must be 1 or 2");
    if (!(std::abs(x) <= 200.0)) throw DomainError("bessel_j: |x| must be <= 200");
    if (x == 0.0) return 0.0;
    const double ax = std::abs(x);
    const double sign = (x < 0.0 && order == 1) ? -1.0 : 1.0;  // J1 odd, J2 even
    const double v = (ax < oscillatory_switch) ? detail::bessel_j_series(order, ax)
                                               : detail::bessel_j_asymptotic(order, ax);
    return sign * v;
}

double struve_h(int order, double x) {
    if (order != -2 && order != 0 && order != 1)
        throw DomainError("struve_h: order must be -2, 0, or 1");
    if (!(std::abs(x) <= 200.0)) throw DomainError("struve_h: |x| must be <= 200");
    if (order == -2) {
        if (x == 0.0) throw DomainError("struve_h: order -2 is singular at x = 0");
        return (2.0 / x) * struve_h(1, x) - struve_h(0, x) - 2.0 / (kPi * x);
    }
    if (x == 0.0) return 0.0;
    const double ax = std::abs(x);
    const double sign = (x < 0.0 && order == 0) ? -1.0 : 1.0;  // H0 odd, H1 even
    const double v = (ax < oscillatory_switch) ? detail::struve_h_series(order, ax)
                                               : detail::struve_h_asymptotic(order, ax);
    return sign * v;
}

}  // namespace momint::specfun

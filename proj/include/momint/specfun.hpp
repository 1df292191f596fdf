#pragma once

#include <complex>

namespace momint::specfun {

// Agreement contract for functions evaluated through two independent paths.
struct EvalAccuracy {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
};

// exp(x^2) stays below DBL_MAX for |x| up to about 26.6; erfi overflows with it.
inline constexpr double erfi_overflow_limit = 26.5;

// Series/asymptotic handover for Bessel and Struve evaluations.
inline constexpr double oscillatory_switch = 18.0;

// Dawson integral D(x) = exp(-x^2) * int_0^x exp(t^2) dt.
double dawson(double x);

// erfi(x) = (2/sqrt(pi)) * int_0^x exp(t^2) dt.  Evaluates both the
// all-positive power series and the Dawson route and insists they agree
// within EvalAccuracy before returning.  |x| > erfi_overflow_limit throws
// OverflowError.
double erfi_real(double x);
double erfi_real(double x, const EvalAccuracy& acc);

// Analytic continuation of erfi.  Intended domain |Re z| <= 6, |Im z| <= 6
// (larger arguments are accepted while exp(z^2) is representable).
// Satisfies erfi(-z) = -erfi(z) and erfi(conj z) = conj(erfi(z)) exactly,
// by construction.
std::complex<double> erfi_complex(std::complex<double> z);

// Physicists' Hermite polynomial H_n by three-term recurrence, n <= 60.
double hermite(int n, double y);

// Bessel J_nu for nu in {1, 2}, |x| <= 200.
double bessel_j(int order, double x);

// Struve H_nu for nu in {-2, 0, 1}, |x| <= 200.  Order -2 is produced from
// orders 0 and 1 through the downward recurrence
//   H_{-2}(x) = (2/x) H_1(x) - H_0(x) - 2/(pi x),   x != 0.
double struve_h(int order, double x);

namespace detail {
// Individual evaluation paths, exposed so tests can cross-validate them.
double erfi_series(double x);
double erfi_via_dawson(double x);
std::complex<double> erfi_series(std::complex<double> z);
std::complex<double> erfi_continued_fraction(std::complex<double> z);
double bessel_j_series(int order, double x);
double bessel_j_asymptotic(int order, double x);
double bessel_y_asymptotic(int order, double x);
double struve_h_series(int order, double x);
double struve_h_asymptotic(int order, double x);
}  // namespace detail

}  // namespace momint::specfun

#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace momint::numerics {

double trapezoid(const std::vector<double>& f, double h);
std::complex<double> trapezoid(const std::vector<std::complex<double>>& f, double h);

// prefix[i] = trapezoid integral from x_0 to x_i (prefix[0] = 0).
std::vector<std::complex<double>> cumulative_trapezoid(
    const std::vector<std::complex<double>>& f, double h);

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double max_abs_residual = 0.0;
};

FitResult linear_fit(const std::vector<double>& x, const std::vector<double>& y);

// Golden-section minimization on a bracket [a, b]; assumes the minimum is
// interior.  Returns the abscissa once the bracket shrinks below x_tol.
double minimize_golden(const std::function<double(double)>& f,
                       double a, double b, double x_tol);

// Vertex of the parabola through (x0,f0), (x1,f1), (x2,f2); falls back to x1
// when the three points are collinear or the curvature is non-positive.
double parabolic_vertex(double x0, double f0, double x1, double f1, double x2, double f2);

// Bracketed root finding (bisection safeguarded secant).  Requires a sign
// change between a and b.
double find_root(const std::function<double(double)>& f,
                 double a, double b, double x_tol);

}  // namespace momint::numerics

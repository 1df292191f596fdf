#include "momint/numerics.hpp"

#include <cmath>
#include <cstddef>

#include "momint/errors.hpp"

namespace momint::numerics {

double trapezoid(const std::vector<double>& f, double h) {
    if (f.size() < 2) return 0.0;
    double s = 0.5 * (f.front() + f.back());
    for (std::size_t i = 1; i + 1 < f.size(); ++i) s += f[i];
    return s * h;
}

std::complex<double> trapezoid(const std::vector<std::complex<double>>& f, double h) {
    if (f.size() < 2) return {0.0, 0.0};
    std::complex<double> s = 0.5 * (f.front() + f.back());
    for (std::size_t i = 1; i + 1 < f.size(); ++i) s += f[i];
    return s * h;
}

std::vector<std::complex<double>> cumulative_trapezoid(
    const std::vector<std::complex<double>>& f, double h) {
    std::vector<std::complex<double>> prefix(f.size());
    if (f.empty()) return prefix;
    prefix[0] = {0.0, 0.0};
    for (std::size_t i = 1; i < f.size(); ++i)
        prefix[i] = prefix[i - 1] + 0.5 * h * (f[i - 1] + f[i]);
    return prefix;
}

FitResult linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw DomainError("linear_fit: need matching vectors with >= 2 points");
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) { sx += x[i]; sy += y[i]; }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw DomainError("linear_fit: degenerate abscissae");
    FitResult r;
    r.slope = sxy / sxx;
    r.intercept = my - r.slope * mx;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double res = std::abs(y[i] - (r.intercept + r.slope * x[i]));
        if (res > r.max_abs_residual) r.max_abs_residual = res;
    }
    return r;
}

double minimize_golden(const std::function<double(double)>& f,
                       double a, double b, double x_tol) {
    const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > x_tol) {
        if (f1 < f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

double parabolic_vertex(double x0, double f0, double x1, double f1, double x2, double f2) {
    const double num = (x1 - x0) * (x1 - x0) * (f1 - f2) - (x1 - x2) * (x1 - x2) * (f1 - f0);
    const double den = (x1 - x0) * (f1 - f2) - (x1 - x2) * (f1 - f0);
    if (den == 0.0) return x1;
    const double vx = x1 - 0.5 * num / den;
    const double lo = std::min(x0, x2), hi = std::max(x0, x2);
    if (!(vx > lo && vx < hi)) return x1;
    return vx;
}

double find_root(const std::function<double(double)>& f,
                 double a, double b, double x_tol) {
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0))
        throw DomainError("find_root: endpoints do not bracket a sign change");
    for (int it = 0; it < 200; ++it) {
        if (std::abs(b - a) <= x_tol) break;
        // secant proposal, clipped to the bracket interior; bisection fallback
        double m = 0.5 * (a + b);
        double s = m;
        if (fb != fa) {
            s = b - fb * (b - a) / (fb - fa);
            const double lo = std::min(a, b), hi = std::max(a, b);
            if (!(s > lo + 0.01 * (hi - lo) && s < hi - 0.01 * (hi - lo))) s = m;
        }
        const double fs = f(s);
        if (fs == 0.0) return s;
        if ((fs > 0.0) == (fa > 0.0)) { a = s; fa = fs; }
        else { b = s; fb = fs; }
    }
    return 0.5 * (a + b);
}

}  // namespace momint::numerics

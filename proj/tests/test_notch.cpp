#include <cmath>
#include <functional>

#include "doctest.h"

#include "momint/errors.hpp"
#include "momint/momentum.hpp"
#include "momint/notch.hpp"
#include "momint/specfun.hpp"

using doctest::Approx;
using namespace momint;

namespace {

constexpr double pi = 3.141592653589793;

std::function<double(double)> reference_curve(double phi) {
    return [phi](double q) { return momentum::reference_density(q, phi, 0.0); };
}

// Both factors of the extrema equation of the reference curve: the density
// is e^{-q^2} F(q)^2 up to a constant, so extrema satisfy F = 0 (the notch)
// or F' - qF = 0 (the flanks).
double extrema_product(double q, double phi) {
    const double c = std::cos(phi / 2.0), s = std::sin(phi / 2.0);
    const double f = c + s * specfun::erfi_real(q / std::sqrt(2.0));
    const double fp = s * std::sqrt(2.0 / pi) * std::exp(q * q / 2.0);
    return f * (fp - q * f);
}

}  // namespace

TEST_CASE("reference notch at phi = pi") {
    const auto m = notch::find_notch(reference_curve(pi));
    CHECK(std::abs(m.q0) < 1e-8);
    CHECK(std::abs(m.visibility - 1.0) < 1e-10);
    CHECK(m.depth < 1e-12);
    CHECK(m.width == Approx(2.61385946234).epsilon(1e-6));
    CHECK(std::abs(m.q_plus + m.q_minus) < 1e-7);  // symmetric flanks
    CHECK(!m.low_visibility);
}

TEST_CASE("width always exceeds sqrt(2 pi)") {
    const double floor = std::sqrt(2.0 * pi);
    for (double phi : {0.6 * pi, 0.8 * pi, pi, 1.2 * pi, 1.4 * pi})
        CHECK(notch::find_notch(reference_curve(phi)).width > floor - 1e-6);
}

TEST_CASE("exact visibility dominates the linearized bound") {
    for (double phi : {0.6 * pi, 0.8 * pi, pi, 1.2 * pi, 1.4 * pi}) {
        const auto m = notch::find_notch(reference_curve(phi));
        CHECK(m.visibility >= notch::approx_reference(phi).visibility - 1e-9);
    }
}

TEST_CASE("exact notch position is antisymmetric about pi") {
    for (double delta : {0.1, 0.3, 0.5}) {
        CHECK(std::abs(notch::q0_exact_reference(pi + delta) +
                       notch::q0_exact_reference(pi - delta)) < 1e-9);
        const auto hi = notch::find_notch(reference_curve(pi + delta));
        const auto lo = notch::find_notch(reference_curve(pi - delta));
        CHECK(std::abs(hi.q0 + lo.q0) < 1e-7);
    }
}

TEST_CASE("root-finder and curve-scan locate the same zero") {
    CHECK(std::abs(notch::q0_exact_reference(pi)) < 1e-10);
    const double scanned = notch::find_notch(reference_curve(1.3 * pi)).q0;
    CHECK(std::abs(notch::q0_exact_reference(1.3 * pi) - scanned) < 1e-7);
}

TEST_CASE("linearized shift tracks the exact root through the window") {
    for (int i = 0; i <= 10; ++i) {
        const double phi = (0.75 + 0.05 * i) * pi;
        const double exact = notch::q0_exact_reference(phi);
        const double approx = notch::approx_reference(phi).q0;
        CHECK(std::abs(exact - approx) / std::max(std::abs(approx), 0.05) < 0.10);
    }
}

TEST_CASE("located extrema satisfy the extrema equation") {
    for (double phi : {0.8 * pi, pi, 1.2 * pi}) {
        const auto m = notch::find_notch(reference_curve(phi));
        CHECK(std::abs(extrema_product(m.q0, phi)) < 1e-7);
        CHECK(std::abs(extrema_product(m.q_minus, phi)) < 1e-7);
        CHECK(std::abs(extrema_product(m.q_plus, phi)) < 1e-7);
    }
}

TEST_CASE("linearization constants recompute to their printed values") {
    const auto c = notch::ApproxConstants::make();
    CHECK(c.alpha == Approx(0.209663381232102541).epsilon(1e-12));
    CHECK(c.beta == Approx(0.147521004507452349).epsilon(1e-12));
    CHECK(c.beta / c.alpha == Approx(0.7036088211519538).epsilon(1e-12));
    CHECK(std::llround(c.alpha * 1000.0) == 210);
    CHECK(std::llround(c.beta * 1000.0) == 148);
}

TEST_CASE("linearized reference metrics") {
    const auto at_pi = notch::approx_reference(pi);
    CHECK(at_pi.q0 == Approx(0.0).scale(1.0));
    CHECK(at_pi.q_plus == Approx(std::sqrt(pi / 2.0)).epsilon(1e-12));
    CHECK(at_pi.q_minus == Approx(-std::sqrt(pi / 2.0)).epsilon(1e-12));
    CHECK(at_pi.width == Approx(std::sqrt(2.0 * pi)).epsilon(1e-12));
    CHECK(at_pi.visibility == Approx(1.0).epsilon(1e-12));

    CHECK(notch::approx_reference(pi + 0.2).q0 ==
          Approx(0.1 * std::sqrt(pi / 2.0)).epsilon(1e-12));

    const double v_tilde = notch::approx_reference(1.1 * pi).visibility;
    CHECK(v_tilde == Approx(1.0 - 0.7036088211519538 * 0.1 * pi).epsilon(1e-10));
    CHECK(notch::find_notch(reference_curve(1.1 * pi)).visibility >= v_tilde);
}

TEST_CASE("excited-state linearized slopes") {
    CHECK(notch::q0_approx_excited(pi, 0) == Approx(0.0).scale(1.0));
    CHECK(notch::q0_approx_excited(0.0, 1) == Approx(0.0).scale(1.0));
    const double s2pi = std::sqrt(2.0 * pi);
    // even n: slope (A_n/B_n)/2 about pi; odd n: the same slope about 0
    CHECK(notch::q0_approx_excited(pi + 0.3, 2) == Approx(s2pi / 6.0 * 0.15).epsilon(1e-10));
    CHECK(notch::q0_approx_excited(0.3, 1) == Approx(2.0 / s2pi * 0.15).epsilon(1e-10));
}

TEST_CASE("error taxonomy of the notch finder") {
    CHECK_THROWS_AS(
        notch::find_notch([](double q) { return std::exp(-q * q); }),
        NoNotchError);

    CHECK_THROWS_AS(notch::find_notch([](double q) {
                        const double w = q * q - 1.0;
                        return w * w + 0.1;
                    }),
                    AmbiguousNotchError);

    notch::SearchWindow empty;
    empty.lo = 1.0;
    empty.hi = 1.0;
    CHECK_THROWS_AS(notch::find_notch(reference_curve(pi), empty), DomainError);

    notch::SearchWindow coarse;
    coarse.scan_points = 32;
    CHECK_THROWS_AS(notch::find_notch(reference_curve(pi), coarse), DomainError);
}

TEST_CASE("window widens once to capture out-of-range flanks") {
    notch::SearchWindow tight;
    tight.lo = -1.2;
    tight.hi = 1.2;
    const auto m = notch::find_notch(reference_curve(pi), tight);
    CHECK(m.q_plus == Approx(1.30693).epsilon(1e-4));
    CHECK(m.width == Approx(2.61385946234).epsilon(1e-4));
}

TEST_CASE("low-visibility flag marks the working-range edge") {
    CHECK(notch::low_visibility_threshold == Approx(0.1647349).epsilon(1e-9));
    CHECK(notch::find_notch(reference_curve(0.4 * pi)).low_visibility);
    CHECK(!notch::find_notch(reference_curve(0.5 * pi)).low_visibility);
    CHECK(!notch::find_notch(reference_curve(0.9 * pi)).low_visibility);
}

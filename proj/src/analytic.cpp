#include "thermalnoon/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "thermalnoon/errors.hpp"
#include "thermalnoon/geometry.hpp"

namespace thermalnoon {

namespace {

void require_setup1_order(unsigned order) {
    if (order < 2 || order % 2 != 0)
        throw InvalidArgument("setup 1 needs an even order M >= 2, got " + std::to_string(order));
}

void require_counts(unsigned m1, unsigned m2) {
    if (m1 == 0 || m2 == 0)
        throw InvalidArgument("setup 2 needs m1 >= 1 and m2 >= 1");
}

struct Setup1Coefficients {
    BigInt c1;
    BigInt c2;
};

Setup1Coefficients setup1_coeffs(unsigned order) {
    require_setup1_order(order);
    const unsigned half = order / 2;
    const BigInt sq = factorial_exact(half) * factorial_exact(half);
    return {2 * sq * (binomial_exact(order, half) + 1), 2 * sq};
}

double to_double(const BigInt& v) { return v.convert_to<double>(); }
double to_double(const Rational& v) { return v.convert_to<double>(); }

}  // namespace

BigInt factorial_exact(unsigned n) {
    BigInt f = 1;
    for (unsigned i = 2; i <= n; ++i) f *= i;
    return f;
}

BigInt binomial_exact(unsigned n, unsigned k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    BigInt b = 1;
    for (unsigned i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
}

double setup1_g(unsigned order, double delta1) {
    const auto c = setup1_coeffs(order);
    return to_double(c.c1) + to_double(c.c2) * std::cos(static_cast<double>(order / 2) * delta1);
}

Rational setup1_visibility_exact(unsigned order) {
    const auto c = setup1_coeffs(order);
    return Rational(c.c2, c.c1);
}

double setup1_visibility(unsigned order) { return to_double(setup1_visibility_exact(order)); }

Setup2Coefficients setup2_coeffs(unsigned m1, unsigned m2) {
    require_counts(m1, m2);
    Setup2Coefficients out;
    out.m1 = m1;
    out.m2 = m2;
    out.parity_sign = (m2 % 2 == 1) ? 1 : -1;

    BigInt sum = 0;
    for (unsigned k = 0; k <= m1; ++k) sum += binomial_exact(m1, k) * binomial_exact(m2 + k, k);
    out.c1 = 2 * factorial_exact(m1) * factorial_exact(m2) * sum;

    if (m1 >= m2) {
        const BigInt f1 = factorial_exact(m1);
        out.c2 = (BigInt(1) << (m1 - m2 + 1)) * f1 * f1 / factorial_exact(m1 - m2);
    } else {
        out.c2 = 0;
    }
    return out;
}

double setup2_g(unsigned m1, unsigned m2, double delta1) {
    const auto c = setup2_coeffs(m1, m2);
    return to_double(c.c1) +
           c.parity_sign * to_double(c.c2) * std::cos(static_cast<double>(m2) * delta1);
}

Rational setup2_visibility_exact(unsigned m1, unsigned m2) {
    return setup2_coeffs(m1, m2).visibility_exact();
}

double setup2_visibility(unsigned m1, unsigned m2) {
    return to_double(setup2_visibility_exact(m1, m2));
}

unsigned crossover_threshold(unsigned m2) {
    if (m2 < 2) throw InvalidArgument("crossover_threshold requires m2 >= 2");
    const Rational target = setup1_visibility_exact(2 * m2);
    // Visibility grows towards 1 with m1, so the search always terminates well
    // before this bound for any m2 small enough to evaluate exactly.
    const unsigned limit = 64 * m2 + 64;
    for (unsigned m1 = 1; m1 <= limit; ++m1)
        if (setup2_visibility_exact(m1, m2) > target) return m1;
    throw NumericalFailure("crossover_threshold: no crossing below m1 = " + std::to_string(limit));
}

CorrelationCurve setup1_curve(unsigned order, std::span<const double> grid) {
    require_setup1_order(order);
    CorrelationCurve curve;
    curve.grid.assign(grid.begin(), grid.end());
    curve.values.reserve(grid.size());
    for (double d : grid) curve.values.push_back(setup1_g(order, d));
    curve.order = order;
    curve.m1 = curve.m2 = order / 2;
    curve.layout = std::string(to_string(MovingKind::MmpSpread));
    curve.provenance = "analytic";
    curve.max_harmonic = order / 2;
    curve.validate();
    return curve;
}

CorrelationCurve setup2_curve(unsigned m1, unsigned m2, std::span<const double> grid) {
    const auto c = setup2_coeffs(m1, m2);
    const double c1 = to_double(c.c1);
    const double c2 = c.parity_sign * to_double(c.c2);
    CorrelationCurve curve;
    curve.grid.assign(grid.begin(), grid.end());
    curve.values.reserve(grid.size());
    for (double d : grid) curve.values.push_back(c1 + c2 * std::cos(static_cast<double>(m2) * d));
    curve.order = m1 + m2;
    curve.m1 = m1;
    curve.m2 = m2;
    curve.layout = std::string(to_string(MovingKind::CoLocated));
    curve.provenance = "analytic";
    curve.max_harmonic = m1;
    curve.validate();
    return curve;
}

}  // namespace thermalnoon

#pragma once

#include <cstddef>
#include <span>

#include <boost/multiprecision/cpp_int.hpp>

#include "thermalnoon/curve.hpp"

namespace thermalnoon {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt factorial_exact(unsigned n);
BigInt binomial_exact(unsigned n, unsigned k);

// Setup 1: M/2 detectors at the magic positions, M/2 at the moving magic
// positions. G(delta1) = 2 [(M/2)!]^2 { C(M, M/2) + 1 + cos((M/2) delta1) }.

double setup1_g(unsigned order, double delta1);
Rational setup1_visibility_exact(unsigned order);
double setup1_visibility(unsigned order);

/// Exact constant and interference coefficients of the co-located scheme
/// (m1 detectors at delta1, m2 at the magic positions):
/// G(delta1) = c1 + parity_sign * c2 * cos(m2 delta1).
struct Setup2Coefficients {
    BigInt c1;
    BigInt c2;
    unsigned m1 = 0;
    unsigned m2 = 0;
    int parity_sign = 1;

    Rational visibility_exact() const { return Rational(c2, c1); }
};

Setup2Coefficients setup2_coeffs(unsigned m1, unsigned m2);
double setup2_g(unsigned m1, unsigned m2, double delta1);
Rational setup2_visibility_exact(unsigned m1, unsigned m2);
double setup2_visibility(unsigned m1, unsigned m2);

/// Smallest m1 for which the co-located scheme beats Setup 1 of order 2*m2.
unsigned crossover_threshold(unsigned m2);

/// Closed-form curves on a grid, in combinatorial units.
CorrelationCurve setup1_curve(unsigned order, std::span<const double> grid);
CorrelationCurve setup2_curve(unsigned m1, unsigned m2, std::span<const double> grid);

}  // namespace thermalnoon

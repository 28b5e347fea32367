#pragma once

#include <functional>
#include <string_view>

#include "thetaframe/bigreal.hpp"
#include "thetaframe/certified.hpp"

namespace thetaframe {

// rounding slack multiplier applied to every analytic tail bound
constexpr double kRoundSlack = 1.0 + 1e-12;

struct ParseError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Parses a decimal string or one of the named constants
// {pi-3, 1/pi, e-2, sqrt2-1, ln2} at the given precision.
BigReal parse_real(std::string_view expr, long precision_bits);

// Upper bound for sum_{|n|>N} exp(-pi c n^2), monotone nonincreasing in N.
double gaussian_tail_bound(double c, long N);

// Upper bound for sum_{j>=0} exp(-pi A (d0+j)^2) with d0 >= 0.
double gaussian_progression_tail(double A, double d0);

// Upper bound for sum_{n>N} n exp(-pi a (n+b)^2), valid once N+b exceeds the
// peak of x e^{-pi a (x+b)^2}.
double weighted_gaussian_tail(double a, double b, long N);

// Certified sum_{n=1}^infty n exp(-pi c n^2): value bracketed by the reported
// tail bound. Direct summation for moderate c, integral bracketing for tiny c.
Certified weighted_gaussian_sum(double c);

// Certified sum_{n=1}^infty exp(-pi c n^2) (one-sided theta tail).
Certified gaussian_sum(double c);

// Certified integral over R of a Gaussian-decaying integrand.
// Requires |integrand(x)| <= K exp(-pi c (x-center)^2); K estimated by
// sampling when not supplied. Composite Simpson with interval halving.
Certified integrate_decaying(const std::function<cplx(double)>& integrand,
                             double decay_rate, double tol,
                             double envelope_K = 0.0, double center = 0.0);

}  // namespace thetaframe

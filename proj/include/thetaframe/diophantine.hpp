#pragma once

#include <vector>
#include <optional>

#include "thetaframe/bigreal.hpp"

namespace thetaframe {

struct PrecisionExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Convergent {
    mpz_class numerator;
    mpz_class denominator;  // coprime to numerator
};

// A reduced rational p/q with p, q, q-p all perfect squares, together with
// the construction witnesses. m = 2rs, k = s^2-r^2, n = r^2+s^2 and the
// candidate (k^2, n^2) is reduced by its gcd (itself a perfect square).
struct SquareConvergent {
    mpz_class p, q;
    mpz_class p_root;   // sqrt(p)
    mpz_class qp_root;  // sqrt(q-p)
    mpz_class r, s, m, k, n;
    mpz_class gcd_reduced;  // the perfect-square gcd divided out
    BigReal err{64};        // |theta - p/q| (or |1-theta - p/q| on the complement side)
    double achieved_exponent = 0.0;
    bool complement = false;  // record approximates 1-theta
};

enum class SearchStatus { ok, precision_exhausted, depth_capped };

struct SquareConvergentResult {
    std::vector<SquareConvergent> records;
    SearchStatus status = SearchStatus::ok;
    long convergents_scanned = 0;
};

// Partial quotients [a0; a1, ...] certified by interval arithmetic on the
// input's rounding ball; throws PrecisionExhausted when the requested depth
// exceeds what precision_bits can certify.
std::vector<mpz_class> continued_fraction(const BigReal& x, long depth);

// Convergents from the standard recurrence; every p/q obeys |x-p/q| < 1/q^2.
std::vector<Convergent> convergents(const BigReal& x, long depth);

// xi = (1 - sqrt(theta)) / sqrt(1 - theta) for theta in (0,1).
BigReal xi_transform(const BigReal& theta);

// Searches convergents r/s of xi(theta) for reduced square triples p/q with
// |theta - p/q| < q^{-a}; emits up to `count` records in increasing q.
// If no record lies on the side theta > p/q, the complement 1-theta is also
// searched and its hits are flagged.
SquareConvergentResult square_convergents(const BigReal& theta, long count, double exponent_a);

// p0 in [1, q-1] with u * p0 == 1 (mod q); throws when gcd(u,q) != 1.
mpz_class mod_inverse(const mpz_class& u, const mpz_class& q);

}  // namespace thetaframe

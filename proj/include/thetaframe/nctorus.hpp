#pragma once

#include <map>
#include <optional>
#include <cstdint>

#include <Eigen/Dense>

#include "thetaframe/bigreal.hpp"
#include "thetaframe/certified.hpp"

namespace thetaframe {

// Phase generator e(phi * k) for integer k, with phi held either as an exact
// rational num/den or as a 128-bit fixed-point fraction. The fixed-point
// representation keeps phases accurate to ~2^-64 even when k is large, which
// plain double arithmetic on phi*k cannot do.
class Twist {
public:
    static Twist rational(std::int64_t num, std::int64_t den);
    static Twist real(const BigReal& phi);
    static Twist real(double phi);

    cplx phase(std::int64_t k) const;     // e(phi * k)
    double value() const;                 // phi mod 1 as double
    bool operator==(const Twist& o) const;

private:
    Twist() = default;
    bool rational_ = false;
    std::int64_t num_ = 0, den_ = 1;      // rational case (reduced, 0<=num<den)
    std::uint64_t fx_hi_ = 0, fx_lo_ = 0; // fixed-point case: phi = fx/2^128
};

// Finitely supported element sum_w c_w pi_w of the twisted group algebra of
// Z^2 (or (Z/modulus)^2) with cocycle pi_x pi_y = e(phi x1 y2) pi_{x+y}.
// Ordered generator monomials satisfy g1^m g2^n = e(phi m n) pi_(m,n) and
// g2^n g1^m = pi_(m,n); the от/to ordered-monomial helpers apply that phase.
class TwistedPoly {
public:
    using Key = std::pair<std::int64_t, std::int64_t>;
    static constexpr double kPruneFloor = 1e-18;

    TwistedPoly(Twist twist, std::optional<std::int64_t> modulus = std::nullopt);

    static TwistedPoly unit(Twist twist, std::optional<std::int64_t> modulus = std::nullopt);
    static TwistedPoly monomial(Twist twist, std::int64_t m, std::int64_t n, cplx c,
                                std::optional<std::int64_t> modulus = std::nullopt);

    const Twist& twist() const { return twist_; }
    std::optional<std::int64_t> modulus() const { return modulus_; }
    const std::map<Key, cplx>& coeffs() const { return c_; }
    cplx at(std::int64_t m, std::int64_t n) const;
    long support_size() const { return (long)c_.size(); }

    // lattice coefficient; pruning below the floor is tracked in dropped_l1
    void set(std::int64_t m, std::int64_t n, cplx v);
    void add(std::int64_t m, std::int64_t n, cplx v);
    // coefficient of the ordered monomial g1^m g2^n
    void set_ordered(std::int64_t m, std::int64_t n, cplx v);
    cplx at_ordered(std::int64_t m, std::int64_t n) const;

    // certified bound on the l1 mass this poly is missing (series truncation
    // plus pruned coefficients)
    double truncation_l1() const { return dropped_; }
    void add_truncation_l1(double t) { dropped_ += t; }

    friend TwistedPoly tp_mul(const TwistedPoly& x, const TwistedPoly& y);
    friend TwistedPoly tp_adjoint(const TwistedPoly& x);
    friend TwistedPoly tp_fourier(const TwistedPoly& x);
    friend TwistedPoly tp_flip(const TwistedPoly& x);
    friend TwistedPoly tp_add(const TwistedPoly& x, const TwistedPoly& y);
    friend TwistedPoly tp_sub(const TwistedPoly& x, const TwistedPoly& y);

private:
    Key reduce(Key k) const;
    Twist twist_;
    std::optional<std::int64_t> modulus_;
    std::map<Key, cplx> c_;
    double dropped_ = 0.0;
};

TwistedPoly tp_mul(const TwistedPoly& x, const TwistedPoly& y);
TwistedPoly tp_adjoint(const TwistedPoly& x);
double tp_l1(const TwistedPoly& x);
TwistedPoly tp_fourier(const TwistedPoly& x);
TwistedPoly tp_flip(const TwistedPoly& x);
TwistedPoly tp_add(const TwistedPoly& x, const TwistedPoly& y);
TwistedPoly tp_sub(const TwistedPoly& x, const TwistedPoly& y);

// max over the union support of |x(w) - y(w)|
double tp_max_coeff_diff(const TwistedPoly& x, const TwistedPoly& y);

struct NormReport {
    double l1 = 0.0;
    std::optional<double> matrix_estimate;
    std::optional<std::int64_t> matrix_modulus_used;
    double truncation_l1 = 0.0;
};

// Heuristic operator-norm estimate through the rational-angle clock and
// shift representation of size rep_modulus; power iteration on the Gram
// matrix to tolerance 1e-10. Never used in certified totals.
double clock_shift_norm(const TwistedPoly& x, std::int64_t rep_modulus);

NormReport norm_report(const TwistedPoly& x, std::optional<std::int64_t> rep_modulus = std::nullopt);

// Hermitian PSD square root; (result)^2 = mat within tol in operator norm.
Eigen::MatrixXcd psd_sqrt(const Eigen::MatrixXcd& mat, double tol);

}  // namespace thetaframe

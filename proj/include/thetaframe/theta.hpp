#pragma once

#include "thetaframe/certified.hpp"
#include "thetaframe/numkit.hpp"

namespace thetaframe {

// Lattice theta sums
//   theta2(z,t) = sum_n exp(i pi t (n+1/2)^2) exp(2 i z (n+1/2))
//   theta3(z,t) = sum_n exp(i pi t n^2)       exp(2 i z n)
// for complex z and Im(t) > 0. Summation runs in completed-square form
// centered at the magnitude peak, so purely-imaginary first arguments with
// astronomically large growth factors never overflow intermediates.

enum class ThetaKind { theta2 = 2, theta3 = 3 };

struct ThetaQuery {
    ThetaKind kind = ThetaKind::theta3;
    cplx z{0.0, 0.0};
    cplx t{0.0, 1.0};
    double tol = 1e-12;
};

// value = exp(log_scale) * scaled, with |true_scaled - scaled| <= scaled_tail.
struct ThetaLog {
    double log_scale = 0.0;
    cplx scaled{0.0, 0.0};
    double scaled_tail = 0.0;
    long terms_used = 0;

    double log_abs_upper() const {
        return log_scale + std::log(std::abs(scaled) + scaled_tail);
    }
    bool fits_double() const {
        return log_scale + std::log(std::abs(scaled) + scaled_tail + 1e-300) < 700.0;
    }
    Certified to_certified() const {
        double s = std::exp(log_scale);
        return Certified{scaled * s, scaled_tail * s, terms_used};
    }
};

// Scaled evaluation; tol_scaled is the absolute tolerance on the scaled sum.
ThetaLog theta_eval_scaled(ThetaKind kind, cplx z, cplx t, double tol_scaled);

// Certified evaluation with absolute tail bound tol where the magnitude
// permits; falls back to relative accuracy (honestly reported) when the
// completed-square scale is so large that absolute tol is unrepresentable.
Certified theta_eval(const ThetaQuery& q);

// Right-hand side of the envelope (1 + 1/sqrt(A)) exp(B^2/(pi A)); the _log
// variant never overflows.
double lemma_a2_rhs(double A, double B);
double lemma_a2_rhs_log(double A, double B);

// log of theta(iB, iA) upper/lower bounds for envelope comparisons
double theta_log_upper(ThetaKind kind, double B, double A);
double theta_log_lower(ThetaKind kind, double B, double A);

}  // namespace thetaframe

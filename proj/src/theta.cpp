#include "thetaframe/theta.hpp"

#include <cmath>
#include <limits>

namespace thetaframe {

namespace {

// One magnitude-scaled term: exp(-pi A (u-C)^2) * exp(i phase(u)).
inline cplx scaled_term(double A, double C, double rho, double x, double u) {
    double mag = -M_PI * A * (u - C) * (u - C);
    double ph = M_PI * rho * u * u + 2.0 * x * u;
    double m = std::exp(mag);
    return cplx{m * std::cos(ph), m * std::sin(ph)};
}

}  // namespace

ThetaLog theta_eval_scaled(ThetaKind kind, cplx z, cplx t, double tol_scaled) {
    const double A = t.imag();
    if (!(A > 0)) throw std::domain_error("theta_eval: Im(t) must be positive");
    if (!(tol_scaled > 0)) throw std::domain_error("theta_eval: tol must be positive");
    const double rho = t.real();
    const double x = z.real();
    const double y = z.imag();

    // magnitude exponent -pi A u^2 - 2 y u peaks at C
    const double C = -y / (M_PI * A);
    if (std::abs(C) > 1e12)
        throw std::domain_error("theta_eval: |Im z|/Im t too large for lattice resolution");

    const double offset = (kind == ThetaKind::theta2) ? 0.5 : 0.0;
    // nearest lattice point u0 = n0 + offset to C
    const double n0 = std::floor(C - offset + 0.5);
    const double u0 = n0 + offset;

    cplx sum = scaled_term(A, C, rho, x, u0);
    long terms = 1;
    long k = 1;
    for (;; ++k) {
        const double ur = u0 + (double)k;
        const double ul = u0 - (double)k;
        sum += scaled_term(A, C, rho, x, ur);
        sum += scaled_term(A, C, rho, x, ul);
        terms += 2;
        // remaining two-sided tail past the points just added
        const double dr = ur + 1.0 - C;
        const double dl = C - (ul - 1.0);
        if (dr > 0 && dl > 0) {
            double tail = gaussian_progression_tail(A, dr) + gaussian_progression_tail(A, dl);
            if (tail < tol_scaled || k > 4000000) {
                ThetaLog out;
                out.log_scale = M_PI * A * C * C;
                out.scaled = sum;
                out.scaled_tail = tail * kRoundSlack + (double)terms * 4e-16;
                out.terms_used = terms;
                return out;
            }
        }
    }
}

Certified theta_eval(const ThetaQuery& q) {
    if (!(q.tol > 0)) throw std::domain_error("theta_eval: tol must be positive");
    const double A = q.t.imag();
    if (!(A > 0)) throw std::domain_error("theta_eval: Im(t) must be positive");

    const double y = q.z.imag();
    const double C = -y / (M_PI * A);
    const double log_scale = M_PI * A * C * C;
    // absolute tolerance when the scale permits, else relative 1e-15
    double tol_scaled = q.tol * std::exp(-log_scale);
    if (!(tol_scaled > 1e-15)) tol_scaled = 1e-15;
    ThetaLog lg = theta_eval_scaled(q.kind, q.z, q.t, tol_scaled);
    return lg.to_certified();
}

double lemma_a2_rhs_log(double A, double B) {
    if (!(A > 0)) throw std::domain_error("lemma_a2_rhs: A must be positive");
    return std::log1p(1.0 / std::sqrt(A)) + B * B / (M_PI * A);
}

double lemma_a2_rhs(double A, double B) {
    return std::exp(lemma_a2_rhs_log(A, B));
}

double theta_log_upper(ThetaKind kind, double B, double A) {
    ThetaLog lg = theta_eval_scaled(kind, cplx{0.0, B}, cplx{0.0, A}, 1e-14);
    return lg.log_scale + std::log(std::abs(lg.scaled) + lg.scaled_tail);
}

double theta_log_lower(ThetaKind kind, double B, double A) {
    ThetaLog lg = theta_eval_scaled(kind, cplx{0.0, B}, cplx{0.0, A}, 1e-14);
    double lo = std::abs(lg.scaled) - lg.scaled_tail;
    if (lo <= 0) return -std::numeric_limits<double>::infinity();
    return lg.log_scale + std::log(lo);
}

}  // namespace thetaframe

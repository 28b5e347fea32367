#pragma once

#include "thetaframe/bigreal.hpp"
#include "thetaframe/certified.hpp"
#include "thetaframe/diophantine.hpp"
#include "thetaframe/nctorus.hpp"
#include "thetaframe/theta.hpp"

namespace thetaframe {

// Gaussian frame parameters: alpha > 0 and beta > 2 coupled by
// beta^2 = 4(alpha^2 + 1), t_alpha = 4 alpha + 2/alpha.
struct GaussParams {
    double alpha = 1.0;
    double beta = 2.0 * M_SQRT2;
    double t_alpha = 6.0;
    Twist tw_beta_sq = Twist::rational(0, 1);        // e(beta^2 k)
    Twist tw_beta_sq_half = Twist::rational(0, 1);   // e(beta^2 k / 2)

    static GaussParams from_beta(double beta);
    static GaussParams from_beta(const BigReal& beta);
    static GaussParams from_alpha(double alpha);
};

// Full parameter bundle for one square convergent of theta.
struct FrameParams {
    BigReal theta{256};
    SquareConvergent sc;
    mpz_class p0;
    BigReal a{256};        // sqrt(theta - p/q) > 0
    BigReal beta_br{256};  // 1/(q a)
    GaussParams gp;
    BigReal trace{256};    // q(q theta - p) = a^2 q^2 = 1/beta^2
    Twist tw_theta = Twist::rational(0, 1);  // e(theta k)
    double delta = 0.0;    // q*theta - p (tiny); lambda^{qn} = e(n*delta)
    double log_q = 0.0;
    bool q_fits_i64 = false;
    std::int64_t q_i64 = 0;
    std::int64_t p0_i64 = 0;
    std::int64_t p_root_i64 = 0;
};

// Builds FrameParams from a correct-side record; throws when theta <= p/q
// (wrong-side convergent) or q < 4.
FrameParams make_frame(const BigReal& theta, const SquareConvergent& sc);

// h(x) = e^{-pi a x^2} sum_p e^{-pi a p(p-1)} e(i pi beta x p); even, real.
Certified h_eval(double x, const GaussParams& gp, double tol);
// sum_p |c_p| — analytic envelope constant with |h(x)| <= K e^{-pi alpha x^2}
double h_envelope_K(const GaussParams& gp);

// Fourier transform, convention hhat(s) = int h(x) e^{-2 pi i x s} dx;
// evaluated through the termwise Gaussian-pair closed form.
Certified h_hat_eval(double s, const GaussParams& gp, double tol);
// envelope |hhat(s)| <= K exp(-pi c s^2)
void h_hat_envelope(const GaussParams& gp, double* K, double* c);

// Gamma(u,v) as the four-theta combination; real. The _weighted variant
// returns e^{-w} Gamma(u,v) with all exponents folded before exponentiation,
// so coefficient weights never overflow.
Certified gamma_eval(double u, double v, const GaussParams& gp, double tol);
Certified gamma_weighted(double u, double v, const GaussParams& gp, double weight, double tol);

// H(s,t) through the closed form, and through direct quadrature (oracle).
Certified H_closed(double s, double t, const GaussParams& gp, double tol);
Certified H_quad(double s, double t, const GaussParams& gp, double tol);

// psi_n(t) = sum_m e(beta^2 m n/2) e^{-pi beta^2 m^2/(2 alpha)} Gamma(m,n) e(mt)
Certified psi_eval(long n, double t, const GaussParams& gp, double tol);

struct PsiExtrema {
    double inf_bound = 0.0;  // certified lower bound for inf (psi_0: of the value; else of |psi_n|)
    double sup_bound = 0.0;  // certified upper bound for sup |psi_n|
    double slack = 0.0;      // grid + Lipschitz certification slack
};
PsiExtrema psi_extrema(long n, const GaussParams& gp, long grid);

// |int conj(h)(x) hhat(x + beta m) e(beta n x) dx| with certified quadrature.
Certified orthogonality_residual(long m, long n, const GaussParams& gp, double tol);

}  // namespace thetaframe

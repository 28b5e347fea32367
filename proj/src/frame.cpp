#include "thetaframe/frame.hpp"

#include <cmath>
#include <vector>

namespace thetaframe {

namespace {

// geometric tail of the h coefficient series c_p = e^{-pi a p(p-1)}:
// sum_{p > P} c_p <= c_{P+1} / (1 - e^{-2 pi a P})
double h_coeff_tail(double alpha, long P) {
    double cP1 = std::exp(-M_PI * alpha * (double)(P + 1) * (double)P);
    double ratio = std::exp(-2.0 * M_PI * alpha * (double)P);
    return tiny_floor(cP1 / (1.0 - ratio) * kRoundSlack);
}

long h_coeff_range(double alpha, double tol) {
    long P = 1;
    while (h_coeff_tail(alpha, P) > tol && P < 64) ++P;
    return P;
}

}  // namespace

GaussParams GaussParams::from_beta(double beta) {
    if (!(beta > 2.0)) throw std::domain_error("GaussParams: beta must exceed 2");
    GaussParams gp;
    gp.beta = beta;
    gp.alpha = std::sqrt(beta * beta / 4.0 - 1.0);
    gp.t_alpha = 4.0 * gp.alpha + 2.0 / gp.alpha;
    BigReal b2 = BigReal(beta, 128).pow_int(2);
    gp.tw_beta_sq = Twist::real(b2);
    gp.tw_beta_sq_half = Twist::real(b2 / BigReal(2L, 128));
    return gp;
}

GaussParams GaussParams::from_beta(const BigReal& beta) {
    if (!(beta > BigReal(2L, beta.precision()))) throw std::domain_error("GaussParams: beta must exceed 2");
    GaussParams gp;
    gp.beta = beta.to_double();
    double b2 = gp.beta * gp.beta;
    gp.alpha = std::sqrt(b2 / 4.0 - 1.0);
    gp.t_alpha = 4.0 * gp.alpha + 2.0 / gp.alpha;
    BigReal b2br = beta.pow_int(2);
    gp.tw_beta_sq = Twist::real(b2br);
    gp.tw_beta_sq_half = Twist::real(b2br / BigReal(2L, beta.precision()));
    return gp;
}

GaussParams GaussParams::from_alpha(double alpha) {
    if (!(alpha > 0.0)) throw std::domain_error("GaussParams: alpha must be positive");
    return from_beta(2.0 * std::sqrt(alpha * alpha + 1.0));
}

FrameParams make_frame(const BigReal& theta, const SquareConvergent& sc) {
    const long prec = theta.precision();
    FrameParams f;
    f.theta = theta;
    f.sc = sc;
    if (sc.q < 4) throw std::domain_error("make_frame: q must be at least 4");
    BigReal pq = BigReal(sc.p, prec) / BigReal(sc.q, prec);
    BigReal gap = theta - pq;
    if (!(gap.sign() > 0))
        throw std::domain_error("make_frame: theta <= p/q (wrong-side convergent; use the complement path)");
    f.a = gap.sqrt();
    f.beta_br = BigReal(1L, prec) / (BigReal(sc.q, prec) * f.a);
    f.gp = GaussParams::from_beta(f.beta_br);
    f.p0 = mod_inverse(sc.p_root, sc.q);
    f.trace = BigReal(sc.q, prec) * (BigReal(sc.q, prec) * theta - BigReal(sc.p, prec));
    f.tw_theta = Twist::real(theta);
    f.delta = (BigReal(sc.q, prec) * theta - BigReal(sc.p, prec)).to_double();
    f.log_q = BigReal(sc.q, prec).ln().to_double();
    f.q_fits_i64 = sc.q.fits_slong_p();
    if (f.q_fits_i64) {
        f.q_i64 = sc.q.get_si();
        f.p0_i64 = f.p0.get_si();
        f.p_root_i64 = sc.p_root.fits_slong_p() ? sc.p_root.get_si() : 0;
    }
    return f;
}

double h_envelope_K(const GaussParams& gp) {
    double s = 0;
    for (long p = -12; p <= 13; ++p)
        s += std::exp(-M_PI * gp.alpha * (double)p * (double)(p - 1));
    return s * kRoundSlack + h_coeff_tail(gp.alpha, 13);
}

Certified h_eval(double x, const GaussParams& gp, double tol) {
    if (!(tol > 0)) throw std::domain_error("h_eval: tol must be positive");
    const double alpha = gp.alpha, beta = gp.beta;
    long P = h_coeff_range(alpha, tol / 4);
    cplx s{0, 0};
    long terms = 0;
    for (long p = -P; p <= P + 1; ++p) {
        double cp = std::exp(-M_PI * alpha * (double)p * (double)(p - 1));
        double ph = M_PI * beta * x * (double)p;
        s += cp * cplx{std::cos(ph), std::sin(ph)};
        ++terms;
    }
    double env = std::exp(-M_PI * alpha * x * x);
    double tail = 2.0 * h_coeff_tail(alpha, P + 1) * env + 1e-15 * std::abs(s) * env;
    // pairing p <-> 1-p makes the sum real; fold the numerical residue into the tail
    double val = s.real() * env;
    tail += std::abs(s.imag()) * env;
    return make_real_certified(val, tail * kRoundSlack, terms);
}

void h_hat_envelope(const GaussParams& gp, double* K, double* c) {
    const double alpha = gp.alpha, beta = gp.beta, t_alpha = gp.t_alpha;
    double b2 = beta * beta;
    *c = (b2 - 4.0) / (alpha * (2.0 * b2 - 4.0));
    *K = std::exp(M_PI * alpha / 4.0) / std::sqrt(alpha) * (1.0 + std::sqrt(2.0 / t_alpha));
}

Certified h_hat_eval(double sarg, const GaussParams& gp, double tol) {
    if (!(tol > 0)) throw std::domain_error("h_hat_eval: tol must be positive");
    const double alpha = gp.alpha, beta = gp.beta;
    long P = h_coeff_range(alpha, tol / 4);
    long widen = (long)std::ceil(2.0 * std::abs(sarg) / beta) + 1;
    double s = 0;
    long terms = 0;
    for (long p = -P - widen; p <= P + widen + 1; ++p) {
        double cp = std::exp(-M_PI * alpha * (double)p * (double)(p - 1));
        double nu = beta * (2.0 * (double)p - 1.0) / 4.0;
        s += cp * std::exp(-M_PI * (sarg - nu) * (sarg - nu) / alpha);
        ++terms;
    }
    double tail = 2.0 * h_coeff_tail(alpha, P + widen + 1) + 1e-15 * s;
    return make_real_certified(s / std::sqrt(alpha), tail / std::sqrt(alpha) * kRoundSlack, terms);
}

Certified gamma_weighted(double u, double v, const GaussParams& gp, double weight, double tol) {
    if (!(tol > 0)) throw std::domain_error("gamma_weighted: tol must be positive");
    const double alpha = gp.alpha, t_alpha = gp.t_alpha;
    const double b2 = gp.beta * gp.beta;
    const double Bu = M_PI / (2.0 * alpha) * b2 * u;
    const double zv = M_PI / 2.0 * b2 * v;

    ThetaLog T3 = theta_eval_scaled(ThetaKind::theta3, cplx{0.0, Bu}, cplx{0.0, t_alpha}, 1e-15);
    ThetaLog T2 = theta_eval_scaled(ThetaKind::theta2, cplx{0.0, Bu}, cplx{0.0, t_alpha}, 1e-15);
    Certified R2 = theta_eval({ThetaKind::theta2, cplx{zv, 0.0}, cplx{0.0, 2.0 * alpha}, tol});
    Certified R3 = theta_eval({ThetaKind::theta3, cplx{zv, 0.0}, cplx{0.0, 2.0 * alpha}, tol});

    const double base = M_PI * alpha / 2.0 - weight;
    double e1 = std::exp(base + T3.log_scale);
    double e2 = std::exp(base + T2.log_scale);
    double r2 = R2.value.real(), r3 = R3.value.real();
    double s3 = T3.scaled.real(), s2 = T2.scaled.real();
    double val = e1 * r2 * s3 + e2 * r3 * s2;
    double tail = e1 * (std::abs(r2) * T3.scaled_tail + R2.tail_bound * (std::abs(s3) + T3.scaled_tail)) +
                  e2 * (std::abs(r3) * T2.scaled_tail + R3.tail_bound * (std::abs(s2) + T2.scaled_tail)) +
                  e1 * std::abs(R2.value.imag()) * (std::abs(s3) + T3.scaled_tail) +
                  e2 * std::abs(R3.value.imag()) * (std::abs(s2) + T2.scaled_tail);
    Certified out = make_real_certified(val, tail * kRoundSlack,
                                        T3.terms_used + T2.terms_used + R2.terms_used + R3.terms_used);
    return out;
}

Certified gamma_eval(double u, double v, const GaussParams& gp, double tol) {
    return gamma_weighted(u, v, gp, 0.0, tol);
}

Certified H_closed(double s, double t, const GaussParams& gp, double tol) {
    const double alpha = gp.alpha, beta = gp.beta;
    double w = M_PI * alpha * s * s / 2.0 + M_PI * t * t / (2.0 * alpha);
    Certified G = gamma_weighted(t / beta, s / beta, gp, w, tol);
    double pref = 1.0 / std::sqrt(2.0 * alpha);
    double ph = -M_PI * s * t;
    cplx rot{std::cos(ph), std::sin(ph)};
    return Certified{pref * rot * G.value, pref * G.tail_bound, G.terms_used};
}

Certified H_quad(double s, double t, const GaussParams& gp, double tol) {
    const double alpha = gp.alpha;
    double Kh = h_envelope_K(gp);
    double K = Kh * Kh * std::exp(-M_PI * alpha * s * s / 2.0) * 1.0001 + 1e-300;
    auto f = [&](double x) -> cplx {
        Certified hx = h_eval(x, gp, tol * 1e-3);
        Certified hxs = h_eval(x + s, gp, tol * 1e-3);
        double ph = 2.0 * M_PI * x * t;
        return hx.value.real() * hxs.value.real() * cplx{std::cos(ph), std::sin(ph)};
    };
    Certified I = integrate_decaying(f, 2.0 * alpha, tol, K, -s / 2.0);
    // h evaluation error enters linearly through both factors
    I.tail_bound += 4.0 * tol * 1e-3 * Kh;
    return I;
}

Certified psi_eval(long n, double t, const GaussParams& gp, double tol) {
    if (!(tol > 0)) throw std::domain_error("psi_eval: tol must be positive");
    const double alpha = gp.alpha, t_alpha = gp.t_alpha;
    const double b2 = gp.beta * gp.beta;
    // m-envelope: pi a/2 - w_m + B_m^2/(pi t_alpha) + const decays at rate r per m^2
    const double rate = M_PI * b2 / (2.0 * alpha) * (b2 - 4.0) / (2.0 * b2 - 4.0);
    cplx sum{0, 0};
    long terms = 0;
    double env0 = 0;
    long M = 0;
    for (long m = 0;; ++m) {
        double w = M_PI * b2 * (double)m * (double)m / (2.0 * alpha);
        Certified g = gamma_weighted((double)m, (double)n, gp, w, tol / 8);
        if (m == 0) {
            sum += g.value;
            env0 = std::abs(g.value.real()) + g.tail_bound + 1.0;
            ++terms;
        } else {
            cplx phase_pos = gp.tw_beta_sq_half.phase(m * n) * cplx{std::cos(2 * M_PI * m * t), std::sin(2 * M_PI * m * t)};
            cplx phase_neg = std::conj(gp.tw_beta_sq_half.phase(m * n)) * cplx{std::cos(2 * M_PI * m * t), -std::sin(2 * M_PI * m * t)};
            // Gamma is even in each variable: Gamma(-m,n) = Gamma(m,n)
            sum += g.value * (phase_pos + phase_neg);
            terms += 2;
        }
        M = m;
        double tail_next = 2.0 * env0 * gaussian_progression_tail(rate / M_PI, (double)m + 1.0);
        if (m >= 1 && tail_next < tol / 2) break;
        if (m > 300) throw std::runtime_error("psi_eval: coefficient series does not certify");
    }
    double tail = 2.0 * env0 * gaussian_progression_tail(rate / M_PI, (double)M + 1.0) +
                  (double)terms * tol / 8;
    return Certified{sum, tail * kRoundSlack, terms};
}

PsiExtrema psi_extrema(long n, const GaussParams& gp, long grid) {
    if (grid < 256) throw std::invalid_argument("psi_extrema: grid must be at least 256");
    const double alpha = gp.alpha;
    const double b2 = gp.beta * gp.beta;
    const double rate = M_PI * b2 / (2.0 * alpha) * (b2 - 4.0) / (2.0 * b2 - 4.0);
    const double ctol = 1e-13;

    // coefficient list c_m for |m| <= M with certified tail
    std::vector<std::pair<long, cplx>> coef;
    double coef_err = 0;
    double env0 = 0;
    long M = 0;
    for (long m = 0;; ++m) {
        double w = M_PI * b2 * (double)m * (double)m / (2.0 * alpha);
        Certified g = gamma_weighted((double)m, (double)n, gp, w, ctol);
        if (m == 0) {
            coef.push_back({0, g.value});
            env0 = std::abs(g.value.real()) + g.tail_bound + 1.0;
        } else {
            cplx ph = gp.tw_beta_sq_half.phase(m * n);
            coef.push_back({m, g.value * ph});
            coef.push_back({-m, g.value * std::conj(ph)});
        }
        coef_err += (m == 0 ? 1.0 : 2.0) * g.tail_bound;
        M = m;
        if (m >= 1 && 2.0 * env0 * gaussian_progression_tail(rate / M_PI, (double)m + 1.0) < ctol) break;
        if (m > 300) throw std::runtime_error("psi_extrema: coefficient series does not certify");
    }
    double series_tail = 2.0 * env0 * gaussian_progression_tail(rate / M_PI, (double)M + 1.0);

    // Lipschitz constant sum 2 pi |m| |c_m| plus the tail's worth
    double lip = 0;
    for (auto& [m, c] : coef) lip += 2.0 * M_PI * std::abs((double)m) * std::abs(c);
    lip += 2.0 * M_PI * env0 * weighted_gaussian_tail(rate / M_PI, 0.0, M) * 2.0;

    double lo_abs = 1e300, hi_abs = 0, lo_re = 1e300;
    for (long i = 0; i < grid; ++i) {
        double t = (double)i / (double)grid;
        cplx v{0, 0};
        for (auto& [m, c] : coef) {
            double ph = 2.0 * M_PI * (double)m * t;
            v += c * cplx{std::cos(ph), std::sin(ph)};
        }
        lo_abs = std::min(lo_abs, std::abs(v));
        hi_abs = std::max(hi_abs, std::abs(v));
        lo_re = std::min(lo_re, v.real());
    }
    double slack = lip * (0.5 / (double)grid) + series_tail + coef_err + 1e-14 * hi_abs;
    PsiExtrema out;
    out.slack = slack;
    out.sup_bound = hi_abs + slack;
    double base = (n == 0) ? lo_re : lo_abs;
    out.inf_bound = std::max(0.0, base - slack);
    return out;
}

Certified orthogonality_residual(long m, long n, const GaussParams& gp, double tol) {
    const double alpha = gp.alpha, beta = gp.beta;
    double Kh = h_envelope_K(gp);
    double Khat, chat;
    h_hat_envelope(gp, &Khat, &chat);
    double d = beta * (double)m;
    double csum = alpha + chat;
    double center = -chat * d / csum;
    double K = Kh * Khat * std::exp(-M_PI * alpha * chat * d * d / csum) * 1.0001 + 1e-300;
    auto f = [&](double x) -> cplx {
        Certified hx = h_eval(x, gp, tol * 1e-3);
        Certified hh = h_hat_eval(x + d, gp, tol * 1e-3);
        double ph = 2.0 * M_PI * beta * (double)n * x;
        return hx.value.real() * hh.value.real() * cplx{std::cos(ph), std::sin(ph)};
    };
    Certified I = integrate_decaying(f, csum, tol, K, center);
    I.tail_bound += 4.0 * tol * 1e-3 * std::max(Kh, Khat);
    return I;
}

}  // namespace thetaframe

#include "thetaframe/numkit.hpp"

#include <cmath>
#include <vector>

namespace thetaframe {

namespace {

// guard bits so that constant folding like pi-3 stays correctly rounded
constexpr long kGuardBits = 64;

bool looks_like_decimal(std::string_view s) {
    if (s.empty()) return false;
    size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    bool digit = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (std::isdigit((unsigned char)c)) { digit = true; continue; }
        if (c == '.' || c == 'e' || c == 'E' || c == '+' || c == '-') continue;
        return false;
    }
    return digit;
}

}  // namespace

BigReal parse_real(std::string_view expr, long precision_bits) {
    if (precision_bits < BigReal::kMinPrec) precision_bits = BigReal::kMinPrec;
    const long wp = precision_bits + kGuardBits;
    if (expr == "pi-3")
        return (BigReal::pi(wp) - BigReal(3L, wp)).round_to(precision_bits);
    if (expr == "1/pi")
        return (BigReal(1L, wp) / BigReal::pi(wp)).round_to(precision_bits);
    if (expr == "e-2")
        return (BigReal::euler_e(wp) - BigReal(2L, wp)).round_to(precision_bits);
    if (expr == "sqrt2-1")
        return (BigReal(2L, wp).sqrt() - BigReal(1L, wp)).round_to(precision_bits);
    if (expr == "ln2")
        return BigReal::ln2(precision_bits);
    if (!looks_like_decimal(expr))
        throw ParseError("parse_real: expected a decimal string or one of "
                         "{pi-3, 1/pi, e-2, sqrt2-1, ln2}, got '" + std::string(expr) + "'");
    try {
        return BigReal::from_string(std::string(expr), precision_bits);
    } catch (const std::invalid_argument& ex) {
        throw ParseError(ex.what());
    }
}

double gaussian_progression_tail(double A, double d0) {
    if (d0 < 0) d0 = 0;
    // sum_{j>=0} e^{-pi A (d0+j)^2} <= e^{-pi A d0^2} + int_{d0}^inf e^{-pi A x^2} dx
    double head = std::exp(-M_PI * A * d0 * d0);
    double tail = std::erfc(std::sqrt(M_PI * A) * d0) / (2.0 * std::sqrt(A));
    return tiny_floor((head + tail) * kRoundSlack);
}

double gaussian_tail_bound(double c, long N) {
    if (c <= 0) throw std::domain_error("gaussian_tail_bound: c must be positive");
    if (N < 0) N = 0;
    return tiny_floor(2.0 * gaussian_progression_tail(c, (double)N + 1.0));
}

double weighted_gaussian_tail(double a, double b, long N) {
    // peak of x e^{-pi a (x+b)^2} sits at x0 = (sqrt(b^2+2/(pi a)) - b)/2
    double x0 = 0.5 * (std::sqrt(b * b + 2.0 / (M_PI * a)) - b);
    double start = (double)N;
    if (start < x0 + 1.0) start = x0 + 1.0;  // caller must pass N past the peak
    // sum_{n>N} n e^{-pi a (n+b)^2} <= f(N+1) + int_N^inf x e^{-pi a (x+b)^2} dx
    double n1 = (double)N + 1.0;
    double head = n1 * std::exp(-M_PI * a * (n1 + b) * (n1 + b));
    // int_N^inf x e^{-pi a (x+b)^2} dx = e^{-pi a (N+b)^2}/(2 pi a) - b int...
    double u = (double)N + b;
    double i1 = std::exp(-M_PI * a * u * u) / (2.0 * M_PI * a);
    double i2 = std::abs(b) * std::erfc(std::sqrt(M_PI * a) * u) / (2.0 * std::sqrt(a));
    return tiny_floor((head + i1 + i2) * kRoundSlack);
}

Certified weighted_gaussian_sum(double c) {
    if (c <= 0) throw std::domain_error("weighted_gaussian_sum: c must be positive");
    if (c >= 1e-4) {
        long nmax = (long)std::ceil(std::sqrt(760.0 / (M_PI * c))) + 2;
        double s = 0;
        for (long n = nmax; n >= 1; --n) s += (double)n * std::exp(-M_PI * c * (double)n * (double)n);
        double tail = weighted_gaussian_tail(c, 0.0, nmax);
        return make_real_certified(s, tail * kRoundSlack, nmax);
    }
    // tiny c: bracket sum by integral +- max term
    double integral = 1.0 / (2.0 * M_PI * c);
    double peak = 1.0 / std::sqrt(2.0 * M_PI * std::exp(1.0) * c);
    return make_real_certified(integral, peak * kRoundSlack, 0);
}

Certified gaussian_sum(double c) {
    if (c <= 0) throw std::domain_error("gaussian_sum: c must be positive");
    if (c >= 1e-4) {
        long nmax = (long)std::ceil(std::sqrt(760.0 / (M_PI * c))) + 2;
        double s = 0;
        for (long n = nmax; n >= 1; --n) s += std::exp(-M_PI * c * (double)n * (double)n);
        return make_real_certified(s, gaussian_progression_tail(c, (double)nmax + 1.0), nmax);
    }
    double integral = 0.5 / std::sqrt(c);  // int_0^inf e^{-pi c x^2} dx
    return make_real_certified(integral, 1.0 * kRoundSlack, 0);
}

Certified integrate_decaying(const std::function<cplx(double)>& f,
                             double c, double tol, double K, double center) {
    if (c <= 0) throw std::domain_error("integrate_decaying: decay rate must be positive");
    if (tol <= 0) throw std::domain_error("integrate_decaying: tol must be positive");

    if (K <= 0) {
        // envelope constant estimated from samples, padded
        double best = 0;
        for (int i = -48; i <= 48; ++i) {
            double x = center + i * 0.125;
            double m = std::abs(f(x)) * std::exp(M_PI * c * (x - center) * (x - center));
            if (std::isfinite(m) && m > best) best = m;
        }
        K = best * 1.5 + 1e-300;
    }

    // truncation interval from the Gaussian envelope; grown until the outside
    // mass is provably below tol/4
    double L = std::sqrt(std::max(1.0, -std::log(tol) / (M_PI * c))) + 1.0;
    auto outside = [&](double LL) {
        return K * std::erfc(std::sqrt(M_PI * c) * LL) / std::sqrt(c);
    };
    int grow = 0;
    while (outside(L) > tol / 4 && grow < 64) { L += 0.5; ++grow; }
    if (outside(L) > tol / 4)
        throw std::runtime_error("integrate_decaying: envelope violation (outside mass will not shrink)");
    const double a = center - L, b = center + L;

    auto simpson = [&](long n) {
        // n panels, n even
        const double hstep = (b - a) / (double)n;
        cplx s = f(a) + f(b);
        for (long i = 1; i < n; ++i)
            s += f(a + hstep * (double)i) * (i % 2 ? 4.0 : 2.0);
        return s * (hstep / 3.0);
    };

    long n = 64;
    cplx prev = simpson(n);
    double diff = 0;
    int iter = 0;
    for (; iter < 40; ++iter) {
        n *= 2;
        cplx cur = simpson(n);
        diff = std::abs(cur - prev);
        prev = cur;
        if (iter >= 1 && diff < tol / 2) break;
    }
    if (iter >= 40)
        throw std::runtime_error("integrate_decaying: refinement cap hit (envelope violation?)");
    double tail = (diff + outside(L)) * kRoundSlack;
    return Certified{prev, tail, n};
}

}  // namespace thetaframe

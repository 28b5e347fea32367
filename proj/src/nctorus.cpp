#include "thetaframe/nctorus.hpp"

#include <cmath>
#include <numeric>

namespace thetaframe {

namespace {
constexpr double kTwoPi = 2.0 * M_PI;

inline cplx unit_phase(double frac) {
    return cplx{std::cos(kTwoPi * frac), std::sin(kTwoPi * frac)};
}
}  // namespace

Twist Twist::rational(std::int64_t num, std::int64_t den) {
    if (den <= 0) throw std::invalid_argument("Twist::rational: denominator must be positive");
    std::int64_t g = std::gcd(std::llabs(num), den);
    num /= g; den /= g;
    num %= den;
    if (num < 0) num += den;
    Twist t;
    t.rational_ = true;
    t.num_ = num;
    t.den_ = den;
    return t;
}

Twist Twist::real(const BigReal& phi) {
    // phi mod 1 as a 128-bit fixed-point fraction
    BigReal f = phi.frac();
    BigReal scaled = f * BigReal(2.0, 192).pow_int(64);
    mpz_class hi = scaled.to_mpz_floor();
    BigReal rem = scaled - BigReal(hi, 192);
    mpz_class lo = (rem * BigReal(2.0, 192).pow_int(64)).to_mpz_floor();
    Twist t;
    t.rational_ = false;
    t.fx_hi_ = hi.get_ui();
    t.fx_lo_ = lo.get_ui();
    return t;
}

Twist Twist::real(double phi) {
    return real(BigReal(phi, 128));
}

cplx Twist::phase(std::int64_t k) const {
    if (k < 0) return std::conj(phase(-k));
    if (rational_) {
        // exact: e((k*num mod den)/den)
        unsigned __int128 kk = (unsigned __int128)k * (unsigned __int128)num_;
        std::int64_t r = (std::int64_t)(kk % (unsigned __int128)den_);
        return unit_phase((double)r / (double)den_);
    }
    // (fx * k) mod 2^128, exact wrap-around arithmetic
    unsigned __int128 lo_prod = (unsigned __int128)fx_lo_ * (unsigned __int128)k;
    unsigned __int128 hi_prod = (unsigned __int128)fx_hi_ * (unsigned __int128)k;  // units of 2^64
    unsigned __int128 total = lo_prod + (hi_prod << 64);                           // mod 2^128 by wrap
    double frac = (double)(std::uint64_t)(total >> 64) * 0x1p-64 +
                  (double)(std::uint64_t)total * 0x1p-128;
    return unit_phase(frac);
}

double Twist::value() const {
    if (rational_) return (double)num_ / (double)den_;
    return (double)fx_hi_ * 0x1p-64 + (double)fx_lo_ * 0x1p-128;
}

bool Twist::operator==(const Twist& o) const {
    if (rational_ != o.rational_) return false;
    if (rational_) return num_ == o.num_ && den_ == o.den_;
    return fx_hi_ == o.fx_hi_ && fx_lo_ == o.fx_lo_;
}

TwistedPoly::TwistedPoly(Twist twist, std::optional<std::int64_t> modulus)
    : twist_(twist), modulus_(modulus) {
    if (modulus_ && *modulus_ < 1)
        throw std::invalid_argument("TwistedPoly: modulus must be positive");
}

TwistedPoly TwistedPoly::unit(Twist twist, std::optional<std::int64_t> modulus) {
    TwistedPoly p(twist, modulus);
    p.set(0, 0, cplx{1.0, 0.0});
    return p;
}

TwistedPoly TwistedPoly::monomial(Twist twist, std::int64_t m, std::int64_t n, cplx c,
                                  std::optional<std::int64_t> modulus) {
    TwistedPoly p(twist, modulus);
    p.set(m, n, c);
    return p;
}

TwistedPoly::Key TwistedPoly::reduce(Key k) const {
    if (!modulus_) return k;
    std::int64_t q = *modulus_;
    k.first %= q; if (k.first < 0) k.first += q;
    k.second %= q; if (k.second < 0) k.second += q;
    return k;
}

cplx TwistedPoly::at(std::int64_t m, std::int64_t n) const {
    auto it = c_.find(reduce({m, n}));
    return it == c_.end() ? cplx{0, 0} : it->second;
}

void TwistedPoly::set(std::int64_t m, std::int64_t n, cplx v) {
    Key k = reduce({m, n});
    if (std::abs(v) <= kPruneFloor) {
        auto it = c_.find(k);
        if (it != c_.end()) c_.erase(it);
        dropped_ += std::abs(v);
        return;
    }
    c_[k] = v;
}

void TwistedPoly::add(std::int64_t m, std::int64_t n, cplx v) {
    Key k = reduce({m, n});
    cplx cur = at(k.first, k.second) + v;
    set(k.first, k.second, cur);
}

void TwistedPoly::set_ordered(std::int64_t m, std::int64_t n, cplx v) {
    // g1^m g2^n = e(phi m n) pi_(m,n)
    set(m, n, v * twist_.phase(m * n));
}

cplx TwistedPoly::at_ordered(std::int64_t m, std::int64_t n) const {
    return at(m, n) * std::conj(twist_.phase(m * n));
}

TwistedPoly tp_mul(const TwistedPoly& x, const TwistedPoly& y) {
    if (!(x.twist_ == y.twist_) || x.modulus_ != y.modulus_)
        throw std::invalid_argument("tp_mul: twist/modulus mismatch");
    TwistedPoly out(x.twist_, x.modulus_);
    for (const auto& [u, cu] : x.c_)
        for (const auto& [v, cv] : y.c_) {
            cplx ph = x.twist_.phase(u.first * v.second);
            out.add(u.first + v.first, u.second + v.second, cu * cv * ph);
        }
    // pruning during a product may drop cross terms; account for them
    out.dropped_ += x.dropped_ * (tp_l1(y) + y.dropped_) + y.dropped_ * (tp_l1(x) + x.dropped_);
    return out;
}

TwistedPoly tp_adjoint(const TwistedPoly& x) {
    TwistedPoly out(x.twist_, x.modulus_);
    for (const auto& [w, c] : x.c_)
        out.add(-w.first, -w.second, std::conj(c) * x.twist_.phase(w.first * w.second));
    out.dropped_ = x.dropped_;
    return out;
}

double tp_l1(const TwistedPoly& x) {
    double s = 0;
    for (const auto& [w, c] : x.coeffs()) s += std::abs(c);
    return s;
}

TwistedPoly tp_fourier(const TwistedPoly& x) {
    // sigma(pi_(m,n)) = e(-phi m n) pi_(-n,m)
    TwistedPoly out(x.twist_, x.modulus_);
    for (const auto& [w, c] : x.c_)
        out.add(-w.second, w.first, c * std::conj(x.twist_.phase(w.first * w.second)));
    out.dropped_ = x.dropped_;
    return out;
}

TwistedPoly tp_flip(const TwistedPoly& x) {
    // sigma^2: pi_w -> pi_{-w} with no phase in lattice normalization
    TwistedPoly out(x.twist_, x.modulus_);
    for (const auto& [w, c] : x.c_) out.add(-w.first, -w.second, c);
    out.dropped_ = x.dropped_;
    return out;
}

TwistedPoly tp_add(const TwistedPoly& x, const TwistedPoly& y) {
    if (!(x.twist_ == y.twist_) || x.modulus_ != y.modulus_)
        throw std::invalid_argument("tp_add: twist/modulus mismatch");
    TwistedPoly out = x;
    for (const auto& [w, c] : y.c_) out.add(w.first, w.second, c);
    out.dropped_ += y.dropped_;
    return out;
}

TwistedPoly tp_sub(const TwistedPoly& x, const TwistedPoly& y) {
    if (!(x.twist_ == y.twist_) || x.modulus_ != y.modulus_)
        throw std::invalid_argument("tp_sub: twist/modulus mismatch");
    TwistedPoly out = x;
    for (const auto& [w, c] : y.c_) out.add(w.first, w.second, -c);
    out.dropped_ += y.dropped_;
    return out;
}

double tp_max_coeff_diff(const TwistedPoly& x, const TwistedPoly& y) {
    double m = 0;
    for (const auto& [w, c] : x.coeffs())
        m = std::max(m, std::abs(c - y.at(w.first, w.second)));
    for (const auto& [w, c] : y.coeffs())
        m = std::max(m, std::abs(c - x.at(w.first, w.second)));
    return m;
}

double clock_shift_norm(const TwistedPoly& x, std::int64_t N) {
    if (N < 2) throw std::invalid_argument("clock_shift_norm: rep_modulus must be >= 2");
    // twist approximated by the nearest fraction j/N
    double phi = x.twist().value();
    std::int64_t j = (std::int64_t)std::llround(phi * (double)N) % N;
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(N, N);
    for (const auto& [w, c] : x.coeffs()) {
        std::int64_t m = ((w.first % N) + N) % N;
        std::int64_t n = ((w.second % N) + N) % N;
        // pi_(m,n) -> S^n C^m, C = diag(omega^k), S = cyclic shift
        for (std::int64_t col = 0; col < N; ++col) {
            std::int64_t row = (col + n) % N;
            double ph = (double)((j * m % N) * col % N) / (double)N;
            M(row, col) += c * unit_phase(ph);
        }
    }
    // power iteration on the Gram matrix
    Eigen::MatrixXcd G = M.adjoint() * M;
    Eigen::VectorXcd v(N);
    for (std::int64_t i = 0; i < N; ++i) v(i) = cplx{1.0 + 0.25 * std::sin(1.0 + (double)i), 0.1 * std::cos(2.0 + (double)i)};
    v.normalize();
    double lambda = 0;
    for (int it = 0; it < 20000; ++it) {
        Eigen::VectorXcd y = G * v;
        double ny = y.norm();
        if (ny == 0) return 0.0;
        y /= ny;
        double lam = std::real((y.adjoint() * G * y)(0, 0));
        if (it > 2 && std::abs(lam - lambda) <= 1e-10 * std::max(1.0, lam)) {
            lambda = lam;
            break;
        }
        lambda = lam;
        v = y;
    }
    return std::sqrt(std::max(0.0, lambda));
}

NormReport norm_report(const TwistedPoly& x, std::optional<std::int64_t> rep_modulus) {
    NormReport r;
    r.l1 = tp_l1(x);
    r.truncation_l1 = x.truncation_l1() + (double)x.support_size() * TwistedPoly::kPruneFloor;
    if (rep_modulus) {
        r.matrix_modulus_used = *rep_modulus;
        r.matrix_estimate = clock_shift_norm(x, *rep_modulus);
    }
    return r;
}

Eigen::MatrixXcd psd_sqrt(const Eigen::MatrixXcd& mat, double tol) {
    if (mat.rows() != mat.cols()) throw std::invalid_argument("psd_sqrt: matrix must be square");
    if ((mat - mat.adjoint()).norm() > tol * std::max(1.0, mat.norm()))
        throw std::invalid_argument("psd_sqrt: matrix is not Hermitian within tol");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es((mat + mat.adjoint()) / 2.0);
    Eigen::VectorXd ev = es.eigenvalues();
    for (int i = 0; i < ev.size(); ++i) {
        if (ev(i) < -tol)
            throw std::domain_error("psd_sqrt: negative eigenvalue beyond tol");
        if (ev(i) < 0) ev(i) = 0;
    }
    Eigen::VectorXd rt = ev.cwiseSqrt();
    return es.eigenvectors() * rt.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace thetaframe

#include "thetaframe/diophantine.hpp"

#include <algorithm>
#include <cmath>

namespace thetaframe {

namespace {

// Continued-fraction expansion on a rigorous enclosure [lo,hi] of x.
// Quotients are emitted only while both endpoints agree on floor(); the
// endpoint recursion uses directed rounding so the enclosure stays valid.
struct IntervalCF {
    mpfr_t lo, hi;
    explicit IntervalCF(const BigReal& x) {
        long p = x.precision();
        mpfr_init2(lo, p);
        mpfr_init2(hi, p);
        mpfr_set(lo, x.raw(), MPFR_RNDD);
        mpfr_set(hi, x.raw(), MPFR_RNDU);
        // widen by one ulp each way: the caller's value is a rounded ball
        mpfr_nextbelow(lo);
        mpfr_nextabove(hi);
    }
    ~IntervalCF() {
        mpfr_clear(lo);
        mpfr_clear(hi);
    }
    // returns quotient, or nullopt when the enclosure no longer certifies one
    std::optional<mpz_class> next() {
        if (mpfr_cmp(lo, hi) > 0) return std::nullopt;
        mpfr_t flo, fhi;
        mpfr_init2(flo, mpfr_get_prec(lo));
        mpfr_init2(fhi, mpfr_get_prec(hi));
        mpfr_floor(flo, lo);
        mpfr_floor(fhi, hi);
        bool agree = mpfr_cmp(flo, fhi) == 0;
        mpz_class a;
        if (agree) mpfr_get_z(a.get_mpz_t(), flo, MPFR_RNDN);
        mpfr_clear(fhi);
        if (!agree) { mpfr_clear(flo); return std::nullopt; }
        // map [lo,hi] -> [1/(hi-a), 1/(lo-a)] with outward rounding
        mpfr_t t1, t2;
        mpfr_init2(t1, mpfr_get_prec(lo));
        mpfr_init2(t2, mpfr_get_prec(hi));
        mpfr_sub_z(t1, lo, a.get_mpz_t(), MPFR_RNDD);   // lo - a, rounded down
        mpfr_sub_z(t2, hi, a.get_mpz_t(), MPFR_RNDU);   // hi - a, rounded up
        if (mpfr_sgn(t1) <= 0) {
            // lower endpoint hit the integer: cannot certify further quotients
            mpfr_set_inf(lo, 1);
            mpfr_set_inf(hi, -1);
        } else {
            mpfr_ui_div(hi, 1, t1, MPFR_RNDU);
            mpfr_ui_div(lo, 1, t2, MPFR_RNDD);
        }
        mpfr_clear(t1);
        mpfr_clear(t2);
        mpfr_clear(flo);
        return a;
    }
};

bool is_perfect_square(const mpz_class& x, mpz_class* root = nullptr) {
    if (x < 0) return false;
    if (mpz_perfect_square_p(x.get_mpz_t()) == 0) return false;
    if (root) mpz_sqrt(root->get_mpz_t(), x.get_mpz_t());
    return true;
}

// |theta - p/q| at theta's precision
BigReal rational_gap(const BigReal& theta, const mpz_class& p, const mpz_class& q) {
    long prec = theta.precision();
    return (theta - BigReal(p, prec) / BigReal(q, prec)).abs();
}

void scan_side(const BigReal& theta, double exponent_a, bool complement,
               long count, SquareConvergentResult& out) {
    const BigReal target = complement ? 1 - theta : theta;
    const BigReal xi = xi_transform(target);
    IntervalCF cf(xi);

    mpz_class pkm2 = 1, pkm1 = 0, qkm2 = 0, qkm1 = 1;  // starts before a0
    long hits = 0;
    while (hits < count) {
        auto a = cf.next();
        if (!a) {
            out.status = SearchStatus::precision_exhausted;
            return;
        }
        mpz_class pk = *a * pkm1 + pkm2;
        mpz_class qk = *a * qkm1 + qkm2;
        pkm2 = pkm1; pkm1 = pk;
        qkm2 = qkm1; qkm1 = qk;
        ++out.convergents_scanned;

        const mpz_class &r = pk, &s = qk;
        if (r < 1 || r >= s) continue;  // proper convergents in (0,1) only

        SquareConvergent rec;
        rec.r = r; rec.s = s;
        rec.m = 2 * r * s;
        rec.k = s * s - r * r;
        rec.n = r * r + s * s;
        mpz_class pu = rec.k * rec.k;
        mpz_class qu = rec.n * rec.n;
        mpz_class d = gcd(pu, qu);
        mpz_class droot;
        if (!is_perfect_square(d, &droot))
            throw std::logic_error("square_convergents: gcd witness is not a perfect square");
        rec.gcd_reduced = d;
        rec.p = pu / d;
        rec.q = qu / d;
        if (!is_perfect_square(rec.p, &rec.p_root)) continue;
        if (!is_perfect_square(rec.q)) continue;
        mpz_class qp = rec.q - rec.p;
        if (!is_perfect_square(qp, &rec.qp_root)) continue;

        rec.err = rational_gap(target, rec.p, rec.q);
        if (rec.err.is_zero()) continue;  // rational target; not our regime
        // err < q^{-a}  <=>  err * q^a < 1
        long prec = theta.precision();
        BigReal qa = BigReal(rec.q, prec).pow(BigReal(exponent_a, prec));
        if (!(rec.err * qa < BigReal(1L, prec))) continue;
        double lerr = rec.err.ln().to_double();
        double lq = BigReal(rec.q, prec).ln().to_double();
        rec.achieved_exponent = -lerr / lq;
        rec.complement = complement;
        out.records.push_back(std::move(rec));
        ++hits;
    }
}

}  // namespace

std::vector<mpz_class> continued_fraction(const BigReal& x, long depth) {
    if (depth < 1) throw std::invalid_argument("continued_fraction: depth must be positive");
    if (x.sign() <= 0) throw std::domain_error("continued_fraction: x must be positive");
    std::vector<mpz_class> out;
    IntervalCF cf(x);
    for (long i = 0; i < depth; ++i) {
        auto a = cf.next();
        if (!a)
            throw PrecisionExhausted("continued_fraction: precision exhausted at depth " +
                                     std::to_string(out.size()));
        out.push_back(std::move(*a));
    }
    return out;
}

std::vector<Convergent> convergents(const BigReal& x, long depth) {
    auto quotients = continued_fraction(x, depth);
    std::vector<Convergent> out;
    mpz_class pm2 = 1, pm1 = 0, qm2 = 0, qm1 = 1;
    for (const auto& a : quotients) {
        mpz_class p = a * pm1 + pm2;
        mpz_class q = a * qm1 + qm2;
        pm2 = pm1; pm1 = p;
        qm2 = qm1; qm1 = q;
        out.push_back(Convergent{p, q});
    }
    return out;
}

BigReal xi_transform(const BigReal& theta) {
    long prec = theta.precision();
    BigReal one(1L, prec);
    if (!(theta > BigReal(0L, prec) && theta < one))
        throw std::domain_error("xi_transform: theta must lie in (0,1)");
    return (one - theta.sqrt()) / (one - theta).sqrt();
}

SquareConvergentResult square_convergents(const BigReal& theta, long count, double exponent_a) {
    if (count < 1) throw std::invalid_argument("square_convergents: count must be positive");
    if (exponent_a < 2.0) throw std::invalid_argument("square_convergents: exponent must be >= 2");
    SquareConvergentResult out;
    scan_side(theta, exponent_a, /*complement=*/false, count, out);

    bool any_usable = std::any_of(out.records.begin(), out.records.end(), [&](const SquareConvergent& rec) {
        long prec = theta.precision();
        return theta > BigReal(rec.p, prec) / BigReal(rec.q, prec);
    });
    if (!any_usable) {
        // the construction needs theta > p/q; fall back to approximating 1-theta
        scan_side(theta, exponent_a, /*complement=*/true, count, out);
    }

    std::sort(out.records.begin(), out.records.end(),
              [](const SquareConvergent& x, const SquareConvergent& y) { return x.q < y.q; });
    out.records.erase(std::unique(out.records.begin(), out.records.end(),
                                  [](const SquareConvergent& x, const SquareConvergent& y) {
                                      return x.p == y.p && x.q == y.q && x.complement == y.complement;
                                  }),
                      out.records.end());
    if ((long)out.records.size() > count) out.records.resize(count);
    return out;
}

mpz_class mod_inverse(const mpz_class& u, const mpz_class& q) {
    if (q < 1) throw std::domain_error("mod_inverse: modulus must be positive");
    mpz_class r;
    if (mpz_invert(r.get_mpz_t(), u.get_mpz_t(), q.get_mpz_t()) == 0)
        throw std::domain_error("mod_inverse: arguments are not coprime");
    if (r < 1) r += q;
    return r;
}

}  // namespace thetaframe

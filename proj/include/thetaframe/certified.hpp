#pragma once

#include <complex>
#include <cmath>
#include <stdexcept>

namespace thetaframe {

using cplx = std::complex<double>;

// A computed value together with a rigorous bound on its truncation /
// quadrature error: the true quantity lies within tail_bound of value.
struct Certified {
    cplx value{0.0, 0.0};
    double tail_bound = 0.0;
    long terms_used = 0;

    double abs_upper() const { return std::abs(value) + tail_bound; }
    double abs_lower() const {
        double a = std::abs(value) - tail_bound;
        return a > 0 ? a : 0.0;
    }
    // real part after checking the imaginary residue is inside the error band
    double real_checked(double slack = 0.0) const {
        if (std::abs(value.imag()) > tail_bound + slack)
            throw std::logic_error("Certified::real_checked: imaginary residue exceeds error band");
        return value.real();
    }
};

inline Certified make_real_certified(double v, double tail, long terms = 0) {
    return Certified{cplx{v, 0.0}, tail, terms};
}

// smallest positive double; used to keep certified upper bounds nonzero
// after underflow so they stay honest upper bounds
inline double tiny_floor(double x) {
    constexpr double kTiny = 5e-324;
    return x > kTiny ? x : kTiny;
}

}  // namespace thetaframe

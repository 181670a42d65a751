#include "reg/numeric.hpp"

#include <mpfr.h>

namespace reg {

namespace {
unsigned g_digits = 64;

/* Align boost's default mpfr precision with ours before main() runs; worker
 * threads have to call set_working_digits themselves. */
const struct PrecisionInit {
    PrecisionInit() { Real::default_precision(64); }
} g_precision_init;

struct PiCache {
    unsigned digits = 0;
    Real pi;
};
thread_local PiCache t_pi;
} // namespace

void set_working_digits(unsigned digits) {
    if (digits < 8) throw std::invalid_argument("working precision must be at least 8 digits");
    g_digits = digits;
    Real::default_precision(digits);
}

unsigned working_digits() { return g_digits; }

Real working_eps() {
    Real e = pow(Real(10), -static_cast<long>(g_digits));
    return e;
}

Real const_pi() {
    if (t_pi.digits != g_digits) {
        Real p;
        mpfr_const_pi(p.backend().data(), MPFR_RNDN);
        t_pi.pi = p;
        t_pi.digits = g_digits;
    }
    return t_pi.pi;
}

Real const_two_pi() { return 2 * const_pi(); }

Real const_log2() {
    Real l;
    mpfr_const_log2(l.backend().data(), MPFR_RNDN);
    return l;
}

Cplx& Cplx::operator*=(const Cplx& o) {
    Real r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = r;
    return *this;
}

Cplx operator*(const Cplx& a, const Cplx& b) {
    return Cplx(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
}

Cplx operator/(const Cplx& a, const Cplx& b) {
    Real q = norm2(b);
    if (q.is_zero()) throw std::domain_error("complex division by zero");
    return Cplx((a.re * b.re + a.im * b.im) / q, (a.im * b.re - a.re * b.im) / q);
}

Cplx& Cplx::operator/=(const Cplx& o) {
    *this = *this / o;
    return *this;
}

Real abs(const Cplx& z) {
    using boost::multiprecision::sqrt;
    if (z.im.is_zero()) return abs(z.re);
    if (z.re.is_zero()) return abs(z.im);
    return sqrt(norm2(z));
}

Real arg(const Cplx& z) {
    using boost::multiprecision::atan2;
    if (z.is_zero()) throw std::domain_error("arg(0) undefined");
    if (z.im.is_zero()) {
        /* Collapse signed zeros: a real input sits on the branch boundary,
         * and the (-pi, pi] convention forces +pi on the negative axis
         * (atan2 would return -pi for a -0 imaginary part). */
        return z.re > 0 ? Real(0) : const_pi();
    }
    return atan2(z.im, z.re);
}

Cplx plog(const Cplx& z) {
    using boost::multiprecision::log;
    if (z.is_zero()) throw std::domain_error("plog(0) undefined");
    return Cplx(log(abs(z)), arg(z));
}

Cplx exp(const Cplx& z) {
    using boost::multiprecision::exp;
    using boost::multiprecision::sin;
    using boost::multiprecision::cos;
    Real m = exp(z.re);
    if (z.im.is_zero()) return Cplx(m);
    return Cplx(m * cos(z.im), m * sin(z.im));
}

Cplx sqrt(const Cplx& z) {
    using boost::multiprecision::sqrt;
    if (z.is_zero()) return Cplx();
    Real m = abs(z);
    if (z.re >= 0) {
        Real t = sqrt((m + z.re) / 2);
        return Cplx(t, z.im / (2 * t));
    }
    Real t = sqrt((m - z.re) / 2);
    /* sign convention puts sqrt of a negative real on the +i axis */
    if (z.im < 0) return Cplx(-z.im / (2 * t), -t);
    return Cplx(z.im.is_zero() ? Real(0) : z.im / (2 * t), t);
}

Cplx pow_int(const Cplx& z, long n) {
    if (n == 0) return Cplx(1);
    if (n < 0) return Cplx(1) / pow_int(z, -n);
    Cplx acc(1), base = z;
    unsigned long e = static_cast<unsigned long>(n);
    while (e) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

Cplx polar(const Real& r, const Real& theta) {
    using boost::multiprecision::sin;
    using boost::multiprecision::cos;
    return Cplx(r * cos(theta), r * sin(theta));
}

Cplx imag_unit() { return Cplx(Real(0), Real(1)); }

Cplx two_pi_i() { return Cplx(Real(0), const_two_pi()); }

std::string to_decimal(const Real& x, unsigned digits) {
    if (digits == 0) digits = g_digits;
    return x.str(digits, std::ios_base::scientific);
}

std::string to_decimal(const Cplx& z, unsigned digits) {
    return to_decimal(z.re, digits) + (z.im < 0 ? " - " : " + ") +
           to_decimal(boost::multiprecision::abs(z.im), digits) + "*i";
}

} // namespace reg

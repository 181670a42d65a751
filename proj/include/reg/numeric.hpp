#pragma once
/*
 * Arbitrary-precision real and complex scalars used throughout the library.
 *
 * Real is an MPFR-backed float whose precision is set globally (decimal
 * digits) via set_working_digits(); Cplx is a plain re/im pair on top of it.
 * The complex logarithm here is the principal branch with argument in
 * (-pi, pi]; a negative real number gets argument +pi.  Every transcendental
 * routine in the library is built on top of these two types.
 */

#include <boost/multiprecision/mpfr.hpp>
#include <stdexcept>
#include <string>

namespace reg {

using Real = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<0>,
    boost::multiprecision::et_off>;

/* Set/get the working precision in decimal digits (process-global default;
 * worker threads must call set_working_digits themselves before computing). */
void set_working_digits(unsigned digits);
unsigned working_digits();

/* 10^-(working digits): the canonical "one ulp at working precision" scale. */
Real working_eps();

Real const_pi();
Real const_two_pi();
Real const_log2();

struct Cplx {
    Real re, im;

    Cplx() : re(0), im(0) {}
    Cplx(const Real& r) : re(r), im(0) {}
    Cplx(const Real& r, const Real& i) : re(r), im(i) {}
    Cplx(long r) : re(r), im(0) {}
    Cplx(int r) : re(r), im(0) {}
    explicit Cplx(const std::string& r, const std::string& i) : re(r), im(i) {}

    bool is_zero() const { return re.is_zero() && im.is_zero(); }

    Cplx operator-() const { return Cplx(-re, -im); }
    Cplx& operator+=(const Cplx& o) { re += o.re; im += o.im; return *this; }
    Cplx& operator-=(const Cplx& o) { re -= o.re; im -= o.im; return *this; }
    Cplx& operator*=(const Cplx& o);
    Cplx& operator/=(const Cplx& o);
};

inline Cplx operator+(Cplx a, const Cplx& b) { a += b; return a; }
inline Cplx operator-(Cplx a, const Cplx& b) { a -= b; return a; }
Cplx operator*(const Cplx& a, const Cplx& b);
Cplx operator/(const Cplx& a, const Cplx& b);
inline Cplx operator*(const Cplx& a, const Real& s) { return Cplx(a.re * s, a.im * s); }
inline Cplx operator*(const Real& s, const Cplx& a) { return a * s; }
inline Cplx operator/(const Cplx& a, const Real& s) { return Cplx(a.re / s, a.im / s); }
inline bool operator==(const Cplx& a, const Cplx& b) { return a.re == b.re && a.im == b.im; }
inline bool operator!=(const Cplx& a, const Cplx& b) { return !(a == b); }

inline Cplx conj(const Cplx& z) { return Cplx(z.re, -z.im); }
inline Real norm2(const Cplx& z) { return z.re * z.re + z.im * z.im; }
Real abs(const Cplx& z);

/* Principal argument in (-pi, pi]; arg(0) throws. */
Real arg(const Cplx& z);

/* Principal logarithm log|z| + i arg(z), arg in (-pi, pi]; plog(0) throws. */
Cplx plog(const Cplx& z);

Cplx exp(const Cplx& z);
Cplx sqrt(const Cplx& z); /* principal branch, sqrt(-1) = +i */
Cplx pow_int(const Cplx& z, long n);
Cplx polar(const Real& r, const Real& theta);

/* i * (2 pi) and the basic imaginary unit, at working precision. */
Cplx imag_unit();
Cplx two_pi_i();

/* Decimal string with the given number of significant digits (working
 * precision digits if 0).  Used for deterministic report output. */
std::string to_decimal(const Real& x, unsigned digits = 0);
std::string to_decimal(const Cplx& z, unsigned digits = 0);

} // namespace reg

#pragma once
/*
 * Principal-branch dilogarithm/trilogarithm, the Bloch-Wigner function, and
 * the handful of classical constants and closed-form identities the library
 * evaluates against.
 *
 * Branch policy: every multivalued function below is the principal branch
 * with argument in (-pi, pi].  Inputs landing exactly on a cut take the
 * boundary convention of that interval, so a real x > 1 is evaluated as the
 * lower edge x - i0 (this is what plog(-x) = log x + i pi forces).  The
 * closed-form identities are only certified inside regions that were fixed
 * by a numerical scan; outside them the residual is still returned but
 * flagged unverified.
 */

#include "reg/numeric.hpp"

#include <boost/multiprecision/gmp.hpp>

namespace reg {

/* Exact Bernoulli number B_n (B_1 = -1/2 convention), cached. */
const boost::multiprecision::mpq_rational& bernoulli(unsigned n);

/* Classical constants at working precision, cached per precision. */
Real zeta2();
Real zeta3();
Real catalan_const();

/* L(chi_{-3}, 2) = sum_{n>=1} chi(n)/n^2, chi(n) = 1, -1, 0 for
 * n = 1, 2, 0 mod 3.  Evaluated through the dilogarithm at a sixth root of
 * unity; the direct Dirichlet series is kept as a test oracle. */
Real l_chi3();

/* Dilogarithm and trilogarithm, principal branch, cut along [1, oo). */
Cplx li2(const Cplx& z);
Cplx li3(const Cplx& z);

/* Bloch-Wigner function D(z) = Im Li2(z) + arg(1-z) log|z|.  Identically
 * zero on the real axis (returned exactly), continuous everywhere. */
Real bloch_wigner(const Cplx& z);

/* Rogers-type dilogarithm L2(z) = Li2(1) - Li2(z) - (1/2)log(1-z)log(z).
 * Throws on z = 0 and z = 1 where the log factors degenerate. */
Cplx rogers_l2(const Cplx& z);

/* log(f/g) split as plog(f) - log(g), valid because g is required to be a
 * positive real; throws otherwise.  Integrand builders use this to keep a
 * chosen branch while denominators stay positive along a chain. */
Cplx split_log(const Cplx& f, const Real& g);

/* Named trilogarithm identities; residual = LHS - RHS as evaluated with the
 * branch conventions above.
 *   inversion: Li3(y) vs Li3(1/y) plus log^3/log^2/log corrections,
 *   landen:    Li3(x) + Li3(1-x) + Li3(x/(x-1)) vs its log closed form,
 *   li3sum:    Li3(x) + Li3(1-x) + Li3(1-1/x) vs the same closed form with
 *              the real-convention log|x| in the mixed term.
 * On-cut trilogarithm values inside landen/li3sum use the real (two-sided
 * average) convention, which is the convention under which the classical
 * real-variable statements hold. */
enum class LewinId { inversion, landen, li3sum };

struct IdentityCheck {
    Cplx residual;
    bool in_verified_region; /* inside the scan-certified region table */
};

IdentityCheck lewin_residual(LewinId id, const Cplx& arg);

/* An explicit antiderivative of log(a - x) log(b - x) / x in terms of
 * Li3/Li2/log.  The cross term is assembled on the log combination
 * plog(a - x) - plog(b - x), so the derivative matches the integrand at
 * every point off the polylogarithm cuts, independent of branch region.
 * Differences of this function compute the definite integral along paths
 * that do not cross those cuts.  Throws on x in {0, a, b}. */
Cplx antiderivative_log_pair_over_x(const Cplx& a, const Cplx& b, const Cplx& x);

/* An explicit antiderivative of Li2(1/(a(1+x))) / x; the singular points
 * are {0, -1, (1-a)/a}.  The assembly fixes logarithm branches in the
 * configuration x > 0 with a(1+x) > 1 on the real axis (the shape used
 * by the double-integral routes); differences taken along paths inside
 * that configuration compute the definite integral.  Elsewhere the value
 * may sit on another branch sheet. */
Cplx antiderivative_li2_shift_over_x(const Cplx& a, const Cplx& x);

} // namespace reg

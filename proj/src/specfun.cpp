#include "reg/specfun.hpp"

#include <mpfr.h>

#include <deque>
#include <mutex>
#include <vector>

namespace reg {

using boost::multiprecision::mpq_rational;
using boost::multiprecision::mpz_int;

const mpq_rational& bernoulli(unsigned n) {
    static std::mutex guard;
    static std::deque<mpq_rational> table; /* deque: growth keeps references valid */
    std::lock_guard<std::mutex> lock(guard);
    if (table.empty()) {
        table.emplace_back(1);
        table.emplace_back(mpq_rational(-1, 2));
    }
    while (table.size() <= n) {
        unsigned m = static_cast<unsigned>(table.size());
        /* sum_{j=0}^{m} C(m+1, j) B_j = 0  solved for B_m */
        mpq_rational s = 0;
        mpz_int c = 1; /* C(m+1, 0) */
        for (unsigned j = 0; j < m; ++j) {
            s += mpq_rational(c) * table[j];
            c = c * (m + 1 - j) / (j + 1);
        }
        table.push_back(-s / (m + 1));
    }
    return table[n];
}

namespace {

Real rational_to_real(const mpq_rational& q) {
    return Real(numerator(q).str()) / Real(denominator(q).str());
}

/* Per-precision caches for constants and series coefficients.  Invalidated
 * wholesale when the working precision changes. */
struct FnCache {
    unsigned digits = 0;
    bool have_consts = false;
    Real zeta2, zeta3, catalan;
    bool have_lchi3 = false;
    Real lchi3;
    std::vector<Real> li2_u;  /* B_k / (k+1)! */
    std::vector<Real> li3_mu; /* zeta(3-k) / k!, index i <-> k = i+3 */
};

thread_local FnCache t_cache;

FnCache& cache() {
    if (t_cache.digits != working_digits()) {
        t_cache = FnCache{};
        t_cache.digits = working_digits();
    }
    return t_cache;
}

void ensure_consts(FnCache& c) {
    if (c.have_consts) return;
    c.zeta2 = const_pi() * const_pi() / 6;
    Real z3;
    z3.precision(working_digits());
    mpfr_zeta_ui(z3.backend().data(), 3, MPFR_RNDN);
    c.zeta3 = z3;
    Real ct;
    ct.precision(working_digits());
    mpfr_const_catalan(ct.backend().data(), MPFR_RNDN);
    c.catalan = ct;
    c.have_consts = true;
}

void grow_li2_u(FnCache& c, std::size_t need) {
    while (c.li2_u.size() < need) {
        std::size_t k = c.li2_u.size();
        if (k > 1 && (k & 1)) {
            c.li2_u.emplace_back(0);
            continue;
        }
        Real fact(1);
        for (std::size_t j = 2; j <= k + 1; ++j) fact *= static_cast<unsigned long>(j);
        c.li2_u.push_back(rational_to_real(bernoulli(static_cast<unsigned>(k))) / fact);
    }
}

void grow_li3_mu(FnCache& c, std::size_t need) {
    while (c.li3_mu.size() < need) {
        std::size_t k = c.li3_mu.size() + 3;
        Real fact(1);
        for (std::size_t j = 2; j <= k; ++j) fact *= static_cast<unsigned long>(j);
        if (k == 3) {
            /* zeta(0) = -1/2 */
            c.li3_mu.push_back(Real(-1) / (2 * fact));
            continue;
        }
        unsigned m = static_cast<unsigned>(k - 2);
        if (m & 1) {
            c.li3_mu.emplace_back(0); /* zeta at negative even integers */
            continue;
        }
        /* zeta(-(k-3)) = -B_{k-2} / (k-2) */
        c.li3_mu.push_back(-rational_to_real(bernoulli(m)) / (m * fact));
    }
}

Real stop_scale() { return working_eps() / 1000000; }

Cplx li2_direct_series(const Cplx& z) {
    /* |z| <= 1/2: plain sum z^n / n^2 */
    Cplx term = z, sum = z;
    Real stop2 = stop_scale() * stop_scale();
    for (unsigned long n = 2; n < 100000; ++n) {
        term *= z;
        Cplx add = term / Real(n * n);
        sum += add;
        if (norm2(add) < stop2) return sum;
    }
    throw std::runtime_error("li2: direct series failed to converge");
}

Cplx li2_u_series(const Cplx& z) {
    /* Moderate |u|: Li2(z) = sum_{k>=0} B_k u^{k+1} / (k+1)!,
     * u = -log(1-z); converges for |u| < 2 pi. */
    FnCache& c = cache();
    Cplx u = -plog(Cplx(1) - z);
    Cplx upow = u, sum;
    Real stop2 = stop_scale() * stop_scale();
    for (std::size_t k = 0; k < 100000; ++k) {
        if (c.li2_u.size() <= k) grow_li2_u(c, k + 65);
        if (!c.li2_u[k].is_zero()) {
            Cplx add = upow * c.li2_u[k];
            sum += add;
            if (k >= 4 && norm2(add) < stop2) return sum;
        }
        upow *= u;
    }
    throw std::runtime_error("li2: u-series failed to converge");
}

Cplx li3_direct_series(const Cplx& z) {
    Cplx term = z, sum = z;
    Real stop2 = stop_scale() * stop_scale();
    for (unsigned long n = 2; n < 100000; ++n) {
        term *= z;
        Cplx add = term / Real(n * n * n);
        sum += add;
        if (norm2(add) < stop2) return sum;
    }
    throw std::runtime_error("li3: direct series failed to converge");
}

Cplx li3_mu_series(const Cplx& z) {
    /* Li3(e^mu) = zeta(3) + zeta(2) mu + (3/2 - log(-mu)) mu^2/2
     *             + sum_{k>=3} zeta(3-k) mu^k / k!,   |mu| < 2 pi. */
    FnCache& c = cache();
    ensure_consts(c);
    Cplx mu = plog(z);
    Cplx sum = Cplx(c.zeta3) + c.zeta2 * mu
             + mu * mu * (Cplx(Real(3) / 2) - plog(-mu)) / Real(2);
    Cplx mupow = mu * mu * mu;
    Real stop2 = stop_scale() * stop_scale();
    for (std::size_t k = 3; k < 100000; ++k) {
        if (c.li3_mu.size() <= k - 3) grow_li3_mu(c, k - 2 + 64);
        if (!c.li3_mu[k - 3].is_zero()) {
            Cplx add = mupow * c.li3_mu[k - 3];
            sum += add;
            if (k >= 6 && norm2(add) < stop2) return sum;
        }
        mupow *= mu;
    }
    throw std::runtime_error("li3: exponential series failed to converge");
}

} // namespace

Real zeta2() {
    FnCache& c = cache();
    ensure_consts(c);
    return c.zeta2;
}

Real zeta3() {
    FnCache& c = cache();
    ensure_consts(c);
    return c.zeta3;
}

Real catalan_const() {
    FnCache& c = cache();
    ensure_consts(c);
    return c.catalan;
}

Real l_chi3() {
    FnCache& c = cache();
    if (!c.have_lchi3) {
        using boost::multiprecision::sqrt;
        Real s3 = sqrt(Real(3));
        /* Im Li2(e^{2 pi i/3}) = (sqrt(3)/2) L(chi_{-3}, 2) */
        Cplx omega(Real(-1) / 2, s3 / 2);
        c.lchi3 = 2 * li2(omega).im / s3;
        c.have_lchi3 = true;
    }
    return c.lchi3;
}

Cplx li2(const Cplx& z) {
    if (z.is_zero()) return Cplx();
    Real n2 = norm2(z);
    if (n2 > 1) {
        /* inversion: Li2(z) = -Li2(1/z) - zeta(2) - log^2(-z)/2 */
        Cplx l = plog(-z);
        return -li2(Cplx(1) / z) - Cplx(zeta2()) - l * l / Real(2);
    }
    if (z.im.is_zero() && z.re == 1) return Cplx(zeta2());
    if (4 * n2 <= 1) return li2_direct_series(z);
    Cplx omz = Cplx(1) - z;
    if (4 * norm2(omz) <= 1) {
        /* reflection: Li2(z) = zeta(2) - log(z)log(1-z) - Li2(1-z) */
        return Cplx(zeta2()) - plog(z) * plog(omz) - li2_direct_series(omz);
    }
    return li2_u_series(z);
}

Cplx li3(const Cplx& z) {
    if (z.is_zero()) return Cplx();
    if (z.im.is_zero() && z.re == 1) return Cplx(zeta3());
    Real n2 = norm2(z);
    if (n2 > 1) {
        /* inversion: Li3(z) = Li3(1/z) - log^3(-z)/6 - zeta(2) log(-z) */
        Cplx l = plog(-z);
        return li3(Cplx(1) / z) - pow_int(l, 3) / Real(6) - Cplx(zeta2()) * l;
    }
    if (16 * n2 <= 1) return li3_direct_series(z);
    Cplx v = li3_mu_series(z);
    /* the exponential series walks through complex intermediates even for
     * real arguments; restore exact realness below the cut */
    if (z.im.is_zero() && z.re < 1) v.im = Real(0);
    return v;
}

Real bloch_wigner(const Cplx& z) {
    using boost::multiprecision::log;
    if (z.im.is_zero()) return Real(0);
    return li2(z).im + arg(Cplx(1) - z) * log(abs(z));
}

Cplx rogers_l2(const Cplx& z) {
    if (z.is_zero() || (z.im.is_zero() && z.re == 1))
        throw std::domain_error("rogers_l2: argument must avoid 0 and 1");
    return Cplx(zeta2()) - li2(z) - plog(Cplx(1) - z) * plog(z) / Real(2);
}

Cplx split_log(const Cplx& f, const Real& g) {
    using boost::multiprecision::log;
    if (!(g > 0)) throw std::domain_error("split_log: denominator must be a positive real");
    Cplx l = plog(f);
    l.re -= log(g);
    return l;
}

namespace {

/* Trilogarithm with on-cut arguments averaged over the two cut edges (the
 * imaginary part of the principal value cancels); this is the convention
 * under which the classical real-variable identities hold. */
Cplx li3_cut_averaged(const Cplx& z) {
    if (z.im.is_zero() && z.re > 1) return Cplx(li3(z).re);
    return li3(z);
}

} // namespace

IdentityCheck lewin_residual(LewinId id, const Cplx& x) {
    const Cplx one(1);
    IdentityCheck out;
    out.in_verified_region = false;
    switch (id) {
    case LewinId::inversion: {
        if (x.is_zero()) throw std::domain_error("lewin_residual: inversion needs a nonzero argument");
        Cplx l = plog(x);
        Cplx lhs = li3(x);
        Cplx rhs = li3(one / x) + Real(2) * zeta2() * l - pow_int(l, 3) / Real(6)
                 - imag_unit() * (const_pi() / 2) * l * l;
        out.residual = lhs - rhs;
        /* scan-certified: lower half-plane, plus the cut edge x > 1 itself
         * (the principal branch takes the lower-edge value there) */
        out.in_verified_region = (x.im < 0) || (x.im.is_zero() && x.re > 1);
        return out;
    }
    case LewinId::landen: {
        if (x.is_zero() || x == one)
            throw std::domain_error("lewin_residual: landen needs an argument off {0, 1}");
        Cplx l = plog(one - x);
        Cplx lhs = li3_cut_averaged(x) + li3_cut_averaged(one - x)
                 + li3_cut_averaged(x / (x - one));
        Cplx rhs = Cplx(zeta3()) + zeta2() * l - plog(-x) * l * l / Real(2)
                 + pow_int(l, 3) / Real(6);
        out.residual = lhs - rhs;
        out.in_verified_region = x.im.is_zero() && x.re < 0;
        return out;
    }
    case LewinId::li3sum: {
        if (x.is_zero() || x == one)
            throw std::domain_error("lewin_residual: li3sum needs an argument off {0, 1}");
        Cplx l = plog(one - x);
        Cplx lhs = li3_cut_averaged(x) + li3_cut_averaged(one - x)
                 + li3_cut_averaged(one - one / x);
        /* same closed form with the real-convention log|x| in the mixed
         * term, plus the inversion correction tying the third argument
         * 1 - 1/x to its reciprocal x/(x-1): both are negative reals on
         * (0,1), where Li3(1/w) - Li3(w) = log^3(-w)/6 + zeta(2)log(-w) */
        Real log_abs_x = plog(-x).re;
        Cplx lc = plog(x / (one - x));
        Cplx rhs = Cplx(zeta3()) + zeta2() * l - log_abs_x * l * l / Real(2)
                 + pow_int(l, 3) / Real(6)
                 + pow_int(lc, 3) / Real(6) + zeta2() * lc;
        out.residual = lhs - rhs;
        out.in_verified_region = x.im.is_zero() && x.re > 0 && x.re < 1;
        return out;
    }
    }
    throw std::logic_error("lewin_residual: unknown identity");
}

namespace {

/* Antiderivative of log^2(a - x) / (2x). */
Cplx anti_half_logsq(const Cplx& a, const Cplx& x) {
    Cplx u = Cplx(1) - x / a;
    Cplx la = plog(a - x);
    return -li3(u) + li2(u) * la + plog(x / a) * la * la / Real(2);
}

/* Antiderivative of log^2(t - alpha) / (2t): same shape with the log taken
 * in the other orientation. */
Cplx anti_half_logsq_flip(const Cplx& alpha, const Cplx& t) {
    Cplx u = Cplx(1) - t / alpha;
    Cplx lt = plog(t - alpha);
    return -li3(u) + li2(u) * lt + (plog(t) - plog(alpha)) * lt * lt / Real(2);
}

/* Antiderivative (in x) of -ly^2 / (2x) where y = (a-x)/(b-x) and ly is a
 * caller-chosen logarithm of y.  Every step of the differentiation only
 * needs d(ly)/dx = y'/y, so the caller may pass the branch combination
 * whose square it actually wants: the difference plog(a-x) - plog(b-x)
 * gives a derivative valid at every point off the integrand's cuts,
 * independent of which 2*pi*i sheet plog(y) itself lands on. */
Cplx anti_cross(const Cplx& a, const Cplx& b, const Cplx& y, const Cplx& ly) {
    Cplx w = b * y / a;
    return -li3(y) + li3(w) - ly * li2(w) - ly * ly * plog(Cplx(1) - w) / Real(2)
         + li2(y) * ly + plog(Cplx(1) - y) * ly * ly / Real(2);
}

} // namespace

Cplx antiderivative_log_pair_over_x(const Cplx& a, const Cplx& b, const Cplx& x) {
    if (a.is_zero() || b.is_zero())
        throw std::domain_error("antiderivative_log_pair_over_x: parameters must be nonzero");
    if (x.is_zero() || x == a || x == b)
        throw std::domain_error("antiderivative_log_pair_over_x: x hits a singular point");
    if (a == b) return Real(2) * anti_half_logsq(a, x);
    Cplx y = (a - x) / (b - x);
    Cplx ly = plog(a - x) - plog(b - x);
    return anti_half_logsq(a, x) + anti_half_logsq(b, x) + anti_cross(a, b, y, ly);
}

Cplx antiderivative_li2_shift_over_x(const Cplx& a, const Cplx& x) {
    const Cplx one(1);
    if (a.is_zero())
        throw std::domain_error("antiderivative_li2_shift_over_x: parameter must be nonzero");
    Cplx t = one + x;
    if (x.is_zero() || t.is_zero() || a * t == one)
        throw std::domain_error("antiderivative_li2_shift_over_x: x hits a singular point");
    Cplx ia = one / a;
    Cplx tail;
    if (ia == one) {
        tail = Real(2) * anti_half_logsq_flip(one, t);
    } else {
        Cplx y = (one - t) / (ia - t);
        tail = anti_half_logsq_flip(one, t) + anti_half_logsq_flip(ia, t)
             + anti_cross(one, ia, y, plog(y));
    }
    tail -= pow_int(plog(t), 3) / Real(3) + plog(t) * li2(one / t) + li3(one / t);
    return plog(x) * li2(one / (a * t)) - tail;
}

} // namespace reg

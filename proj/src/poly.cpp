#include <reg/poly.hpp>

#include <mpfr.h>

#include <algorithm>
#include <stdexcept>

namespace reg {

namespace {

const FieldElement& zero_element() {
    static const FieldElement z(0L);
    return z;
}

void trim(std::vector<FieldElement>& c) {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
}

} // namespace

Poly::Poly(std::vector<FieldElement> coeffs) : coeffs_(std::move(coeffs)) {
    trim(coeffs_);
}

Poly Poly::constant(const FieldElement& c) { return Poly({c}); }

Poly Poly::monomial(const FieldElement& c, std::size_t k) {
    std::vector<FieldElement> v(k + 1, FieldElement(0L));
    v[k] = c;
    return Poly(std::move(v));
}

const FieldElement& Poly::coeff(std::size_t k) const {
    return k < coeffs_.size() ? coeffs_[k] : zero_element();
}

const FieldElement& Poly::leading() const {
    if (is_zero()) throw std::domain_error("Poly::leading: zero polynomial");
    return coeffs_.back();
}

FieldElement Poly::operator()(const FieldElement& x) const {
    if (is_zero()) return FieldElement(0L);
    FieldElement acc = coeffs_.back();
    for (std::size_t k = coeffs_.size() - 1; k-- > 0;) acc = acc * x + coeffs_[k];
    return acc;
}

Cplx Poly::operator()(const Cplx& z) const {
    if (is_zero()) return Cplx();
    Cplx acc = embed(coeffs_.back());
    for (std::size_t k = coeffs_.size() - 1; k-- > 0;) acc = acc * z + embed(coeffs_[k]);
    return acc;
}

Poly Poly::operator-() const {
    std::vector<FieldElement> c = coeffs_;
    for (auto& x : c) x = -x;
    return Poly(std::move(c));
}

Poly& Poly::operator+=(const Poly& o) {
    if (coeffs_.size() < o.coeffs_.size())
        coeffs_.resize(o.coeffs_.size(), FieldElement(0L));
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    trim(coeffs_);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (coeffs_.size() < o.coeffs_.size())
        coeffs_.resize(o.coeffs_.size(), FieldElement(0L));
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    trim(coeffs_);
    return *this;
}

Poly& Poly::operator*=(const Poly& o) {
    if (is_zero() || o.is_zero()) {
        coeffs_.clear();
        return *this;
    }
    std::vector<FieldElement> out(coeffs_.size() + o.coeffs_.size() - 1, FieldElement(0L));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i].is_zero()) continue;
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
            out[i + j] += coeffs_[i] * o.coeffs_[j];
    }
    coeffs_ = std::move(out);
    trim(coeffs_);
    return *this;
}

Poly Poly::operator*(const FieldElement& c) const {
    std::vector<FieldElement> out = coeffs_;
    for (auto& x : out) x *= c;
    return Poly(std::move(out));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("Poly::divmod: division by zero polynomial");
    if (a.degree() < b.degree()) return {Poly(), a};
    std::vector<FieldElement> rem = a.coeffs_;
    std::vector<FieldElement> quo(a.coeffs_.size() - b.coeffs_.size() + 1, FieldElement(0L));
    FieldElement inv = b.leading().inverse();
    while (rem.size() >= b.coeffs_.size() && !rem.empty()) {
        FieldElement c = rem.back() * inv;
        std::size_t shift = rem.size() - b.coeffs_.size();
        quo[shift] = c;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
            rem[shift + j] -= c * b.coeffs_[j];
        trim(rem); /* top coefficient cancels exactly */
    }
    return {Poly(std::move(quo)), Poly(std::move(rem))};
}

Poly Poly::derivative() const {
    if (coeffs_.size() <= 1) return Poly();
    std::vector<FieldElement> out;
    out.reserve(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k)
        out.push_back(coeffs_[k] * FieldElement(static_cast<long>(k)));
    return Poly(std::move(out));
}

Poly Poly::monic() const {
    if (is_zero()) throw std::domain_error("Poly::monic: zero polynomial");
    return *this * leading().inverse();
}

Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.is_zero() ? a : a.monic();
}

std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& p) {
    if (p.is_zero())
        throw std::invalid_argument("squarefree_decomposition: zero polynomial");
    std::vector<std::pair<Poly, int>> out;
    if (p.degree() == 0) return out;
    Poly f = p.monic();
    Poly g = gcd(f, f.derivative());
    if (g.degree() == 0) {
        out.emplace_back(f, 1);
        return out;
    }
    Poly b = f / g;
    Poly c = f.derivative() / g;
    Poly d = c - b.derivative();
    int i = 1;
    while (b.degree() > 0) {
        Poly a = gcd(b, d);
        if (a.degree() > 0) out.emplace_back(a, i);
        b = b / a;
        c = d / a;
        d = c - b.derivative();
        ++i;
    }
    return out;
}

Poly squarefree_part(const Poly& p) {
    Poly out = Poly::constant(FieldElement(1L));
    for (const auto& [factor, mult] : squarefree_decomposition(p)) {
        (void)mult;
        out *= factor;
    }
    return out;
}

std::vector<Cplx> embedded_coeffs(const Poly& p) {
    std::vector<Cplx> out;
    out.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) out.push_back(embed(c));
    return out;
}

/* ---- numeric roots ---- */

std::vector<Cplx> complex_roots(std::vector<Cplx> coeffs) {
    using boost::multiprecision::abs;
    while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
    if (coeffs.size() <= 1)
        throw std::invalid_argument("complex_roots: polynomial must have positive degree");

    std::vector<Cplx> roots;
    /* exact zero roots split off first */
    std::size_t low = 0;
    while (low < coeffs.size() - 1 && coeffs[low].is_zero()) ++low;
    for (std::size_t k = 0; k < low; ++k) roots.push_back(Cplx());
    coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(low));

    const std::size_t d = coeffs.size() - 1;
    if (d == 0) return roots;
    if (d == 1) {
        roots.push_back(-(coeffs[0] / coeffs[1]));
        return roots;
    }

    /* Cauchy bound for the root moduli */
    Real lead = abs(coeffs.back());
    Real bound(0);
    for (std::size_t k = 0; k + 1 < coeffs.size(); ++k) {
        Real m = abs(coeffs[k]) / lead;
        if (m > bound) bound = m;
    }
    bound += 1;

    std::vector<Cplx> z(d);
    Real pi = const_pi();
    for (std::size_t j = 0; j < d; ++j) {
        Real r = bound * (Real(3) / 10 + (Real(7) * (static_cast<long>(j) + 1)) / (10 * static_cast<long>(d)));
        Real ang = 2 * pi * static_cast<long>(j) / static_cast<long>(d) + Real(43) / 100;
        z[j] = polar(r, ang);
    }

    auto eval_both = [&](const Cplx& x, Cplx& p, Cplx& dp) {
        p = coeffs.back();
        dp = Cplx();
        for (std::size_t k = coeffs.size() - 1; k-- > 0;) {
            dp = dp * x + p;
            p = p * x + coeffs[k];
        }
    };

    const Real eps = pow(Real(10), -static_cast<long>(working_digits()) + 6);
    bool converged = false;
    for (int iter = 0; iter < 600 && !converged; ++iter) {
        Real worst(0);
        for (std::size_t j = 0; j < d; ++j) {
            Cplx p, dp;
            eval_both(z[j], p, dp);
            if (p.is_zero()) continue;
            if (dp.is_zero()) {
                z[j] += Cplx(eps, eps);
                worst = Real(1);
                continue;
            }
            Cplx w = p / dp;
            Cplx s;
            for (std::size_t k = 0; k < d; ++k) {
                if (k == j) continue;
                Cplx diff = z[j] - z[k];
                if (diff.is_zero()) {
                    diff = Cplx(eps, -eps);
                    z[k] += Cplx(eps, eps);
                }
                s += Cplx(Real(1)) / diff;
            }
            Cplx denom = Cplx(Real(1)) - w * s;
            Cplx step = denom.is_zero() ? w : w / denom;
            z[j] -= step;
            Real rel = abs(step) / (1 + abs(z[j]));
            if (rel > worst) worst = rel;
        }
        converged = worst < eps;
    }
    if (!converged)
        throw std::runtime_error("complex_roots: root iteration failed to converge");

    /* polish with two Newton steps each */
    for (std::size_t j = 0; j < d; ++j) {
        for (int t = 0; t < 2; ++t) {
            Cplx p, dp;
            eval_both(z[j], p, dp);
            if (dp.is_zero() || p.is_zero()) break;
            z[j] -= p / dp;
        }
        roots.push_back(z[j]);
    }
    return roots;
}

/* ---- rational reconstruction ---- */

namespace {

using Integer = boost::multiprecision::mpz_int;

Integer floor_div(const Integer& n, const Integer& d) {
    Integer q = n / d; /* truncates toward zero */
    if ((n < 0) != (d < 0) && q * d != n) --q;
    return q;
}

} // namespace

std::optional<Rational> rationalize(const Real& x, const Real& tol) {
    using boost::multiprecision::numerator;
    using boost::multiprecision::denominator;
    Rational target;
    mpfr_get_q(target.backend().data(), x.backend().data());
    Rational tol_q;
    mpfr_get_q(tol_q.backend().data(), tol.backend().data());
    if (tol_q < 0) tol_q = -tol_q;

    const Integer height_cap("1000000000000");

    /* convergent recurrence p_n = a_n p_{n-1} + p_{n-2} */
    Integer p_prev = 0, q_prev = 1;
    Integer p_cur = 1, q_cur = 0;
    Rational rest = target;
    for (int iter = 0; iter < 10000; ++iter) {
        Integer a = floor_div(numerator(rest), denominator(rest));
        Integer p = a * p_cur + p_prev;
        Integer q = a * q_cur + q_prev;
        p_prev = p_cur; q_prev = q_cur;
        p_cur = p; q_cur = q;
        Rational conv(p, q);
        Rational err = target - conv;
        if (err < 0) err = -err;
        if (err <= tol_q)
            return q <= height_cap ? std::optional<Rational>(conv) : std::nullopt;
        Rational frac = rest - Rational(a);
        if (frac == 0) return std::nullopt; /* expansion ended outside tol */
        rest = Rational(1) / frac;
    }
    return std::nullopt;
}

/* ---- roots over the coefficient field ---- */

namespace {

/* attempt an exact representative of the numeric root r over field f */
std::optional<FieldElement> reconstruct_root(const FieldPtr& f, const Cplx& r,
                                             const Real& tol) {
    using boost::multiprecision::abs;
    if (f->degree() == 1) {
        if (abs(r.im) > tol) return std::nullopt;
        auto q = rationalize(r.re, tol);
        if (!q) return std::nullopt;
        return FieldElement(*q);
    }
    if (f->degree() == 2) {
        Cplx th = f->generator_embedding();
        if (abs(th.im) > tol) {
            /* imaginary quadratic: unique decomposition r = alpha + beta*th
             * with rational alpha, beta; Re th = -c1/2 is exactly rational */
            auto beta = rationalize(r.im / th.im, tol);
            if (!beta) return std::nullopt;
            Rational th_re = -f->defining_lower()[1] / 2;
            auto alpha = rationalize(r.re - to_real(*beta) * to_real(th_re), tol);
            if (!alpha) return std::nullopt;
            return FieldElement(f, {*alpha, *beta});
        }
        /* real quadratic generator: only rational roots are reconstructed */
        if (abs(r.im) > tol) return std::nullopt;
        auto q = rationalize(r.re, tol);
        if (!q) return std::nullopt;
        return FieldElement(f, {*q, Rational(0)});
    }
    if (abs(r.im) > tol) return std::nullopt;
    auto q = rationalize(r.re, tol);
    if (!q) return std::nullopt;
    std::vector<Rational> c(f->degree(), Rational(0));
    c[0] = *q;
    return FieldElement(f, std::move(c));
}

} // namespace

std::vector<PolyRoot> field_poly_roots(const Poly& p) {
    using boost::multiprecision::abs;
    if (p.is_zero())
        throw std::invalid_argument("field_poly_roots: zero polynomial");
    std::vector<PolyRoot> out;
    if (p.degree() == 0) return out;

    /* the common field of the coefficients (any non-rational one wins) */
    FieldPtr f = NumberField::rationals();
    for (const auto& c : p.coeffs())
        if (c.field()->degree() > 1) f = c.field();

    const Real tol = pow(Real(10), -static_cast<long>(working_digits() / 2));

    for (const auto& [factor, mult] : squarefree_decomposition(p)) {
        std::vector<Cplx> roots = complex_roots(embedded_coeffs(factor));
        for (const Cplx& r : roots) {
            PolyRoot pr;
            pr.approx = r;
            pr.multiplicity = mult;
            auto cand = reconstruct_root(f, r, tol);
            if (cand && factor(*cand).is_zero()) {
                pr.exact = cand;
                pr.approx = embed(*cand);
            }
            out.push_back(std::move(pr));
        }
    }
    return out;
}

/* ---- rational functions ---- */

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero())
        throw std::domain_error("RatFunc: zero denominator");
    if (num_.is_zero()) {
        den_ = Poly::constant(FieldElement(1L));
        return;
    }
    Poly g = gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = num_ / g;
        den_ = den_ / g;
    }
    FieldElement lead = den_.leading();
    den_ = den_.monic();
    num_ = num_ * lead.inverse();
}

RatFunc RatFunc::constant(const FieldElement& c) {
    return RatFunc(Poly::constant(c), Poly::constant(FieldElement(1L)));
}

FieldElement RatFunc::operator()(const FieldElement& x) const {
    FieldElement d = den_(x);
    if (d.is_zero()) throw std::domain_error("RatFunc: evaluation at a pole");
    return num_(x) / d;
}

Cplx RatFunc::operator()(const Cplx& z) const {
    Cplx d = den_(z);
    if (d.is_zero()) throw std::domain_error("RatFunc: evaluation at a pole");
    return num_(z) / d;
}

RatFunc RatFunc::operator-() const {
    RatFunc out = *this;
    out.num_ = -out.num_;
    return out;
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
    *this = RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) {
    *this = RatFunc(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    return *this;
}

RatFunc& RatFunc::operator*=(const RatFunc& o) {
    *this = RatFunc(num_ * o.num_, den_ * o.den_);
    return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) {
    if (o.is_zero()) throw std::domain_error("RatFunc: division by zero");
    *this = RatFunc(num_ * o.den_, den_ * o.num_);
    return *this;
}

RatFunc RatFunc::derivative() const {
    return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

} // namespace reg

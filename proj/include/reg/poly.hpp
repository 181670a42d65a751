#pragma once

#include <reg/exact.hpp>

#include <optional>
#include <utility>
#include <vector>

namespace reg {

/* Univariate polynomial with exact field coefficients, stored low-to-high
 * and kept trimmed (no zero leading coefficient; the zero polynomial has an
 * empty coefficient vector and degree -1). */
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<FieldElement> coeffs);
    static Poly constant(const FieldElement& c);
    static Poly monomial(const FieldElement& c, std::size_t k);

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<FieldElement>& coeffs() const { return coeffs_; }
    const FieldElement& coeff(std::size_t k) const; /* zero beyond the degree */
    const FieldElement& leading() const;            /* throws on the zero polynomial */

    FieldElement operator()(const FieldElement& x) const;
    Cplx operator()(const Cplx& z) const;

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(Poly a, const Poly& b) { return a *= b; }
    Poly operator*(const FieldElement& c) const;

    /* exact euclidean division: a = q b + r with deg r < deg b */
    static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
    Poly operator/(const Poly& b) const { return divmod(*this, b).first; }
    Poly operator%(const Poly& b) const { return divmod(*this, b).second; }

    Poly derivative() const;
    Poly monic() const; /* throws on the zero polynomial */

    bool operator==(const Poly& o) const { return coeffs_ == o.coeffs_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

private:
    std::vector<FieldElement> coeffs_;
};

/* Monic greatest common divisor (zero when both arguments vanish). */
Poly gcd(Poly a, Poly b);

/* Exact squarefree decomposition p = lc * prod f_k^k: returns the monic
 * squarefree pairwise-coprime factors with their multiplicities, skipping
 * trivial (constant) factors.  Requires p nonzero. */
std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& p);

/* Product of the distinct monic irreducible-power bases (the radical). */
Poly squarefree_part(const Poly& p);

/* Coefficients embedded into the complex numbers at working precision. */
std::vector<Cplx> embedded_coeffs(const Poly& p);

/* All complex roots (with multiplicity by repetition) of the polynomial
 * with the given complex coefficients, low-to-high, leading entry nonzero;
 * Aberth-Ehrlich iteration at the working precision. */
std::vector<Cplx> complex_roots(std::vector<Cplx> coeffs);

/* The first continued-fraction convergent of x within tol, when one of
 * moderate height exists. */
std::optional<Rational> rationalize(const Real& x, const Real& tol);

struct PolyRoot {
    Cplx approx;
    int multiplicity = 1;
    std::optional<FieldElement> exact; /* set when the root lies in the field */
};

/* Complex roots of a nonzero field polynomial.  Multiplicities come from
 * the exact squarefree decomposition; each root of a squarefree factor is
 * located numerically, then an exact reconstruction over the coefficient
 * field is attempted (rational, or a + b*generator for an imaginary
 * quadratic generator) and kept only if it verifies exactly. */
std::vector<PolyRoot> field_poly_roots(const Poly& p);

/* Reduced rational function with monic denominator (canonical form, so
 * equality is coefficient-wise). */
class RatFunc {
public:
    RatFunc() : num_(), den_(Poly::constant(FieldElement(1L))) {}
    RatFunc(Poly num, Poly den); /* throws on a zero denominator */
    static RatFunc constant(const FieldElement& c);

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }

    FieldElement operator()(const FieldElement& x) const; /* throws at poles */
    Cplx operator()(const Cplx& z) const;                 /* throws at exact poles */

    RatFunc operator-() const;
    RatFunc& operator+=(const RatFunc& o);
    RatFunc& operator-=(const RatFunc& o);
    RatFunc& operator*=(const RatFunc& o);
    RatFunc& operator/=(const RatFunc& o); /* throws on zero divisor */
    friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
    friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
    friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
    friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }

    RatFunc derivative() const;

    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

private:
    Poly num_, den_;
};

} // namespace reg

#pragma once

#include <reg/numeric.hpp>

#include <boost/multiprecision/gmp.hpp>

#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace reg {

/* Exact rational scalar. */
using Rational = boost::multiprecision::mpq_rational;

/* Convert an exact rational to a Real at the working precision. */
Real to_real(const Rational& q);

/* Coefficient field for exact computations: either the rationals or a
 * simple extension Q[x]/(m(x)) for a monic defining polynomial m, assumed
 * irreducible over Q.  The complex embedding sends the residue class of x
 * to the root of m with the largest imaginary part, ties broken toward
 * the larger real part; all exact-to-complex conversions happen at the
 * global working precision. */
class NumberField {
public:
    /* the rationals, presented as Q[x]/(x) */
    static std::shared_ptr<const NumberField> rationals();

    /* Q[x]/(x^d + c_{d-1} x^{d-1} + ... + c_0), coefficients low-to-high
     * without the leading 1; degree d >= 2 */
    static std::shared_ptr<const NumberField> extension(std::vector<Rational> lower);

    std::size_t degree() const { return lower_.size(); }
    const std::vector<Rational>& defining_lower() const { return lower_; }
    bool same_as(const NumberField& other) const { return lower_ == other.lower_; }

    /* the chosen complex root of the defining polynomial */
    Cplx generator_embedding() const;

private:
    explicit NumberField(std::vector<Rational> lower) : lower_(std::move(lower)) {}
    std::vector<Rational> lower_;
};

using FieldPtr = std::shared_ptr<const NumberField>;

/* An element of a NumberField, represented by its coordinate vector in the
 * power basis 1, x, ..., x^{d-1}.  Arithmetic is exact; mixed-field
 * operations are permitted only when one side is rational (it is lifted)
 * or the fields share the same defining polynomial. */
class FieldElement {
public:
    FieldElement() : FieldElement(Rational(0)) {}
    FieldElement(const Rational& r);
    FieldElement(long n) : FieldElement(Rational(n)) {}
    FieldElement(int n) : FieldElement(Rational(n)) {}
    FieldElement(FieldPtr field, std::vector<Rational> coords);

    /* the residue class of x */
    static FieldElement generator(const FieldPtr& field);

    const FieldPtr& field() const { return field_; }
    const std::vector<Rational>& coords() const { return coords_; }

    bool is_zero() const;
    bool is_rational() const; /* all coordinates beyond the first vanish */
    Rational rational_value() const; /* throws std::domain_error if not */

    FieldElement operator-() const;
    FieldElement& operator+=(const FieldElement& o);
    FieldElement& operator-=(const FieldElement& o);
    FieldElement& operator*=(const FieldElement& o);
    FieldElement& operator/=(const FieldElement& o); /* throws on zero divisor */
    FieldElement inverse() const;

    friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
    friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
    friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
    friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }

    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

private:
    FieldPtr field_;
    std::vector<Rational> coords_;
};

/* Complex embedding at the working precision. */
Cplx embed(const FieldElement& a);

/* Readable form "3/2 + 1/3 th + ..." with the generator written as th. */
std::string to_string(const FieldElement& a);

/* A point of projective n-space with exact coordinates.  Equality is
 * proportionality; the canonical representative scales the first nonzero
 * coordinate to 1. */
class ProjPoint {
public:
    explicit ProjPoint(std::vector<FieldElement> coords); /* throws if all zero */

    std::size_t dimension() const { return coords_.size() - 1; }
    const std::vector<FieldElement>& coords() const { return coords_; }
    ProjPoint normalized() const;

    bool operator==(const ProjPoint& o) const;
    bool operator!=(const ProjPoint& o) const { return !(*this == o); }

private:
    std::vector<FieldElement> coords_;
};

std::vector<Cplx> embed(const ProjPoint& p);
std::string to_string(const ProjPoint& p);

/* Insert a zero coordinate at slot j (face inclusion, dimension n-1 -> n). */
ProjPoint face_insert(const ProjPoint& p, std::size_t j);

/* Sum adjacent coordinates i, i+1 (degeneracy, dimension n+1 -> n);
 * throws std::domain_error if every resulting coordinate vanishes. */
ProjPoint degeneracy_merge(const ProjPoint& p, std::size_t i);

/* True iff the coordinates sum to zero exactly. */
bool in_special_hyperplane(const ProjPoint& p);

/* Dense matrix of field elements with exact rank/determinant. */
class ExactMatrix {
public:
    ExactMatrix(std::size_t rows, std::size_t cols);
    static ExactMatrix from_rows(std::vector<std::vector<FieldElement>> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    FieldElement& at(std::size_t i, std::size_t j);
    const FieldElement& at(std::size_t i, std::size_t j) const;

    std::size_t rank() const;       /* cached after first computation */
    FieldElement det() const;       /* square matrices only */
    ExactMatrix rref() const;       /* reduced row-echelon form */

private:
    std::size_t rows_, cols_;
    std::vector<FieldElement> data_;
    mutable long rank_cache_ = -1;
};

/* The 2x2 minor a_i b_j - a_j b_i of a 2-row matrix. */
FieldElement minor(const ExactMatrix& m, std::size_t i, std::size_t j);

/* Cross-ratio (t0-t3)(t1-t2) / ((t0-t2)(t1-t3)); throws on a vanishing
 * denominator. */
FieldElement cross_ratio(const FieldElement& t0, const FieldElement& t1,
                         const FieldElement& t2, const FieldElement& t3);
Cplx cross_ratio(const Cplx& t0, const Cplx& t1, const Cplx& t2, const Cplx& t3);

namespace detail {

/* Shared formula for the cube-to-simplex coordinates: entry k of the image
 * of ([s_1:l_1], ..., [s_n:l_n]) is (-1)^k l_1...l_k s_{k+1} prod_{j>k+1}
 * (s_j - l_j), the last entry being (-1)^n l_1...l_n. */
template <typename T>
std::vector<T> cube_to_simplex_coords(const std::vector<std::pair<T, T>>& q) {
    const std::size_t n = q.size();
    std::vector<T> suffix(n + 1, T(1)); /* suffix[j] = prod_{m >= j} (s_m - l_m) */
    for (std::size_t j = n; j-- > 0;)
        suffix[j] = (q[j].first - q[j].second) * suffix[j + 1];
    std::vector<T> out;
    out.reserve(n + 1);
    T prefix(1); /* running (-1)^k l_1...l_k */
    for (std::size_t k = 0; k < n; ++k) {
        out.push_back(prefix * q[k].first * suffix[k + 1]);
        prefix = -(prefix * q[k].second);
    }
    out.push_back(prefix);
    return out;
}

} // namespace detail

/* The map from the n-cube (as a product of projective lines with
 * coordinates [s_j : l_j], affinely z_j = l_j / s_j) to projective n-space.
 * Throws std::domain_error when some s_j = l_j (the deleted z_j = 1 face,
 * where the image would be undefined/in the special hyperplane). */
ProjPoint cube_to_simplex(const std::vector<std::pair<FieldElement, FieldElement>>& q);
std::vector<Cplx> cube_to_simplex(const std::vector<std::pair<Cplx, Cplx>>& q);

/* The n x (n+1) linear system cutting out the image point: row j has l_{j+1}
 * on the diagonal slot j and s_{j+1} in every later column. */
ExactMatrix cube_system_matrix(const std::vector<std::pair<FieldElement, FieldElement>>& q);

/* The system matrix bordered by a row of ones on top; its determinant is
 * exactly prod_j (s_j - l_j), which witnesses both full rank and the image
 * avoiding the special hyperplane. */
ExactMatrix cube_bordered_matrix(const std::vector<std::pair<FieldElement, FieldElement>>& q);

} // namespace reg

#pragma once
/*
 * Parametrized curves in projective space, linear subvarieties, their
 * boundary maps, admissibility predicates, and the translation from
 * simplex-style coordinates to cube-style coordinate functions.
 *
 * A curve is given by n+1 homogeneous forms F_0,...,F_n of one common
 * degree d in two variables (Z, W); it is stored dehomogenized, as the
 * tuple p_i(t) = F_i(t, 1) together with d = max deg p_i.  The boundary
 * operator intersects the curve with the coordinate hyperplanes {X_j = 0},
 * drops every intersection point whose coordinate sum vanishes (such points
 * are invisible in the ambient geometry, which is taken relative to the
 * hyperplane sum X_0 + ... + X_n = 0), and records the rest with rational
 * weights (-1)^j * multiplicity.
 *
 * Text format for curve cycles (one cycle per file or string):
 *
 *   file        : (comment | field-line | mult-line | blank)* poly-line+
 *   comment     : '#' to end of line
 *   field-line  : "field" expr-in-x       -- monic polynomial, rational
 *                                            coefficients, degree >= 2;
 *                                            declares the generator "th"
 *   mult-line   : "multiplicity" rational
 *   poly-line   : expr-in-ZW              -- one line per coordinate form
 *   expr        : sum/difference of products of powers of atoms, with
 *                 parentheses; atoms are rational literals ("3", "-1/2"),
 *                 the field generator "th", and the variables (Z, W for
 *                 poly-lines, x for the field line); exponents are "^k"
 *                 with k a nonnegative integer
 *
 * Every poly-line must be homogeneous in (Z, W) and all lines must share
 * one total degree; inhomogeneous input is rejected, as are tuples whose
 * forms share a common factor.  Example (a cyclotomic cubic curve):
 *
 *   field x^2+x+1
 *   -Z*(Z-th^2*W)^2
 *   W*(Z-th*W)*(Z-th^2*W)
 *   -W^3
 *   Z^3
 */

#include "reg/exact.hpp"
#include "reg/poly.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace reg {

/* ------------------------------------------------------------------ */
/*  Curves                                                            */
/* ------------------------------------------------------------------ */

class CurveCycle {
public:
    /*
     * components[i] is p_i(t) = F_i(t, 1); the common homogeneous degree
     * is max_i deg p_i.  Requires at least two components, at least one
     * nonzero, and no common polynomial factor among the nonzero ones
     * (this also rules out a shared power of W).  Components may
     * individually vanish; such curves lie inside a coordinate hyperplane
     * and are rejected by the boundary operator but may still be stored.
     */
    explicit CurveCycle(std::vector<Poly> components,
                        Rational multiplicity = Rational(1));

    std::size_t ambient_dim() const { return components_.size() - 1; } /* n */
    long degree() const { return degree_; }                            /* d */
    const Rational& multiplicity() const { return multiplicity_; }
    const std::vector<Poly>& components() const { return components_; }
    const FieldPtr& field() const { return field_; }

    /* [F_0(t) : ... : F_n(t)] at the working precision */
    std::vector<Cplx> point_at(const Cplx& t) const;
    /* value at [Z:W] = [1:0], i.e. the degree-d coefficients */
    std::vector<Cplx> point_at_infinity() const;
    /* exact evaluation (parameter in the coefficient field) */
    std::vector<FieldElement> point_at(const FieldElement& t) const;
    std::vector<FieldElement> exact_point_at_infinity() const;

    bool component_vanishes(std::size_t i) const;
    /* true when the whole image satisfies sum of coordinates = 0 */
    bool inside_special_hyperplane() const;

private:
    std::vector<Poly> components_;
    Rational multiplicity_;
    FieldPtr field_;
    long degree_;
};

/* Parse / serialize the documented text format. */
CurveCycle parse_curve_cycle(const std::string& text);
std::string to_text(const CurveCycle& c);

/* ------------------------------------------------------------------ */
/*  Linear cycles                                                     */
/* ------------------------------------------------------------------ */

/* A k-plane in n-space, the projectivized row space of a full-rank
 * (k+1) x (n+1) matrix.  Equality means equal row spaces. */
class LinearCycle {
public:
    explicit LinearCycle(ExactMatrix m);

    std::size_t sub_dim() const;     /* k */
    std::size_t ambient_dim() const; /* n */
    const ExactMatrix& matrix() const { return m_; }

    bool operator==(const LinearCycle& o) const;
    bool operator!=(const LinearCycle& o) const { return !(*this == o); }

    /* row space contained in {sum of coordinates = 0} */
    bool inside_special_hyperplane() const;
    /* row space contained in {X_j = 0} */
    bool inside_coordinate_hyperplane(std::size_t j) const;

private:
    ExactMatrix m_;
};

/*
 * Intersect the row space with {X_j = 0} and delete coordinate j.
 * Fails when the row space lies inside the hyperplane (the intersection
 * would not drop dimension) or when the cycle is a single point.
 */
LinearCycle face_restrict_linear(const LinearCycle& l, std::size_t j);

/* Formal rational combination of linear cycles, merged exactly. */
class LinearChain {
public:
    void add(const Rational& coeff, const LinearCycle& term);
    const std::vector<std::pair<Rational, LinearCycle>>& terms() const {
        return terms_;
    }
    bool is_zero() const { return terms_.empty(); }
    LinearChain& operator+=(const LinearChain& o);

private:
    std::vector<std::pair<Rational, LinearCycle>> terms_;
};

/*
 * Alternating sum of the face restrictions, discarding faces whose row
 * space lies inside the special hyperplane.  Applying it twice always
 * yields the zero chain.
 */
LinearChain linear_boundary(const LinearCycle& l);
LinearChain linear_boundary(const LinearChain& chain);

/* ------------------------------------------------------------------ */
/*  Curve boundaries                                                  */
/* ------------------------------------------------------------------ */

/* One boundary point: exact coordinates when the root could be expressed
 * in the coefficient field, a complex embedding always. */
struct BoundaryPoint {
    std::optional<ProjPoint> exact;
    std::vector<Cplx> approx;
};

/* Tolerance used to merge numerically-known points (half the working
 * digits, matching the root-reconstruction tolerance). */
Real point_merge_tolerance();

bool same_boundary_point(const BoundaryPoint& a, const BoundaryPoint& b,
                         const Real& tol);

class BoundaryChain {
public:
    void add(const Rational& coeff, BoundaryPoint p);
    const std::vector<std::pair<Rational, BoundaryPoint>>& terms() const {
        return terms_;
    }
    bool is_zero() const { return terms_.empty(); }
    BoundaryChain& operator+=(const BoundaryChain& o);

private:
    std::vector<std::pair<Rational, BoundaryPoint>> terms_;
};

/*
 * Intersections of the curve with the coordinate hyperplanes, with weight
 * (-1)^j * (root multiplicity) * (cycle multiplicity), coordinate j
 * deleted, and every point with vanishing coordinate sum discarded.
 * Points are exact whenever the corresponding component splits into
 * factors expressible in the coefficient field.  Fails if a component
 * vanishes identically (curve inside a coordinate hyperplane).
 */
BoundaryChain bloch_boundary(const CurveCycle& c);

/* ------------------------------------------------------------------ */
/*  Coordinate functions                                              */
/* ------------------------------------------------------------------ */

/*
 * The n standard simplex-coordinate functions pulled back through the
 * parametrization: entry j (1-based j = 1..n) is
 *     -(F_j + F_{j+1} + ... + F_n) / F_{j-1}
 * as a reduced rational function of the curve parameter.  Fails when a
 * denominator F_{j-1} vanishes identically.
 */
std::vector<RatFunc> pullback_simplex_functions(const CurveCycle& c);

/* A curve written in cube-style coordinates z_1(t), ..., z_n(t). */
struct CubicalCurve {
    std::vector<RatFunc> coords;

    std::size_t dim() const { return coords.size(); }
    /* evaluate all coordinates (throws on a pole) */
    std::vector<Cplx> point_at(const Cplx& t) const;
};

/* true when some pulled-back coordinate function is identically one
 * (the image lies in a deleted cube face; such cycles contribute zero) */
bool cubically_degenerate(const CurveCycle& c);

/*
 * The cube-style coordinate functions of the curve.  Fails when some
 * coordinate is identically one; batch callers should test
 * cubically_degenerate first and treat such curves as zero.
 */
CubicalCurve simplicial_to_cubical(const CurveCycle& c);

/* ------------------------------------------------------------------ */
/*  Admissibility                                                     */
/* ------------------------------------------------------------------ */

/*
 * True iff every point of the curve lying on a coordinate subspace of
 * codimension >= 2 (two or more vanishing coordinates, including at the
 * parameter value at infinity) has vanishing coordinate sum.  Checked
 * exactly through gcds of the component polynomials: for each pair the
 * squarefree part of gcd(F_i, F_j) must divide the coordinate sum.
 * Exactly these curves have a boundary contained in the open faces,
 * which is what iterating the boundary map requires.
 */
bool face_admissible(const CurveCycle& c);

/* ------------------------------------------------------------------ */
/*  The failure of the naive evaluation current                       */
/* ------------------------------------------------------------------ */

/*
 * The standard obstruction showing that integrating an evaluation
 * current defined without alternating-sum coordinates cannot descend to
 * cycle classes: a line inside the special hyperplane of 3-space (hence
 * the zero cycle there) that nonetheless appears as the 0th face of a
 * 2-plane in 4-space.  Both membership checks are exact.
 */
struct GoncharovCounterexample {
    CurveCycle curve;     /* the line [a-2 : t : 2-2t : t-a] */
    LinearCycle surface;  /* the 2-plane in 4-space lifting it */
    bool curve_inside_special_hyperplane;
    bool face_restriction_matches_curve;
};

/* Requires a non-real parameter (real values make the obstruction
 * degenerate and are rejected). */
GoncharovCounterexample goncharov_counterexample(const FieldElement& a);

/* Rows spanned by a degree-one curve's coefficient vectors: the line
 * through its image.  Fails unless the curve has degree one. */
LinearCycle linear_cycle_from_degree_one(const CurveCycle& c);

} // namespace reg

#pragma once

// Oriented membranes of rational functions on the projective line.
//
// For a nonconstant rational function f, the locus f^{-1}((-inf, 0)) is a
// union of smooth curves, one through every negative value level.  Away
// from critical values each connected component is an arc running from a
// pole of f (where f -> -inf) to a zero (where f -> 0-), so the oriented
// boundary of the whole membrane is the divisor of f: zeros minus poles.
//
// An Arc is one such component.  It is parametrized by the level
// r = -f(t) in (0, inf): point_for_ratio(r) is the unique point of the arc
// with f = -r.  Degree-one (Moebius) functions get the closed-form
// preimage; higher degrees (up to max_degree) are traced by continuation
// along a geometric level grid and later re-solved by warm-started Newton
// iteration, so evaluation stays accurate arbitrarily close to the ends.

#include <reg/poly.hpp>
#include <reg/quadrature.hpp>

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

namespace reg {

struct ArcEndpoint {
    Cplx location;            // meaningful only when !at_infinity
    bool at_infinity = false;
    int multiplicity = 1;     // order of the zero/pole the arc ends on
};

class Arc {
public:
    const RatFunc& function() const { return f_; }
    const ArcEndpoint& pole_end() const { return pole_; }
    const ArcEndpoint& zero_end() const { return zero_; }

    // Traversal orientation.  Canonically an arc runs pole -> zero; a
    // reversed arc runs zero -> pole and negates integrals.
    bool reversed() const { return reversed_; }
    Arc reverse() const;

    // The point with f(point) = -r, r in (0, inf); orientation-independent.
    Cplx point_for_ratio(const Real& r) const;
    // dt/dr along the arc at that level.
    Cplx ratio_velocity(const Real& r) const;
    std::pair<Cplx, Cplx> point_and_ratio_velocity(const Real& r) const;

    // Traversal parametrization on s in (0,1): s -> 0 is the start of the
    // arc (the pole end unless reversed).  Throws std::domain_error outside.
    Cplx point(const Real& s) const;
    Cplx velocity(const Real& s) const; // dt/ds in traversal orientation

    // Embedded evaluation of f and f' at an arbitrary chart point.
    Cplx value(const Cplx& t) const;
    Cplx derivative_value(const Cplx& t) const;

    // The continuation table: sample k sits at level sample_ratio(k), and
    // the levels increase geometrically with k.
    const std::vector<Cplx>& samples() const { return samples_; }
    Real sample_ratio(std::size_t k) const;
    std::size_t sample_count() const { return samples_.size(); }

private:
    friend std::vector<Arc> membrane_arcs(const RatFunc& f, int max_degree);

    Arc() = default;

    RatFunc f_;
    std::vector<Cplx> num_, den_;       // embedded coefficients, low-to-high
    std::vector<Cplx> dnum_, dden_;     // their derivatives
    bool mobius_ = false;
    bool reversed_ = false;
    ArcEndpoint pole_, zero_;
    std::vector<Cplx> samples_;          // index k <-> level 2^((k + k0_)/4)
    long k0_ = 0;

    Cplx solve_level(const Real& r) const; // Newton on num + r*den = 0
};

// All arcs of the membrane of f.  Throws std::invalid_argument when f is
// constant or its degree exceeds max_degree, and std::runtime_error when
// the membrane cannot be traced as disjoint smooth arcs in the affine
// chart (a branch collision from a negative critical value, or an arc
// through the point at infinity).
std::vector<Arc> membrane_arcs(const RatFunc& f, int max_degree = 3);

struct ArcCrossing {
    Cplx location;
    int sign; // orientation of the ordered tangent pair (first, second arc)
};

// Transverse interior crossings of two arcs, with the sign of the 2x2
// determinant of their traversal tangents at each crossing.  Throws
// std::domain_error when the arcs overlap or a crossing is too close to
// tangential to classify.
std::vector<ArcCrossing> arc_pair_intersections(const Arc& a, const Arc& b);

// Integrand for arc integrals: receives the point t and the exact level
// r = -f(t), which is far more accurate than recomputing distances to the
// arc ends from t itself.
using ArcIntegrand = std::function<Cplx(const Cplx& t, const Real& level)>;

// Integral of form_coeff(t) dt along the arc in traversal orientation,
// with endpoint-clustered nodes for logarithmic end singularities.
QuadResult integrate_arc(const ArcIntegrand& form_coeff, const Arc& arc,
                         const Real& tol);

// Same integral restricted to the traversal-parameter window [lo, hi],
// 0 <= lo < hi <= 1; integrate_arc is the lo = 0, hi = 1 case.  Used to
// split an arc integral where the integrand is discontinuous (e.g. at a
// crossing with another membrane).  Throws std::domain_error on a bad
// window.
QuadResult integrate_arc_between(const ArcIntegrand& form_coeff,
                                 const Arc& arc, const Real& lo,
                                 const Real& hi, const Real& tol);

} // namespace reg

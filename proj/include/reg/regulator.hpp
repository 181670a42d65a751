#pragma once
/*
 * Logarithmic regulator kernels on curves, and the Abel-Jacobi style
 * integrals they induce.
 *
 * The degree-n kernel attached to a tuple (z_1, ..., z_n) of rational
 * functions is a sum of n terms; term j carries the scalar prefactor
 * eps^{j-1} with eps = (-1)^{n-1} 2 pi i, the factor log(z_j), the wedge
 * of dlog(z_k) for k > j, and a restriction to the intersection of the
 * membranes of z_1, ..., z_{j-1}.  A membrane is the locus where a
 * function takes values in the negative reals, oriented from its pole to
 * its zero (see membranes.hpp).
 *
 * On a curve only two terms of the degree-3 kernel survive: the membrane
 * integral of log(z_2) dlog(z_3) over the membrane of z_1, and point
 * contributions at transverse crossings of the first two membranes.  The
 * crossing sign is the sign of the cross product of the pole-to-zero
 * tangents, in argument order (z_1 first);
 * arc_pair_intersections reports exactly this sign.
 *
 * Everything is normalized so that the curve value is
 *
 *     (1/2 pi i) * [integral]
 *         = int_{T_{z_1}} log(z_2) dlog(z_3)
 *           + 2 pi i * sum_{p in T_{z_1} cap T_{z_2}} sign(p) log(z_3(p)),
 *
 * intended for comparison modulo the lattice generated by (2 pi i)^2.
 */

#include <functional>
#include <vector>

#include "reg/cycles.hpp"
#include "reg/exact.hpp"
#include "reg/membranes.hpp"
#include "reg/numeric.hpp"
#include "reg/poly.hpp"
#include "reg/quadrature.hpp"

namespace reg {

/* ------------------------------------------------------------------ */
/* kernel description                                                  */

/* Term j (1-based) of the degree-n kernel for the tuple z.  Purely
 * descriptive: evaluation routines below assemble the surviving terms
 * directly. */
struct RegulatorTerm {
    int index = 1;                        /* j */
    RatFunc log_factor;                   /* z_j */
    std::vector<RatFunc> dlog_factors;    /* z_{j+1}, ..., z_n */
    std::vector<RatFunc> membrane_prefix; /* z_1, ..., z_{j-1} */
    Cplx prefactor;                       /* eps^{j-1} */
};

/* The n terms for a degree-n tuple; throws std::invalid_argument on an
 * empty tuple. */
std::vector<RegulatorTerm> regulator_terms(const std::vector<RatFunc>& z);

/* ------------------------------------------------------------------ */
/* lattice reduction                                                   */

/* A complex value reduced against one lattice generator c: value =
 * coefficient * c + residual with coefficient the nearest integer to the
 * component of value along c, so |Re(residual / c)| <= 1/2. */
struct LatticeResidue {
    Cplx value;
    Cplx generator;
    long long coefficient = 0;
    Cplx residual;
};

/* (2 pi i)^k, k >= 1. */
Cplx lattice_generator(int k);

/* Reduce value against the rank-one lattice Z * generator. */
LatticeResidue reduce_mod_lattice(const Cplx& value, const Cplx& generator);

/* ------------------------------------------------------------------ */
/* curve values of the degree-3 kernel                                 */

/* (1/2 pi i) * integral of the degree-3 kernel of (f, g, h) over the
 * curve:
 *   - the (2,0) first term restricts to zero on a curve and is dropped;
 *   - the middle term integrates log(g) dlog(h) over the membrane of f,
 *     split at crossings with the membrane of g where log(g) jumps;
 *   - each transverse crossing p of the two membranes contributes
 *     2 pi i * sign(p) * log(h(p)).
 * A constant f off the negative reals has an empty membrane (value 0); a
 * constant f on the negative reals has the whole curve as membrane and is
 * rejected (std::domain_error), as is a constant negative g (its membrane
 * would contain all of f's).  Non-transverse membrane configurations
 * propagate std::domain_error from the crossing search; integrals that
 * fail to converge (e.g. a dlog pole sitting on the membrane) raise
 * std::runtime_error.  tol <= 0 selects 10^(-working_digits/2). */
Cplx r3_curve_value(const RatFunc& f, const RatFunc& g, const RatFunc& h,
                    const Real& tol = Real(0));

/* ------------------------------------------------------------------ */
/* Abel-Jacobi values of curve cycles in P^3                           */

/* Value of the degree-3 simplicial kernel on a curve cycle in P^3 (the
 * tuple is cycles.pullback_simplex_functions), weighted by the cycle's
 * multiplicity and reduced mod Z * (2 pi i)^2.  A cubically degenerate
 * cycle (some pullback identically 1) contributes zero.  Throws
 * std::domain_error unless ambient_dim() == 3. */
LatticeResidue aj_simplicial_p3(const CurveCycle& c, const Real& tol = Real(0));

/* Multiplicity-weighted sum over several components, reduced once. */
LatticeResidue aj_simplicial_p3(const std::vector<CurveCycle>& cs,
                                const Real& tol = Real(0));

/* Same value computed from a parametrized tuple of coordinate functions
 * (dim 3).  Throws std::domain_error if some coordinate is identically 1
 * (degenerate tuple). */
LatticeResidue aj_cubical_p3(const CubicalCurve& c, const Real& tol = Real(0));

/* ------------------------------------------------------------------ */
/* lines in P^3                                                        */

/* A line t -> [a_0 t + b_0 : ... : a_3 t + b_3] is given as a 2x4 exact
 * matrix whose FIRST row holds the t-coefficients a_k and SECOND row the
 * constants b_k.  The integrand tuple is the chain of consecutive ratios
 * z_k = -(a_k t + b_k)/(a_{k-1} t + b_{k-1}), k = 1, 2, 3.  Both routines
 * require all six 2x2 minors |ij| = a_i b_j - a_j b_i to be nonzero
 * (std::domain_error otherwise: some z_k would degenerate).
 *
 * The quadrature route first moves the parameter chart so that neither
 * membrane of z_1, z_2 passes through t = infinity (a projective change
 * of parameter; the integral is invariant), then evaluates like
 * r3_curve_value, including crossing point terms.  It rejects (domain
 * error) configurations where a zero or pole of z_3 lies on the membrane
 * of z_1, where the middle integrand is non-integrable. */
Cplx s3_line_quadrature(const ExactMatrix& m, const Real& tol = Real(0));

/* Closed form built from the minors:
 *   -log(-|23|/|13|) log(q) - Li2(q) + Li2(1),  q = |12||03| / (|13||02|),
 * valid when the crossing set of the first two membranes is empty and the
 * dlog factor is regular on the membrane; throws std::domain_error when
 * that configuration check fails (use s3_line_closed_form_applies to
 * probe). */
Cplx s3_line_closed_form(const ExactMatrix& m);
bool s3_line_closed_form_applies(const ExactMatrix& m);

/* The chart actually used by the quadrature: a 2x4 matrix of the same
 * line whose z_1, z_2 membranes avoid t = infinity.  Exposed so callers
 * composing several line integrals can reuse the transformed matrices. */
ExactMatrix s3_line_good_chart(const ExactMatrix& m);

/* ------------------------------------------------------------------ */
/* pointwise forms                                                     */

/* Ratio of two affine-linear forms in n complex variables:
 * (c_0 + sum_j c_j x_j) / (d_0 + sum_j d_j x_j); num and den hold the
 * n + 1 coefficients [c_0, c_1, ..., c_n]. */
struct LinearFractional {
    std::vector<Cplx> num, den;

    Cplx operator()(const std::vector<Cplx>& x) const;
    /* complex gradient of log: (d/dx_j) log f at x, j = 1..n */
    std::vector<Cplx> dlog_gradient(const std::vector<Cplx>& x) const;
};

/* The coordinate x_j as a LinearFractional in n variables (1-based j). */
LinearFractional affine_coordinate(std::size_t n, std::size_t j);

/* The standard simplex coordinate tuple on affine n-space: entry j is
 * -(x_j + ... + x_n)/x_{j-1} with x_0 = 1. */
std::vector<LinearFractional> simplex_coordinate_tuple(std::size_t n);

/* Determinant of the n x n matrix of logarithmic partial derivatives
 * (d log f_i / d x_j) at the point; throws std::domain_error at a zero or
 * pole of some f_i.  For the simplex tuple this equals prod_j 1/x_j. */
Cplx wedge_dlog_det(const std::vector<LinearFractional>& funcs,
                    const std::vector<Cplx>& point);

/* ------------------------------------------------------------------ */
/* real regulator forms                                                */

/* One multiplicative argument: the product of the listed factors raised
 * to the listed integer exponents. */
struct FractionProduct {
    std::vector<LinearFractional> factors;
    std::vector<int> exponents; /* empty = all ones */
};

/* Families of the real (m-1)-forms built from the alternating kernel
 *   T_m(u_1,...,u_m) with u_i = -log|f_i|:
 *   - plain_tuple: arguments supplied explicitly as FractionProducts;
 *   - projective_coordinates: f_i = x_i (affine chart of P^n);
 *   - projective_coordinates_vanishing: f_j = (x_j + ... + x_n)/(-x_{j-1})
 *     with x_0 = 1; this variant restricts to zero on the hyperplane
 *     1 + x_1 + ... + x_n = 0;
 *   - cubical_coordinates: f_i = y_i (affine chart of (P^1)^n). */
enum class GoncharovKind {
    plain_tuple,
    projective_coordinates,
    projective_coordinates_vanishing,
    cubical_coordinates
};

/* Value of the (m-1)-form on the ordered real tangent frame (each frame
 * vector is a complex n-vector).  args is used only for plain_tuple (m =
 * args.size()); the coordinate kinds take m = point.size() and require
 * empty args.  frame.size() must be m - 1.  Throws std::domain_error at
 * zeros/poles of the arguments or on shape mismatches. */
Cplx goncharov_form_eval(GoncharovKind kind,
                         const std::vector<FractionProduct>& args,
                         const std::vector<Cplx>& point,
                         const std::vector<std::vector<Cplx>>& frame);

/* Density (with respect to dx dy in the parameter plane) of the pulled
 * back 2-form T_3(-log|f_1|, -log|f_2|, -log|f_3|) for one-variable
 * arguments: the value on the frame (gamma', i gamma') for the identity
 * chart gamma(t) = t.  Returns a reusable evaluator so the coefficient
 * embeddings are done once, not per sample point.  Requires exactly
 * three nonzero arguments. */
std::function<Cplx(const Cplx&)> t3_density(const std::vector<RatFunc>& f);

/* Integral over the whole parameter sphere of a 2-form given by its
 * density in the affine chart.  The sphere is split at a circle chosen
 * to clear the listed singular points: the inside is integrated in a
 * rescaled chart and the outside through t -> radius/u.  singular lists
 * the finite points where the density has integrable singularities; the
 * region decomposition routes tanh-sinh node clustering toward them.
 * max_level bounds the per-axis refinement of the iterated 2-d
 * quadratures. */
QuadResult integrate_density_p1(const std::function<Cplx(const Cplx&)>& density,
                                const std::vector<Cplx>& singular,
                                const Real& tol, int max_level = 8);

/* ------------------------------------------------------------------ */
/* parameter chart changes                                             */

/* f((al*s + be)/(ga*s + de)) as a rational function of s; throws
 * std::invalid_argument when al*de - be*ga = 0. */
RatFunc compose_mobius(const RatFunc& f, const FieldElement& al,
                       const FieldElement& be, const FieldElement& ga,
                       const FieldElement& de);

} // namespace reg

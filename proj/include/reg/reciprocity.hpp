#pragma once
/*
 * Residue laws for linear subspaces of projective space cut by the
 * coordinate hyperplanes.
 *
 * The degree-one story is exact: the tame symbol of a pair of rational
 * functions on the projective line is an exact field element at every
 * zero or pole, and the product over all of them is 1.  One dimension up,
 * the alternating sum of line integrals of the degree-3 kernel over the
 * hyperplane sections of a plane in P^4 lands in the lattice generated by
 * (2 pi i)^2 (law A); the projective-dual sum over coordinate deletions
 * of a line in P^4 needs a pointwise correction term built from a
 * half-integer log level before it lands in the half lattice (law B).
 *
 * The five line integrals inside either law evaluate concurrently; the
 * alternating sum is always taken in index order, so results are
 * deterministic.  Degenerate inputs (vanishing minors, ranks off, membrane
 * collisions in the underlying line integrals) raise std::domain_error or
 * propagate std::runtime_error from the quadrature layer.
 */

#include "reg/exact.hpp"
#include "reg/numeric.hpp"
#include "reg/poly.hpp"
#include "reg/regulator.hpp"

#include <vector>

namespace reg {

/* ------------------------------------------------------------------ */
/* tame symbols on the projective line                                 */

/* Value of a tame symbol at one point: an exact, nonzero field element. */
struct TameValue {
    FieldElement value;
};

/* Points of P^1 are 2-coordinate ProjPoints [X0 : X1] with affine
 * location t = X1 / X0; [0 : 1] is the point at infinity. */

/* The exact limit value at p of
 *
 *     (-1)^(m n) f^n / g^m,   m = ord_p(f), n = ord_p(g),
 *
 * with orders positive at zeros and negative at poles.  Both divisors
 * must split over the coefficient field: every root of every numerator
 * and denominator has to be reconstructible as an exact field element
 * (std::domain_error otherwise, as for the zero function).  A point that
 * is neither a zero nor a pole of either function gives 1. */
TameValue tame_symbol(const RatFunc& f, const RatFunc& g, const ProjPoint& p);

/* Product of tame_symbol(f, g, p) over every zero and pole p of f and g,
 * the point at infinity included.  The product is always exactly 1;
 * computing it exercises the factorizations end to end. */
TameValue weil_product(const RatFunc& f, const RatFunc& g);

/* ------------------------------------------------------------------ */
/* additive log cocycle                                                 */

/* The integer m with plog(x) - plog(y) + plog(y/x) = 2 pi i m; always in
 * {-1, 0, 1}.  x and y must be nonzero (plog throws). */
int log_cocycle_level(const Cplx& x, const Cplx& y);

/* ------------------------------------------------------------------ */
/* pointwise correction values on P^3                                  */

/* Level and correction value at a point of P^3.  For coordinates
 * X0, ..., X3 the alternating log sum
 *
 *     log(-X2/X1) - log(-X2/X0) + log(-X1/X0)
 *
 * always lands on an odd multiple of pi i; the level is that multiple
 * (normally +-1) and the value is  pi i * level * plog(-X3/X2). */
struct LevelValue {
    int level = 0;
    Cplx value;
};

/* Throws std::domain_error when one of the first three coordinates
 * vanishes or the measured level is not within 1e-10 of +-1 (a
 * degenerate configuration); X3 = 0 raises through plog. */
LevelValue s_alt0_and_xi0(const ProjPoint& p);

/* Alternating sum over j = 0..4 of the correction value at the five
 * points y_j whose homogeneous coordinates are the 2x2 minors
 * (|j0| : ... omit j ... : |j4|) of a 2x5 matrix (first row holds the
 * parameter coefficients, second row the constants; |ik| denotes
 * a_i b_k - a_k b_i).  Changes sign under the column permutation
 * swapping 0<->4 and 1<->3.  Requires all ten minors nonzero
 * (std::domain_error). */
Cplx k_correction(const ExactMatrix& m);

/* ------------------------------------------------------------------ */
/* residue laws                                                        */

/* The five hyperplane sections of a plane in P^4 presented as the row
 * space of a 3x5 matrix of rank 3: entry j spans the intersection with
 * {X_j = 0} as a 2x4 matrix in the remaining coordinates (column j,
 * identically zero there, is deleted).  Throws std::domain_error when
 * the matrix has the wrong shape or rank, or when the plane lies inside
 * a coordinate hyperplane. */
std::vector<ExactMatrix> plane_sections(const ExactMatrix& plane);

/* Alternating residue of a linear cycle against the coordinate
 * hyperplanes.
 *
 * For a 3x5 matrix (a plane in P^4) the value is the alternating sum
 * over j of the line integrals of the degree-3 kernel over the sections
 * plane_sections(m)[j], reduced against the lattice generated by
 * (2 pi i)^2; the residual is a lattice point up to quadrature error.
 * Each line integral uses the closed form when its configuration check
 * passes and tanh-sinh quadrature otherwise; the five terms run
 * concurrently.
 *
 * For a 2x3 matrix (a line in P^2) the value is the alternating sum of
 * the single-log kernel over the three coordinate points, which equals
 * plog(x) - plog(y) + plog(y/x) for x = -|02|/|01|, y = |12|/|01|; it is
 * reduced against 2 pi i and the residual vanishes to working accuracy.
 *
 * Other shapes, rank defects, and vanishing needed minors raise
 * std::domain_error. */
LatticeResidue law_a_residue(const ExactMatrix& m, const Real& tol = Real(0));

/* Alternating residue of a line in P^4 (2x5 matrix, rows as in
 * k_correction) against the coordinate deletions: the alternating sum
 * over j of the line integrals of the degree-3 kernel over the five
 * 2x4 matrices obtained by deleting column j, plus the correction
 * k_correction(m), reduced against the lattice generated by 2 pi^2
 * (half the law A lattice).  All ten minors must be nonzero
 * (std::domain_error).  The five integrals run concurrently. */
LatticeResidue law_b_residue(const ExactMatrix& m, const Real& tol = Real(0));

} // namespace reg

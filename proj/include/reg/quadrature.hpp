#pragma once
/*
 * Adaptive tanh-sinh (double-exponential) quadrature over real segments,
 * straight complex segments, and iterated 2-dimensional regions.
 *
 * The node u_j = j*h is mapped through x = tanh((pi/2) sinh u); levels halve
 * h and reuse all previous evaluations.  Endpoint distances are computed
 * directly from the complementary form 1 - x = 2/(exp(2s)+1), s = (pi/2)
 * sinh u, and handed to the integrand, so integrands with logarithmic
 * endpoint singularities can be evaluated without catastrophic cancellation
 * arbitrarily close to the ends.  The reported error estimate is the last
 * inter-level difference, which for double-exponential convergence is a
 * conservative bound on the true error.
 */

#include <functional>
#include <vector>

#include "reg/numeric.hpp"

namespace reg {

struct QuadResult {
    Cplx value;
    Real error;          /* conservative error estimate */
    long evaluations = 0;
    int levels = 0;      /* finest level used */
    bool converged = false;

    QuadResult& operator+=(const QuadResult& o);
};

/* f(t, t - a, b - t): the two distances are exact to working precision even
 * when t is within 10^-100 of an endpoint; use them for singular factors. */
using SegIntegrand =
    std::function<Cplx(const Real& t, const Real& dm, const Real& dp)>;

/* f(z, z - a, b - z) along the straight segment from a to b. */
using PathIntegrand =
    std::function<Cplx(const Cplx& z, const Cplx& zma, const Cplx& bmz)>;

QuadResult quad(const SegIntegrand& f, const Real& a, const Real& b,
                const Real& tol, int max_level = 11);

QuadResult quad_segment(const PathIntegrand& f, const Cplx& a, const Cplx& b,
                        const Real& tol, int max_level = 11);

/* Integral along the polyline a_0 -> a_1 -> ... -> a_k (sum of segments). */
QuadResult quad_polyline(const PathIntegrand& f, const std::vector<Cplx>& pts,
                         const Real& tol, int max_level = 11);

/* Iterated double integral  int_{y0}^{y1} dy int_{xlo(y)}^{xhi(y)} dx f.
 * The integrand receives both coordinates and all four endpoint distances
 * (x - xlo, xhi - x, y - y0, y1 - y). */
struct Region2D {
    Real y0, y1;
    std::function<Real(const Real&)> x_lo, x_hi;
};

using RegionIntegrand = std::function<Cplx(
    const Real& x, const Real& y, const Real& dxm, const Real& dxp,
    const Real& dym, const Real& dyp)>;

QuadResult quad_region2d(const RegionIntegrand& f, const Region2D& region,
                         const Real& tol, int outer_max_level = 9,
                         int inner_max_level = 10);

} // namespace reg

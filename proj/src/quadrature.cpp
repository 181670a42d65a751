#include "reg/quadrature.hpp"

#include <map>
#include <memory>

namespace reg {

namespace {

using boost::multiprecision::exp;
using boost::multiprecision::log;
using boost::multiprecision::sinh;
using boost::multiprecision::cosh;
using boost::multiprecision::abs;

/* One positive abscissa: distance to +1 and weight (without the step h). */
struct Node {
    Real d; /* 1 - x,  0 < d <= 1 */
    Real w; /* (pi/2) cosh(u) / cosh^2((pi/2) sinh(u)) */
};

/* Node tables per level, built once per working precision per thread. */
struct Tables {
    unsigned digits = 0;
    int max_level = 0;
    /* level[k] holds the nodes new at step h = 2^-k (odd multiples of h;
     * level 0 holds u = h, 2h, 3h, ... plus the u = 0 node separately). */
    std::vector<std::vector<Node>> level;
    Real w0; /* weight at u = 0 (x = 0, d = 1) */
};

thread_local std::map<unsigned, std::shared_ptr<Tables>> t_tables;

Node make_node(const Real& u, const Real& half_pi) {
    Node n;
    Real s = half_pi * sinh(u);
    Real e2s = exp(2 * s);
    n.d = 2 / (e2s + 1);
    Real ch = cosh(s);
    n.w = half_pi * cosh(u) / (ch * ch);
    return n;
}

/* Shared ownership: a nested quadrature at a deeper max_level replaces
 * the cache entry for this precision, and the caller's table must stay
 * alive through its own run. */
std::shared_ptr<const Tables> tables_for(unsigned digits, int max_level) {
    auto it = t_tables.find(digits);
    if (it != t_tables.end() && it->second->max_level >= max_level)
        return it->second;

    auto tb = std::make_shared<Tables>();
    tb->digits = digits;
    tb->max_level = max_level;
    Real half_pi = const_pi() / 2;
    tb->w0 = half_pi;
    Real cut = pow(Real(10), -static_cast<long>(digits) - 15);
    tb->level.resize(max_level + 1);
    for (int k = 0; k <= max_level; ++k) {
        Real h = pow(Real(2), -k);
        long j = 1;
        long stride = (k == 0) ? 1 : 2;
        if (k > 0) j = 1; /* odd multiples only */
        for (;; j += stride) {
            Real u = h * j;
            Node n = make_node(u, half_pi);
            /* allow room for log-singular integrands: weight times |log d| */
            if (n.w * (1 + abs(log(n.d))) < cut) break;
            tb->level[k].push_back(n);
        }
    }
    t_tables[digits] = tb;
    return tb;
}

/* Generic driver: g(sign, d) evaluates the integrand at the node on the
 * given side (sign = -1: x = -1 + d, +1: x = 1 - d, 0: x = 0, d = 1). */
QuadResult drive(const std::function<Cplx(int, const Real&)>& g,
                 const Real& tol, int max_level) {
    const std::shared_ptr<const Tables> tbp =
        tables_for(working_digits(), max_level);
    const Tables& tb = *tbp;
    QuadResult res;
    Real floor_eps = pow(Real(10), -static_cast<long>(working_digits()) + 3);
    Real tol_eff = tol;
    if (tol_eff < floor_eps) tol_eff = floor_eps;

    Cplx sum = g(0, Real(1)) * tb.w0;
    res.evaluations = 1;
    Cplx prev_value;
    Real prev_diff(-1);
    for (int k = 0; k <= max_level; ++k) {
        for (const Node& n : tb.level[k]) {
            sum += (g(+1, n.d) + g(-1, n.d)) * n.w;
            res.evaluations += 2;
        }
        Real h = pow(Real(2), -k);
        Cplx value = sum * h;
        res.levels = k;
        if (k >= 2) {
            Real diff = abs(value - prev_value);
            Real scale = abs(value);
            if (scale < 1) scale = 1;
            if (diff <= tol_eff * scale) {
                res.value = value;
                res.error = diff;
                res.converged = true;
                return res;
            }
            /* roundoff floor: differences stopped contracting */
            if (prev_diff >= 0 && diff > 0 && prev_diff > 0 &&
                diff >= prev_diff && diff <= floor_eps * scale * 100) {
                res.value = value;
                res.error = diff;
                res.converged = true;
                return res;
            }
            prev_diff = diff;
        }
        prev_value = value;
    }
    res.value = prev_value;
    res.error = prev_diff < 0 ? abs(prev_value) : prev_diff;
    res.converged = false;
    return res;
}

} // namespace

QuadResult& QuadResult::operator+=(const QuadResult& o) {
    value += o.value;
    error += o.error;
    evaluations += o.evaluations;
    if (o.levels > levels) levels = o.levels;
    converged = converged && o.converged;
    return *this;
}

QuadResult quad(const SegIntegrand& f, const Real& a, const Real& b,
                const Real& tol, int max_level) {
    Real scale = (b - a) / 2;
    Real mid = (a + b) / 2;
    auto g = [&](int sign, const Real& d) -> Cplx {
        if (sign == 0) return f(mid, scale, scale) * scale;
        Real dm, dp;
        Real t;
        if (sign > 0) {
            dp = scale * d;
            dm = scale * (2 - d);
            t = b - dp;
        } else {
            dm = scale * d;
            dp = scale * (2 - d);
            t = a + dm;
        }
        return f(t, dm, dp) * scale;
    };
    QuadResult r = drive(g, tol, max_level);
    return r;
}

QuadResult quad_segment(const PathIntegrand& f, const Cplx& a, const Cplx& b,
                        const Real& tol, int max_level) {
    Cplx scale = (b - a) / Real(2);
    Cplx mid = (a + b) / Real(2);
    auto g = [&](int sign, const Real& d) -> Cplx {
        if (sign == 0) return f(mid, scale, scale) * scale;
        Cplx near_ = scale * d;       /* displacement from the nearer end */
        Cplx far_ = scale * (2 - d);
        if (sign > 0) return f(b - near_, far_, near_) * scale;
        return f(a + near_, near_, far_) * scale;
    };
    return drive(g, tol, max_level);
}

QuadResult quad_polyline(const PathIntegrand& f, const std::vector<Cplx>& pts,
                         const Real& tol, int max_level) {
    if (pts.size() < 2) throw std::invalid_argument("polyline needs at least two points");
    QuadResult total;
    total.converged = true;
    Real tol_seg = tol / static_cast<long>(pts.size() - 1);
    for (size_t i = 0; i + 1 < pts.size(); ++i)
        total += quad_segment(f, pts[i], pts[i + 1], tol_seg, max_level);
    return total;
}

QuadResult quad_region2d(const RegionIntegrand& f, const Region2D& region,
                         const Real& tol, int outer_max_level,
                         int inner_max_level) {
    long inner_evals = 0;
    Real tol_inner = tol / 16;
    bool inner_all_converged = true;
    auto outer = [&](const Real& y, const Real& dym, const Real& dyp) -> Cplx {
        Real xlo = region.x_lo(y);
        Real xhi = region.x_hi(y);
        auto inner = [&](const Real& x, const Real& dxm, const Real& dxp) {
            return f(x, y, dxm, dxp, dym, dyp);
        };
        QuadResult r = quad(inner, xlo, xhi, tol_inner, inner_max_level);
        inner_evals += r.evaluations;
        if (!r.converged) inner_all_converged = false;
        return r.value;
    };
    QuadResult res = quad(outer, region.y0, region.y1, tol, outer_max_level);
    res.evaluations += inner_evals;
    res.converged = res.converged && inner_all_converged;
    return res;
}

} // namespace reg

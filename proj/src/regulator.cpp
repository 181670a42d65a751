#include "reg/regulator.hpp"

#include "reg/specfun.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace reg {

namespace {

Real default_tol() { return sqrt(working_eps()); }

Real pick_tol(const Real& tol) { return tol > 0 ? tol : default_tol(); }

/* Numeric negativity test for quantities routed through embed(): the
 * working precision far exceeds the slack, so a genuinely non-real
 * algebraic number is never misclassified. */
bool negative_real(const Cplx& v) {
    const Real slack = sqrt(working_eps()) * (Real(1) + abs(v.re));
    return v.re < 0 && abs(v.im) <= slack;
}

/* Rational function with its coefficients embedded once, for repeated
 * numeric evaluation. */
struct EmbeddedRat {
    std::vector<Cplx> num, den;

    explicit EmbeddedRat(const RatFunc& f)
        : num(embedded_coeffs(f.num())), den(embedded_coeffs(f.den())) {}

    static Cplx horner(const std::vector<Cplx>& c, const Cplx& t) {
        if (c.empty()) return Cplx(0);
        Cplx acc = c.back();
        for (std::size_t k = c.size() - 1; k-- > 0;) acc = acc * t + c[k];
        return acc;
    }

    Cplx operator()(const Cplx& t) const {
        return horner(num, t) / horner(den, t);
    }
};

Cplx constant_value(const RatFunc& f) {
    return embed(f.num().coeff(0)) / embed(f.den().coeff(0));
}

constexpr int kMaxMembraneDegree = 6;

/* Robust evaluator for plog(g(t)) on an arc of the first membrane; the
 * second argument is the exact level r = -f(t), which stays meaningful
 * when t itself has rounded onto an arc endpoint. */
using GLogEval = std::function<Cplx(const Cplx& t, const Real& level)>;

/* Shared engine behind r3_curve_value: assumes tol is already resolved.
 * When g has a zero or pole exactly at an endpoint of the first membrane
 * the caller must pass a g_log evaluator that absorbs the singular factor
 * into the level (t alone cannot resolve distances below the working
 * precision there). */
Cplx r3_core(const RatFunc& f, const RatFunc& g, const RatFunc& h,
             const Real& tol, const GLogEval& g_log = GLogEval()) {
    if (f.is_zero() || g.is_zero() || h.is_zero())
        throw std::domain_error("r3_curve_value: identically zero argument");

    if (f.is_constant()) {
        if (negative_real(constant_value(f)))
            throw std::domain_error(
                "r3_curve_value: constant negative first argument (its "
                "membrane is the whole curve)");
        return Cplx(0);
    }
    const bool g_const = g.is_constant();
    if (g_const && negative_real(constant_value(g)))
        throw std::domain_error(
            "r3_curve_value: constant negative second argument (its membrane "
            "contains the whole first membrane)");

    const std::vector<Arc> f_arcs = membrane_arcs(f, kMaxMembraneDegree);
    std::vector<Arc> g_arcs;
    if (!g_const) g_arcs = membrane_arcs(g, kMaxMembraneDegree);

    const EmbeddedRat ge(g), he(h);
    const EmbeddedRat hde(h.derivative() / h);

    const ArcIntegrand form = [&ge, &hde,
                               &g_log](const Cplx& t, const Real& r) -> Cplx {
        const Cplx lg = g_log ? g_log(t, r) : plog(ge(t));
        return lg * hde(t);
    };

    const Real merge_gap = sqrt(working_eps());
    Cplx total(0);
    for (const Arc& fa : f_arcs) {
        /* crossings with the second membrane: point terms, and split
         * levels for the arc integral (log(g) jumps across them) */
        std::vector<Real> cuts;
        for (const Arc& ga : g_arcs) {
            for (const ArcCrossing& x : arc_pair_intersections(fa, ga)) {
                total += two_pi_i() * Real(x.sign) * plog(he(x.location));
                const Real r = -fa.value(x.location).re;
                if (!(r > 0)) continue;
                const Real s =
                    fa.reversed() ? r / (1 + r) : Real(1) / (1 + r);
                if (s > 0 && s < 1) cuts.push_back(s);
            }
        }
        std::sort(cuts.begin(), cuts.end());
        std::vector<Real> windows{Real(0)};
        for (const Real& s : cuts)
            if (s - windows.back() > merge_gap) windows.push_back(s);
        if (Real(1) - windows.back() > merge_gap)
            windows.push_back(Real(1));
        else
            windows.back() = Real(1);
        if (windows.size() < 2) continue;

        for (std::size_t k = 0; k + 1 < windows.size(); ++k) {
            const QuadResult qr =
                integrate_arc_between(form, fa, windows[k], windows[k + 1], tol);
            if (!qr.converged)
                throw std::runtime_error(
                    "r3_curve_value: membrane integral failed to converge");
            total += qr.value;
        }
    }
    return total;
}

std::vector<RatFunc> mobius_tuple(const std::vector<RatFunc>& z,
                                  const FieldElement& q) {
    std::vector<RatFunc> w;
    w.reserve(z.size());
    const FieldElement one(1L), zero(0L);
    for (const RatFunc& zi : z) w.push_back(compose_mobius(zi, q, one, one, zero));
    return w;
}

/* Evaluate the degree-3 curve value, moving the parameter chart when the
 * membranes of the first two functions cannot be traced as-is (an arc
 * through t = infinity, or a branch collision caused by the chart). */
Cplx r3_any_chart(const std::vector<RatFunc>& z, const Real& tol) {
    try {
        return r3_curve_value(z[0], z[1], z[2], tol);
    } catch (const std::runtime_error&) {
        /* retry below in a different chart */
    }
    static const std::pair<int, int> cand[] = {
        {2, 1},  {-1, 1}, {1, 2},  {3, 1},  {-3, 1},  {1, 3},  {5, 1},
        {-5, 1}, {2, 5},  {-2, 5}, {7, 1},  {-7, 1},  {3, 7},  {-3, 7},
        {9, 2},  {-9, 2}, {11, 3}, {-11, 3}, {13, 4}, {-13, 4}};
    for (const auto& pq : cand) {
        const FieldElement q(Rational(pq.first, pq.second));
        bool usable = true;
        for (std::size_t k = 0; k < 2 && usable; ++k) {
            if (z[k].is_constant()) continue;
            try {
                const FieldElement v = z[k](q);
                if (v.is_zero() || negative_real(embed(v))) usable = false;
            } catch (const std::exception&) {
                usable = false; /* q is a pole of z_k */
            }
        }
        if (!usable) continue;
        try {
            const std::vector<RatFunc> w = mobius_tuple(z, q);
            return r3_curve_value(w[0], w[1], w[2], tol);
        } catch (const std::runtime_error&) {
            continue;
        }
    }
    throw std::runtime_error(
        "r3_curve_value: no parameter chart traced the membranes");
}

/* Gaussian elimination with partial pivoting; the matrix is small. */
Cplx small_det(std::vector<std::vector<Cplx>> a) {
    const std::size_t n = a.size();
    Cplx det(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        Real best = abs(a[c][c]);
        for (std::size_t r = c + 1; r < n; ++r) {
            const Real v = abs(a[r][c]);
            if (v > best) {
                best = v;
                p = r;
            }
        }
        if (best.is_zero()) return Cplx(0);
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det = det * a[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            const Cplx fac = a[r][c] / a[c][c];
            for (std::size_t k = c + 1; k < n; ++k) a[r][k] -= fac * a[c][k];
        }
    }
    return det;
}

int permutation_sign(const std::vector<std::size_t>& p) {
    int s = 1;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) s = -s;
    return s;
}

/* The alternating kernel T_m evaluated from the raw ingredients: u[i] is
 * the i-th real potential and act[i][k] the action of its (1,0)
 * differential on the k-th frame vector (the (0,1) action is the
 * conjugate, since the potentials are real). */
Cplx tm_from_actions(const std::vector<Real>& u,
                     const std::vector<std::vector<Cplx>>& act) {
    const std::size_t m = u.size();
    if (m == 0) return Cplx(0);
    std::vector<std::size_t> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    Cplx total(0);
    do {
        const int sgn = permutation_sign(perm);
        Cplx isum(0);
        for (std::size_t i = 1; i <= m; ++i) {
            std::vector<std::vector<Cplx>> rows;
            rows.reserve(m - 1);
            for (std::size_t l = 1; l < m; ++l) {
                const std::vector<Cplx>& src = act[perm[l]];
                if (l < i) {
                    rows.push_back(src);
                } else {
                    std::vector<Cplx> cr;
                    cr.reserve(src.size());
                    for (const Cplx& z : src) cr.push_back(conj(z));
                    rows.push_back(std::move(cr));
                }
            }
            const Cplx d = small_det(std::move(rows));
            if (i % 2 == 0)
                isum += d;
            else
                isum -= d;
        }
        total += Real(sgn) * (u[perm[0]] * isum);
    } while (std::next_permutation(perm.begin(), perm.end()));
    Real fact(1);
    for (std::size_t k = 2; k <= m; ++k) fact *= Real(static_cast<long>(k));
    const Real scale = pow(Real(-2), static_cast<int>(m)) / (2 * fact);
    return scale * total;
}

} // namespace

/* ------------------------------------------------------------------ */
/* kernel description                                                  */

std::vector<RegulatorTerm> regulator_terms(const std::vector<RatFunc>& z) {
    if (z.empty()) throw std::invalid_argument("regulator_terms: empty tuple");
    const std::size_t n = z.size();
    const Cplx eps = (n % 2 == 1) ? two_pi_i() : -two_pi_i();
    std::vector<RegulatorTerm> terms(n);
    Cplx pre(1);
    for (std::size_t j = 1; j <= n; ++j) {
        RegulatorTerm& t = terms[j - 1];
        t.index = static_cast<int>(j);
        t.log_factor = z[j - 1];
        t.dlog_factors.assign(z.begin() + static_cast<long>(j), z.end());
        t.membrane_prefix.assign(z.begin(), z.begin() + static_cast<long>(j - 1));
        t.prefactor = pre;
        pre = pre * eps;
    }
    return terms;
}

/* ------------------------------------------------------------------ */
/* lattice reduction                                                   */

Cplx lattice_generator(int k) {
    if (k < 1)
        throw std::invalid_argument("lattice_generator: order must be >= 1");
    Cplx g(1);
    for (int i = 0; i < k; ++i) g = g * two_pi_i();
    return g;
}

LatticeResidue reduce_mod_lattice(const Cplx& value, const Cplx& generator) {
    if (generator.is_zero())
        throw std::invalid_argument("reduce_mod_lattice: zero generator");
    LatticeResidue out;
    out.value = value;
    out.generator = generator;
    const Cplx q = value / generator;
    const Real n = floor(q.re + Real(1) / 2);
    if (abs(n) > Real("9.0e18"))
        throw std::domain_error("reduce_mod_lattice: coefficient overflow");
    out.coefficient = n.convert_to<long long>();
    out.residual = value - n * generator;
    return out;
}

/* ------------------------------------------------------------------ */
/* curve values of the degree-3 kernel                                 */

Cplx r3_curve_value(const RatFunc& f, const RatFunc& g, const RatFunc& h,
                    const Real& tol) {
    return r3_core(f, g, h, pick_tol(tol));
}

/* ------------------------------------------------------------------ */
/* Abel-Jacobi values of curve cycles in P^3                           */

LatticeResidue aj_simplicial_p3(const CurveCycle& c, const Real& tol) {
    return aj_simplicial_p3(std::vector<CurveCycle>{c}, tol);
}

LatticeResidue aj_simplicial_p3(const std::vector<CurveCycle>& cs,
                                const Real& tol) {
    const Real t = pick_tol(tol);
    Cplx total(0);
    for (const CurveCycle& c : cs) {
        if (c.ambient_dim() != 3)
            throw std::domain_error("aj_simplicial_p3: cycle must live in P^3");
        if (cubically_degenerate(c)) continue;
        const std::vector<RatFunc> z = pullback_simplex_functions(c);
        const Real mult = embed(FieldElement(c.multiplicity())).re;
        total += mult * r3_any_chart(z, t);
    }
    return reduce_mod_lattice(total, lattice_generator(2));
}

LatticeResidue aj_cubical_p3(const CubicalCurve& c, const Real& tol) {
    if (c.dim() != 3)
        throw std::domain_error(
            "aj_cubical_p3: curve must have three coordinates");
    bool all_const = true;
    for (const RatFunc& z : c.coords) {
        if (!z.is_zero() && z.num() == z.den())
            throw std::domain_error(
                "aj_cubical_p3: a coordinate is identically one");
        if (!z.is_constant()) all_const = false;
    }
    if (all_const) return reduce_mod_lattice(Cplx(0), lattice_generator(2));
    return reduce_mod_lattice(r3_any_chart(c.coords, pick_tol(tol)),
                              lattice_generator(2));
}

/* ------------------------------------------------------------------ */
/* lines in P^3                                                        */

namespace {

void check_line_shape(const ExactMatrix& m) {
    if (m.rows() != 2 || m.cols() != 4)
        throw std::domain_error(
            "line matrices must be 2 x 4 (t-coefficient row, constant row)");
    for (std::size_t i = 0; i + 1 < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j)
            if (minor(m, i, j).is_zero())
                throw std::domain_error(
                    "degenerate line: a 2 x 2 minor vanishes, so some ratio "
                    "z_k loses its zero or pole");
}

std::vector<RatFunc> line_tuple(const ExactMatrix& m) {
    std::vector<RatFunc> z;
    z.reserve(3);
    for (std::size_t k = 1; k <= 3; ++k) {
        Poly num({-m.at(1, k), -m.at(0, k)});
        Poly den({m.at(1, k - 1), m.at(0, k - 1)});
        z.emplace_back(std::move(num), std::move(den));
    }
    return z;
}

/* True when neither membrane of z_1, z_2 passes through t = infinity of
 * this chart.  A zero or pole of z_k at infinity only parks an arc
 * endpoint there (a ray), which the tracer supports. */
bool chart_avoids_membranes(const ExactMatrix& m) {
    for (std::size_t k = 1; k <= 2; ++k) {
        const FieldElement& top = m.at(0, k);
        const FieldElement& bot = m.at(0, k - 1);
        if (bot.is_zero() || top.is_zero()) continue;
        if (negative_real(embed(-(top / bot)))) return false;
    }
    return true;
}

/* True when the point t = q lies strictly off the closures of both
 * membranes, so it can serve as the new point at infinity. */
bool chart_point_clean(const ExactMatrix& m, const Rational& q) {
    const FieldElement qe(q);
    for (std::size_t k = 1; k <= 2; ++k) {
        const FieldElement num = m.at(0, k) * qe + m.at(1, k);
        const FieldElement den = m.at(0, k - 1) * qe + m.at(1, k - 1);
        if (num.is_zero() || den.is_zero()) return false;
        if (negative_real(embed(-(num / den)))) return false;
    }
    return true;
}

/* Reparametrize by t = q + 1/s.  All 2x2 minors change by the uniform
 * factor -1, so every minor ratio (and the closed form) is unchanged. */
ExactMatrix apply_chart(const ExactMatrix& m, const Rational& q) {
    ExactMatrix out(2, 4);
    const FieldElement qe(q);
    for (std::size_t j = 0; j < 4; ++j) {
        out.at(0, j) = m.at(0, j) * qe + m.at(1, j);
        out.at(1, j) = m.at(0, j);
    }
    return out;
}

ExactMatrix good_chart_impl(const ExactMatrix& m) {
    check_line_shape(m);
    if (chart_avoids_membranes(m)) return m;
    static const std::pair<int, int> cand[] = {
        {2, 1},  {-1, 1}, {1, 2},  {3, 1},  {-3, 1},  {1, 3},  {5, 1},
        {-5, 1}, {2, 5},  {-2, 5}, {7, 1},  {-7, 1},  {3, 7},  {-3, 7},
        {9, 2},  {-9, 2}, {11, 3}, {-11, 3}, {13, 4}, {-13, 4}};
    for (const auto& pq : cand) {
        const Rational q(pq.first, pq.second);
        if (chart_point_clean(m, q)) return apply_chart(m, q);
    }
    throw std::runtime_error(
        "s3_line_good_chart: every candidate chart met a membrane");
}

/* The dlog factor z_3 must keep its zeros and poles off the closure of
 * the membrane of z_1, else the middle integrand is non-integrable. */
void check_dlog_regular(const ExactMatrix& m) {
    for (std::size_t k = 2; k <= 3; ++k) {
        const FieldElement& a = m.at(0, k);
        const FieldElement& b = m.at(1, k);
        if (a.is_zero()) {
            /* the root sits at t = infinity of this chart */
            const FieldElement& a1 = m.at(0, 1);
            const FieldElement& a0 = m.at(0, 0);
            if (a0.is_zero() || a1.is_zero() ||
                negative_real(embed(-(a1 / a0))))
                throw std::domain_error(
                    "s3_line: a zero or pole of the dlog factor meets the "
                    "closure of the first membrane");
            continue;
        }
        const FieldElement rho = -(b / a);
        const FieldElement v = -((m.at(0, 1) * rho + m.at(1, 1)) /
                                 (m.at(0, 0) * rho + m.at(1, 0)));
        if (negative_real(embed(v)))
            throw std::domain_error(
                "s3_line: a zero or pole of the dlog factor sits on the "
                "first membrane");
    }
}

std::size_t crossing_count(const ExactMatrix& good) {
    const std::vector<RatFunc> z = line_tuple(good);
    const std::vector<Arc> a1 = membrane_arcs(z[0], kMaxMembraneDegree);
    const std::vector<Arc> a2 = membrane_arcs(z[1], kMaxMembraneDegree);
    std::size_t n = 0;
    for (const Arc& a : a1)
        for (const Arc& b : a2) n += arc_pair_intersections(a, b).size();
    return n;
}

} // namespace

ExactMatrix s3_line_good_chart(const ExactMatrix& m) {
    return good_chart_impl(m);
}

Cplx s3_line_quadrature(const ExactMatrix& m, const Real& tol) {
    const ExactMatrix g = good_chart_impl(m);
    check_dlog_regular(g);
    const std::vector<RatFunc> z = line_tuple(g);
    /* z_2 has its pole exactly where z_1 vanishes (they share the linear
     * factor a_1 t + b_1), i.e. at the level-zero end of the membrane.
     * There z_2 = w / r with r = -z_1(t) the exact level and
     *   w = -(a_2 t + b_2) / (a_0 t + b_0)
     * regular, so plog(z_2) = plog(w) - log r (exactly: r > 0).  Use that
     * form on the inner half of the arc; near the pole end (large r) z_2
     * itself is regular and the direct form is the stable one. */
    const EmbeddedRat ge(z[1]);
    const EmbeddedRat we(RatFunc(Poly({-g.at(1, 2), -g.at(0, 2)}),
                                 Poly({g.at(1, 0), g.at(0, 0)})));
    const GLogEval g_log = [ge, we](const Cplx& t, const Real& r) -> Cplx {
        if (r < 1) return plog(we(t)) - Cplx(log(r));
        return plog(ge(t));
    };
    return r3_core(z[0], z[1], z[2], pick_tol(tol), g_log);
}

bool s3_line_closed_form_applies(const ExactMatrix& m) {
    try {
        const ExactMatrix g = good_chart_impl(m);
        check_dlog_regular(g);
        if (crossing_count(g) != 0) return false;
        /* branch guard: with real data the antiderivatives stay on the
         * principal branch only for a positive log argument and a
         * dilogarithm argument left of 1 */
        const Cplx e = embed(-(minor(m, 2, 3) / minor(m, 1, 3)));
        const Cplx q = embed((minor(m, 1, 2) * minor(m, 0, 3)) /
                             (minor(m, 1, 3) * minor(m, 0, 2)));
        const Real slack = sqrt(working_eps());
        if (abs(e.im) <= slack * (1 + abs(e.re)) && !(e.re > 0)) return false;
        if (abs(q.im) <= slack * (1 + abs(q.re)) && !(q.re < 1)) return false;
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

Cplx s3_line_closed_form(const ExactMatrix& m) {
    if (!s3_line_closed_form_applies(m))
        throw std::domain_error(
            "s3_line_closed_form: configuration outside the closed form's "
            "range (membrane crossings, a dlog pole on the membrane, or a "
            "branch-cut argument)");
    const FieldElement q = (minor(m, 1, 2) * minor(m, 0, 3)) /
                           (minor(m, 1, 3) * minor(m, 0, 2));
    const FieldElement e = -(minor(m, 2, 3) / minor(m, 1, 3));
    const Cplx qc = embed(q);
    return -(plog(embed(e)) * plog(qc)) - li2(qc) + Cplx(zeta2());
}

/* ------------------------------------------------------------------ */
/* pointwise forms                                                     */

Cplx LinearFractional::operator()(const std::vector<Cplx>& x) const {
    if (num.empty() || num.size() != den.size() || x.size() + 1 != num.size())
        throw std::domain_error("LinearFractional: coefficient count mismatch");
    Cplx L = num[0], M = den[0];
    for (std::size_t j = 0; j < x.size(); ++j) {
        L += num[j + 1] * x[j];
        M += den[j + 1] * x[j];
    }
    if (M.is_zero())
        throw std::domain_error("LinearFractional: evaluation at a pole");
    return L / M;
}

std::vector<Cplx> LinearFractional::dlog_gradient(
    const std::vector<Cplx>& x) const {
    if (num.empty() || num.size() != den.size() || x.size() + 1 != num.size())
        throw std::domain_error("LinearFractional: coefficient count mismatch");
    Cplx L = num[0], M = den[0];
    for (std::size_t j = 0; j < x.size(); ++j) {
        L += num[j + 1] * x[j];
        M += den[j + 1] * x[j];
    }
    if (L.is_zero() || M.is_zero())
        throw std::domain_error(
            "LinearFractional: logarithmic derivative at a zero or pole");
    std::vector<Cplx> g(x.size());
    for (std::size_t j = 0; j < x.size(); ++j)
        g[j] = num[j + 1] / L - den[j + 1] / M;
    return g;
}

LinearFractional affine_coordinate(std::size_t n, std::size_t j) {
    if (j < 1 || j > n)
        throw std::domain_error("affine_coordinate: index out of range");
    LinearFractional f;
    f.num.assign(n + 1, Cplx(0));
    f.den.assign(n + 1, Cplx(0));
    f.num[j] = Cplx(1);
    f.den[0] = Cplx(1);
    return f;
}

std::vector<LinearFractional> simplex_coordinate_tuple(std::size_t n) {
    std::vector<LinearFractional> out;
    out.reserve(n);
    for (std::size_t j = 1; j <= n; ++j) {
        LinearFractional f;
        f.num.assign(n + 1, Cplx(0));
        f.den.assign(n + 1, Cplx(0));
        for (std::size_t k = j; k <= n; ++k) f.num[k] = Cplx(-1);
        if (j == 1)
            f.den[0] = Cplx(1);
        else
            f.den[j - 1] = Cplx(1);
        out.push_back(std::move(f));
    }
    return out;
}

Cplx wedge_dlog_det(const std::vector<LinearFractional>& funcs,
                    const std::vector<Cplx>& point) {
    const std::size_t n = funcs.size();
    if (n == 0 || point.size() != n)
        throw std::domain_error(
            "wedge_dlog_det: need n functions of n variables");
    std::vector<std::vector<Cplx>> rows;
    rows.reserve(n);
    for (const LinearFractional& f : funcs)
        rows.push_back(f.dlog_gradient(point));
    return small_det(std::move(rows));
}

/* ------------------------------------------------------------------ */
/* real regulator forms                                                */

Cplx goncharov_form_eval(GoncharovKind kind,
                         const std::vector<FractionProduct>& args,
                         const std::vector<Cplx>& point,
                         const std::vector<std::vector<Cplx>>& frame) {
    const std::size_t n = point.size();
    std::vector<FractionProduct> built;
    const std::vector<FractionProduct>* use = &args;
    if (kind == GoncharovKind::plain_tuple) {
        if (args.empty())
            throw std::domain_error(
                "goncharov_form_eval: plain_tuple needs explicit arguments");
    } else {
        if (!args.empty())
            throw std::domain_error(
                "goncharov_form_eval: coordinate families take no explicit "
                "arguments");
        if (n == 0) throw std::domain_error("goncharov_form_eval: empty point");
        if (kind == GoncharovKind::projective_coordinates_vanishing) {
            for (LinearFractional& f : simplex_coordinate_tuple(n))
                built.push_back(FractionProduct{{std::move(f)}, {}});
        } else {
            for (std::size_t j = 1; j <= n; ++j)
                built.push_back(FractionProduct{{affine_coordinate(n, j)}, {}});
        }
        use = &built;
    }
    const std::size_t m = use->size();
    if (frame.size() + 1 != m)
        throw std::domain_error(
            "goncharov_form_eval: the frame must have one vector less than "
            "the argument count");
    for (const std::vector<Cplx>& v : frame)
        if (v.size() != n)
            throw std::domain_error(
                "goncharov_form_eval: frame vector dimension mismatch");

    std::vector<Real> u(m, Real(0));
    std::vector<std::vector<Cplx>> act(m, std::vector<Cplx>(frame.size(), Cplx(0)));
    for (std::size_t i = 0; i < m; ++i) {
        const FractionProduct& fp = (*use)[i];
        if (fp.factors.empty())
            throw std::domain_error("goncharov_form_eval: empty factor list");
        if (!fp.exponents.empty() && fp.exponents.size() != fp.factors.size())
            throw std::domain_error(
                "goncharov_form_eval: exponent count mismatch");
        std::vector<Cplx> grad(n, Cplx(0));
        for (std::size_t k = 0; k < fp.factors.size(); ++k) {
            const int e = fp.exponents.empty() ? 1 : fp.exponents[k];
            if (e == 0) continue;
            const Cplx v = fp.factors[k](point);
            const Real a = abs(v);
            if (a.is_zero())
                throw std::domain_error(
                    "goncharov_form_eval: an argument vanishes at the point");
            u[i] -= Real(e) * log(a);
            const std::vector<Cplx> gg = fp.factors[k].dlog_gradient(point);
            for (std::size_t j = 0; j < n; ++j) grad[j] += Real(e) * gg[j];
        }
        /* the (1,0) part of d(-log|f_i|) is -(1/2) dlog f_i */
        for (std::size_t kf = 0; kf < frame.size(); ++kf) {
            Cplx s(0);
            for (std::size_t j = 0; j < n; ++j) s += grad[j] * frame[kf][j];
            act[i][kf] = -(s / Real(2));
        }
    }
    return tm_from_actions(u, act);
}

std::function<Cplx(const Cplx&)> t3_density(const std::vector<RatFunc>& f) {
    if (f.size() != 3)
        throw std::invalid_argument("t3_density: exactly three arguments");
    struct Item {
        std::vector<Cplx> num, den, dnum, dden;
    };
    auto items = std::make_shared<std::vector<Item>>();
    for (const RatFunc& fi : f) {
        if (fi.is_zero())
            throw std::invalid_argument("t3_density: identically zero argument");
        Item it;
        it.num = embedded_coeffs(fi.num());
        it.den = embedded_coeffs(fi.den());
        it.dnum = embedded_coeffs(fi.num().derivative());
        it.dden = embedded_coeffs(fi.den().derivative());
        items->push_back(std::move(it));
    }
    return [items](const Cplx& t) -> Cplx {
        std::vector<Real> u(3, Real(0));
        std::vector<std::vector<Cplx>> act(3, std::vector<Cplx>(2, Cplx(0)));
        for (std::size_t i = 0; i < 3; ++i) {
            const Item& it = (*items)[i];
            const Cplx L = EmbeddedRat::horner(it.num, t);
            const Cplx M = EmbeddedRat::horner(it.den, t);
            if (L.is_zero() || M.is_zero())
                throw std::domain_error(
                    "t3_density: evaluation at a zero or pole");
            const Cplx dl = EmbeddedRat::horner(it.dnum, t) / L -
                            EmbeddedRat::horner(it.dden, t) / M;
            u[i] = log(abs(M)) - log(abs(L));
            const Cplx g = -(dl / Real(2));
            act[i][0] = g;
            act[i][1] = Cplx(Real(0), Real(1)) * g;
        }
        return tm_from_actions(u, act);
    };
}

namespace {

QuadResult disk_integral(const std::function<Cplx(const Cplx&)>& rho,
                         const std::vector<Cplx>& pts, const Real& tol,
                         int max_level) {
    std::vector<Real> xs{Real(-1), Real(1)}, ys{Real(-1), Real(1)};
    for (const Cplx& p : pts) {
        if (p.re > -1 && p.re < 1) xs.push_back(p.re);
        if (p.im > -1 && p.im < 1) ys.push_back(p.im);
    }
    auto tidy = [](std::vector<Real>& v) {
        std::sort(v.begin(), v.end());
        std::vector<Real> o{v.front()};
        for (const Real& t : v)
            if (t - o.back() > Real("1e-30")) o.push_back(t);
        if (o.back() != v.back()) o.back() = v.back();
        v = std::move(o);
    };
    tidy(xs);
    tidy(ys);
    auto chord = [](const Real& y) -> Real {
        const Real d = 1 - y * y;
        return d > 0 ? Real(sqrt(d)) : Real(0);
    };
    const Real edge_margin("1e-12");
    QuadResult total;
    total.error = 0;
    total.converged = true;
    for (std::size_t iy = 0; iy + 1 < ys.size(); ++iy) {
        const Real y0 = ys[iy], y1 = ys[iy + 1];
        const Real ybest =
            (y0 <= 0 && 0 <= y1) ? Real(0) : (abs(y0) < abs(y1) ? y0 : y1);
        const Real smax = chord(ybest);
        for (std::size_t ix = 0; ix + 1 < xs.size(); ++ix) {
            const Real xl = xs[ix], xr = xs[ix + 1];
            if (!(std::min(xr, smax) - std::max(xl, -smax) > 0))
                continue; /* the cell misses the disk */
            Region2D reg;
            reg.y0 = y0;
            reg.y1 = y1;
            reg.x_lo = [xl, chord](const Real& y) {
                const Real lo = -chord(y);
                return lo > xl ? lo : xl;
            };
            reg.x_hi = [xl, xr, chord](const Real& y) {
                const Real lo = -chord(y);
                const Real clo = lo > xl ? lo : xl;
                const Real hi = chord(y);
                const Real chi = hi < xr ? hi : xr;
                return chi > clo ? chi : clo;
            };
            /* Cell corners sit on the listed singular points.  The outer
             * (y) quadrature pushes nodes doubly-exponentially close to
             * the strip edge, and an x-line that close to a singular
             * corner carries a spike too thin for the inner levels to
             * resolve, even though the line's weight is negligible.
             * Drop such lines wholesale (zeroing the integrand only in
             * x would cut a huge jump into the spike and stall the inner
             * level differences instead).  For an at worst 1/distance
             * corner singularity the discarded strips hold
             * O(margin |log margin|) mass, far below the supported
             * tolerances.  Within a surviving line, x-nodes never land
             * exactly on the interval ends, so corner evaluations
             * cannot be hit; any residual domain error surfaces as
             * non-convergence. */
            const RegionIntegrand fi =
                [&rho, &edge_margin](const Real& x, const Real& y,
                                     const Real&, const Real&,
                                     const Real& dym,
                                     const Real& dyp) -> Cplx {
                if (dym < edge_margin || dyp < edge_margin) return Cplx(0);
                try {
                    return rho(Cplx(x, y));
                } catch (const std::domain_error&) {
                    return Cplx(0);
                }
            };
            total += quad_region2d(fi, reg, tol, max_level, max_level + 1);
        }
    }
    return total;
}

} // namespace

QuadResult integrate_density_p1(
    const std::function<Cplx(const Cplx&)>& density,
    const std::vector<Cplx>& singular, const Real& tol, int max_level) {
    const Real t = pick_tol(tol);
    /* Scale the fold radius so every listed finite singular point sits
     * strictly inside the inner chart; a singular point on (or near) the
     * chart interface would cut the circle through a non-smooth spot and
     * stall both charts' quadratures. */
    Real radius(2);
    for (const Cplx& p : singular) {
        const Real need = 2 * abs(p);
        if (need > radius) radius = need;
    }
    const Real r2 = radius * radius;

    /* inner chart t = radius * s over the unit s-disk */
    std::vector<Cplx> inner_pts;
    inner_pts.reserve(singular.size());
    for (const Cplx& p : singular)
        inner_pts.push_back(Cplx(p.re / radius, p.im / radius));
    const auto scaled = [&density, radius, r2](const Cplx& s) -> Cplx {
        return density(Cplx(s.re * radius, s.im * radius)) * r2;
    };
    QuadResult total = disk_integral(scaled, inner_pts, t, max_level);

    /* outer chart t = radius / u over the unit u-disk (covers
     * |t| >= radius); the holomorphic change picks up the Jacobian
     * |dt/du|^2 = radius^2 / |u|^4, and the only singular point left is
     * t = infinity at the center u = 0, a cell corner. */
    const auto folded = [&density, radius, r2](const Cplx& u) -> Cplx {
        const Real n2 = norm2(u);
        if (!(n2 > 0)) return Cplx(0); /* rounded onto t = infinity */
        return density(Cplx(radius) / u) * (r2 / (n2 * n2));
    };
    total += disk_integral(folded, {Cplx(0)}, t, max_level);
    return total;
}

/* ------------------------------------------------------------------ */
/* parameter chart changes                                             */

RatFunc compose_mobius(const RatFunc& f, const FieldElement& al,
                       const FieldElement& be, const FieldElement& ga,
                       const FieldElement& de) {
    if ((al * de - be * ga).is_zero())
        throw std::invalid_argument(
            "compose_mobius: singular coefficient matrix");
    const Poly A({be, al});
    const Poly C({de, ga});
    const int D = std::max(f.num().degree(), f.den().degree());
    std::vector<Poly> apow(static_cast<std::size_t>(D) + 1),
        cpow(static_cast<std::size_t>(D) + 1);
    apow[0] = Poly::constant(FieldElement(1L));
    cpow[0] = apow[0];
    for (int k = 1; k <= D; ++k) {
        apow[static_cast<std::size_t>(k)] =
            apow[static_cast<std::size_t>(k - 1)] * A;
        cpow[static_cast<std::size_t>(k)] =
            cpow[static_cast<std::size_t>(k - 1)] * C;
    }
    const auto lift = [&](const Poly& p) {
        Poly out;
        for (int k = 0; k <= p.degree(); ++k)
            out += (apow[static_cast<std::size_t>(k)] *
                    cpow[static_cast<std::size_t>(D - k)]) *
                   p.coeff(static_cast<std::size_t>(k));
        return out;
    };
    return RatFunc(lift(f.num()), lift(f.den()));
}

} // namespace reg

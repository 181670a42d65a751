#include <reg/membranes.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace reg {

namespace {

Cplx horner(const std::vector<Cplx>& c, const Cplx& t) {
    Cplx acc(0);
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * t + c[i];
    return acc;
}

std::vector<Cplx> derivative_coeffs(const std::vector<Cplx>& c) {
    std::vector<Cplx> d;
    for (std::size_t i = 1; i < c.size(); ++i)
        d.push_back(c[i] * Real(static_cast<long>(i)));
    return d;
}

/* Levels are sampled on the geometric grid r = 2^((4k+1)/16).  The 1/16
 * offset keeps samples away from round levels such as r = 1, so crossing
 * points at nice coordinates fall strictly inside polyline segments of the
 * prefilter below.  The half-width 668 puts the table ends near 1e(+-50),
 * far enough out that the endpoint asymptotics are accurate there for end
 * multiplicities up to six. */
constexpr long kQuarterExpMax = 668;

Real grid_level(long k) {
    return pow(Real(2), (Real(4 * k) + 1) / Real(16));
}

/* One Newton solve of num(t) + r den(t) = 0 from a warm start.  Stagnation
 * signals a (near-)critical level where two branches meet. */
Cplx level_newton(const std::vector<Cplx>& nc, const std::vector<Cplx>& dnc,
                  const std::vector<Cplx>& dc, const std::vector<Cplx>& ddc,
                  const Real& r, Cplx t) {
    const Real tol = working_eps() * 16;
    for (int iter = 0; iter < 120; ++iter) {
        const Cplx der = horner(dnc, t) + horner(ddc, t) * r;
        if (der.is_zero()) break;
        const Cplx step = (horner(nc, t) + horner(dc, t) * r) / der;
        t -= step;
        if (abs(step) <= tol * (Real(1) + abs(t))) return t;
    }
    throw std::runtime_error(
        "membrane tracing failed: the level equation stopped converging near "
        "a critical level");
}

Real membership_defect(const std::vector<Cplx>& nc, const std::vector<Cplx>& dc,
                       const Cplx& t, const Real& r) {
    const Cplx dval = horner(dc, t);
    if (dval.is_zero())
        throw std::runtime_error("membrane point degenerated to a pole");
    return abs(horner(nc, t) / dval + Cplx(r)) / (Real(1) + r);
}

} // namespace

Arc Arc::reverse() const {
    Arc a(*this);
    a.reversed_ = !a.reversed_;
    return a;
}

Real Arc::sample_ratio(std::size_t k) const {
    if (k >= samples_.size())
        throw std::out_of_range("arc sample index out of range");
    return grid_level(k0_ + static_cast<long>(k));
}

Cplx Arc::solve_level(const Real& r) const {
    const long kmin = k0_;
    const long kmax = k0_ + static_cast<long>(samples_.size()) - 1;
    const Real kq = (Real(16) * log(r) / const_log2() - 1) / 4;
    Cplx t0;
    if (kq <= Real(kmin)) {
        /* below the table: expand around the zero end, |t - z| ~ r^(1/m) */
        const Real redge = sample_ratio(0);
        const Cplx tedge = samples_.front();
        const Real rho = pow(r / redge, Real(1) / Real(zero_.multiplicity));
        t0 = zero_.at_infinity ? tedge / rho
                               : zero_.location + (tedge - zero_.location) * rho;
    } else if (kq >= Real(kmax)) {
        /* above the table: expand around the pole end, |t - p| ~ r^(-1/m) */
        const Real redge = sample_ratio(samples_.size() - 1);
        const Cplx tedge = samples_.back();
        const Real rho = pow(r / redge, Real(1) / Real(pole_.multiplicity));
        t0 = pole_.at_infinity ? tedge * rho
                               : pole_.location + (tedge - pole_.location) / rho;
    } else {
        long ki = round(kq).convert_to<long>();
        ki = std::max(kmin, std::min(kmax, ki));
        t0 = samples_[static_cast<std::size_t>(ki - k0_)];
    }
    return level_newton(num_, dnum_, den_, dden_, r, t0);
}

Cplx Arc::point_for_ratio(const Real& r) const {
    if (!(r > 0)) throw std::domain_error("arc level must be positive");
    if (mobius_) {
        const Cplx p0 = num_.empty() ? Cplx(0) : num_[0];
        const Cplx p1 = num_.size() > 1 ? num_[1] : Cplx(0);
        const Cplx q0 = den_.empty() ? Cplx(0) : den_[0];
        const Cplx q1 = den_.size() > 1 ? den_[1] : Cplx(0);
        const Cplx bottom = p1 + q1 * r;
        if (bottom.is_zero())
            throw std::runtime_error("membrane point degenerated to infinity");
        return -(p0 + q0 * r) / bottom;
    }
    const Cplx t = solve_level(r);
    const Real half_tol =
        pow(Real(10), -static_cast<long>(working_digits() / 2));
    if (membership_defect(num_, den_, t, r) > half_tol)
        throw std::runtime_error("membrane point failed its residual check");
    return t;
}

Cplx Arc::ratio_velocity(const Real& r) const {
    return point_and_ratio_velocity(r).second;
}

std::pair<Cplx, Cplx> Arc::point_and_ratio_velocity(const Real& r) const {
    const Cplx t = point_for_ratio(r);
    const Cplx bottom = horner(dnum_, t) + horner(dden_, t) * r;
    if (bottom.is_zero())
        throw std::runtime_error("arc velocity undefined at a critical point");
    return {t, -horner(den_, t) / bottom};
}

Cplx Arc::point(const Real& s) const {
    if (!(s > 0) || !(s < 1))
        throw std::domain_error("arc parameter must lie in (0,1)");
    const Real one(1);
    return point_for_ratio(reversed_ ? s / (one - s) : (one - s) / s);
}

Cplx Arc::velocity(const Real& s) const {
    if (!(s > 0) || !(s < 1))
        throw std::domain_error("arc parameter must lie in (0,1)");
    const Real one(1);
    if (reversed_) {
        const Real u = one - s;
        return point_and_ratio_velocity(s / u).second * (one / (u * u));
    }
    return point_and_ratio_velocity((one - s) / s).second * (-(one / (s * s)));
}

Cplx Arc::value(const Cplx& t) const {
    const Cplx d = horner(den_, t);
    if (d.is_zero())
        throw std::domain_error("evaluation at a pole of the function");
    return horner(num_, t) / d;
}

Cplx Arc::derivative_value(const Cplx& t) const {
    const Cplx d = horner(den_, t);
    if (d.is_zero())
        throw std::domain_error("evaluation at a pole of the function");
    return (horner(dnum_, t) * d - horner(num_, t) * horner(dden_, t)) /
           (d * d);
}

std::vector<Arc> membrane_arcs(const RatFunc& f, int max_degree) {
    if (max_degree < 1 || max_degree > 6)
        throw std::invalid_argument(
            "membrane_arcs: max_degree must be between 1 and 6");
    if (f.is_zero() || f.is_constant())
        throw std::invalid_argument(
            "membrane_arcs: the function must be nonconstant");
    const int dn = f.num().degree();
    const int dd = f.den().degree();
    const int d = std::max(dn, dd);
    if (d > max_degree)
        throw std::invalid_argument(
            "membrane_arcs: the function degree exceeds max_degree");

    /* A negative real value at infinity means the membrane leaves the affine
     * chart at an interior level, so it has no decomposition into affine
     * arcs.  Over the supported fields "negative real" is exact. */
    if (dn == dd) {
        const FieldElement lead = f.num().leading() / f.den().leading();
        if (lead.is_rational() && lead.rational_value() < 0)
            throw std::runtime_error(
                "membrane tracing failed: the membrane passes through "
                "infinity");
    }

    const std::vector<Cplx> nc = embedded_coeffs(f.num());
    const std::vector<Cplx> dc = embedded_coeffs(f.den());
    const std::vector<Cplx> dnc = derivative_coeffs(nc);
    const std::vector<Cplx> ddc = derivative_coeffs(dc);

    const std::vector<PolyRoot> zeros =
        dn >= 1 ? field_poly_roots(f.num()) : std::vector<PolyRoot>{};
    const std::vector<PolyRoot> poles =
        dd >= 1 ? field_poly_roots(f.den()) : std::vector<PolyRoot>{};

    const long kmin = -kQuarterExpMax, kmax = kQuarterExpMax;
    const std::size_t nsamp = static_cast<std::size_t>(kmax - kmin + 1);
    std::vector<std::vector<Cplx>> tables(static_cast<std::size_t>(d),
                                          std::vector<Cplx>(nsamp));

    if (d == 1) {
        /* Moebius level map in closed form: t = -(p0 + r q0)/(p1 + r q1). */
        const Cplx p0 = nc.empty() ? Cplx(0) : nc[0];
        const Cplx p1 = nc.size() > 1 ? nc[1] : Cplx(0);
        const Cplx q0 = dc.empty() ? Cplx(0) : dc[0];
        const Cplx q1 = dc.size() > 1 ? dc[1] : Cplx(0);
        for (std::size_t i = 0; i < nsamp; ++i) {
            const Real r = grid_level(kmin + static_cast<long>(i));
            tables[0][i] = -(p0 + q0 * r) / (p1 + q1 * r);
        }
    } else {
        /* Seed every branch at the central grid level, continue both ways. */
        const Real r0 = grid_level(0);
        std::vector<Cplx> mid_coeffs(static_cast<std::size_t>(d) + 1, Cplx(0));
        for (std::size_t i = 0; i < mid_coeffs.size(); ++i) {
            if (i < nc.size()) mid_coeffs[i] += nc[i];
            if (i < dc.size()) mid_coeffs[i] += dc[i] * r0;
        }
        std::vector<Cplx> cur = complex_roots(mid_coeffs);
        if (static_cast<int>(cur.size()) != d)
            throw std::runtime_error(
                "membrane tracing failed: branch count mismatch at the "
                "central level");
        Real scale(1);
        for (const Cplx& z : cur) scale = std::max(scale, abs(z));
        for (std::size_t i = 0; i < cur.size(); ++i)
            for (std::size_t j = i + 1; j < cur.size(); ++j)
                if (abs(cur[i] - cur[j]) < scale * 1e-10)
                    throw std::runtime_error(
                        "membrane tracing failed: branches collide at the "
                        "central level");
        const std::vector<Cplx> mids = cur;

        auto advance = [&](std::vector<Cplx>& state, long k) {
            const Real r = grid_level(k);
            std::vector<Cplx> nxt(state.size());
            for (std::size_t b = 0; b < state.size(); ++b)
                nxt[b] = level_newton(nc, dnc, dc, ddc, r, state[b]);
            /* Each branch must land much closer to its own predecessor than
             * to any other branch, or the continuation has lost identity. */
            for (std::size_t b = 0; b < nxt.size(); ++b) {
                const Real dself = abs(nxt[b] - state[b]);
                for (std::size_t o = 0; o < state.size(); ++o) {
                    if (o == b) continue;
                    if (!(dself * 2 < abs(nxt[b] - state[o])))
                        throw std::runtime_error(
                            "membrane tracing failed: branches collide");
                }
            }
            state = std::move(nxt);
        };

        for (long k = 0; k <= kmax; ++k) {
            if (k > 0) advance(cur, k);
            for (std::size_t b = 0; b < cur.size(); ++b)
                tables[b][static_cast<std::size_t>(k - kmin)] = cur[b];
        }
        cur = mids;
        for (long k = 0; k >= kmin; --k) {
            if (k < 0) advance(cur, k);
            for (std::size_t b = 0; b < cur.size(); ++b)
                tables[b][static_cast<std::size_t>(k - kmin)] = cur[b];
        }
    }

    Real root_scale(1);
    for (const PolyRoot& z : zeros) root_scale = std::max(root_scale, abs(z.approx));
    for (const PolyRoot& z : poles) root_scale = std::max(root_scale, abs(z.approx));
    const Real inf_threshold = root_scale * 1e7;

    std::vector<int> zero_tally(zeros.size(), 0), pole_tally(poles.size(), 0);
    int zero_inf = 0, pole_inf = 0;

    auto classify = [&](const Cplx& t, const std::vector<PolyRoot>& roots,
                        int inf_mult, std::vector<int>& tally,
                        int& inf_tally) -> ArcEndpoint {
        int best = -1;
        Real best_dist(0);
        for (std::size_t i = 0; i < roots.size(); ++i) {
            const Real dist = abs(t - roots[i].approx);
            if (best < 0 || dist < best_dist) {
                best = static_cast<int>(i);
                best_dist = dist;
            }
        }
        if (best >= 0) {
            const PolyRoot& root = roots[static_cast<std::size_t>(best)];
            if (best_dist <= (Real(1) + abs(root.approx)) * 1e-8) {
                ++tally[static_cast<std::size_t>(best)];
                return ArcEndpoint{root.approx, false, root.multiplicity};
            }
        }
        if (inf_mult > 0 && abs(t) > inf_threshold) {
            ++inf_tally;
            return ArcEndpoint{Cplx(0), true, inf_mult};
        }
        throw std::runtime_error(
            "membrane tracing failed: an arc end matches no zero or pole");
    };

    std::vector<Arc> arcs;
    arcs.reserve(static_cast<std::size_t>(d));
    for (int b = 0; b < d; ++b) {
        Arc a;
        a.f_ = f;
        a.num_ = nc;
        a.den_ = dc;
        a.dnum_ = dnc;
        a.dden_ = ddc;
        a.mobius_ = (d == 1);
        a.k0_ = kmin;
        a.samples_ = std::move(tables[static_cast<std::size_t>(b)]);
        a.zero_ = classify(a.samples_.front(), zeros, dd - dn, zero_tally,
                           zero_inf);
        a.pole_ = classify(a.samples_.back(), poles, dn - dd, pole_tally,
                           pole_inf);
        arcs.push_back(std::move(a));
    }

    for (std::size_t i = 0; i < zeros.size(); ++i)
        if (zero_tally[i] != zeros[i].multiplicity)
            throw std::runtime_error(
                "membrane tracing failed: zero-end pairing mismatch");
    for (std::size_t i = 0; i < poles.size(); ++i)
        if (pole_tally[i] != poles[i].multiplicity)
            throw std::runtime_error(
                "membrane tracing failed: pole-end pairing mismatch");
    if (zero_inf != std::max(0, dd - dn) || pole_inf != std::max(0, dn - dd))
        throw std::runtime_error(
            "membrane tracing failed: infinity pairing mismatch");

    return arcs;
}

std::vector<ArcCrossing> arc_pair_intersections(const Arc& a, const Arc& b) {
    /* Overlapping arcs are never transverse.  Probe a few interior points of
     * each arc for membership of the other; an isolated crossing can agree
     * with at most one probe, so two hits mean the arcs coincide. */
    auto lies_on = [](const Arc& host, const Cplx& t) -> bool {
        try {
            const Cplx v = host.value(t);
            if (!(v.re < 0)) return false;
            if (abs(v.im) > (Real(1) + abs(v.re)) * 1e-20) return false;
            const Cplx th = host.point_for_ratio(-v.re);
            return abs(th - t) <= (Real(1) + abs(t)) * 1e-20;
        } catch (const std::exception&) {
            return false;
        }
    };
    const Real probes[3] = {Real("0.2371"), Real("0.5049"), Real("0.7683")};
    int a_on_b = 0, b_on_a = 0;
    for (const Real& s : probes) {
        if (lies_on(b, a.point(s))) ++a_on_b;
        if (lies_on(a, b.point(s))) ++b_on_a;
    }
    if (a_on_b >= 2 || b_on_a >= 2)
        throw std::domain_error(
            "arc crossings are not transverse: the arcs overlap");

    /* Candidate crossings come from a double-precision sweep over the trace
     * polylines; each proper segment crossing seeds a Newton refinement. */
    struct Pt {
        double x = 0, y = 0;
        bool ok = false;
    };
    auto flatten = [](const Arc& arc) {
        std::vector<Pt> out(arc.sample_count());
        for (std::size_t k = 0; k < arc.sample_count(); ++k) {
            const Cplx& z = arc.samples()[k];
            Pt p;
            p.x = z.re.convert_to<double>();
            p.y = z.im.convert_to<double>();
            p.ok = std::isfinite(p.x) && std::isfinite(p.y) &&
                   std::fabs(p.x) < 1e100 && std::fabs(p.y) < 1e100;
            out[k] = p;
        }
        return out;
    };
    const std::vector<Pt> pa = flatten(a), pb = flatten(b);
    auto cross2 = [](double ux, double uy, double vx, double vy) {
        return ux * vy - uy * vx;
    };
    std::vector<Cplx> seeds;
    for (std::size_t i = 0; i + 1 < pa.size(); ++i) {
        if (!pa[i].ok || !pa[i + 1].ok) continue;
        for (std::size_t j = 0; j + 1 < pb.size(); ++j) {
            if (!pb[j].ok || !pb[j + 1].ok) continue;
            const double d1 = cross2(pb[j + 1].x - pb[j].x, pb[j + 1].y - pb[j].y,
                                     pa[i].x - pb[j].x, pa[i].y - pb[j].y);
            const double d2 = cross2(pb[j + 1].x - pb[j].x, pb[j + 1].y - pb[j].y,
                                     pa[i + 1].x - pb[j].x, pa[i + 1].y - pb[j].y);
            const double d3 = cross2(pa[i + 1].x - pa[i].x, pa[i + 1].y - pa[i].y,
                                     pb[j].x - pa[i].x, pb[j].y - pa[i].y);
            const double d4 = cross2(pa[i + 1].x - pa[i].x, pa[i + 1].y - pa[i].y,
                                     pb[j + 1].x - pa[i].x, pb[j + 1].y - pa[i].y);
            const bool opp12 = (d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0);
            const bool opp34 = (d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0);
            if (!opp12 || !opp34) continue;
            const double u = d1 / (d1 - d2);
            seeds.emplace_back(Real(pa[i].x + u * (pa[i + 1].x - pa[i].x)),
                               Real(pa[i].y + u * (pa[i + 1].y - pa[i].y)));
        }
    }

    /* Newton on (Im f_a, Im f_b); the Jacobian rows are (Im f', Re f'). */
    const Real step_tol = working_eps() * 100;
    std::vector<Cplx> found;
    std::vector<ArcCrossing> out;
    for (const Cplx& seed : seeds) {
        Cplx t = seed;
        bool converged = false;
        try {
            for (int iter = 0; iter < 80; ++iter) {
                const Cplx fa = a.value(t), fb = b.value(t);
                const Cplx da = a.derivative_value(t),
                           db = b.derivative_value(t);
                const Real det = da.im * db.re - da.re * db.im;
                if (!(abs(det) > abs(da) * abs(db) * 1e-30)) break;
                const Real dx = (fb.im * da.re - fa.im * db.re) / det;
                const Real dy = (fa.im * db.im - fb.im * da.im) / det;
                t.re += dx;
                t.im += dy;
                if (abs(Cplx(dx, dy)) <= step_tol * (Real(1) + abs(t))) {
                    converged = true;
                    break;
                }
            }
        } catch (const std::exception&) {
            converged = false;
        }
        if (!converged) continue;

        const Cplx fa = a.value(t), fb = b.value(t);
        if (!(fa.re < 0) || !(fb.re < 0)) continue;
        const Real ra = -fa.re, rb = -fb.re;
        /* The refined point must lie on these very arcs (not on another
         * branch of the same function). */
        if (abs(a.point_for_ratio(ra) - t) > (Real(1) + abs(t)) * 1e-15)
            continue;
        if (abs(b.point_for_ratio(rb) - t) > (Real(1) + abs(t)) * 1e-15)
            continue;
        bool dup = false;
        for (const Cplx& u : found)
            if (abs(u - t) <= (Real(1) + abs(t)) * 1e-20) {
                dup = true;
                break;
            }
        if (dup) continue;
        found.push_back(t);

        Cplx va = a.ratio_velocity(ra);
        if (!a.reversed()) va = -va;
        Cplx vb = b.ratio_velocity(rb);
        if (!b.reversed()) vb = -vb;
        const Real cross_det = va.re * vb.im - va.im * vb.re;
        const Real normalizer = abs(va) * abs(vb);
        if (normalizer.is_zero() || abs(cross_det) < normalizer * 1e-8)
            throw std::domain_error("arc crossings are not transverse");
        out.push_back(ArcCrossing{t, cross_det > 0 ? 1 : -1});
    }
    std::sort(out.begin(), out.end(),
              [](const ArcCrossing& u, const ArcCrossing& v) {
                  if (u.location.re != v.location.re)
                      return u.location.re < v.location.re;
                  return u.location.im < v.location.im;
              });
    return out;
}

QuadResult integrate_arc(const ArcIntegrand& form_coeff, const Arc& arc,
                         const Real& tol) {
    return integrate_arc_between(form_coeff, arc, Real(0), Real(1), tol);
}

QuadResult integrate_arc_between(const ArcIntegrand& form_coeff,
                                 const Arc& arc, const Real& lo,
                                 const Real& hi, const Real& tol) {
    if (!(Real(0) <= lo) || !(lo < hi) || !(hi <= Real(1)))
        throw std::domain_error(
            "integrate_arc_between: window must satisfy 0 <= lo < hi <= 1");
    // Traversal parameter s = lo + dm = hi - dp.  The distances to the arc
    // ends, s and 1 - s, stay fully accurate at the window ends that touch
    // the arc ends: s = dm when lo = 0 and 1 - s = dp when hi = 1.
    const Real co = Real(1) - hi;
    auto g = [&form_coeff, &arc, &lo, &co](const Real&, const Real& dm,
                                           const Real& dp) -> Cplx {
        const Real sm = lo + dm; // s, distance to the arc start
        const Real sp = co + dp; // 1 - s, distance to the arc end
        if (!(sm > 0) || !(sp > 0)) return Cplx(0);
        const bool rev = arc.reversed();
        const Real r = rev ? sm / sp : sp / sm;
        const auto tv = arc.point_and_ratio_velocity(r);
        const Real jac = rev ? Real(1) / (sp * sp) : -(Real(1) / (sm * sm));
        return form_coeff(tv.first, r) * tv.second * jac;
    };
    return quad(g, lo, hi, tol);
}

} // namespace reg

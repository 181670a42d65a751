#include <catch2/catch_amalgamated.hpp>

#include "reg/exact.hpp"
#include "reg/membranes.hpp"
#include "reg/numeric.hpp"
#include "reg/poly.hpp"
#include "reg/quadrature.hpp"
#include "reg/specfun.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

using namespace reg;
using boost::multiprecision::abs;
using boost::multiprecision::log;

TEST_CASE("real-line quadrature on smooth integrands") {
    QuadResult q = quad(
        [](const Real& t, const Real&, const Real&) -> Cplx { return Cplx(t * t); },
        Real(0), Real(1), Real("1e-30"));
    REQUIRE(q.converged);
    CHECK(abs(q.value.re - Real(1) / 3) < Real("1e-28"));
    CHECK(q.value.im.is_zero());
    CHECK(q.evaluations > 0);

    /* orientation flip negates the value */
    QuadResult r = quad(
        [](const Real& t, const Real&, const Real&) -> Cplx { return Cplx(t * t); },
        Real(1), Real(0), Real("1e-30"));
    CHECK(abs(r.value.re + q.value.re) < Real("1e-28"));
}

TEST_CASE("quadrature is deterministic") {
    auto f = [](const Real& t, const Real&, const Real& dp) -> Cplx {
        return Cplx(log(dp) * t);
    };
    QuadResult a = quad(f, Real(0), Real(1), Real("1e-20"));
    QuadResult b = quad(f, Real(0), Real(1), Real("1e-20"));
    CHECK(a.value.re == b.value.re);
    CHECK(a.evaluations == b.evaluations);
}

TEST_CASE("logarithmic endpoint singularities") {
    /* int_0^1 log(1-t)/t dt = -zeta(2), using the exact endpoint distance */
    QuadResult q = quad(
        [](const Real& t, const Real&, const Real& dp) -> Cplx {
            if (t.is_zero()) return Cplx(-1);
            return Cplx(log(dp) / t);
        },
        Real(0), Real(1), Real("1e-15"));
    REQUIRE(q.converged);
    CHECK(abs(q.value.re + zeta2()) < Real("1e-14"));

    /* int_0^1 log(t) log(1-t) dt = 2 - zeta(2): singular at both ends */
    QuadResult r = quad(
        [](const Real&, const Real& dm, const Real& dp) -> Cplx {
            return Cplx(log(dm) * log(dp));
        },
        Real(0), Real(1), Real("1e-15"));
    REQUIRE(r.converged);
    CHECK(abs(r.value.re - (2 - zeta2())) < Real("1e-14"));
}

TEST_CASE("complex segment quadrature") {
    /* int_0^i z dz = -1/2 */
    QuadResult q = quad_segment(
        [](const Cplx& z, const Cplx&, const Cplx&) -> Cplx { return z; },
        Cplx(0), Cplx(Real(0), Real(1)), Real("1e-25"));
    REQUIRE(q.converged);
    CHECK(abs(q.value - Cplx(Real(-1) / 2, Real(0))) < Real("1e-23"));

    /* int_1^i dz/z = i pi/2 */
    QuadResult r = quad_segment(
        [](const Cplx& z, const Cplx&, const Cplx&) -> Cplx { return Cplx(1) / z; },
        Cplx(1), Cplx(Real(0), Real(1)), Real("1e-25"));
    REQUIRE(r.converged);
    CHECK(abs(r.value - Cplx(Real(0), const_pi() / 2)) < Real("1e-23"));
}

TEST_CASE("polyline path integration is path independent for entire integrands") {
    std::vector<Cplx> pts{Cplx(0), Cplx(Real(1), Real(1) / 2), Cplx(2)};
    QuadResult q = quad_polyline(
        [](const Cplx& z, const Cplx&, const Cplx&) -> Cplx { return z * z; },
        pts, Real("1e-25"));
    REQUIRE(q.converged);
    CHECK(abs(q.value - Cplx(Real(8) / 3, Real(0))) < Real("1e-23"));
}

TEST_CASE("iterated two-dimensional quadrature") {
    SECTION("unit square area") {
        Region2D square{Real(0), Real(1),
                        [](const Real&) { return Real(0); },
                        [](const Real&) { return Real(1); }};
        QuadResult q = quad_region2d(
            [](const Real&, const Real&, const Real&, const Real&, const Real&, const Real&) {
                return Cplx(1);
            },
            square, Real("1e-12"));
        REQUIRE(q.converged);
        CHECK(abs(q.value.re - 1) < Real("1e-11"));
    }

    SECTION("triangle area with outer-dependent inner bound") {
        Region2D tri{Real(0), Real(1),
                     [](const Real& y) { return y; },
                     [](const Real&) { return Real(1); }};
        QuadResult q = quad_region2d(
            [](const Real&, const Real&, const Real&, const Real&, const Real&, const Real&) {
                return Cplx(1);
            },
            tri, Real("1e-12"));
        REQUIRE(q.converged);
        CHECK(abs(q.value.re - Real(1) / 2) < Real("1e-11"));
    }

    SECTION("log singularity along the inner boundary") {
        /* int_0^1 int_0^y log(y - x) dx dy = -3/4 */
        Region2D tri{Real(0), Real(1),
                     [](const Real&) { return Real(0); },
                     [](const Real& y) { return y; }};
        QuadResult q = quad_region2d(
            [](const Real&, const Real&, const Real&, const Real& dxp, const Real&, const Real&) {
                return Cplx(log(dxp));
            },
            tri, Real("1e-10"));
        REQUIRE(q.converged);
        CHECK(abs(q.value.re + Real(3) / 4) < Real("1e-9"));
    }

    SECTION("log singularities on two square edges") {
        /* int int -log(x y) over the unit square = 2 */
        Region2D square{Real(0), Real(1),
                        [](const Real&) { return Real(0); },
                        [](const Real&) { return Real(1); }};
        QuadResult q = quad_region2d(
            [](const Real&, const Real&, const Real& dxm, const Real&, const Real& dym,
               const Real&) { return Cplx(-(log(dxm) + log(dym))); },
            square, Real("1e-10"));
        REQUIRE(q.converged);
        CHECK(abs(q.value.re - 2) < Real("1e-9"));
    }
}

namespace {

FieldPtr cyclotomic_field() {
    return NumberField::extension({Rational(1), Rational(1)});
}

FieldPtr gaussian_field() {
    return NumberField::extension({Rational(1), Rational(0)});
}

RatFunc ratf(std::vector<FieldElement> num, std::vector<FieldElement> den) {
    return RatFunc(Poly(std::move(num)), Poly(std::move(den)));
}

/* |f(point(s)) + r| / (1 + r) with r the level of parameter s */
Real arc_defect(const Arc& arc, const Real& s) {
    const Real r = arc.reversed() ? s / (Real(1) - s) : (Real(1) - s) / s;
    return abs(arc.value(arc.point(s)) + Cplx(r)) / (Real(1) + r);
}

} // namespace

TEST_CASE("membrane of the affine coordinate") {
    std::vector<Arc> arcs = membrane_arcs(RatFunc(
        Poly::monomial(FieldElement(1), 1), Poly::constant(FieldElement(1))));
    REQUIRE(arcs.size() == 1);
    const Arc& arc = arcs[0];
    CHECK_FALSE(arc.reversed());
    CHECK(arc.pole_end().at_infinity);
    CHECK(arc.pole_end().multiplicity == 1);
    CHECK_FALSE(arc.zero_end().at_infinity);
    CHECK(abs(arc.zero_end().location) < Real("1e-30"));
    CHECK(arc.zero_end().multiplicity == 1);

    CHECK(abs(arc.point_for_ratio(Real(1)) - Cplx(-1)) < Real("1e-60"));
    CHECK(abs(arc.point(Real(1) / 2) - Cplx(-1)) < Real("1e-60"));

    /* the traversal runs from the far pole end toward the zero */
    CHECK(abs(arc.point(Real(1) / 100)) > abs(arc.point(Real(99) / 100)));
    CHECK(abs(arc.velocity(Real(1) / 2) - Cplx(4)) < Real("1e-60"));

    for (const Real& s : {Real(1) / 8, Real(1) / 2, Real(7) / 8})
        CHECK(arc_defect(arc, s) < Real("1e-50"));

    CHECK(arc.sample_count() > 1000);
    /* levels grow geometrically along the trace table */
    Real step = arc.sample_ratio(500) / arc.sample_ratio(499);
    CHECK(abs(step - boost::multiprecision::pow(Real(2), Real(1) / 4)) <
          Real("1e-60"));
}

TEST_CASE("Moebius membranes and their endpoints") {
    SECTION("conjugate-root segment") {
        FieldPtr F = cyclotomic_field();
        FieldElement z = FieldElement::generator(F);
        std::vector<Arc> arcs = membrane_arcs(
            ratf({-z, FieldElement(1)}, {-(z * z), FieldElement(1)}));
        REQUIRE(arcs.size() == 1);
        const Arc& arc = arcs[0];
        REQUIRE_FALSE(arc.zero_end().at_infinity);
        REQUIRE_FALSE(arc.pole_end().at_infinity);
        CHECK(abs(arc.zero_end().location - embed(z)) < Real("1e-50"));
        CHECK(abs(arc.pole_end().location - embed(z * z)) < Real("1e-50"));
        CHECK(arc.zero_end().multiplicity == 1);
        CHECK(arc.pole_end().multiplicity == 1);
        CHECK(abs(arc.point_for_ratio(Real(1)) - Cplx(Real(-1) / 2)) <
              Real("1e-55"));
        for (const Real& s : {Real(1) / 8, Real(1) / 2, Real(7) / 8})
            CHECK(arc_defect(arc, s) < Real("1e-50"));
    }

    SECTION("ray of a reciprocal linear function") {
        FieldPtr F = gaussian_field();
        FieldElement alpha = FieldElement(2) + FieldElement::generator(F);
        std::vector<Arc> arcs =
            membrane_arcs(ratf({FieldElement(1)}, {FieldElement(1), -alpha}));
        REQUIRE(arcs.size() == 1);
        const Arc& arc = arcs[0];
        CHECK(arc.zero_end().at_infinity);
        CHECK(arc.zero_end().multiplicity == 1);
        REQUIRE_FALSE(arc.pole_end().at_infinity);
        CHECK(abs(arc.pole_end().location - embed(alpha.inverse())) <
              Real("1e-50"));
        CHECK(abs(arc.point_for_ratio(Real(1)) -
                  embed(FieldElement(2) / alpha)) < Real("1e-55"));
    }

    SECTION("unit interval membrane") {
        std::vector<Arc> arcs = membrane_arcs(ratf(
            {FieldElement(0), FieldElement(1)}, {FieldElement(-1), FieldElement(1)}));
        REQUIRE(arcs.size() == 1);
        const Arc& arc = arcs[0];
        CHECK(abs(arc.zero_end().location) < Real("1e-30"));
        CHECK(abs(arc.pole_end().location - Cplx(1)) < Real("1e-30"));
        /* traversal starts at the pole 1 and ends at the zero 0 */
        CHECK(arc.point(Real(1) / 100).re > Real(9) / 10);
        CHECK(arc.point(Real(99) / 100).re < Real(1) / 10);
    }
}

TEST_CASE("traced membranes of higher degree") {
    SECTION("three rays of the cube map") {
        RatFunc cube(Poly::monomial(FieldElement(1), 3),
                     Poly::constant(FieldElement(1)));
        std::vector<Arc> arcs = membrane_arcs(cube);
        REQUIRE(arcs.size() == 3);
        std::vector<Cplx> unit_points;
        for (const Arc& arc : arcs) {
            CHECK(arc.pole_end().at_infinity);
            CHECK(arc.pole_end().multiplicity == 3);
            REQUIRE_FALSE(arc.zero_end().at_infinity);
            CHECK(abs(arc.zero_end().location) < Real("1e-20"));
            CHECK(arc.zero_end().multiplicity == 3);
            Cplx t = arc.point_for_ratio(Real(1));
            CHECK(abs(pow_int(t, 3) + Cplx(1)) < Real("1e-50"));
            unit_points.push_back(t);
            for (const Real& s : {Real(1) / 8, Real(1) / 2, Real(7) / 8})
                CHECK(arc_defect(arc, s) < Real("1e-30"));
        }
        CHECK(abs(unit_points[0] - unit_points[1]) > Real(1));
        CHECK(abs(unit_points[0] - unit_points[2]) > Real(1));
        CHECK(abs(unit_points[1] - unit_points[2]) > Real(1));

        /* velocity agrees with a finite difference of the parametrization */
        const Arc& a0 = arcs[0];
        const Real s0 = Real(2) / 5, h("1e-12");
        Cplx fd = (a0.point(s0 + h) - a0.point(s0 - h)) / (h * 2);
        CHECK(abs(fd - a0.velocity(s0)) < Real("1e-18"));
    }

    SECTION("quadratic with an imaginary shift") {
        FieldPtr F = gaussian_field();
        FieldElement iu = FieldElement::generator(F);
        std::vector<Arc> arcs = membrane_arcs(
            ratf({-iu, FieldElement(0), FieldElement(1)}, {FieldElement(1)}));
        REQUIRE(arcs.size() == 2);
        for (const Arc& arc : arcs) {
            CHECK(arc.pole_end().at_infinity);
            CHECK(arc.pole_end().multiplicity == 2);
            REQUIRE_FALSE(arc.zero_end().at_infinity);
            const Cplx z = arc.zero_end().location;
            CHECK(abs(z * z - imag_unit()) < Real("1e-50"));
            CHECK(arc.zero_end().multiplicity == 1);
            for (const Real& s : {Real(1) / 8, Real(1) / 2, Real(7) / 8})
                CHECK(arc_defect(arc, s) < Real("1e-30"));
        }
        CHECK(abs(arcs[0].zero_end().location - arcs[1].zero_end().location) >
              Real(1));

        /* evaluation beyond the trace table uses endpoint asymptotics */
        const Arc& arc = arcs[0];
        Cplx far = arc.point_for_ratio(Real("1e60"));
        CHECK(abs(far * far - imag_unit() + Cplx(Real("1e60"))) /
                  Real("1e60") <
              Real("1e-30"));
        Cplx near_zero = arc.point_for_ratio(Real("1e-60"));
        CHECK(abs(near_zero - arc.zero_end().location) < Real("1e-25"));
        CHECK(abs(near_zero * near_zero - imag_unit() + Cplx(Real("1e-60"))) <
              Real("1e-40"));
    }
}

TEST_CASE("arc integrals match closed forms") {
    const Real tol("1e-25");
    auto inv_square = [](const Cplx& c) {
        return [c](const Cplx& t, const Real&) -> Cplx {
            return Cplx(1) / ((t - c) * (t - c));
        };
    };

    SECTION("residue-style integrals over the cube rays sum to 3/c") {
        RatFunc cube(Poly::monomial(FieldElement(1), 3),
                     Poly::constant(FieldElement(1)));
        std::vector<Arc> arcs = membrane_arcs(cube);
        const Cplx c(Real(2), Real(1));
        Cplx total(0);
        for (const Arc& arc : arcs) {
            QuadResult q = integrate_arc(inv_square(c), arc, tol);
            REQUIRE(q.converged);
            total += q.value;
        }
        CHECK(abs(total - Cplx(3) / c) < Real("1e-20"));
    }

    SECTION("quadratic membrane pair sums to 2c/(c^2 - i)") {
        FieldPtr F = gaussian_field();
        FieldElement iu = FieldElement::generator(F);
        std::vector<Arc> arcs = membrane_arcs(
            ratf({-iu, FieldElement(0), FieldElement(1)}, {FieldElement(1)}));
        const Cplx c(3);
        Cplx total(0);
        for (const Arc& arc : arcs) {
            QuadResult q = integrate_arc(inv_square(c), arc, tol);
            REQUIRE(q.converged);
            total += q.value;
        }
        CHECK(abs(total - Cplx(2) * c / (c * c - imag_unit())) < Real("1e-20"));
    }

    SECTION("segment integral, conservativeness, determinism") {
        FieldPtr F = cyclotomic_field();
        FieldElement z = FieldElement::generator(F);
        Arc arc = membrane_arcs(
            ratf({-z, FieldElement(1)}, {-(z * z), FieldElement(1)}))[0];
        const Cplx c(3);
        QuadResult q1 = integrate_arc(inv_square(c), arc, tol);
        REQUIRE(q1.converged);
        const Cplx expected =
            Cplx(1) / (embed(z * z) - c) - Cplx(1) / (embed(z) - c);
        CHECK(abs(q1.value - expected) < Real("1e-20"));
        /* the reported error bounds the true error */
        CHECK(abs(q1.value - expected) <= q1.error + Real("1e-55"));

        QuadResult q2 = integrate_arc(inv_square(c), arc, tol);
        CHECK(q1.value.re == q2.value.re);
        CHECK(q1.value.im == q2.value.im);
        CHECK(q1.evaluations == q2.evaluations);
    }
}

TEST_CASE("orientation reversal negates arc integrals") {
    FieldPtr F = cyclotomic_field();
    FieldElement z = FieldElement::generator(F);
    Arc arc = membrane_arcs(
        ratf({-z, FieldElement(1)}, {-(z * z), FieldElement(1)}))[0];
    Arc rev = arc.reverse();
    CHECK_FALSE(arc.reversed());
    CHECK(rev.reversed());
    CHECK_FALSE(rev.reverse().reversed());

    /* the reversed parametrization mirrors s <-> 1-s */
    CHECK(abs(rev.point(Real(1) / 4) - arc.point(Real(3) / 4)) < Real("1e-55"));

    auto form = [](const Cplx& t, const Real&) -> Cplx { return t; };
    QuadResult a = integrate_arc(form, arc, Real("1e-25"));
    QuadResult b = integrate_arc(form, rev, Real("1e-25"));
    REQUIRE(a.converged);
    REQUIRE(b.converged);
    CHECK(abs(a.value + b.value) < Real("1e-22"));
    /* antiderivative t^2/2 between the ends, using z^4 = z */
    FieldElement ee = (z * z - z) / FieldElement(2);
    CHECK(abs(a.value - embed(ee)) < Real("1e-22"));
}

TEST_CASE("interval membrane integrates log(1-t)/t to zeta(2)") {
    Arc arc = membrane_arcs(ratf({FieldElement(0), FieldElement(1)},
                                 {FieldElement(-1), FieldElement(1)}))[0];
    /* On this arc 1 - t = t/r exactly, so the singular factor is computed
     * from the level and stays accurate where 1 - t would underflow. */
    auto form = [](const Cplx& t, const Real& r) -> Cplx {
        return (plog(t) - Cplx(log(r))) / t;
    };
    QuadResult q = integrate_arc(form, arc, Real("1e-20"));
    REQUIRE(q.converged);
    CHECK(abs(q.value.re - zeta2()) < Real("1e-18"));
    CHECK(abs(q.value.im) < Real("1e-18"));

    QuadResult r = integrate_arc(form, arc.reverse(), Real("1e-20"));
    REQUIRE(r.converged);
    CHECK(abs(r.value.re + zeta2()) < Real("1e-18"));
}

TEST_CASE("ray membranes integrate to the dilogarithm") {
    auto dilog_form = [](const Cplx& t, const Real&) -> Cplx {
        return plog(Cplx(1) - Cplx(1) / t) * (-(Cplx(1) / t));
    };

    SECTION("real parameter 1/2") {
        Arc arc = membrane_arcs(ratf(
            {FieldElement(1)}, {FieldElement(1), FieldElement(Rational(-1, 2))}))[0];
        QuadResult q = integrate_arc(dilog_form, arc, Real("1e-25"));
        REQUIRE(q.converged);
        CHECK(abs(q.value - li2(Cplx(Real(1) / 2))) < Real("1e-22"));
    }

    SECTION("real parameter -3") {
        Arc arc = membrane_arcs(
            ratf({FieldElement(1)}, {FieldElement(1), FieldElement(3)}))[0];
        QuadResult q = integrate_arc(dilog_form, arc, Real("1e-25"));
        REQUIRE(q.converged);
        CHECK(abs(q.value - li2(Cplx(-3))) < Real("1e-22"));
    }

    SECTION("complex parameter (1+i)/3") {
        FieldPtr F = gaussian_field();
        FieldElement alpha =
            (FieldElement(1) + FieldElement::generator(F)) / FieldElement(3);
        Arc arc =
            membrane_arcs(ratf({FieldElement(1)}, {FieldElement(1), -alpha}))[0];
        QuadResult q = integrate_arc(dilog_form, arc, Real("1e-25"));
        REQUIRE(q.converged);
        CHECK(abs(q.value - li2(embed(alpha))) < Real("1e-22"));
    }
}

TEST_CASE("transverse arc crossings carry determinant signs") {
    Arc seg = membrane_arcs(ratf({FieldElement(0), FieldElement(1)},
                                 {FieldElement(-1), FieldElement(1)}))[0];
    FieldPtr F = gaussian_field();
    FieldElement iu = FieldElement::generator(F);
    FieldElement c = (FieldElement(1) + iu) / FieldElement(2);
    FieldElement cbar = (FieldElement(1) - iu) / FieldElement(2);
    Arc vert =
        membrane_arcs(ratf({-c, FieldElement(1)}, {-cbar, FieldElement(1)}))[0];

    std::vector<ArcCrossing> x = arc_pair_intersections(seg, vert);
    REQUIRE(x.size() == 1);
    CHECK(abs(x[0].location - Cplx(Real(1) / 2)) < Real("1e-40"));
    CHECK(x[0].sign == -1);

    std::vector<ArcCrossing> y = arc_pair_intersections(vert, seg);
    REQUIRE(y.size() == 1);
    CHECK(abs(y[0].location - Cplx(Real(1) / 2)) < Real("1e-40"));
    CHECK(y[0].sign == 1);

    std::vector<ArcCrossing> zr = arc_pair_intersections(seg.reverse(), vert);
    REQUIRE(zr.size() == 1);
    CHECK(zr[0].sign == 1);

    std::vector<ArcCrossing> w =
        arc_pair_intersections(seg.reverse(), vert.reverse());
    REQUIRE(w.size() == 1);
    CHECK(w[0].sign == -1);
}

TEST_CASE("disjoint arcs yield no crossings") {
    FieldPtr F = gaussian_field();
    FieldElement alpha = FieldElement(2) + FieldElement::generator(F);
    Arc ray = membrane_arcs(ratf({FieldElement(1)}, {FieldElement(1), -alpha}))[0];
    Arc seg = membrane_arcs(ratf({FieldElement(-1), FieldElement(1)},
                                 {FieldElement(0), FieldElement(1)}))[0];
    CHECK(arc_pair_intersections(ray, seg).empty());
    CHECK(arc_pair_intersections(seg, ray).empty());

    /* distinct branches of one membrane are disjoint, not overlapping */
    RatFunc cube(Poly::monomial(FieldElement(1), 3),
                 Poly::constant(FieldElement(1)));
    std::vector<Arc> rays = membrane_arcs(cube);
    CHECK(arc_pair_intersections(rays[0], rays[1]).empty());
    CHECK(arc_pair_intersections(rays[0], rays[2]).empty());
    CHECK(arc_pair_intersections(rays[1], rays[2]).empty());
}

TEST_CASE("overlapping arcs are rejected as non-transverse") {
    Arc seg = membrane_arcs(ratf({FieldElement(0), FieldElement(1)},
                                 {FieldElement(-1), FieldElement(1)}))[0];
    CHECK_THROWS_AS(arc_pair_intersections(seg, seg), std::domain_error);
    CHECK_THROWS_AS(arc_pair_intersections(seg, seg.reverse()),
                    std::domain_error);

    /* a membrane nested inside another one */
    Arc inner = membrane_arcs(ratf({FieldElement(Rational(-1, 4)), FieldElement(1)},
                                   {FieldElement(Rational(-3, 4)), FieldElement(1)}))[0];
    CHECK_THROWS_AS(arc_pair_intersections(seg, inner), std::domain_error);
    CHECK_THROWS_AS(arc_pair_intersections(inner, seg), std::domain_error);
}

TEST_CASE("membrane construction failures") {
    RatFunc tfun(Poly::monomial(FieldElement(1), 1),
                 Poly::constant(FieldElement(1)));

    CHECK_THROWS_AS(membrane_arcs(RatFunc::constant(FieldElement(5))),
                    std::invalid_argument);
    CHECK_THROWS_AS(membrane_arcs(RatFunc()), std::invalid_argument);
    CHECK_THROWS_AS(membrane_arcs(RatFunc(Poly::monomial(FieldElement(1), 4),
                                          Poly::constant(FieldElement(1)))),
                    std::invalid_argument);
    CHECK_THROWS_AS(membrane_arcs(tfun, 0), std::invalid_argument);
    CHECK_THROWS_AS(membrane_arcs(tfun, 7), std::invalid_argument);

    /* the value at infinity is negative: the membrane leaves the chart */
    RatFunc through_inf(Poly({FieldElement(-2), FieldElement(0), FieldElement(1)}),
                        Poly({FieldElement(1), FieldElement(0), FieldElement(-1)}));
    CHECK_THROWS_AS(membrane_arcs(through_inf), std::runtime_error);

    /* a critical value on the negative axis collides two branches */
    RatFunc pinched(Poly({FieldElement(-2), FieldElement(0), FieldElement(1)}),
                    Poly({FieldElement(1), FieldElement(0), FieldElement(1)}));
    CHECK_THROWS_AS(membrane_arcs(pinched), std::runtime_error);

    /* degree four is fine when explicitly allowed */
    RatFunc quartic(Poly::monomial(FieldElement(1), 4),
                    Poly::constant(FieldElement(1)));
    CHECK(membrane_arcs(quartic, 4).size() == 4);
}

TEST_CASE("arc parameter and level domains") {
    Arc arc = membrane_arcs(RatFunc(Poly::monomial(FieldElement(1), 1),
                                    Poly::constant(FieldElement(1))))[0];
    CHECK_THROWS_AS(arc.point(Real(0)), std::domain_error);
    CHECK_THROWS_AS(arc.point(Real(1)), std::domain_error);
    CHECK_THROWS_AS(arc.point(Real(-1)), std::domain_error);
    CHECK_THROWS_AS(arc.velocity(Real(0)), std::domain_error);
    CHECK_THROWS_AS(arc.point_for_ratio(Real(0)), std::domain_error);
    CHECK_THROWS_AS(arc.point_for_ratio(Real(-2)), std::domain_error);
    CHECK_THROWS_AS(arc.sample_ratio(arc.sample_count()), std::out_of_range);
}

TEST_CASE("the zero integrand integrates to exactly zero") {
    Arc arc = membrane_arcs(RatFunc(Poly::monomial(FieldElement(1), 1),
                                    Poly::constant(FieldElement(1))))[0];
    QuadResult q = integrate_arc(
        [](const Cplx&, const Real&) -> Cplx { return Cplx(0); }, arc,
        Real("1e-20"));
    CHECK(q.converged);
    CHECK(q.value.is_zero());
    CHECK(q.error.is_zero());
}

TEST_CASE("windowed arc integrals add up to the full integral") {
    FieldPtr F = cyclotomic_field();
    FieldElement th = FieldElement::generator(F);
    /* chord membrane of (t - th)/(t - th^2) */
    Arc arc = membrane_arcs(ratf({-th, FieldElement(1)},
                                 {-(th * th), FieldElement(1)}))[0];
    auto form = [](const Cplx& t, const Real&) -> Cplx {
        const Cplx d = t - Cplx(Real(3));
        return Cplx(Real(1)) / (d * d);
    };
    const Real tol("1e-40");
    QuadResult whole = integrate_arc(form, arc, tol);
    QuadResult a = integrate_arc_between(form, arc, Real(0), Real(1) / 3, tol);
    QuadResult b = integrate_arc_between(form, arc, Real(1) / 3, Real(3) / 4, tol);
    QuadResult c = integrate_arc_between(form, arc, Real(3) / 4, Real(1), tol);
    REQUIRE(whole.converged);
    REQUIRE(a.converged);
    REQUIRE(b.converged);
    REQUIRE(c.converged);
    const Real gap = abs(a.value + b.value + c.value - whole.value);
    CHECK(gap <= a.error + b.error + c.error + whole.error + Real("1e-50"));

    /* the same windows on the reversed arc negate */
    Arc rev = arc.reverse();
    QuadResult br = integrate_arc_between(form, rev, Real(1) / 4,
                                          Real(2) / 3, tol);
    CHECK(abs(br.value + b.value) <= br.error + b.error + Real("1e-50"));

    /* malformed windows are rejected */
    CHECK_THROWS_AS(integrate_arc_between(form, arc, Real(-1), Real(1), tol),
                    std::domain_error);
    CHECK_THROWS_AS(integrate_arc_between(form, arc, Real(0), Real(2), tol),
                    std::domain_error);
    CHECK_THROWS_AS(
        integrate_arc_between(form, arc, Real(1) / 2, Real(1) / 2, tol),
        std::domain_error);
    CHECK_THROWS_AS(
        integrate_arc_between(form, arc, Real(2) / 3, Real(1) / 3, tol),
        std::domain_error);
}

#include "reg/reciprocity.hpp"

#include "reg/specfun.hpp"

#include <cstdlib>
#include <future>
#include <stdexcept>
#include <utility>

namespace reg {

namespace {

/* ---- exact divisor data of a rational function on P^1 ---- */

/* integer power of a nonzero field element (negative exponents invert) */
FieldElement fe_pow(const FieldElement& x, long n) {
    if (n == 0) return FieldElement(1);
    const FieldElement base = n > 0 ? x : x.inverse();
    FieldElement out(1);
    for (long i = 0, e = std::labs(n); i < e; ++i) out *= base;
    return out;
}

/* All roots of p as exact field elements with multiplicities; throws
 * std::domain_error when some root does not lie in the coefficient
 * field. */
std::vector<std::pair<FieldElement, int>> split_roots(const Poly& p) {
    std::vector<std::pair<FieldElement, int>> out;
    if (p.degree() <= 0) return out;
    for (const PolyRoot& r : field_poly_roots(p)) {
        if (!r.exact)
            throw std::domain_error(
                "tame_symbol: divisor does not split over the coefficient "
                "field");
        out.emplace_back(*r.exact, r.multiplicity);
    }
    return out;
}

struct SplitDivisor {
    /* finite zeros (order > 0) and poles (order < 0); numerator and
     * denominator are coprime, so each location appears once */
    std::vector<std::pair<FieldElement, int>> points;
    long inf_order = 0;         /* deg(den) - deg(num) */
    FieldElement leading_ratio; /* lc(num) / lc(den) */
};

SplitDivisor split_divisor(const RatFunc& f) {
    if (f.is_zero())
        throw std::domain_error("tame_symbol: the zero function has no "
                                "divisor");
    SplitDivisor d;
    for (auto& [loc, m] : split_roots(f.num())) d.points.emplace_back(loc, m);
    for (auto& [loc, m] : split_roots(f.den())) d.points.emplace_back(loc, -m);
    d.inf_order = static_cast<long>(f.den().degree()) - f.num().degree();
    d.leading_ratio = f.num().leading() / f.den().leading();
    return d;
}

long order_at(const SplitDivisor& d, const FieldElement& a) {
    for (const auto& [loc, m] : d.points)
        if (loc == a) return m;
    return 0;
}

/* Value at a of f with the factor (t - a)^ord divided out: the order must
 * be the exact vanishing order, so the result is finite and nonzero. */
FieldElement stripped_value(const RatFunc& f, const FieldElement& a,
                            long ord) {
    const Poly lin({-a, FieldElement(1)});
    Poly num = f.num(), den = f.den();
    for (long i = 0; i < ord; ++i) num = num / lin;
    for (long i = 0; i < -ord; ++i) den = den / lin;
    return num(a) / den(a);
}

FieldElement tame_value_finite(const RatFunc& f, const SplitDivisor& df,
                               const RatFunc& g, const SplitDivisor& dg,
                               const FieldElement& a) {
    const long m = order_at(df, a);
    const long n = order_at(dg, a);
    const FieldElement uf = stripped_value(f, a, m);
    const FieldElement ug = stripped_value(g, a, n);
    FieldElement out = fe_pow(uf, n) / fe_pow(ug, m);
    if ((m * n) % 2 != 0) out = -out;
    return out;
}

FieldElement tame_value_infinity(const SplitDivisor& df,
                                 const SplitDivisor& dg) {
    const long m = df.inf_order;
    const long n = dg.inf_order;
    FieldElement out =
        fe_pow(df.leading_ratio, n) / fe_pow(dg.leading_ratio, m);
    if ((m * n) % 2 != 0) out = -out;
    return out;
}

/* ---- line integral terms ---- */

/* One coordinate-deletion line integral: the closed form when the
 * configuration check passes, tanh-sinh quadrature otherwise. */
Cplx line_term(const ExactMatrix& m, const Real& tol) {
    if (s3_line_closed_form_applies(m)) return s3_line_closed_form(m);
    return s3_line_quadrature(m, tol);
}

/* Evaluate one term per matrix concurrently; results are collected (and
 * any exception rethrown) in index order, so sums built from them are
 * deterministic. */
std::vector<Cplx> parallel_line_terms(const std::vector<ExactMatrix>& ms,
                                      const Real& tol) {
    const unsigned digits = working_digits();
    std::vector<std::future<Cplx>> futs;
    futs.reserve(ms.size());
    for (const ExactMatrix& m : ms)
        futs.push_back(std::async(std::launch::async, [&m, &tol, digits]() {
            set_working_digits(digits);
            return line_term(m, tol);
        }));
    std::vector<Cplx> out;
    out.reserve(futs.size());
    for (auto& f : futs) out.push_back(f.get());
    return out;
}

void check_two_rows(const ExactMatrix& m, std::size_t cols,
                    const char* where) {
    if (m.rows() != 2 || m.cols() != cols)
        throw std::domain_error(std::string(where) +
                                ": matrix must have 2 rows and " +
                                std::to_string(cols) + " columns");
}

} // namespace

/* ------------------------------------------------------------------ */
/* tame symbols                                                        */

TameValue tame_symbol(const RatFunc& f, const RatFunc& g, const ProjPoint& p) {
    if (p.dimension() != 1)
        throw std::domain_error("tame_symbol: the point must lie on P^1");
    const SplitDivisor df = split_divisor(f);
    const SplitDivisor dg = split_divisor(g);
    if (p.coords()[0].is_zero())
        return TameValue{tame_value_infinity(df, dg)};
    const FieldElement a = p.coords()[1] / p.coords()[0];
    return TameValue{tame_value_finite(f, df, g, dg, a)};
}

TameValue weil_product(const RatFunc& f, const RatFunc& g) {
    const SplitDivisor df = split_divisor(f);
    const SplitDivisor dg = split_divisor(g);

    /* union of the finite supports, each location once */
    std::vector<FieldElement> support;
    const auto add = [&support](const FieldElement& a) {
        for (const FieldElement& b : support)
            if (b == a) return;
        support.push_back(a);
    };
    for (const auto& [loc, m] : df.points) add(loc);
    for (const auto& [loc, m] : dg.points) add(loc);

    FieldElement prod = tame_value_infinity(df, dg);
    for (const FieldElement& a : support)
        prod *= tame_value_finite(f, df, g, dg, a);
    return TameValue{prod};
}

/* ------------------------------------------------------------------ */
/* additive log cocycle                                                */

int log_cocycle_level(const Cplx& x, const Cplx& y) {
    const Cplx s = plog(x) - plog(y) + plog(y / x);
    const Real m = floor(s.im / const_two_pi() + Real(1) / 2);
    return static_cast<int>(m.convert_to<long>());
}

/* ------------------------------------------------------------------ */
/* pointwise correction values                                         */

LevelValue s_alt0_and_xi0(const ProjPoint& p) {
    if (p.dimension() != 3)
        throw std::domain_error("s_alt0_and_xi0: the point must lie on P^3");
    const std::vector<FieldElement>& c = p.coords();
    for (std::size_t k = 0; k < 3; ++k)
        if (c[k].is_zero())
            throw std::domain_error(
                "s_alt0_and_xi0: one of the first three coordinates "
                "vanishes");

    /* the ratios are formed exactly, so each embeds at full precision */
    const Cplx s = plog(embed(-(c[2] / c[1]))) - plog(embed(-(c[2] / c[0]))) +
                   plog(embed(-(c[1] / c[0])));
    const Real pi = const_pi();
    const Real q = s.im / pi;
    const Real mr = floor(q + Real(1) / 2);
    const Real slack("1e-10");
    if (abs(q - mr) > slack || abs(s.re) > slack * pi ||
        !(abs(mr) == 1))
        throw std::domain_error(
            "s_alt0_and_xi0: alternating log level is not +-1 (degenerate "
            "coordinates)");
    const int m = static_cast<int>(mr.convert_to<long>());

    LevelValue out;
    out.level = m;
    out.value = Cplx(Real(0), pi * m) * plog(embed(-(c[3] / c[2])));
    return out;
}

Cplx k_correction(const ExactMatrix& m) {
    check_two_rows(m, 5, "k_correction");
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = i + 1; j < 5; ++j)
            if (minor(m, i, j).is_zero())
                throw std::domain_error("k_correction: a 2x2 minor vanishes");

    Cplx total(0);
    int sign = 1;
    for (std::size_t j = 0; j < 5; ++j, sign = -sign) {
        std::vector<FieldElement> coords;
        coords.reserve(4);
        for (std::size_t k = 0; k < 5; ++k)
            if (k != j) coords.push_back(minor(m, j, k));
        const LevelValue lv = s_alt0_and_xi0(ProjPoint(std::move(coords)));
        total += sign > 0 ? lv.value : -lv.value;
    }
    return total;
}

/* ------------------------------------------------------------------ */
/* residue laws                                                        */

std::vector<ExactMatrix> plane_sections(const ExactMatrix& plane) {
    if (plane.rows() != 3 || plane.cols() != 5)
        throw std::domain_error(
            "plane_sections: matrix must have 3 rows and 5 columns");
    if (plane.rank() != 3)
        throw std::domain_error("plane_sections: rows are dependent");

    std::vector<ExactMatrix> out;
    out.reserve(5);
    for (std::size_t j = 0; j < 5; ++j) {
        std::size_t pivot = 3;
        for (std::size_t i = 0; i < 3; ++i)
            if (!plane.at(i, j).is_zero()) {
                pivot = i;
                break;
            }
        if (pivot == 3)
            throw std::domain_error(
                "plane_sections: the plane lies inside a coordinate "
                "hyperplane");
        ExactMatrix sec(2, 4);
        std::size_t row = 0;
        for (std::size_t i = 0; i < 3; ++i) {
            if (i == pivot) continue;
            const FieldElement factor = plane.at(i, j) / plane.at(pivot, j);
            std::size_t col = 0;
            for (std::size_t k = 0; k < 5; ++k) {
                if (k == j) continue;
                sec.at(row, col) =
                    plane.at(i, k) - factor * plane.at(pivot, k);
                ++col;
            }
            ++row;
        }
        out.push_back(std::move(sec));
    }
    return out;
}

LatticeResidue law_a_residue(const ExactMatrix& m, const Real& tol) {
    if (m.rows() == 2 && m.cols() == 3) {
        /* the three coordinate points of a line in P^2 carry the
         * single-log kernel; their alternating sum is a full lattice
         * point */
        const FieldElement m01 = minor(m, 0, 1);
        const FieldElement m02 = minor(m, 0, 2);
        const FieldElement m12 = minor(m, 1, 2);
        if (m01.is_zero() || m02.is_zero() || m12.is_zero())
            throw std::domain_error("law_a_residue: a 2x2 minor vanishes");
        const Cplx x = embed(-(m02 / m01));
        const Cplx y = embed(m12 / m01);
        const Cplx value = plog(x) - plog(y) + plog(y / x);
        return reduce_mod_lattice(value, lattice_generator(1));
    }

    if (m.rows() == 3 && m.cols() == 5) {
        const std::vector<Cplx> terms =
            parallel_line_terms(plane_sections(m), tol);
        Cplx total(0);
        int sign = 1;
        for (const Cplx& t : terms) {
            total += sign > 0 ? t : -t;
            sign = -sign;
        }
        return reduce_mod_lattice(total, lattice_generator(2));
    }

    throw std::domain_error(
        "law_a_residue: expected a 2x3 line matrix or a 3x5 plane matrix");
}

LatticeResidue law_b_residue(const ExactMatrix& m, const Real& tol) {
    check_two_rows(m, 5, "law_b_residue");
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = i + 1; j < 5; ++j)
            if (minor(m, i, j).is_zero())
                throw std::domain_error(
                    "law_b_residue: a 2x2 minor vanishes");

    std::vector<ExactMatrix> deletions;
    deletions.reserve(5);
    for (std::size_t j = 0; j < 5; ++j) {
        ExactMatrix del(2, 4);
        std::size_t col = 0;
        for (std::size_t k = 0; k < 5; ++k) {
            if (k == j) continue;
            del.at(0, col) = m.at(0, k);
            del.at(1, col) = m.at(1, k);
            ++col;
        }
        deletions.push_back(std::move(del));
    }

    const std::vector<Cplx> terms = parallel_line_terms(deletions, tol);
    Cplx total = k_correction(m);
    int sign = 1;
    for (const Cplx& t : terms) {
        total += sign > 0 ? t : -t;
        sign = -sign;
    }
    const Cplx half_gen = lattice_generator(2) / Real(2);
    return reduce_mod_lattice(total, half_gen);
}

} // namespace reg

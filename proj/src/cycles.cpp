#include "reg/cycles.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>

namespace reg {

namespace {

/* lift an element into the given field (no-op when already there) */
FieldElement lift_to(const FieldElement& c, const FieldPtr& f) {
    return FieldElement(f, {Rational(0)}) + c;
}

Poly lift_poly(const Poly& p, const FieldPtr& f) {
    if (p.is_zero() || f->degree() <= 1) return p;
    std::vector<FieldElement> out;
    out.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) out.push_back(lift_to(c, f));
    return Poly(std::move(out));
}

/* the widest coefficient field appearing in the polynomials */
FieldPtr common_field(const std::vector<Poly>& ps) {
    FieldPtr f = NumberField::rationals();
    for (const auto& p : ps)
        for (const auto& c : p.coeffs()) {
            if (c.field()->degree() <= 1) continue;
            if (f->degree() <= 1)
                f = c.field();
            else if (!f->same_as(*c.field()))
                throw std::invalid_argument(
                    "CurveCycle: coefficients from incompatible fields");
        }
    return f;
}

} // namespace

/* ------------------------------------------------------------------ */
/*  CurveCycle                                                         */
/* ------------------------------------------------------------------ */

CurveCycle::CurveCycle(std::vector<Poly> components, Rational multiplicity)
    : components_(std::move(components)), multiplicity_(std::move(multiplicity)) {
    if (components_.size() < 2)
        throw std::invalid_argument("CurveCycle: need at least two coordinate forms");
    field_ = common_field(components_);
    for (auto& p : components_) p = lift_poly(p, field_);

    degree_ = -1;
    for (const auto& p : components_)
        degree_ = std::max(degree_, static_cast<long>(p.degree()));
    if (degree_ < 0)
        throw std::invalid_argument("CurveCycle: all coordinate forms vanish");

    Poly g;
    bool started = false;
    for (const auto& p : components_) {
        if (p.is_zero()) continue;
        g = started ? gcd(g, p) : p.monic();
        started = true;
    }
    if (g.degree() > 0)
        throw std::invalid_argument("CurveCycle: coordinate forms share a common factor");
}

std::vector<Cplx> CurveCycle::point_at(const Cplx& t) const {
    std::vector<Cplx> out;
    out.reserve(components_.size());
    for (const auto& p : components_) out.push_back(p(t));
    return out;
}

std::vector<Cplx> CurveCycle::point_at_infinity() const {
    std::vector<Cplx> out;
    out.reserve(components_.size());
    for (const auto& p : components_)
        out.push_back(embed(p.coeff(static_cast<std::size_t>(degree_))));
    return out;
}

std::vector<FieldElement> CurveCycle::point_at(const FieldElement& t) const {
    std::vector<FieldElement> out;
    out.reserve(components_.size());
    for (const auto& p : components_) out.push_back(p(t));
    return out;
}

std::vector<FieldElement> CurveCycle::exact_point_at_infinity() const {
    std::vector<FieldElement> out;
    out.reserve(components_.size());
    for (const auto& p : components_)
        out.push_back(p.coeff(static_cast<std::size_t>(degree_)));
    return out;
}

bool CurveCycle::component_vanishes(std::size_t i) const {
    if (i >= components_.size())
        throw std::out_of_range("CurveCycle: component index out of range");
    return components_[i].is_zero();
}

bool CurveCycle::inside_special_hyperplane() const {
    Poly s;
    for (const auto& p : components_) s += p;
    return s.is_zero();
}

/* ------------------------------------------------------------------ */
/*  Text format                                                        */
/* ------------------------------------------------------------------ */

namespace {

struct Token {
    enum Kind { Num, Var, Gen, Plus, Minus, Star, Caret, LParen, RParen, End };
    Kind kind;
    Rational value; /* Num */
    char var = 0;   /* Var */
};

[[noreturn]] void parse_fail(std::size_t lineno, const std::string& what) {
    throw std::invalid_argument("cycle text, line " + std::to_string(lineno) +
                                ": " + what);
}

std::vector<Token> lex_line(const std::string& line, std::size_t lineno) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        char ch = line[i];
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++i;
            continue;
        }
        if (ch == '#') break;
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::size_t j = i;
            while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j])))
                ++j;
            std::string num = line.substr(i, j - i);
            std::string den = "1";
            if (j < line.size() && line[j] == '/' && j + 1 < line.size() &&
                std::isdigit(static_cast<unsigned char>(line[j + 1]))) {
                std::size_t k = ++j;
                while (j < line.size() &&
                       std::isdigit(static_cast<unsigned char>(line[j])))
                    ++j;
                den = line.substr(k, j - k);
            }
            Rational v{boost::multiprecision::mpz_int(num)};
            v /= Rational(boost::multiprecision::mpz_int(den));
            out.push_back({Token::Num, v, 0});
            i = j;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(ch))) {
            std::size_t j = i;
            while (j < line.size() && std::isalpha(static_cast<unsigned char>(line[j])))
                ++j;
            std::string id = line.substr(i, j - i);
            if (id == "th")
                out.push_back({Token::Gen, Rational(0), 0});
            else if (id.size() == 1)
                out.push_back({Token::Var, Rational(0), id[0]});
            else
                parse_fail(lineno, "unknown identifier '" + id + "'");
            i = j;
            continue;
        }
        switch (ch) {
        case '+': out.push_back({Token::Plus, Rational(0), 0}); break;
        case '-': out.push_back({Token::Minus, Rational(0), 0}); break;
        case '*': out.push_back({Token::Star, Rational(0), 0}); break;
        case '^': out.push_back({Token::Caret, Rational(0), 0}); break;
        case '(': out.push_back({Token::LParen, Rational(0), 0}); break;
        case ')': out.push_back({Token::RParen, Rational(0), 0}); break;
        default:
            parse_fail(lineno, std::string("unexpected character '") + ch + "'");
        }
        ++i;
    }
    out.push_back({Token::End, Rational(0), 0});
    return out;
}

/* sparse bivariate polynomial: (exponent of first var, of second) -> coeff */
using BiPoly = std::map<std::pair<long, long>, FieldElement>;

void bi_add(BiPoly& a, const BiPoly& b, bool negate) {
    for (const auto& [key, c] : b) {
        auto it = a.find(key);
        if (it == a.end()) it = a.emplace(key, FieldElement(0L)).first;
        if (negate)
            it->second -= c;
        else
            it->second += c;
        if (it->second.is_zero()) a.erase(it);
    }
}

BiPoly bi_mul(const BiPoly& a, const BiPoly& b) {
    BiPoly out;
    for (const auto& [ka, ca] : a)
        for (const auto& [kb, cb] : b) {
            std::pair<long, long> key{ka.first + kb.first, ka.second + kb.second};
            auto it = out.find(key);
            if (it == out.end()) it = out.emplace(key, FieldElement(0L)).first;
            it->second += ca * cb;
            if (it->second.is_zero()) out.erase(it);
        }
    return out;
}

struct LineParser {
    const std::vector<Token>& toks;
    std::size_t pos = 0;
    std::string vars;  /* allowed variable letters, in slot order */
    FieldPtr field;    /* null when no generator is available */
    std::size_t lineno;

    const Token& peek() const { return toks[pos]; }
    Token take() { return toks[pos++]; }

    [[noreturn]] void fail(const std::string& what) { parse_fail(lineno, what); }

    BiPoly parse_expr() {
        BiPoly acc = parse_term();
        while (peek().kind == Token::Plus || peek().kind == Token::Minus) {
            bool neg = take().kind == Token::Minus;
            bi_add(acc, parse_term(), neg);
        }
        return acc;
    }

    BiPoly parse_term() {
        BiPoly acc = parse_factor();
        while (peek().kind == Token::Star) {
            take();
            acc = bi_mul(acc, parse_factor());
        }
        return acc;
    }

    BiPoly parse_factor() {
        bool neg = false;
        while (peek().kind == Token::Minus || peek().kind == Token::Plus)
            if (take().kind == Token::Minus) neg = !neg;
        BiPoly v = parse_atom();
        if (peek().kind == Token::Caret) {
            take();
            if (peek().kind != Token::Num) fail("exponent must be a number");
            Rational e = take().value;
            if (boost::multiprecision::denominator(e) != 1 || e < 0 || e > 200)
                fail("exponent must be an integer in [0, 200]");
            long k = boost::multiprecision::numerator(e).convert_to<long>();
            BiPoly r{{{0, 0}, FieldElement(1L)}};
            for (long m = 0; m < k; ++m) r = bi_mul(r, v);
            v = std::move(r);
        }
        if (neg) {
            BiPoly z;
            bi_add(z, v, true);
            v = std::move(z);
        }
        return v;
    }

    BiPoly parse_atom() {
        const Token t = take();
        switch (t.kind) {
        case Token::Num:
            if (t.value == 0) return {};
            return {{{0, 0}, FieldElement(t.value)}};
        case Token::Gen:
            if (!field)
                fail("generator 'th' used without a field declaration");
            return {{{0, 0}, FieldElement::generator(field)}};
        case Token::Var: {
            auto slot = vars.find(t.var);
            if (slot == std::string::npos)
                fail(std::string("variable '") + t.var + "' not allowed here");
            return {{{slot == 0 ? 1L : 0L, slot == 0 ? 0L : 1L}, FieldElement(1L)}};
        }
        case Token::LParen: {
            BiPoly inner = parse_expr();
            if (take().kind != Token::RParen) fail("missing ')'");
            return inner;
        }
        default:
            fail("expected a number, variable, or '('");
        }
    }
};

BiPoly parse_line(const std::string& text, std::size_t lineno,
                  const std::string& vars, const FieldPtr& field) {
    std::vector<Token> toks = lex_line(text, lineno);
    LineParser p{toks, 0, vars, field, lineno};
    BiPoly v = p.parse_expr();
    if (p.peek().kind != Token::End) p.fail("trailing input after expression");
    return v;
}

std::string first_word(const std::string& line) {
    std::size_t i = 0;
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && std::isalpha(static_cast<unsigned char>(line[j]))) ++j;
    return line.substr(i, j - i);
}

bool blank_or_comment(const std::string& line) {
    for (char ch : line) {
        if (ch == '#') return true;
        if (!std::isspace(static_cast<unsigned char>(ch))) return false;
    }
    return true;
}

} // namespace

CurveCycle parse_curve_cycle(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    FieldPtr field;
    bool have_mult = false;
    Rational mult(1);
    std::vector<std::pair<BiPoly, std::size_t>> polys; /* with line numbers */

    while (std::getline(in, line)) {
        ++lineno;
        if (blank_or_comment(line)) continue;
        std::string word = first_word(line);
        std::size_t rest_at = line.find(word) + word.size();
        if (word == "field") {
            if (field) parse_fail(lineno, "duplicate field declaration");
            if (!polys.empty())
                parse_fail(lineno, "field declaration must precede the forms");
            BiPoly v = parse_line(line.substr(rest_at), lineno, "x", nullptr);
            long deg = -1;
            for (const auto& [key, c] : v) {
                (void)c;
                deg = std::max(deg, key.first);
            }
            if (deg < 2) parse_fail(lineno, "field polynomial must have degree >= 2");
            std::vector<Rational> lower(static_cast<std::size_t>(deg));
            for (const auto& [key, c] : v) {
                if (!c.is_rational())
                    parse_fail(lineno, "field polynomial must have rational coefficients");
                if (key.first == deg) {
                    if (c.rational_value() != 1)
                        parse_fail(lineno, "field polynomial must be monic");
                } else {
                    lower[static_cast<std::size_t>(key.first)] = c.rational_value();
                }
            }
            field = NumberField::extension(std::move(lower));
            continue;
        }
        if (word == "multiplicity") {
            if (have_mult) parse_fail(lineno, "duplicate multiplicity declaration");
            BiPoly v = parse_line(line.substr(rest_at), lineno, "", field);
            if (v.size() > 1 || (v.size() == 1 && v.begin()->first != std::pair<long, long>{0, 0}))
                parse_fail(lineno, "multiplicity must be a rational constant");
            FieldElement c = v.empty() ? FieldElement(0L) : v.begin()->second;
            if (!c.is_rational())
                parse_fail(lineno, "multiplicity must be a rational constant");
            mult = c.rational_value();
            have_mult = true;
            continue;
        }
        polys.emplace_back(parse_line(line, lineno, "ZW", field), lineno);
    }

    if (polys.size() < 2)
        throw std::invalid_argument("cycle text: need at least two coordinate forms");

    long d = -1;
    for (const auto& [v, ln] : polys) {
        long line_deg = -1;
        for (const auto& [key, c] : v) {
            (void)c;
            long total = key.first + key.second;
            if (line_deg >= 0 && total != line_deg)
                parse_fail(ln, "inhomogeneous polynomial");
            line_deg = total;
        }
        if (line_deg < 0) continue; /* zero form */
        if (d >= 0 && line_deg != d)
            parse_fail(ln, "coordinate forms have different degrees");
        d = line_deg;
    }
    if (d < 0) throw std::invalid_argument("cycle text: all coordinate forms vanish");

    std::vector<Poly> components;
    components.reserve(polys.size());
    for (const auto& [v, ln] : polys) {
        (void)ln;
        std::vector<FieldElement> coeffs(static_cast<std::size_t>(d) + 1,
                                         FieldElement(0L));
        for (const auto& [key, c] : v)
            coeffs[static_cast<std::size_t>(key.first)] = c;
        components.emplace_back(std::move(coeffs));
    }
    return CurveCycle(std::move(components), std::move(mult));
}

namespace {

std::string rational_text(const Rational& r) { return r.str(); }

/* coefficient text for a non-rational field element, parenthesized */
std::string field_coeff_text(const FieldElement& c) {
    const auto& v = c.coords();
    std::string out = "(";
    bool first = true;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (v[k] == 0) continue;
        Rational mag = abs(v[k]);
        std::string piece;
        if (k == 0) {
            piece = mag.str();
        } else {
            if (mag != 1) piece = mag.str() + "*";
            piece += "th";
            if (k > 1) piece += "^" + std::to_string(k);
        }
        if (first)
            out += (v[k] < 0 ? "-" : "") + piece;
        else
            out += (v[k] < 0 ? " - " : " + ") + piece;
        first = false;
    }
    return out + ")";
}

std::string monomial_text(long a, long b) {
    std::string out;
    if (a > 0) out += a == 1 ? "Z" : "Z^" + std::to_string(a);
    if (b > 0) {
        if (!out.empty()) out += "*";
        out += b == 1 ? "W" : "W^" + std::to_string(b);
    }
    return out;
}

} // namespace

std::string to_text(const CurveCycle& c) {
    std::string out;
    if (c.field()->degree() >= 2) {
        const auto& lo = c.field()->defining_lower();
        out += "field x^" + std::to_string(lo.size());
        for (std::size_t k = lo.size(); k-- > 0;) {
            if (lo[k] == 0) continue;
            Rational mag = abs(lo[k]);
            out += lo[k] > 0 ? " + " : " - ";
            if (k == 0)
                out += mag.str();
            else {
                if (mag != 1) out += mag.str() + "*";
                out += k == 1 ? "x" : "x^" + std::to_string(k);
            }
        }
        out += "\n";
    }
    if (c.multiplicity() != 1)
        out += "multiplicity " + rational_text(c.multiplicity()) + "\n";

    const long d = c.degree();
    for (const auto& p : c.components()) {
        if (p.is_zero()) {
            out += "0\n";
            continue;
        }
        std::string lineout;
        bool first = true;
        for (long a = d; a >= 0; --a) {
            const FieldElement& cf = p.coeff(static_cast<std::size_t>(a));
            if (cf.is_zero()) continue;
            std::string mono = monomial_text(a, d - a);
            std::string piece;
            bool negative = false;
            if (cf.is_rational()) {
                Rational r = cf.rational_value();
                negative = r < 0;
                Rational mag = abs(r);
                if (mag == 1 && !mono.empty())
                    piece = mono;
                else
                    piece = mag.str() + (mono.empty() ? "" : "*" + mono);
            } else {
                piece = field_coeff_text(cf) + (mono.empty() ? "" : "*" + mono);
            }
            if (first)
                lineout += (negative ? "-" : "") + piece;
            else
                lineout += (negative ? " - " : " + ") + piece;
            first = false;
        }
        out += lineout + "\n";
    }
    return out;
}

/* ------------------------------------------------------------------ */
/*  LinearCycle                                                        */
/* ------------------------------------------------------------------ */

LinearCycle::LinearCycle(ExactMatrix m) : m_(std::move(m)) {
    if (m_.rows() > m_.cols())
        throw std::invalid_argument("LinearCycle: more rows than columns");
    if (m_.rank() != m_.rows())
        throw std::invalid_argument("LinearCycle: rows are linearly dependent");
}

std::size_t LinearCycle::sub_dim() const { return m_.rows() - 1; }
std::size_t LinearCycle::ambient_dim() const { return m_.cols() - 1; }

bool LinearCycle::operator==(const LinearCycle& o) const {
    if (m_.rows() != o.m_.rows() || m_.cols() != o.m_.cols()) return false;
    ExactMatrix a = m_.rref(), b = o.m_.rref();
    for (std::size_t i = 0; i < m_.rows(); ++i)
        for (std::size_t j = 0; j < m_.cols(); ++j)
            if (a.at(i, j) != b.at(i, j)) return false;
    return true;
}

bool LinearCycle::inside_special_hyperplane() const {
    for (std::size_t i = 0; i < m_.rows(); ++i) {
        FieldElement s(0L);
        for (std::size_t j = 0; j < m_.cols(); ++j) s += m_.at(i, j);
        if (!s.is_zero()) return false;
    }
    return true;
}

bool LinearCycle::inside_coordinate_hyperplane(std::size_t j) const {
    if (j >= m_.cols())
        throw std::out_of_range("LinearCycle: coordinate index out of range");
    for (std::size_t i = 0; i < m_.rows(); ++i)
        if (!m_.at(i, j).is_zero()) return false;
    return true;
}

LinearCycle face_restrict_linear(const LinearCycle& l, std::size_t j) {
    const ExactMatrix& m = l.matrix();
    if (j >= m.cols())
        throw std::out_of_range("face_restrict_linear: index out of range");
    if (l.inside_coordinate_hyperplane(j))
        throw std::domain_error(
            "face_restrict_linear: row space lies inside the coordinate hyperplane");
    if (m.rows() == 1)
        throw std::domain_error(
            "face_restrict_linear: a point cycle meets the hyperplane in nothing");

    std::size_t r = 0;
    while (m.at(r, j).is_zero()) ++r;
    FieldElement pivot_inv = m.at(r, j).inverse();

    std::vector<std::vector<FieldElement>> rows;
    rows.reserve(m.rows() - 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i == r) continue;
        FieldElement factor = m.at(i, j) * pivot_inv;
        std::vector<FieldElement> row;
        row.reserve(m.cols() - 1);
        for (std::size_t k = 0; k < m.cols(); ++k) {
            if (k == j) continue;
            row.push_back(m.at(i, k) - factor * m.at(r, k));
        }
        rows.push_back(std::move(row));
    }
    return LinearCycle(ExactMatrix::from_rows(std::move(rows)));
}

void LinearChain::add(const Rational& coeff, const LinearCycle& term) {
    if (coeff == 0) return;
    for (auto it = terms_.begin(); it != terms_.end(); ++it) {
        if (it->second == term) {
            it->first += coeff;
            if (it->first == 0) terms_.erase(it);
            return;
        }
    }
    terms_.emplace_back(coeff, term);
}

LinearChain& LinearChain::operator+=(const LinearChain& o) {
    for (const auto& [coeff, term] : o.terms_) add(coeff, term);
    return *this;
}

LinearChain linear_boundary(const LinearCycle& l) {
    LinearChain out;
    for (std::size_t j = 0; j < l.matrix().cols(); ++j) {
        LinearCycle face = face_restrict_linear(l, j);
        if (face.inside_special_hyperplane()) continue;
        out.add(Rational(j % 2 == 0 ? 1 : -1), face);
    }
    return out;
}

LinearChain linear_boundary(const LinearChain& chain) {
    LinearChain out;
    for (const auto& [coeff, term] : chain.terms()) {
        LinearChain part = linear_boundary(term);
        for (const auto& [c2, t2] : part.terms()) out.add(coeff * c2, t2);
    }
    return out;
}

/* ------------------------------------------------------------------ */
/*  Curve boundaries                                                   */
/* ------------------------------------------------------------------ */

Real point_merge_tolerance() {
    return pow(Real(10), -static_cast<long>(working_digits() / 2));
}

bool same_boundary_point(const BoundaryPoint& a, const BoundaryPoint& b,
                         const Real& tol) {
    if (a.approx.size() != b.approx.size()) return false;
    if (a.exact && b.exact) return *a.exact == *b.exact;
    std::size_t idx = 0;
    Real best(0);
    for (std::size_t k = 0; k < a.approx.size(); ++k) {
        Real m = abs(a.approx[k]);
        if (m > best) {
            best = m;
            idx = k;
        }
    }
    if (best.is_zero()) return false;
    Real other_best(0);
    for (const auto& z : b.approx) other_best = (std::max)(other_best, abs(z));
    if (abs(b.approx[idx]) < tol * other_best) return false;
    Cplx sa = a.approx[idx], sb = b.approx[idx];
    for (std::size_t k = 0; k < a.approx.size(); ++k)
        if (abs(a.approx[k] / sa - b.approx[k] / sb) > tol) return false;
    return true;
}

void BoundaryChain::add(const Rational& coeff, BoundaryPoint p) {
    if (coeff == 0) return;
    Real tol = point_merge_tolerance();
    for (auto it = terms_.begin(); it != terms_.end(); ++it) {
        if (same_boundary_point(it->second, p, tol)) {
            it->first += coeff;
            if (!it->second.exact && p.exact) it->second.exact = std::move(p.exact);
            if (it->first == 0) terms_.erase(it);
            return;
        }
    }
    terms_.emplace_back(coeff, std::move(p));
}

BoundaryChain& BoundaryChain::operator+=(const BoundaryChain& o) {
    for (const auto& [coeff, term] : o.terms_) add(coeff, term);
    return *this;
}

namespace {

/* image of a curve point in the j-th face: delete slot j; null when the
 * point's coordinate sum vanishes (invisible in the ambient geometry) */
std::optional<BoundaryPoint> face_image_exact(const CurveCycle& c, std::size_t j,
                                              const FieldElement& t) {
    std::vector<FieldElement> full = c.point_at(t);
    FieldElement sum(0L);
    for (const auto& v : full) sum += v;
    if (sum.is_zero()) return std::nullopt;
    std::vector<FieldElement> img;
    img.reserve(full.size() - 1);
    for (std::size_t i = 0; i < full.size(); ++i)
        if (i != j) img.push_back(full[i]);
    BoundaryPoint p;
    p.exact = ProjPoint(std::move(img));
    p.approx = embed(*p.exact);
    return p;
}

std::optional<BoundaryPoint> face_image_numeric(const CurveCycle& c, std::size_t j,
                                                const Cplx& t) {
    std::vector<Cplx> full = c.point_at(t);
    Cplx sum;
    Real scale(1);
    for (const auto& v : full) {
        sum = sum + v;
        scale = (std::max)(scale, abs(v));
    }
    if (abs(sum) < point_merge_tolerance() * scale) return std::nullopt;
    BoundaryPoint p;
    p.approx.reserve(full.size() - 1);
    for (std::size_t i = 0; i < full.size(); ++i)
        if (i != j) p.approx.push_back(full[i]);
    return p;
}

std::optional<BoundaryPoint> face_image_infinity(const CurveCycle& c, std::size_t j) {
    std::vector<FieldElement> full = c.exact_point_at_infinity();
    FieldElement sum(0L);
    for (const auto& v : full) sum += v;
    if (sum.is_zero()) return std::nullopt;
    std::vector<FieldElement> img;
    img.reserve(full.size() - 1);
    for (std::size_t i = 0; i < full.size(); ++i)
        if (i != j) img.push_back(full[i]);
    BoundaryPoint p;
    p.exact = ProjPoint(std::move(img));
    p.approx = embed(*p.exact);
    return p;
}

} // namespace

BoundaryChain bloch_boundary(const CurveCycle& c) {
    for (std::size_t i = 0; i <= c.ambient_dim(); ++i)
        if (c.component_vanishes(i))
            throw std::domain_error(
                "bloch_boundary: curve lies inside a coordinate hyperplane");

    BoundaryChain out;
    const long d = c.degree();
    for (std::size_t j = 0; j <= c.ambient_dim(); ++j) {
        const Poly& pj = c.components()[j];
        Rational sign(j % 2 == 0 ? 1 : -1);
        if (pj.degree() > 0) {
            for (const PolyRoot& r : field_poly_roots(pj)) {
                std::optional<BoundaryPoint> img =
                    r.exact ? face_image_exact(c, j, *r.exact)
                            : face_image_numeric(c, j, r.approx);
                if (img)
                    out.add(sign * Rational(r.multiplicity) * c.multiplicity(),
                            std::move(*img));
            }
        }
        long inf_mult = d - pj.degree();
        if (inf_mult > 0) {
            std::optional<BoundaryPoint> img = face_image_infinity(c, j);
            if (img)
                out.add(sign * Rational(inf_mult) * c.multiplicity(),
                        std::move(*img));
        }
    }
    return out;
}

/* ------------------------------------------------------------------ */
/*  Coordinate functions                                               */
/* ------------------------------------------------------------------ */

std::vector<RatFunc> pullback_simplex_functions(const CurveCycle& c) {
    const auto& ps = c.components();
    const std::size_t n = c.ambient_dim();
    std::vector<RatFunc> out;
    out.reserve(n);
    for (std::size_t j = 1; j <= n; ++j) {
        if (ps[j - 1].is_zero())
            throw std::domain_error(
                "pullback_simplex_functions: curve lies inside a pole divisor");
        Poly num;
        for (std::size_t k = j; k <= n; ++k) num += ps[k];
        out.emplace_back(-num, ps[j - 1]);
    }
    return out;
}

std::vector<Cplx> CubicalCurve::point_at(const Cplx& t) const {
    std::vector<Cplx> out;
    out.reserve(coords.size());
    for (const auto& f : coords) out.push_back(f(t));
    return out;
}

bool cubically_degenerate(const CurveCycle& c) {
    for (const RatFunc& f : pullback_simplex_functions(c))
        if (f.num() == f.den()) return true;
    return false;
}

CubicalCurve simplicial_to_cubical(const CurveCycle& c) {
    CubicalCurve out;
    out.coords = pullback_simplex_functions(c);
    for (const RatFunc& f : out.coords)
        if (f.num() == f.den())
            throw std::domain_error(
                "simplicial_to_cubical: a coordinate function is identically one");
    return out;
}

/* ------------------------------------------------------------------ */
/*  Admissibility                                                      */
/* ------------------------------------------------------------------ */

bool face_admissible(const CurveCycle& c) {
    const auto& ps = c.components();
    const long d = c.degree();
    Poly s;
    for (const auto& p : ps) s += p;

    for (std::size_t i = 0; i < ps.size(); ++i) {
        for (std::size_t j = i + 1; j < ps.size(); ++j) {
            const Poly& a = ps[i];
            const Poly& b = ps[j];
            if (a.is_zero() && b.is_zero()) {
                /* curve inside the codimension-2 subspace itself */
                if (!s.is_zero()) return false;
                continue;
            }
            Poly g = a.is_zero() ? b.monic() : (b.is_zero() ? a.monic() : gcd(a, b));
            if (g.degree() > 0 && !s.is_zero()) {
                Poly rad = squarefree_part(g);
                if (!Poly::divmod(s, rad).second.is_zero()) return false;
            }
            /* shared vanishing at the parameter value at infinity */
            if (a.degree() < d && b.degree() < d &&
                !s.coeff(static_cast<std::size_t>(d)).is_zero())
                return false;
        }
    }
    return true;
}

/* ------------------------------------------------------------------ */
/*  The failure of the naive evaluation current                        */
/* ------------------------------------------------------------------ */

LinearCycle linear_cycle_from_degree_one(const CurveCycle& c) {
    if (c.degree() != 1)
        throw std::domain_error(
            "linear_cycle_from_degree_one: curve must have degree one");
    std::vector<FieldElement> top, bottom;
    for (const auto& p : c.components()) {
        top.push_back(p.coeff(1));
        bottom.push_back(p.coeff(0));
    }
    return LinearCycle(ExactMatrix::from_rows({std::move(top), std::move(bottom)}));
}

GoncharovCounterexample goncharov_counterexample(const FieldElement& a) {
    if (embed(a).im.is_zero())
        throw std::domain_error("goncharov_counterexample: parameter must be non-real");

    const FieldElement one(1L), two(2L);
    Poly p0 = Poly::constant(a - two);
    Poly p1({FieldElement(0L), one});          /* t   */
    Poly p2({two, FieldElement(-2L)});         /* 2 - 2t */
    Poly p3({-a, one});                        /* t - a */
    CurveCycle curve({p0, p1, p2, p3});

    ExactMatrix m(3, 5);
    m.at(0, 0) = one;
    m.at(0, 1) = a - two;
    m.at(0, 2) = FieldElement(-1L);
    m.at(1, 1) = a - two;
    m.at(1, 3) = two;
    m.at(1, 4) = -a;
    m.at(2, 2) = one;
    m.at(2, 3) = FieldElement(-2L);
    m.at(2, 4) = one;
    LinearCycle surface(std::move(m));

    bool inside = curve.inside_special_hyperplane();
    bool matches =
        face_restrict_linear(surface, 0) == linear_cycle_from_degree_one(curve);
    return {std::move(curve), std::move(surface), inside, matches};
}

} // namespace reg

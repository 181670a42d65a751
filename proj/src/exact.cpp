#include <reg/exact.hpp>

#include <mpfr.h>

#include <algorithm>
#include <stdexcept>

namespace reg {

Real to_real(const Rational& q) {
    Real out;
    mpfr_set_q(out.backend().data(), q.backend().data(), MPFR_RNDN);
    return out;
}

/* ---- rational polynomial helpers (low-to-high coefficient vectors) ---- */

namespace {

using RPoly = std::vector<Rational>;

void rtrim(RPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

RPoly rmul(const RPoly& a, const RPoly& b) {
    if (a.empty() || b.empty()) return {};
    RPoly out(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] += a[i] * b[j];
    rtrim(out);
    return out;
}

RPoly rsub(RPoly a, const RPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), Rational(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    rtrim(a);
    return a;
}

/* a <- a mod b, returns the quotient; b nonzero and trimmed */
RPoly rdivmod(RPoly& a, const RPoly& b) {
    RPoly q;
    if (a.size() < b.size()) return q;
    q.assign(a.size() - b.size() + 1, Rational(0));
    const Rational& lead = b.back();
    while (a.size() >= b.size()) {
        Rational c = a.back() / lead;
        std::size_t shift = a.size() - b.size();
        q[shift] = c;
        for (std::size_t j = 0; j < b.size(); ++j)
            a[shift + j] -= c * b[j];
        rtrim(a); /* the top coefficient cancels exactly, so this always shrinks a */
        if (a.empty()) break;
    }
    return q;
}

/* extended euclid: returns (g, s) with s * u = g modulo m */
std::pair<RPoly, RPoly> rxgcd(RPoly u, RPoly m) {
    RPoly r0 = std::move(m), r1 = std::move(u);
    RPoly s0, s1{Rational(1)};
    while (!r1.empty()) {
        RPoly rem = r0;
        RPoly q = rdivmod(rem, r1);
        RPoly s2 = rsub(s0, rmul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    return {r0, s0};
}

/* reduce modulo the monic polynomial x^d + sum lower[j] x^j */
void reduce_mod(std::vector<Rational>& v, const std::vector<Rational>& lower) {
    const std::size_t d = lower.size();
    for (std::size_t k = v.size(); k-- > d;) {
        Rational c = v[k];
        if (c == 0) continue;
        v[k] = 0;
        for (std::size_t j = 0; j < d; ++j) v[k - d + j] -= c * lower[j];
    }
    v.resize(d, Rational(0));
}

} // namespace

/* ---- NumberField ---- */

std::shared_ptr<const NumberField> NumberField::rationals() {
    static const std::shared_ptr<const NumberField> q(
        new NumberField(std::vector<Rational>{Rational(0)}));
    return q;
}

std::shared_ptr<const NumberField> NumberField::extension(std::vector<Rational> lower) {
    if (lower.size() < 2)
        throw std::invalid_argument("NumberField::extension: degree must be at least 2");
    return std::shared_ptr<const NumberField>(new NumberField(std::move(lower)));
}

Cplx NumberField::generator_embedding() const {
    const std::size_t d = degree();
    if (d == 1) return Cplx(to_real(-lower_[0]));
    if (d == 2) {
        /* x^2 + c1 x + c0: roots (-c1 +- sqrt(c1^2 - 4 c0)) / 2 */
        Rational c1 = lower_[1], c0 = lower_[0];
        Rational disc = c1 * c1 - 4 * c0;
        Real half_c1 = to_real(c1) / 2;
        if (disc >= 0) {
            /* real roots share Im = 0; take the larger real part */
            Real s = sqrt(to_real(disc));
            return Cplx((-to_real(c1) + s) / 2);
        }
        Real s = sqrt(to_real(-disc));
        return Cplx(-half_c1, s / 2); /* the root with positive imaginary part */
    }
    throw std::domain_error("NumberField: embeddings implemented for degree <= 2");
}

/* ---- FieldElement ---- */

FieldElement::FieldElement(const Rational& r)
    : field_(NumberField::rationals()), coords_{r} {}

FieldElement::FieldElement(FieldPtr field, std::vector<Rational> coords)
    : field_(std::move(field)), coords_(std::move(coords)) {
    if (!field_) throw std::invalid_argument("FieldElement: null field");
    if (coords_.size() > field_->degree())
        reduce_mod(coords_, field_->defining_lower());
    coords_.resize(field_->degree(), Rational(0));
}

FieldElement FieldElement::generator(const FieldPtr& field) {
    if (!field) throw std::invalid_argument("FieldElement::generator: null field");
    if (field->degree() == 1)
        return FieldElement(field, {-field->defining_lower()[0]});
    std::vector<Rational> c(field->degree(), Rational(0));
    c[1] = 1;
    return FieldElement(field, std::move(c));
}

bool FieldElement::is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(),
                       [](const Rational& c) { return c == 0; });
}

bool FieldElement::is_rational() const {
    for (std::size_t k = 1; k < coords_.size(); ++k)
        if (coords_[k] != 0) return false;
    return true;
}

Rational FieldElement::rational_value() const {
    if (!is_rational())
        throw std::domain_error("FieldElement: not a rational value");
    return coords_[0];
}

namespace {

/* bring two elements over a common field (lift rationals; rewrap equal
 * defining polynomials); throws on genuinely different extensions */
void align(FieldElement& a, FieldElement& b) {
    if (a.field() == b.field()) return;
    if (a.field()->same_as(*b.field())) {
        b = FieldElement(a.field(), b.coords());
        return;
    }
    if (a.field()->degree() == 1) {
        std::vector<Rational> c(b.field()->degree(), Rational(0));
        c[0] = a.coords()[0];
        a = FieldElement(b.field(), std::move(c));
        return;
    }
    if (b.field()->degree() == 1) {
        std::vector<Rational> c(a.field()->degree(), Rational(0));
        c[0] = b.coords()[0];
        b = FieldElement(a.field(), std::move(c));
        return;
    }
    throw std::invalid_argument("FieldElement: incompatible coefficient fields");
}

} // namespace

FieldElement FieldElement::operator-() const {
    std::vector<Rational> c = coords_;
    for (auto& x : c) x = -x;
    return FieldElement(field_, std::move(c));
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
    FieldElement rhs = o;
    align(*this, rhs);
    for (std::size_t k = 0; k < coords_.size(); ++k) coords_[k] += rhs.coords_[k];
    return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
    FieldElement rhs = o;
    align(*this, rhs);
    for (std::size_t k = 0; k < coords_.size(); ++k) coords_[k] -= rhs.coords_[k];
    return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
    FieldElement rhs = o;
    align(*this, rhs);
    std::vector<Rational> prod(2 * coords_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (coords_[i] == 0) continue;
        for (std::size_t j = 0; j < rhs.coords_.size(); ++j)
            prod[i + j] += coords_[i] * rhs.coords_[j];
    }
    reduce_mod(prod, field_->defining_lower());
    coords_ = std::move(prod);
    return *this;
}

FieldElement FieldElement::inverse() const {
    if (is_zero())
        throw std::domain_error("FieldElement: division by zero");
    if (field_->degree() == 1)
        return FieldElement(field_, {1 / coords_[0]});
    RPoly u = coords_;
    rtrim(u);
    RPoly m = field_->defining_lower();
    m.push_back(Rational(1));
    auto [g, s] = rxgcd(u, m);
    if (g.size() != 1)
        throw std::domain_error(
            "FieldElement: defining polynomial is not irreducible (no inverse)");
    for (auto& c : s) c /= g[0];
    return FieldElement(field_, std::move(s));
}

FieldElement& FieldElement::operator/=(const FieldElement& o) {
    FieldElement rhs = o;
    align(*this, rhs);
    return *this *= rhs.inverse();
}

bool FieldElement::operator==(const FieldElement& o) const {
    FieldElement a = *this, b = o;
    align(a, b);
    return a.coords_ == b.coords_;
}

Cplx embed(const FieldElement& a) {
    const auto& c = a.coords();
    if (c.size() == 1) return Cplx(to_real(c[0]));
    Cplx th = a.field()->generator_embedding();
    Cplx acc(to_real(c.back()));
    for (std::size_t k = c.size() - 1; k-- > 0;)
        acc = acc * th + Cplx(to_real(c[k]));
    return acc;
}

std::string to_string(const FieldElement& a) {
    const auto& c = a.coords();
    std::string out = c[0].str();
    for (std::size_t k = 1; k < c.size(); ++k) {
        if (c[k] == 0) continue;
        out += (c[k] > 0 ? " + " : " - ");
        Rational mag = abs(c[k]);
        if (mag != 1) out += mag.str() + " ";
        out += "th";
        if (k > 1) out += "^" + std::to_string(k);
    }
    return out;
}

/* ---- ProjPoint ---- */

ProjPoint::ProjPoint(std::vector<FieldElement> coords) : coords_(std::move(coords)) {
    if (coords_.empty())
        throw std::invalid_argument("ProjPoint: empty coordinate tuple");
    if (std::all_of(coords_.begin(), coords_.end(),
                    [](const FieldElement& c) { return c.is_zero(); }))
        throw std::invalid_argument("ProjPoint: all coordinates vanish");
}

ProjPoint ProjPoint::normalized() const {
    std::size_t first = 0;
    while (coords_[first].is_zero()) ++first;
    FieldElement inv = coords_[first].inverse();
    std::vector<FieldElement> out;
    out.reserve(coords_.size());
    for (const auto& c : coords_) out.push_back(c * inv);
    return ProjPoint(std::move(out));
}

bool ProjPoint::operator==(const ProjPoint& o) const {
    if (coords_.size() != o.coords_.size()) return false;
    ProjPoint a = normalized(), b = o.normalized();
    for (std::size_t k = 0; k < coords_.size(); ++k)
        if (a.coords_[k] != b.coords_[k]) return false;
    return true;
}

std::vector<Cplx> embed(const ProjPoint& p) {
    std::vector<Cplx> out;
    out.reserve(p.coords().size());
    for (const auto& c : p.coords()) out.push_back(embed(c));
    return out;
}

std::string to_string(const ProjPoint& p) {
    std::string out = "[";
    for (std::size_t k = 0; k < p.coords().size(); ++k) {
        if (k) out += " : ";
        out += to_string(p.coords()[k]);
    }
    return out + "]";
}

ProjPoint face_insert(const ProjPoint& p, std::size_t j) {
    if (j > p.coords().size())
        throw std::out_of_range("face_insert: slot out of range");
    std::vector<FieldElement> c = p.coords();
    c.insert(c.begin() + static_cast<std::ptrdiff_t>(j), FieldElement(0L));
    return ProjPoint(std::move(c));
}

ProjPoint degeneracy_merge(const ProjPoint& p, std::size_t i) {
    const auto& c = p.coords();
    if (c.size() < 2 || i + 1 >= c.size())
        throw std::out_of_range("degeneracy_merge: slot out of range");
    std::vector<FieldElement> out;
    out.reserve(c.size() - 1);
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (k == i) {
            out.push_back(c[k] + c[k + 1]);
            ++k;
        } else {
            out.push_back(c[k]);
        }
    }
    if (std::all_of(out.begin(), out.end(),
                    [](const FieldElement& x) { return x.is_zero(); }))
        throw std::domain_error("degeneracy_merge: image point undefined (all zero)");
    return ProjPoint(std::move(out));
}

bool in_special_hyperplane(const ProjPoint& p) {
    FieldElement sum(0L);
    for (const auto& c : p.coords()) sum += c;
    return sum.is_zero();
}

/* ---- ExactMatrix ---- */

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, FieldElement(0L)) {
    if (rows == 0 || cols == 0)
        throw std::invalid_argument("ExactMatrix: zero dimension");
}

ExactMatrix ExactMatrix::from_rows(std::vector<std::vector<FieldElement>> rows) {
    if (rows.empty() || rows[0].empty())
        throw std::invalid_argument("ExactMatrix: empty rows");
    ExactMatrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols_)
            throw std::invalid_argument("ExactMatrix: ragged rows");
        for (std::size_t j = 0; j < m.cols_; ++j)
            m.at(i, j) = std::move(rows[i][j]);
    }
    return m;
}

FieldElement& ExactMatrix::at(std::size_t i, std::size_t j) {
    if (i >= rows_ || j >= cols_)
        throw std::out_of_range("ExactMatrix: index out of range");
    rank_cache_ = -1;
    return data_[i * cols_ + j];
}

const FieldElement& ExactMatrix::at(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_)
        throw std::out_of_range("ExactMatrix: index out of range");
    return data_[i * cols_ + j];
}

ExactMatrix ExactMatrix::rref() const {
    ExactMatrix m = *this;
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < cols_ && pivot_row < rows_; ++col) {
        std::size_t sel = pivot_row;
        while (sel < rows_ && m.data_[sel * cols_ + col].is_zero()) ++sel;
        if (sel == rows_) continue;
        for (std::size_t j = 0; j < cols_; ++j)
            std::swap(m.data_[pivot_row * cols_ + j], m.data_[sel * cols_ + j]);
        FieldElement inv = m.data_[pivot_row * cols_ + col].inverse();
        for (std::size_t j = col; j < cols_; ++j)
            m.data_[pivot_row * cols_ + j] *= inv;
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == pivot_row) continue;
            FieldElement f = m.data_[i * cols_ + col];
            if (f.is_zero()) continue;
            for (std::size_t j = col; j < cols_; ++j)
                m.data_[i * cols_ + j] -= f * m.data_[pivot_row * cols_ + j];
        }
        ++pivot_row;
    }
    m.rank_cache_ = static_cast<long>(pivot_row);
    return m;
}

std::size_t ExactMatrix::rank() const {
    if (rank_cache_ < 0) {
        ExactMatrix r = rref();
        rank_cache_ = r.rank_cache_;
    }
    return static_cast<std::size_t>(rank_cache_);
}

FieldElement ExactMatrix::det() const {
    if (rows_ != cols_)
        throw std::invalid_argument("ExactMatrix::det: matrix not square");
    ExactMatrix m = *this;
    FieldElement out(1L);
    for (std::size_t col = 0; col < cols_; ++col) {
        std::size_t sel = col;
        while (sel < rows_ && m.data_[sel * cols_ + col].is_zero()) ++sel;
        if (sel == rows_) return FieldElement(0L);
        if (sel != col) {
            for (std::size_t j = 0; j < cols_; ++j)
                std::swap(m.data_[col * cols_ + j], m.data_[sel * cols_ + j]);
            out = -out;
        }
        const FieldElement& pivot = m.data_[col * cols_ + col];
        out *= pivot;
        FieldElement inv = pivot.inverse();
        for (std::size_t i = col + 1; i < rows_; ++i) {
            FieldElement f = m.data_[i * cols_ + col] * inv;
            if (f.is_zero()) continue;
            for (std::size_t j = col; j < cols_; ++j)
                m.data_[i * cols_ + j] -= f * m.data_[col * cols_ + j];
        }
    }
    return out;
}

FieldElement minor(const ExactMatrix& m, std::size_t i, std::size_t j) {
    if (m.rows() != 2)
        throw std::invalid_argument("minor: matrix must have exactly 2 rows");
    return m.at(0, i) * m.at(1, j) - m.at(0, j) * m.at(1, i);
}

/* ---- cross-ratio ---- */

FieldElement cross_ratio(const FieldElement& t0, const FieldElement& t1,
                         const FieldElement& t2, const FieldElement& t3) {
    FieldElement den = (t0 - t2) * (t1 - t3);
    if (den.is_zero())
        throw std::domain_error("cross_ratio: degenerate configuration");
    return (t0 - t3) * (t1 - t2) / den;
}

Cplx cross_ratio(const Cplx& t0, const Cplx& t1, const Cplx& t2, const Cplx& t3) {
    Cplx den = (t0 - t2) * (t1 - t3);
    if (den.is_zero())
        throw std::domain_error("cross_ratio: degenerate configuration");
    return (t0 - t3) * (t1 - t2) / den;
}

/* ---- cube-to-simplex ---- */

ProjPoint cube_to_simplex(const std::vector<std::pair<FieldElement, FieldElement>>& q) {
    for (const auto& [s, l] : q)
        if (s == l)
            throw std::domain_error("cube_to_simplex: input on a deleted z = 1 face");
    return ProjPoint(detail::cube_to_simplex_coords(q));
}

std::vector<Cplx> cube_to_simplex(const std::vector<std::pair<Cplx, Cplx>>& q) {
    for (const auto& [s, l] : q)
        if ((s - l).is_zero())
            throw std::domain_error("cube_to_simplex: input on a deleted z = 1 face");
    return detail::cube_to_simplex_coords(q);
}

ExactMatrix cube_system_matrix(const std::vector<std::pair<FieldElement, FieldElement>>& q) {
    const std::size_t n = q.size();
    if (n == 0)
        throw std::invalid_argument("cube_system_matrix: empty input");
    ExactMatrix m(n, n + 1);
    for (std::size_t j = 0; j < n; ++j) {
        m.at(j, j) = q[j].second;
        for (std::size_t k = j + 1; k <= n; ++k) m.at(j, k) = q[j].first;
    }
    return m;
}

ExactMatrix cube_bordered_matrix(const std::vector<std::pair<FieldElement, FieldElement>>& q) {
    const std::size_t n = q.size();
    if (n == 0)
        throw std::invalid_argument("cube_bordered_matrix: empty input");
    ExactMatrix m(n + 1, n + 1);
    for (std::size_t k = 0; k <= n; ++k) m.at(0, k) = FieldElement(1L);
    for (std::size_t j = 0; j < n; ++j) {
        m.at(j + 1, j) = q[j].second;
        for (std::size_t k = j + 1; k <= n; ++k) m.at(j + 1, k) = q[j].first;
    }
    return m;
}

} // namespace reg

#include <reg/simplicial.hpp>

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace reg {

namespace {

int target_of(const Gen& g) {
    return g.kind == GenKind::Face ? g.level - 1 : g.level + 1;
}

void check_gen(const Gen& g) {
    if (g.index < 0) throw std::invalid_argument("generator index negative");
    if (g.kind == GenKind::Face) {
        if (g.index > g.level)
            throw std::invalid_argument("face index exceeds its level");
    } else {
        if (g.index > g.level + 1)
            throw std::invalid_argument("degeneracy index exceeds its level + 1");
    }
}

/* canonical strict order on words, used to keep sum terms sorted */
bool word_less(const OperatorWord& a, const OperatorWord& b) {
    if (a.source_degree() != b.source_degree())
        return a.source_degree() < b.source_degree();
    const auto& ga = a.gens();
    const auto& gb = b.gens();
    if (ga.size() != gb.size()) return ga.size() < gb.size();
    for (std::size_t i = 0; i < ga.size(); ++i) {
        auto ka = std::make_tuple(static_cast<int>(ga[i].kind), ga[i].index);
        auto kb = std::make_tuple(static_cast<int>(gb[i].kind), gb[i].index);
        if (ka != kb) return ka < kb;
    }
    return false;
}

} // namespace

Gen face_gen(int index, int level) {
    Gen g{GenKind::Face, index, level};
    check_gen(g);
    return g;
}

Gen degeneracy_gen(int index, int level) {
    Gen g{GenKind::Degeneracy, index, level};
    check_gen(g);
    return g;
}

OperatorWord::OperatorWord(int source_degree, std::vector<Gen> gens, long long coeff)
    : gens_(std::move(gens)), coeff_(coeff), source_(source_degree) {
    int cur = source_;
    for (auto it = gens_.rbegin(); it != gens_.rend(); ++it) {
        check_gen(*it);
        if (it->level != cur)
            throw std::invalid_argument("generator level does not match its input degree");
        cur = target_of(*it);
    }
    target_ = cur;
}

OperatorWord OperatorWord::with_coeff(long long c) const {
    OperatorWord w = *this;
    w.coeff_ = c;
    return w;
}

bool OperatorWord::same_word(const OperatorWord& o) const {
    return source_ == o.source_ && gens_ == o.gens_;
}

bool OperatorWord::operator==(const OperatorWord& o) const {
    return same_word(o) && coeff_ == o.coeff_;
}

std::string to_string(const Gen& g) {
    return (g.kind == GenKind::Face ? "d" : "s") + std::to_string(g.index);
}

std::string to_string(const OperatorWord& w) {
    std::string out = std::to_string(w.coeff()) + "*";
    if (w.gens().empty()) out += "Id";
    for (std::size_t i = 0; i < w.gens().size(); ++i) {
        if (i) out += " ";
        out += to_string(w.gens()[i]);
    }
    out += " @" + std::to_string(w.source_degree());
    return out;
}

bool rewrite_applicable(const OperatorWord& w, std::size_t pos) {
    if (pos + 1 >= w.gens().size()) return false;
    const Gen& l = w.gens()[pos];
    const Gen& r = w.gens()[pos + 1];
    if (l.kind == GenKind::Face && r.kind == GenKind::Face) return l.index < r.index;
    if (l.kind == GenKind::Degeneracy && r.kind == GenKind::Degeneracy)
        return l.index <= r.index;
    return l.kind == GenKind::Face; /* face-degeneracy pairs always reduce */
}

OperatorWord rewrite_at(const OperatorWord& w, std::size_t pos) {
    if (!rewrite_applicable(w, pos))
        throw std::invalid_argument("no rewrite rule applies at this position");
    std::vector<Gen> gens = w.gens();
    const Gen l = gens[pos];
    const Gen r = gens[pos + 1];
    const int a = l.index, b = r.index;
    const int m = r.level;

    if (l.kind == GenKind::Face && r.kind == GenKind::Face) {
        /* d_a d_b = d_{b-1} d_a, a < b */
        gens[pos] = Gen{GenKind::Face, b - 1, m - 1};
        gens[pos + 1] = Gen{GenKind::Face, a, m};
    } else if (l.kind == GenKind::Degeneracy && r.kind == GenKind::Degeneracy) {
        /* s_a s_b = s_{b+1} s_a, a <= b */
        gens[pos] = Gen{GenKind::Degeneracy, b + 1, m + 1};
        gens[pos + 1] = Gen{GenKind::Degeneracy, a, m};
    } else if (a == b || a == b + 1) {
        /* d_a s_b = Id */
        gens.erase(gens.begin() + static_cast<std::ptrdiff_t>(pos),
                   gens.begin() + static_cast<std::ptrdiff_t>(pos) + 2);
    } else if (a < b) {
        /* d_a s_b = s_{b-1} d_a */
        gens[pos] = Gen{GenKind::Degeneracy, b - 1, m - 1};
        gens[pos + 1] = Gen{GenKind::Face, a, m};
    } else {
        /* d_a s_b = s_b d_{a-1}, a > b+1 */
        gens[pos] = Gen{GenKind::Degeneracy, b, m - 1};
        gens[pos + 1] = Gen{GenKind::Face, a - 1, m};
    }
    return OperatorWord(w.source_degree(), std::move(gens), w.coeff());
}

OperatorWord reduce_word(const OperatorWord& w) {
    OperatorWord cur = w;
    long guard = 0;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t k = 0; k + 1 < cur.gens().size(); ++k) {
            if (rewrite_applicable(cur, k)) {
                cur = rewrite_at(cur, k);
                changed = true;
                break;
            }
        }
        if (++guard > 200000) throw std::logic_error("rewriting did not terminate");
    }
    return cur;
}

OperatorSum OperatorSum::identity(int degree) {
    return of(OperatorWord(degree));
}

OperatorSum OperatorSum::of(const OperatorWord& w) {
    OperatorSum s;
    s.insert_normalized(reduce_word(w));
    return s;
}

void OperatorSum::insert_normalized(const OperatorWord& w) {
    if (w.coeff() == 0) return;
    if (!terms_.empty() &&
        (terms_.front().source_degree() != w.source_degree() ||
         terms_.front().target_degree() != w.target_degree()))
        throw std::invalid_argument("mixed-degree operator sum");
    auto it = std::lower_bound(terms_.begin(), terms_.end(), w, word_less);
    if (it != terms_.end() && it->same_word(w)) {
        long long c = it->coeff() + w.coeff();
        if (c == 0)
            terms_.erase(it);
        else
            *it = it->with_coeff(c);
    } else {
        terms_.insert(it, w);
    }
}

int OperatorSum::source_degree() const {
    if (is_zero()) throw std::logic_error("zero operator sum has no degree");
    return terms_.front().source_degree();
}

int OperatorSum::target_degree() const {
    if (is_zero()) throw std::logic_error("zero operator sum has no degree");
    return terms_.front().target_degree();
}

OperatorSum OperatorSum::operator-() const {
    OperatorSum out;
    for (const auto& t : terms_) out.terms_.push_back(t.with_coeff(-t.coeff()));
    return out;
}

OperatorSum OperatorSum::operator+(const OperatorSum& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    if (source_degree() != o.source_degree() || target_degree() != o.target_degree())
        throw std::invalid_argument("adding operator sums of different degrees");
    OperatorSum out = *this;
    for (const auto& t : o.terms_) out.insert_normalized(t);
    return out;
}

OperatorSum OperatorSum::operator-(const OperatorSum& o) const { return *this + (-o); }

OperatorSum& OperatorSum::operator+=(const OperatorSum& o) {
    *this = *this + o;
    return *this;
}

OperatorSum OperatorSum::operator*(const OperatorSum& o) const {
    if (is_zero() || o.is_zero()) return OperatorSum();
    if (o.target_degree() != source_degree())
        throw std::invalid_argument("composing operator sums of incompatible degrees");
    OperatorSum out;
    for (const auto& u : terms_) {
        for (const auto& v : o.terms_) {
            std::vector<Gen> gens = u.gens();
            gens.insert(gens.end(), v.gens().begin(), v.gens().end());
            out.insert_normalized(reduce_word(
                OperatorWord(v.source_degree(), std::move(gens), u.coeff() * v.coeff())));
        }
    }
    return out;
}

OperatorSum OperatorSum::filtered(int ell) const {
    OperatorSum out;
    for (const auto& t : terms_) {
        if (!t.gens().empty()) {
            const Gen& first_acting = t.gens().back();
            if (first_acting.kind == GenKind::Face && first_acting.index < ell) continue;
        }
        out.insert_normalized(t);
    }
    return out;
}

bool OperatorSum::operator==(const OperatorSum& o) const {
    return terms_ == o.terms_;
}

std::string to_string(const OperatorSum& s) {
    if (s.is_zero()) return "0";
    std::string out;
    for (std::size_t i = 0; i < s.terms().size(); ++i) {
        if (i) out += "  +  ";
        out += to_string(s.terms()[i]);
    }
    return out;
}

OperatorSum boundary_sum(int degree) {
    if (degree < 0) throw std::invalid_argument("boundary needs a nonnegative degree");
    OperatorSum out;
    for (int i = 0; i <= degree; ++i) {
        long long c = (i % 2 == 0) ? 1 : -1;
        out += OperatorSum::of(OperatorWord(degree, {face_gen(i, degree)}, c));
    }
    return out;
}

OperatorSum kappa(int ell, int degree) {
    if (ell < 0 || degree < 0) throw std::invalid_argument("kappa needs nonnegative arguments");
    if (ell > degree) return OperatorSum::identity(degree);
    OperatorWord correction(
        degree, {degeneracy_gen(ell, degree - 1), face_gen(ell, degree)}, -1);
    return OperatorSum::identity(degree) + OperatorSum::of(correction);
}

bool verify_chain_map(int ell, int n) {
    if (n < 1) throw std::invalid_argument("chain-map check needs degree >= 1");
    if (ell < 0) throw std::invalid_argument("chain-map check needs level >= 0");
    OperatorSum lhs = kappa(ell, n - 1) * boundary_sum(n);
    OperatorSum rhs = boundary_sum(n) * kappa(ell, n);
    return lhs.filtered(ell) == rhs.filtered(ell);
}

bool verify_homotopy(int ell, int n) {
    if (n < 0 || ell < 0) throw std::invalid_argument("homotopy check needs nonnegative arguments");
    if (ell > n) return true; /* the contraction vanishes on both adjacent degrees */
    long long sgn = (ell % 2 == 0) ? 1 : -1;
    OperatorSum t_top = OperatorSum::of(OperatorWord(n, {degeneracy_gen(ell, n)}, sgn));
    OperatorSum t_below =
        OperatorSum::of(OperatorWord(n - 1, {degeneracy_gen(ell, n - 1)}, sgn));
    OperatorSum lhs = boundary_sum(n + 1) * t_top + t_below * boundary_sum(n);
    OperatorSum rhs = OperatorSum::of(
        OperatorWord(n, {degeneracy_gen(ell, n - 1), face_gen(ell, n)}, 1));
    return lhs.filtered(ell) == rhs.filtered(ell);
}

} // namespace reg

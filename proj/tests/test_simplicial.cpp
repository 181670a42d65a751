#include <reg/simplicial.hpp>
#include <reg/rng.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <stdexcept>
#include <vector>

using namespace reg;

namespace {

/* degree-compatible random word, built from the input side */
OperatorWord random_word(SplitMix64& rng, int max_len = 8) {
    int source = static_cast<int>(rng.next_below(6));
    int len = static_cast<int>(rng.next_below(static_cast<unsigned long long>(max_len) + 1));
    std::vector<Gen> gens;
    int cur = source;
    for (int k = 0; k < len; ++k) {
        bool can_face = cur >= 0;
        bool pick_face = can_face && (rng.next() & 1);
        if (pick_face) {
            int i = static_cast<int>(rng.next_below(static_cast<unsigned long long>(cur) + 1));
            gens.push_back(face_gen(i, cur));
            cur -= 1;
        } else {
            int j = static_cast<int>(rng.next_below(static_cast<unsigned long long>(cur + 1) + 1));
            gens.push_back(degeneracy_gen(j, cur));
            cur += 1;
        }
    }
    std::reverse(gens.begin(), gens.end());
    long long coeff = static_cast<long long>(rng.next_below(9)) - 4;
    if (coeff == 0) coeff = 1;
    return OperatorWord(source, std::move(gens), coeff);
}

OperatorWord reduce_in_random_order(const OperatorWord& w, SplitMix64& rng) {
    OperatorWord cur = w;
    for (;;) {
        std::vector<std::size_t> spots;
        for (std::size_t k = 0; k + 1 < cur.gens().size(); ++k)
            if (rewrite_applicable(cur, k)) spots.push_back(k);
        if (spots.empty()) return cur;
        cur = rewrite_at(cur, spots[rng.next_below(spots.size())]);
    }
}

bool is_normal_form(const OperatorWord& w) {
    const auto& g = w.gens();
    for (std::size_t k = 0; k + 1 < g.size(); ++k) {
        if (g[k].kind == GenKind::Face && g[k + 1].kind == GenKind::Degeneracy)
            return false;
        if (g[k].kind == GenKind::Degeneracy && g[k + 1].kind == GenKind::Degeneracy &&
            g[k].index <= g[k + 1].index)
            return false;
        if (g[k].kind == GenKind::Face && g[k + 1].kind == GenKind::Face &&
            g[k].index < g[k + 1].index)
            return false;
    }
    return true;
}

} // namespace

TEST_CASE("word construction and validation") {
    SECTION("indices are range-checked") {
        CHECK_THROWS_AS(face_gen(3, 2), std::invalid_argument);
        CHECK_THROWS_AS(face_gen(-1, 2), std::invalid_argument);
        CHECK_THROWS_AS(degeneracy_gen(4, 2), std::invalid_argument);
        CHECK_NOTHROW(degeneracy_gen(3, 2)); /* edge degeneracy */
        CHECK_NOTHROW(face_gen(2, 2));
    }

    SECTION("adjacent generators must compose") {
        CHECK_THROWS_AS(OperatorWord(2, {face_gen(0, 2), face_gen(0, 2)}),
                        std::invalid_argument);
        OperatorWord w(2, {face_gen(0, 1), face_gen(2, 2)});
        CHECK(w.source_degree() == 2);
        CHECK(w.target_degree() == 0);
    }

    SECTION("the word must end at the declared source degree") {
        CHECK_THROWS_AS(OperatorWord(3, {face_gen(1, 1)}), std::invalid_argument);
    }
}

TEST_CASE("single rewrite steps") {
    SECTION("face past face") {
        OperatorWord w(2, {face_gen(0, 1), face_gen(2, 2)});
        OperatorWord r = reduce_word(w);
        CHECK(r.gens() == std::vector<Gen>{face_gen(1, 1), face_gen(0, 2)});
    }
    SECTION("degeneracy past degeneracy") {
        OperatorWord w(1, {degeneracy_gen(0, 2), degeneracy_gen(1, 1)});
        OperatorWord r = reduce_word(w);
        CHECK(r.gens() == std::vector<Gen>{degeneracy_gen(2, 2), degeneracy_gen(0, 1)});
    }
    SECTION("face cancelling a degeneracy") {
        OperatorWord w(0, {face_gen(1, 1), degeneracy_gen(0, 0)});
        OperatorWord r = reduce_word(w);
        CHECK(r.gens().empty());
        CHECK(r.target_degree() == 0);
        OperatorWord w2(0, {face_gen(0, 1), degeneracy_gen(0, 0)});
        CHECK(reduce_word(w2).gens().empty());
    }
    SECTION("face slipping under a degeneracy") {
        OperatorWord w(1, {face_gen(0, 2), degeneracy_gen(1, 1)});
        OperatorWord r = reduce_word(w);
        CHECK(r.gens() == std::vector<Gen>{degeneracy_gen(0, 0), face_gen(0, 1)});
        OperatorWord v(2, {face_gen(3, 3), degeneracy_gen(0, 2)});
        OperatorWord rv = reduce_word(v);
        CHECK(rv.gens() == std::vector<Gen>{degeneracy_gen(0, 1), face_gen(2, 2)});
    }
    SECTION("rewrite_at rejects inapplicable positions") {
        OperatorWord w(2, {degeneracy_gen(1, 1), face_gen(0, 2)});
        CHECK_FALSE(rewrite_applicable(w, 0));
        CHECK_THROWS_AS(rewrite_at(w, 0), std::invalid_argument);
    }
}

TEST_CASE("normal forms") {
    SplitMix64 rng(0x51ULL);

    SECTION("reduction reaches an irreducible word and preserves degrees") {
        for (int trial = 0; trial < 300; ++trial) {
            OperatorWord w = random_word(rng);
            OperatorWord r = reduce_word(w);
            CHECK(is_normal_form(r));
            CHECK(r.source_degree() == w.source_degree());
            CHECK(r.target_degree() == w.target_degree());
            CHECK(r.coeff() == w.coeff());
            CHECK(reduce_word(r).same_word(r));
        }
    }

    SECTION("any reduction order gives the same normal form") {
        for (int trial = 0; trial < 1000; ++trial) {
            OperatorWord w = random_word(rng);
            OperatorWord det = reduce_word(w);
            OperatorWord rnd = reduce_in_random_order(w, rng);
            CHECK(det.same_word(rnd));
            CHECK(det.coeff() == rnd.coeff());
        }
    }
}

TEST_CASE("operator sums") {
    SECTION("terms merge and cancel") {
        OperatorSum w = OperatorSum::of(
            OperatorWord(1, {degeneracy_gen(0, 0), face_gen(0, 1)}));
        OperatorSum twice = w + w;
        REQUIRE(twice.terms().size() == 1);
        CHECK(twice.terms()[0].coeff() == 2);
        CHECK((w - w).is_zero());
        CHECK((twice - w) == w);
    }

    SECTION("words that normalize alike merge") {
        /* d0 d2 and d1 d0 share a normal form */
        OperatorSum a = OperatorSum::of(OperatorWord(2, {face_gen(0, 1), face_gen(2, 2)}));
        OperatorSum b = OperatorSum::of(OperatorWord(2, {face_gen(1, 1), face_gen(0, 2)}));
        CHECK(a == b);
        CHECK((a - b).is_zero());
    }

    SECTION("degree mismatches are rejected") {
        CHECK_THROWS_AS(OperatorSum::identity(2) + OperatorSum::identity(3),
                        std::invalid_argument);
        CHECK_THROWS_AS(OperatorSum::identity(2) * OperatorSum::identity(3),
                        std::invalid_argument);
        CHECK_THROWS_AS(
            OperatorSum::identity(2) + OperatorSum::of(OperatorWord(2, {face_gen(0, 2)})),
            std::invalid_argument);
    }

    SECTION("zero composes and adds neutrally") {
        OperatorSum z;
        CHECK(z.is_zero());
        CHECK((z * OperatorSum::identity(3)).is_zero());
        CHECK((OperatorSum::identity(3) + z) == OperatorSum::identity(3));
        CHECK_THROWS_AS(z.source_degree(), std::logic_error);
    }

    SECTION("the boundary squares to zero") {
        for (int n = 1; n <= 6; ++n)
            CHECK((boundary_sum(n - 1) * boundary_sum(n)).is_zero());
    }

    SECTION("filtration drops words by their first-acting face") {
        OperatorSum b = boundary_sum(2);
        CHECK(b.terms().size() == 3);
        CHECK(b.filtered(0) == b);
        CHECK(b.filtered(1).terms().size() == 2);
        CHECK(b.filtered(2).terms().size() == 1);
        CHECK(b.filtered(3).is_zero());
        CHECK(OperatorSum::identity(2).filtered(5) == OperatorSum::identity(2));
    }
}

TEST_CASE("level projections") {
    SECTION("shape") {
        CHECK(kappa(3, 2) == OperatorSum::identity(2));
        OperatorSum k = kappa(0, 2);
        REQUIRE(k.terms().size() == 2);
        OperatorSum expected =
            OperatorSum::identity(2) -
            OperatorSum::of(OperatorWord(2, {degeneracy_gen(0, 1), face_gen(0, 2)}));
        CHECK(k == expected);
    }

    SECTION("idempotence") {
        for (int n = 0; n <= 4; ++n)
            for (int ell = 0; ell <= n; ++ell) {
                OperatorSum k = kappa(ell, n);
                CHECK(k * k == k);
            }
    }

    SECTION("the stacked projection annihilates every degeneracy image") {
        for (int n = 1; n <= 5; ++n) {
            OperatorSum stack = OperatorSum::identity(n);
            for (int ell = 0; ell < n; ++ell) stack = kappa(ell, n) * stack;
            for (int i = 0; i < n; ++i) {
                OperatorSum si =
                    OperatorSum::of(OperatorWord(n - 1, {degeneracy_gen(i, n - 1)}));
                CHECK((stack * si).is_zero());
            }
        }
    }
}

TEST_CASE("chain-map identity under the level filtration") {
    SECTION("spot checks") {
        CHECK(verify_chain_map(0, 2));
        CHECK(verify_chain_map(1, 3));
    }

    SECTION("holds strictly below the degree, fails on the diagonal") {
        for (int n = 1; n <= 6; ++n)
            for (int ell = 0; ell <= n + 2; ++ell)
                CHECK(verify_chain_map(ell, n) == (ell != n));
    }

    SECTION("input validation") {
        CHECK_THROWS_AS(verify_chain_map(0, 0), std::invalid_argument);
        CHECK_THROWS_AS(verify_chain_map(-1, 2), std::invalid_argument);
    }
}

TEST_CASE("contraction homotopy identity") {
    SECTION("spot checks") {
        CHECK(verify_homotopy(0, 1));
        CHECK(verify_homotopy(2, 2));
        CHECK(verify_homotopy(5, 2)); /* both sides vanish above the degree */
    }

    SECTION("holds for every level up to degree six") {
        for (int n = 0; n <= 6; ++n)
            for (int ell = 0; ell <= n + 2; ++ell)
                CHECK(verify_homotopy(ell, n));
    }

    SECTION("input validation") {
        CHECK_THROWS_AS(verify_homotopy(-1, 2), std::invalid_argument);
        CHECK_THROWS_AS(verify_homotopy(0, -1), std::invalid_argument);
    }
}

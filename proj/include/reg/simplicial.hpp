#pragma once

// Term rewriting for words in the face and degeneracy operators of a
// simplicial object.
//
// A generator is either a face operator d_i (lowering degree by one) or a
// degeneracy operator s_j (raising degree by one); each carries the degree
// of its input as an explicit annotation.  Words compose left-to-right in
// application order: the rightmost generator acts first.
//
// The rewrite rules are the usual relations
//
//   d_i d_j = d_{j-1} d_i          (i < j)
//   s_i s_j = s_{j+1} s_i          (i <= j)
//   d_i s_j = s_{j-1} d_i          (i < j)
//   d_i s_j = Id                   (i = j or i = j+1)
//   d_i s_j = s_j d_{i-1}          (i > j+1)
//
// oriented left-to-right.  They terminate and are confluent; the normal
// form places every degeneracy left of every face, with degeneracy indices
// strictly decreasing and face indices weakly decreasing.
//
// Degeneracy generators admit one formal extension: s_j at input degree m
// is accepted for j = m+1 as well ("edge" degeneracy).  The rewrite rules
// preserve this extended validity, and the homotopy verification below
// needs the edge case to state its right-hand side at the top level.

#include <cstddef>
#include <string>
#include <vector>

namespace reg {

enum class GenKind { Face, Degeneracy };

// One face or degeneracy operator together with the degree of its input.
struct Gen {
    GenKind kind;
    int index;
    int level; // simplicial degree of the input the generator consumes

    bool operator==(const Gen&) const = default;
};

// Helpers that validate index ranges: faces require 0 <= index <= level,
// degeneracies 0 <= index <= level+1 (the edge case).
Gen face_gen(int index, int level);
Gen degeneracy_gen(int index, int level);

// A formal integer multiple of a composable word of generators.  The word
// is stored leftmost-first; gens().back() acts first on the input, whose
// degree is source_degree().  The empty word is the identity.
class OperatorWord {
public:
    explicit OperatorWord(int source_degree, std::vector<Gen> gens = {},
                          long long coeff = 1);

    int source_degree() const { return source_; }
    int target_degree() const { return target_; }
    const std::vector<Gen>& gens() const { return gens_; }
    long long coeff() const { return coeff_; }

    OperatorWord with_coeff(long long c) const;

    // Equality of the underlying words, ignoring the coefficient.
    bool same_word(const OperatorWord& o) const;
    bool operator==(const OperatorWord& o) const;

private:
    std::vector<Gen> gens_;
    long long coeff_ = 1;
    int source_ = 0;
    int target_ = 0;
};

std::string to_string(const Gen& g);
std::string to_string(const OperatorWord& w);

// True when one rewrite rule applies to the adjacent pair at position pos
// (between gens()[pos] and gens()[pos+1]).
bool rewrite_applicable(const OperatorWord& w, std::size_t pos);

// Applies the unique rule at the given position; throws std::invalid_argument
// if none applies there.
OperatorWord rewrite_at(const OperatorWord& w, std::size_t pos);

// Exhaustively rewrites to the unique normal form (leftmost strategy).
OperatorWord reduce_word(const OperatorWord& w);

// A formal integer combination of normal-form words.  All terms of a
// nonzero sum share one source degree and one target degree; the empty sum
// is the zero operator of any degree.
class OperatorSum {
public:
    OperatorSum() = default; // zero
    static OperatorSum identity(int degree);
    // Normalizes the word and keeps it when its coefficient is nonzero.
    static OperatorSum of(const OperatorWord& w);

    bool is_zero() const { return terms_.empty(); }
    const std::vector<OperatorWord>& terms() const { return terms_; }
    int source_degree() const; // throws std::logic_error when zero
    int target_degree() const; // throws std::logic_error when zero

    OperatorSum operator-() const;
    OperatorSum operator+(const OperatorSum& o) const;
    OperatorSum operator-(const OperatorSum& o) const;
    // Composition: the right factor acts first.
    OperatorSum operator*(const OperatorSum& o) const;
    OperatorSum& operator+=(const OperatorSum& o);

    // Drops every term whose first-acting generator is a face d_i with
    // i < ell; models inputs annihilated by all such faces.
    OperatorSum filtered(int ell) const;

    bool operator==(const OperatorSum& o) const;

private:
    std::vector<OperatorWord> terms_;
    void insert_normalized(const OperatorWord& w);
};

std::string to_string(const OperatorSum& s);

// The alternating sum of all faces at the given degree.
OperatorSum boundary_sum(int degree);

// Identity when ell exceeds the degree, otherwise Id - s_ell d_ell at that
// degree (the degeneracy sits at degree-1 and is the edge case when
// ell == degree).
OperatorSum kappa(int ell, int degree);

// Checks mechanically whether kappa_ell commutes with the alternating
// boundary on inputs annihilated by the faces d_i, i < ell, at degree n.
// Holds for ell != n; fails on the diagonal ell == n, where the defining
// expression needs the edge degeneracy and the commutation genuinely
// breaks down.
bool verify_chain_map(int ell, int n);

// Checks mechanically, at degree n and under the same filtration, that
// the contraction with T_ell = (-1)^ell s_ell satisfies
//   boundary . T_ell + T_ell . boundary = s_ell d_ell,
// with both sides zero when ell > n.  Holds for every 0 <= ell, n.
bool verify_homotopy(int ell, int n);

} // namespace reg

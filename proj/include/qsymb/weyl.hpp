#pragma once

#include <string>
#include <vector>

#include "qsymb/common.hpp"

namespace qsymb {

// Signed permutation of {1..d} in window notation: w[i] is the image of i+1,
// an element of {±1..±d}. Composition acts on the left: (x*y)(i) = x(y(i)).
struct SignedPerm {
    std::vector<int> w;

    static SignedPerm identity(int d);
    int d() const { return (int)w.size(); }
    int operator()(int i) const; // defined for i in {±1..±d}, odd under negation
    SignedPerm inverse() const;
    friend SignedPerm operator*(const SignedPerm& x, const SignedPerm& y);
    friend bool operator==(const SignedPerm&, const SignedPerm&) = default;

    std::string str() const;                     // e.g. "[-2, 1]"
    static SignedPerm parse(const std::string&); // inverse of str
};

// The hyperoctahedral group W_d of signed permutations, with simple
// generators s_0 (sign change in the first slot: right multiplication negates
// the first window entry) and s_i, 1 <= i < d (right multiplication swaps
// window entries i and i+1). All elements are enumerated breadth-first from
// the identity, so indices are nondecreasing in length and the identity is
// index 0. Tables are precomputed once; everything else reads them.
class WeylGroupB {
public:
    explicit WeylGroupB(int d);

    int d() const { return d_; }
    int size() const { return (int)elems_.size(); }
    const SignedPerm& perm(int w) const { return elems_[w]; }
    int index(const SignedPerm& sp) const;

    int rmul(int w, int s) const { return rmul_[w * d_ + s]; }
    int lmul(int s, int w) const { return lmul_[w * d_ + s]; }
    int mul(int x, int y) const;
    int inverse(int w) const { return inv_[w]; }
    int length(int w) const { return len_[w]; }
    // number of sign changes = number of s_0 letters in any reduced word
    int neg_count(int w) const { return neg_[w]; }
    const std::vector<int>& word(int w) const { return word_[w]; }
    int longest() const { return longest_; }

    bool right_descent(int w, int s) const { return len_[rmul(w, s)] < len_[w]; }
    bool left_descent(int s, int w) const { return len_[lmul(s, w)] < len_[w]; }

    // all reflections (conjugates of simple generators), sorted by index
    const std::vector<int>& reflections() const { return refl_; }

    bool bruhat_leq(int x, int y) const;

    // ---- parabolic machinery; J and K are sorted lists of generator indices

    std::vector<int> subgroup(const std::vector<int>& J) const;
    int longest_in(const std::vector<int>& J) const;
    // minimal-length left coset representatives ^J W = {w : s_j w > w for all
    // j in J}, sorted by (length, canonical word lexicographically)
    std::vector<int> min_coset_reps(const std::vector<int>& J) const;
    bool is_min_rep(int w, const std::vector<int>& J) const;
    // the unique factorization w = u * v with u in W_J, v in ^J W
    std::pair<int, int> parabolic_split(int w, const std::vector<int>& J) const;

    // Double coset W_J x W_K for a minimal-length representative x: Jx is
    // {k in K : x s_k x^{-1} in W_J} and xprime the longest element of
    // ^{Jx} W_K, so that ell(u x v) = ell(u) + ell(x) + ell(v) for u in W_J,
    // v in ^{Jx} W_K, each double coset element reached exactly once.
    struct DoubleCoset {
        int x;
        std::vector<int> Jx;
        int xprime;
    };
    // minimal representatives ^J W^K = ^J W intersected with (^K W)^{-1},
    // with their coset data, sorted like min_coset_reps
    std::vector<DoubleCoset> double_cosets(const std::vector<int>& J,
                                           const std::vector<int>& K) const;

private:
    int d_;
    std::vector<SignedPerm> elems_;
    std::vector<int> code_to_idx_; // dense window-code lookup
    std::vector<int> rmul_, lmul_, inv_, len_, neg_;
    std::vector<std::vector<int>> word_;
    std::vector<int> refl_;
    int longest_ = -1;
    size_t bru_words_ = 0;
    std::vector<uint64_t> bru_; // bru_[y * bru_words_ ...] = bitset of {x <= y}

    int window_code(const SignedPerm& sp) const;
};

} // namespace qsymb

#include "doctest.h"

#include <map>
#include <set>

#include "qsymb/weyl.hpp"

using namespace qsymb;

namespace {

// length of a signed permutation straight from the window: type-A inversions
// plus the sum of the absolute values of the negative entries
int window_length(const SignedPerm& sp) {
    int d = sp.d(), len = 0;
    for (int i = 1; i <= d; ++i)
        for (int j = i + 1; j <= d; ++j)
            if (sp(i) > sp(j)) ++len;
    for (int i = 1; i <= d; ++i)
        if (sp(i) < 0) len += -sp(i);
    return len;
}

} // namespace

TEST_CASE("signed permutation basics") {
    SignedPerm e = SignedPerm::identity(3);
    CHECK(e.str() == "[1, 2, 3]");
    SignedPerm x = SignedPerm::parse("[-2, 1, 3]");
    CHECK(x(1) == -2);
    CHECK(x(-1) == 2);
    CHECK(x * x.inverse() == e);
    CHECK(x.inverse() * x == e);
    CHECK(SignedPerm::parse(x.str()) == x);
    CHECK((x * x).str() == "[-1, -2, 3]");
    CHECK_THROWS(SignedPerm::parse("[1, 1]"));
    CHECK_THROWS(SignedPerm::parse("[3, 1]"));
}

TEST_CASE("group sizes, lengths, longest element") {
    for (int d = 1; d <= 4; ++d) {
        WeylGroupB W(d);
        int expect = 1;
        for (int i = 1; i <= d; ++i) expect *= 2 * i;
        CHECK(W.size() == expect);
        // BFS distance equals the closed-form window length
        for (int w = 0; w < W.size(); ++w)
            CHECK(W.length(w) == window_length(W.perm(w)));
        CHECK(W.length(W.longest()) == d * d);
        // w_0 = [-1, ..., -d]
        SignedPerm w0 = SignedPerm::identity(d);
        for (auto& v : w0.w) v = -v;
        CHECK(W.perm(W.longest()) == w0);
        CHECK(W.inverse(W.longest()) == W.longest());
    }
    WeylGroupB W2(2);
    CHECK(W2.length(W2.index(SignedPerm::parse("[-1, -2]"))) == 4);
    CHECK(W2.neg_count(W2.index(SignedPerm::parse("[-1, -2]"))) == 2);
}

TEST_CASE("canonical words are reduced and generator counts are well-defined") {
    WeylGroupB W(3);
    for (int w = 0; w < W.size(); ++w) {
        const auto& wd = W.word(w);
        CHECK((int)wd.size() == W.length(w));
        int acc = 0, zeros = 0;
        for (int s : wd) {
            acc = W.rmul(acc, s);
            if (s == 0) ++zeros;
        }
        CHECK(acc == w);
        // the number of s_0 letters is an invariant of the element
        CHECK(zeros == W.neg_count(w));
    }
}

TEST_CASE("every reduced word of an element has the same s_0 count (d=2, exhaustive)") {
    WeylGroupB W(2);
    // enumerate all reduced words by depth-first descent through descents
    for (int w = 0; w < W.size(); ++w) {
        std::set<std::vector<int>> all;
        std::vector<int> suffix;
        auto dfs2 = [&](auto&& self, int v) -> void {
            if (v == 0) {
                std::vector<int> rw(suffix.rbegin(), suffix.rend());
                all.insert(rw);
                return;
            }
            for (int s = 0; s < W.d(); ++s)
                if (W.right_descent(v, s)) {
                    suffix.push_back(s);
                    self(self, W.rmul(v, s));
                    suffix.pop_back();
                }
        };
        dfs2(dfs2, w);
        CHECK(!all.empty());
        int expect = W.neg_count(w);
        for (const auto& rw : all) {
            int zeros = 0;
            for (int s : rw)
                if (s == 0) ++zeros;
            CHECK(zeros == expect);
            CHECK((int)rw.size() == W.length(w));
        }
    }
}

TEST_CASE("descent criteria from the window") {
    WeylGroupB W(3);
    for (int w = 0; w < W.size(); ++w) {
        const SignedPerm& sp = W.perm(w);
        CHECK(W.right_descent(w, 0) == (sp(1) < 0));
        for (int i = 1; i < W.d(); ++i)
            CHECK(W.right_descent(w, i) == (sp(i) > sp(i + 1)));
    }
}

TEST_CASE("multiplication, inverses, reflections") {
    WeylGroupB W(3);
    for (int x = 0; x < W.size(); x += 7)
        for (int y = 0; y < W.size(); y += 5) {
            CHECK(W.perm(W.mul(x, y)) == W.perm(x) * W.perm(y));
            CHECK(W.inverse(W.mul(x, y)) == W.mul(W.inverse(y), W.inverse(x)));
        }
    CHECK((int)W.reflections().size() == 9);
    for (int t : W.reflections()) {
        CHECK(W.mul(t, t) == 0);
        CHECK(W.length(t) % 2 == 1);
    }
}

TEST_CASE("Bruhat order matches the subword oracle") {
    // all subsequence products of a reduced word of y form the lower ideal of y
    for (int d = 2; d <= 3; ++d) {
        WeylGroupB W(d);
        for (int y = 0; y < W.size(); ++y) {
            const auto& wd = W.word(y);
            std::vector<bool> below(W.size(), false);
            for (unsigned mask = 0; mask < (1u << wd.size()); ++mask) {
                int acc = 0;
                for (size_t i = 0; i < wd.size(); ++i)
                    if (mask & (1u << i)) acc = W.rmul(acc, wd[i]);
                below[acc] = true;
            }
            for (int x = 0; x < W.size(); ++x)
                CHECK(W.bruhat_leq(x, y) == below[x]);
        }
    }
}

TEST_CASE("minimal coset representatives and parabolic factorization") {
    WeylGroupB W(3);
    std::vector<std::vector<int>> subsets;
    for (int mask = 0; mask < 8; ++mask) {
        std::vector<int> J;
        for (int j = 0; j < 3; ++j)
            if (mask & (1 << j)) J.push_back(j);
        subsets.push_back(J);
    }
    for (const auto& J : subsets) {
        auto sub = W.subgroup(J);
        auto reps = W.min_coset_reps(J);
        CHECK(sub.size() * reps.size() == (size_t)W.size());
        // unique length-additive factorization w = u * v
        std::set<int> hit;
        for (int u : sub)
            for (int v : reps) {
                int w = W.mul(u, v);
                CHECK(W.length(w) == W.length(u) + W.length(v));
                CHECK(hit.insert(w).second);
                auto [uu, vv] = W.parabolic_split(w, J);
                CHECK(uu == u);
                CHECK(vv == v);
            }
        CHECK((int)hit.size() == W.size());
        // sorted by (length, word)
        for (size_t i = 1; i < reps.size(); ++i) {
            CHECK(W.length(reps[i - 1]) <= W.length(reps[i]));
            if (W.length(reps[i - 1]) == W.length(reps[i]))
                CHECK(W.word(reps[i - 1]) < W.word(reps[i]));
        }
    }
    // longest elements of parabolics
    CHECK(W.perm(W.longest_in({0})) == SignedPerm::parse("[-1, 2, 3]"));
    CHECK(W.perm(W.longest_in({1, 2})) == SignedPerm::parse("[3, 2, 1]"));
}

TEST_CASE("double cosets partition the group with additive lengths") {
    // the d=1 seed case: J empty, K = {0}: x = e carries Jx empty, x' = s_0
    WeylGroupB W1(1);
    auto dcs1 = W1.double_cosets({}, {0});
    REQUIRE(dcs1.size() == 1);
    CHECK(dcs1[0].x == 0);
    CHECK(dcs1[0].Jx.empty());
    CHECK(W1.perm(dcs1[0].xprime) == SignedPerm::parse("[-1]"));

    for (int d = 2; d <= 3; ++d) {
        WeylGroupB W(d);
        std::vector<std::vector<int>> subsets;
        for (int mask = 0; mask < (1 << d); ++mask) {
            std::vector<int> J;
            for (int j = 0; j < d; ++j)
                if (mask & (1 << j)) J.push_back(j);
            subsets.push_back(J);
        }
        for (const auto& J : subsets)
            for (const auto& K : subsets) {
                auto dcs = W.double_cosets(J, K);
                auto subJ = W.subgroup(J);
                std::set<int> hit;
                for (const auto& dc : dcs) {
                    // minimal representatives of W_{Jx} \ W_K inside W_K
                    std::vector<int> vreps;
                    for (int v : W.subgroup(K))
                        if (W.is_min_rep(v, dc.Jx)) vreps.push_back(v);
                    int count = 0;
                    for (int u : subJ)
                        for (int v : vreps) {
                            int w = W.mul(W.mul(u, dc.x), v);
                            CHECK(W.length(w) ==
                                  W.length(u) + W.length(dc.x) + W.length(v));
                            CHECK(hit.insert(w).second);
                            ++count;
                        }
                    CHECK(count == (int)(subJ.size() * vreps.size()));
                    // x' really is the longest v-representative
                    for (int v : vreps) CHECK(W.length(v) <= W.length(dc.xprime));
                }
                CHECK((int)hit.size() == W.size());
            }
    }
}

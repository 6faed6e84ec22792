#include "qsymb/weyl.hpp"

#include <algorithm>
#include <sstream>

namespace qsymb {

SignedPerm SignedPerm::identity(int d) {
    SignedPerm sp;
    sp.w.resize(d);
    for (int i = 0; i < d; ++i) sp.w[i] = i + 1;
    return sp;
}

int SignedPerm::operator()(int i) const {
    QS_CHECK(i != 0 && std::abs(i) <= d(), "signed permutation argument out of range");
    return i > 0 ? w[i - 1] : -w[-i - 1];
}

SignedPerm SignedPerm::inverse() const {
    SignedPerm out;
    out.w.resize(d());
    for (int i = 1; i <= d(); ++i) {
        int v = w[i - 1];
        if (v > 0)
            out.w[v - 1] = i;
        else
            out.w[-v - 1] = -i;
    }
    return out;
}

SignedPerm operator*(const SignedPerm& x, const SignedPerm& y) {
    QS_CHECK(x.d() == y.d(), "signed permutation rank mismatch");
    SignedPerm out;
    out.w.resize(x.d());
    for (int i = 1; i <= x.d(); ++i) out.w[i - 1] = x(y(i));
    return out;
}

std::string SignedPerm::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < d(); ++i) {
        if (i) os << ", ";
        os << w[i];
    }
    os << "]";
    return os.str();
}

SignedPerm SignedPerm::parse(const std::string& s) {
    QS_CHECK(s.size() >= 2 && s.front() == '[' && s.back() == ']',
             "malformed signed permutation: " + s);
    SignedPerm out;
    std::string body = s.substr(1, s.size() - 2);
    std::istringstream is(body);
    std::string tok;
    while (std::getline(is, tok, ',')) out.w.push_back(std::stoi(tok));
    // validate: each of 1..d appears exactly once up to sign
    std::vector<bool> seen(out.d(), false);
    for (int v : out.w) {
        QS_CHECK(v != 0 && std::abs(v) <= out.d() && !seen[std::abs(v) - 1],
                 "malformed signed permutation: " + s);
        seen[std::abs(v) - 1] = true;
    }
    return out;
}

namespace {

SignedPerm apply_right(const SignedPerm& sp, int s) {
    SignedPerm out = sp;
    if (s == 0)
        out.w[0] = -out.w[0];
    else
        std::swap(out.w[s - 1], out.w[s]);
    return out;
}

} // namespace

int WeylGroupB::window_code(const SignedPerm& sp) const {
    int code = 0;
    for (int i = d_ - 1; i >= 0; --i) {
        int v = sp.w[i];
        code = code * (2 * d_) + (std::abs(v) - 1) * 2 + (v < 0 ? 1 : 0);
    }
    return code;
}

WeylGroupB::WeylGroupB(int d) : d_(d) {
    QS_CHECK(1 <= d && d <= 5, "rank out of supported range");
    int codes = 1;
    for (int i = 0; i < d; ++i) codes *= 2 * d;
    code_to_idx_.assign(codes, -1);

    // breadth-first enumeration from the identity; indices come out sorted by
    // length because every Cayley-graph edge changes length by exactly 1
    elems_.push_back(SignedPerm::identity(d));
    code_to_idx_[window_code(elems_[0])] = 0;
    len_.push_back(0);
    for (int head = 0; head < (int)elems_.size(); ++head) {
        SignedPerm cur = elems_[head];
        for (int s = 0; s < d_; ++s) {
            SignedPerm nxt = apply_right(cur, s);
            int code = window_code(nxt);
            if (code_to_idx_[code] < 0) {
                code_to_idx_[code] = (int)elems_.size();
                elems_.push_back(nxt);
                len_.push_back(len_[head] + 1);
            }
        }
    }
    const int n = size();
    for (int i = 1; i < n; ++i)
        QS_CHECK(len_[i - 1] <= len_[i], "BFS order not length-monotone");

    rmul_.resize((size_t)n * d_);
    lmul_.resize((size_t)n * d_);
    for (int w = 0; w < n; ++w)
        for (int s = 0; s < d_; ++s) {
            rmul_[(size_t)w * d_ + s] = code_to_idx_[window_code(apply_right(elems_[w], s))];
            // left multiplication: s_0 negates the value ±1, s_i swaps values
            SignedPerm lv = elems_[w];
            for (int j = 0; j < d_; ++j) {
                int v = lv.w[j];
                if (s == 0) {
                    if (std::abs(v) == 1) lv.w[j] = -v;
                } else {
                    if (std::abs(v) == s) lv.w[j] = v > 0 ? v + 1 : v - 1;
                    else if (std::abs(v) == s + 1) lv.w[j] = v > 0 ? v - 1 : v + 1;
                }
            }
            lmul_[(size_t)w * d_ + s] = code_to_idx_[window_code(lv)];
        }

    inv_.resize(n);
    neg_.resize(n);
    for (int w = 0; w < n; ++w) {
        inv_[w] = code_to_idx_[window_code(elems_[w].inverse())];
        int c = 0;
        for (int v : elems_[w].w)
            if (v < 0) ++c;
        neg_[w] = c;
    }

    // canonical reduced word: strip the smallest right descent; the stripped
    // element has smaller index, so a forward fill works
    word_.resize(n);
    for (int w = 1; w < n; ++w) {
        int s = 0;
        while (len_[rmul(w, s)] >= len_[w]) ++s;
        word_[w] = word_[rmul(w, s)];
        word_[w].push_back(s);
    }

    for (int w = 0; w < n; ++w)
        if (len_[w] == d_ * d_) {
            QS_CHECK(longest_ < 0, "longest element not unique");
            longest_ = w;
        }
    QS_CHECK(longest_ >= 0, "longest element missing");

    // reflections: closure of the generators under conjugation
    std::vector<bool> isrefl(n, false);
    for (int w = 0; w < n; ++w)
        for (int s = 0; s < d_; ++s) {
            int t = mul(mul(w, rmul(0, s)), inv_[w]);
            isrefl[t] = true;
        }
    for (int t = 0; t < n; ++t)
        if (isrefl[t]) refl_.push_back(t);
    QS_CHECK((int)refl_.size() == d_ * d_, "reflection count should be d^2");

    // Bruhat order: x <= y iff x = y or x <= yt for some reflection t with
    // ell(yt) < ell(y); computed in index (length) order
    bru_words_ = (n + 63) / 64;
    bru_.assign((size_t)n * bru_words_, 0);
    for (int y = 0; y < n; ++y) {
        uint64_t* row = &bru_[(size_t)y * bru_words_];
        row[y / 64] |= uint64_t(1) << (y % 64);
        for (int t : refl_) {
            int z = mul(y, t);
            if (len_[z] < len_[y]) {
                const uint64_t* zrow = &bru_[(size_t)z * bru_words_];
                for (size_t k = 0; k < bru_words_; ++k) row[k] |= zrow[k];
            }
        }
    }
}

int WeylGroupB::index(const SignedPerm& sp) const {
    QS_CHECK(sp.d() == d_, "signed permutation rank mismatch");
    int idx = code_to_idx_[window_code(sp)];
    QS_CHECK(idx >= 0, "signed permutation not in group");
    return idx;
}

int WeylGroupB::mul(int x, int y) const {
    int out = x;
    for (int s : word_[y]) out = rmul(out, s);
    return out;
}

bool WeylGroupB::bruhat_leq(int x, int y) const {
    return (bru_[(size_t)y * bru_words_ + x / 64] >> (x % 64)) & 1;
}

std::vector<int> WeylGroupB::subgroup(const std::vector<int>& J) const {
    std::vector<int> out{0};
    std::vector<bool> seen(size(), false);
    seen[0] = true;
    for (size_t head = 0; head < out.size(); ++head)
        for (int s : J) {
            int nxt = rmul(out[head], s);
            if (!seen[nxt]) {
                seen[nxt] = true;
                out.push_back(nxt);
            }
        }
    std::sort(out.begin(), out.end());
    return out;
}

int WeylGroupB::longest_in(const std::vector<int>& J) const {
    auto sub = subgroup(J);
    int best = 0, count = 0;
    for (int w : sub)
        if (length(w) > length(best)) best = w;
    for (int w : sub)
        if (length(w) == length(best)) ++count;
    QS_CHECK(count == 1, "longest element of parabolic subgroup not unique");
    return best;
}

bool WeylGroupB::is_min_rep(int w, const std::vector<int>& J) const {
    for (int j : J)
        if (left_descent(j, w)) return false;
    return true;
}

std::vector<int> WeylGroupB::min_coset_reps(const std::vector<int>& J) const {
    std::vector<int> out;
    for (int w = 0; w < size(); ++w)
        if (is_min_rep(w, J)) out.push_back(w);
    std::sort(out.begin(), out.end(), [&](int a, int b) {
        if (length(a) != length(b)) return length(a) < length(b);
        return word(a) < word(b);
    });
    return out;
}

std::pair<int, int> WeylGroupB::parabolic_split(int w, const std::vector<int>& J) const {
    // peel left descents lying in J
    int u = 0, v = w;
    for (bool moved = true; moved;) {
        moved = false;
        for (int j : J)
            if (left_descent(j, v)) {
                v = lmul(j, v);
                u = rmul(u, j);
                moved = true;
                break;
            }
    }
    QS_CHECK(is_min_rep(v, J), "parabolic split failed");
    QS_CHECK(length(u) + length(v) == length(w), "parabolic split not length-additive");
    return {u, v};
}

std::vector<WeylGroupB::DoubleCoset>
WeylGroupB::double_cosets(const std::vector<int>& J, const std::vector<int>& K) const {
    auto subJ = subgroup(J);
    std::vector<bool> inJ(size(), false);
    for (int u : subJ) inJ[u] = true;

    std::vector<DoubleCoset> out;
    for (int x : min_coset_reps(J)) {
        // also minimal on the right for K
        bool ok = true;
        for (int k : K)
            if (right_descent(x, k)) {
                ok = false;
                break;
            }
        if (!ok) continue;
        DoubleCoset dc;
        dc.x = x;
        for (int k : K) {
            int t = mul(mul(x, rmul(0, k)), inverse(x));
            if (inJ[t]) dc.Jx.push_back(k);
        }
        // longest minimal representative of W_{Jx} \ W_K inside W_K
        int best = -1;
        for (int v : subgroup(K)) {
            if (!is_min_rep(v, dc.Jx)) continue;
            if (best < 0 || length(v) > length(best)) best = v;
        }
        int ties = 0;
        for (int v : subgroup(K))
            if (is_min_rep(v, dc.Jx) && length(v) == length(best)) ++ties;
        QS_CHECK(best >= 0 && ties == 1, "double coset xprime not unique");
        dc.xprime = best;
        out.push_back(std::move(dc));
    }
    return out;
}

} // namespace qsymb

#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "qsymb/common.hpp"

namespace qsymb {

// Partitions here are weakly decreasing vectors of nonnegative integers of a
// fixed length; trailing zero rows are kept, they carry bookkeeping meaning.
void check_partition(const std::vector<int>& p);
int partition_size(const std::vector<int>& p);
// all partitions of n with exactly l parts (zeros allowed), lexicographically
// decreasing
std::vector<std::vector<int>> enumerate_partitions(int n, int l);
// mu contained in lam (mu may be shorter; missing rows are zero)
bool contains(const std::vector<int>& lam, const std::vector<int>& mu);
// each column of lam/mu holds at most one box
bool horizontal_strip(const std::vector<int>& lam, const std::vector<int>& mu);

// A bipartition for rank r: minus has r+1 rows, indexed 0,-1,...,-r from the
// top, and plus has r rows indexed 1,...,r.
struct Bipartition {
    std::vector<int> minus;
    std::vector<int> plus;

    Bipartition(std::vector<int> m, std::vector<int> p);
    int r() const { return (int)plus.size(); }
    int size() const;
    // row length lambda_i for i in [-r, r]
    int row(int i) const;
    // restriction ((lambda_0,...,lambda_{-i});(lambda_1,...,lambda_i))
    Bipartition down(int i) const;
    bool contains(const Bipartition& mu) const;

    std::string str() const; // ((2,1,0);(1))
    static Bipartition parse(const std::string& s);
    nlohmann::json to_json() const;
    static Bipartition from_json(const nlohmann::json& j);

    friend auto operator<=>(const Bipartition&, const Bipartition&) = default;
    friend bool operator==(const Bipartition&, const Bipartition&) = default;
};

std::vector<Bipartition> enumerate_bipartitions(int r, int n);
bool horizontal_strip(const Bipartition& lam, const Bipartition& mu);

enum class DomOrder { par, bipar, tri };
// dominance on partitions of equal length and size
bool dominance_leq(const std::vector<int>& a, const std::vector<int>& b);
bool dominance_leq(const Bipartition& a, const Bipartition& b, DomOrder o);
// the two shapes name the same irreducible: all 2r+1 rows differ by one
// constant
bool rows_differ_by_constant(const Bipartition& a, const Bipartition& b);

// Semistandard bitableau: minus letters {0,-1,...,-r} ordered
// 0 < -1 < ... < -r, plus letters {1,...,r} in the natural order. Rows
// weakly increase, columns strictly increase.
struct Bitableau {
    std::vector<std::vector<int>> tminus;
    std::vector<std::vector<int>> tplus;

    Bitableau(std::vector<std::vector<int>> m, std::vector<std::vector<int>> p);
    int r() const { return (int)tplus.size(); }
    Bipartition shape() const;
    // number of boxes with entry i
    int content(int i) const;
    int size() const;
    // delete boxes with entries outside [-i, i]
    Bitableau down(int i) const;

    std::string str() const; // ((0,0,-1|-1);(1))
    nlohmann::json to_json() const;

    friend auto operator<=>(const Bitableau&, const Bitableau&) = default;
    friend bool operator==(const Bitableau&, const Bitableau&) = default;
};

// the tableau of shape lambda whose i-th row is filled with i
Bitableau t_lambda(const Bipartition& lam);
std::vector<Bitableau> enumerate_sst(const Bipartition& lam);

// Weight of the diagonal type-A subalgebra, coordinates over delta_1..delta_r.
struct WeightJ {
    std::vector<int> coords;

    int r() const { return (int)coords.size(); }
    WeightJ& operator+=(const WeightJ& o);
    WeightJ& operator-=(const WeightJ& o);
    friend WeightJ operator+(WeightJ a, const WeightJ& b) { return a += b; }
    friend WeightJ operator-(WeightJ a, const WeightJ& b) { return a -= b; }
    std::string str() const;
    nlohmann::json to_json() const;
    friend auto operator<=>(const WeightJ&, const WeightJ&) = default;
    friend bool operator==(const WeightJ&, const WeightJ&) = default;
};

// gamma_i expressed in the delta basis; column i-1 of the pairing matrix
// (beta_i, alpha of +j)
WeightJ gamma_j(int r, int i);
WeightJ wtj(const Bipartition& lam);
WeightJ wtj(const Bitableau& t);
// lo <= hi iff hi - lo is a nonnegative integer combination of the gamma_i
bool leqj(const WeightJ& lo, const WeightJ& hi);

// Ambient weight over the basis eps_m, m = -r..r.
struct Weight {
    std::vector<int> eps;

    explicit Weight(int r) : eps(2 * r + 1, 0) {}
    explicit Weight(std::vector<int> e) : eps(std::move(e)) {
        QS_CHECK(eps.size() % 2 == 1, "weight needs 2r+1 coordinates");
    }
    int r() const { return ((int)eps.size() - 1) / 2; }
    int& at(int m) { return eps.at(m + r()); }
    int at(int m) const { return eps.at(m + r()); }
    Weight& operator+=(const Weight& o);
    Weight& operator-=(const Weight& o);
    friend Weight operator+(Weight a, const Weight& b) { return a += b; }
    friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
    std::string str() const;
    friend auto operator<=>(const Weight&, const Weight&) = default;
    friend bool operator==(const Weight&, const Weight&) = default;
};

// Simple-root labels are the nonzero codes a in {-r..r}: code +j stands for
// the half-integer j - 1/2 and code -j for -(j - 1/2). The root of code a is
// eps_{h-1/2} - eps_{h+1/2} for the half-integer h it names.
Weight alpha_root(int r, int a);
Weight beta_root(int r, int i); // alpha(+i) - alpha(-i)
// coordinates ((beta_i, x))_i; the projection to the delta basis
WeightJ project_j(const Weight& x);
// hi - lo is a nonnegative integer combination of simple roots
bool weight_leq(const Weight& lo, const Weight& hi);

// branching to rank r-1: mu with lambda/mu a horizontal strip after padding
// mu to length (r+1; r) with a zero row in each component
std::vector<Bipartition> branch_set(const Bipartition& lam);
// the subset with mu^- equal to the truncated minus component
std::vector<Bipartition> e_r_set(const Bipartition& lam);

} // namespace qsymb

// Core combinatorial objects: 1-factors of K_{n,n} stored as column->symbol
// permutations, ordered partial 1-factorisations, perfect-pair tests, and
// 1-factorisations of complete graphs K_{2m} (matchings as involutions).
//
// Index convention: 0-based everywhere in memory, 1-based in text I/O.
#pragma once

#include <compare>
#include <cstdint>
#include <vector>

namespace p1f {

// A 1-factor (perfect matching) of K_{n,n}. image[i] = j encodes the edge
// between u_{i+1} and v_{j+1}.
class OneFactor {
public:
    OneFactor() = default;
    explicit OneFactor(std::vector<int> image);

    static OneFactor identity(int n);
    // u_i -> v_{i+1 mod n}, the second factor of the standard prefix.
    static OneFactor cyclic_shift(int n);

    int order() const { return static_cast<int>(image_.size()); }
    int operator[](int i) const { return image_[i]; }
    const std::vector<int>& image() const { return image_; }
    std::vector<int> inverse() const;

    // True iff the factors have no common edge (images differ everywhere).
    bool disjoint_from(const OneFactor& g) const;

    friend bool operator==(const OneFactor&, const OneFactor&) = default;
    friend std::strong_ordering operator<=>(const OneFactor& a, const OneFactor& b)
    {
        return a.image_ <=> b.image_;
    }

private:
    std::vector<int> image_;
};

// Cycle of sigma = g^-1 o f through point `start` has length n iff sigma is an
// n-cycle. Also returns false when f and g share an edge (fixed point shrinks
// the cycle). Hot path of the search; no allocation.
inline bool perfect_pair_trace(const int* f, const int* g_inverse, int n)
{
    int i = g_inverse[f[0]];
    int steps = 1;
    while (i != 0) {
        i = g_inverse[f[i]];
        ++steps;
    }
    return steps == n;
}

// Multiset of cycle lengths of the 2-regular graph f u g, sorted ascending.
// Lengths are even, >= 4, and sum to 2n. Rejects factors of unequal order or
// sharing an edge.
std::vector<int> union_cycle_lengths(const OneFactor& f, const OneFactor& g);

// True iff f u g is a single Hamiltonian cycle of K_{n,n}.
bool is_perfect_pair(const OneFactor& f, const OneFactor& g);

// An ordered list of pairwise edge-disjoint 1-factors; the central search
// state. Value type, cheap to copy at these orders.
class Opf {
public:
    Opf() = default; // empty placeholder; order 0
    explicit Opf(int n);
    Opf(int n, std::vector<OneFactor> factors);

    int order() const { return n_; }
    int size() const { return static_cast<int>(factors_.size()); }
    bool complete() const { return size() == n_; }
    const OneFactor& factor(int k) const { return factors_[k]; }
    const std::vector<OneFactor>& factors() const { return factors_; }

    void append(OneFactor f);
    void pop();
    // The a-factor prefix [f_1,...,f_a].
    Opf prefix(int a) const;

    friend bool operator==(const Opf&, const Opf&) = default;
    friend std::strong_ordering operator<=>(const Opf& a, const Opf& b)
    {
        if (auto c = a.n_ <=> b.n_; c != 0) return c;
        return a.factors_ <=> b.factors_;
    }

private:
    int n_ = 0;
    std::vector<OneFactor> factors_;
};

// True iff every pair of distinct factors is perfect (vacuously true for
// fewer than two factors).
bool is_perfect(const Opf& P);

// [f_1, f_2] = [identity, cyclic shift]; the unique minimal perfect 2-prefix.
// Rejects even n (no perfect 1-factorisation of K_{n,n} exists for even n > 2)
// and n < 3.
Opf standard_prefix(int n);

// A 1-factorisation of the complete graph K_{2m}. Each factor is a
// fixed-point-free involution: mates[k][v] is the vertex matched with v.
class GeneralFactorisation {
public:
    GeneralFactorisation(int vertex_count, std::vector<std::vector<int>> mates);

    int vertex_count() const { return vertex_count_; }
    int size() const { return static_cast<int>(mates_.size()); }
    const std::vector<int>& factor_mates(int k) const { return mates_[k]; }

    // True iff the factors are exactly the 2m-1 factors of a partition of
    // E(K_{2m}). Pairwise disjointness is checked at construction.
    bool partitions_complete_graph() const;

    // Relabel every vertex by perm (test and tooling helper).
    GeneralFactorisation relabelled(const std::vector<int>& perm) const;

private:
    int vertex_count_ = 0;
    std::vector<std::vector<int>> mates_;
};

// True iff every pair of factors unions to a single Hamiltonian cycle.
// Rejects factorisations that do not partition E(K_{2m}).
bool general_is_perfect(const GeneralFactorisation& F);

} // namespace p1f

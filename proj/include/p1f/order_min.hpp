// Prefix order on ordered partial 1-factorisations and the minimality test
// used for isomorph rejection while seeding the search.
#pragma once

#include <vector>

#include "p1f/factors.hpp"

namespace p1f {

enum class PrefixComparison { Less, Greater, Equal, Incomparable };

// An isomorphism of K_{n,n}. Direct maps send u_i -> u_{u_map[i]} and
// v_j -> v_{v_map[j]}; side-swapping maps send u_i -> v_{u_map[i]} and
// v_j -> u_{v_map[j]}.
struct VertexMap {
    std::vector<int> u_map;
    std::vector<int> v_map;
    bool swap_sides = false;

    OneFactor apply(const OneFactor& f) const;
    VertexMap then(const VertexMap& second) const; // apply *this first, then second
    static VertexMap identity(int n);
};

// All isomorphisms of K_{n,n} carrying the standard pair {f_1, f_2} onto
// itself; exactly the 4n symmetries of the Hamiltonian cycle f_1 u f_2.
// swaps_pair[k] records whether maps[k] sends (f_1, f_2) to (f_2, f_1).
struct PairStabiliser {
    int n = 0;
    std::vector<VertexMap> maps;
    std::vector<bool> swaps_pair;
};

// Compares F and E by the first differing factor. Incomparable when one is a
// prefix of the other or the first difference sits past position 3; otherwise
// the factors' edge lists decide lexicographically.
PrefixComparison compare_prefix(const Opf& F, const Opf& E);

// Cached per order; computed by filtering the dihedral symmetries of the
// standard cycle.
const PairStabiliser& pair_stabiliser(int n);

// One direct isomorphism with phi(g) = f_1 and phi(h) = f_2, obtained by
// tracing the cycle g u h onto the standard cycle. Requires (g, h) perfect.
VertexMap transporter_to_standard_pair(const OneFactor& g, const OneFactor& h);

// True iff no isomorphic re-presentation of F has a smaller 3-prefix. F must
// be perfect with at least 3 factors and carry the standard 2-prefix.
bool is_minimal(const Opf& F);

} // namespace p1f

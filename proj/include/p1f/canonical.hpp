// Canonical labeling and automorphism counting for small coloured graphs:
// equitable colour refinement with target-cell individualization, backtracking
// and automorphism pruning. Canonical form = lexicographically least leaf
// certificate, prefixed by the colour-class sizes.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "p1f/coloured_graph.hpp"
#include "p1f/factors.hpp"

namespace p1f {

struct CanonicalForm {
    std::vector<uint8_t> bytes;

    friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
    friend auto operator<=>(const CanonicalForm& a, const CanonicalForm& b)
    {
        return a.bytes <=> b.bytes;
    }

    std::string hex_digest() const; // sha256, lowercase hex
};

struct CanonicalAnalysis {
    CanonicalForm form;
    uint64_t automorphism_group_order = 1;
    std::vector<std::vector<int>> generators; // automorphisms on graph vertices
};

CanonicalAnalysis analyse_graph(const ColouredGraph& g);
CanonicalForm canonical_form(const ColouredGraph& g);
uint64_t automorphism_group_order(const ColouredGraph& g);

// Object-level entry points. Factorisations carrying a perfect pair use an
// anchored labelling (every perfect pair mapped onto the standard pair; least
// sorted factor list wins) -- a complete invariant that avoids the search
// tree entirely. Everything else falls back to the graph engine; the two
// paths carry distinct tags and agree on the relation they encode.
CanonicalForm canonical_form(const Opf& F, ColourMode mode);
uint64_t automorphism_group_order(const Opf& F, ColourMode mode);
bool is_isomorphic(const Opf& A, const Opf& B, ColourMode mode);

} // namespace p1f

// Coloured-graph encoding of an ordered partial 1-factorisation. The colour
// scheme picks which symmetries a colour-preserving isomorphism may use.
#pragma once

#include <cstdint>
#include <vector>

#include "p1f/factors.hpp"

namespace p1f {

// P1F          : hubs U,V share a colour, F distinct -- unordered factorisation
//                isomorphism, sides swappable.
// P1FDirect    : V recoloured -- direct isomorphisms only.
// LsIsotopy    : F,U,V all distinct -- autotopisms / isotopism classes. Same
//                symmetry group as P1FDirect (rows = factors, columns = u side,
//                symbols = v side).
// LsSpecies    : F,U,V share a colour -- autoparatopisms / species.
// LsRowsOrdered: LsIsotopy plus factor vertices pinned by position (ordered
//                equality tests).
enum class ColourMode { P1F, P1FDirect, LsIsotopy, LsSpecies, LsRowsOrdered };

struct ColouredGraph {
    int vertex_count = 0;
    std::vector<int> colour;               // per-vertex colour class id
    std::vector<std::vector<int>> adj;     // sorted neighbour lists
    std::vector<uint64_t> adj_bits;        // row-major bit matrix
    int words_per_row = 0;
    // Vertices taking part in distance-based refinement. Hub vertices are
    // excluded: they flatten every distance to <= 4.
    std::vector<char> in_core;

    bool adjacent(int a, int b) const
    {
        return (adj_bits[static_cast<size_t>(a) * words_per_row + (b >> 6)] >> (b & 63)) & 1u;
    }

    void add_edge(int a, int b);
    void init(int vertices);
    void finalize();
};

// Graph with a + 2n role vertices, 3 hubs and a*n black edge vertices: each
// black vertex joins its factor, u- and v-vertex. Colour classes per mode.
ColouredGraph build_coloured_graph(const Opf& F, ColourMode mode);

// Scheme discriminator included in canonical forms. P1FDirect and LsIsotopy
// share a scheme on purpose: they induce the same symmetry group.
int colour_scheme_id(ColourMode mode);

} // namespace p1f

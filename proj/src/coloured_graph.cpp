#include "p1f/coloured_graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace p1f {

void ColouredGraph::init(int vertices)
{
    vertex_count = vertices;
    colour.assign(vertices, 0);
    adj.assign(vertices, {});
    words_per_row = (vertices + 63) / 64;
    adj_bits.assign(static_cast<size_t>(vertices) * words_per_row, 0);
    in_core.assign(vertices, 1);
}

void ColouredGraph::add_edge(int a, int b)
{
    adj[a].push_back(b);
    adj[b].push_back(a);
    adj_bits[static_cast<size_t>(a) * words_per_row + (b >> 6)] |= uint64_t{1} << (b & 63);
    adj_bits[static_cast<size_t>(b) * words_per_row + (a >> 6)] |= uint64_t{1} << (a & 63);
}

void ColouredGraph::finalize()
{
    for (auto& list : adj) std::sort(list.begin(), list.end());
}

int colour_scheme_id(ColourMode mode)
{
    switch (mode) {
        case ColourMode::P1F: return 0;
        case ColourMode::P1FDirect: return 1;
        case ColourMode::LsIsotopy: return 1;
        case ColourMode::LsSpecies: return 2;
        case ColourMode::LsRowsOrdered: return 3;
    }
    throw std::invalid_argument("unknown colour mode");
}

ColouredGraph build_coloured_graph(const Opf& F, ColourMode mode)
{
    const int n = F.order();
    const int a = F.size();

    // Layout: [0,a) factor vertices, [a,a+n) u, [a+n,a+2n) v,
    // then hubs F,U,V, then a*n black edge vertices.
    const int off_u = a;
    const int off_v = a + n;
    const int hub_f = a + 2 * n;
    const int hub_u = hub_f + 1;
    const int hub_v = hub_f + 2;
    const int off_black = hub_f + 3;

    ColouredGraph g;
    g.init(off_black + a * n);

    int c_hub_f, c_hub_u, c_hub_v, c_black;
    switch (mode) {
        case ColourMode::P1F:
            c_hub_f = 1, c_hub_u = 2, c_hub_v = 2, c_black = 3;
            break;
        case ColourMode::P1FDirect:
        case ColourMode::LsIsotopy:
            c_hub_f = 1, c_hub_u = 2, c_hub_v = 3, c_black = 4;
            break;
        case ColourMode::LsSpecies:
            c_hub_f = 1, c_hub_u = 1, c_hub_v = 1, c_black = 2;
            break;
        case ColourMode::LsRowsOrdered:
            c_hub_f = 1, c_hub_u = 2, c_hub_v = 3, c_black = 4;
            break;
        default:
            throw std::invalid_argument("unknown colour mode");
    }

    g.colour[hub_f] = c_hub_f;
    g.colour[hub_u] = c_hub_u;
    g.colour[hub_v] = c_hub_v;
    g.in_core[hub_f] = g.in_core[hub_u] = g.in_core[hub_v] = 0;
    for (int k = 0; k < a; ++k)
        g.colour[k] = mode == ColourMode::LsRowsOrdered ? 5 + k : 0;
    for (int b = 0; b < a * n; ++b) g.colour[off_black + b] = c_black;

    for (int k = 0; k < a; ++k) g.add_edge(k, hub_f);
    for (int i = 0; i < n; ++i) g.add_edge(off_u + i, hub_u);
    for (int j = 0; j < n; ++j) g.add_edge(off_v + j, hub_v);
    for (int k = 0; k < a; ++k) {
        for (int i = 0; i < n; ++i) {
            int black = off_black + k * n + i;
            g.add_edge(black, k);
            g.add_edge(black, off_u + i);
            g.add_edge(black, off_v + F.factor(k)[i]);
        }
    }
    g.finalize();
    return g;
}

} // namespace p1f

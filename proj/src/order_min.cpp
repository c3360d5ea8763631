#include "p1f/order_min.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace p1f {

namespace {

void require(bool cond, const char* msg)
{
    if (!cond) throw std::invalid_argument(msg);
}

// Vertex at position p of the standard cycle f_1 u f_2, traced from u_0 along
// its f_1 edge: positions 2k hold u_{-k mod n}, positions 2k+1 hold
// v_{-k mod n}. Returns (side, index), side 0 = u.
inline std::pair<int, int> standard_cycle_vertex(int p, int n)
{
    int k = p / 2;
    int idx = (n - k % n) % n;
    return {p % 2, idx};
}

struct StabIndex {
    PairStabiliser stab;
    // Inverses of u_map/v_map per element, for lazy image comparison.
    std::vector<std::vector<int>> u_inv;
    std::vector<std::vector<int>> v_inv;
};

const StabIndex& stab_index(int n)
{
    static std::mutex mu;
    static std::map<int, StabIndex> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    require(n >= 3 && n % 2 == 1, "pair_stabiliser: n must be odd, at least 3");
    const OneFactor f1 = OneFactor::identity(n);
    const OneFactor f2 = OneFactor::cyclic_shift(n);

    StabIndex idx;
    idx.stab.n = n;
    // Every symmetry of the 2n-cycle: position p -> (s + dir*p) mod 2n.
    for (int dir : {+1, -1}) {
        for (int s = 0; s < 2 * n; ++s) {
            VertexMap m;
            m.u_map.assign(n, -1);
            m.v_map.assign(n, -1);
            m.swap_sides = (s % 2) != 0; // image of position 0 (a u-vertex)
            bool ok = true;
            for (int p = 0; p < 2 * n; ++p) {
                auto [side_src, i_src] = standard_cycle_vertex(p, n);
                int q = ((s + dir * p) % (2 * n) + 2 * n) % (2 * n);
                auto [side_dst, i_dst] = standard_cycle_vertex(q, n);
                if ((side_src == side_dst) == m.swap_sides) {
                    ok = false;
                    break;
                }
                if (side_src == 0)
                    m.u_map[i_src] = i_dst;
                else
                    m.v_map[i_src] = i_dst;
            }
            if (!ok) continue;
            OneFactor g1 = m.apply(f1);
            OneFactor g2 = m.apply(f2);
            bool swaps;
            if (g1 == f1 && g2 == f2)
                swaps = false;
            else if (g1 == f2 && g2 == f1)
                swaps = true;
            else
                continue;
            std::vector<int> ui(n), vi(n);
            for (int i = 0; i < n; ++i) {
                ui[m.u_map[i]] = i;
                vi[m.v_map[i]] = i;
            }
            idx.stab.maps.push_back(std::move(m));
            idx.stab.swaps_pair.push_back(swaps);
            idx.u_inv.push_back(std::move(ui));
            idx.v_inv.push_back(std::move(vi));
        }
    }
    if (static_cast<int>(idx.stab.maps.size()) != 4 * n)
        throw std::logic_error("pair_stabiliser: expected 4n cycle symmetries");
    return cache.emplace(n, std::move(idx)).first->second;
}

} // namespace

VertexMap VertexMap::identity(int n)
{
    VertexMap m;
    m.u_map.resize(n);
    m.v_map.resize(n);
    for (int i = 0; i < n; ++i) m.u_map[i] = m.v_map[i] = i;
    return m;
}

OneFactor VertexMap::apply(const OneFactor& f) const
{
    const int n = f.order();
    std::vector<int> img(n);
    if (!swap_sides) {
        for (int i = 0; i < n; ++i) img[u_map[i]] = v_map[f[i]];
    } else {
        // Edge u_i v_{f(i)} maps to v_{u_map[i]} u_{v_map[f(i)]}.
        for (int i = 0; i < n; ++i) img[v_map[f[i]]] = u_map[i];
    }
    return OneFactor(std::move(img));
}

VertexMap VertexMap::then(const VertexMap& second) const
{
    const int n = static_cast<int>(u_map.size());
    VertexMap out;
    out.u_map.resize(n);
    out.v_map.resize(n);
    out.swap_sides = swap_sides != second.swap_sides;
    if (!swap_sides) {
        for (int i = 0; i < n; ++i) {
            out.u_map[i] = second.u_map[u_map[i]];
            out.v_map[i] = second.v_map[v_map[i]];
        }
    } else {
        for (int i = 0; i < n; ++i) {
            out.u_map[i] = second.v_map[u_map[i]];
            out.v_map[i] = second.u_map[v_map[i]];
        }
    }
    return out;
}

PrefixComparison compare_prefix(const Opf& F, const Opf& E)
{
    require(F.order() == E.order(), "compare_prefix: order mismatch");
    require(F.size() >= 1 && E.size() >= 1, "compare_prefix: empty prefix");

    const int m = std::min(F.size(), E.size());
    int j = -1;
    for (int i = 0; i < m; ++i) {
        if (F.factor(i) != E.factor(i)) {
            j = i;
            break;
        }
    }
    if (j < 0) return F.size() == E.size() ? PrefixComparison::Equal : PrefixComparison::Incomparable;
    if (j > 2) return PrefixComparison::Incomparable;

    auto c = F.factor(j).image() <=> E.factor(j).image();
    return c < 0 ? PrefixComparison::Less : PrefixComparison::Greater;
}

const PairStabiliser& pair_stabiliser(int n)
{
    return stab_index(n).stab;
}

VertexMap transporter_to_standard_pair(const OneFactor& g, const OneFactor& h)
{
    const int n = g.order();
    require(h.order() == n, "transporter: order mismatch");
    std::vector<int> hinv = h.inverse();

    VertexMap m;
    m.u_map.assign(n, -1);
    m.v_map.assign(n, -1);
    m.swap_sides = false;

    // Walk g u h from u_0, g edge first, mapping position p onto position p
    // of the standard cycle.
    int u = 0;
    for (int k = 0; k < n; ++k) {
        auto [su, iu] = standard_cycle_vertex(2 * k, n);
        auto [sv, iv] = standard_cycle_vertex(2 * k + 1, n);
        (void)su;
        (void)sv;
        if (m.u_map[u] != -1) throw std::invalid_argument("transporter: pair is not perfect");
        m.u_map[u] = iu;
        int v = g[u];
        if (m.v_map[v] != -1) throw std::invalid_argument("transporter: pair is not perfect");
        m.v_map[v] = iv;
        u = hinv[v];
    }
    if (u != 0) throw std::invalid_argument("transporter: pair is not perfect");
    return m;
}

bool is_minimal(const Opf& F)
{
    const int n = F.order();
    const int a = F.size();
    require(a >= 3, "is_minimal: needs at least 3 factors");
    require(F.factor(0) == OneFactor::identity(n) && F.factor(1) == OneFactor::cyclic_shift(n),
            "is_minimal: expects the standard 2-prefix");

    const std::vector<int>& key = F.factor(2).image();
    const StabIndex& si = stab_index(n);
    const size_t nmaps = si.stab.maps.size();

    std::vector<std::vector<int>> moved(a), moved_inv(a);
    for (int i = 0; i < a; ++i) {
        for (int j = i + 1; j < a; ++j) {
            // One transporter per unordered pair; composing with the full
            // stabiliser covers both ordered assignments.
            VertexMap phi0 = transporter_to_standard_pair(F.factor(i), F.factor(j));
            for (int k = 0; k < a; ++k) {
                if (k == i || k == j) continue;
                OneFactor m = phi0.apply(F.factor(k));
                moved_inv[k] = m.inverse();
                moved[k] = m.image();
            }
            for (size_t s = 0; s < nmaps; ++s) {
                const VertexMap& sg = si.stab.maps[s];
                const std::vector<int>& uinv = si.u_inv[s];
                const std::vector<int>& vinv = si.v_inv[s];
                for (int k = 0; k < a; ++k) {
                    if (k == i || k == j) continue;
                    // Lazy lexicographic compare of sg.apply(moved[k]) vs key.
                    const std::vector<int>& mk = moved[k];
                    const std::vector<int>& mki = moved_inv[k];
                    for (int pos = 0; pos < n; ++pos) {
                        int val = sg.swap_sides ? sg.u_map[mki[vinv[pos]]]
                                                : sg.v_map[mk[uinv[pos]]];
                        if (val == key[pos]) continue;
                        if (val < key[pos]) return false;
                        break;
                    }
                }
            }
        }
    }
    return true;
}

} // namespace p1f

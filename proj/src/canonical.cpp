#include "p1f/canonical.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

#include "p1f/order_min.hpp"
#include "p1f/perm_group.hpp"
#include "p1f/sha256.hpp"

namespace p1f {

namespace {

class CanonEngine {
public:
    explicit CanonEngine(const ColouredGraph& g) : g_(g), V(g.vertex_count)
    {
        lab_.resize(V);
        pos_.resize(V);
        cell_of_.resize(V);
        cell_size_.assign(V, 0);
        count_.assign(V, 0);
        in_queue_.assign(V, 0);
        mark_.assign(V, 0);
    }

    void run()
    {
        initial_partition();
        descend();
    }

    std::vector<uint8_t> best_cert() const { return best_cert_; }
    const std::vector<std::vector<int>>& generators() const { return gens_; }

private:
    const ColouredGraph& g_;
    int V;

    std::vector<int> lab_, pos_, cell_of_, cell_size_;
    std::vector<int> count_;
    std::deque<int> queue_;
    std::vector<char> in_queue_;
    std::vector<char> mark_;

    static constexpr int kNoJump = INT32_MAX;

    std::vector<int> path_;
    bool have_first_ = false;
    std::vector<uint8_t> first_cert_, best_cert_;
    std::vector<int> first_lab_, best_lab_;
    std::vector<int> first_path_, best_path_;
    std::vector<std::vector<int>> gens_;
    std::set<std::vector<int>> gens_seen_;

    static int common_prefix(const std::vector<int>& a, const std::vector<int>& b)
    {
        int k = 0;
        int lim = static_cast<int>(std::min(a.size(), b.size()));
        while (k < lim && a[k] == b[k]) ++k;
        return k;
    }

    void enqueue(int start)
    {
        if (!in_queue_[start]) {
            in_queue_[start] = 1;
            queue_.push_back(start);
        }
    }

    void initial_partition()
    {
        std::vector<int> order(V);
        for (int i = 0; i < V; ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return g_.colour[a] < g_.colour[b];
        });
        int s = 0;
        while (s < V) {
            int e = s;
            while (e < V && g_.colour[order[e]] == g_.colour[order[s]]) ++e;
            for (int p = s; p < e; ++p) {
                lab_[p] = order[p];
                pos_[order[p]] = p;
                cell_of_[order[p]] = s;
            }
            cell_size_[s] = e - s;
            enqueue(s);
            s = e;
        }
    }

    // Split every cell touched by counts into the splitter cell; fragments
    // ordered by ascending count. All fragments re-enter the work queue.
    void refine()
    {
        std::vector<int> touched_vertices;
        std::vector<int> touched_cells;
        while (!queue_.empty()) {
            int s = queue_.front();
            queue_.pop_front();
            in_queue_[s] = 0;

            touched_vertices.clear();
            touched_cells.clear();
            int len = cell_size_[s];
            for (int p = s; p < s + len; ++p) {
                for (int u : g_.adj[lab_[p]]) {
                    if (count_[u] == 0) touched_vertices.push_back(u);
                    ++count_[u];
                }
            }
            for (int u : touched_vertices) {
                int c = cell_of_[u];
                if (!mark_[c]) {
                    mark_[c] = 1;
                    touched_cells.push_back(c);
                }
            }
            std::sort(touched_cells.begin(), touched_cells.end());

            for (int c : touched_cells) {
                mark_[c] = 0;
                split_cell_by_values(c);
            }
            for (int u : touched_vertices) count_[u] = 0;
        }
    }

    // Split the cell starting at c by the values in count_, ascending and
    // stable; fragments re-enter the work queue.
    void split_cell_by_values(int c)
    {
        int clen = cell_size_[c];
        if (clen == 1) return;
        int lo = count_[lab_[c]], hi = lo;
        for (int p = c + 1; p < c + clen; ++p) {
            lo = std::min(lo, count_[lab_[p]]);
            hi = std::max(hi, count_[lab_[p]]);
        }
        if (lo == hi) return;

        std::vector<std::pair<int, int>> members;
        members.reserve(clen);
        for (int p = c; p < c + clen; ++p) members.emplace_back(count_[lab_[p]], lab_[p]);
        std::stable_sort(members.begin(), members.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        int p = c;
        size_t idx = 0;
        while (idx < members.size()) {
            int start = p;
            int cnt = members[idx].first;
            while (idx < members.size() && members[idx].first == cnt) {
                int v = members[idx].second;
                lab_[p] = v;
                pos_[v] = p;
                cell_of_[v] = start;
                ++p;
                ++idx;
            }
            cell_size_[start] = p - start;
            enqueue(start);
        }
    }

    // BFS distances from v within the core subgraph split every cell; hub
    // shortcuts would flatten the metric, so they are masked out. Far
    // stronger than plain counting refinement on these highly regular
    // graphs.
    void distance_refine(int v)
    {
        if (!g_.in_core[v]) return;
        const int far = V + 1;
        for (int i = 0; i < V; ++i) count_[i] = far;
        count_[v] = 0;
        std::deque<int> work{v};
        while (!work.empty()) {
            int x = work.front();
            work.pop_front();
            for (int y : g_.adj[x]) {
                if (g_.in_core[y] && count_[y] == far) {
                    count_[y] = count_[x] + 1;
                    work.push_back(y);
                }
            }
        }
        int s = 0;
        while (s < V) {
            int len = cell_size_[s];
            split_cell_by_values(s);
            s += len;
        }
        for (int i = 0; i < V; ++i) count_[i] = 0;
    }

    int target_cell() const
    {
        int best = -1, best_len = V + 1;
        int s = 0;
        while (s < V) {
            int len = cell_size_[s];
            if (len > 1 && len < best_len) {
                best = s;
                best_len = len;
            }
            s += len;
        }
        return best;
    }

    std::vector<uint8_t> leaf_cert() const
    {
        std::vector<uint8_t> cert((static_cast<size_t>(V) * (V - 1) / 2 + 7) / 8, 0);
        size_t bit = 0;
        for (int i = 0; i < V; ++i) {
            for (int j = i + 1; j < V; ++j, ++bit) {
                if (g_.adjacent(lab_[i], lab_[j])) cert[bit >> 3] |= uint8_t(0x80u >> (bit & 7));
            }
        }
        return cert;
    }

    // Returns the depth to resume at: a collision proves the current subtree
    // automorphic to an explored one, so unwind to the deepest common
    // ancestor of the two paths.
    int handle_leaf()
    {
        std::vector<uint8_t> cert = leaf_cert();
        if (!have_first_) {
            have_first_ = true;
            first_cert_ = cert;
            first_lab_ = lab_;
            first_path_ = path_;
            best_cert_ = std::move(cert);
            best_lab_ = lab_;
            best_path_ = path_;
            return kNoJump;
        }
        if (cert == first_cert_) {
            std::vector<int> sigma(V);
            for (int i = 0; i < V; ++i) sigma[lab_[i]] = first_lab_[i];
            record_generator(std::move(sigma));
            return common_prefix(path_, first_path_);
        }
        if (cert < best_cert_) {
            best_cert_ = std::move(cert);
            best_lab_ = lab_;
            best_path_ = path_;
            return kNoJump;
        }
        if (cert == best_cert_) {
            std::vector<int> sigma(V);
            for (int i = 0; i < V; ++i) sigma[lab_[i]] = best_lab_[i];
            record_generator(std::move(sigma));
            return common_prefix(path_, best_path_);
        }
        return kNoJump;
    }

    void record_generator(std::vector<int> sigma)
    {
        if (gens_seen_.insert(sigma).second) gens_.push_back(std::move(sigma));
    }

    // True iff v lies in the orbit of an explored sibling under the group
    // generated by the usable automorphisms (those fixing the current path
    // pointwise).
    bool pruned(int v, const std::vector<int>& explored, const std::vector<int>& usable)
    {
        if (explored.empty() || usable.empty()) return false;
        std::vector<int> stack(explored), marked(explored);
        for (int x : explored) mark_[x] = 1;
        bool hit = mark_[v] != 0;
        while (!stack.empty() && !hit) {
            int x = stack.back();
            stack.pop_back();
            for (int gi : usable) {
                int y = gens_[gi][x];
                if (!mark_[y]) {
                    mark_[y] = 1;
                    marked.push_back(y);
                    if (y == v) {
                        hit = true;
                        break;
                    }
                    stack.push_back(y);
                }
            }
        }
        for (int x : marked) mark_[x] = 0;
        return hit;
    }

    bool fixes_path(const std::vector<int>& sigma) const
    {
        for (int x : path_)
            if (sigma[x] != x) return false;
        return true;
    }

    int descend()
    {
        refine();
        int t = target_cell();
        if (t < 0) return handle_leaf();
        int len = cell_size_[t];
        std::vector<int> candidates(lab_.begin() + t, lab_.begin() + t + len);
        std::vector<int> explored;

        // Generators fixing the path pointwise, extended as children find more.
        std::vector<int> usable;
        size_t gens_scanned = 0;
        auto rescan_gens = [&]() {
            for (; gens_scanned < gens_.size(); ++gens_scanned)
                if (fixes_path(gens_[gens_scanned])) usable.push_back(static_cast<int>(gens_scanned));
        };

        const int depth = static_cast<int>(path_.size());
        std::vector<int> lab_s, pos_s, cell_of_s, cell_size_s;
        for (int v : candidates) {
            rescan_gens();
            if (pruned(v, explored, usable)) continue;
            lab_s = lab_;
            pos_s = pos_;
            cell_of_s = cell_of_;
            cell_size_s = cell_size_;

            // Individualize v: [v | rest of cell].
            int pv = pos_[v];
            std::swap(lab_[t], lab_[pv]);
            pos_[lab_[pv]] = pv;
            pos_[v] = t;
            cell_size_[t] = 1;
            cell_size_[t + 1] = len - 1;
            for (int p = t + 1; p < t + len; ++p) cell_of_[lab_[p]] = t + 1;
            enqueue(t);
            enqueue(t + 1);
            distance_refine(v);

            path_.push_back(v);
            int jump = descend();
            path_.pop_back();

            lab_ = lab_s;
            pos_ = pos_s;
            cell_of_ = cell_of_s;
            cell_size_ = cell_size_s;
            if (jump < depth) return jump; // subtree was an automorphic copy
            explored.push_back(v);
        }
        return kNoJump;
    }
};

void append_u16(std::vector<uint8_t>& out, int v)
{
    out.push_back(uint8_t(v & 0xff));
    out.push_back(uint8_t((v >> 8) & 0xff));
}

} // namespace

std::string CanonicalForm::hex_digest() const
{
    return sha256_hex(bytes);
}

CanonicalAnalysis analyse_graph(const ColouredGraph& g)
{
    CanonEngine engine(g);
    engine.run();

    CanonicalAnalysis out;
    // Header: vertex count + colour class sizes in ascending colour id order.
    append_u16(out.form.bytes, g.vertex_count);
    std::map<int, int> class_sizes;
    for (int c : g.colour) ++class_sizes[c];
    append_u16(out.form.bytes, static_cast<int>(class_sizes.size()));
    for (const auto& [id, size] : class_sizes) {
        append_u16(out.form.bytes, id);
        append_u16(out.form.bytes, size);
    }
    std::vector<uint8_t> cert = engine.best_cert();
    out.form.bytes.insert(out.form.bytes.end(), cert.begin(), cert.end());

    StabiliserChain chain(g.vertex_count);
    for (const auto& s : engine.generators()) chain.add_generator(s);
    out.automorphism_group_order = chain.order();
    out.generators = engine.generators();
    return out;
}

CanonicalForm canonical_form(const ColouredGraph& g)
{
    return analyse_graph(g).form;
}

uint64_t automorphism_group_order(const ColouredGraph& g)
{
    return analyse_graph(g).automorphism_group_order;
}

namespace {

constexpr uint8_t kTagAnchored = 0xA1;
constexpr uint8_t kTagEngine = 0xE1;
constexpr uint8_t kTagSpecies = 0x51;

// Ordered perfect pairs of F, as index pairs (both orders are reached by the
// stabiliser, so one direction per pair suffices).
std::vector<std::pair<int, int>> perfect_pairs(const Opf& F)
{
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < F.size(); ++i) {
        std::vector<int> inv = F.factor(i).inverse();
        for (int j = i + 1; j < F.size(); ++j) {
            if (!F.factor(i).disjoint_from(F.factor(j))) continue;
            if (perfect_pair_trace(F.factor(j).image().data(), inv.data(), F.order()))
                out.emplace_back(i, j);
        }
    }
    return out;
}

// Least sorted factor-image list over every presentation that carries some
// perfect pair onto the standard pair. Complete invariant for the
// unordered-factorisation isomorphism (side swaps iff allow_side_swap).
bool anchored_form(const Opf& F, bool allow_side_swap, std::vector<uint8_t>& out)
{
    const int n = F.order();
    const int a = F.size();
    if (n < 3 || n > 255 || a < 2) return false;
    auto pairs = perfect_pairs(F);
    if (pairs.empty()) return false;

    const PairStabiliser& stab = pair_stabiliser(n);
    std::vector<std::vector<int>> best;
    std::vector<OneFactor> moved(a, OneFactor());
    std::vector<std::vector<int>> imgs(a);
    for (auto [i, j] : pairs) {
        VertexMap phi0 = transporter_to_standard_pair(F.factor(i), F.factor(j));
        for (int k = 0; k < a; ++k) moved[k] = phi0.apply(F.factor(k));
        for (size_t s = 0; s < stab.maps.size(); ++s) {
            const VertexMap& sg = stab.maps[s];
            if (!allow_side_swap && sg.swap_sides) continue;
            for (int k = 0; k < a; ++k) imgs[k] = sg.apply(moved[k]).image();
            std::sort(imgs.begin(), imgs.end());
            if (best.empty() || imgs < best) best = imgs;
        }
    }
    out.clear();
    out.push_back(uint8_t(n));
    out.push_back(uint8_t(a));
    for (const auto& img : best)
        for (int x : img) out.push_back(uint8_t(x));
    return true;
}

// Exact automorphism counts by enumerating every candidate map that carries a
// perfect pair onto the standard pair of a standardized presentation.
bool anchored_aut(const Opf& F, uint64_t& total, uint64_t& direct)
{
    const int n = F.order();
    const int a = F.size();
    if (n < 3 || a < 2) return false;
    auto pairs = perfect_pairs(F);
    if (pairs.empty()) return false;

    // Standardize so that the target pair {f1,f2} lies inside the set.
    VertexMap norm = transporter_to_standard_pair(F.factor(pairs[0].first), F.factor(pairs[0].second));
    std::vector<std::vector<int>> base(a);
    Opf S(n);
    for (int k = 0; k < a; ++k) {
        OneFactor f = norm.apply(F.factor(k));
        base[k] = f.image();
        S.append(std::move(f));
    }
    std::sort(base.begin(), base.end());

    const PairStabiliser& stab = pair_stabiliser(n);
    std::vector<OneFactor> moved(a, OneFactor());
    std::vector<std::vector<int>> imgs(a);
    total = direct = 0;
    for (auto [i, j] : perfect_pairs(S)) {
        VertexMap phi0 = transporter_to_standard_pair(S.factor(i), S.factor(j));
        for (int k = 0; k < a; ++k) moved[k] = phi0.apply(S.factor(k));
        for (size_t s = 0; s < stab.maps.size(); ++s) {
            const VertexMap& sg = stab.maps[s];
            for (int k = 0; k < a; ++k) imgs[k] = sg.apply(moved[k]).image();
            std::sort(imgs.begin(), imgs.end());
            if (imgs == base) {
                ++total;
                if (!sg.swap_sides) ++direct; // phi0 is always direct
            }
        }
    }
    return true;
}

// Conjugate of a complete factorisation viewed as its triple set
// (factor, u, v); label semantics match the Latin-square conjugates.
Opf conjugate_opf(const Opf& F, const int d[3])
{
    const int n = F.order();
    std::vector<std::vector<int>> rows(n, std::vector<int>(n, -1));
    for (int k = 0; k < n; ++k) {
        for (int c = 0; c < n; ++c) {
            int e[3] = {k, c, F.factor(k)[c]};
            rows[e[d[0]]][e[d[1]]] = e[d[2]];
        }
    }
    Opf out(n);
    for (int k = 0; k < n; ++k) out.append(OneFactor(rows[k]));
    return out;
}

const int kConjugates[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};

CanonicalForm engine_form(const Opf& F, ColourMode mode)
{
    ColouredGraph g = build_coloured_graph(F, mode);
    CanonicalForm form = canonical_form(g);
    form.bytes.insert(form.bytes.begin(), uint8_t(colour_scheme_id(mode)));
    form.bytes.insert(form.bytes.begin(), kTagEngine);
    return form;
}

} // namespace

CanonicalForm canonical_form(const Opf& F, ColourMode mode)
{
    switch (mode) {
        case ColourMode::P1F:
        case ColourMode::P1FDirect:
        case ColourMode::LsIsotopy: {
            std::vector<uint8_t> payload;
            if (anchored_form(F, mode == ColourMode::P1F, payload)) {
                CanonicalForm form;
                form.bytes.push_back(kTagAnchored);
                form.bytes.push_back(uint8_t(colour_scheme_id(mode)));
                form.bytes.insert(form.bytes.end(), payload.begin(), payload.end());
                return form;
            }
            return engine_form(F, mode);
        }
        case ColourMode::LsSpecies: {
            if (!F.complete()) return engine_form(F, mode);
            CanonicalForm best;
            for (const auto& d : kConjugates) {
                CanonicalForm cand = canonical_form(conjugate_opf(F, d), ColourMode::LsIsotopy);
                if (best.bytes.empty() || cand < best) best = std::move(cand);
            }
            best.bytes.insert(best.bytes.begin(), kTagSpecies);
            return best;
        }
        case ColourMode::LsRowsOrdered:
            return engine_form(F, mode);
    }
    throw std::invalid_argument("unknown colour mode");
}

uint64_t automorphism_group_order(const Opf& F, ColourMode mode)
{
    switch (mode) {
        case ColourMode::P1F:
        case ColourMode::P1FDirect:
        case ColourMode::LsIsotopy: {
            uint64_t total = 0, direct = 0;
            if (anchored_aut(F, total, direct))
                return mode == ColourMode::P1F ? total : direct;
            return automorphism_group_order(build_coloured_graph(F, mode));
        }
        case ColourMode::LsSpecies: {
            if (!F.complete())
                return automorphism_group_order(build_coloured_graph(F, mode));
            uint64_t atop = automorphism_group_order(F, ColourMode::LsIsotopy);
            CanonicalForm self = canonical_form(F, ColourMode::LsIsotopy);
            uint64_t conjugates_isotopic = 0;
            for (const auto& d : kConjugates)
                if (canonical_form(conjugate_opf(F, d), ColourMode::LsIsotopy) == self)
                    ++conjugates_isotopic;
            return atop * conjugates_isotopic;
        }
        case ColourMode::LsRowsOrdered:
            return automorphism_group_order(build_coloured_graph(F, mode));
    }
    throw std::invalid_argument("unknown colour mode");
}

bool is_isomorphic(const Opf& A, const Opf& B, ColourMode mode)
{
    if (A.order() != B.order()) return false;
    return canonical_form(A, mode) == canonical_form(B, mode);
}

} // namespace p1f

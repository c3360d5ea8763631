#include "p1f/perm_group.hpp"

#include <deque>
#include <map>
#include <stdexcept>

namespace p1f {

namespace {

using Perm = std::vector<int>;

bool is_identity(const Perm& g)
{
    for (size_t i = 0; i < g.size(); ++i)
        if (g[i] != static_cast<int>(i)) return false;
    return true;
}

// Apply b first, then a.
Perm compose(const Perm& a, const Perm& b)
{
    Perm out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[b[i]];
    return out;
}

Perm inverse(const Perm& g)
{
    Perm out(g.size());
    for (size_t i = 0; i < g.size(); ++i) out[g[i]] = static_cast<int>(i);
    return out;
}

int smallest_moved(const Perm& g)
{
    for (size_t i = 0; i < g.size(); ++i)
        if (g[i] != static_cast<int>(i)) return static_cast<int>(i);
    return -1;
}

// Deterministic Schreier-Sims. stored[j] holds strong generators fixing
// base[0..j-1]; S^(k) is the union of stored[j] for j >= k. Levels are
// verified deepest-first; discovering a new strong generator at level j
// restarts verification from j.
class Chain {
public:
    Chain(int degree, const std::vector<Perm>& gens) : degree_(degree)
    {
        for (const Perm& g : gens) {
            if (static_cast<int>(g.size()) != degree_)
                throw std::invalid_argument("group_order: degree mismatch");
            if (!is_identity(g)) insert(0, g);
        }
        if (base_.empty()) return;

        int k = static_cast<int>(base_.size()) - 1;
        while (k >= 0) {
            rebuild_orbit(k);
            int stuck = verify_level(k);
            if (stuck >= 0)
                k = stuck; // new strong generator below; re-verify from there
            else
                --k;
        }
    }

    uint64_t order() const
    {
        uint64_t o = 1;
        for (const auto& t : trans_) o *= static_cast<uint64_t>(t.size());
        return o;
    }

private:
    void insert(int level, const Perm& g)
    {
        if (level == static_cast<int>(base_.size())) {
            base_.push_back(smallest_moved(g));
            stored_.emplace_back();
            trans_.emplace_back();
        }
        stored_[level].push_back(g);
    }

    std::vector<const Perm*> level_gens(int k) const
    {
        std::vector<const Perm*> out;
        for (size_t j = k; j < stored_.size(); ++j)
            for (const Perm& g : stored_[j]) out.push_back(&g);
        return out;
    }

    void rebuild_orbit(int k)
    {
        auto gens = level_gens(k);
        auto& t = trans_[k];
        t.clear();
        Perm id(degree_);
        for (int i = 0; i < degree_; ++i) id[i] = i;
        t[base_[k]] = id;
        std::deque<int> work{base_[k]};
        while (!work.empty()) {
            int x = work.front();
            work.pop_front();
            Perm rep = t.at(x);
            for (const Perm* g : gens) {
                int y = (*g)[x];
                if (!t.count(y)) {
                    t[y] = compose(*g, rep);
                    work.push_back(y);
                }
            }
        }
    }

    // (residue, level) of sifting h through levels from..; residue empty when
    // h is in the group described by those levels.
    std::pair<Perm, int> sift(Perm h, int from) const
    {
        for (int lv = from; lv < static_cast<int>(base_.size()); ++lv) {
            if (is_identity(h)) return {Perm{}, -1};
            auto it = trans_[lv].find(h[base_[lv]]);
            if (it == trans_[lv].end()) return {std::move(h), lv};
            h = compose(inverse(it->second), h);
        }
        if (is_identity(h)) return {Perm{}, -1};
        return {std::move(h), static_cast<int>(base_.size())};
    }

    // Checks every Schreier generator of level k. Returns the level of a
    // newly inserted strong generator, or -1 when the level verifies.
    int verify_level(int k)
    {
        auto gens = level_gens(k);
        std::vector<std::pair<int, Perm>> orbit(trans_[k].begin(), trans_[k].end());
        for (const auto& [pt, rep] : orbit) {
            for (const Perm* s : gens) {
                Perm h = compose(inverse(trans_[k].at((*s)[pt])), compose(*s, rep));
                auto [residue, level] = sift(std::move(h), k + 1);
                if (!residue.empty()) {
                    insert(level, residue);
                    return level;
                }
            }
        }
        return -1;
    }

    int degree_;
    std::vector<int> base_;
    std::vector<std::vector<Perm>> stored_;
    std::vector<std::map<int, Perm>> trans_;
};

} // namespace

struct StabiliserChain::Level {};

StabiliserChain::StabiliserChain(int degree) : degree_(degree) {}

void StabiliserChain::add_generator(const std::vector<int>& g)
{
    if (static_cast<int>(g.size()) != degree_)
        throw std::invalid_argument("StabiliserChain: degree mismatch");
    gens_.push_back(g);
}

uint64_t StabiliserChain::order() const
{
    Chain chain(degree_, gens_);
    return chain.order();
}

uint64_t group_order(int degree, const std::vector<std::vector<int>>& generators)
{
    Chain chain(degree, generators);
    return chain.order();
}

} // namespace p1f

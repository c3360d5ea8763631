#include "p1f/factors.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace p1f {

namespace {

void require(bool cond, const char* msg)
{
    if (!cond) throw std::invalid_argument(msg);
}

bool is_permutation(const std::vector<int>& v)
{
    std::vector<char> seen(v.size(), 0);
    for (int x : v) {
        if (x < 0 || x >= static_cast<int>(v.size()) || seen[x]) return false;
        seen[x] = 1;
    }
    return true;
}

} // namespace

OneFactor::OneFactor(std::vector<int> image) : image_(std::move(image))
{
    require(is_permutation(image_), "OneFactor image must be a permutation of 0..n-1");
}

OneFactor OneFactor::identity(int n)
{
    std::vector<int> img(n);
    for (int i = 0; i < n; ++i) img[i] = i;
    return OneFactor(std::move(img));
}

OneFactor OneFactor::cyclic_shift(int n)
{
    std::vector<int> img(n);
    for (int i = 0; i < n; ++i) img[i] = (i + 1) % n;
    return OneFactor(std::move(img));
}

std::vector<int> OneFactor::inverse() const
{
    std::vector<int> inv(image_.size());
    for (int i = 0; i < order(); ++i) inv[image_[i]] = i;
    return inv;
}

bool OneFactor::disjoint_from(const OneFactor& g) const
{
    if (order() != g.order()) return false;
    for (int i = 0; i < order(); ++i)
        if (image_[i] == g.image_[i]) return false;
    return true;
}

std::vector<int> union_cycle_lengths(const OneFactor& f, const OneFactor& g)
{
    require(f.order() == g.order(), "union_cycle_lengths: factors of unequal order");
    const int n = f.order();
    require(f.disjoint_from(g), "union_cycle_lengths: factors share an edge");

    // Cycles of g^-1 o f on the u side correspond to union cycles of twice
    // the length.
    std::vector<int> ginv = g.inverse();
    std::vector<char> visited(n, 0);
    std::vector<int> lengths;
    for (int s = 0; s < n; ++s) {
        if (visited[s]) continue;
        int len = 0;
        int i = s;
        do {
            visited[i] = 1;
            i = ginv[f[i]];
            ++len;
        } while (i != s);
        lengths.push_back(2 * len);
    }
    std::sort(lengths.begin(), lengths.end(), std::greater<int>());
    return lengths;
}

bool is_perfect_pair(const OneFactor& f, const OneFactor& g)
{
    require(f.order() == g.order(), "is_perfect_pair: factors of unequal order");
    require(f.disjoint_from(g), "is_perfect_pair: factors share an edge");
    std::vector<int> ginv = g.inverse();
    return perfect_pair_trace(f.image().data(), ginv.data(), f.order());
}

Opf::Opf(int n) : n_(n)
{
    require(n >= 1, "Opf: order must be positive");
}

Opf::Opf(int n, std::vector<OneFactor> factors) : n_(n)
{
    require(n >= 1, "Opf: order must be positive");
    for (auto& f : factors) {
        OneFactor next = std::move(f);
        require(next.order() == n_, "Opf: factor order mismatch");
        for (const auto& prev : factors_)
            require(prev.disjoint_from(next), "Opf: factors must be pairwise disjoint");
        factors_.push_back(std::move(next));
    }
}

void Opf::append(OneFactor f)
{
    require(f.order() == n_, "Opf::append: factor order mismatch");
    require(size() < n_, "Opf::append: factorisation already complete");
    for (const auto& prev : factors_)
        require(prev.disjoint_from(f), "Opf::append: factor not disjoint");
    factors_.push_back(std::move(f));
}

void Opf::pop()
{
    require(!factors_.empty(), "Opf::pop: empty");
    factors_.pop_back();
}

Opf Opf::prefix(int a) const
{
    require(a >= 0 && a <= size(), "Opf::prefix: bad length");
    return Opf(n_, std::vector<OneFactor>(factors_.begin(), factors_.begin() + a));
}

bool is_perfect(const Opf& P)
{
    for (int i = 0; i < P.size(); ++i) {
        std::vector<int> inv = P.factor(i).inverse();
        for (int j = i + 1; j < P.size(); ++j)
            if (!perfect_pair_trace(P.factor(j).image().data(), inv.data(), P.order()))
                return false;
    }
    return true;
}

Opf standard_prefix(int n)
{
    require(n % 2 == 1, "standard_prefix: n must be odd (no perfect 1-factorisation of K_{n,n} for even n > 2)");
    require(n >= 3, "standard_prefix: n must be at least 3");
    Opf P(n);
    P.append(OneFactor::identity(n));
    P.append(OneFactor::cyclic_shift(n));
    return P;
}

GeneralFactorisation::GeneralFactorisation(int vertex_count, std::vector<std::vector<int>> mates)
    : vertex_count_(vertex_count), mates_(std::move(mates))
{
    require(vertex_count_ >= 2 && vertex_count_ % 2 == 0,
            "GeneralFactorisation: vertex count must be even and positive");
    for (const auto& m : mates_) {
        require(static_cast<int>(m.size()) == vertex_count_,
                "GeneralFactorisation: mate array size mismatch");
        for (int v = 0; v < vertex_count_; ++v) {
            require(m[v] >= 0 && m[v] < vertex_count_ && m[v] != v && m[m[v]] == v,
                    "GeneralFactorisation: factor is not a fixed-point-free involution");
        }
    }
    for (size_t a = 0; a < mates_.size(); ++a)
        for (size_t b = a + 1; b < mates_.size(); ++b)
            for (int v = 0; v < vertex_count_; ++v)
                require(mates_[a][v] != mates_[b][v],
                        "GeneralFactorisation: factors share an edge");
}

bool GeneralFactorisation::partitions_complete_graph() const
{
    // Pairwise disjoint factors with m edges each partition E(K_{2m}) exactly
    // when there are 2m-1 of them.
    return size() == vertex_count_ - 1;
}

GeneralFactorisation GeneralFactorisation::relabelled(const std::vector<int>& perm) const
{
    std::vector<std::vector<int>> out(mates_.size(), std::vector<int>(vertex_count_));
    for (size_t k = 0; k < mates_.size(); ++k)
        for (int v = 0; v < vertex_count_; ++v)
            out[k][perm[v]] = perm[mates_[k][v]];
    return GeneralFactorisation(vertex_count_, std::move(out));
}

bool general_is_perfect(const GeneralFactorisation& F)
{
    if (!F.partitions_complete_graph())
        throw std::invalid_argument("general_is_perfect: factors do not partition E(K_{2m})");
    const int N = F.vertex_count();
    for (int a = 0; a < F.size(); ++a) {
        for (int b = a + 1; b < F.size(); ++b) {
            const auto& fa = F.factor_mates(a);
            const auto& fb = F.factor_mates(b);
            // Walk the alternating cycle through vertex 0; Hamiltonian iff it
            // has N edges.
            int v = 0;
            int steps = 0;
            do {
                v = fb[fa[v]];
                steps += 2;
            } while (v != 0);
            if (steps != N) return false;
        }
    }
    return true;
}

} // namespace p1f

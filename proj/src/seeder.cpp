#include "p1f/seeder.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>

#include "p1f/order_min.hpp"

namespace p1f {

namespace {

// Lexicographic backtracking over images of a new factor t. For each base
// factor f the partial permutation sigma = f^-1 o t must stay a disjoint
// union of paths until the very last arc closes the full n-cycle; paths are
// tracked with head/tail links, O(1) per arc and undo.
//
// head_of[x] is valid while x is the tail of its path, tail_of[x] while x is
// the head; position i always has out-degree 0 when its arc is chosen, and a
// fresh image j guarantees the arc target has in-degree 0.
class ExtensionEnumerator {
public:
    ExtensionEnumerator(const Opf& base, const std::function<void(const OneFactor&)>& fn)
        : n_(base.order()), fn_(fn)
    {
        for (int k = 0; k < base.size(); ++k) base_inv_.push_back(base.factor(k).inverse());
        head_of_.assign(base_inv_.size(), std::vector<int>(n_));
        tail_of_.assign(base_inv_.size(), std::vector<int>(n_));
        for (auto& v : head_of_)
            for (int i = 0; i < n_; ++i) v[i] = i;
        for (auto& v : tail_of_)
            for (int i = 0; i < n_; ++i) v[i] = i;
        used_.assign(n_, 0);
        img_.assign(n_, -1);
    }

    void run() { rec(0); }

private:
    struct Undo {
        int k, h, t, b;
    };

    void rec(int i)
    {
        if (i == n_) {
            fn_(OneFactor(img_));
            return;
        }
        const bool last = (i == n_ - 1);
        const int nk = static_cast<int>(base_inv_.size());
        std::array<Undo, 16> undo;
        for (int j = 0; j < n_; ++j) {
            if (used_[j]) continue;
            bool ok = true;
            int nundo = 0;
            for (int k = 0; k < nk; ++k) {
                int b = base_inv_[k][j]; // sigma_k gains the arc i -> b
                int h = head_of_[k][i];
                if (h == b) {
                    // closes the cycle; only the final arc may do that
                    if (!last) {
                        ok = false;
                        break;
                    }
                    continue;
                }
                if (last) {
                    ok = false; // final arc must close the single path
                    break;
                }
                int t = tail_of_[k][b];
                undo[nundo++] = {k, h, t, b};
                tail_of_[k][h] = t;
                head_of_[k][t] = h;
            }
            if (ok) {
                used_[j] = 1;
                img_[i] = j;
                rec(i + 1);
                img_[i] = -1;
                used_[j] = 0;
            }
            for (int u = nundo - 1; u >= 0; --u) {
                tail_of_[undo[u].k][undo[u].h] = i;
                head_of_[undo[u].k][undo[u].t] = undo[u].b;
            }
        }
    }

    int n_;
    const std::function<void(const OneFactor&)>& fn_;
    std::vector<std::vector<int>> base_inv_;
    std::vector<std::vector<int>> head_of_, tail_of_;
    std::vector<char> used_;
    std::vector<int> img_;
};

} // namespace

void for_each_perfect_extension(const Opf& base, const std::function<void(const OneFactor&)>& fn)
{
    if (base.size() >= 16) throw std::invalid_argument("for_each_perfect_extension: too many factors");
    ExtensionEnumerator e(base, fn);
    e.run();
}

SeedSet gen_seeds(int n)
{
    if (n < 5 || n % 2 == 0) throw std::invalid_argument("gen_seeds: n must be odd, at least 5");

    const Opf base = standard_prefix(n);
    std::map<std::vector<uint8_t>, Seed> by_canon;

    Opf three = base;
    for_each_perfect_extension(base, [&](const OneFactor& f3) {
        three.append(f3);
        if (is_minimal(three)) {
            Opf four = three;
            for_each_perfect_extension(three, [&](const OneFactor& f4) {
                four.append(f4);
                if (is_minimal(four)) {
                    CanonicalForm canon = canonical_form(four, ColourMode::P1F);
                    std::vector<uint8_t> key = canon.bytes;
                    if (!by_canon.count(key)) {
                        std::string digest = canon.hex_digest();
                        by_canon.emplace(std::move(key), Seed{four, std::move(canon), std::move(digest)});
                    }
                }
                four.pop();
            });
        }
        three.pop();
    });

    SeedSet out;
    out.n = n;
    for (auto& [bytes, seed] : by_canon) out.seeds.push_back(std::move(seed));
    return out;
}

SeedSet shard(const SeedSet& s, int index, int total)
{
    if (total < 1 || index < 0 || index >= total)
        throw std::invalid_argument("shard: index out of range");
    SeedSet out;
    out.n = s.n;
    for (size_t i = index; i < s.seeds.size(); i += total) out.seeds.push_back(s.seeds[i]);
    return out;
}

} // namespace p1f

#include "p1f/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <stdexcept>
#include <thread>

#include "p1f/order_min.hpp"

namespace p1f {

namespace {

using Clock = std::chrono::steady_clock;

struct SearchCtx {
    int n;
    const std::vector<OneFactor>& arena;
    std::vector<std::vector<int>> inverses;
    const std::function<void(const Opf&)>& sink;
    SearchStats* stats;
    Opf current;
    std::vector<uint32_t> covered; // per u-vertex bitmask of used v's

    SearchCtx(const Opf& P, const std::vector<OneFactor>& T,
              const std::function<void(const Opf&)>& sink_, SearchStats* stats_)
        : n(P.order()), arena(T), sink(sink_), stats(stats_), current(P), covered(P.order(), 0)
    {
        inverses.reserve(T.size());
        for (const auto& t : T) inverses.push_back(t.inverse());
        for (int k = 0; k < P.size(); ++k)
            for (int i = 0; i < n; ++i) covered[i] |= 1u << P.factor(k)[i];
    }
};

void add_factor_rec(SearchCtx& ctx, const CompatibleSet& T)
{
    if (ctx.stats) {
        ++ctx.stats->nodes;
        ctx.stats->max_depth = std::max(ctx.stats->max_depth, ctx.current.size());
    }
    if (ctx.current.complete()) {
        if (ctx.stats) ++ctx.stats->emitted;
        ctx.sink(ctx.current);
        return;
    }

    // Uncovered edge in the fewest candidates, lexicographically least tie.
    const int n = ctx.n;
    int best_i = -1, best_j = -1, best_count = INT32_MAX;
    for (int i = 0; i < n && best_count > 0; ++i) {
        for (int j = 0; j < n; ++j) {
            if ((ctx.covered[i] >> j) & 1) continue;
            int c = T.edge_count[i * n + j];
            if (c < best_count) {
                best_count = c;
                best_i = i;
                best_j = j;
                if (c == 0) break;
            }
        }
    }
    if (best_i < 0 || best_count == 0) return; // dead branch

    for (int idx : T.members) {
        if (ctx.arena[idx][best_i] != best_j) continue;
        const std::vector<int>& t_inv = ctx.inverses[idx];

        CompatibleSet child;
        child.members.reserve(T.members.size());
        child.edge_count = T.edge_count;
        for (int m : T.members) {
            if (m != idx && perfect_pair_trace(ctx.arena[m].image().data(), t_inv.data(), n)) {
                child.members.push_back(m);
            } else {
                const OneFactor& f = ctx.arena[m];
                for (int i = 0; i < n; ++i) --child.edge_count[i * n + f[i]];
            }
        }

        ctx.current.append(ctx.arena[idx]);
        for (int i = 0; i < n; ++i) ctx.covered[i] |= 1u << ctx.arena[idx][i];
        add_factor_rec(ctx, child);
        for (int i = 0; i < n; ++i) ctx.covered[i] &= ~(1u << ctx.arena[idx][i]);
        ctx.current.pop();
    }
}

} // namespace

CompatibleSet CompatibleSet::full(const std::vector<OneFactor>& arena, int n)
{
    CompatibleSet s;
    s.members.resize(arena.size());
    for (size_t i = 0; i < arena.size(); ++i) s.members[i] = static_cast<int>(i);
    s.edge_count.assign(n * n, 0);
    for (const auto& f : arena)
        for (int i = 0; i < n; ++i) ++s.edge_count[i * n + f[i]];
    return s;
}

std::vector<int> CompatibleSet::recounted(const std::vector<OneFactor>& arena, int n) const
{
    std::vector<int> counts(n * n, 0);
    for (int m : members) {
        const OneFactor& f = arena[m];
        for (int i = 0; i < n; ++i) ++counts[i * n + f[i]];
    }
    return counts;
}

void add_factor(const Opf& P, const std::vector<OneFactor>& T,
                const std::function<void(const Opf&)>& sink, SearchStats* stats)
{
    auto started = Clock::now();
    SearchCtx ctx(P, T, sink, stats);
    add_factor_rec(ctx, CompatibleSet::full(T, P.order()));
    if (stats)
        stats->wall_seconds +=
            std::chrono::duration_cast<std::chrono::duration<double>>(Clock::now() - started).count();
}

std::vector<OneFactor> initial_compatible_set(const Opf& seed)
{
    std::vector<OneFactor> T;
    Opf work = seed;
    for_each_perfect_extension(seed, [&](const OneFactor& t) {
        work.append(t);
        if (is_minimal(work)) T.push_back(t);
        work.pop();
    });
    return T;
}

bool IsoScreen::add(const Opf& F)
{
    CanonicalForm canon = canonical_form(F, ColourMode::P1F);
    std::lock_guard<std::mutex> lock(mu_);
    auto it = reps_.find(canon.bytes);
    if (it == reps_.end()) {
        if (journal_) journal_(canon.hex_digest(), F);
        reps_.emplace(std::move(canon.bytes), F);
        return true;
    }
    if (F < it->second) {
        if (journal_) journal_(canon.hex_digest(), F);
        it->second = F;
        return true;
    }
    return false;
}

std::vector<ClassRecord> IsoScreen::finish() const
{
    std::lock_guard<std::mutex> lock(mu_);
    std::vector<ClassRecord> out;
    out.reserve(reps_.size());
    for (const auto& [bytes, rep] : reps_) {
        ClassRecord rec;
        rec.form.bytes = bytes;
        rec.digest = rec.form.hex_digest();
        rec.rep = rep;
        rec.automorphisms = automorphism_group_order(rep, ColourMode::P1F);
        rec.direct_automorphisms = automorphism_group_order(rep, ColourMode::P1FDirect);
        out.push_back(std::move(rec));
    }
    return out;
}

EnumerationResult run_seeded_enumeration(const SeedSet& seeds, const EnumerateOptions& opts)
{
    EnumerationResult result;
    result.n = seeds.n;
    result.seeds_total = seeds.seeds.size();

    IsoScreen screen;
    for (const Opf& F : opts.preload) screen.add(F);
    screen.set_journal(opts.journal);
    std::atomic<size_t> cursor{0};
    std::atomic<uint64_t> processed{0};
    std::mutex stats_mu;

    int nthreads = std::max(1, opts.threads);
    auto worker = [&]() {
        SearchStats local;
        while (true) {
            size_t i = cursor.fetch_add(1);
            if (i >= seeds.seeds.size()) break;
            if (opts.skip_seed && opts.skip_seed(i)) continue;
            const Opf& seed = seeds.seeds[i].opf;
            std::vector<OneFactor> T = initial_compatible_set(seed);
            add_factor(seed, T, [&](const Opf& F) { screen.add(F); }, &local);
            if (opts.seed_done) opts.seed_done(i);
            processed.fetch_add(1);
            if (opts.progress && (i % 64 == 0)) {
                opts.progress("seed " + std::to_string(i) + "/" +
                              std::to_string(seeds.seeds.size()) + " classes=" +
                              std::to_string(screen.size()));
            }
        }
        std::lock_guard<std::mutex> lock(stats_mu);
        result.stats.merge(local);
    };

    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    result.seeds_processed = processed.load();
    result.classes = screen.finish();
    return result;
}

EnumerationResult enumerate_p1fs(int n, const EnumerateOptions& opts)
{
    if (n != 2 && (n < 2 || n % 2 == 0))
        throw std::invalid_argument("enumerate: perfect 1-factorisations of K_{n,n} exist only for n = 2 or odd n");

    if (n == 2 || n == 3) {
        // Complete factorisations are one extension away from the forced
        // prefix; enumerate them all directly.
        EnumerationResult result;
        result.n = n;
        IsoScreen screen(opts.journal);
        SearchStats stats;
        if (n == 2) {
            Opf F(2, {OneFactor({0, 1}), OneFactor({1, 0})});
            ++stats.emitted;
            screen.add(F);
        } else {
            Opf base = standard_prefix(3);
            Opf work = base;
            for_each_perfect_extension(base, [&](const OneFactor& t) {
                work.append(t);
                ++stats.emitted;
                screen.add(work);
                work.pop();
            });
        }
        result.stats = stats;
        result.classes = screen.finish();
        return result;
    }

    if (n < 5) throw std::invalid_argument("enumerate: n must be 2, 3 or odd >= 5");
    if (opts.progress) opts.progress("generating seeds for n=" + std::to_string(n));
    SeedSet seeds = gen_seeds(n);
    if (opts.progress)
        opts.progress("seeds total=" + std::to_string(seeds.seeds.size()) + " shard=" +
                      std::to_string(opts.shard_index) + "/" + std::to_string(opts.shard_total));
    SeedSet mine = opts.shard_total > 1 ? shard(seeds, opts.shard_index, opts.shard_total) : seeds;
    return run_seeded_enumeration(mine, opts);
}

} // namespace p1f

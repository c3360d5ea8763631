// The recursive extension search over compatible 1-factors and the seeded
// enumeration driver with isomorphism screening.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "p1f/canonical.hpp"
#include "p1f/factors.hpp"
#include "p1f/seeder.hpp"

namespace p1f {

struct SearchStats {
    uint64_t nodes = 0;
    uint64_t emitted = 0;
    int max_depth = 0;
    double wall_seconds = 0;

    void merge(const SearchStats& o)
    {
        nodes += o.nodes;
        emitted += o.emitted;
        max_depth = std::max(max_depth, o.max_depth);
        wall_seconds += o.wall_seconds;
    }
};

// Candidate factors plus per-edge occurrence counts (count of candidates
// through each edge), kept in sync incrementally as the set shrinks.
struct CompatibleSet {
    std::vector<int> members;     // indices into the candidate arena
    std::vector<int> edge_count;  // n*n, edge (i,j) at i*n+j

    static CompatibleSet full(const std::vector<OneFactor>& arena, int n);
    std::vector<int> recounted(const std::vector<OneFactor>& arena, int n) const;
};

// Emits every complete perfect 1-factorisation reachable from P by appending
// members of T, branching on an uncovered edge lying in the fewest candidates
// (lexicographically least on ties).
void add_factor(const Opf& P, const std::vector<OneFactor>& T,
                const std::function<void(const Opf&)>& sink, SearchStats* stats = nullptr);

// Candidates t for which seed || t is a minimal perfect partial
// 1-factorisation (the top-level compatible set of a seed).
std::vector<OneFactor> initial_compatible_set(const Opf& seed);

struct ClassRecord {
    CanonicalForm form;
    std::string digest;
    Opf rep; // lexicographically least emission of the class
    uint64_t automorphisms = 0;
    uint64_t direct_automorphisms = 0;
};

// Thread-safe dedup store keyed by canonical form; keeps the least emission
// as class representative, so results are independent of seed order,
// sharding and thread count.
class IsoScreen {
public:
    using Journal = std::function<void(const std::string& digest, const Opf& rep)>;

    explicit IsoScreen(Journal journal = nullptr) : journal_(std::move(journal)) {}

    void set_journal(Journal journal) { journal_ = std::move(journal); }

    bool add(const Opf& F); // true if the store changed
    size_t size() const { return reps_.size(); }

    // Sorted by canonical form; fills in automorphism group orders.
    std::vector<ClassRecord> finish() const;

private:
    mutable std::mutex mu_;
    std::map<std::vector<uint8_t>, Opf> reps_;
    Journal journal_;
};

struct EnumerateOptions {
    int shard_index = 0;
    int shard_total = 1;
    int threads = 1;
    std::function<bool(size_t)> skip_seed;            // resume: true = already done
    std::function<void(size_t)> seed_done;            // checkpoint hook
    IsoScreen::Journal journal;                       // crash-tolerance hook
    std::vector<Opf> preload;                         // journal replay on resume
    std::function<void(const std::string&)> progress; // human-readable notes
};

struct EnumerationResult {
    int n = 0;
    uint64_t seeds_total = 0;   // in this shard
    uint64_t seeds_processed = 0;
    std::vector<ClassRecord> classes;
    SearchStats stats;
};

// Runs the extension search over every seed in the set and screens the
// emissions for isomorphism.
EnumerationResult run_seeded_enumeration(const SeedSet& seeds, const EnumerateOptions& opts);

// Full driver: seeds, sharding, search, screening. n = 2 and n = 3 are
// completed by direct extension of the forced prefix instead of seeding.
EnumerationResult enumerate_p1fs(int n, const EnumerateOptions& opts);

} // namespace p1f

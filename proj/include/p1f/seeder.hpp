// Seed generation: minimal isomorphism-class representatives of perfect
// 4-factor partial 1-factorisations, deduplicated by canonical form.
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "p1f/canonical.hpp"
#include "p1f/factors.hpp"

namespace p1f {

struct Seed {
    Opf opf;
    CanonicalForm canon; // unordered-factorisation canonical form
    std::string digest;
};

struct SeedSet {
    int n = 0;
    std::vector<Seed> seeds; // sorted by canonical form
};

// Enumerates, in lexicographic image order, every 1-factor t for which
// base || t is a perfect partial 1-factorisation. Backtracking with partial
// single-cycle feasibility pruning against every base factor.
void for_each_perfect_extension(const Opf& base, const std::function<void(const OneFactor&)>& fn);

// All perfect 4-factor representatives with the standard 2-prefix, each
// minimal, exactly one per isomorphism class.
SeedSet gen_seeds(int n);

// Positions congruent to index mod total; the shards partition the set.
SeedSet shard(const SeedSet& s, int index, int total);

} // namespace p1f

// Permutation group order via a deterministic stabiliser chain
// (Schreier-Sims with deepest-first verification).
#pragma once

#include <cstdint>
#include <vector>

namespace p1f {

class StabiliserChain {
public:
    explicit StabiliserChain(int degree);

    void add_generator(const std::vector<int>& g);
    uint64_t order() const; // builds the chain from the collected generators

private:
    struct Level;
    int degree_;
    std::vector<std::vector<int>> gens_;
};

uint64_t group_order(int degree, const std::vector<std::vector<int>>& generators);

} // namespace p1f

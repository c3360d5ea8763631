// Latin squares as the dual view of complete 1-factorisations of K_{n,n}:
// conjugates, row cycles, nu, the classical invariants N, I, C, S, the P
// invariant, and the symmetry group orders.
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "p1f/canonical.hpp"
#include "p1f/coloured_graph.hpp"
#include "p1f/factors.hpp"

namespace p1f {

class LatinSquare {
public:
    LatinSquare(int n, std::vector<int> cells); // row-major, validates
    static LatinSquare from_rows(const std::vector<std::vector<int>>& rows);
    static LatinSquare cyclic(int n); // Cayley table of Z_n

    int order() const { return n_; }
    int at(int r, int c) const { return grid_[r * n_ + c]; }
    const std::vector<int>& cells() const { return grid_; }
    std::vector<int> row(int r) const;

    bool symmetric() const;

    friend bool operator==(const LatinSquare&, const LatinSquare&) = default;

private:
    int n_ = 0;
    std::vector<int> grid_;
};

// Row i of the square is the image array of factor f_i; mutually inverse.
LatinSquare from_opf(const Opf& F); // requires a complete Opf
Opf to_opf(const LatinSquare& L);

// Conjugate by a role arrangement: label "d1d2d3" sends each entry (r,c,s) to
// a new entry whose row is element d1 of (r,c,s), column element d2, symbol
// element d3. "123" is the identity, "132" the row-inverse, "213" the
// transpose.
LatinSquare conjugate(const LatinSquare& L, const std::string& label);
extern const std::array<std::string, 6> kConjugateLabels;

// Cycle lengths of the permutation mapping row r to row s, sorted ascending.
// Each length >= 2; lengths sum to n.
std::vector<int> row_cycle_lengths(const LatinSquare& L, int r, int s);

// Every row cycle has full length n (no proper subrectangles).
bool is_row_hamiltonian(const LatinSquare& L);

// Number of the 6 conjugates that are row-Hamiltonian; always in {0,2,4,6}.
int nu(const LatinSquare& L);

// Exact transversal count, by column-wise backtracking with row/symbol
// bitmasks, most-constrained column first.
uint64_t transversal_count(const LatinSquare& L);

// Sorted indegree sequence of the train of L: arcs (a,b,c) -> (x,y,z) with
// (a,b,z), (a,y,c), (x,b,c) entries of L; n^3 vertices.
std::vector<int> train_indegree_sequence(const LatinSquare& L);

// Run-length encode a sorted sequence as (value, multiplicity) pairs.
std::vector<std::pair<int, int>> run_length_encode(const std::vector<int>& sorted_seq);

struct CycleInvariants {
    std::vector<int> all;                      // C: all roles pooled, sorted
    std::array<std::vector<int>, 3> per_role;  // S: row/column/symbol lists,
                                               // each sorted, then sorted as a multiset
};
CycleInvariants cycle_invariants(const LatinSquare& L);

// P(F) = sum over row pairs i<j and factors k of the product over edges e of
// f_k of the cycle distance between e's endpoints in f_i u f_j. Requires a
// complete perfect factorisation; fails loudly if the result would overflow.
uint64_t p_invariant(const Opf& F);

struct InvariantRecord {
    int nu = 0;
    uint64_t transversals = 0;                       // N
    std::vector<std::pair<int, int>> train_indegrees; // I, run-length encoded
    CycleInvariants cycles;                          // C and S
};
InvariantRecord invariant_record(const LatinSquare& L);

uint64_t autotopism_group_order(const LatinSquare& L);
uint64_t autoparatopism_group_order(const LatinSquare& L);
bool is_isotopic(const LatinSquare& A, const LatinSquare& B);
bool same_species(const LatinSquare& A, const LatinSquare& B);

CanonicalForm canonical_form(const LatinSquare& L, ColourMode mode);

// Apply an isotopism (alpha rows, beta columns, gamma symbols).
LatinSquare apply_isotopism(const LatinSquare& L, const std::vector<int>& alpha,
                            const std::vector<int>& beta, const std::vector<int>& gamma);

} // namespace p1f

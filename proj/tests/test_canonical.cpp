#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "p1f/canonical.hpp"
#include "p1f/latin.hpp"
#include "p1f/perm_group.hpp"
#include "test_util.hpp"

using namespace p1f;

TEST_CASE("stabiliser chain orders")
{
    // S_4 from a transposition and a 4-cycle
    CHECK(group_order(4, {{1, 0, 2, 3}, {1, 2, 3, 0}}) == 24);
    // cyclic group of order 7
    CHECK(group_order(7, {{1, 2, 3, 4, 5, 6, 0}}) == 7);
    // dihedral group of the 6-cycle
    CHECK(group_order(6, {{1, 2, 3, 4, 5, 0}, {0, 5, 4, 3, 2, 1}}) == 12);
    // trivial
    CHECK(group_order(5, {}) == 1);
    CHECK(group_order(5, {{0, 1, 2, 3, 4}}) == 1);
}

TEST_CASE("stabiliser chain agrees with brute-force closure on random groups")
{
    auto rng = p1f_test::make_rng(71);
    for (int trial = 0; trial < 25; ++trial) {
        int deg = 4 + static_cast<int>(rng() % 4);
        std::vector<std::vector<int>> gens;
        int k = 1 + static_cast<int>(rng() % 2);
        for (int i = 0; i < k; ++i) gens.push_back(p1f_test::random_perm(deg, rng));

        // brute-force closure
        std::set<std::vector<int>> elems;
        std::vector<int> id(deg);
        std::iota(id.begin(), id.end(), 0);
        elems.insert(id);
        bool grew = true;
        while (grew) {
            grew = false;
            std::vector<std::vector<int>> snapshot(elems.begin(), elems.end());
            for (const auto& e : snapshot) {
                for (const auto& g : gens) {
                    std::vector<int> prod(deg);
                    for (int i = 0; i < deg; ++i) prod[i] = g[e[i]];
                    if (elems.insert(prod).second) grew = true;
                }
            }
        }
        CHECK(group_order(deg, gens) == elems.size());
    }
}

TEST_CASE("coloured graph shape")
{
    auto rng81 = p1f_test::make_rng(81);
    Opf P = p1f_test::random_perfect_opf(5, 5, rng81);
    ColouredGraph g = build_coloured_graph(P, ColourMode::P1F);
    CHECK(g.vertex_count == 5 + 10 + 3 + 25); // 43

    Opf Q = standard_prefix(11);
    Q = [&] {
        auto rng = p1f_test::make_rng(82);
        Opf R = Q;
        // extend to 4 factors by random perfect extensions
        while (R.size() < 4) {
            OneFactor cand(p1f_test::random_perm(11, rng));
            bool ok = true;
            for (int k = 0; k < R.size() && ok; ++k)
                ok = R.factor(k).disjoint_from(cand) && is_perfect_pair(R.factor(k), cand);
            if (ok) R.append(cand);
        }
        return R;
    }();
    ColouredGraph h = build_coloured_graph(Q, ColourMode::P1F);
    CHECK(h.vertex_count == 4 + 22 + 3 + 44); // 73

    // black vertices have degree exactly 3
    int off_black = 4 + 22 + 3;
    for (int b = off_black; b < h.vertex_count; ++b)
        CHECK(h.adj[b].size() == 3);
}

TEST_CASE("canonical form is invariant under relabelling")
{
    auto rng = p1f_test::make_rng(91);
    for (int trial = 0; trial < 20; ++trial) {
        int n = trial % 2 == 0 ? 5 : 7;
        int a = 2 + static_cast<int>(rng() % (n - 1));
        Opf F = p1f_test::random_perfect_opf(n, a, rng);
        Opf G = p1f_test::random_isomorphic(F, rng);
        for (ColourMode mode : {ColourMode::P1F, ColourMode::LsSpecies}) {
            CHECK(canonical_form(F, mode) == canonical_form(G, mode));
        }
        // direct modes need a direct relabelling
        VertexMap m;
        m.u_map = p1f_test::random_perm(n, rng);
        m.v_map = p1f_test::random_perm(n, rng);
        m.swap_sides = false;
        Opf H = p1f_test::apply_map_and_shuffle(F, m, rng);
        CHECK(canonical_form(F, ColourMode::P1FDirect) == canonical_form(H, ColourMode::P1FDirect));
    }
}

TEST_CASE("canonical equality matches brute-force isomorphism at n=5")
{
    auto rng = p1f_test::make_rng(101);
    for (int trial = 0; trial < 12; ++trial) {
        int a = 2 + static_cast<int>(rng() % 3);
        Opf A = p1f_test::random_perfect_opf(5, a, rng);
        Opf B = p1f_test::random_perfect_opf(5, a, rng);
        bool brute = p1f_test::brute_force_isomorphic(A, B);
        bool canon = is_isomorphic(A, B, ColourMode::P1F);
        CHECK(brute == canon);
    }
}

TEST_CASE("automorphism group orders match brute force at n=5 (both engines)")
{
    auto rng = p1f_test::make_rng(111);
    for (int trial = 0; trial < 10; ++trial) {
        int a = 2 + static_cast<int>(rng() % 4);
        Opf F = p1f_test::random_perfect_opf(5, a, rng);
        uint64_t brute_total = p1f_test::brute_force_aut_order(F, false);
        uint64_t brute_direct = p1f_test::brute_force_aut_order(F, true);
        // graph engine
        CHECK(automorphism_group_order(build_coloured_graph(F, ColourMode::P1F)) == brute_total);
        CHECK(automorphism_group_order(build_coloured_graph(F, ColourMode::P1FDirect)) == brute_direct);
        // anchored path
        CHECK(automorphism_group_order(F, ColourMode::P1F) == brute_total);
        CHECK(automorphism_group_order(F, ColourMode::P1FDirect) == brute_direct);
        CHECK(brute_total % brute_direct == 0);
        CHECK(brute_total / brute_direct <= 2);
    }
}

TEST_CASE("anchored path agrees with the graph engine")
{
    auto rng = p1f_test::make_rng(112);
    // equality relation must coincide on random pairs
    for (int trial = 0; trial < 10; ++trial) {
        Opf A = p1f_test::random_perfect_opf(5, 3, rng);
        Opf B = (trial % 2 == 0) ? p1f_test::random_isomorphic(A, rng)
                                 : p1f_test::random_perfect_opf(5, 3, rng);
        bool routed = is_isomorphic(A, B, ColourMode::P1F);
        bool engine = canonical_form(build_coloured_graph(A, ColourMode::P1F)) ==
                      canonical_form(build_coloured_graph(B, ColourMode::P1F));
        CHECK(routed == engine);
    }
    // group orders agree on the symmetric cyclic cases up to n=7
    for (int n : {3, 5, 7}) {
        Opf F = to_opf(LatinSquare::cyclic(n));
        for (ColourMode mode : {ColourMode::P1F, ColourMode::P1FDirect, ColourMode::LsSpecies}) {
            CHECK(automorphism_group_order(F, mode) ==
                  automorphism_group_order(build_coloured_graph(F, mode)));
        }
    }
}

TEST_CASE("cyclic square of order 11: the most symmetric case")
{
    Opf F = to_opf(LatinSquare::cyclic(11));
    CHECK(automorphism_group_order(F, ColourMode::P1F) == 2420);
    CHECK(automorphism_group_order(F, ColourMode::P1FDirect) == 1210);
    CHECK(automorphism_group_order(F, ColourMode::LsIsotopy) == 1210);
    CHECK(automorphism_group_order(F, ColourMode::LsSpecies) == 7260);
}

namespace {

// Direct isomorphism test by brute force, restricted to side-preserving maps.
bool brute_direct_isomorphic(const Opf& A, const Opf& B)
{
    bool found = false;
    p1f_test::for_each_vertex_map(A.order(), [&](const VertexMap& m) {
        if (m.swap_sides || found) return;
        if (p1f_test::maps_factor_set(m, A, B)) found = true;
    });
    return found;
}

// Ordered-rows equivalence: some column and symbol permutation aligns the
// ordered factor lists.
bool brute_rows_ordered_equal(const Opf& A, const Opf& B)
{
    bool found = false;
    p1f_test::for_each_vertex_map(A.order(), [&](const VertexMap& m) {
        if (m.swap_sides || found) return;
        for (int k = 0; k < A.size(); ++k)
            if (m.apply(A.factor(k)) != B.factor(k)) return;
        found = true;
    });
    return found;
}

} // namespace

TEST_CASE("side swap and factor order semantics")
{
    auto rng = p1f_test::make_rng(121);
    for (int trial = 0; trial < 8; ++trial) {
        Opf F = p1f_test::random_perfect_opf(5, 4, rng);
        // swap the sides: each factor becomes its inverse
        std::vector<OneFactor> swapped;
        for (int k = 0; k < F.size(); ++k) swapped.push_back(OneFactor(F.factor(k).inverse()));
        Opf G(F.order(), std::move(swapped));
        CHECK(is_isomorphic(F, G, ColourMode::P1F));
        CHECK(is_isomorphic(F, G, ColourMode::P1FDirect) == brute_direct_isomorphic(F, G));

        // factor order never matters in P1F mode
        std::vector<OneFactor> perm(F.factors());
        std::shuffle(perm.begin(), perm.end(), rng);
        CHECK(is_isomorphic(F, Opf(F.order(), perm), ColourMode::P1F));
    }
}

TEST_CASE("rows-ordered mode pins the factor order")
{
    auto rng = p1f_test::make_rng(131);
    for (int trial = 0; trial < 3; ++trial) {
        Opf F = p1f_test::random_perfect_opf(5, 5, rng);
        std::vector<OneFactor> rot(F.factors());
        std::rotate(rot.begin(), rot.begin() + 1, rot.end());
        Opf G(F.order(), rot);
        CHECK(is_isomorphic(F, G, ColourMode::P1F));
        CHECK(is_isomorphic(F, G, ColourMode::LsRowsOrdered) == brute_rows_ordered_equal(F, G));
        CHECK(is_isomorphic(F, F, ColourMode::LsRowsOrdered));
    }
}

// Acceptance suite: runs every gate criterion at its exact expected value and
// prints one PASS/FAIL line per criterion. Exit code = number of failures.
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "p1f/families.hpp"
#include "p1f/latin.hpp"
#include "p1f/search.hpp"
#include "p1f/text_io.hpp"
#include "test_util.hpp"

namespace fs = std::filesystem;
using namespace p1f;

namespace {

int failures = 0;

void report(int id, bool pass, const std::string& label, const std::string& detail = "")
{
    std::printf("%s criterion %2d: %s%s%s\n", pass ? "PASS" : "FAIL", id, label.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string binary()
{
    const char* bin = std::getenv("P1F_BIN");
    if (!bin) {
        std::fprintf(stderr, "P1F_BIN not set\n");
        std::exit(2);
    }
    return bin;
}

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args)
{
    std::string cmd = binary() + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    RunResult res;
    if (!pipe) return res;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) res.out.append(buf, got);
    res.exit_code = WEXITSTATUS(pclose(pipe));
    return res;
}

long grab(const std::string& text, const std::string& key)
{
    auto pos = text.find(key);
    if (pos == std::string::npos) return -1;
    return std::atol(text.c_str() + pos + key.size());
}

LatinSquare fixture(const std::string& name)
{
    return load_square_file(std::string(P1F_FIXTURE_DIR) + "/" + name);
}

// Naive exhaustive search: extend the standard prefix by every perfect
// factor in increasing order; no seeds, no minimality, no branching rule.
void naive_complete(Opf& P, const OneFactor lower, std::set<std::vector<uint8_t>>& forms)
{
    const int n = P.order();
    if (P.complete()) {
        forms.insert(canonical_form(P, ColourMode::P1F).bytes);
        return;
    }
    std::vector<int> img(n);
    std::iota(img.begin(), img.end(), 0);
    do {
        OneFactor cand(img);
        if (!(lower < cand)) continue;
        bool ok = true;
        for (int k = 0; k < P.size() && ok; ++k)
            ok = P.factor(k).disjoint_from(cand) && is_perfect_pair(P.factor(k), cand);
        if (!ok) continue;
        P.append(cand);
        naive_complete(P, cand, forms);
        P.pop();
    } while (std::next_permutation(img.begin(), img.end()));
}

std::set<std::vector<uint8_t>> naive_canonical_set(int n)
{
    Opf P = standard_prefix(n);
    std::set<std::vector<uint8_t>> forms;
    naive_complete(P, P.factor(1), forms);
    return forms;
}

const std::vector<int> kFr1 = {0, 10, 4, 8, 7, 6, 1, 3, 5, 2, 9};
const std::vector<int> kFr2 = {0, 2, 6, 8, 7, 10, 3, 5, 4, 1, 9};
const std::vector<int> kFr3 = {0, 3, 7, 9, 8, 10, 4, 6, 5, 2, 1};
const std::vector<int> kFr4 = {10, 1, 9, 7, 5, 3, 8, 6, 4, 2, 0};
const std::vector<std::string> kFig1 = {"fig1_a.txt", "fig1_b.txt", "fig1_c.txt", "fig1_d.txt",
                                        "fig1_e.txt", "fig1_f.txt", "fig1_g.txt", "fig1_h.txt"};

} // namespace

int main()
{
    fs::path work = fs::temp_directory_path() / "p1f_acceptance";
    fs::remove_all(work);
    fs::create_directories(work);
    const std::string out = "--out " + work.string() + " --threads 2 ";

    // ---- criterion 1: enumeration counts 1, 1, 2, 37 for n = 3, 5, 7, 9
    {
        const int orders[4] = {3, 5, 7, 9};
        const long expected[4] = {1, 1, 2, 37};
        bool ok = true;
        std::string detail;
        long n9_seeds = -1;
        for (int i = 0; i < 4; ++i) {
            RunResult r = run_cli(out + "enumerate -n " + std::to_string(orders[i]));
            long classes = grab(r.out, "classes=");
            ok = ok && r.exit_code == 0 && classes == expected[i];
            detail += "n=" + std::to_string(orders[i]) + ":" + std::to_string(classes) + " ";
            if (orders[i] == 9) n9_seeds = grab(r.out, "seeds=");
        }
        // frozen regression: seed count of the n=9 run
        ok = ok && n9_seeds == 26743;
        detail += "seeds9=" + std::to_string(n9_seeds);
        // over the whole catalogue, total automorphisms are the direct ones
        // times 1 or 2 (side swap present or not)
        for (int n : {3, 5, 7, 9}) {
            std::ifstream sum(work / ("p1f_n" + std::to_string(n) + "_summary.txt"));
            std::string line;
            std::getline(sum, line); // header
            std::getline(sum, line); // column names
            uint64_t count, direct, total;
            while (sum >> count >> direct >> total)
                ok = ok && total % direct == 0 && (total / direct == 1 || total / direct == 2);
        }
        report(1, ok, "enumeration counts (1, 1, 2, 37)", detail);
    }

    // ---- criterion 2: seeded pipeline equals naive exhaustive search
    {
        bool ok = true;
        std::string detail;
        for (int n : {5, 7}) {
            EnumerateOptions opts;
            opts.threads = 2;
            EnumerationResult r = enumerate_p1fs(n, opts);
            std::set<std::vector<uint8_t>> pipeline;
            for (const auto& rec : r.classes) pipeline.insert(rec.form.bytes);
            std::set<std::vector<uint8_t>> naive = naive_canonical_set(n);
            ok = ok && pipeline == naive;
            detail += "n=" + std::to_string(n) + ":" + std::to_string(pipeline.size()) +
                      (pipeline == naive ? "=" : "!=") + std::to_string(naive.size()) + " ";
        }
        report(2, ok, "oracle equivalence of canonical-form sets at n=5,7", detail);
    }

    // ---- criterion 3: Latin square class counts (order 7: 2/2/1, order 9: 37/64/0)
    {
        RunResult c7 = run_cli(out + "classify " + (work / "p1f_n7_results.txt").string());
        RunResult c9 = run_cli(out + "classify " + (work / "p1f_n9_results.txt").string());
        bool ok7 = c7.exit_code == 0 && grab(c7.out, "species=") == 2 &&
                   grab(c7.out, "isotopism_classes=") == 2 && grab(c7.out, "atomic=") == 1;
        bool ok9 = c9.exit_code == 0 && grab(c9.out, "species=") == 37 &&
                   grab(c9.out, "isotopism_classes=") == 64 && grab(c9.out, "atomic=") == 0;
        // frozen discrimination profile of the order-9 catalogue
        RunResult inv = run_cli(out + "invariants " + (work / "p1f_n9_results.txt").string());
        std::string rep;
        try {
            rep = read_text_file((work / "p1f_invariants.txt").string());
        } catch (const DataError&) {
        }
        bool okinv = inv.exit_code == 0 && rep.find("distinct N 30") != std::string::npos &&
                     rep.find("distinct I 37") != std::string::npos &&
                     rep.find("distinct C 34") != std::string::npos &&
                     rep.find("distinct S 36") != std::string::npos &&
                     rep.find("distinct I,S 37") != std::string::npos &&
                     rep.find("distinct P 37") != std::string::npos;
        report(3, ok7 && ok9 && okinv, "Latin square class counts and invariant profile",
               "order7=" + c7.out.substr(0, c7.out.find('\n')) +
                   " order9=" + c9.out.substr(0, c9.out.find('\n')) + " (I,S) separates all 37");
    }

    // ---- criterion 4: nu spot checks
    {
        bool ok = nu(LatinSquare::cyclic(5)) == 6;
        ok = ok && nu(bdcls_from_first_row(kFr1, 0)) == 4;
        ok = ok && nu(bdcls_from_first_row(kFr2, 1)) == 4;
        ok = ok && nu(bdcls_from_first_row(kFr3, 1)) == 4;
        ok = ok && nu(bdcls_from_first_row(kFr4, 1)) == 4;
        for (const auto& name : kFig1) {
            LatinSquare L = fixture(name);
            ok = ok && nu(L) == 4 && L.symmetric() && autotopism_group_order(L) == 1 &&
                 autoparatopism_group_order(L) == 2;
        }
        report(4, ok, "nu spot checks (cyclic5=6; four first rows=4; eight fixtures 4/sym/1/2)");
    }

    // ---- criterion 5: symmetry spot checks
    {
        uint64_t dcls = autotopism_group_order(bdcls_from_first_row({0, 2, 8, 5, 7, 1, 10, 4, 6, 3, 9}, 0));
        uint64_t dihedral = autotopism_group_order(fixture("dihedral10.txt"));
        report(5, dcls == 22 && dihedral == 10, "autotopism group orders 22 and 10",
               "dcls=" + std::to_string(dcls) + " dihedral=" + std::to_string(dihedral));
    }

    // ---- criterion 6: the GA family theorem
    {
        bool ok = true;
        std::string detail;
        for (int p : {3, 5, 7, 11, 13}) {
            GaTheoremReport rep = verify_ga_theorem(p);
            bool good = rep.ok() && rep.nu_value == (p == 3 ? 6 : 2);
            ok = ok && good;
            detail += "p" + std::to_string(p) + ":nu=" + std::to_string(rep.nu_value) + " ";
        }
        for (int p : {3, 5, 7, 11})
            ok = ok && l_p_square(p) == root_square(ga_factorisation(p), 2 * p - 1);
        report(6, ok, "GA theorem: nu values, witness 5-cycle, explicit square identity", detail);
    }

    // ---- criterion 7: symmetric-square nu restriction, 1000 squares
    {
        auto rng = p1f_test::make_rng(0x1ea7);
        const int primes[5] = {3, 5, 7, 11, 13};
        int violations = 0;
        for (int i = 0; i < 1000; ++i) {
            int p = primes[i % 5];
            GeneralFactorisation F =
                ga_factorisation(p).relabelled(p1f_test::random_perm(2 * p, rng));
            LatinSquare L = root_square(F, static_cast<int>(rng() % (2 * p)));
            int value = nu(L);
            bool fine = L.symmetric() && is_row_hamiltonian(conjugate(L, "321")) &&
                        (value == 2 || value == 6);
            if (!fine) ++violations;
        }
        for (const auto& name : kFig1) {
            LatinSquare L = fixture(name);
            int value = nu(L);
            bool fine = L.symmetric() && is_row_hamiltonian(L) && (value == 4 || value == 6);
            if (!fine) ++violations;
        }
        report(7, violations == 0, "nu restriction on 1000 root squares and the fixtures",
               "violations=" + std::to_string(violations));
    }

    // ---- criterion 8: invariance suites
    {
        auto rng = p1f_test::make_rng(0x8a7e);
        int violations = 0;
        std::vector<LatinSquare> fixtures;
        for (const auto& name : kFig1) fixtures.push_back(fixture(name));
        fixtures.push_back(fixture("dihedral10.txt"));
        fixtures.push_back(bdcls_from_first_row({0, 2, 8, 5, 7, 1, 10, 4, 6, 3, 9}, 0));
        fixtures.push_back(LatinSquare::cyclic(5));
        fixtures.push_back(LatinSquare::cyclic(7));
        for (const auto& L : fixtures) {
            InvariantRecord base = invariant_record(L);
            for (int i = 0; i < 100; ++i) {
                LatinSquare M = p1f_test::random_paratopic(L, rng);
                InvariantRecord rec = invariant_record(M);
                if (rec.nu != base.nu || rec.transversals != base.transversals ||
                    rec.train_indegrees != base.train_indegrees ||
                    rec.cycles.all != base.cycles.all || rec.cycles.per_role != base.cycles.per_role)
                    ++violations;
            }
        }
        // P under 100 random isomorphisms per n=9 class representative
        std::vector<Opf> reps = load_opf_file((work / "p1f_n9_results.txt").string());
        if (reps.size() != 37) ++violations;
        for (const Opf& rep : reps) {
            uint64_t base = p_invariant(rep);
            for (int i = 0; i < 100; ++i)
                if (p_invariant(p1f_test::random_isomorphic(rep, rng)) != base) ++violations;
        }
        report(8, violations == 0, "nu,N,I,C,S under 100 paratopisms; P under 100 isomorphisms",
               "violations=" + std::to_string(violations));
    }

    // ---- criterion 9: isomorphism engine cross-validation at n=5
    {
        auto rng = p1f_test::make_rng(0x95);
        int bad = 0;
        std::vector<Opf> pool;
        for (int i = 0; i < 50; ++i)
            pool.push_back(p1f_test::random_perfect_opf(5, 2 + static_cast<int>(rng() % 4), rng));
        for (int i = 0; i < 50; ++i) {
            const Opf& F = pool[i];
            // group orders against brute force over all 2*(n!)^2 candidate maps
            uint64_t brute_total = p1f_test::brute_force_aut_order(F, false);
            uint64_t brute_direct = p1f_test::brute_force_aut_order(F, true);
            if (automorphism_group_order(F, ColourMode::P1F) != brute_total) ++bad;
            if (automorphism_group_order(F, ColourMode::P1FDirect) != brute_direct) ++bad;
            if (automorphism_group_order(build_coloured_graph(F, ColourMode::P1F)) != brute_total)
                ++bad;
            // canonical equality against brute-force isomorphism
            const Opf& G = (i % 2 == 0) ? pool[(i + 1) % 50] : p1f_test::random_isomorphic(F, rng);
            if (F.size() == G.size()) {
                bool brute = p1f_test::brute_force_isomorphic(F, G);
                if (is_isomorphic(F, G, ColourMode::P1F) != brute) ++bad;
            }
        }
        report(9, bad == 0, "engine vs brute force over all candidate maps at n=5",
               "mismatches=" + std::to_string(bad));
    }

    // ---- criterion 10: determinism surrogate (sharded n=9 equals unsharded)
    {
        fs::path shard_dir = work / "shards";
        fs::create_directories(shard_dir);
        bool ok = true;
        std::string merge_args;
        for (int i = 0; i < 3; ++i) {
            RunResult r = run_cli("--out " + shard_dir.string() + " --threads 2 enumerate -n 9 --shard " +
                                  std::to_string(i) + "/3");
            ok = ok && r.exit_code == 0;
            merge_args += " " + (shard_dir / ("p1f_n9_shard" + std::to_string(i) + "of3_results.txt")).string();
        }
        RunResult m = run_cli("--out " + shard_dir.string() + " merge" + merge_args);
        ok = ok && m.exit_code == 0;
        std::string merged, whole, merged_sum, whole_sum;
        try {
            merged = read_text_file((shard_dir / "p1f_n9_merged_results.txt").string());
            whole = read_text_file((work / "p1f_n9_results.txt").string());
            merged_sum = read_text_file((shard_dir / "p1f_n9_merged_summary.txt").string());
            whole_sum = read_text_file((work / "p1f_n9_summary.txt").string());
        } catch (const DataError&) {
            ok = false;
        }
        ok = ok && !merged.empty() && merged == whole && merged_sum == whole_sum;
        report(10, ok, "sharded vs unsharded n=9 runs byte-identical",
               "extended n=11 targets are documented, not gated");
    }

    std::printf("%s: %d criteria failed\n", failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED",
                failures);
    return failures;
}

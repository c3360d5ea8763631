// p1f: enumeration and analysis of perfect 1-factorisations of K_{n,n} and
// the corresponding row-Hamiltonian Latin squares.
//
// Subcommands: enumerate, seeds, classify, invariants, families, merge, canon.
// Exit codes: 0 ok, 1 usage, 2 data error, 3 internal assertion.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "p1f/families.hpp"
#include "p1f/latin.hpp"
#include "p1f/search.hpp"
#include "p1f/seeder.hpp"
#include "p1f/sha256.hpp"
#include "p1f/text_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace p1f;

namespace {

struct GlobalOpts {
    std::string out_dir;
    bool human = false;
    int threads = 1;
};

std::string default_out_dir()
{
    const char* env = std::getenv("P1F_WORKDIR");
    return env && *env ? env : ".";
}

void note(const GlobalOpts& g, const std::string& msg)
{
    if (g.human) std::cerr << msg << "\n";
}

void parse_shard(const std::string& text, int& index, int& total)
{
    size_t slash = text.find('/');
    if (slash == std::string::npos) throw std::invalid_argument("--shard expects i/m");
    try {
        index = std::stoi(text.substr(0, slash));
        total = std::stoi(text.substr(slash + 1));
    } catch (const std::exception&) {
        throw std::invalid_argument("--shard expects i/m");
    }
    if (total < 1 || index < 0 || index >= total)
        throw std::invalid_argument("--shard needs 0 <= i < m");
}

std::string validate_n(int n)
{
    if (n == 2 || (n >= 3 && n % 2 == 1)) return {};
    return "perfect 1-factorisations of K_{n,n} exist only for n = 2 or odd n";
}

ColourMode parse_mode(const std::string& name)
{
    if (name == "p1f") return ColourMode::P1F;
    if (name == "p1f-direct") return ColourMode::P1FDirect;
    if (name == "ls-isotopy") return ColourMode::LsIsotopy;
    if (name == "ls-species") return ColourMode::LsSpecies;
    if (name == "ls-rows-ordered") return ColourMode::LsRowsOrdered;
    throw std::invalid_argument("unknown mode: " + name);
}

// ---------------------------------------------------------------- enumerate

std::vector<Opf> replay_journal(const std::string& path)
{
    std::vector<Opf> out;
    std::ifstream in(path);
    if (!in) return out;
    std::string line;
    try {
        while (in >> std::ws, std::getline(in, line)) {
            if (line.empty()) continue;
            if (line[0] != '#') throw DataError("journal: expected digest line");
            auto rec = read_opf_record(in);
            if (!rec) throw DataError("journal: truncated record");
            out.push_back(std::move(*rec));
        }
    } catch (const DataError&) {
        // Keep the valid prefix; the tail was lost to a crash mid-write.
        std::cerr << "p1f: journal tail unreadable, keeping " << out.size() << " records\n";
    }
    return out;
}

int cmd_enumerate(const GlobalOpts& g, int n, const std::string& shard_text,
                  const std::string& checkpoint_path)
{
    if (auto err = validate_n(n); !err.empty()) throw std::invalid_argument(err);
    int shard_index = 0, shard_total = 1;
    if (!shard_text.empty()) parse_shard(shard_text, shard_index, shard_total);

    fs::create_directories(g.out_dir);
    std::string base = g.out_dir + "/p1f_n" + std::to_string(n);
    if (shard_total > 1)
        base += "_shard" + std::to_string(shard_index) + "of" + std::to_string(shard_total);
    const std::string results_path = base + "_results.txt";
    const std::string summary_path = base + "_summary.txt";
    const std::string manifest_path = base + "_manifest.json";
    const std::string journal_path = base + "_journal.txt";

    auto started = std::chrono::steady_clock::now();

    EnumerateOptions opts;
    opts.shard_index = shard_index;
    opts.shard_total = shard_total;
    opts.threads = g.threads;
    if (g.human) opts.progress = [&](const std::string& msg) { note(g, msg); };

    std::unique_ptr<AppendLog> ckpt_log, journal_log;
    std::set<size_t> done;
    if (!checkpoint_path.empty()) {
        for (size_t idx : read_checkpoint(checkpoint_path)) done.insert(idx);
        opts.preload = replay_journal(journal_path);
        if (!done.empty())
            note(g, "resuming: " + std::to_string(done.size()) + " seeds done, " +
                        std::to_string(opts.preload.size()) + " classes replayed");
        // Rewrite the journal so a previously corrupted tail cannot linger.
        {
            std::ostringstream clean;
            for (const Opf& F : opts.preload)
                clean << "# " << canonical_form(F, ColourMode::P1F).hex_digest() << "\n"
                      << format_opf(F);
            write_text_file(journal_path, clean.str());
        }
        journal_log = std::make_unique<AppendLog>(journal_path);
        ckpt_log = std::make_unique<AppendLog>(checkpoint_path);
        opts.skip_seed = [&](size_t i) { return done.count(i) > 0; };
        opts.journal = [&](const std::string& digest, const Opf& rep) {
            journal_log->append("# " + digest + "\n" + format_opf(rep));
        };
        opts.seed_done = [&](size_t i) {
            journal_log->sync();
            ckpt_log->append(std::to_string(i) + "\n");
            ckpt_log->sync();
        };
    }

    EnumerationResult result = enumerate_p1fs(n, opts);

    std::ostringstream results;
    write_result_file(results, result.classes);
    write_text_file(results_path, results.str());
    write_text_file(summary_path, format_summary(n, result.classes));

    double wall = std::chrono::duration_cast<std::chrono::duration<double>>(
                      std::chrono::steady_clock::now() - started)
                      .count();
    json manifest = {
        {"command", "enumerate"},
        {"n", n},
        {"shard_index", shard_index},
        {"shard_total", shard_total},
        {"seeds_total", result.seeds_total},
        {"seeds_processed", result.seeds_processed},
        // global seed positions handled by this shard: first + k*stride
        {"seed_range", {{"first", shard_index}, {"stride", shard_total}, {"count", result.seeds_total}}},
        {"emitted", result.stats.emitted},
        {"search_nodes", result.stats.nodes},
        {"classes", result.classes.size()},
        {"outputs",
         {{"results", {{"path", results_path}, {"sha256", file_sha256(results_path)}}},
          {"summary", {{"path", summary_path}, {"sha256", file_sha256(summary_path)}}}}},
        {"wall_seconds", wall},
    };
    write_text_file(manifest_path, manifest.dump(2) + "\n");

    std::cout << "n=" << n << " shard=" << shard_index << "/" << shard_total
              << " seeds=" << result.seeds_total << " emitted=" << result.stats.emitted
              << " classes=" << result.classes.size() << "\n";
    return 0;
}

// -------------------------------------------------------------------- seeds

int cmd_seeds(const GlobalOpts& g, int n)
{
    if (auto err = validate_n(n); !err.empty()) throw std::invalid_argument(err);
    if (n < 5) throw std::invalid_argument("seeds: n must be odd and at least 5");
    SeedSet seeds = gen_seeds(n);
    fs::create_directories(g.out_dir);
    std::string path = g.out_dir + "/p1f_n" + std::to_string(n) + "_seeds.txt";
    std::ofstream out(path);
    write_seed_file(out, seeds);
    std::cout << "n=" << n << " seeds=" << seeds.seeds.size() << "\n";
    return 0;
}

// ----------------------------------------------------------------- classify

struct SpeciesInfo {
    std::string digest;
    int nu_value = 0;
    uint64_t autotopisms = 0;
    uint64_t autoparatopisms = 0;
    uint64_t p1f_classes = 0;
};

int cmd_classify(const GlobalOpts& g, const std::string& input)
{
    std::vector<Opf> records = load_opf_file(input);
    if (records.empty()) throw DataError("classify: no records in " + input);
    int n = records[0].order();

    std::map<std::string, SpeciesInfo> species;
    std::set<std::vector<uint8_t>> isotopy_forms;
    size_t item = 0;
    for (const Opf& F : records) {
        if (F.order() != n || !F.complete())
            throw DataError("classify: record " + std::to_string(item) + " malformed");
        LatinSquare L = from_opf(F);
        std::string sp = canonical_form(F, ColourMode::LsSpecies).hex_digest();
        auto [it, fresh] = species.try_emplace(sp);
        SpeciesInfo& info = it->second;
        if (fresh) {
            info.digest = sp;
            info.nu_value = nu(L);
            info.autotopisms = autotopism_group_order(L);
            info.autoparatopisms = autoparatopism_group_order(L);
        }
        ++info.p1f_classes;
        isotopy_forms.insert(canonical_form(L, ColourMode::LsIsotopy).bytes);
        isotopy_forms.insert(canonical_form(conjugate(L, "132"), ColourMode::LsIsotopy).bytes);
        ++item;
        if (g.human && item % 16 == 0)
            note(g, "classified " + std::to_string(item) + "/" + std::to_string(records.size()));
    }

    size_t atomic = 0;
    std::map<std::tuple<uint64_t, uint64_t, int>, uint64_t> histogram;
    for (const auto& [digest, info] : species) {
        if (info.nu_value == 6) ++atomic;
        ++histogram[{info.autotopisms, info.autoparatopisms, info.nu_value}];
    }

    std::ostringstream out;
    out << "P1F-CLASSIFY v1 n=" << n << " items=" << records.size()
        << " species=" << species.size() << " isotopism_classes=" << isotopy_forms.size()
        << " atomic=" << atomic << "\n";
    out << "# species: digest nu autotopisms autoparatopisms p1f_classes\n";
    for (const auto& [digest, info] : species)
        out << digest << " " << info.nu_value << " " << info.autotopisms << " "
            << info.autoparatopisms << " " << info.p1f_classes << "\n";
    out << "# histogram: count autotopisms autoparatopisms nu\n";
    for (const auto& [key, count] : histogram)
        out << count << " " << std::get<0>(key) << " " << std::get<1>(key) << " "
            << std::get<2>(key) << "\n";

    fs::create_directories(g.out_dir);
    std::string path = g.out_dir + "/p1f_n" + std::to_string(n) + "_classify.txt";
    write_text_file(path, out.str());
    std::cout << "n=" << n << " species=" << species.size()
              << " isotopism_classes=" << isotopy_forms.size() << " atomic=" << atomic << "\n";
    return 0;
}

// --------------------------------------------------------------- invariants

std::string digest_ints(const std::vector<int>& xs)
{
    std::string blob;
    for (int x : xs) {
        blob += std::to_string(x);
        blob += ',';
    }
    return sha256_hex(blob).substr(0, 16);
}

int cmd_invariants(const GlobalOpts& g, const std::vector<std::string>& inputs, bool squares)
{
    struct Item {
        std::string digest;
        InvariantRecord rec;
        std::string i_digest, c_digest, s_digest;
        bool has_p = false;
        uint64_t p_value = 0;
        uint64_t autotopisms = 0, autoparatopisms = 0;
    };
    std::vector<Item> items;

    auto add_square = [&](const LatinSquare& L, const Opf* opf) {
        Item item;
        item.digest = canonical_form(L, ColourMode::LsSpecies).hex_digest();
        item.rec = invariant_record(L);
        std::vector<int> indeg_flat;
        for (auto [v, m] : item.rec.train_indegrees) {
            indeg_flat.push_back(v);
            indeg_flat.push_back(m);
        }
        item.i_digest = digest_ints(indeg_flat);
        item.c_digest = digest_ints(item.rec.cycles.all);
        std::vector<int> s_flat;
        for (const auto& lst : item.rec.cycles.per_role) {
            s_flat.push_back(-1);
            s_flat.insert(s_flat.end(), lst.begin(), lst.end());
        }
        item.s_digest = digest_ints(s_flat);
        if (opf) {
            item.has_p = true;
            item.p_value = p_invariant(*opf);
        }
        item.autotopisms = autotopism_group_order(L);
        item.autoparatopisms = autoparatopism_group_order(L);
        items.push_back(std::move(item));
    };

    for (const std::string& path : inputs) {
        if (squares) {
            add_square(load_square_file(path), nullptr);
        } else {
            for (const Opf& F : load_opf_file(path)) {
                if (!F.complete()) throw DataError("invariants: record not complete in " + path);
                add_square(from_opf(F), &F);
            }
        }
    }
    if (items.empty()) throw DataError("invariants: no items");

    auto count_distinct = [&](auto key) {
        std::set<std::string> seen;
        for (const Item& it : items) seen.insert(key(it));
        return seen.size();
    };

    std::ostringstream out;
    out << "P1F-INVARIANTS v1 items=" << items.size() << "\n";
    out << "# item: digest nu N autotopisms autoparatopisms I C S P\n";
    for (const Item& it : items) {
        out << it.digest << " " << it.rec.nu << " " << it.rec.transversals << " "
            << it.autotopisms << " " << it.autoparatopisms << " " << it.i_digest << " "
            << it.c_digest << " " << it.s_digest << " ";
        if (it.has_p)
            out << it.p_value;
        else
            out << "-";
        out << "\n";
    }
    auto kN = [](const Item& i) { return std::to_string(i.rec.transversals); };
    auto kI = [](const Item& i) { return i.i_digest; };
    auto kC = [](const Item& i) { return i.c_digest; };
    auto kS = [](const Item& i) { return i.s_digest; };
    auto kP = [](const Item& i) { return std::to_string(i.p_value); };
    out << "# distinct: invariant values\n";
    out << "distinct N " << count_distinct(kN) << "\n";
    out << "distinct I " << count_distinct(kI) << "\n";
    out << "distinct C " << count_distinct(kC) << "\n";
    out << "distinct S " << count_distinct(kS) << "\n";
    out << "distinct I,C " << count_distinct([&](const Item& i) { return kI(i) + "|" + kC(i); }) << "\n";
    out << "distinct N,I,C "
        << count_distinct([&](const Item& i) { return kN(i) + "|" + kI(i) + "|" + kC(i); }) << "\n";
    out << "distinct I,S " << count_distinct([&](const Item& i) { return kI(i) + "|" + kS(i); }) << "\n";
    bool all_p = true;
    for (const Item& it : items) all_p = all_p && it.has_p;
    if (all_p) {
        out << "distinct P " << count_distinct(kP) << "\n";
        out << "distinct P,N " << count_distinct([&](const Item& i) { return kP(i) + "|" + kN(i); }) << "\n";
        out << "distinct P,I " << count_distinct([&](const Item& i) { return kP(i) + "|" + kI(i); }) << "\n";
        out << "distinct P,C " << count_distinct([&](const Item& i) { return kP(i) + "|" + kC(i); }) << "\n";
        out << "distinct P,S " << count_distinct([&](const Item& i) { return kP(i) + "|" + kS(i); }) << "\n";
    }

    fs::create_directories(g.out_dir);
    std::string path = g.out_dir + "/p1f_invariants.txt";
    write_text_file(path, out.str());
    std::cout << "items=" << items.size() << " distinct_N=" << count_distinct(kN)
              << " distinct_IS="
              << count_distinct([&](const Item& i) { return kI(i) + "|" + kS(i); }) << "\n";
    return 0;
}

// ----------------------------------------------------------------- families

std::vector<int> parse_first_row(const std::string& text, int& infinity_count)
{
    std::vector<std::string> tokens;
    std::string cur;
    for (char ch : text) {
        if (ch == ',') {
            tokens.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            cur += ch;
        }
    }
    if (!cur.empty()) tokens.push_back(cur);

    int b = 0;
    for (const auto& t : tokens)
        if (t.rfind("inf", 0) == 0) ++b;
    infinity_count = b;
    const int n = static_cast<int>(tokens.size());
    const int m = n - b;
    std::vector<int> row;
    int next_inf = m;
    for (const auto& t : tokens) {
        if (t.rfind("inf", 0) == 0) {
            row.push_back(next_inf++);
        } else {
            int v = std::stoi(t);
            if (v < 0 || v >= m) throw std::invalid_argument("first row value out of range: " + t);
            row.push_back(v);
        }
    }
    return row;
}

int cmd_families(const GlobalOpts&, const std::string& name, int p,
                 const std::string& first_row_text, int root, bool verify)
{
    if (name == "ga") {
        GeneralFactorisation F = ga_factorisation(p);
        std::cout << format_general_factorisation(F);
        if (verify) {
            GaTheoremReport rep = verify_ga_theorem(p);
            std::cout << "perfect=" << (general_is_perfect(F) ? "true" : "false")
                      << " nu=" << rep.nu_value << " expected=" << (rep.ok() ? "true" : "false")
                      << "\n";
        }
        return 0;
    }
    if (name == "lp") {
        LatinSquare L = l_p_square(p);
        std::cout << format_square(L);
        if (verify) {
            GaTheoremReport rep = verify_ga_theorem(p);
            std::cout << "nu=" << rep.nu_value << " expected=" << (rep.ok() ? "true" : "false")
                      << "\n";
        }
        return 0;
    }
    if (name == "ga-root") {
        GeneralFactorisation F = ga_factorisation(p);
        if (root < 0 || root >= F.vertex_count())
            throw std::invalid_argument("ga-root: --root out of range");
        LatinSquare L = root_square(F, root);
        std::cout << format_square(L);
        if (verify) std::cout << "nu=" << nu(L) << " symmetric=" << (L.symmetric() ? "true" : "false") << "\n";
        return 0;
    }
    if (name == "bdcls") {
        if (first_row_text.empty()) throw std::invalid_argument("bdcls: --first-row required");
        int b = 0;
        std::vector<int> row = parse_first_row(first_row_text, b);
        LatinSquare L = bdcls_from_first_row(row, b);
        std::cout << format_square(L);
        if (verify)
            std::cout << "nu=" << nu(L) << " symmetric=" << (L.symmetric() ? "true" : "false")
                      << "\n";
        return 0;
    }
    throw std::invalid_argument("unknown family: " + name + " (expected ga, ga-root, lp or bdcls)");
}

// -------------------------------------------------------------------- merge

int cmd_merge(const GlobalOpts& g, const std::vector<std::string>& inputs)
{
    IsoScreen screen;
    int n = -1;
    for (const std::string& path : inputs) {
        for (const Opf& F : load_opf_file(path)) {
            if (n < 0) n = F.order();
            if (F.order() != n) throw DataError("merge: mixed orders across inputs");
            if (!F.complete()) throw DataError("merge: incomplete record in " + path);
            screen.add(F);
        }
    }
    if (n < 0) throw DataError("merge: no records");
    std::vector<ClassRecord> classes = screen.finish();

    fs::create_directories(g.out_dir);
    std::string base = g.out_dir + "/p1f_n" + std::to_string(n) + "_merged";
    std::ostringstream results;
    write_result_file(results, classes);
    write_text_file(base + "_results.txt", results.str());
    write_text_file(base + "_summary.txt", format_summary(n, classes));
    std::cout << "n=" << n << " classes=" << classes.size() << "\n";
    return 0;
}

// -------------------------------------------------------------------- canon

int cmd_canon(const GlobalOpts&, const std::string& input, const std::string& mode_name,
              bool square, bool aut)
{
    ColourMode mode = parse_mode(mode_name);
    Opf F = [&]() {
        if (square) return to_opf(load_square_file(input));
        std::ifstream in(input);
        if (!in) throw DataError("cannot open " + input);
        auto rec = read_opf_record(in);
        if (!rec) throw DataError("canon: no record in " + input);
        return *rec;
    }();
    CanonicalForm form = canonical_form(F, mode);
    std::cout << "digest=" << form.hex_digest();
    if (aut) std::cout << " aut=" << automorphism_group_order(F, mode);
    std::cout << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"exact enumeration and analysis of perfect 1-factorisations of K_{n,n} "
                 "and row-Hamiltonian Latin squares"};
    app.require_subcommand(1);

    GlobalOpts g;
    g.out_dir = default_out_dir();
    app.add_option("--out", g.out_dir, "output directory (default: $P1F_WORKDIR or .)");
    app.add_flag("--human", g.human, "human-readable progress on stderr");
    app.add_option("--threads", g.threads, "worker threads for the search")
        ->check(CLI::Range(1, 256));

    int n = 0;
    std::string shard_text, checkpoint_path;
    auto* enumerate = app.add_subcommand("enumerate", "enumerate perfect 1-factorisations of K_{n,n}");
    enumerate->add_option("-n", n, "order")->required();
    enumerate->add_option("--shard", shard_text, "process shard i of m (format i/m)");
    enumerate->add_option("--checkpoint", checkpoint_path, "checkpoint file for resume");

    int seeds_n = 0;
    auto* seeds = app.add_subcommand("seeds", "write the 4-factor seed set");
    seeds->add_option("-n", seeds_n, "order")->required();

    std::string classify_input;
    auto* classify = app.add_subcommand("classify", "species/isotopism report for a result file");
    classify->add_option("input", classify_input, "result file")->required();

    std::vector<std::string> inv_inputs;
    bool inv_squares = false;
    auto* invariants = app.add_subcommand("invariants", "invariant report for a catalogue");
    invariants->add_option("inputs", inv_inputs, "result files (or square files with --squares)")
        ->required();
    invariants->add_flag("--squares", inv_squares, "inputs are Latin square files");

    std::string family_name, first_row_text;
    int family_p = 0, family_root = 0;
    bool family_verify = false;
    auto* families = app.add_subcommand("families", "emit a classical construction");
    families->add_option("name", family_name, "ga | ga-root | lp | bdcls")->required();
    families->add_option("--p", family_p, "odd prime parameter");
    families->add_option("--first-row", first_row_text, "comma-separated first row; inf for the border");
    families->add_option("--root", family_root, "root vertex for ga-root");
    families->add_flag("--verify", family_verify, "verify and print the expected properties");

    std::vector<std::string> merge_inputs;
    auto* merge = app.add_subcommand("merge", "merge and re-screen shard result files");
    merge->add_option("inputs", merge_inputs, "result files")->required();

    std::string canon_input, canon_mode = "p1f";
    bool canon_square = false, canon_aut = false;
    auto* canon = app.add_subcommand("canon", "canonical digest of one object");
    canon->add_option("input", canon_input, "opf record file or square file")->required();
    canon->add_option("--mode", canon_mode,
                      "p1f | p1f-direct | ls-isotopy | ls-species | ls-rows-ordered");
    canon->add_flag("--square", canon_square, "input is a Latin square file");
    canon->add_flag("--aut", canon_aut, "also print the automorphism group order");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 1;
    }

    try {
        if (app.got_subcommand(enumerate)) return cmd_enumerate(g, n, shard_text, checkpoint_path);
        if (app.got_subcommand(seeds)) return cmd_seeds(g, seeds_n);
        if (app.got_subcommand(classify)) return cmd_classify(g, classify_input);
        if (app.got_subcommand(invariants)) return cmd_invariants(g, inv_inputs, inv_squares);
        if (app.got_subcommand(families))
            return cmd_families(g, family_name, family_p, first_row_text, family_root, family_verify);
        if (app.got_subcommand(merge)) return cmd_merge(g, merge_inputs);
        if (app.got_subcommand(canon)) return cmd_canon(g, canon_input, canon_mode, canon_square, canon_aut);
        std::cerr << "p1f: no subcommand\n";
        return 1;
    } catch (const DataError& e) {
        std::cerr << "p1f: data error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "p1f: " << e.what() << "\n";
        return 1;
    } catch (const std::logic_error& e) {
        std::cerr << "p1f: internal: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "p1f: error: " << e.what() << "\n";
        return 2;
    }
}

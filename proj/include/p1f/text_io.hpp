// Text formats: factors and partial factorisations (1-based), Latin squares
// (0-based), seed/result/summary/report files, checkpoints and manifests.
#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "p1f/factors.hpp"
#include "p1f/latin.hpp"
#include "p1f/search.hpp"
#include "p1f/seeder.hpp"

namespace p1f {

// Malformed input files and records.
struct DataError : std::runtime_error {
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

std::string format_one_factor(const OneFactor& f); // one line, 1-based images
std::string format_opf(const Opf& P);              // "n a" header + a factor lines
std::string format_square(const LatinSquare& L);   // n lines, 0-based symbols
std::string format_general_factorisation(const GeneralFactorisation& F); // "2m k" + mate lines

// Reads one "n a" record; empty optional at clean EOF.
std::optional<Opf> read_opf_record(std::istream& in);
std::vector<Opf> read_opf_records(std::istream& in);
std::vector<Opf> load_opf_file(const std::string& path);

LatinSquare parse_square(std::istream& in);
LatinSquare load_square_file(const std::string& path);

void write_seed_file(std::ostream& out, const SeedSet& seeds);
SeedSet read_seed_file(std::istream& in);

void write_result_file(std::ostream& out, const std::vector<ClassRecord>& classes);

// "count direct_automorphisms automorphisms" symmetry histogram.
std::string format_summary(int n, const std::vector<ClassRecord>& classes);

std::vector<size_t> read_checkpoint(const std::string& path); // missing file = empty

// Append-only file with flush+fsync per append batch.
class AppendLog {
public:
    explicit AppendLog(const std::string& path);
    ~AppendLog();
    AppendLog(const AppendLog&) = delete;
    AppendLog& operator=(const AppendLog&) = delete;

    void append(const std::string& text);
    void sync();

private:
    struct Impl;
    Impl* impl_;
};

std::string file_sha256(const std::string& path);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

} // namespace p1f

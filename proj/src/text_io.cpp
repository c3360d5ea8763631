#include "p1f/text_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "p1f/sha256.hpp"

#ifdef _WIN32
#else
#include <unistd.h>
#endif

namespace p1f {

std::string format_one_factor(const OneFactor& f)
{
    std::string out;
    for (int i = 0; i < f.order(); ++i) {
        if (i) out += ' ';
        out += std::to_string(f[i] + 1);
    }
    return out;
}

std::string format_opf(const Opf& P)
{
    std::string out = std::to_string(P.order()) + " " + std::to_string(P.size()) + "\n";
    for (int k = 0; k < P.size(); ++k) out += format_one_factor(P.factor(k)) + "\n";
    return out;
}

std::string format_square(const LatinSquare& L)
{
    std::string out;
    for (int r = 0; r < L.order(); ++r) {
        for (int c = 0; c < L.order(); ++c) {
            if (c) out += ' ';
            out += std::to_string(L.at(r, c));
        }
        out += '\n';
    }
    return out;
}

std::string format_general_factorisation(const GeneralFactorisation& F)
{
    std::string out = std::to_string(F.vertex_count()) + " " + std::to_string(F.size()) + "\n";
    for (int k = 0; k < F.size(); ++k) {
        const auto& m = F.factor_mates(k);
        for (int v = 0; v < F.vertex_count(); ++v) {
            if (v) out += ' ';
            out += std::to_string(m[v] + 1);
        }
        out += '\n';
    }
    return out;
}

std::optional<Opf> read_opf_record(std::istream& in)
{
    // skip blank and comment lines between records
    in >> std::ws;
    while (in.peek() == '#') {
        std::string line;
        std::getline(in, line);
        in >> std::ws;
    }
    int n = 0, a = 0;
    if (!(in >> n)) return std::nullopt;
    if (!(in >> a)) throw DataError("opf record: truncated header");
    if (n < 1 || n > 64 || a < 0 || a > n) throw DataError("opf record: bad header");
    try {
        Opf P(n);
        for (int k = 0; k < a; ++k) {
            std::vector<int> img(n);
            for (int i = 0; i < n; ++i) {
                int x;
                if (!(in >> x)) throw DataError("opf record: truncated factor line");
                if (x < 1 || x > n) throw DataError("opf record: image out of range");
                img[i] = x - 1;
            }
            P.append(OneFactor(std::move(img)));
        }
        return P;
    } catch (const std::invalid_argument& e) {
        throw DataError(std::string("opf record: ") + e.what());
    }
}

std::vector<Opf> read_opf_records(std::istream& in)
{
    std::vector<Opf> out;
    while (auto rec = read_opf_record(in)) out.push_back(std::move(*rec));
    return out;
}

std::vector<Opf> load_opf_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    return read_opf_records(in);
}

LatinSquare parse_square(std::istream& in)
{
    std::vector<int> cells;
    int x;
    while (in >> x) cells.push_back(x);
    int n = 1;
    while (n * n < static_cast<int>(cells.size())) ++n;
    if (n * n != static_cast<int>(cells.size()) || cells.empty())
        throw DataError("square: cell count is not a perfect square");
    try {
        return LatinSquare(n, std::move(cells));
    } catch (const std::invalid_argument& e) {
        throw DataError(std::string("square: ") + e.what());
    }
}

LatinSquare load_square_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    return parse_square(in);
}

void write_seed_file(std::ostream& out, const SeedSet& seeds)
{
    out << "P1F-SEEDS v1 n=" << seeds.n << " count=" << seeds.seeds.size() << "\n";
    for (const auto& s : seeds.seeds) {
        out << "# " << s.digest << "\n";
        out << format_opf(s.opf);
    }
}

SeedSet read_seed_file(std::istream& in)
{
    std::string header;
    if (!std::getline(in, header)) throw DataError("seed file: empty");
    int n = 0;
    size_t count = 0;
    if (std::sscanf(header.c_str(), "P1F-SEEDS v1 n=%d count=%zu", &n, &count) != 2)
        throw DataError("seed file: bad header");
    SeedSet out;
    out.n = n;
    std::string line;
    for (size_t i = 0; i < count; ++i) {
        if (!std::getline(in, line) || line.size() < 2 || line[0] != '#')
            throw DataError("seed file: missing digest line");
        Seed s;
        s.digest = line.substr(2);
        auto rec = read_opf_record(in);
        if (!rec || rec->order() != n) throw DataError("seed file: bad record");
        s.opf = std::move(*rec);
        s.canon = canonical_form(s.opf, ColourMode::P1F);
        if (s.canon.hex_digest() != s.digest) throw DataError("seed file: digest mismatch");
        out.seeds.push_back(std::move(s));
        in >> std::ws;
    }
    return out;
}

void write_result_file(std::ostream& out, const std::vector<ClassRecord>& classes)
{
    for (const auto& rec : classes) {
        out << "# " << rec.digest << "\n";
        out << format_opf(rec.rep);
    }
}

std::string format_summary(int n, const std::vector<ClassRecord>& classes)
{
    std::map<std::pair<uint64_t, uint64_t>, uint64_t> histogram;
    for (const auto& rec : classes)
        ++histogram[{rec.direct_automorphisms, rec.automorphisms}];
    std::ostringstream out;
    out << "P1F-SUMMARY v1 n=" << n << " classes=" << classes.size() << "\n";
    out << "count direct_automorphisms automorphisms\n";
    for (const auto& [key, count] : histogram)
        out << count << " " << key.first << " " << key.second << "\n";
    return out.str();
}

std::vector<size_t> read_checkpoint(const std::string& path)
{
    std::ifstream in(path);
    std::vector<size_t> out;
    size_t idx;
    while (in >> idx) out.push_back(idx);
    return out;
}

struct AppendLog::Impl {
    std::FILE* f = nullptr;
};

AppendLog::AppendLog(const std::string& path) : impl_(new Impl)
{
    impl_->f = std::fopen(path.c_str(), "ab");
    if (!impl_->f) {
        delete impl_;
        throw DataError("cannot open for append: " + path);
    }
}

AppendLog::~AppendLog()
{
    if (impl_->f) std::fclose(impl_->f);
    delete impl_;
}

void AppendLog::append(const std::string& text)
{
    std::fwrite(text.data(), 1, text.size(), impl_->f);
}

void AppendLog::sync()
{
    std::fflush(impl_->f);
#ifndef _WIN32
    ::fsync(fileno(impl_->f));
#endif
}

std::string file_sha256(const std::string& path)
{
    return sha256_hex(read_text_file(path));
}

std::string read_text_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + path);
    out << content;
}

} // namespace p1f

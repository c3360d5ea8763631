#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "p1f/sha256.hpp"
#include "p1f/text_io.hpp"
#include "test_util.hpp"

using namespace p1f;

namespace {

std::filesystem::path temp_file(const std::string& name)
{
    auto dir = std::filesystem::temp_directory_path() / "p1f_format_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

} // namespace

TEST_CASE("factor and opf text round trip")
{
    auto rng = p1f_test::make_rng(601);
    Opf P = p1f_test::random_perfect_opf(7, 4, rng);

    CHECK(format_one_factor(OneFactor::identity(3)) == "1 2 3");

    std::string text = format_opf(P);
    std::istringstream in(text);
    auto back = read_opf_record(in);
    REQUIRE(back.has_value());
    CHECK(*back == P);
    CHECK(!read_opf_record(in).has_value()); // clean EOF

    // several records in a stream
    std::ostringstream multi;
    multi << format_opf(P) << format_opf(P.prefix(2));
    std::istringstream min(multi.str());
    auto records = read_opf_records(min);
    REQUIRE(records.size() == 2);
    CHECK(records[0] == P);
    CHECK(records[1] == P.prefix(2));
}

TEST_CASE("malformed opf records raise data errors")
{
    auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return read_opf_record(in);
    };
    CHECK_THROWS_AS(parse("5"), DataError);                       // truncated header
    CHECK_THROWS_AS(parse("5 1\n1 2 3 4"), DataError);            // truncated factor
    CHECK_THROWS_AS(parse("5 1\n1 2 3 4 9"), DataError);          // image out of range
    CHECK_THROWS_AS(parse("5 2\n1 2 3 4 5\n1 2 3 4 5"), DataError); // not disjoint
    CHECK_THROWS_AS(parse("5 6\n"), DataError);                   // too many factors
    CHECK_THROWS_AS(parse("0 0\n"), DataError);                   // bad order
}

TEST_CASE("square text round trip")
{
    auto rng = p1f_test::make_rng(611);
    LatinSquare L = p1f_test::random_isotopic(LatinSquare::cyclic(6), rng);
    std::string text = format_square(L);
    std::istringstream in(text);
    CHECK(parse_square(in) == L);

    std::istringstream bad("0 1\n1 0\n0");
    CHECK_THROWS_AS(parse_square(bad), DataError);
    std::istringstream notlatin("0 1\n0 1");
    CHECK_THROWS_AS(parse_square(notlatin), DataError);
}

TEST_CASE("seed file round trip")
{
    SeedSet seeds = gen_seeds(5);
    std::ostringstream out;
    write_seed_file(out, seeds);
    std::istringstream in(out.str());
    SeedSet back = read_seed_file(in);
    CHECK(back.n == seeds.n);
    REQUIRE(back.seeds.size() == seeds.seeds.size());
    for (size_t i = 0; i < back.seeds.size(); ++i) {
        CHECK(back.seeds[i].opf == seeds.seeds[i].opf);
        CHECK(back.seeds[i].digest == seeds.seeds[i].digest);
    }

    std::istringstream bad("P1F-SEEDS v1 n=5 count=1\nno digest line\n");
    CHECK_THROWS_AS(read_seed_file(bad), DataError);
}

TEST_CASE("result file and summary")
{
    EnumerateOptions opts;
    EnumerationResult r = enumerate_p1fs(5, opts);
    std::ostringstream out;
    write_result_file(out, r.classes);
    std::istringstream in(out.str());
    // digest comment lines are skipped by the record reader
    auto parsed = read_opf_records(in);
    REQUIRE(parsed.size() == 1);
    CHECK(parsed[0] == r.classes[0].rep);

    std::string summary = format_summary(5, r.classes);
    CHECK(summary.find("classes=1") != std::string::npos);
    CHECK(summary.find("count direct_automorphisms automorphisms") != std::string::npos);
}

TEST_CASE("checkpoint append and read")
{
    auto path = temp_file("ckpt.txt");
    std::filesystem::remove(path);
    CHECK(read_checkpoint(path.string()).empty());
    {
        AppendLog log(path.string());
        log.append("3\n");
        log.append("11\n");
        log.sync();
    }
    auto idx = read_checkpoint(path.string());
    REQUIRE(idx.size() == 2);
    CHECK(idx[0] == 3);
    CHECK(idx[1] == 11);
    std::filesystem::remove(path);
}

TEST_CASE("sha256 known vectors")
{
    CHECK(sha256_hex(std::string("")) ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex(std::string("abc")) ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

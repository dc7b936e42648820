#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "cli.hpp"
#include "ffd/dataset.hpp"
#include "test_util.hpp"

using namespace ffd;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run ffd_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string kFixture = std::string(FFD_SOURCE_DIR) + "/tests/fixtures/movies_tiny.csv";
const std::string kTemplate = std::string(FFD_SOURCE_DIR) + "/data/movie_default.tmpl";

}  // namespace

TEST_CASE("golay subcommands") {
  auto r = ffd_run({"golay", "encode", "0x001"});
  CHECK(r.code == 0);
  CHECK(r.out == "00000000000110001110101\t0x000c75\n");

  r = ffd_run({"golay", "decode", "0x000c74"});
  CHECK(r.code == 0);
  CHECK(r.out.find("codeword\t00000000000110001110101") != std::string::npos);
  CHECK(r.out.find("info\t0x001") != std::string::npos);

  CHECK(ffd_run({"golay", "encode", "0x1000"}).code == cli::kFormat);
  CHECK(ffd_run({"golay", "encode"}).code == cli::kUsage);
  CHECK(ffd_run({"nonsense"}).code == cli::kUsage);
  CHECK(ffd_run({}).code == cli::kUsage);
  CHECK(ffd_run({"--help"}).code == cli::kOk);
}

TEST_CASE("encode, index and query a fixture") {
  const std::string vectors = test::tmp_path("cli_tiny.tsv");
  const std::string index = test::tmp_path("cli_tiny.ffdx");
  auto r = ffd_run({"encode", "--csv", kFixture, "--template", kTemplate, "--out", vectors});
  REQUIRE(r.code == 0);
  const auto entries = read_vectors_file(vectors);
  REQUIRE(entries.size() == 6);

  r = ffd_run({"index", "build", "--vectors", vectors, "--out", index});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("indexed 6 records") == 0);

  for (const auto& e : entries) {
    r = ffd_run({"index", "query", "--index", index, "--record", std::to_string(e.record_id),
                 "--radius", "0"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find(std::to_string(e.record_id) + "\t0\t" + format_bits(e.key) + "\n") !=
          std::string::npos);
  }
  r = ffd_run({"index", "query", "--index", index, "--key", format_bits(entries[0].key),
               "--radius", "3"});
  CHECK(r.code == cli::kContract);
  CHECK(r.err.find("radius") != std::string::npos);

  CHECK(ffd_run({"index", "query", "--index", index, "--record", "99"}).code == cli::kContract);
  CHECK(ffd_run({"index", "query", "--index", index, "--key", "0x000001", "--record", "1"}).code ==
        cli::kUsage);
}

TEST_CASE("malformed inputs exit with the format code") {
  const std::string bad = test::tmp_path("cli_bad.ffdx");
  {
    std::ofstream f(bad);
    f << "FFDX v1\n1\n0\tnot-bits\n";
  }
  auto r = ffd_run({"index", "query", "--index", bad, "--key", "0x000000"});
  CHECK(r.code == cli::kFormat);
  CHECK(r.err.find("line 3") != std::string::npos);
  CHECK(ffd_run({"encode", "--csv", "/nonexistent.csv", "--template", kTemplate}).code ==
        cli::kFormat);
}

TEST_CASE("cluster of codewords") {
  const std::string vectors = test::tmp_path("cli_codewords.tsv");
  {
    std::ofstream f(vectors);
    f << "0\t" << format_bits(encode(InfoWord12(0x3a1))) << '\n'
      << "1\t" << format_bits(encode(InfoWord12(0x3a1)) ^ BitVector23(0b101)) << '\n'
      << "2\t" << format_bits(encode(InfoWord12(0x002))) << '\n';
  }
  const auto r = ffd_run({"cluster", "--vectors", vectors});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("0\t0x3a1\n1\t0x3a1\n2\t0x002\n") == 0);
  CHECK(r.out.find("# 3 records in 2 clusters") != std::string::npos);
}

TEST_CASE("derive and stats") {
  const std::string csv = test::tmp_path("cli_synth.csv");
  auto r = ffd_run({"synth", "--seed", "5", "--rows", "600", "--out", csv});
  REQUIRE(r.code == 0);

  const std::string tmpl = test::tmp_path("cli_derived.tmpl");
  r = ffd_run({"derive", "--csv", csv, "--outcome", "oscar", "--exclude", "num_oscars,title",
               "--out", tmpl, "--glm", "--tree", "2"});
  REQUIRE(r.code == 0);
  const QuestionTemplate t = load_template_file(tmpl);
  CHECK(describe(t.at(1)) == "wins gt 4.5");
  CHECK(r.out.find("Estimate") != std::string::npos);
  CHECK(r.out.find("decision tree") != std::string::npos);

  CHECK(ffd_run({"derive", "--csv", csv, "--outcome", "year"}).code == cli::kContract);
  CHECK(ffd_run({"derive", "--csv", csv, "--outcome", "oscar", "--k", "24"}).code == cli::kUsage);

  r = ffd_run({"stats", "--csv", kFixture, "--x", "critics_score", "--y", "audience_score",
               "--qq", "imdb_rating", "--out-qq", test::tmp_path("cli_qq.csv")});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("critics_score,audience_score\n91,88\n") == 0);
  CHECK(r.out.find("# fit audience_score = ") != std::string::npos);
  CHECK(r.out.find("n = 6, dropped = 0") != std::string::npos);
  const std::string qq = test::read_file(test::tmp_path("cli_qq.csv"));
  CHECK(std::count(qq.begin(), qq.end(), '\n') == 7);
  CHECK(ffd_run({"stats", "--csv", kFixture, "--x", "nope", "--y", "wins"}).code == cli::kContract);
}

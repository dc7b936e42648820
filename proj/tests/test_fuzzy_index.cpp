#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>
#include <vector>

#include "ffd/fuzzy_index.hpp"
#include "test_util.hpp"

using namespace ffd;

namespace {

// Information words of every codeword within distance 4, by scanning all
// 4096 codewords.
std::set<std::uint32_t> scan_neighborhood(BitVector23 key) {
  std::set<std::uint32_t> out;
  for (std::uint32_t u = 0; u < kCodewordCount; ++u) {
    if (hamming(key, encode(InfoWord12(u))) <= 4) out.insert(u);
  }
  return out;
}

std::set<std::uint32_t> as_set(const Neighborhood& n) {
  std::set<std::uint32_t> out;
  for (InfoWord12 w : n) out.insert(w.value());
  return out;
}

std::vector<Match> linear_scan(const std::vector<IndexEntry>& stored, BitVector23 probe,
                               int radius) {
  std::vector<Match> out;
  for (const auto& e : stored) {
    const int d = hamming(e.key, probe);
    if (d <= radius) out.push_back({e.record_id, d});
  }
  std::sort(out.begin(), out.end(),
            [](const Match& a, const Match& b) { return a.record_id < b.record_id; });
  return out;
}

}  // namespace

TEST_CASE("neighborhood of a codeword or a 1-error word is its own bucket") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 50; ++i) {
    const InfoWord12 u(static_cast<std::uint32_t>(rng() & 0xFFF));
    const BitVector23 c = encode(u);
    auto n = neighborhood_indices(c);
    REQUIRE(n.size() == 1);
    CHECK(n[0] == u);
    const BitVector23 w = c ^ test::random_pattern(rng, 1);
    n = neighborhood_indices(w);
    REQUIRE(n.size() == 1);
    CHECK(n[0] == u);
    CHECK(neighborhood_indices(c ^ test::random_pattern(rng, 2)).size() == 1);
  }
}

TEST_CASE("weight-3 neighborhoods equal the brute-force codeword scan") {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 60; ++i) {
    const BitVector23 c = encode(InfoWord12(static_cast<std::uint32_t>(rng() & 0xFFF)));
    const BitVector23 w = c ^ test::random_pattern(rng, 3);
    const auto n = neighborhood_indices(w);
    CHECK(n.size() == 6);
    CHECK(n.contains(cluster_assign(w)));
    CHECK(as_set(n) == scan_neighborhood(w));
  }
  for (int i = 0; i < 60; ++i) {
    const BitVector23 w = test::random_word(rng);
    CHECK(as_set(neighborhood_indices(w)) == scan_neighborhood(w));
  }
}

TEST_CASE("keys within distance 2 share a bucket") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 300; ++i) {
    const BitVector23 w = test::random_word(rng);
    const auto nw = neighborhood_indices(w);
    for (int a = 0; a < kCodeLength; ++a) {
      const BitVector23 w1 = w ^ BitVector23(1u << a);
      REQUIRE(nw.intersects(neighborhood_indices(w1)));
      for (int b = a + 1; b < kCodeLength; ++b) {
        REQUIRE(nw.intersects(neighborhood_indices(w1 ^ BitVector23(1u << b))));
      }
    }
  }
}

TEST_CASE("insert files a key under 1 or 6 buckets") {
  FuzzyIndex index;
  const BitVector23 c = encode(InfoWord12(0x3c1));
  index.insert(0, c);
  CHECK(index.size() == 1);
  CHECK(index.posting_count() == 1);
  CHECK(index.bucket(InfoWord12(0x3c1)).size() == 1);

  const BitVector23 heavy = c ^ BitVector23(0b111);
  index.insert(1, heavy);
  CHECK(index.posting_count() == 7);
  std::size_t holding = 0;
  for (std::uint32_t b = 0; b < FuzzyIndex::kBucketCount; ++b) {
    const auto& bucket = index.bucket(InfoWord12(b));
    holding += std::count_if(bucket.begin(), bucket.end(),
                             [](const IndexEntry& e) { return e.record_id == 1; });
  }
  CHECK(holding == 6);

  CHECK_THROWS_AS(index.insert(1, c), DuplicateRecordId);
  index.insert(2, c);  // repeated keys are fine
  CHECK(index.size() == 3);
  index.freeze();
  CHECK_THROWS_AS(index.insert(3, c), IndexFrozen);
}

TEST_CASE("query finds exact and near keys") {
  FuzzyIndex index;
  const BitVector23 k(0x2a5f0c);
  index.insert(10, k);
  index.insert(11, k ^ BitVector23(0x000401));
  index.insert(12, k ^ BitVector23(0x700000));

  auto m = index.query(k, 0);
  REQUIRE(m.size() == 1);
  CHECK(m[0] == Match{10, 0});

  const BitVector23 probe = k ^ BitVector23(0x010020);
  m = index.query(probe, 2);
  CHECK(std::find(m.begin(), m.end(), Match{10, 2}) != m.end());
  CHECK(std::none_of(m.begin(), m.end(), [](const Match& x) { return x.record_id == 12; }));

  QueryStats stats;
  index.query(probe, 2, &stats);
  CHECK(stats.buckets_read <= kMaxNeighborhood);

  CHECK_THROWS_AS(index.query(k, 3), RadiusOutOfRange);
  CHECK_THROWS_AS(index.query(k, -1), RadiusOutOfRange);
}

TEST_CASE("query equals a linear scan") {
  std::mt19937_64 rng(24);
  FuzzyIndex index;
  std::vector<IndexEntry> stored;
  for (std::uint64_t id = 0; id < 3000; ++id) {
    // Clustered keys so radius-2 hits are common.
    const BitVector23 base = encode(InfoWord12(static_cast<std::uint32_t>(rng() % 64)));
    const BitVector23 key = base ^ test::random_pattern(rng, static_cast<int>(rng() % 4));
    stored.push_back({id * 3 + 1, key});
    index.insert(id * 3 + 1, key);
  }
  for (int i = 0; i < 300; ++i) {
    const BitVector23 probe =
        i % 2 ? test::random_word(rng) : stored[rng() % stored.size()].key ^ test::random_pattern(rng, 2);
    for (int radius = 0; radius <= 2; ++radius) {
      REQUIRE(index.query(probe, radius) == linear_scan(stored, probe, radius));
    }
  }
}

TEST_CASE("cluster_assign") {
  std::mt19937_64 rng(25);
  for (int i = 0; i < 200; ++i) {
    const InfoWord12 u(static_cast<std::uint32_t>(rng() & 0xFFF));
    const BitVector23 c = encode(u);
    CHECK(cluster_assign(c) == u);
    const BitVector23 key = c ^ test::random_pattern(rng, static_cast<int>(rng() % 4));
    CHECK(cluster_assign(key) == u);
    CHECK(cluster_assign(encode(cluster_assign(key))) == cluster_assign(key));
  }
}

TEST_CASE("clusters tile the key space in balls of 2048") {
  std::vector<std::uint32_t> sizes(kCodewordCount, 0);
  for (std::uint32_t w = 0; w < kWordCount; ++w) ++sizes[cluster_assign(BitVector23(w)).value()];
  CHECK(std::all_of(sizes.begin(), sizes.end(), [](std::uint32_t s) { return s == 2048; }));
}

TEST_CASE("save and load round-trip") {
  FuzzyIndex empty;
  std::stringstream buf;
  empty.save(buf);
  CHECK(buf.str() == "FFDX v1\n0\n");
  CHECK(FuzzyIndex::load(buf).size() == 0);

  std::mt19937_64 rng(26);
  FuzzyIndex index;
  for (int i = 0; i < 1000; ++i) index.insert(rng() % 1000000, test::random_word(rng));
  std::stringstream file;
  index.save(file);
  const FuzzyIndex loaded = FuzzyIndex::load(file);
  CHECK(loaded.frozen());
  CHECK(loaded.size() == index.size());
  CHECK(loaded.posting_count() == index.posting_count());
  CHECK(loaded.entries() == index.entries());
  for (int i = 0; i < 100; ++i) {
    const BitVector23 probe = test::random_word(rng);
    CHECK(loaded.query(probe, 2) == index.query(probe, 2));
  }
}

TEST_CASE("load reports the offending line") {
  auto fails_on = [](const std::string& text, std::size_t line) {
    std::istringstream in(text);
    try {
      FuzzyIndex::load(in);
    } catch (const FormatError& e) {
      CHECK(e.line() == line);
      return;
    }
    FAIL("no FormatError for: " << text);
  };
  fails_on("FFDX v1\n2\n0\t00000000000000000000000\n1\t0000000000000000000000\n", 4);
  fails_on("FFDX v2\n0\n", 1);
  fails_on("FFDX v1\nmany\n", 2);
  fails_on("FFDX v1\n1\n0 00000000000000000000000\n", 3);
  fails_on("FFDX v1\n2\n5\t00000000000000000000000\n3\t00000000000000000000000\n", 4);
  fails_on("FFDX v1\n3\n0\t00000000000000000000000\n", 3);
}

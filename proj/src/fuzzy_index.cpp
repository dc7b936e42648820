#include "ffd/fuzzy_index.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

namespace ffd {

bool Neighborhood::contains(InfoWord12 w) const noexcept {
  return std::find(begin(), end(), w) != end();
}

bool Neighborhood::intersects(const Neighborhood& other) const noexcept {
  // Both sides are sorted.
  const InfoWord12* a = begin();
  const InfoWord12* b = other.begin();
  while (a != end() && b != other.end()) {
    if (*a == *b) return true;
    if (*a < *b) ++a; else ++b;
  }
  return false;
}

Neighborhood neighborhood_indices(BitVector23 key) {
  const auto& codec = GolayCodec::instance();
  const Syndrome11 s = codec.syndrome(key);
  const BitVector23 nearest = key ^ codec.error_for(s);
  const std::uint32_t base = nearest.value() >> kParityLength;

  Neighborhood out;
  out.items_[out.size_++] = InfoWord12(base);
  // Weight-3 error: the other codewords at distance 4 are nearest ^ h for the
  // five heptads h covering the error. Encoding is linear, so their
  // information words are base ^ info(h).
  for (BitVector23 h : codec.heptads_for(s)) {
    out.items_[out.size_++] = InfoWord12(base ^ (h.value() >> kParityLength));
  }
  std::sort(out.items_.begin(), out.items_.begin() + out.size_);
  return out;
}

FuzzyIndex::FuzzyIndex() : buckets_(kBucketCount) {}

void FuzzyIndex::insert(std::uint64_t record_id, BitVector23 key) {
  if (frozen_) throw IndexFrozen("insert after freeze");
  auto [it, inserted] = keys_.emplace(record_id, key);
  if (!inserted) {
    throw DuplicateRecordId("record " + std::to_string(record_id) +
                            " is already indexed");
  }
  for (InfoWord12 b : neighborhood_indices(key)) {
    buckets_[b.value()].push_back({record_id, key});
    ++postings_;
  }
}

std::vector<Match> FuzzyIndex::query(BitVector23 probe, int radius,
                                     QueryStats* stats) const {
  if (radius < 0 || radius > kMaxQueryRadius) {
    throw RadiusOutOfRange("radius " + std::to_string(radius) +
                           " outside the guaranteed range 0..2");
  }
  std::vector<Match> out;
  QueryStats local;
  for (InfoWord12 b : neighborhood_indices(probe)) {
    ++local.buckets_read;
    for (const IndexEntry& e : buckets_[b.value()]) {
      ++local.candidates_scanned;
      const int d = hamming(e.key, probe);
      if (d <= radius) out.push_back({e.record_id, d});
    }
  }
  std::sort(out.begin(), out.end(), [](const Match& a, const Match& b) {
    return a.record_id < b.record_id;
  });
  // A record filed under several of the probe's buckets shows up once per
  // shared bucket.
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (stats != nullptr) *stats = local;
  return out;
}

BitVector23 FuzzyIndex::key_of(std::uint64_t record_id) const {
  auto it = keys_.find(record_id);
  if (it == keys_.end()) {
    throw UnknownRecordId("record " + std::to_string(record_id) + " is not indexed");
  }
  return it->second;
}

std::vector<IndexEntry> FuzzyIndex::entries() const {
  std::vector<IndexEntry> out;
  out.reserve(keys_.size());
  for (const auto& [id, key] : keys_) out.push_back({id, key});
  std::sort(out.begin(), out.end(), [](const IndexEntry& a, const IndexEntry& b) {
    return a.record_id < b.record_id;
  });
  return out;
}

namespace {
constexpr std::string_view kMagic = "FFDX v1";

template <typename Int>
bool parse_decimal(std::string_view text, Int& value) {
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), last, value);
  return !text.empty() && ec == std::errc() && ptr == last;
}
}  // namespace

void FuzzyIndex::save(std::ostream& out) const {
  out << kMagic << '\n' << keys_.size() << '\n';
  for (const IndexEntry& e : entries()) {
    out << e.record_id << '\t' << format_bits(e.key) << '\n';
  }
}

FuzzyIndex FuzzyIndex::load(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || line != kMagic) {
    throw FormatError(line_no, "expected header 'FFDX v1'");
  }
  ++line_no;
  std::size_t expected = 0;
  if (!std::getline(in, line) || !parse_decimal(line, expected)) {
    throw FormatError(line_no, "expected a decimal entry count");
  }
  FuzzyIndex index;
  std::uint64_t previous = 0;
  std::size_t seen = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw FormatError(line_no, "expected '<record_id><TAB><23 bits>'");
    }
    std::uint64_t id = 0;
    if (!parse_decimal(std::string_view(line).substr(0, tab), id)) {
      throw FormatError(line_no, "bad record id '" + line.substr(0, tab) + "'");
    }
    if (seen > 0 && id <= previous) {
      throw FormatError(line_no, "entries must be sorted by strictly increasing record id");
    }
    BitVector23 key;
    try {
      key = parse_bits(std::string_view(line).substr(tab + 1));
    } catch (const FormatError& e) {
      throw FormatError(line_no, e.what());
    }
    index.insert(id, key);
    previous = id;
    ++seen;
  }
  if (seen != expected) {
    throw FormatError(line_no, "header announces " + std::to_string(expected) +
                                   " entries, found " + std::to_string(seen));
  }
  index.freeze();
  return index;
}

void FuzzyIndex::save_file(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot open '" + path + "' for writing");
  save(out);
  if (!out) throw FormatError("write to '" + path + "' failed");
}

FuzzyIndex FuzzyIndex::load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path + "'");
  return load(in);
}

std::vector<ClusterAssignment> cluster_all(const std::vector<IndexEntry>& entries) {
  std::vector<ClusterAssignment> out;
  out.reserve(entries.size());
  for (const IndexEntry& e : entries) out.push_back({e.record_id, cluster_assign(e.key)});
  return out;
}

}  // namespace ffd

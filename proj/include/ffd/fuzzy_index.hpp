// FuzzyFind dictionary: 4096 buckets addressed by Golay information words.
//
// Every key is filed under the information words of all codewords within
// Hamming distance 4 of it. That set has one element when the key decodes
// with an error of weight <= 2 and six when the error has weight 3, and any
// two keys at distance <= 2 share at least one element. A radius-2 query
// therefore reads at most six buckets and post-filters by exact distance.
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "ffd/golay.hpp"

namespace ffd {

inline constexpr int kMaxQueryRadius = 2;
inline constexpr std::size_t kMaxNeighborhood = 6;

// Sorted, duplicate-free set of at most six bucket indices.
class Neighborhood {
 public:
  const InfoWord12* begin() const noexcept { return items_.data(); }
  const InfoWord12* end() const noexcept { return items_.data() + size_; }
  std::size_t size() const noexcept { return size_; }
  InfoWord12 operator[](std::size_t i) const noexcept { return items_[i]; }
  bool contains(InfoWord12 w) const noexcept;
  bool intersects(const Neighborhood& other) const noexcept;

 private:
  friend Neighborhood neighborhood_indices(BitVector23 key);
  std::array<InfoWord12, kMaxNeighborhood> items_{};
  std::size_t size_ = 0;
};

Neighborhood neighborhood_indices(BitVector23 key);

// Information word of the codeword nearest to `key`; the radius-3 balls
// around the 4096 codewords partition the key space.
inline InfoWord12 cluster_assign(BitVector23 key) {
  const auto& codec = GolayCodec::instance();
  return InfoWord12(codec.decode(key).codeword.value() >> kParityLength);
}

struct IndexEntry {
  std::uint64_t record_id = 0;
  BitVector23 key;
  friend bool operator==(const IndexEntry&, const IndexEntry&) = default;
};

struct Match {
  std::uint64_t record_id = 0;
  int distance = 0;
  friend bool operator==(const Match&, const Match&) = default;
};

struct QueryStats {
  std::size_t buckets_read = 0;
  std::size_t candidates_scanned = 0;
};

struct ClusterAssignment {
  std::uint64_t record_id = 0;
  InfoWord12 cluster;
};

class FuzzyIndex {
 public:
  static constexpr std::size_t kBucketCount = kCodewordCount;

  FuzzyIndex();

  // Throws DuplicateRecordId, or IndexFrozen after freeze().
  void insert(std::uint64_t record_id, BitVector23 key);

  // Ends the build phase; the index is read-only from here on.
  void freeze() noexcept { frozen_ = true; }
  bool frozen() const noexcept { return frozen_; }

  // Stored entries within `radius` of `probe`, ascending by record_id.
  // Throws RadiusOutOfRange for radius outside [0, 2].
  std::vector<Match> query(BitVector23 probe, int radius,
                           QueryStats* stats = nullptr) const;

  std::size_t size() const noexcept { return keys_.size(); }
  bool contains(std::uint64_t record_id) const { return keys_.count(record_id) != 0; }
  // Throws UnknownRecordId.
  BitVector23 key_of(std::uint64_t record_id) const;

  const std::vector<IndexEntry>& bucket(InfoWord12 index) const noexcept {
    return buckets_[index.value()];
  }
  std::size_t posting_count() const noexcept { return postings_; }

  // All entries sorted by record_id.
  std::vector<IndexEntry> entries() const;

  // FFDX v1 text format. load() rebuilds the buckets from the keys and
  // returns a frozen index; it throws FormatError naming the bad line.
  void save(std::ostream& out) const;
  static FuzzyIndex load(std::istream& in);
  void save_file(const std::string& path) const;
  static FuzzyIndex load_file(const std::string& path);

 private:
  std::vector<std::vector<IndexEntry>> buckets_;
  std::unordered_map<std::uint64_t, BitVector23> keys_;
  std::size_t postings_ = 0;
  bool frozen_ = false;
};

// Linear-time clusterization of a batch of keyed records.
std::vector<ClusterAssignment> cluster_all(const std::vector<IndexEntry>& entries);

}  // namespace ffd

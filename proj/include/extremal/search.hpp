#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "extremal/exactmath.hpp"
#include "extremal/geometry.hpp"

namespace extremal {

inline constexpr std::uint64_t kSearchMaxWeight = 200;

enum class RecordKind { MinVolume, MaxBottomWeight };
std::string_view to_string(RecordKind k);  // "minvol", "maxbottom"
std::optional<RecordKind> record_kind_from_string(std::string_view s);

struct SearchConfig {
  int dimension = 2;  // only surfaces
  std::uint64_t max_weight = 40;
  RecordKind record = RecordKind::MinVolume;
  unsigned workers = 1;
  friend bool operator==(const SearchConfig&, const SearchConfig&) = default;
};

struct RecordSet {
  SearchConfig config;
  BigRat best;  // volume, or the bottom weight as an integer rational
  std::vector<WeightSystem> achievers;  // sorted, degree = sum of weights
  std::uint64_t examined = 0;           // candidates passing all filters
  friend bool operator==(const RecordSet&, const RecordSet&) = default;
};

class SearchGuard : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exhaustive over a0 >= a1 >= a2 >= a3 >= 1 with a0 <= max_weight and
/// d = a0 + a1 + a2 + a3. Canonical by the Calabi-Yau shortcut, so no
/// Reid-Tai in the loop. Only certifies the record below max_weight.
RecordSet enumerate_cy_surfaces(const SearchConfig& config);

}  // namespace extremal

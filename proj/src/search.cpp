#include "extremal/search.hpp"

#include <algorithm>
#include <thread>

namespace extremal {

std::string_view to_string(RecordKind k) {
  return k == RecordKind::MinVolume ? "minvol" : "maxbottom";
}

std::optional<RecordKind> record_kind_from_string(std::string_view s) {
  if (s == "minvol") return RecordKind::MinVolume;
  if (s == "maxbottom") return RecordKind::MaxBottomWeight;
  return std::nullopt;
}

namespace {

struct Partial {
  std::optional<BigRat> best;
  std::vector<WeightSystem> achievers;
  std::uint64_t examined = 0;
};

bool better(RecordKind kind, const BigRat& a, const BigRat& b) {
  return kind == RecordKind::MinVolume ? a < b : a > b;
}

void offer(Partial& p, RecordKind kind, const BigRat& value, const WeightSystem& w) {
  if (!p.best || better(kind, value, *p.best)) {
    p.best = value;
    p.achievers.clear();
  }
  if (value == *p.best) p.achievers.push_back(w);
}

// associative: the result does not depend on shard boundaries
void merge_into(Partial& into, Partial&& from, RecordKind kind) {
  into.examined += from.examined;
  if (!from.best) return;
  if (!into.best || better(kind, *from.best, *into.best)) {
    into.best = std::move(from.best);
    into.achievers = std::move(from.achievers);
  } else if (*from.best == *into.best) {
    for (auto& w : from.achievers) into.achievers.push_back(std::move(w));
  }
}

// Necessary for quasi-smoothness at each coordinate point: a_i | d, or
// a_i | d - a_j for some j.
bool coordinate_points_ok(std::uint64_t a0, std::uint64_t a1, std::uint64_t a2, std::uint64_t a3) {
  const std::uint64_t a[4] = {a0, a1, a2, a3};
  const std::uint64_t d = a0 + a1 + a2 + a3;
  for (int i = 0; i < 4; ++i) {
    if (d % a[i] == 0) continue;
    bool ok = false;
    for (int j = 0; j < 4 && !ok; ++j) ok = j != i && (d - a[j]) % a[i] == 0;
    if (!ok) return false;
  }
  return true;
}

}  // namespace

RecordSet enumerate_cy_surfaces(const SearchConfig& config) {
  if (config.dimension != 2) throw SearchGuard("only surface searches are supported");
  if (config.max_weight < 1 || config.max_weight > kSearchMaxWeight) {
    throw SearchGuard("max_weight must lie in [1, " + std::to_string(kSearchMaxWeight) + "]");
  }
  const unsigned workers = std::max(1u, config.workers);
  std::vector<Partial> shards(config.max_weight);

  auto work = [&](unsigned worker) {
    for (std::uint64_t a0 = 1 + worker; a0 <= config.max_weight; a0 += workers) {
      Partial& p = shards[a0 - 1];
      for (std::uint64_t a1 = 1; a1 <= a0; ++a1) {
        for (std::uint64_t a2 = 1; a2 <= a1; ++a2) {
          for (std::uint64_t a3 = 1; a3 <= a2; ++a3) {
            if (!coordinate_points_ok(a0, a1, a2, a3)) continue;
            WeightSystem w({BigInt(a0), BigInt(a1), BigInt(a2), BigInt(a3)});
            if (!wps_well_formed(w)) continue;
            Hypersurface h(w, BigInt(a0 + a1 + a2 + a3));
            if (!quasi_smooth_general(h)) continue;
            if (!hyp_well_formed(h).value) continue;
            ++p.examined;
            BigRat value =
                config.record == RecordKind::MinVolume ? hyp_volume(h) : BigRat(BigInt(a3));
            offer(p, config.record, value, w);
          }
        }
      }
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned t = 0; t < workers; ++t) threads.emplace_back(work, t);
    for (auto& t : threads) t.join();
  }

  Partial total;
  for (auto& shard : shards) merge_into(total, std::move(shard), config.record);

  RecordSet out{config, total.best.value_or(BigRat(0)), std::move(total.achievers), total.examined};
  std::sort(out.achievers.begin(), out.achievers.end(),
            [](const WeightSystem& x, const WeightSystem& y) {
              return std::lexicographical_compare(x.weights().begin(), x.weights().end(),
                                                  y.weights().begin(), y.weights().end());
            });
  return out;
}

}  // namespace extremal

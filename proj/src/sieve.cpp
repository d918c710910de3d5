#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "scalefree/error.hpp"
#include "scalefree/pnt_lab.hpp"

namespace scalefree {

namespace {

constexpr std::uint64_t kSegmentOdds = std::uint64_t{1} << 18;

std::vector<std::uint32_t> small_odd_primes(std::uint64_t bound) {
  std::vector<bool> composite(bound + 1, false);
  std::vector<std::uint32_t> primes;
  for (std::uint64_t n = 3; n <= bound; n += 2) {
    if (composite[n]) continue;
    primes.push_back(static_cast<std::uint32_t>(n));
    for (std::uint64_t m = n * n; m <= bound; m += 2 * n) composite[m] = true;
  }
  return primes;
}

struct SegmentCount {
  std::uint64_t total = 0;
  // Primes counted in this segment up to each checkpoint that falls inside it.
  std::vector<std::pair<std::size_t, std::uint64_t>> partial;
};

// Counts odd primes among odd numbers 2*i + 1 for i in [first, last).
SegmentCount count_segment(std::uint64_t first, std::uint64_t last,
                           const std::vector<std::uint32_t>& primes,
                           std::span<const std::uint64_t> checkpoints, std::vector<std::uint8_t>& mark) {
  const std::uint64_t low = 2 * first + 1;
  const std::uint64_t high = 2 * last - 1;  // largest odd number in the segment
  mark.assign(last - first, 1);
  if (first == 0) mark[0] = 0;  // 1 is not prime
  for (std::uint32_t p : primes) {
    const std::uint64_t square = std::uint64_t{p} * p;
    if (square > high) break;
    std::uint64_t start = std::max(square, (low + p - 1) / p * p);
    if (start % 2 == 0) start += p;
    for (std::uint64_t m = start; m <= high; m += 2 * std::uint64_t{p}) mark[(m - 1) / 2 - first] = 0;
  }

  SegmentCount result;
  auto cp = std::lower_bound(checkpoints.begin(), checkpoints.end(), low);
  std::uint64_t running = 0;
  for (std::uint64_t i = 0; i < mark.size(); ++i) {
    const std::uint64_t n = low + 2 * i;
    while (cp != checkpoints.end() && *cp < n) {
      result.partial.emplace_back(static_cast<std::size_t>(cp - checkpoints.begin()), running);
      ++cp;
    }
    running += mark[i];
  }
  while (cp != checkpoints.end() && *cp <= high + 1) {
    result.partial.emplace_back(static_cast<std::size_t>(cp - checkpoints.begin()), running);
    ++cp;
  }
  result.total = running;
  return result;
}

}  // namespace

std::uint64_t PiTable::pi_at(std::uint64_t x) const {
  if (x > limit) {
    throw DomainError("x = " + std::to_string(x) + " exceeds the table limit " + std::to_string(limit));
  }
  const auto it = std::lower_bound(checkpoints.begin(), checkpoints.end(), x,
                                   [](const auto& entry, std::uint64_t v) { return entry.first < v; });
  if (it == checkpoints.end() || it->first != x) {
    throw DomainError("x = " + std::to_string(x) + " is not a checkpoint of this table");
  }
  return it->second;
}

PiTable sieve_pi(std::uint64_t limit, std::span<const std::uint64_t> checkpoints, unsigned threads) {
  if (limit < 2 || limit > kMaxSieveLimit) {
    throw DomainError("sieve limit must lie in [2, 1e9], got " + std::to_string(limit));
  }
  std::vector<std::uint64_t> xs(checkpoints.begin(), checkpoints.end());
  xs.push_back(limit);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  if (xs.back() > limit) {
    throw DomainError("checkpoint " + std::to_string(xs.back()) + " exceeds the sieve limit");
  }

  const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(limit))) + 1;
  const std::vector<std::uint32_t> primes = small_odd_primes(root);

  const std::uint64_t odd_count = (limit + 1) / 2;  // odd numbers 1, 3, ..., <= limit
  const std::uint64_t segment_count = (odd_count + kSegmentOdds - 1) / kSegmentOdds;
  std::vector<SegmentCount> segments(segment_count);

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(segment_count, 1)));
  std::atomic<std::uint64_t> next{0};
  const auto worker = [&] {
    std::vector<std::uint8_t> mark;
    for (std::uint64_t s = next++; s < segment_count; s = next++) {
      const std::uint64_t first = s * kSegmentOdds;
      const std::uint64_t last = std::min(odd_count, first + kSegmentOdds);
      segments[s] = count_segment(first, last, primes, xs, mark);
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  // Ordered reduction; checkpoints below 2 have no primes, the prime 2 is
  // added to every checkpoint >= 2.
  std::vector<std::uint64_t> counts(xs.size(), 0);
  std::vector<bool> assigned(xs.size(), false);
  std::uint64_t before = 0;
  for (const SegmentCount& segment : segments) {
    for (const auto& [index, partial] : segment.partial) {
      if (!assigned[index]) {
        counts[index] = before + partial;
        assigned[index] = true;
      }
    }
    before += segment.total;
  }
  PiTable table;
  table.limit = limit;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const std::uint64_t odd = assigned[i] ? counts[i] : before;
    table.checkpoints.emplace_back(xs[i], xs[i] >= 2 ? odd + 1 : 0);
  }
  return table;
}

}  // namespace scalefree

#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <thread>
#include <vector>

#include "dpx/errors.hpp"

namespace dpx {

/// Cells of indices into some list of objects. A cell flagged undecided
/// holds one object whose comparison hit the search budget; it was not
/// merged with anything.
struct Partition {
  std::vector<std::vector<std::size_t>> cells;
  std::vector<bool> undecided;

  std::size_t decided_cells() const {
    return static_cast<std::size_t>(std::count(undecided.begin(), undecided.end(), false));
  }
  /// cell index of each object
  std::vector<std::size_t> cell_of(std::size_t count) const {
    std::vector<std::size_t> out(count, static_cast<std::size_t>(-1));
    for (std::size_t c = 0; c < cells.size(); ++c)
      for (std::size_t i : cells[c]) out[i] = c;
    return out;
  }
};

/// Partitions objects 0..count-1 into classes of `equivalent`, only ever
/// comparing objects whose fingerprints agree. `equivalent` may throw
/// SearchBudgetExceeded. Buckets are processed on up to `workers` threads;
/// the result does not depend on the worker count.
template <class Key>
Partition partition_by(std::size_t count, const std::function<Key(std::size_t)>& fingerprint,
                       const std::function<bool(std::size_t, std::size_t)>& equivalent,
                       unsigned workers = 1) {
  std::map<Key, std::vector<std::size_t>> buckets;
  for (std::size_t i = 0; i < count; ++i) buckets[fingerprint(i)].push_back(i);
  std::vector<const std::vector<std::size_t>*> bucket_list;
  for (const auto& [key, members] : buckets) bucket_list.push_back(&members);

  struct BucketResult {
    std::vector<std::vector<std::size_t>> cells;
    std::vector<bool> undecided;
  };
  std::vector<BucketResult> results(bucket_list.size());

  auto solve = [&](std::size_t b) {
    BucketResult& res = results[b];
    for (std::size_t item : *bucket_list[b]) {
      bool placed = false, budget_hit = false;
      for (std::size_t c = 0; c < res.cells.size() && !placed; ++c) {
        if (res.undecided[c]) continue;
        try {
          if (equivalent(res.cells[c].front(), item)) {
            res.cells[c].push_back(item);
            placed = true;
          }
        } catch (const SearchBudgetExceeded&) {
          budget_hit = true;
        }
      }
      if (!placed) {
        res.cells.push_back({item});
        res.undecided.push_back(budget_hit);
      }
    }
  };

  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(bucket_list.size())));
  if (workers == 1) {
    for (std::size_t b = 0; b < bucket_list.size(); ++b) solve(b);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t b = w; b < bucket_list.size(); b += workers) solve(b);
      });
    for (auto& t : pool) t.join();
  }

  Partition out;
  for (auto& res : results)
    for (std::size_t c = 0; c < res.cells.size(); ++c) {
      out.cells.push_back(std::move(res.cells[c]));
      out.undecided.push_back(res.undecided[c]);
    }
  // order cells by their smallest member
  std::vector<std::size_t> order(out.cells.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return out.cells[a].front() < out.cells[b].front(); });
  Partition sorted;
  for (std::size_t i : order) {
    sorted.cells.push_back(std::move(out.cells[i]));
    sorted.undecided.push_back(out.undecided[i]);
  }
  return sorted;
}

}  // namespace dpx

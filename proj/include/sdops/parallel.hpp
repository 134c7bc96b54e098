#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "sdops/core.hpp"

namespace sdops {

/// Scan [0, total) for the smallest index at which `probe` reports a
/// failure.  Chunks are claimed in increasing order, and chunks that start
/// past the best failure found so far are skipped, so the answer does not
/// depend on the worker count.
///
/// `probe(begin, end)` scans a half-open range in order and returns the first
/// failing index together with its witness, if any.
template <class Probe>
std::optional<std::pair<std::uint64_t, Counterexample>> first_failure(std::uint64_t total,
                                                                       Probe probe,
                                                                       std::size_t jobs = 0) {
  if (jobs == 0) jobs = default_jobs();
  constexpr std::uint64_t chunk = 1 << 14;
  if (jobs <= 1 || total <= chunk) return probe(std::uint64_t{0}, total);

  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> best{total};
  std::optional<std::pair<std::uint64_t, Counterexample>> result;
  std::mutex mu;
  std::exception_ptr error;

  auto worker = [&] {
    try {
      for (;;) {
        std::uint64_t begin = next.fetch_add(chunk);
        if (begin >= total || begin >= best.load()) return;
        std::uint64_t end = std::min(total, begin + chunk);
        auto hit = probe(begin, end);
        if (hit) {
          std::lock_guard lock(mu);
          if (hit->first < best.load()) {
            best = hit->first;
            result = std::move(hit);
          }
        }
      }
    } catch (...) {
      std::lock_guard lock(mu);
      if (!error) error = std::current_exception();
      best = 0;
    }
  };
  std::vector<std::thread> pool;
  std::size_t n = std::min<std::uint64_t>(jobs, (total + chunk - 1) / chunk);
  for (std::size_t i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return result;
}

/// Run body(i) for every i in [0, total), split in contiguous blocks.
template <class Body>
void parallel_for(std::uint64_t total, Body body, std::size_t jobs = 0) {
  if (jobs == 0) jobs = default_jobs();
  if (jobs <= 1 || total < 2048) {
    for (std::uint64_t i = 0; i < total; ++i) body(i);
    return;
  }
  std::size_t n = std::min<std::uint64_t>(jobs, total);
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex mu;
  for (std::size_t w = 0; w < n; ++w) {
    pool.emplace_back([&, w] {
      try {
        std::uint64_t lo = total * w / n, hi = total * (w + 1) / n;
        for (std::uint64_t i = lo; i < hi; ++i) body(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace sdops

#pragma once

#include <cstdint>
#include <exception>
#include <thread>
#include <utility>
#include <vector>

#include "padic/census.hpp"

namespace padic::detail {

// Runs fn(lo, hi) over `threads` contiguous blocks of [lo, hi) and returns
// the per-block results in block order. The first exception is rethrown.
template <class Fn>
auto run_blocks(std::uint64_t lo, std::uint64_t hi, unsigned threads, Fn fn) {
  using Result = decltype(fn(lo, hi));
  const auto blocks = partition_range(lo, hi, threads == 0 ? 1 : threads);
  std::vector<Result> results(blocks.size());
  if (blocks.size() <= 1) {
    if (!blocks.empty()) results[0] = fn(blocks[0].first, blocks[0].second);
    return results;
  }
  std::vector<std::exception_ptr> errors(blocks.size());
  std::vector<std::thread> workers;
  workers.reserve(blocks.size());
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    workers.emplace_back([&, i] {
      try {
        results[i] = fn(blocks[i].first, blocks[i].second);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

}  // namespace padic::detail

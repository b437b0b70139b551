#pragma once

#include "otl/common.hpp"

#include <algorithm>
#include <barrier>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace otl {

/// Nonpositive requests mean "use the hardware concurrency".
inline int resolve_workers(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : int(hw);
}

/// A data-parallel step: `body(begin, end)` over a contiguous task range.
struct Phase {
  Index tasks;
  std::function<void(Index, Index)> body;
};

namespace detail {

inline std::pair<Index, Index> static_chunk(Index tasks, int workers, int rank) {
  const Index base = tasks / workers;
  const Index extra = tasks % workers;
  const Index begin = rank * base + std::min<Index>(rank, extra);
  return {begin, begin + base + (rank < extra ? 1 : 0)};
}

}  // namespace detail

/// Runs the phases in order on `workers` threads with a barrier between
/// consecutive phases. Task-to-thread assignment is a fixed static partition,
/// so a body that writes only its own task slots yields schedule-independent
/// results.
inline void run_phases(int workers, const std::vector<Phase>& phases) {
  workers = std::max(workers, 1);
  if (workers == 1) {
    for (const auto& p : phases) {
      if (p.tasks > 0) p.body(0, p.tasks);
    }
    return;
  }

  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::barrier sync(workers);

  auto work = [&](int rank) {
    for (const auto& p : phases) {
      const auto [begin, end] = detail::static_chunk(p.tasks, workers, rank);
      if (begin < end) {
        try {
          p.body(begin, end);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
      sync.arrive_and_wait();
    }
  };

  std::vector<std::jthread> threads;
  threads.reserve(workers - 1);
  for (int rank = 1; rank < workers; ++rank) threads.emplace_back(work, rank);
  work(0);
  threads.clear();
  if (failure) std::rethrow_exception(failure);
}

inline void parallel_for(Index tasks, int workers, std::function<void(Index, Index)> body) {
  run_phases(int(std::min<Index>(std::max(workers, 1), std::max<Index>(tasks, 1))),
             {Phase{tasks, std::move(body)}});
}

}  // namespace otl

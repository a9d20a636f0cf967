#pragma once

// Deterministic chunked parallel search. Work is split into fixed-size
// chunks claimed in increasing order; reductions keep the least index, so
// results do not depend on the number of workers or on scheduling.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace workbench {

  namespace detail {
    inline std::atomic<std::size_t>& worker_override() {
      static std::atomic<std::size_t> value{0};
      return value;
    }
  }  // namespace detail

  //! Forces the worker count used by default (0 restores the automatic
  //! choice).
  inline void set_worker_count(std::size_t n) {
    detail::worker_override() = n;
  }

  //! The override if set, else hardware concurrency capped by the
  //! WORKBENCH_THREADS environment variable.
  inline std::size_t worker_count() {
    if (std::size_t forced = detail::worker_override(); forced != 0) {
      return forced;
    }
    std::size_t n = std::max(1U, std::thread::hardware_concurrency());
    if (char const* env = std::getenv("WORKBENCH_THREADS")) {
      char*              end = nullptr;
      unsigned long long cap = std::strtoull(env, &end, 10);
      if (end != env && cap > 0) {
        n = std::min<std::size_t>(n, cap);
      }
    }
    return n;
  }

  inline constexpr std::uint64_t kDefaultChunk = 4096;

  //! Least i in [0, total) reported by `scan`, which is called on disjoint
  //! chunks [begin, end) and returns the least hit in its chunk, if any.
  //! Chunks above the best hit found so far are skipped.
  template <typename Scan>
  std::optional<std::uint64_t> parallel_find_first(std::uint64_t total,
                                                   Scan&&        scan,
                                                   std::size_t   workers = 0,
                                                   std::uint64_t chunk = kDefaultChunk) {
    if (workers == 0) {
      workers = worker_count();
    }
    std::uint64_t const n_chunks = (total + chunk - 1) / chunk;
    workers = static_cast<std::size_t>(
        std::min<std::uint64_t>(workers, std::max<std::uint64_t>(n_chunks, 1)));

    std::atomic<std::uint64_t> next{0};
    std::atomic<std::uint64_t> best{UINT64_MAX};

    auto work = [&]() {
      for (;;) {
        std::uint64_t c     = next.fetch_add(1);
        std::uint64_t begin = c * chunk;
        if (c >= n_chunks || begin >= best.load()) {
          return;
        }
        std::uint64_t end = std::min(total, begin + chunk);
        if (std::optional<std::uint64_t> hit = scan(begin, end)) {
          std::uint64_t current = best.load();
          while (*hit < current && !best.compare_exchange_weak(current, *hit)) {
          }
        }
      }
    };

    if (workers <= 1) {
      work();
    } else {
      std::vector<std::jthread> pool;
      pool.reserve(workers);
      for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back(work);
      }
    }
    if (best.load() == UINT64_MAX) {
      return std::nullopt;
    }
    return best.load();
  }

  //! Runs `body(begin, end, worker)` on every chunk of [0, total); each
  //! worker id in [0, workers) is used by one thread only, so per-worker
  //! state can be merged afterwards with an order-independent reduction.
  template <typename Body>
  void parallel_for_chunks(std::uint64_t total,
                           std::size_t   workers,
                           Body&&        body,
                           std::uint64_t chunk = kDefaultChunk) {
    std::uint64_t const        n_chunks = (total + chunk - 1) / chunk;
    std::atomic<std::uint64_t> next{0};
    auto work = [&](std::size_t worker) {
      for (;;) {
        std::uint64_t c = next.fetch_add(1);
        if (c >= n_chunks) {
          return;
        }
        std::uint64_t begin = c * chunk;
        body(begin, std::min(total, begin + chunk), worker);
      }
    };
    if (workers <= 1) {
      work(0);
      return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back(work, w);
    }
  }

}  // namespace workbench

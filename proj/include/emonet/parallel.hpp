#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace emonet {

// Runs fn(worker, begin, end) over contiguous chunks of [0, n). The chunking
// depends only on n and the worker count; callers that merge per-chunk results
// in chunk order get worker-count independent output.
template <class Fn>
void parallel_chunks(std::size_t n, unsigned workers, Fn&& fn) {
  workers = std::max(1u, workers);
  const std::size_t chunks = std::min<std::size_t>(workers, std::max<std::size_t>(n, 1));
  if (chunks <= 1) {
    fn(0u, std::size_t{0}, n);
    return;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(chunks);
  threads.reserve(chunks);
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::size_t begin = n * c / chunks;
    const std::size_t end = n * (c + 1) / chunks;
    threads.emplace_back([&, c, begin, end] {
      try {
        fn(static_cast<unsigned>(c), begin, end);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace emonet

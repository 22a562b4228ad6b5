#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace latorb {

/// Resolves a requested worker count; 0 means "one per hardware thread".
inline std::size_t resolve_threads(std::size_t requested) {
  if (requested > 0) return requested;
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

/*!
 * Splits [0, count) into at most `threads` contiguous chunks and calls
 * body(chunk_index, begin, end) for each. Chunk boundaries depend only on
 * (count, chunks), so callers that merge per-chunk results in chunk order
 * get output independent of scheduling. Exceptions from workers are
 * rethrown on the calling thread.
 */
template <class Body>
void parallel_chunks(std::size_t threads, std::size_t count, Body&& body) {
  const std::size_t chunks =
      std::max<std::size_t>(1, std::min(resolve_threads(threads), count));
  if (chunks == 1) {
    body(std::size_t{0}, std::size_t{0}, count);
    return;
  }
  std::vector<std::exception_ptr> errors(chunks);
  std::vector<std::jthread> workers;
  workers.reserve(chunks);
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::size_t begin = count * c / chunks;
    const std::size_t end = count * (c + 1) / chunks;
    workers.emplace_back([&, c, begin, end] {
      try {
        body(c, begin, end);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    });
  }
  workers.clear();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

/// Number of chunks parallel_chunks will use for the same arguments.
inline std::size_t chunk_count(std::size_t threads, std::size_t count) {
  return std::max<std::size_t>(1, std::min(resolve_threads(threads), count));
}

}  // namespace latorb

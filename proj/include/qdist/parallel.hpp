#ifndef QDIST_PARALLEL_HPP
#define QDIST_PARALLEL_HPP

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace qdist {

/// Runs body(begin, end, chunk) over [0, count) split into at most `threads` contiguous chunks.
/// Chunk boundaries depend only on (count, threads); callers that write per-index results or
/// merge per-chunk partials in chunk order get output independent of scheduling.
template <class Body>
void parallel_chunks(std::uint64_t count, unsigned threads, Body&& body) {
  threads = std::max(1u, threads);
  if (threads == 1 || count < 2) {
    body(std::uint64_t{0}, count, 0u);
    return;
  }
  const auto chunks = static_cast<unsigned>(std::min<std::uint64_t>(threads, count));
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(chunks);
  for (unsigned c = 0; c < chunks; ++c) {
    const std::uint64_t begin = count * c / chunks, end = count * (c + 1) / chunks;
    pool.emplace_back([&, begin, end, c] {
      try {
        body(begin, end, c);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

inline unsigned chunk_count(std::uint64_t count, unsigned threads) {
  threads = std::max(1u, threads);
  if (threads == 1 || count < 2) return 1;
  return static_cast<unsigned>(std::min<std::uint64_t>(threads, count));
}

}  // namespace qdist

#endif  // QDIST_PARALLEL_HPP

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <span>
#include <string>
#include <thread>
#include <vector>

namespace boba {

// Thread count used when a caller passes 0: $BOBA_THREADS if set, otherwise
// the hardware concurrency.
inline unsigned default_threads() {
  if (const char* env = std::getenv("BOBA_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (...) {
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

inline unsigned resolve_threads(unsigned hint) {
  return hint == 0 ? default_threads() : hint;
}

// Splits [begin, end) into `threads` contiguous chunks and calls
// body(lo, hi, chunk_id) on each, chunk 0 on the calling thread.
// Ranges shorter than `grain` run inline as a single chunk.
template <class Body>
void parallel_for_chunks(std::size_t begin, std::size_t end, unsigned threads, Body&& body,
                         std::size_t grain = 4096) {
  const std::size_t len = end > begin ? end - begin : 0;
  threads = resolve_threads(threads);
  if (threads <= 1 || len <= grain) {
    body(begin, end, 0u);
    return;
  }
  const std::size_t chunks = std::min<std::size_t>(threads, (len + grain - 1) / grain);
  const std::size_t step = (len + chunks - 1) / chunks;
  std::vector<std::jthread> workers;
  workers.reserve(chunks - 1);
  for (std::size_t c = 1; c < chunks; ++c) {
    const std::size_t lo = begin + c * step;
    const std::size_t hi = std::min(end, lo + step);
    if (lo >= hi) break;
    workers.emplace_back([&body, lo, hi, c] { body(lo, hi, static_cast<unsigned>(c)); });
  }
  body(begin, std::min(end, begin + step), 0u);
}

template <class Body>
void parallel_for(std::size_t begin, std::size_t end, unsigned threads, Body&& body,
                  std::size_t grain = 4096) {
  parallel_for_chunks(
      begin, end, threads,
      [&body](std::size_t lo, std::size_t hi, unsigned) {
        for (std::size_t i = lo; i < hi; ++i) body(i);
      },
      grain);
}

// Exclusive prefix sum of `in` into `out` (may alias). Returns the total.
// Two passes: per-chunk sums, then a rescan seeded with each chunk's offset.
template <class T>
T parallel_exclusive_scan(std::span<const T> in, std::span<T> out, unsigned threads,
                          std::size_t grain = 1 << 14) {
  const std::size_t len = in.size();
  threads = resolve_threads(threads);
  if (threads <= 1 || len <= grain) {
    T acc{};
    for (std::size_t i = 0; i < len; ++i) {
      const T x = in[i];
      out[i] = acc;
      acc += x;
    }
    return acc;
  }
  const std::size_t chunks = std::min<std::size_t>(threads, (len + grain - 1) / grain);
  const std::size_t step = (len + chunks - 1) / chunks;
  std::vector<T> sums(chunks + 1, T{});
  parallel_for_chunks(
      0, chunks, static_cast<unsigned>(chunks),
      [&](std::size_t c_lo, std::size_t c_hi, unsigned) {
        for (std::size_t c = c_lo; c < c_hi; ++c) {
          T acc{};
          for (std::size_t i = c * step; i < std::min(len, (c + 1) * step); ++i) acc += in[i];
          sums[c + 1] = acc;
        }
      },
      1);
  for (std::size_t c = 0; c < chunks; ++c) sums[c + 1] += sums[c];
  parallel_for_chunks(
      0, chunks, static_cast<unsigned>(chunks),
      [&](std::size_t c_lo, std::size_t c_hi, unsigned) {
        for (std::size_t c = c_lo; c < c_hi; ++c) {
          T acc = sums[c];
          for (std::size_t i = c * step; i < std::min(len, (c + 1) * step); ++i) {
            const T x = in[i];
            out[i] = acc;
            acc += x;
          }
        }
      },
      1);
  return sums[chunks];
}

}  // namespace boba

#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <limits>
#include <thread>
#include <vector>

#include "qcext/error.hpp"

namespace qcext {

/// Polar sampling of the unit disk used to estimate suprema.
///
/// Radii are the union of a uniform set j/m (j = 1..m-1) and a set clustered
/// geometrically toward the circle, 1 - 2^(-B j/m) (j = 1..m), with
/// m = n_radial / 2 and B = boundary_exponent. Doubling n_radial or
/// n_angular produces a superset of the previous points, so grid suprema are
/// non-decreasing under refinement.
struct DiskGrid {
  std::size_t n_radial = 128;
  std::size_t n_angular = 512;
  double boundary_exponent = 32.0;
  bool include_center = false;

  void validate() const;
  std::vector<double> radii() const;
  /// Largest sampled radius, 1 - 2^-B.
  double max_radius() const;
  std::size_t size() const;
  std::vector<complex> points() const;
  DiskGrid refined() const;
};

/// Polar sampling of {r_min <= |z| <= r_max}; geometric or uniform radii.
struct AnnulusGrid {
  double r_min = 1.0 + 1e-3;
  double r_max = 8.0;
  std::size_t n_radial = 32;
  std::size_t n_angular = 128;
  bool geometric = true;

  void validate() const;
  std::vector<double> radii() const;
  std::vector<complex> points() const;
};

/// Number of worker threads used by grid sweeps (0 = hardware concurrency).
void set_thread_count(unsigned count);
unsigned thread_count();

/// Number of blocks parallel_blocks splits n items into.
inline std::size_t block_count(std::size_t n) {
  return std::max<std::size_t>(
      1, std::min<std::size_t>(thread_count(), n / 256 + 1));
}

/// Runs body(block, begin, end) over block_count(n) contiguous blocks of
/// [0, n), one thread per block. If any block throws, the exception from the
/// lowest-numbered block is rethrown after all workers finish.
template <typename Body>
void parallel_blocks(std::size_t n, Body&& body) {
  const std::size_t blocks = block_count(n);
  const std::size_t chunk = (n + blocks - 1) / blocks;
  if (blocks == 1) {
    body(std::size_t{0}, std::size_t{0}, n);
    return;
  }
  std::vector<std::exception_ptr> errors(blocks);
  std::vector<std::thread> threads;
  threads.reserve(blocks);
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::size_t begin = std::min(n, b * chunk);
    const std::size_t end = std::min(n, begin + chunk);
    threads.emplace_back([&, b, begin, end] {
      try {
        body(b, begin, end);
      } catch (...) {
        errors[b] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

struct ArgMax {
  double value = -std::numeric_limits<double>::infinity();
  std::size_t index = std::numeric_limits<std::size_t>::max();

  /// Larger value wins; ties go to the smaller index.
  void offer(double v, std::size_t i) {
    if (v > value || (v == value && i < index)) {
      value = v;
      index = i;
    }
  }
  void merge(const ArgMax& other) { offer(other.value, other.index); }
  bool empty() const { return index == std::numeric_limits<std::size_t>::max(); }
};

/// Deterministic parallel max of f(points[i]) over all points.
template <typename F>
ArgMax sweep_max(const std::vector<complex>& points, F&& f) {
  const std::size_t n = points.size();
  std::vector<ArgMax> partial(block_count(n));
  parallel_blocks(n, [&](std::size_t block, std::size_t begin, std::size_t end) {
    ArgMax local;
    for (std::size_t i = begin; i < end; ++i) local.offer(f(points[i]), i);
    partial[block] = local;
  });
  ArgMax best;
  for (const auto& p : partial) {
    if (!p.empty()) best.merge(p);
  }
  return best;
}

}  // namespace qcext

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "gcp/types.hpp"

namespace gcp {

/// Uniform sample grid over an axis-aligned box, points in lexicographic
/// order (last axis fastest).
struct Grid {
  std::vector<Vec> points;
  Vec spacing;  // per axis; interval width when a single point is requested
  std::vector<int> shape;

  int size() const { return static_cast<int>(points.size()); }
};

inline Grid make_grid(const std::vector<std::array<double, 2>>& domain, int points_per_axis) {
  if (points_per_axis < 1) throw std::invalid_argument("grid: need at least one point per axis");
  const int s = static_cast<int>(domain.size());
  Grid g;
  g.spacing = Vec::Zero(s);
  g.shape.assign(s, points_per_axis);
  for (int i = 0; i < s; ++i) {
    const double width = domain[i][1] - domain[i][0];
    if (width < 0) throw std::invalid_argument("grid: empty interval");
    g.spacing[i] = points_per_axis > 1 ? width / (points_per_axis - 1) : width;
  }
  const long total = [&] {
    long t = 1;
    for (int i = 0; i < s; ++i) t *= points_per_axis;
    return t;
  }();
  g.points.reserve(total);
  std::vector<int> idx(s, 0);
  for (long k = 0; k < total; ++k) {
    Vec p(s);
    for (int i = 0; i < s; ++i)
      p[i] = points_per_axis > 1 ? domain[i][0] + idx[i] * g.spacing[i]
                                 : 0.5 * (domain[i][0] + domain[i][1]);
    g.points.push_back(std::move(p));
    for (int i = s - 1; i >= 0; --i) {
      if (++idx[i] < points_per_axis) break;
      idx[i] = 0;
    }
  }
  return g;
}

/// Runs fn(i) for i in [0, n) on `threads` workers. Results must be written
/// to index-distinct slots; output is then independent of the thread count.
template <typename F>
void parallel_for(int n, int threads, F&& fn) {
  if (n <= 0) return;
  threads = std::max(1, std::min(threads, n));
  if (threads == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace gcp

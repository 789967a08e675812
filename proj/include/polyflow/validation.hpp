#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <functional>
#include <optional>
#include <thread>
#include <vector>

#include "polyflow/analysis.hpp"
#include "polyflow/generators.hpp"

namespace polyflow {

// Randomized theorem suite for the linear scheme. Every ensemble member is
// seeded from (suite seed, ensemble tag, member index), so results do not
// depend on thread count or scheduling.

struct ValidationConfig {
  std::size_t ensemble_size = 100;
  std::uint64_t seed = 1;
  unsigned threads = 0;  // 0: hardware concurrency
};

/// Seed of member `index` of the ensemble named by `tag`.
std::uint64_t member_seed(std::uint64_t suite_seed, std::uint64_t tag, std::size_t index);

/// Combines per-member reports: passes iff all pass; the first violation
/// comes from the lowest failing member index.
CheckReport aggregate(std::string name, const std::vector<CheckReport>& members);

/// Evaluates fn(0..count-1) on up to `threads` threads (0: hardware
/// concurrency); results are returned in index order.
template <class T>
std::vector<T> parallel_map(std::size_t count, unsigned threads, const std::function<T(std::size_t)>& fn);

/// Max |centroid(t) - centroid(0)| over the samples, relative to the
/// initial diameter.
double centroid_drift(const Trajectory& traj);

struct EnsembleSizes {
  std::size_t stars;
  std::size_t convex;
  std::size_t flat_convex;
  std::size_t ellipse;
  std::size_t optimality;
  std::size_t collinear;
  std::size_t oracle;
};

/// N stars and convex polygons; N/5 flat-vertex, ellipse and oracle runs;
/// N/2 optimality polygons; N/10 collinear runs (each at least 1).
EnsembleSizes ensemble_sizes(std::size_t n);

/// Outcome of one ensemble: its theorem check, the perimeter check on the
/// same linear trajectories (when applicable) and the worst relative
/// centroid drift.
struct EnsembleResult {
  CheckReport check;
  std::optional<CheckReport> perimeter;
  double max_centroid_drift = 0.0;
};

/// RK4 (dt = 1e-3) against the closed-form solution on [0, 5] for random
/// unit-diameter 12-gons; every coordinate within 1e-6.
EnsembleResult oracle_ensemble(std::size_t count, std::uint64_t seed, unsigned threads);
/// Random counterclockwise stars (n in 4..12) stay stars until diameter 1e-4.
EnsembleResult star_ensemble(std::size_t count, std::uint64_t seed, unsigned threads);
/// Random strictly convex polygons (n in 4..12) stay strictly convex.
EnsembleResult convex_ensemble(std::size_t count, std::uint64_t seed, unsigned threads);
/// Convex polygons with one flat vertex are strictly convex for all t > 0.
EnsembleResult flat_convex_ensemble(std::size_t count, std::uint64_t seed, unsigned threads);
/// Random 8-gons: residual non-increasing for tau >= 1, below 1e-3 at tau = 6.
EnsembleResult ellipse_ensemble(std::size_t count, std::uint64_t seed, unsigned threads);
/// Collinear starts stay on their line to 1e-9 of the diameter over [0, 5].
EnsembleResult collinear_ensemble(std::size_t count, std::uint64_t seed, unsigned threads);
/// Bisector directions beat 20 magnitude-matched random fields per polygon.
CheckReport optimality_ensemble(std::size_t count, std::uint64_t seed, unsigned threads);
/// The boomerang fixture is simple and its area grows within t <= 0.05.
CheckReport boomerang_area_check();
/// The embedded-loss fixture is simple and later self-intersects.
CheckReport embedded_loss_check();

/// Centroid check over drift values: passes iff each is <= 1e-9.
CheckReport centroid_report(const std::vector<double>& drifts);

/// Runs the whole suite; reports are in a fixed order.
std::vector<CheckReport> run_validation(const ValidationConfig& cfg);

template <class T>
std::vector<T> parallel_map(std::size_t count, unsigned threads, const std::function<T(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::optional<T>> slots(count);
  const std::size_t workers = std::min<std::size_t>(threads, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) slots[i].emplace(fn(i));
  } else {
    // Strided partition; each slot is written by exactly one worker.
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < count; i += workers) slots[i].emplace(fn(i));
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  std::vector<T> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace polyflow

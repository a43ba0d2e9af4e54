#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "mirrorqed/trajectory/trajectory.hpp"

namespace mirrorqed {

struct EnsembleResult {
  std::vector<double> times;
  std::vector<double> mean;
  std::vector<double> standard_error;
  std::size_t n_trajectories = 0;
};

namespace detail {

inline constexpr std::size_t kEnsembleBlock = 32;

struct BlockSums {
  std::vector<double> sum;
  std::vector<double> sum_sq;
};

}  // namespace detail

/**
 * Mean and standard error of P_e over config.n_trajectories trajectories.
 *
 * Trajectories are grouped into fixed blocks of consecutive indices; each
 * block is accumulated in index order and blocks are reduced in block order,
 * so the result does not depend on `threads` or on scheduling.
 */
inline EnsembleResult ensemble_average(const TrajectoryConfig& config, unsigned threads = 0) {
  validate(config);
  const Propagator u = build_propagator(config);
  const std::size_t samples = config.step_count();
  const std::size_t n = config.n_trajectories;
  const std::size_t blocks = (n + detail::kEnsembleBlock - 1) / detail::kEnsembleBlock;

  std::vector<detail::BlockSums> partial(blocks);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    try {
      for (std::size_t b = next++; b < blocks; b = next++) {
        auto& acc = partial[b];
        acc.sum.assign(samples, 0.0);
        acc.sum_sq.assign(samples, 0.0);
        const std::size_t end = std::min(n, (b + 1) * detail::kEnsembleBlock);
        for (std::size_t i = b * detail::kEnsembleBlock; i < end; ++i) {
          const auto pe = run_trajectory(config, u, i);
          for (std::size_t k = 0; k < samples; ++k) {
            acc.sum[k] += pe[k];
            acc.sum_sq[k] += pe[k] * pe[k];
          }
        }
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = blocks;
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, blocks));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  EnsembleResult result;
  result.times = trajectory_times(config);
  result.n_trajectories = n;
  result.mean.assign(samples, 0.0);
  result.standard_error.assign(samples, 0.0);
  std::vector<double> sum_sq(samples, 0.0);
  for (const auto& acc : partial) {
    for (std::size_t k = 0; k < samples; ++k) {
      result.mean[k] += acc.sum[k];
      sum_sq[k] += acc.sum_sq[k];
    }
  }
  const double nd = static_cast<double>(n);
  for (std::size_t k = 0; k < samples; ++k) {
    const double mean = result.mean[k] / nd;
    result.mean[k] = mean;
    if (n > 1) {
      const double var = std::max(0.0, (sum_sq[k] - nd * mean * mean) / (nd - 1.0));
      result.standard_error[k] = std::sqrt(var / nd);
    }
  }
  return result;
}

}  // namespace mirrorqed

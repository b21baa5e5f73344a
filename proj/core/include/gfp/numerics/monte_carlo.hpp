#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "gfp/numerics/estimate.hpp"
#include "gfp/numerics/rng.hpp"

namespace gfp {

/// Worker count used by parallel loops. Reads GFP_WORKERS unless overridden
/// with ScopedWorkers; defaults to the hardware concurrency.
int default_workers();

/// Overrides default_workers() for the lifetime of the object.
class ScopedWorkers {
 public:
  explicit ScopedWorkers(int workers);
  ~ScopedWorkers();
  ScopedWorkers(const ScopedWorkers&) = delete;
  ScopedWorkers& operator=(const ScopedWorkers&) = delete;

 private:
  int previous_;
};

/// Runs body(i) for i in [0, count) on up to `workers` threads. Each index is
/// executed exactly once; the caller is responsible for writing results into
/// per-index slots.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                  int workers = 0);

using Sampler = std::function<double(RandomSource&)>;
using VectorSampler = std::function<void(RandomSource&, std::span<double>)>;

/// Sample mean with one standard error (sample sd / sqrt(n)).
/// Bitwise reproducible for fixed (stream, n) under any worker count.
Estimate mc_mean(const Sampler& sampler, std::uint64_t n, const RngStream& stream);

struct VectorMean {
  std::vector<double> mean;
  std::vector<double> std_error;
  std::uint64_t samples = 0;

  Estimate component(std::size_t i, const char* method = "monte-carlo") const;
};

/// Componentwise mean of a vector-valued sampler; same reproducibility
/// contract as mc_mean. Linear contrasts whose error is needed under common
/// random numbers should be emitted as extra components.
VectorMean mc_mean_vector(const VectorSampler& sampler, std::size_t dim, std::uint64_t n,
                          const RngStream& stream);

}  // namespace gfp

#include "gfp/numerics/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "gfp/numerics/errors.hpp"

namespace gfp {

namespace {

std::atomic<int> g_worker_override{0};

struct BatchStats {
  std::uint64_t count = 0;
  std::vector<double> mean;
  std::vector<double> m2;
};

}  // namespace

int default_workers() {
  if (int w = g_worker_override.load(); w > 0) return w;
  if (const char* env = std::getenv("GFP_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<int>(std::min<long>(v, 1024));
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

ScopedWorkers::ScopedWorkers(int workers) : previous_(g_worker_override.exchange(workers)) {}

ScopedWorkers::~ScopedWorkers() { g_worker_override.store(previous_); }

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body, int workers) {
  if (workers <= 0) workers = default_workers();
  const std::size_t nthreads = std::min<std::size_t>(static_cast<std::size_t>(workers), count);
  if (nthreads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(nthreads - 1);
  for (std::size_t t = 1; t < nthreads; ++t) pool.emplace_back(run);
  run();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

Estimate VectorMean::component(std::size_t i, const char* method) const {
  return {mean.at(i), std_error.at(i), samples, method};
}

VectorMean mc_mean_vector(const VectorSampler& sampler, std::size_t dim, std::uint64_t n,
                          const RngStream& stream) {
  if (n < 2) throw DomainError("mc_mean_vector: need at least two samples");
  if (dim == 0) throw DomainError("mc_mean_vector: zero-dimensional sampler");
  const std::uint64_t batches = (n + kBatchSize - 1) / kBatchSize;
  std::vector<BatchStats> stats(batches);
  parallel_for(batches, [&](std::size_t b) {
    RandomSource source(stream, b);
    const std::uint64_t begin = b * kBatchSize;
    const std::uint64_t end = std::min<std::uint64_t>(n, begin + kBatchSize);
    BatchStats& s = stats[b];
    s.mean.assign(dim, 0.0);
    s.m2.assign(dim, 0.0);
    std::vector<double> buf(dim);
    for (std::uint64_t k = begin; k < end; ++k) {
      std::fill(buf.begin(), buf.end(), 0.0);
      sampler(source, buf);
      ++s.count;
      const double inv = 1.0 / static_cast<double>(s.count);
      for (std::size_t j = 0; j < dim; ++j) {
        const double d = buf[j] - s.mean[j];
        s.mean[j] += d * inv;
        s.m2[j] += d * (buf[j] - s.mean[j]);
      }
    }
  });
  // Sequential merge in batch order keeps the result independent of scheduling.
  BatchStats total = std::move(stats[0]);
  for (std::uint64_t b = 1; b < batches; ++b) {
    const BatchStats& s = stats[b];
    const double na = static_cast<double>(total.count);
    const double nb = static_cast<double>(s.count);
    const double nt = na + nb;
    for (std::size_t j = 0; j < dim; ++j) {
      const double d = s.mean[j] - total.mean[j];
      total.mean[j] += d * nb / nt;
      total.m2[j] += s.m2[j] + d * d * na * nb / nt;
    }
    total.count += s.count;
  }
  VectorMean out;
  out.samples = total.count;
  out.mean = total.mean;
  out.std_error.resize(dim);
  const double nn = static_cast<double>(total.count);
  for (std::size_t j = 0; j < dim; ++j)
    out.std_error[j] = std::sqrt(std::max(0.0, total.m2[j]) / (nn - 1.0) / nn);
  return out;
}

Estimate mc_mean(const Sampler& sampler, std::uint64_t n, const RngStream& stream) {
  VectorMean vm = mc_mean_vector(
      [&sampler](RandomSource& src, std::span<double> out) { out[0] = sampler(src); }, 1, n, stream);
  return vm.component(0);
}

}  // namespace gfp

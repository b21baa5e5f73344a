#pragma once

#include <cstdint>
#include <random>

namespace gfp {

/// Immutable descriptor of a reproducible random stream.
///
/// Samples are produced in fixed-size batches; batch b of stream
/// (seed, stream_id) is generated by an engine seeded from a hash of the
/// triple, so the sequence never depends on how batches are scheduled.
struct RngStream {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;

  /// A derived, statistically independent stream.
  RngStream substream(std::uint64_t index) const;

  friend bool operator==(const RngStream&, const RngStream&) = default;
};

inline constexpr std::uint64_t kBatchSize = 2048;

std::uint64_t splitmix64(std::uint64_t x);

/// Random source for one batch.
class RandomSource {
 public:
  RandomSource(const RngStream& stream, std::uint64_t batch);

  /// Uniform on the open interval (0, 1).
  double uniform();
  /// Standard normal by inversion.
  double normal();
  /// Normal conditioned on (lo, hi), by inversion of the truncated CDF.
  double truncated_normal(double lo, double hi);

 private:
  std::mt19937_64 engine_;
};

}  // namespace gfp

#include "gfp/numerics/rng.hpp"

#include <algorithm>
#include <cmath>

#include "gfp/numerics/errors.hpp"
#include "gfp/numerics/special.hpp"

namespace gfp {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RngStream RngStream::substream(std::uint64_t index) const {
  return {seed, splitmix64(stream_id ^ splitmix64(index + 0x5bd1e995ULL))};
}

RandomSource::RandomSource(const RngStream& stream, std::uint64_t batch) {
  std::uint64_t h = splitmix64(stream.seed);
  h = splitmix64(h ^ stream.stream_id);
  h = splitmix64(h ^ batch);
  std::seed_seq seq{static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32),
                    static_cast<std::uint32_t>(stream.seed), static_cast<std::uint32_t>(batch)};
  engine_.seed(seq);
}

double RandomSource::uniform() {
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double RandomSource::normal() { return normal_quantile(uniform()); }

double RandomSource::truncated_normal(double lo, double hi) {
  if (!(lo < hi)) throw DomainError("truncated_normal: empty interval");
  if (lo > 0.0) return -truncated_normal(-hi, -lo);
  // Here lo <= 0, so Phi(lo) <= 1/2 keeps full relative precision.
  const double plo = normal_cdf(lo);
  const double phi = normal_cdf(hi);
  const double p = plo + uniform() * (phi - plo);
  const double x = normal_quantile(std::clamp(p, 1e-300, 1.0 - 0x1.0p-53));
  return std::clamp(x, lo, hi);
}

}  // namespace gfp

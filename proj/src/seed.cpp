#include "imlab/seed.hpp"

#include <cmath>
#include <limits>

namespace imlab {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

Seed Seed::stream(std::uint32_t sub) const {
  // Fold the current stream into the master so nested derivations stay distinct.
  return Seed{splitmix64(master_seed ^ (0xa5a5a5a5ULL + stream_id)), sub};
}

Rng::Rng(Seed seed)
    : engine_(splitmix64(splitmix64(seed.master_seed) ^ (seed.stream_id + 0x632be59bd9b4e019ULL))) {}

double Rng::uniform() {
  // 53-bit mantissa draw
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = 0.0;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phi = 2.0 * M_PI * u2;
  spare_ = r * std::sin(phi);
  has_spare_ = true;
  return r * std::cos(phi);
}

std::uint64_t Rng::below(std::uint64_t bound) {
  // rejection sampling, unbiased
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

}  // namespace imlab

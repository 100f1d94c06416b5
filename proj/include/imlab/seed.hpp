#pragma once

#include <cstdint>
#include <random>

namespace imlab {

// A (master_seed, stream_id) pair fully determines a sample sequence.
// Parallel tasks derive distinct stream ids from one master seed, so
// results do not depend on scheduling.
struct Seed {
  std::uint64_t master_seed = 0;
  std::uint32_t stream_id = 0;

  Seed stream(std::uint32_t sub) const;

  bool operator==(const Seed&) const = default;
};

// Deterministic RNG. Gaussian variates use an explicit Box-Muller so the
// sample stream is identical across standard library implementations.
class Rng {
 public:
  explicit Rng(Seed seed);

  double uniform();                 // [0, 1)
  double gaussian();                // standard normal
  std::uint64_t below(std::uint64_t bound);  // uniform in [0, bound)

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace imlab

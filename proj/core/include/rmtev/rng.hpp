#pragma once

#include <cstdint>
#include <random>

namespace rmtev {

// Random stream keyed by (seed, stream index). Replicate r of an experiment
// always draws from stream (seed, r), so results do not depend on which
// worker ran it or in what order.
//
// Engine and seeding are both fully specified by the standard; the uniform
// and normal transforms are implemented here rather than taken from
// <random> distributions, whose algorithms are implementation-defined.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform();

  // Standard normal (Marsaglia polar method).
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace rmtev

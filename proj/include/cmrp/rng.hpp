#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace cmrp {

/// Counter-seeded random stream: stream k of master seed s always produces the
/// same draws, independent of which thread consumes it. xoshiro256++ state is
/// expanded from (seed, stream) with splitmix64.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();

  /// Uniform on [0,1) with 53 random bits.
  double uniform01();
  /// Uniform on (0,1]; never returns 0.
  double uniform_pos();

  double normal();
  double exponential(double rate);
  double gamma(double rate, double shape);
  double beta(double a, double b);

 private:
  std::array<std::uint64_t, 4> state_;
};

/// Deterministically folds a label into a master seed (per-check substreams).
std::uint64_t derive_seed(std::uint64_t seed, const std::string& label);

}  // namespace cmrp

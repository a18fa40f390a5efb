#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <limits>

namespace su2crit {

/// Identifies one trial's random substream. The coefficient draw is a pure
/// function of (master_seed, trial_index).
struct SeedPath {
  std::uint64_t master_seed = 0;
  std::uint64_t trial_index = 0;

  friend bool operator==(const SeedPath&, const SeedPath&) = default;
};

/// Philox4x32 with 10 rounds (Salmon et al., Random123).
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;
PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key);

/// Counter-based stream. The key is the master seed, the upper half of the
/// counter is the trial index and the lower half counts blocks, so streams of
/// different trials never overlap and can be generated in any order.
class PhiloxStream {
 public:
  using result_type = std::uint64_t;

  explicit PhiloxStream(SeedPath path);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1].
  double uniform_open_low();

  /// Standard complex Gaussian: E a = 0, E|a|^2 = 1, real and imaginary
  /// parts independent N(0, 1/2). Exact polar Box-Muller.
  std::complex<double> complex_normal();

 private:
  void refill();

  PhiloxKey key_{};
  std::uint64_t trial_ = 0;
  std::uint64_t block_ = 0;
  PhiloxCounter buffer_{};
  int used_ = 4;
};

}  // namespace su2crit

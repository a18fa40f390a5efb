#include "su2crit/rng.hpp"

#include <cmath>
#include <numbers>

namespace su2crit {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(product >> 32);
  lo = static_cast<std::uint32_t>(product);
}

}  // namespace

PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

PhiloxStream::PhiloxStream(SeedPath path)
    : key_{static_cast<std::uint32_t>(path.master_seed),
           static_cast<std::uint32_t>(path.master_seed >> 32)},
      trial_(path.trial_index) {}

void PhiloxStream::refill() {
  const PhiloxCounter ctr{static_cast<std::uint32_t>(block_),
                          static_cast<std::uint32_t>(block_ >> 32),
                          static_cast<std::uint32_t>(trial_),
                          static_cast<std::uint32_t>(trial_ >> 32)};
  buffer_ = philox4x32_10(ctr, key_);
  ++block_;
  used_ = 0;
}

PhiloxStream::result_type PhiloxStream::operator()() {
  if (used_ > 2) refill();
  const std::uint64_t lo = buffer_[used_];
  const std::uint64_t hi = buffer_[used_ + 1];
  used_ += 2;
  return (hi << 32) | lo;
}

double PhiloxStream::uniform() {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

double PhiloxStream::uniform_open_low() {
  return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53;
}

std::complex<double> PhiloxStream::complex_normal() {
  // |a|^2 ~ Exp(1), arg a ~ U[0, 2pi)
  const double modulus = std::sqrt(-std::log(uniform_open_low()));
  const double angle = 2.0 * std::numbers::pi * uniform();
  return std::polar(modulus, angle);
}

}  // namespace su2crit

#include "gradecast/rng.hpp"

#include <cmath>
#include <numbers>

#include "gradecast/errors.hpp"

namespace gradecast {

namespace {

constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

// splitmix64 finalizer (Steele, Lea, Flood 2014).
std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

}  // namespace

std::uint64_t RngStream::next_u64() {
  state_ += kGoldenGamma;
  return mix64(state_);
}

double RngStream::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t RngStream::next_below(std::uint64_t bound) {
  if (bound == 0) {
    throw config_error("next_below: bound must be >= 1");
  }
  if (bound == 1) return 0;
  std::uint64_t mask = bound - 1;
  mask |= mask >> 1;
  mask |= mask >> 2;
  mask |= mask >> 4;
  mask |= mask >> 8;
  mask |= mask >> 16;
  mask |= mask >> 32;
  std::uint64_t r;
  do {
    r = next_u64() & mask;
  } while (r >= bound);
  return r;
}

std::vector<double> RngStream::uniform(std::size_t n) {
  std::vector<double> out(n);
  for (double& v : out) v = next_double();
  return out;
}

std::vector<double> RngStream::normal(std::size_t n) {
  std::vector<double> out;
  out.reserve(n + 1);
  while (out.size() < n) {
    // u1 shifted into (0, 1] so the log stays finite.
    const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    const double u2 = next_double();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    out.push_back(radius * std::cos(angle));
    out.push_back(radius * std::sin(angle));
  }
  out.resize(n);
  return out;
}

double RngStream::next_normal() { return normal(1)[0]; }

RngStream RngStream::split(std::uint64_t key) const {
  return RngStream(mix64(seed_ ^ mix64(key + kGoldenGamma)));
}

}  // namespace gradecast

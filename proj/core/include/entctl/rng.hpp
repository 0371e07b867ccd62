#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace entctl {

// splitmix64 step; also used as the mixing function for sub-stream seeds.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Stream seed for (master, trajectory, channel). Channels: 0 = OU on qubit a,
// 1 = OU on qubit b, 2 = jump decisions. Splittable by construction, so
// per-trajectory streams are independent of scheduling and worker count.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t trajectory,
                                 std::uint64_t channel) {
  std::uint64_t s = master;
  std::uint64_t a = splitmix64_next(s);
  s = a ^ (trajectory * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL);
  a = splitmix64_next(s);
  s = a ^ (channel * 0x9e3779b97f4a7c15ULL + 1ULL);
  return splitmix64_next(s);
}

// xoshiro256** bit generator (public-domain reference algorithm).
class Xoshiro256ss {
 public:
  Xoshiro256ss() : Xoshiro256ss(0) {}
  explicit Xoshiro256ss(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64_next(sm);
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // uniform in [0, 1), 53-bit resolution
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  // uniform in (0, 1]; safe under log()
  double uniform01_open() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::array<std::uint64_t, 4> s_{};
};

// Standard normal variates via Box-Muller, one cached spare.
// Hand-rolled (not std::normal_distribution) so streams are bit-reproducible.
class GaussianStream {
 public:
  GaussianStream() = default;
  explicit GaussianStream(std::uint64_t seed) : eng_(seed) {}

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = eng_.uniform01_open();
    const double u2 = eng_.uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

 private:
  Xoshiro256ss eng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace entctl

#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Core>

namespace sdpcut {

// splitmix64; used only for seed derivation, never as the sampling generator.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Deterministic sub-seed for stream `index` of purpose `salt` under a master
// seed. Shard- or trial-parallel runs reproduce serial runs because every
// stream depends only on (seed, salt, index).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt,
                                 std::uint64_t index) {
  return splitmix64(splitmix64(seed ^ splitmix64(salt)) + index);
}

namespace seed_salt {
constexpr std::uint64_t solver = 0x534f4c5652ULL;
constexpr std::uint64_t trial = 0x545249414cULL;
constexpr std::uint64_t mc_shard = 0x4d434d43ULL;
constexpr std::uint64_t sphere = 0x5350485245ULL;
constexpr std::uint64_t config = 0x434f4e464947ULL;
}  // namespace seed_salt

// Standard normal sampler on top of mt19937_64 (whose output sequence is
// fully specified by the standard) with an explicit Box-Muller transform,
// so results do not depend on the C++ library's normal_distribution.
class GaussianSampler {
 public:
  explicit GaussianSampler(std::uint64_t seed) : gen_(seed) {}

  double uniform01() {
    // 53-bit mantissa in (0,1]
    return static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53;
  }

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  Eigen::VectorXd vector(Eigen::Index d) {
    Eigen::VectorXd g(d);
    for (Eigen::Index i = 0; i < d; ++i) g(i) = next();
    return g;
  }

  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace sdpcut

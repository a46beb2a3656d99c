#pragma once

#include <cstdint>

#include "sdpcut/anticonc.hpp"
#include "sdpcut/embedding.hpp"

namespace sdpcut {

struct ExtremalSearchConfig {
  int d = 3;
  int n = 10;
  std::uint64_t seed = 0;
  int max_retries = 200;
  long mc_samples = 10000;
};

/// n i.i.d. uniform points on S^{d-1} (normalized Gaussians; zero-norm draws
/// are resampled). Bit-reproducible for a fixed seed.
UnitEmbedding sample_sphere(int n, int d, std::uint64_t seed);

/// P(<U,V> >= a) <= (1 - a^2)^{(d-1)/2} for independent uniform unit vectors.
double cap_tail_bound(double a, int d);

struct CapTailEstimate {
  double frequency = 0.0;
  double std_error = 0.0;  // binomial
  long pairs = 0;
};

CapTailEstimate cap_tail_empirical(double a, int d, long pairs,
                                   std::uint64_t seed);

struct MeanSecondMoment {
  double mean = 0.0;
  double std_error = 0.0;  // across configs; includes per-config MC noise
  int configs = 0;
};

/// Grand mean of E[X^2] over freshly sampled sphere configurations; equal to
/// n in expectation because cross terms vanish under v_i -> -v_i symmetry.
MeanSecondMoment mean_second_moment_identity(int d, int n, int configs,
                                             long mc_samples,
                                             std::uint64_t seed);

struct FlatConfigResult {
  UnitEmbedding embedding;
  double exact = 0.0;     // exact E[X^2]
  double ratio = 0.0;     // exact / n^2
  double min_rho = 0.0;
  int attempts = 0;
  bool success = false;
};

/// Resamples sphere configurations until one satisfies min rho >= -0.9 and
/// E[X^2] <= 2n; when retries run out, the best candidate found is returned
/// with success = false.
FlatConfigResult find_flat_configuration(const ExtremalSearchConfig& cfg);

}  // namespace sdpcut

#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>

namespace silnr {

// Splittable counter-style RNG. Every (seed, path) pair names an independent
// substream, so parallel Monte-Carlo trials draw identical numbers no matter
// in which order the substreams are consumed. Gaussian variates come from a
// hand-rolled Box-Muller transform to keep realizations bit-identical across
// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  /// Derives the substream named by (seed, path...). Distinct paths give
  /// statistically independent streams.
  static Rng substream(std::uint64_t seed, std::initializer_list<std::uint64_t> path);

  std::uint64_t next_u64();
  double uniform();                  ///< uniform on [0, 1)
  double gaussian();                 ///< N(0, 1)
  std::complex<double> cgaussian();  ///< circularly symmetric CN(0, 1)

 private:
  void absorb(std::uint64_t word);

  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace silnr

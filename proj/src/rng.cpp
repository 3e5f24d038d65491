#include "silnr/rng.hpp"

#include <cmath>

namespace silnr {

namespace {

constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ull;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t seed) : state_(mix64(seed + kGamma)) {}

void Rng::absorb(std::uint64_t word) {
  state_ = mix64(state_ ^ mix64(word + kGamma));
}

Rng Rng::substream(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
  Rng r(seed);
  for (std::uint64_t w : path) r.absorb(w);
  return r;
}

std::uint64_t Rng::next_u64() {
  state_ += kGamma;
  return mix64(state_);
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // u1 in (0, 1] so the log is finite.
  double u1 = 1.0 - uniform();
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double theta = 2.0 * M_PI * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

std::complex<double> Rng::cgaussian() {
  return {gaussian() * M_SQRT1_2, gaussian() * M_SQRT1_2};
}

}  // namespace silnr

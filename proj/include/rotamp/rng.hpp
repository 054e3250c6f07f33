#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace rotamp {

using Rng = std::mt19937_64;

// Seed of the stream (label, index) under a master seed. Distinct labels give
// independent streams, so each random ingredient is reproducible on its own.
std::uint64_t derive_seed(std::uint64_t master, std::string_view label, std::uint64_t index = 0);
Rng make_rng(std::uint64_t master, std::string_view label, std::uint64_t index = 0);

// Standard normal draws from one labelled stream.
class NormalStream {
 public:
  explicit NormalStream(Rng rng) : rng_(std::move(rng)) {}
  NormalStream(std::uint64_t master, std::string_view label, std::uint64_t index = 0)
      : rng_(make_rng(master, label, index)) {}

  double operator()() { return dist_(rng_); }
  Rng& engine() { return rng_; }

 private:
  Rng rng_;
  std::normal_distribution<double> dist_{0.0, 1.0};
};

}  // namespace rotamp

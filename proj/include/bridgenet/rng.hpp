#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bridgenet/error.hpp"

namespace bridgenet {

// Deterministic random source. Every draw is derived from mt19937_64 with
// fixed arithmetic (no std::*_distribution, whose streams differ between
// standard libraries), so sequences are reproducible and the full engine
// state round-trips through checkpoints as text.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // uniform in [0, 1), 53-bit resolution
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // standard normal via Box-Muller; consumes exactly two engine draws and
  // keeps no cached state
  double normal() {
    double u = 1.0 - uniform();  // (0, 1], keeps log finite
    double v = uniform();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * 3.14159265358979323846 * v);
  }

  // unbiased integer in [0, bound)
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) fail(ErrorCode::invalid_argument, "Rng::below: bound must be positive");
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  // Fisher-Yates with explicit draws
  template <class T>
  void shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(values[i - 1], values[j]);
    }
  }

  std::string state() const {
    std::ostringstream out;
    out << engine_;
    return out.str();
  }

  void set_state(const std::string& text) {
    std::istringstream in(text);
    in >> engine_;
    if (in.fail()) fail(ErrorCode::parse, "Rng::set_state: malformed engine state");
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace bridgenet

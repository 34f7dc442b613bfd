#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace kinexam {

// mt19937_64 with hand-rolled draw helpers so streams are identical on every
// platform (the std distributions are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1).
  double next_double() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform in [0, n).
  std::size_t next_index(std::size_t n) {
    return static_cast<std::size_t>(next_double() * static_cast<double>(n));
  }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * next_double();
  }

  double normal(double mean = 0.0, double sigma = 1.0) {
    // Box-Muller; one value per call keeps the stream position predictable.
    double u1 = next_double();
    while (u1 <= 0.0) u1 = next_double();
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return mean + sigma * r * std::cos(6.283185307179586476925286766559 * u2);
  }

  // Derive an independent child stream (e.g. per subject or per tree).
  Rng fork(std::uint64_t salt) {
    return Rng(splitmix(engine_() ^ (salt * 0x9E3779B97F4A7C15ULL)));
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[next_index(i)]);
    }
  }

 private:
  static std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

  std::mt19937_64 engine_;
};

}  // namespace kinexam

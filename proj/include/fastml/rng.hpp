#ifndef FASTML_RNG_HPP
#define FASTML_RNG_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace fastml {

/// xoshiro256** seeded through splitmix64. Output depends only on the seed,
/// never on the platform's standard library, so seeded runs are portable.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) noexcept;

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next_u64() noexcept;
  /// Uniform in [0, 1) with 53 bits of resolution.
  double uniform() noexcept;
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  /// Unbiased uniform integer in [0, n); n must be positive.
  std::uint64_t uniform_index(std::uint64_t n) noexcept;
  /// Standard normal draw (Box-Muller, one value per call).
  double normal() noexcept;

 private:
  std::uint64_t seed_;
  std::array<std::uint64_t, 4> state_{};
};

/// Uniform Fisher-Yates permutation of 0..n-1.
std::vector<std::size_t> shuffled_indices(std::size_t n, Rng& rng);

}  // namespace fastml

#endif  // FASTML_RNG_HPP

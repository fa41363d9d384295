#ifndef SENTINF_SAMPLER_HPP
#define SENTINF_SAMPLER_HPP

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "sentinf/cascade.hpp"

namespace sentinf {

using Rng = std::mt19937_64;

/// Draws negative users with probability proportional to R_u^{3/4}, where
/// R_u counts the training cascades that infected u. Draws that hit a user
/// infected in the target cascade are rejected and redrawn.
class NegativeSampler {
 public:
  NegativeSampler() = default;

  /// Throws ConfigError when no user has a positive frequency.
  static NegativeSampler from_cascades(std::span<const Cascade* const> cascades,
                                       std::size_t users);
  static NegativeSampler from_cascades(const std::vector<Cascade>& cascades, std::size_t users);

  std::size_t users() const { return frequency_.size(); }
  std::uint32_t frequency(UserIndex u) const { return frequency_[u]; }
  double weight(UserIndex u) const { return weight_[u]; }
  double total_weight() const { return cumulative_.empty() ? 0.0 : cumulative_.back(); }

  /// P(u) renormalized over users not infected in `cascade`.
  std::vector<double> conditional_distribution(const Cascade& cascade) const;

  /// `count` draws (with replacement), none infected in `cascade`. Empty when
  /// every user with positive weight is infected in `cascade`.
  std::vector<UserIndex> sample(const Cascade& cascade, std::size_t count, Rng& rng) const;

 private:
  UserIndex draw(Rng& rng) const;

  std::vector<std::uint32_t> frequency_;
  std::vector<double> weight_;
  std::vector<double> cumulative_;
};

/// splitmix64 finalizer, used to derive independent stream seeds.
std::uint64_t mix_seed(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);
/// FNV-1a of a string, stable across platforms.
std::uint64_t stable_hash(std::string_view text);

}  // namespace sentinf

#endif  // SENTINF_SAMPLER_HPP

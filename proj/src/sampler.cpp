#include "sentinf/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <string_view>

namespace sentinf {

namespace {

constexpr int kRejectionTries = 64;

std::size_t pick(const std::vector<double>& cumulative, Rng& rng) {
  std::uniform_real_distribution<double> uniform(0.0, cumulative.back());
  const double x = uniform(rng);
  auto it = std::upper_bound(cumulative.begin(), cumulative.end(), x);
  auto idx = static_cast<std::size_t>(it - cumulative.begin());
  if (idx >= cumulative.size()) {
    // x rounded up to the total: fall back to the last positive-weight entry
    idx = cumulative.size() - 1;
    while (idx > 0 && cumulative[idx] == cumulative[idx - 1]) --idx;
  }
  return idx;
}

}  // namespace

NegativeSampler NegativeSampler::from_cascades(std::span<const Cascade* const> cascades,
                                               std::size_t users) {
  NegativeSampler s;
  s.frequency_.assign(users, 0);
  for (const Cascade* c : cascades) {
    for (const auto& e : c->events) {
      if (e.user >= users) throw ConfigError("negative sampler: user outside universe");
      ++s.frequency_[e.user];
    }
  }
  s.weight_.resize(users);
  s.cumulative_.resize(users);
  double acc = 0.0;
  for (std::size_t u = 0; u < users; ++u) {
    s.weight_[u] = std::pow(static_cast<double>(s.frequency_[u]), 0.75);
    acc += s.weight_[u];
    s.cumulative_[u] = acc;
  }
  if (!(acc > 0.0)) throw ConfigError("negative sampler: every infection frequency is zero");
  return s;
}

NegativeSampler NegativeSampler::from_cascades(const std::vector<Cascade>& cascades,
                                               std::size_t users) {
  std::vector<const Cascade*> ptrs;
  ptrs.reserve(cascades.size());
  for (const auto& c : cascades) ptrs.push_back(&c);
  return from_cascades(std::span<const Cascade* const>(ptrs), users);
}

UserIndex NegativeSampler::draw(Rng& rng) const {
  return static_cast<UserIndex>(pick(cumulative_, rng));
}

std::vector<double> NegativeSampler::conditional_distribution(const Cascade& cascade) const {
  std::vector<double> p = weight_;
  for (const auto& e : cascade.events) {
    if (e.user < p.size()) p[e.user] = 0.0;
  }
  double total = 0.0;
  for (double w : p) total += w;
  if (total > 0.0) {
    for (double& w : p) w /= total;
  }
  return p;
}

std::vector<UserIndex> NegativeSampler::sample(const Cascade& cascade, std::size_t count,
                                               Rng& rng) const {
  std::vector<UserIndex> out;
  if (count == 0) return out;
  out.reserve(count);
  const auto infected = infected_users(cascade);
  auto is_infected = [&](UserIndex u) {
    return std::binary_search(infected.begin(), infected.end(), u);
  };

  std::vector<double> restricted;  // built lazily when rejection keeps failing
  while (out.size() < count) {
    if (restricted.empty()) {
      bool drawn = false;
      for (int attempt = 0; attempt < kRejectionTries; ++attempt) {
        const UserIndex u = draw(rng);
        if (!is_infected(u)) {
          out.push_back(u);
          drawn = true;
          break;
        }
      }
      if (drawn) continue;
      restricted.resize(weight_.size());
      double acc = 0.0;
      for (std::size_t u = 0; u < weight_.size(); ++u) {
        if (!is_infected(static_cast<UserIndex>(u))) acc += weight_[u];
        restricted[u] = acc;
      }
      if (!(acc > 0.0)) return {};
    }
    out.push_back(static_cast<UserIndex>(pick(restricted, rng)));
  }
  return out;
}

std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return mix_seed(mix_seed(mix_seed(seed) ^ a) ^ b);
}

std::uint64_t stable_hash(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace sentinf

#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "sentinf/sampler.hpp"

using namespace sentinf;
using fixtures::make_cascade;

namespace {

// User 0 appears in 16 cascades, user 1 in 1, user 2 never; users 3.. pad.
std::vector<Cascade> sixteen_to_one() {
  std::vector<Cascade> cs;
  for (int i = 0; i < 16; ++i) {
    cs.push_back(make_cascade("c" + std::to_string(i), {{0, 0.0}, {3, 1.0}}, 2.0));
  }
  cs.push_back(make_cascade("w", {{1, 0.0}, {4, 1.0}}, 2.0));
  return cs;
}

}  // namespace

TEST_CASE("frequency weights follow the three-quarter power") {
  const auto s = NegativeSampler::from_cascades(sixteen_to_one(), 6);
  CHECK(s.frequency(0) == 16);
  CHECK(s.frequency(1) == 1);
  CHECK(s.weight(0) == 8.0);
  CHECK(s.weight(1) == 1.0);
  CHECK(s.weight(2) == 0.0);
  CHECK(s.weight(5) == 0.0);
}

TEST_CASE("empirical 8:1 ratio over a million draws") {
  const auto s = NegativeSampler::from_cascades(sixteen_to_one(), 6);
  // target excludes users 3 and 4 so only 0 and 1 remain
  const auto target = make_cascade("t", {{3, 0.0}, {4, 1.0}}, 2.0);
  Rng rng(99);
  const auto draws = s.sample(target, 1'000'000, rng);
  std::size_t zeros = 0;
  std::size_t ones = 0;
  for (auto u : draws) {
    zeros += u == 0;
    ones += u == 1;
  }
  CHECK(zeros + ones == draws.size());
  const double ratio = static_cast<double>(zeros) / static_cast<double>(ones);
  CHECK(std::abs(ratio / 8.0 - 1.0) < 0.01);
}

TEST_CASE("zero-frequency users are never sampled") {
  const auto s = NegativeSampler::from_cascades(sixteen_to_one(), 6);
  Rng rng(1);
  for (auto u : s.sample(make_cascade("t", {{0, 0.0}, {1, 1.0}}, 2.0), 10000, rng)) {
    CHECK(u != 2);
    CHECK(u != 5);
  }
}

TEST_CASE("count zero and forced outcomes") {
  const auto s = NegativeSampler::from_cascades(sixteen_to_one(), 6);
  Rng rng(2);
  CHECK(s.sample(make_cascade("t", {{0, 0.0}, {1, 1.0}}, 2.0), 0, rng).empty());

  // every positive-weight user but user 1 is infected
  const auto target = make_cascade("t", {{0, 0.0}, {3, 1.0}, {4, 2.0}}, 3.0);
  const auto draws = s.sample(target, 7, rng);
  CHECK(draws == std::vector<UserIndex>(7, 1));
}

TEST_CASE("conditional distribution after exclusions") {
  Rng rng(7);
  std::vector<Cascade> cs;
  for (int i = 0; i < 60; ++i) cs.push_back(fixtures::random_cascade(12, 1, 2 + i % 5, rng, std::to_string(i)));
  const auto s = NegativeSampler::from_cascades(cs, 12);
  const auto target = make_cascade("t", {{0, 0.0}, {5, 1.0}, {7, 2.0}}, 3.0);
  const auto p = s.conditional_distribution(target);
  double total = 0.0;
  for (UserIndex u = 0; u < 12; ++u) {
    total += p[u];
    if (target.contains(u)) CHECK(p[u] == 0.0);
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

  std::vector<double> counts(12, 0.0);
  const std::size_t n = 1'000'000;
  for (auto u : s.sample(target, n, rng)) counts[u] += 1.0;
  double l1 = 0.0;
  for (UserIndex u = 0; u < 12; ++u) l1 += std::abs(counts[u] / n - p[u]);
  CHECK(l1 < 0.01);
}

TEST_CASE("empty frequencies are an error and saturated cascades get no negatives") {
  const std::vector<Cascade> none;
  CHECK_THROWS_AS(NegativeSampler::from_cascades(none, 3), ConfigError);
  const auto s = NegativeSampler::from_cascades(
      std::vector<Cascade>{make_cascade("a", {{0, 0.0}, {1, 1.0}}, 2.0)}, 3);
  Rng rng(3);
  CHECK(s.sample(make_cascade("b", {{1, 0.0}, {0, 1.0}}, 2.0), 3, rng).empty());
}

TEST_CASE("sampling is deterministic under a seed") {
  const auto s = NegativeSampler::from_cascades(sixteen_to_one(), 6);
  const auto target = make_cascade("t", {{3, 0.0}}, 1.0);
  Rng a(42);
  Rng b(42);
  CHECK(s.sample(target, 100, a) == s.sample(target, 100, b));
}

TEST_CASE("seed helpers") {
  CHECK(stable_hash("") == 0xcbf29ce484222325ULL);
  CHECK(stable_hash("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(derive_seed(1, 2, 3) == derive_seed(1, 2, 3));
  CHECK(derive_seed(1, 2, 3) != derive_seed(1, 3, 2));
  CHECK(derive_seed(1, 2) != derive_seed(2, 2));
}

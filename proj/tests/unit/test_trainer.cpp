#include <doctest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "sentinf/trainer.hpp"

using namespace sentinf;

namespace {

Dataset random_dataset(std::size_t users, std::size_t classes, std::size_t cascades,
                       std::uint64_t seed) {
  Rng rng(seed);
  Dataset d;
  d.users = users;
  d.classes = classes;
  for (std::size_t i = 0; i < cascades; ++i) {
    d.cascades.push_back(fixtures::random_cascade(users, classes, 2 + i % 5, rng,
                                                  "c" + std::to_string(i)));
  }
  return d;
}

double directional(const SparseRows& grad, const std::vector<double>& before,
                   const std::vector<double>& after, std::size_t width) {
  double s = 0.0;
  for (const auto& [row, g] : grad) {
    for (std::size_t d = 0; d < width; ++d) {
      s += g[d] * (after[row * width + d] - before[row * width + d]);
    }
  }
  return s;
}

}  // namespace

TEST_CASE("configuration validation") {
  TrainerConfig c;
  CHECK_NOTHROW(c.validate());
  auto bad = [](auto mutate) {
    TrainerConfig x;
    mutate(x);
    return x;
  };
  CHECK_THROWS_AS(bad([](auto& x) { x.batch_size = 0; }).validate(), ConfigError);
  CHECK_THROWS_AS(bad([](auto& x) { x.rho = 1.0; }).validate(), ConfigError);
  CHECK_THROWS_AS(bad([](auto& x) { x.epsilon = 0.0; }).validate(), ConfigError);
  CHECK_THROWS_AS(bad([](auto& x) { x.sigma = 0.0; }).validate(), ConfigError);
  CHECK_THROWS_AS(bad([](auto& x) { x.beta = 1.5; }).validate(), ConfigError);
  CHECK_THROWS_AS(bad([](auto& x) { x.max_backtracks = 0; }).validate(), ConfigError);
}

TEST_CASE("zero epochs return the initialization") {
  const auto d = random_dataset(10, 2, 20, 1);
  TrainerConfig c;
  c.max_epochs = 0;
  const auto init = ParameterStore::random(10, 2, 3, 77);
  const auto r = train(d, c, init);
  CHECK(r.params == init);
  REQUIRE(r.log.size() == 1);
  CHECK(r.log[0].epoch == 0);
}

TEST_CASE("random initialization range") {
  const auto p = ParameterStore::random(20, 2, 4, 5);
  CHECK(p.min_entry() >= 0.0);
  for (double x : p.values()) CHECK(x <= 0.1 / 4.0);
  CHECK(p == ParameterStore::random(20, 2, 4, 5));
}

TEST_CASE("every step keeps parameters non-negative and satisfies sufficient decrease") {
  const auto d = random_dataset(12, 2, 40, 3);
  TrainerConfig c;
  c.max_epochs = 5;
  c.tolerance = 0.0;
  LatentObjective objective(12, 2, 3);
  std::size_t steps = 0;
  std::size_t accepted = 0;
  const auto r = train(d, c, 3, [&](const StepRecord& s) {
    ++steps;
    CHECK(*std::min_element(s.theta_after->begin(), s.theta_after->end()) >= 0.0);
    if (!s.result.accepted) {
      CHECK(*s.theta_after == *s.theta_before);
      return;
    }
    ++accepted;
    const double before = batch_value(objective, *s.batch, *s.theta_before);
    const double after = batch_value(objective, *s.batch, *s.theta_after);
    const double dir = directional(*s.gradient, *s.theta_before, *s.theta_after, 3);
    CHECK(after - before <= c.sigma * dir);
  });
  CHECK(steps == 5 * 4);
  CHECK(accepted > 0);
  CHECK(r.log.size() == 6);
  CHECK(r.log.back().objective < r.log.front().objective);
}

TEST_CASE("without negatives a single cascade's objective never increases") {
  Rng rng(8);
  Dataset d;
  d.users = 6;
  d.classes = 1;
  d.cascades.push_back(fixtures::random_cascade(6, 1, 5, rng, "only"));
  TrainerConfig c;
  c.negatives = 0;
  c.max_epochs = 40;
  c.tolerance = 0.0;
  LatentObjective objective(6, 1, 2);
  double last = 0.0;
  bool first = true;
  train(d, c, 2, [&](const StepRecord& s) {
    const double v = batch_value(objective, *s.batch, *s.theta_after);
    if (!first) CHECK(v <= last);
    first = false;
    last = v;
  });
}

TEST_CASE("negatives are resampled every iteration") {
  const auto d = random_dataset(30, 1, 12, 4);
  TrainerConfig c;
  c.max_epochs = 100;
  c.tolerance = 0.0;
  c.batch_size = 12;
  std::vector<std::vector<UserIndex>> seen;
  train(d, c, 2, [&](const StepRecord& s) {
    // the first cascade of a shuffled batch varies, so key by cascade id
    for (std::size_t i = 0; i < s.batch->cascades.size(); ++i) {
      if (s.batch->cascades[i]->id == "c0") seen.push_back(s.batch->negatives[i]);
    }
  });
  REQUIRE(seen.size() == 100);
  CHECK(std::any_of(seen.begin(), seen.end(), [&](const auto& n) { return n != seen.front(); }));
}

TEST_CASE("fixed seed gives bit-identical runs") {
  const auto d = random_dataset(15, 2, 30, 9);
  TrainerConfig c;
  c.max_epochs = 4;
  const auto a = train(d, c, 3);
  const auto b = train(d, c, 3);
  CHECK(a.params == b.params);
  for (std::size_t i = 0; i < a.log.size(); ++i) CHECK(a.log[i].objective == b.log[i].objective);
  c.seed = 2;
  CHECK_FALSE(train(d, c, 3).params == a.params);
}

TEST_CASE("empty trainable set and shape mismatch are configuration errors") {
  Dataset d;
  d.users = 3;
  d.cascades.push_back(fixtures::make_cascade("a", {{0, 0.0}}, 1.0));
  CHECK_THROWS_AS(train(d, TrainerConfig{}, 2), ConfigError);

  const auto good = random_dataset(5, 1, 4, 2);
  CHECK_THROWS_AS(train(good, TrainerConfig{}, ParameterStore(5, 2, 2)), ConfigError);
}

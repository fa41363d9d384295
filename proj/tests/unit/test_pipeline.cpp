#include <doctest.h>

#include <sstream>

#include "fixtures.hpp"
#include "sentinf/pipeline.hpp"

using namespace sentinf;
using fixtures::make_cascade;

namespace {

Cascade chain(const std::string& id, std::vector<UserIndex> users) {
  Cascade c;
  c.id = id;
  double t = 0.0;
  for (auto u : users) c.events.push_back({u, t++});
  c.horizon = t;
  return c;
}

// Random cascades with a random earlier parent for every non-root record.
std::pair<std::vector<Cascade>, ParentMap> random_corpus(Rng& rng, std::size_t users,
                                                         std::size_t cascades) {
  std::vector<Cascade> cs;
  ParentMap parents;
  std::uniform_int_distribution<std::size_t> size(2, 12);
  for (std::size_t i = 0; i < cascades; ++i) {
    auto c = fixtures::random_cascade(users, 1, std::min(users, size(rng)), rng, "c" + std::to_string(i));
    for (std::size_t e = 1; e < c.size(); ++e) {
      std::uniform_int_distribution<std::size_t> pick(0, e - 1);
      parents[{c.id, c.events[e].user}] = c.events[pick(rng)].user;
    }
    cs.push_back(std::move(c));
  }
  return {cs, parents};
}

}  // namespace

TEST_CASE("lexicon parsing") {
  std::istringstream in("# emoticons\n:)\tpositive\n:(\tneg\n\n:D\tpos\n;_;\t1\nxD\t2\r\n");
  const auto lex = Lexicon::parse(in);
  CHECK(lex.size() == 5);
  CHECK(lex.entries().at(":)") == 0);
  CHECK(lex.entries().at(":(") == 1);
  CHECK(lex.entries().at("xD") == 2);
  CHECK(lex.longest_token() == 3);

  std::istringstream dup(":)\tpos\n:)\tneg\n");
  CHECK_THROWS_AS(Lexicon::parse(dup), FormatError);
  std::istringstream bad(":)\tmaybe\n");
  CHECK_THROWS_AS(Lexicon::parse(bad), FormatError);
  std::istringstream notab(":) pos\n");
  CHECK_THROWS_AS(Lexicon::parse(notab), FormatError);
}

TEST_CASE("sentiment assignment by majority") {
  Lexicon lex;
  lex.add(":)", 0);
  lex.add(":-)", 0);
  lex.add(":(", 1);
  lex.add(":((", 1);
  CHECK(assign_sentiment("great :) day :-)", lex) == SentimentClass{0});
  CHECK_FALSE(assign_sentiment("mixed :) and :(", lex).has_value());
  CHECK_FALSE(assign_sentiment("no emoticons here", lex).has_value());
  // longest match first: ":((" is one negative token, not ":(" plus "("
  CHECK(assign_sentiment(":(( :)", lex) == std::nullopt);
  CHECK(assign_sentiment(":(( :( :)", lex) == SentimentClass{1});
}

TEST_CASE("activeness counts infections and known retweets") {
  const std::vector<Cascade> cs{chain("a", {0, 1, 2}), chain("b", {1, 0})};
  const ParentMap parents{{{"a", 1}, 0}, {{"a", 2}, 0}, {{"b", 0}, 1}, {{"x", 5}, 1}};
  const auto act = compute_activeness(cs, parents);
  CHECK(act.at(0).infected == 2);
  CHECK(act.at(0).influenced == 2);
  CHECK(act.at(1).infected == 2);
  CHECK(act.at(1).influenced == 1);
  CHECK(act.at(2).total() == 1);

  const auto no_parents = compute_activeness(cs, {});
  CHECK(no_parents.at(0).influenced == 0);
}

TEST_CASE("a corpus already at the thresholds is a fixed point") {
  std::vector<Cascade> cs;
  for (int i = 0; i < 5; ++i) cs.push_back(chain("c" + std::to_string(i), {0, 1, 2, 3, 4, 5, 6, 7}));
  const auto r = onion_peel(cs, {});
  CHECK(r.cascades == cs);
  CHECK(r.passes == 1);
  CHECK(r.dropped_users == 0);
}

TEST_CASE("removing a low-activeness user can drop its cascade") {
  std::vector<Cascade> cs;
  for (int i = 0; i < 5; ++i) cs.push_back(chain("c" + std::to_string(i), {0, 1, 2, 3, 4, 5, 6, 7}));
  for (int i = 0; i < 3; ++i) cs.push_back(chain("y" + std::to_string(i), {0, 1, 2, 3, 4, 5, 6, 7, 8}));
  cs.push_back(chain("x", {0, 1, 2, 3, 4, 5, 6, 8}));
  // user 8 has activeness 4
  CHECK(compute_activeness(cs, {}).at(8).total() == 4);
  const auto r = onion_peel(cs, {});
  CHECK(r.cascades.size() == 8);
  CHECK(r.dropped_users == 1);
  CHECK(r.dropped_cascades == 1);
  CHECK(r.passes == 2);
  for (const auto& c : r.cascades) {
    CHECK(c.id != "x");
    CHECK_FALSE(c.contains(8));
  }
}

TEST_CASE("users retweeting a removed record are removed transitively") {
  // a <- b <- c inside one cascade; a is the only low-activeness user
  std::vector<Cascade> cs;
  ParentMap parents;
  for (int i = 0; i < 6; ++i) cs.push_back(chain("k" + std::to_string(i), {1, 2, 3}));
  cs.push_back(chain("t", {0, 1, 2, 3}));
  parents[{"t", 1}] = 0;
  parents[{"t", 2}] = 1;
  const auto r = onion_peel(cs, parents, {5, 1});
  bool found = false;
  for (const auto& c : r.cascades) {
    if (c.id != "t") continue;
    found = true;
    CHECK(c.events.size() == 1);
    CHECK(c.events[0].user == 3);
  }
  CHECK(found);
}

TEST_CASE("onion peeling is idempotent, monotone and meets both thresholds") {
  Rng rng(6);
  for (int rep = 0; rep < 20; ++rep) {
    auto [cs, parents] = random_corpus(rng, 25, 60);
    const PeelConfig config{4, 5};
    const auto once = onion_peel(cs, parents, config);
    const auto twice = onion_peel(once.cascades, once.parents, config);
    CHECK(twice.cascades == once.cascades);
    CHECK(twice.parents == once.parents);
    CHECK(twice.passes == 1);

    const auto act = compute_activeness(once.cascades, once.parents);
    for (const auto& c : once.cascades) {
      CHECK(c.size() >= config.min_cascade_size);
      for (const auto& e : c.events) CHECK(act.at(e.user).total() >= config.min_activeness);
      // every surviving record existed in the input cascade
      const auto& original = *std::find_if(cs.begin(), cs.end(), [&](const Cascade& x) { return x.id == c.id; });
      for (const auto& e : c.events) {
        CHECK(std::find(original.events.begin(), original.events.end(), e) != original.events.end());
      }
    }
  }
}

TEST_CASE("peeling everything away is legal") {
  const std::vector<Cascade> cs{chain("a", {0, 1})};
  const auto r = onion_peel(cs, {});
  CHECK(r.cascades.empty());
  CHECK(r.dropped_records == 2);
}

#include "sentinf/pipeline.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace sentinf {

Lexicon Lexicon::parse(std::istream& in) {
  Lexicon lex;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw FormatError("lexicon line " + std::to_string(lineno) + ": expected token<TAB>polarity");
    }
    std::string token = line.substr(0, tab);
    std::string polarity = line.substr(tab + 1);
    SentimentClass cls = 0;
    if (polarity == "positive" || polarity == "pos") {
      cls = 0;
    } else if (polarity == "negative" || polarity == "neg") {
      cls = 1;
    } else {
      try {
        std::size_t used = 0;
        const long v = std::stol(polarity, &used);
        if (used != polarity.size() || v < 0) throw std::invalid_argument("bad");
        cls = static_cast<SentimentClass>(v);
      } catch (const std::exception&) {
        throw FormatError("lexicon line " + std::to_string(lineno) + ": bad polarity '" +
                          polarity + "'");
      }
    }
    if (lex.entries_.count(token)) {
      throw FormatError("lexicon line " + std::to_string(lineno) + ": duplicate token");
    }
    lex.add(std::move(token), cls);
  }
  return lex;
}

void Lexicon::add(std::string token, SentimentClass polarity) {
  if (token.empty()) throw FormatError("lexicon: empty token");
  longest_ = std::max(longest_, token.size());
  entries_[std::move(token)] = polarity;
}

std::optional<SentimentClass> assign_sentiment(std::string_view text, const Lexicon& lexicon) {
  std::map<SentimentClass, std::size_t> votes;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t matched = 0;
    const std::size_t max_len = std::min(lexicon.longest_token(), text.size() - pos);
    for (std::size_t len = max_len; len > 0; --len) {
      auto it = lexicon.entries().find(std::string(text.substr(pos, len)));
      if (it != lexicon.entries().end()) {
        ++votes[it->second];
        matched = len;
        break;
      }
    }
    pos += matched ? matched : 1;
  }
  if (votes.empty()) return std::nullopt;
  std::size_t best = 0;
  std::optional<SentimentClass> winner;
  bool tie = false;
  for (const auto& [cls, n] : votes) {
    if (n > best) {
      best = n;
      winner = cls;
      tie = false;
    } else if (n == best) {
      tie = true;
    }
  }
  if (tie) return std::nullopt;
  return winner;
}

std::map<UserIndex, Activeness> compute_activeness(const std::vector<Cascade>& cascades,
                                                   const ParentMap& parents) {
  std::map<UserIndex, Activeness> out;
  for (const auto& c : cascades) {
    for (const auto& e : c.events) {
      ++out[e.user].infected;
      auto it = parents.find({c.id, e.user});
      if (it != parents.end() && it->second != e.user && c.contains(it->second)) {
        ++out[it->second].influenced;
      }
    }
  }
  return out;
}

PeelResult onion_peel(const std::vector<Cascade>& cascades, const ParentMap& parents,
                      const PeelConfig& config) {
  PeelResult result;
  result.cascades = cascades;
  std::set<UserIndex> input_users;
  std::size_t input_records = 0;
  for (const auto& c : cascades) {
    input_records += c.size();
    for (const auto& e : c.events) input_users.insert(e.user);
  }

  bool changed = true;
  while (changed) {
    changed = false;
    ++result.passes;
    const auto activeness = compute_activeness(result.cascades, parents);

    std::vector<Cascade> kept;
    for (auto& c : result.cascades) {
      std::set<UserIndex> removed;
      for (const auto& e : c.events) {
        if (activeness.at(e.user).total() < config.min_activeness) removed.insert(e.user);
      }
      // users retweeting a removed record go too, transitively
      bool grew = !removed.empty();
      while (grew) {
        grew = false;
        for (const auto& e : c.events) {
          if (removed.count(e.user)) continue;
          auto it = parents.find({c.id, e.user});
          if (it != parents.end() && removed.count(it->second)) {
            removed.insert(e.user);
            grew = true;
          }
        }
      }
      if (!removed.empty()) {
        changed = true;
        std::erase_if(c.events, [&](const Event& e) { return removed.count(e.user) != 0; });
      }
      if (c.size() < config.min_cascade_size) {
        changed = true;
        ++result.dropped_cascades;
        continue;
      }
      kept.push_back(std::move(c));
    }
    result.cascades = std::move(kept);
  }

  std::set<UserIndex> output_users;
  std::size_t output_records = 0;
  for (const auto& c : result.cascades) {
    output_records += c.size();
    for (const auto& e : c.events) {
      output_users.insert(e.user);
      auto it = parents.find({c.id, e.user});
      if (it != parents.end()) result.parents.emplace(it->first, it->second);
    }
  }
  result.dropped_users = input_users.size() - output_users.size();
  result.dropped_records = input_records - output_records;
  return result;
}

}  // namespace sentinf

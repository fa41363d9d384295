#include "sentinf/cascade.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace sentinf {

bool Cascade::contains(UserIndex user) const {
  return std::any_of(events.begin(), events.end(),
                     [user](const Event& e) { return e.user == user; });
}

std::vector<UserIndex> infected_users(const Cascade& cascade) {
  std::vector<UserIndex> users;
  users.reserve(cascade.events.size());
  for (const auto& e : cascade.events) users.push_back(e.user);
  std::sort(users.begin(), users.end());
  return users;
}

std::size_t leading_ties(const Cascade& cascade) {
  if (cascade.events.empty()) return 0;
  const double first = cascade.events.front().time;
  std::size_t n = 1;
  while (n < cascade.events.size() && cascade.events[n].time == first) ++n;
  return n;
}

std::vector<std::pair<UserIndex, UserIndex>> AdjacencyMask::sorted_pairs() const {
  std::vector<std::pair<UserIndex, UserIndex>> out;
  out.reserve(pairs_.size());
  for (auto k : pairs_) {
    out.emplace_back(static_cast<UserIndex>(k >> 32), static_cast<UserIndex>(k & 0xffffffffu));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> validate_dataset(const Dataset& dataset) {
  std::vector<std::string> out;
  auto report = [&out](const Cascade& c, const std::string& what) {
    out.push_back("cascade '" + c.id + "': " + what);
  };

  std::set<std::string> ids;
  for (const auto& c : dataset.cascades) {
    if (!ids.insert(c.id).second) report(c, "duplicate cascade id");
    if (c.sentiment >= dataset.classes) {
      std::ostringstream msg;
      msg << "sentiment " << c.sentiment << " outside [0, " << dataset.classes << ")";
      report(c, msg.str());
    }
    if (!std::isfinite(c.horizon)) report(c, "horizon not finite");

    std::set<UserIndex> seen;
    for (std::size_t i = 0; i < c.events.size(); ++i) {
      const auto& e = c.events[i];
      if (e.user >= dataset.users) {
        std::ostringstream msg;
        msg << "user " << e.user << " outside [0, " << dataset.users << ")";
        report(c, msg.str());
      }
      if (!std::isfinite(e.time) || e.time < 0.0) {
        report(c, "event time negative or not finite");
      }
      if (i > 0 && e.time < c.events[i - 1].time) {
        report(c, "events not sorted by time");
      }
      if (!seen.insert(e.user).second) {
        std::ostringstream msg;
        msg << "user repeated (" << e.user << ")";
        report(c, msg.str());
      }
    }
    if (!c.events.empty() && !(c.horizon > c.last_time())) {
      report(c, "horizon not strictly after last event");
    }
  }

  for (const auto& [key, parent] : dataset.parents) {
    if (parent >= dataset.users || key.second >= dataset.users) {
      out.push_back("parent entry for cascade '" + key.first + "': user outside universe");
    }
  }
  if (dataset.adjacency) {
    for (const auto& [src, dst] : dataset.adjacency->sorted_pairs()) {
      if (src >= dataset.users || dst >= dataset.users) {
        out.push_back("adjacency pair outside user universe");
        break;
      }
    }
  }
  return out;
}

std::vector<const Cascade*> trainable_cascades(const std::vector<Cascade>& cascades) {
  std::vector<const Cascade*> out;
  for (const auto& c : cascades) {
    if (c.size() >= 2) out.push_back(&c);
  }
  return out;
}

std::size_t infer_user_count(const std::vector<Cascade>& cascades) {
  std::size_t m = 0;
  for (const auto& c : cascades) {
    for (const auto& e : c.events) m = std::max<std::size_t>(m, std::size_t{e.user} + 1);
  }
  return m;
}

std::size_t infer_class_count(const std::vector<Cascade>& cascades) {
  std::size_t k = 1;
  for (const auto& c : cascades) k = std::max<std::size_t>(k, std::size_t{c.sentiment} + 1);
  return k;
}

}  // namespace sentinf

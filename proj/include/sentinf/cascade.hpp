#ifndef SENTINF_CASCADE_HPP
#define SENTINF_CASCADE_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace sentinf {

/// Dense index into the user universe [0, M).
using UserIndex = std::uint32_t;

/// Sentiment class of a cascade in [0, K). One class per cascade.
using SentimentClass = std::uint32_t;

/// Bad configuration or unsatisfiable precondition supplied by the caller.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition of a model operation was violated.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Malformed input file.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Event {
  UserIndex user = 0;
  double time = 0.0;

  bool operator==(const Event&) const = default;
};

/// One observed infection cascade. Events are ordered by time and the
/// observation horizon lies strictly after the last event.
struct Cascade {
  std::string id;
  SentimentClass sentiment = 0;
  std::vector<Event> events;
  double horizon = 0.0;

  std::size_t size() const { return events.size(); }
  double last_time() const { return events.empty() ? 0.0 : events.back().time; }
  bool contains(UserIndex user) const;

  bool operator==(const Cascade&) const = default;
};

/// Users infected in `cascade`, sorted ascending.
std::vector<UserIndex> infected_users(const Cascade& cascade);

/// Number of leading events that share the first timestamp. Those events have
/// no strictly earlier influencer and are conditioned on, like the first.
std::size_t leading_ties(const Cascade& cascade);

/// Directed pairs (src, dst) along which influence is allowed.
class AdjacencyMask {
 public:
  void allow(UserIndex src, UserIndex dst) { pairs_.insert(key(src, dst)); }
  bool allows(UserIndex src, UserIndex dst) const { return pairs_.count(key(src, dst)) != 0; }
  std::size_t size() const { return pairs_.size(); }
  std::vector<std::pair<UserIndex, UserIndex>> sorted_pairs() const;

  bool operator==(const AdjacencyMask&) const = default;

 private:
  static std::uint64_t key(UserIndex src, UserIndex dst) {
    return (static_cast<std::uint64_t>(src) << 32) | dst;
  }
  std::unordered_set<std::uint64_t> pairs_;
};

/// Ground-truth parent per (cascade id, user).
using ParentMap = std::map<std::pair<std::string, UserIndex>, UserIndex>;

struct Dataset {
  std::vector<Cascade> cascades;
  std::size_t users = 0;
  std::size_t classes = 1;
  std::optional<AdjacencyMask> adjacency;
  ParentMap parents;

  bool operator==(const Dataset&) const = default;
};

/// Human-readable descriptions of every broken invariant, empty when the
/// dataset is well formed.
std::vector<std::string> validate_dataset(const Dataset& dataset);

/// Cascades that contribute to the likelihood (at least two events).
std::vector<const Cascade*> trainable_cascades(const std::vector<Cascade>& cascades);

/// Smallest M and K that cover every index referenced by `cascades`.
std::size_t infer_user_count(const std::vector<Cascade>& cascades);
std::size_t infer_class_count(const std::vector<Cascade>& cascades);

}  // namespace sentinf

#endif  // SENTINF_CASCADE_HPP

#ifndef SENTINF_PIPELINE_HPP
#define SENTINF_PIPELINE_HPP

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sentinf/cascade.hpp"

namespace sentinf {

/// Emoticon token -> sentiment class.
class Lexicon {
 public:
  /// Lines of "token<TAB>polarity"; polarity is a class index or one of
  /// positive/pos (0) and negative/neg (1). Blank lines and '#' comments are
  /// skipped. Throws FormatError on duplicates or bad lines.
  static Lexicon parse(std::istream& in);

  void add(std::string token, SentimentClass polarity);
  std::size_t size() const { return entries_.size(); }
  const std::map<std::string, SentimentClass>& entries() const { return entries_; }
  std::size_t longest_token() const { return longest_; }

 private:
  std::map<std::string, SentimentClass> entries_;
  std::size_t longest_ = 0;
};

/// Majority class of the emoticons found in `text` (longest match first);
/// empty when nothing matches or the top classes tie.
std::optional<SentimentClass> assign_sentiment(std::string_view text, const Lexicon& lexicon);

struct Activeness {
  std::size_t infected = 0;     // records of the user (A_in)
  std::size_t influenced = 0;   // records whose known parent is the user (A_out)
  std::size_t total() const { return infected + influenced; }
};

/// Activeness of every user over the given records. Without parent data
/// A_out is 0 and only infections count.
std::map<UserIndex, Activeness> compute_activeness(const std::vector<Cascade>& cascades,
                                                   const ParentMap& parents);

struct PeelConfig {
  std::size_t min_activeness = 5;
  std::size_t min_cascade_size = 8;
};

struct PeelResult {
  std::vector<Cascade> cascades;
  ParentMap parents;  // restricted to surviving records
  std::size_t passes = 0;
  std::size_t dropped_users = 0;
  std::size_t dropped_cascades = 0;
  std::size_t dropped_records = 0;
};

/// Repeats, until nothing changes: drop records of users below the
/// activeness threshold, then records whose parent record was dropped in the
/// same pass (transitively), then cascades below the size threshold.
PeelResult onion_peel(const std::vector<Cascade>& cascades, const ParentMap& parents,
                      const PeelConfig& config = {});

}  // namespace sentinf

#endif  // SENTINF_PIPELINE_HPP

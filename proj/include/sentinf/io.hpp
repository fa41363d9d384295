#ifndef SENTINF_IO_HPP
#define SENTINF_IO_HPP

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "sentinf/baselines.hpp"
#include "sentinf/cascade.hpp"
#include "sentinf/parameters.hpp"

namespace sentinf {

// File formats. All line-oriented files are JSON lines; blank lines are
// ignored and parse errors report the 1-based line number.
//
//   cascades    {"id": str, "sentiment": int, "t_end": num, "events": [[user, time], ...]}
//               ("sentiment" may be omitted and then reads as 0)
//   parents     {"id": str, "user": int, "parent": int}
//   adjacency   {"src": int, "dst": int}
//   rates       {"src": int, "dst": int, "rate": num}
//   texts       {"id": str, "text": str}
//   checkpoint  one JSON object, see write_checkpoint

std::vector<Cascade> read_cascades(std::istream& in);
void write_cascades(std::ostream& out, const std::vector<Cascade>& cascades);

ParentMap read_parents(std::istream& in);
void write_parents(std::ostream& out, const ParentMap& parents);

AdjacencyMask read_adjacency(std::istream& in);
void write_adjacency(std::ostream& out, const AdjacencyMask& mask);

PairwiseRates read_rates(std::istream& in);
void write_rates(std::ostream& out, const PairwiseRates& rates);

/// Message texts {"id": str, "text": str}, keyed by cascade id.
std::map<std::string, std::string> read_texts(std::istream& in);

inline constexpr int kCheckpointVersion = 1;

/// {"format": "sentinf-params", "version": 1, "M": .., "K": .., "D": ..,
///  "influence": [M*K*D values], "susceptibility": [M*K*D values]}
/// Values are laid out user-major, then class, then dimension.
ParameterStore read_checkpoint(std::istream& in);
void write_checkpoint(std::ostream& out, const ParameterStore& params);

/// Opens a file or throws ConfigError naming the path.
std::ifstream open_input(const std::filesystem::path& path);
std::ofstream open_output(const std::filesystem::path& path);

struct DatasetPaths {
  std::filesystem::path cascades;
  std::optional<std::filesystem::path> parents;
  std::optional<std::filesystem::path> adjacency;
};

/// Loads a dataset. M and K are inferred from the cascades unless given;
/// an explicit value smaller than what the data references is a ConfigError.
/// Throws FormatError if the loaded dataset violates any invariant.
Dataset load_dataset(const DatasetPaths& paths, std::optional<std::size_t> users = std::nullopt,
                     std::optional<std::size_t> classes = std::nullopt);

/// Short multi-line description: counts, size distribution, class balance.
std::string summarize_dataset(const Dataset& dataset);

}  // namespace sentinf

#endif  // SENTINF_IO_HPP

#include "sentinf/io.hpp"

#include <algorithm>
#include <cctype>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace sentinf {

using nlohmann::json;

namespace {

[[noreturn]] void fail(std::string_view what, std::size_t line, const std::string& detail) {
  throw FormatError(std::string(what) + " line " + std::to_string(line) + ": " + detail);
}

// Calls fn(json, line) for every non-blank line; converts JSON errors to
// FormatError with the line number.
template <typename Fn>
void for_each_record(std::istream& in, std::string_view what, Fn&& fn) {
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c); })) {
      continue;
    }
    try {
      const json j = json::parse(text);
      if (!j.is_object()) fail(what, line, "expected a JSON object");
      fn(j, line);
    } catch (const json::exception& e) {
      fail(what, line, e.what());
    }
  }
}

UserIndex user_field(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number_unsigned() || v.get<std::uint64_t>() > UINT32_MAX) {
    throw FormatError(std::string("field '") + key + "' must be a non-negative 32-bit integer");
  }
  return v.get<UserIndex>();
}

double number_field(const json& v, const char* key) {
  if (!v.is_number()) throw FormatError(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

template <typename Fn>
void with_line(std::string_view what, std::size_t line, Fn&& fn) {
  try {
    fn();
  } catch (const FormatError& e) {
    if (std::string_view(e.what()).starts_with(what)) throw;
    fail(what, line, e.what());
  }
}

}  // namespace

std::vector<Cascade> read_cascades(std::istream& in) {
  std::vector<Cascade> out;
  for_each_record(in, "cascades", [&](const json& j, std::size_t line) {
    with_line("cascades", line, [&] {
      Cascade c;
      if (!j.at("id").is_string()) throw FormatError("field 'id' must be a string");
      c.id = j.at("id").get<std::string>();
      c.sentiment = j.contains("sentiment") ? user_field(j, "sentiment") : 0;
      c.horizon = number_field(j.at("t_end"), "t_end");
      const auto& events = j.at("events");
      if (!events.is_array()) throw FormatError("field 'events' must be an array");
      for (const auto& e : events) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned()) {
          throw FormatError("each event must be [user, time]");
        }
        c.events.push_back({e[0].get<UserIndex>(), number_field(e[1], "time")});
      }
      out.push_back(std::move(c));
    });
  });
  return out;
}

void write_cascades(std::ostream& out, const std::vector<Cascade>& cascades) {
  for (const auto& c : cascades) {
    json events = json::array();
    for (const auto& e : c.events) events.push_back({e.user, e.time});
    json j = {{"id", c.id}, {"sentiment", c.sentiment}, {"t_end", c.horizon}, {"events", events}};
    out << j.dump() << '\n';
  }
}

ParentMap read_parents(std::istream& in) {
  ParentMap out;
  for_each_record(in, "parents", [&](const json& j, std::size_t line) {
    with_line("parents", line, [&] {
      if (!j.at("id").is_string()) throw FormatError("field 'id' must be a string");
      auto key = std::make_pair(j.at("id").get<std::string>(), user_field(j, "user"));
      if (!out.emplace(std::move(key), user_field(j, "parent")).second) {
        throw FormatError("duplicate (id, user) entry");
      }
    });
  });
  return out;
}

void write_parents(std::ostream& out, const ParentMap& parents) {
  for (const auto& [key, parent] : parents) {
    out << json{{"id", key.first}, {"user", key.second}, {"parent", parent}}.dump() << '\n';
  }
}

AdjacencyMask read_adjacency(std::istream& in) {
  AdjacencyMask out;
  for_each_record(in, "adjacency", [&](const json& j, std::size_t line) {
    with_line("adjacency", line, [&] { out.allow(user_field(j, "src"), user_field(j, "dst")); });
  });
  return out;
}

void write_adjacency(std::ostream& out, const AdjacencyMask& mask) {
  for (const auto& [src, dst] : mask.sorted_pairs()) {
    out << json{{"src", src}, {"dst", dst}}.dump() << '\n';
  }
}

PairwiseRates read_rates(std::istream& in) {
  PairwiseRates out;
  for_each_record(in, "rates", [&](const json& j, std::size_t line) {
    with_line("rates", line, [&] {
      const double rate = number_field(j.at("rate"), "rate");
      if (!(rate >= 0.0 && rate <= 1.0)) throw FormatError("rate must lie in [0, 1]");
      out.set(user_field(j, "src"), user_field(j, "dst"), rate);
    });
  });
  return out;
}

void write_rates(std::ostream& out, const PairwiseRates& rates) {
  for (const auto& e : rates.entries()) {
    out << json{{"src", e.src}, {"dst", e.dst}, {"rate", e.rate}}.dump() << '\n';
  }
}

std::map<std::string, std::string> read_texts(std::istream& in) {
  std::map<std::string, std::string> out;
  for_each_record(in, "texts", [&](const json& j, std::size_t line) {
    with_line("texts", line, [&] {
      if (!j.at("id").is_string() || !j.at("text").is_string()) {
        throw FormatError("fields 'id' and 'text' must be strings");
      }
      if (!out.emplace(j.at("id").get<std::string>(), j.at("text").get<std::string>()).second) {
        throw FormatError("duplicate id");
      }
    });
  });
  return out;
}

ParameterStore read_checkpoint(std::istream& in) {
  json j;
  try {
    j = json::parse(in);
    if (j.at("format") != "sentinf-params") throw FormatError("checkpoint: unknown format");
    if (j.at("version") != kCheckpointVersion) {
      throw FormatError("checkpoint: unsupported version " + j.at("version").dump());
    }
    const auto m = j.at("M").get<std::size_t>();
    const auto k = j.at("K").get<std::size_t>();
    const auto d = j.at("D").get<std::size_t>();
    ParameterStore params(m, k, d);
    const auto influence = j.at("influence").get<std::vector<double>>();
    const auto susceptibility = j.at("susceptibility").get<std::vector<double>>();
    const std::size_t block = m * k * d;
    if (influence.size() != block || susceptibility.size() != block) {
      throw FormatError("checkpoint: expected " + std::to_string(block) +
                        " values per matrix block");
    }
    auto& v = params.values();
    std::copy(influence.begin(), influence.end(), v.begin());
    std::copy(susceptibility.begin(), susceptibility.end(), v.begin() + static_cast<long>(block));
    if (params.min_entry() < 0.0) throw FormatError("checkpoint: negative parameter");
    return params;
  } catch (const json::exception& e) {
    throw FormatError(std::string("checkpoint: ") + e.what());
  }
}

void write_checkpoint(std::ostream& out, const ParameterStore& params) {
  const auto& v = params.values();
  const auto block = static_cast<long>(params.users() * params.classes() * params.dim());
  json j = {{"format", "sentinf-params"},
            {"version", kCheckpointVersion},
            {"M", params.users()},
            {"K", params.classes()},
            {"D", params.dim()},
            {"influence", std::vector<double>(v.begin(), v.begin() + block)},
            {"susceptibility", std::vector<double>(v.begin() + block, v.end())}};
  out << j.dump() << '\n';
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path.string() + "' for reading");
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open '" + path.string() + "' for writing");
  return out;
}

Dataset load_dataset(const DatasetPaths& paths, std::optional<std::size_t> users,
                     std::optional<std::size_t> classes) {
  Dataset d;
  {
    auto in = open_input(paths.cascades);
    d.cascades = read_cascades(in);
  }
  if (paths.parents) {
    auto in = open_input(*paths.parents);
    d.parents = read_parents(in);
  }
  if (paths.adjacency) {
    auto in = open_input(*paths.adjacency);
    d.adjacency = read_adjacency(in);
  }

  const std::size_t m = infer_user_count(d.cascades);
  const std::size_t k = infer_class_count(d.cascades);
  if (users && *users < m) {
    throw ConfigError("--users " + std::to_string(*users) + " is smaller than the " +
                      std::to_string(m) + " users referenced by the data");
  }
  if (classes && *classes < k) {
    throw ConfigError("--classes " + std::to_string(*classes) + " is smaller than the " +
                      std::to_string(k) + " classes referenced by the data");
  }
  d.users = users.value_or(m);
  d.classes = classes.value_or(std::max<std::size_t>(k, 1));

  const auto problems = validate_dataset(d);
  if (!problems.empty()) {
    std::string msg = paths.cascades.string() + ": " + std::to_string(problems.size()) +
                      " invalid record(s); first: " + problems.front();
    throw FormatError(msg);
  }
  return d;
}

std::string summarize_dataset(const Dataset& d) {
  std::ostringstream os;
  std::size_t events = 0;
  std::size_t trainable = 0;
  std::size_t largest = 0;
  std::vector<std::size_t> per_class(d.classes, 0);
  for (const auto& c : d.cascades) {
    events += c.size();
    trainable += c.size() >= 2;
    largest = std::max(largest, c.size());
    if (c.sentiment < per_class.size()) ++per_class[c.sentiment];
  }
  os << "users " << d.users << ", classes " << d.classes << '\n';
  os << "cascades " << d.cascades.size() << " (" << trainable << " with >= 2 events), events "
     << events << '\n';
  if (!d.cascades.empty()) {
    os << "mean size " << std::fixed << std::setprecision(2)
       << static_cast<double>(events) / static_cast<double>(d.cascades.size()) << ", largest "
       << largest << '\n';
  }
  os << "per class:";
  for (std::size_t k = 0; k < per_class.size(); ++k) os << ' ' << k << '=' << per_class[k];
  os << '\n';
  if (d.adjacency) os << "adjacency pairs " << d.adjacency->size() << '\n';
  if (!d.parents.empty()) os << "parent records " << d.parents.size() << '\n';
  return os.str();
}

}  // namespace sentinf

// Copyright 2026 The mnlrank Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mnlrank/preflib.h"

#include <algorithm>
#include <bit>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "mnlrank/error.h"

namespace mnlrank {
namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::optional<int64_t> ParseInt(std::string_view s) {
  s = Trim(s);
  int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    return std::nullopt;
  }
  return value;
}

std::vector<std::string_view> Split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

struct RawEntry {
  int64_t count;
  std::vector<int64_t> labels;
  int line;
};

[[noreturn]] void Malformed(int line, const std::string& why) {
  throw Error(ErrorCode::kMalformedEntry,
              "line " + std::to_string(line) + ": " + why);
}

// Returns the entry on `line`, or nullopt for metadata lines.
std::optional<RawEntry> ParseEntryLine(std::string_view text, int line) {
  std::vector<std::string_view> fields;
  const auto colon = text.find(':');
  if (colon != std::string_view::npos) {
    if (!ParseInt(text.substr(0, colon))) return std::nullopt;
    fields.push_back(text.substr(0, colon));
    for (auto f : Split(text.substr(colon + 1), ',')) fields.push_back(f);
  } else {
    fields = Split(text, ',');
  }
  if (fields.size() < 3 || !ParseInt(fields[0])) return std::nullopt;

  const bool has_tie = text.find_first_of("{}") != std::string_view::npos;
  RawEntry entry{*ParseInt(fields[0]), {}, line};
  for (std::size_t f = 1; f < fields.size(); ++f) {
    const auto value = ParseInt(fields[f]);
    if (!value) {
      if (has_tie) Malformed(line, "ties are not supported");
      return std::nullopt;
    }
    entry.labels.push_back(*value);
  }
  if (has_tie) Malformed(line, "ties are not supported");
  return entry;
}

}  // namespace

int64_t PreferenceProfile::total_count() const {
  int64_t total = 0;
  for (const auto& e : entries) total += e.count;
  return total;
}

std::string PreferenceProfile::DisplayName(int item) const {
  if (item < static_cast<int>(names.size()) && !names[item].empty()) {
    return names[item];
  }
  return std::to_string(labels[item]);
}

PreferenceProfile ParsePreflib(std::string_view text) {
  std::vector<std::string_view> lines = Split(text, '\n');
  std::map<int64_t, std::string> names;
  std::vector<RawEntry> raw;

  std::size_t i = 0;
  int line_no = 0;
  auto next_content = [&]() -> std::optional<std::string_view> {
    while (i < lines.size()) {
      ++line_no;
      const std::string_view line = Trim(lines[i++]);
      if (line.empty()) continue;
      if (line.front() == '#') {
        constexpr std::string_view kAltName = "# ALTERNATIVE NAME ";
        if (line.starts_with(kAltName)) {
          const auto rest = line.substr(kAltName.size());
          const auto colon = rest.find(':');
          if (colon != std::string_view::npos) {
            if (auto id = ParseInt(rest.substr(0, colon))) {
              names[*id] = std::string(Trim(rest.substr(colon + 1)));
            }
          }
        }
        continue;
      }
      return line;
    }
    return std::nullopt;
  };

  std::optional<std::string_view> line = next_content();
  // Classic SOC: a bare candidate count, one "id,name" line per candidate,
  // then a "voters,sum,unique" totals line.
  if (line && line->find_first_of(",:") == std::string_view::npos) {
    if (const auto header = ParseInt(*line); header && *header > 0) {
      for (int64_t c = 0; c < *header; ++c) {
        line = next_content();
        if (!line) break;
        const auto comma = line->find(',');
        if (comma == std::string_view::npos) continue;
        if (auto id = ParseInt(line->substr(0, comma))) {
          names[*id] = std::string(Trim(line->substr(comma + 1)));
        }
      }
      next_content();  // totals
      line = next_content();
    }
  }
  for (; line; line = next_content()) {
    if (auto entry = ParseEntryLine(*line, line_no)) raw.push_back(std::move(*entry));
  }
  if (raw.empty()) throw Error(ErrorCode::kEmptyProfile, "no preference entries");

  std::vector<int64_t> universe = raw.front().labels;
  std::sort(universe.begin(), universe.end());
  for (const RawEntry& e : raw) {
    if (e.count < 1) Malformed(e.line, "count must be positive");
    std::vector<int64_t> sorted = e.labels;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      Malformed(e.line, "repeated item");
    }
    if (sorted != universe) Malformed(e.line, "order is not over the common item set");
  }

  PreferenceProfile profile;
  std::map<int64_t, int> index;
  for (int64_t label : universe) {
    index[label] = static_cast<int>(profile.labels.size());
    profile.labels.push_back(static_cast<int>(label));
    const auto it = names.find(label);
    profile.names.push_back(it == names.end() ? std::string() : it->second);
  }
  for (const RawEntry& e : raw) {
    ProfileEntry entry{e.count, {}};
    for (int64_t label : e.labels) entry.order.push_back(index[label]);
    profile.entries.push_back(std::move(entry));
  }
  return profile;
}

PreferenceProfile ReadPreflibFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParsePreflib(buffer.str());
}

std::string SerializePreflib(const PreferenceProfile& profile) {
  std::ostringstream out;
  for (int i = 0; i < profile.universe_size(); ++i) {
    if (i < static_cast<int>(profile.names.size()) && !profile.names[i].empty()) {
      out << "# ALTERNATIVE NAME " << profile.labels[i] << ": "
          << profile.names[i] << '\n';
    }
  }
  for (const ProfileEntry& e : profile.entries) {
    out << e.count;
    for (int item : e.order) out << ',' << profile.labels[item];
    out << '\n';
  }
  return out.str();
}

PreferenceProfile RestrictToFirstItems(const PreferenceProfile& profile, int n) {
  if (n > profile.universe_size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "profile has " + std::to_string(profile.universe_size()) +
                    " items, fewer than the requested " + std::to_string(n));
  }
  PreferenceProfile out;
  out.labels.assign(profile.labels.begin(), profile.labels.begin() + n);
  out.names.assign(profile.names.begin(),
                   profile.names.begin() +
                       std::min<std::size_t>(n, profile.names.size()));
  for (const ProfileEntry& e : profile.entries) {
    ProfileEntry kept{e.count, {}};
    for (int item : e.order) {
      if (item < n) kept.order.push_back(item);
    }
    out.entries.push_back(std::move(kept));
  }
  return out;
}

EmpiricalMarginals ComputeEmpiricalMarginals(const PreferenceProfile& profile,
                                             int max_subset_size) {
  const int u = profile.universe_size();
  if (u < 2) throw Error(ErrorCode::kInvalidArgument, "universe needs >= 2 items");
  if (u > 20) {
    throw Error(ErrorCode::kInvalidArgument,
                "empirical marginals are limited to 20 items");
  }
  EmpiricalMarginals marginals;
  marginals.universe_size = u;
  marginals.max_subset_size = std::min(max_subset_size, u);
  marginals.total_count = profile.total_count();

  const uint64_t full = (uint64_t{1} << u) - 1;
  for (uint64_t mask = 1; mask <= full; ++mask) {
    const int size = std::popcount(mask);
    if (size < 2 || size > marginals.max_subset_size) continue;
    std::vector<int64_t> counts(size, 0);
    for (const ProfileEntry& e : profile.entries) {
      for (int item : e.order) {
        if (mask & (uint64_t{1} << item)) {
          // Members are stored in increasing item order.
          const int slot = std::popcount(mask & ((uint64_t{1} << item) - 1));
          counts[slot] += e.count;
          break;
        }
      }
    }
    marginals.win_counts.emplace(mask, std::move(counts));
  }
  return marginals;
}

PairwiseCounts ComputePairwiseCounts(const PreferenceProfile& profile) {
  PairwiseCounts counts(profile.universe_size());
  for (const ProfileEntry& e : profile.entries) {
    for (std::size_t a = 0; a < e.order.size(); ++a) {
      for (std::size_t b = a + 1; b < e.order.size(); ++b) {
        counts.Add(e.order[a], e.order[b], e.count);
      }
    }
  }
  return counts;
}

}  // namespace mnlrank

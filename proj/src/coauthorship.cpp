// Copyright 2026 The pteams Authors
//
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

#include "pteams/coauthorship.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace pteams {

std::optional<std::size_t> PairTimelineTable::find(AuthorPair p) const {
  auto it = std::lower_bound(pairs_.begin(), pairs_.end(), p);
  if (it == pairs_.end() || *it != p) return std::nullopt;
  return static_cast<std::size_t>(it - pairs_.begin());
}

void PairTimelineTable::append(AuthorPair p, std::span<const Year> years) {
  if (!pairs_.empty() && !(pairs_.back() < p)) throw InternalError("pair timelines appended out of order");
  pairs_.push_back(p);
  years_.insert(years_.end(), years.begin(), years.end());
  offsets_.push_back(years_.size());
}

PairTimelineTable build_pair_timelines(const PublicationTable& pubs, const CoauthorshipConfig& config) {
  struct Occurrence {
    std::uint64_t key;
    Year year;
    bool operator<(const Occurrence& o) const { return key != o.key ? key < o.key : year < o.year; }
  };
  auto eligible = [&](const Publication& p) {
    return p.authors.size() >= 2 && (!config.author_cap || p.authors.size() <= *config.author_cap);
  };

  std::vector<std::size_t> offsets(pubs.size() + 1, 0);
  for (std::size_t i = 0; i < pubs.size(); ++i) {
    const auto& p = pubs.pubs[i];
    const std::size_t a = p.authors.size();
    offsets[i + 1] = offsets[i] + (eligible(p) ? a * (a - 1) / 2 : 0);
  }
  std::vector<Occurrence> occ(offsets.back());
  parallel_for(pubs.size(), config.threads, [&](std::size_t i) {
    const auto& p = pubs.pubs[i];
    if (!eligible(p)) return;
    std::size_t k = offsets[i];
    for (std::size_t x = 0; x < p.authors.size(); ++x)
      for (std::size_t y = x + 1; y < p.authors.size(); ++y)
        occ[k++] = {AuthorPair::of(p.authors[x].author, p.authors[y].author).key(), p.year};
  });
  std::sort(occ.begin(), occ.end());

  PairTimelineTable table;
  std::vector<Year> years;
  for (std::size_t i = 0; i < occ.size();) {
    std::size_t j = i;
    years.clear();
    while (j < occ.size() && occ[j].key == occ[i].key) years.push_back(occ[j++].year);
    table.append(AuthorPair::from_key(occ[i].key), years);
    i = j;
  }
  return table;
}

void write_pair_timelines_csv(std::ostream& out, const PairTimelineTable& table, const Dictionary& authors) {
  out << "author_a,author_b,years\n";
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto& p = table.pair(i);
    out << authors.name(p.a) << ',' << authors.name(p.b) << ',';
    bool first = true;
    for (Year y : table.years(i)) {
      if (!first) out << ';';
      out << y;
      first = false;
    }
    out << '\n';
  }
}

PairTimelineTable read_pair_timelines_csv(std::istream& in, const Dictionary& authors) {
  PairTimelineTable table;
  std::string line;
  std::size_t line_no = 0;
  std::vector<Year> years;
  while (std::getline(in, line)) {
    if (++line_no == 1 || line.empty()) continue;
    std::istringstream row(line);
    std::string a, b, ys;
    if (!std::getline(row, a, ',') || !std::getline(row, b, ',') || !std::getline(row, ys))
      throw InputError("pair_timelines line " + std::to_string(line_no) + ": malformed row");
    auto ia = authors.find(a);
    auto ib = authors.find(b);
    if (!ia || !ib) throw InputError("pair_timelines line " + std::to_string(line_no) + ": unknown author");
    years.clear();
    std::istringstream ystream(ys);
    std::string y;
    while (std::getline(ystream, y, ';')) years.push_back(std::stoi(y));
    table.append(AuthorPair::of(*ia, *ib), years);
  }
  return table;
}

}  // namespace pteams

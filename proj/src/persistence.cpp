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

#include "pteams/persistence.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace pteams {

void PersistenceParams::validate() const {
  if (window_len < 1) throw std::invalid_argument("persistence window_len must be >= 1");
  if (min_pubs < 1) throw std::invalid_argument("persistence min_pubs must be >= 1");
}

std::vector<Period> persistent_periods(std::span<const Year> years, const PersistenceParams& params) {
  // Windows anchored at a publication year dominate all others.
  std::vector<Period> out;
  const std::size_t n = years.size();
  const auto need = static_cast<std::size_t>(params.min_pubs);
  std::size_t j = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0 && years[i] == years[i - 1]) continue;
    const Year last = years[i] + params.window_len - 1;
    if (j < i) j = i;
    while (j + 1 < n && years[j + 1] <= last) ++j;
    if (j - i + 1 < need) continue;
    Period mark{years[i], years[j]};
    if (!out.empty() && mark.start <= out.back().end + 1)
      out.back().end = std::max(out.back().end, mark.end);
    else
      out.push_back(mark);
  }
  return out;
}

PersistentNetwork build_persistent_network(const PairTimelineTable& timelines, const PersistenceParams& params,
                                           unsigned threads) {
  params.validate();
  std::vector<std::vector<Period>> periods(timelines.size());
  parallel_for(timelines.size(), threads,
               [&](std::size_t i) { periods[i] = persistent_periods(timelines.years(i), params); });
  PersistentNetwork net;
  for (std::size_t i = 0; i < timelines.size(); ++i)
    if (!periods[i].empty()) net.edges.push_back({timelines.pair(i), std::move(periods[i])});
  return net;
}

void write_persistent_edges_csv(std::ostream& out, const PersistentNetwork& net, const Dictionary& authors) {
  out << "author_a,author_b,periods\n";
  for (const auto& e : net.edges) {
    out << authors.name(e.pair.a) << ',' << authors.name(e.pair.b) << ',';
    for (std::size_t k = 0; k < e.periods.size(); ++k)
      out << (k ? ";" : "") << e.periods[k].start << '-' << e.periods[k].end;
    out << '\n';
  }
}

PersistentNetwork read_persistent_edges_csv(std::istream& in, const Dictionary& authors) {
  PersistentNetwork net;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    if (++line_no == 1 || line.empty()) continue;
    std::istringstream row(line);
    std::string a, b, ps;
    if (!std::getline(row, a, ',') || !std::getline(row, b, ',') || !std::getline(row, ps))
      throw InputError("persistent_edges line " + std::to_string(line_no) + ": malformed row");
    auto ia = authors.find(a);
    auto ib = authors.find(b);
    if (!ia || !ib) throw InputError("persistent_edges line " + std::to_string(line_no) + ": unknown author");
    PersistentEdge e{AuthorPair::of(*ia, *ib), {}};
    std::istringstream pstream(ps);
    std::string p;
    while (std::getline(pstream, p, ';')) {
      auto dash = p.find('-', 1);
      if (dash == std::string::npos)
        throw InputError("persistent_edges line " + std::to_string(line_no) + ": bad period '" + p + "'");
      e.periods.push_back({std::stoi(p.substr(0, dash)), std::stoi(p.substr(dash + 1))});
    }
    net.edges.push_back(std::move(e));
  }
  return net;
}

}  // namespace pteams

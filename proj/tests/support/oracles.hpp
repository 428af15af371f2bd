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


#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "pteams/cliques.hpp"
#include "pteams/common.hpp"
#include "pteams/persistence.hpp"

namespace pteams::oracle {

// Literal reading: try every window start, mark [first, last] pub year of each
// qualifying window, then union.
inline std::vector<Period> window_union(const std::vector<Year>& years, int window_len, int min_pubs) {
  if (years.empty()) return {};
  const Year lo = *std::min_element(years.begin(), years.end());
  const Year hi = *std::max_element(years.begin(), years.end());
  std::set<Year> marked;
  for (Year t = lo - window_len + 1; t <= hi; ++t) {
    std::vector<Year> in;
    for (Year y : years)
      if (y >= t && y <= t + window_len - 1) in.push_back(y);
    if (static_cast<int>(in.size()) < min_pubs) continue;
    auto [a, b] = std::minmax_element(in.begin(), in.end());
    for (Year y = *a; y <= *b; ++y) marked.insert(y);
  }
  std::vector<Period> out;
  for (Year y : marked) {
    if (!out.empty() && out.back().end + 1 == y)
      out.back().end = y;
    else
      out.push_back({y, y});
  }
  return out;
}

inline std::vector<Year> random_years(std::mt19937_64& rng, int max_count = 12, int max_span = 15) {
  const int n = std::uniform_int_distribution<int>(0, max_count)(rng);
  const int span = std::uniform_int_distribution<int>(1, max_span)(rng);
  const int base = std::uniform_int_distribution<int>(1990, 2020)(rng);
  std::uniform_int_distribution<int> pick(0, span - 1);
  std::vector<Year> v;
  for (int i = 0; i < n; ++i) v.push_back(base + pick(rng));
  std::sort(v.begin(), v.end());
  return v;
}

// Random network over authors 0..n-1 and years 1..years.
inline PersistentNetwork random_network(std::mt19937_64& rng, int max_authors = 10, int max_years = 8) {
  const int n = std::uniform_int_distribution<int>(0, max_authors)(rng);
  const int years = std::uniform_int_distribution<int>(1, max_years)(rng);
  const double density = std::uniform_real_distribution<double>(0.2, 0.95)(rng);
  std::bernoulli_distribution has_edge(density), bit(0.7);
  PersistentNetwork net;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      if (!has_edge(rng)) continue;
      std::vector<Period> ps;
      for (Year y = 1; y <= years; ++y) {
        if (!bit(rng)) continue;
        if (!ps.empty() && ps.back().end + 1 == y)
          ps.back().end = y;
        else
          ps.push_back({y, y});
      }
      if (!ps.empty()) net.edges.push_back({AuthorPair::of(static_cast<AuthorId>(a), static_cast<AuthorId>(b)), ps});
    }
  return net;
}

inline bool edge_covers(const PersistentNetwork& net, AuthorId a, AuthorId b, Period span) {
  auto p = AuthorPair::of(a, b);
  for (const auto& e : net.edges)
    if (e.pair == p)
      return std::any_of(e.periods.begin(), e.periods.end(), [&](const Period& q) { return q.contains(span); });
  return false;
}

inline bool fully_connected(const PersistentNetwork& net, const std::vector<AuthorId>& m, Period span) {
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j)
      if (!edge_covers(net, m[i], m[j], span)) return false;
  return true;
}

}  // namespace pteams::oracle

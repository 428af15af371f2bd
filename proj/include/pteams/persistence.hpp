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

#include <iosfwd>
#include <span>
#include <vector>

#include "pteams/coauthorship.hpp"
#include "pteams/common.hpp"

namespace pteams {

struct PersistenceParams {
  int window_len = 5;  // inclusive calendar years
  int min_pubs = 3;

  void validate() const;
};

/// Periods of persistent collaboration for one pair. Every window of
/// window_len years holding at least min_pubs publications marks the span
/// from its first to its last publication year; the marks are unioned and
/// overlapping or adjacent spans merged. `years` must be sorted.
std::vector<Period> persistent_periods(std::span<const Year> years, const PersistenceParams& params);

struct PersistentEdge {
  AuthorPair pair;
  std::vector<Period> periods;  // sorted, separated by at least one gap year
};

/// Persistent collaboration network, edges sorted by pair.
struct PersistentNetwork {
  std::vector<PersistentEdge> edges;
};

PersistentNetwork build_persistent_network(const PairTimelineTable& timelines, const PersistenceParams& params,
                                           unsigned threads = 0);

void write_persistent_edges_csv(std::ostream& out, const PersistentNetwork& net, const Dictionary& authors);
PersistentNetwork read_persistent_edges_csv(std::istream& in, const Dictionary& authors);

}  // namespace pteams

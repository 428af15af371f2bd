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
#include <vector>

#include "pteams/common.hpp"
#include "pteams/corpus.hpp"
#include "pteams/persistence.hpp"

namespace pteams {

/// Temporal clique parameters. Edges exist for every year of every persistent
/// period, so only delta = 1 and gamma = 1 are meaningful here.
struct CliqueParams {
  int delta = 1;
  int gamma = 1;
  std::size_t min_size = 2;
  unsigned threads = 0;

  void validate() const;
};

struct TemporalClique {
  std::vector<AuthorId> members;  // sorted
  Period span;

  auto operator<=>(const TemporalClique&) const = default;
};

/// All temporal maximal cliques of the network, sorted by members then span.
/// Output is independent of the thread count.
std::vector<TemporalClique> enumerate_maximal_cliques(const PersistentNetwork& net, const CliqueParams& params = {});

inline constexpr std::size_t kBruteForceMaxAuthors = 14;
inline constexpr int kBruteForceMaxYears = 10;

/// Reference enumeration: tests every (member subset, span) combination and
/// drops dominated entries. Throws std::invalid_argument beyond the size
/// guard.
std::vector<TemporalClique> brute_force_cliques(const PersistentNetwork& net, const CliqueParams& params = {});

void write_cliques_csv(std::ostream& out, const std::vector<TemporalClique>& cliques, const Dictionary& authors);
std::vector<TemporalClique> read_cliques_csv(std::istream& in, const Dictionary& authors);

}  // namespace pteams

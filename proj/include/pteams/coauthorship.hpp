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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "pteams/common.hpp"
#include "pteams/corpus.hpp"

namespace pteams {

/// Temporal co-authorship network in compressed form: pair i owns
/// years[offsets[i], offsets[i+1]), sorted ascending with multiplicity.
class PairTimelineTable {
 public:
  PairTimelineTable() : offsets_{0} {}

  [[nodiscard]] std::size_t size() const { return pairs_.size(); }
  [[nodiscard]] bool empty() const { return pairs_.empty(); }
  [[nodiscard]] const AuthorPair& pair(std::size_t i) const { return pairs_[i]; }
  [[nodiscard]] std::span<const Year> years(std::size_t i) const {
    return {years_.data() + offsets_[i], years_.data() + offsets_[i + 1]};
  }
  [[nodiscard]] std::size_t total_years() const { return years_.size(); }
  [[nodiscard]] std::optional<std::size_t> find(AuthorPair p) const;

  /// Appends a pair; pairs must arrive in ascending order.
  void append(AuthorPair p, std::span<const Year> years);

 private:
  std::vector<AuthorPair> pairs_;
  std::vector<std::size_t> offsets_;
  std::vector<Year> years_;
};

struct CoauthorshipConfig {
  /// Publications with more authors than this are skipped for pair
  /// generation. Unset means no cap.
  std::optional<std::size_t> author_cap;
  unsigned threads = 0;
};

PairTimelineTable build_pair_timelines(const PublicationTable& pubs, const CoauthorshipConfig& config = {});

void write_pair_timelines_csv(std::ostream& out, const PairTimelineTable& table, const Dictionary& authors);
PairTimelineTable read_pair_timelines_csv(std::istream& in, const Dictionary& authors);

}  // namespace pteams

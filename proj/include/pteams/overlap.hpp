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

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pteams/common.hpp"
#include "pteams/success.hpp"
#include "pteams/teams.hpp"

namespace pteams {

enum class OverlapKind : std::uint8_t { Core, Extension, OffshootSharedCore, OffshootNoSharedCore };
enum class Timing : std::uint8_t { Preceding, Simultaneous, Succeeding };
enum class Impulse : std::uint8_t { Persistence, Synchronous, Freshness, None };

std::string_view to_string(OverlapKind k);
std::string_view to_string(Timing t);
std::string_view to_string(Impulse i);
OverlapKind parse_overlap_kind(std::string_view s);
Timing parse_timing(std::string_view s);
Impulse parse_impulse(std::string_view s);

struct OverlapRelation {
  TeamId focal = 0;
  TeamId other = 0;
  OverlapKind kind = OverlapKind::Core;
  Timing timing = Timing::Simultaneous;
  Impulse impulse = Impulse::None;

  auto operator<=>(const OverlapRelation&) const = default;
};

/// A candidate pair whose duration spans contradict the member-set relation
/// (a core that does not enclose the focal span, or an extension that leaks
/// outside it). Only multi-interval teams can produce these.
struct OverlapAnomaly {
  TeamId focal = 0;
  TeamId other = 0;
  std::string reason;
};

/// Author -> teams containing the author, ascending.
class TeamMemberIndex {
 public:
  TeamMemberIndex(std::span<const Team> teams, std::size_t n_authors);
  [[nodiscard]] std::span<const TeamId> teams_of(AuthorId a) const {
    if (a + 1 >= offsets_.size()) return {};
    return {teams_.data() + offsets_[a], teams_.data() + offsets_[a + 1]};
  }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<TeamId> teams_;
};

/// |M_o & M_f| >= max(|M_o|, |M_f|) / 2
bool member_overlap_qualifies(std::span<const AuthorId> a, std::span<const AuthorId> b);

/// Ordered (focal, other) pairs whose member sets overlap by at least half of
/// the larger set and whose duration spans intersect. Sorted.
std::vector<std::pair<TeamId, TeamId>> find_overlap_candidates(std::span<const Team> teams,
                                                               const TeamMemberIndex& index,
                                                               unsigned threads = 0);

/// Timing of `other` relative to `focal`, on duration starts.
Timing relative_timing(const Team& focal, const Team& other);

/// Impulse for a (kind, timing) cell. Throws InternalError for the two
/// infeasible cells (core succeeding, extension preceding).
Impulse impulse_for(OverlapKind kind, Timing timing);

/// True iff some team inside M_f & M_o is a preceding core of the focal team.
bool shared_core_test(const Team& focal, const Team& offshoot, std::span<const Team> teams,
                      const TeamMemberIndex& index);

/// Checks the span containment implied by a subset relation; returns a
/// description when it fails.
std::optional<std::string> containment_anomaly(const Team& focal, const Team& other);

/// Classifies a candidate pair. Throws InternalError for equal member sets
/// and for pairs that land in an infeasible cell.
OverlapRelation classify_overlap(const Team& focal, const Team& other, std::span<const Team> teams,
                                 const TeamMemberIndex& index);

/// Success profile of one team over its associated publications.
struct TeamSuccess {
  std::size_t n_pubs = 0;
  std::array<std::size_t, 2> n_top{};           // by Tier
  std::array<std::optional<Year>, 2> first_top;  // year of first top-q publication
  std::array<std::optional<Year>, 2> second_top;

  [[nodiscard]] bool successful(Tier t) const { return n_top[static_cast<int>(t)] > 0; }
};

std::vector<TeamSuccess> team_success(std::span<const Team> teams, const PublicationTable& pubs,
                                      std::span<const SuccessTag> tags);

struct ImpulseCounts {
  std::size_t total = 0;
  std::array<std::size_t, 2> from_top{};  // by Tier of the source team
};

struct ImpulseSummary {
  TeamId team = 0;
  std::array<ImpulseCounts, 3> by_impulse{};  // Persistence, Synchronous, Freshness
  /// Persistence impulses whose source had a top-q publication before the
  /// focal team started, by Tier.
  std::array<std::size_t, 2> early_persistence{};
  double impulses_per_year = 0.0;

  [[nodiscard]] const ImpulseCounts& of(Impulse i) const { return by_impulse[static_cast<int>(i)]; }
  [[nodiscard]] std::size_t total() const {
    return by_impulse[0].total + by_impulse[1].total + by_impulse[2].total;
  }
  [[nodiscard]] bool closed() const { return total() == 0; }
};

/// `relations` must all have `focal.id` as focal team.
ImpulseSummary impulse_summary(const Team& focal, std::span<const OverlapRelation> relations,
                               std::span<const Team> teams, std::span<const TeamSuccess> success);

struct OverlapResult {
  std::size_t candidates = 0;
  std::vector<OverlapRelation> relations;  // sorted by (focal, other)
  std::vector<OverlapAnomaly> anomalies;
  std::vector<ImpulseSummary> summaries;   // one per team
};

OverlapResult analyze_overlaps(std::span<const Team> teams, std::size_t n_authors,
                               std::span<const TeamSuccess> success, unsigned threads = 0);

void write_overlaps_csv(std::ostream& out, std::span<const OverlapRelation> relations);
std::vector<OverlapRelation> read_overlaps_csv(std::istream& in);
void write_anomalies_csv(std::ostream& out, std::span<const OverlapAnomaly> anomalies);
void write_impulses_csv(std::ostream& out, std::span<const ImpulseSummary> summaries);
std::vector<ImpulseSummary> read_impulses_csv(std::istream& in);

}  // namespace pteams

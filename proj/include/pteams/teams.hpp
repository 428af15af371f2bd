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
#include <span>
#include <vector>

#include "pteams/cliques.hpp"
#include "pteams/common.hpp"
#include "pteams/corpus.hpp"
#include "pteams/success.hpp"

namespace pteams {

inline constexpr double kEarthRadiusKm = 6371.0;

/// Haversine distance in km. Throws std::invalid_argument for coordinates
/// outside [-90, 90] x [-180, 180].
double great_circle_km(GeoPoint a, GeoPoint b);

struct Team {
  TeamId id = 0;
  std::vector<AuthorId> members;  // sorted
  std::vector<Period> intervals;  // sorted, disjoint
  Period duration;                // first start .. last end
  std::vector<PubIndex> pubs;     // associated publications, ascending

  [[nodiscard]] int duration_years() const { return duration.length(); }
  [[nodiscard]] bool active_in(Year y) const;
};

/// Distinct affiliation counts of a team's members over its publications.
/// The per-member ratios are kept exact for binning.
struct CompositionMetrics {
  std::size_t members = 0;
  std::size_t orgs = 0;
  std::size_t cities = 0;
  std::size_t countries = 0;
  double mean_city_distance_km = 0.0;

  [[nodiscard]] double orgs_per_member() const { return ratio(orgs); }
  [[nodiscard]] double cities_per_member() const { return ratio(cities); }
  [[nodiscard]] double countries_per_member() const { return ratio(countries); }
  [[nodiscard]] double distance_per_member() const {
    return members == 0 ? 0.0 : mean_city_distance_km / static_cast<double>(members);
  }

 private:
  [[nodiscard]] double ratio(std::size_t n) const {
    return members == 0 ? 0.0 : static_cast<double>(n) / static_cast<double>(members);
  }
};

struct TeamTable {
  std::vector<Team> teams;
  std::vector<CompositionMetrics> metrics;  // parallel to teams; may be empty
};

/// Groups cliques by member set; one team per distinct set, ids assigned in
/// member order.
std::vector<Team> assemble_teams(const std::vector<TemporalClique>& cliques);

/// Minimum number of team members a publication must list:
/// max(2, ceil(|members| / 2)).
std::size_t association_quorum(std::size_t team_size);

/// Author id -> publications listing that author, ascending.
class AuthorPubIndex {
 public:
  explicit AuthorPubIndex(const PublicationTable& pubs);
  [[nodiscard]] std::span<const PubIndex> pubs_of(AuthorId a) const {
    return {pubs_.data() + offsets_[a], pubs_.data() + offsets_[a + 1]};
  }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<PubIndex> pubs_;
};

std::vector<PubIndex> associate_publications(const Team& team, const PublicationTable& pubs,
                                             const AuthorPubIndex& index);

CompositionMetrics composition_metrics(const Team& team, const PublicationTable& pubs);

/// Assembles teams, associates publications and computes metrics.
TeamTable build_teams(const std::vector<TemporalClique>& cliques, const PublicationTable& pubs,
                      unsigned threads = 0);

void write_teams_csv(std::ostream& out, const TeamTable& teams, const PublicationTable& pubs,
                     std::span<const SuccessTag> tags);
void write_team_pubs_csv(std::ostream& out, const TeamTable& teams, const PublicationTable& pubs);

/// Reads teams.csv and team_pubs.csv back; metrics are recomputed from pubs.
TeamTable read_teams(std::istream& teams_csv, std::istream& team_pubs_csv, const PublicationTable& pubs);

}  // namespace pteams

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
#include <string>
#include <vector>

#include "pteams/corpus.hpp"
#include "pteams/overlap.hpp"
#include "pteams/success.hpp"
#include "pteams/teams.hpp"

namespace pteams {

/// One output row. Ratios are carried as count / n so the value can always
/// be reproduced exactly; `value` is derived (percent or probability or mean
/// or difference, depending on the table).
struct SeriesRow {
  std::vector<std::string> keys;
  double value = 0.0;
  std::int64_t count = 0;
  std::int64_t n = 0;
  bool undefined = false;
};

struct SeriesTable {
  std::string figure_id;
  std::vector<std::string> key_names;
  std::vector<SeriesRow> rows;

  void add_ratio(std::vector<std::string> keys, std::int64_t count, std::int64_t n, double scale = 1.0);
};

void write_series_csv(std::ostream& out, const SeriesTable& table);

struct AnalyticsConfig {
  Year first_year = 2008;
  Year last_year = 2020;
  /// Teams whose duration touches the first or last `margin` years of the
  /// data window are left out of team-level tables; publication-level
  /// prevalence rows are restricted to the interior years.
  int margin = 4;
  /// Width of duration cohorts; 1 reports each duration separately.
  int cohort_width = 1;
  /// Bin width for impulses per year.
  double rate_bin = 0.25;
};

/// Teams kept for team-level tables under the margin rule.
std::vector<bool> analysis_mask(std::span<const Team> teams, const AnalyticsConfig& config);

/// Per-publication flag: associated with at least one team.
std::vector<bool> team_publication_mask(const PublicationTable& pubs, std::span<const Team> teams);

SeriesTable team_prevalence_by_year(const PublicationTable& pubs, std::span<const Team> teams,
                                    std::span<const SuccessTag> tags, const AnalyticsConfig& config);
SeriesTable team_prevalence_by_country(const PublicationTable& pubs, std::span<const Team> teams,
                                       const AnalyticsConfig& config);

SeriesTable success_prob_by_age(std::span<const Team> teams, const PublicationTable& pubs,
                                std::span<const SuccessTag> tags, Tier tier, const std::vector<bool>& mask,
                                int cohort_width = 1);
SeriesTable first_success_distribution(std::span<const Team> teams, std::span<const TeamSuccess> success, Tier tier,
                                       const std::vector<bool>& mask, int cohort_width = 1);
SeriesTable newly_successful_rate(std::span<const Team> teams, std::span<const TeamSuccess> success, Tier tier,
                                  const std::vector<bool>& mask);
SeriesTable success_by_composition(std::span<const Team> teams, std::span<const CompositionMetrics> metrics,
                                   std::span<const TeamSuccess> success, Tier tier, const std::vector<bool>& mask);

/// Returns {team-level table, publication-level table}.
std::pair<SeriesTable, SeriesTable> success_by_impulse_count(std::span<const Team> teams,
                                                             std::span<const ImpulseSummary> summaries,
                                                             std::span<const TeamSuccess> success, Tier tier,
                                                             const std::vector<bool>& mask);
SeriesTable success_by_impulse_rate(std::span<const Team> teams, std::span<const ImpulseSummary> summaries,
                                    std::span<const TeamSuccess> success, Tier tier, const std::vector<bool>& mask,
                                    double rate_bin = 0.25);
SeriesTable first_success_shift(std::span<const Team> teams, std::span<const ImpulseSummary> summaries,
                                std::span<const TeamSuccess> success, Tier tier, const std::vector<bool>& mask,
                                int cohort_width = 1);

/// Floor bins used for composition metrics.
double floor_to_quarter(std::size_t count, std::size_t members);
double floor_to_step(double value, double step);

struct AnalyticsInput {
  const PublicationTable& pubs;
  std::span<const SuccessTag> tags;
  std::span<const Team> teams;
  std::span<const CompositionMetrics> metrics;
  std::span<const TeamSuccess> success;
  std::span<const ImpulseSummary> summaries;
};

/// Every figure table, top-1% variants under the base name and top-10%
/// variants with a `_top10` suffix.
std::vector<SeriesTable> compute_figures(const AnalyticsInput& input, const AnalyticsConfig& config);

}  // namespace pteams

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

#include "pteams/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <tuple>

namespace pteams {

namespace {

struct Tally {
  std::int64_t count = 0;
  std::int64_t n = 0;
};

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

int cohort_of(int duration, int width) { return (duration - 1) / width * width + 1; }

std::string cohort_label(int lo, int width) {
  return width == 1 ? std::to_string(lo) : std::to_string(lo) + "-" + std::to_string(lo + width - 1);
}

std::int64_t team_top_pubs(const TeamSuccess& s, Tier tier) {
  return static_cast<std::int64_t>(s.n_top[static_cast<int>(tier)]);
}

std::optional<int> first_success_age(const Team& t, const TeamSuccess& s, Tier tier) {
  const auto& y = s.first_top[static_cast<int>(tier)];
  if (!y) return std::nullopt;
  return *y - t.duration.start + 1;
}

std::string suffixed(const char* id, Tier tier) {
  return tier == Tier::Top1 ? std::string(id) : std::string(id) + "_top10";
}

}  // namespace

void SeriesTable::add_ratio(std::vector<std::string> keys, std::int64_t count, std::int64_t n, double scale) {
  SeriesRow row{std::move(keys), 0.0, count, n, n == 0};
  if (n != 0) row.value = scale * static_cast<double>(count) / static_cast<double>(n);
  rows.push_back(std::move(row));
}

void write_series_csv(std::ostream& out, const SeriesTable& table) {
  for (const auto& k : table.key_names) out << k << ',';
  out << "value,count,N,undefined\n";
  for (const auto& r : table.rows) {
    for (const auto& k : r.keys) out << k << ',';
    out << (r.undefined ? std::string() : fmt("%.6f", r.value)) << ',' << r.count << ',' << r.n << ','
        << (r.undefined ? 1 : 0) << '\n';
  }
}

std::vector<bool> analysis_mask(std::span<const Team> teams, const AnalyticsConfig& config) {
  std::vector<bool> keep(teams.size());
  for (std::size_t i = 0; i < teams.size(); ++i)
    keep[i] = teams[i].duration.start >= config.first_year + config.margin &&
              teams[i].duration.end <= config.last_year - config.margin;
  return keep;
}

std::vector<bool> team_publication_mask(const PublicationTable& pubs, std::span<const Team> teams) {
  std::vector<bool> mask(pubs.size());
  for (const auto& t : teams)
    for (PubIndex p : t.pubs) mask[p] = true;
  return mask;
}

SeriesTable team_prevalence_by_year(const PublicationTable& pubs, std::span<const Team> teams,
                                    std::span<const SuccessTag> tags, const AnalyticsConfig& config) {
  const Year lo = config.first_year + config.margin;
  const Year hi = config.last_year - config.margin;
  const auto in_team = team_publication_mask(pubs, teams);
  std::map<Year, std::array<Tally, 3>> by_year;
  for (Year y = lo; y <= hi; ++y) by_year[y];
  for (std::size_t i = 0; i < pubs.size(); ++i) {
    const auto& p = pubs.pubs[i];
    if (p.authors.size() < 2 || p.year < lo || p.year > hi) continue;
    auto& cell = by_year[p.year];
    const bool member[3] = {true, tags[i].top10, tags[i].top1};
    for (int k = 0; k < 3; ++k) {
      if (!member[k]) continue;
      ++cell[k].n;
      cell[k].count += in_team[i] ? 1 : 0;
    }
  }
  SeriesTable t{"fig1a", {"year", "population"}, {}};
  constexpr const char* kPopulations[] = {"all", "top10", "top1"};
  for (const auto& [y, cell] : by_year)
    for (int k = 0; k < 3; ++k) t.add_ratio({std::to_string(y), kPopulations[k]}, cell[k].count, cell[k].n, 100.0);
  return t;
}

SeriesTable team_prevalence_by_country(const PublicationTable& pubs, std::span<const Team> teams,
                                       const AnalyticsConfig& config) {
  const Year lo = config.first_year + config.margin;
  const Year hi = config.last_year - config.margin;
  const auto in_team = team_publication_mask(pubs, teams);
  std::vector<Tally> by_country(pubs.countries.size());
  std::vector<std::int32_t> seen;
  for (std::size_t i = 0; i < pubs.size(); ++i) {
    const auto& p = pubs.pubs[i];
    if (p.authors.size() < 2 || p.year < lo || p.year > hi) continue;
    seen.clear();
    for (const auto& a : p.authors)
      for (const auto& af : a.affiliations)
        if (af.country != kNone) seen.push_back(af.country);
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    for (auto c : seen) {
      ++by_country[static_cast<std::size_t>(c)].n;
      by_country[static_cast<std::size_t>(c)].count += in_team[i] ? 1 : 0;
    }
  }
  SeriesTable t{"fig1b", {"country"}, {}};
  for (std::size_t c = 0; c < by_country.size(); ++c)
    if (by_country[c].n > 0)
      t.add_ratio({pubs.countries.name(static_cast<std::uint32_t>(c))}, by_country[c].count, by_country[c].n, 100.0);
  return t;
}

SeriesTable success_prob_by_age(std::span<const Team> teams, const PublicationTable& pubs,
                                std::span<const SuccessTag> tags, Tier tier, const std::vector<bool>& mask,
                                int cohort_width) {
  std::map<std::pair<int, int>, Tally> cells;
  std::map<int, int> cohort_max_age;
  for (std::size_t i = 0; i < teams.size(); ++i) {
    if (!mask[i]) continue;
    const Team& t = teams[i];
    const int cohort = cohort_of(t.duration_years(), cohort_width);
    auto& max_age = cohort_max_age[cohort];
    max_age = std::max(max_age, t.duration_years());
    for (PubIndex p : t.pubs) {
      auto& c = cells[{cohort, pubs.pubs[p].year - t.duration.start + 1}];
      ++c.n;
      c.count += is_top(tags[p], tier) ? 1 : 0;
    }
  }
  SeriesTable out{suffixed("fig2a", tier), {"duration", "age"}, {}};
  for (const auto& [cohort, max_age] : cohort_max_age)
    for (int a = 1; a <= max_age; ++a) {
      auto it = cells.find({cohort, a});
      const Tally c = it == cells.end() ? Tally{} : it->second;
      out.add_ratio({cohort_label(cohort, cohort_width), std::to_string(a)}, c.count, c.n);
    }
  return out;
}

SeriesTable first_success_distribution(std::span<const Team> teams, std::span<const TeamSuccess> success, Tier tier,
                                       const std::vector<bool>& mask, int cohort_width) {
  std::map<int, std::vector<std::int64_t>> hist;  // cohort -> counts by age - 1
  std::map<int, std::int64_t> successful;
  for (std::size_t i = 0; i < teams.size(); ++i) {
    if (!mask[i]) continue;
    auto age = first_success_age(teams[i], success[i], tier);
    if (!age) continue;
    const int cohort = cohort_of(teams[i].duration_years(), cohort_width);
    auto& h = hist[cohort];
    if (h.size() < static_cast<std::size_t>(cohort + cohort_width - 1))
      h.resize(static_cast<std::size_t>(cohort + cohort_width - 1));
    ++h[static_cast<std::size_t>(*age - 1)];
    ++successful[cohort];
  }
  SeriesTable out{suffixed("fig2b", tier), {"duration", "age"}, {}};
  for (const auto& [cohort, h] : hist)
    for (std::size_t a = 0; a < h.size(); ++a)
      out.add_ratio({cohort_label(cohort, cohort_width), std::to_string(a + 1)}, h[a], successful[cohort], 100.0);
  return out;
}

SeriesTable newly_successful_rate(std::span<const Team> teams, std::span<const TeamSuccess> success, Tier tier,
                                  const std::vector<bool>& mask) {
  int max_age = 0;
  for (std::size_t i = 0; i < teams.size(); ++i)
    if (mask[i]) max_age = std::max(max_age, teams[i].duration_years());
  std::vector<Tally> by_age(static_cast<std::size_t>(max_age));
  for (std::size_t i = 0; i < teams.size(); ++i) {
    if (!mask[i]) continue;
    const auto first = first_success_age(teams[i], success[i], tier);
    const int last_at_risk = first ? *first : teams[i].duration_years();
    for (int a = 1; a <= last_at_risk; ++a) ++by_age[static_cast<std::size_t>(a - 1)].n;
    if (first) ++by_age[static_cast<std::size_t>(*first - 1)].count;
  }
  SeriesTable out{suffixed("figs2add", tier), {"age"}, {}};
  for (std::size_t a = 0; a < by_age.size(); ++a)
    out.add_ratio({std::to_string(a + 1)}, by_age[a].count, by_age[a].n, 100.0);
  return out;
}

double floor_to_quarter(std::size_t count, std::size_t members) {
  if (members == 0) return 0.0;
  return static_cast<double>(4 * count / members) / 4.0;
}

double floor_to_step(double value, double step) { return std::floor(value / step + 1e-9) * step; }

SeriesTable success_by_composition(std::span<const Team> teams, std::span<const CompositionMetrics> metrics,
                                   std::span<const TeamSuccess> success, Tier tier, const std::vector<bool>& mask) {
  // Keys are (metric index, bin in hundredths) so rows sort numerically.
  std::map<std::pair<int, std::int64_t>, Tally> cells;
  for (std::size_t i = 0; i < teams.size(); ++i) {
    if (!mask[i]) continue;
    const auto& m = metrics[i];
    const double bins[4] = {floor_to_quarter(m.orgs, m.members), floor_to_quarter(m.cities, m.members),
                            floor_to_quarter(m.countries, m.members), floor_to_step(m.distance_per_member(), 10.0)};
    for (int k = 0; k < 4; ++k) {
      auto& c = cells[{k, std::llround(bins[k] * 100.0)}];
      c.n += static_cast<std::int64_t>(success[i].n_pubs);
      c.count += team_top_pubs(success[i], tier);
    }
  }
  constexpr const char* kMetrics[] = {"orgs_per_member", "cities_per_member", "countries_per_member",
                                      "distance_km_per_member"};
  SeriesTable out{suffixed("fig3", tier), {"metric", "bin"}, {}};
  for (const auto& [key, c] : cells) {
    const double bin = static_cast<double>(key.second) / 100.0;
    out.add_ratio({kMetrics[key.first], fmt(key.first == 3 ? "%.0f" : "%.2f", bin)}, c.count, c.n);
  }
  return out;
}

std::pair<SeriesTable, SeriesTable> success_by_impulse_count(std::span<const Team> teams,
                                                             std::span<const ImpulseSummary> summaries,
                                                             std::span<const TeamSuccess> success, Tier tier,
                                                             const std::vector<bool>& mask) {
  constexpr const char* kImpulses[] = {"persistence", "synchronous", "freshness"};
  constexpr const char* kStrata[] = {"any", "top10", "top1"};
  std::map<std::tuple<int, int, std::size_t>, std::pair<Tally, Tally>> cells;
  std::pair<Tally, Tally> closed;
  auto add = [&](std::pair<Tally, Tally>& c, std::size_t i) {
    ++c.first.n;
    c.first.count += success[i].successful(tier) ? 1 : 0;
    c.second.n += static_cast<std::int64_t>(success[i].n_pubs);
    c.second.count += team_top_pubs(success[i], tier);
  };
  for (std::size_t i = 0; i < teams.size(); ++i) {
    if (!mask[i]) continue;
    const auto& s = summaries[i];
    if (s.closed()) {
      add(closed, i);
      continue;
    }
    for (int k = 0; k < 3; ++k) {
      const auto& c = s.by_impulse[k];
      const std::size_t counts[3] = {c.total, c.from_top[0], c.from_top[1]};
      for (int st = 0; st < 3; ++st)
        if (counts[st] > 0) add(cells[{k, st, counts[st]}], i);
    }
  }
  SeriesTable team_level{suffixed("fig5a", tier), {"impulse", "source", "impulses"}, {}};
  SeriesTable pub_level{suffixed("fig5b", tier), {"impulse", "source", "impulses"}, {}};
  team_level.add_ratio({"closed", "none", "0"}, closed.first.count, closed.first.n);
  pub_level.add_ratio({"closed", "none", "0"}, closed.second.count, closed.second.n);
  for (const auto& [key, c] : cells) {
    const auto& [k, st, n] = key;
    team_level.add_ratio({kImpulses[k], kStrata[st], std::to_string(n)}, c.first.count, c.first.n);
    pub_level.add_ratio({kImpulses[k], kStrata[st], std::to_string(n)}, c.second.count, c.second.n);
  }
  return {std::move(team_level), std::move(pub_level)};
}

SeriesTable success_by_impulse_rate(std::span<const Team> teams, std::span<const ImpulseSummary> summaries,
                                    std::span<const TeamSuccess> success, Tier tier, const std::vector<bool>& mask,
                                    double rate_bin) {
  std::map<std::int64_t, std::pair<Tally, Tally>> bins;  // bin index -> (>=1, >=2)
  std::pair<Tally, Tally> closed;
  for (std::size_t i = 0; i < teams.size(); ++i) {
    if (!mask[i]) continue;
    auto& c = summaries[i].closed()
                  ? closed
                  : bins[static_cast<std::int64_t>(std::floor(summaries[i].impulses_per_year / rate_bin + 1e-9))];
    const auto n_top = team_top_pubs(success[i], tier);
    ++c.first.n;
    ++c.second.n;
    c.first.count += n_top >= 1 ? 1 : 0;
    c.second.count += n_top >= 2 ? 1 : 0;
  }
  SeriesTable out{suffixed("fig5c", tier), {"rate_bin", "measure"}, {}};
  out.add_ratio({"closed", "at_least_1"}, closed.first.count, closed.first.n);
  out.add_ratio({"closed", "at_least_2"}, closed.second.count, closed.second.n);
  for (const auto& [b, c] : bins) {
    const auto label = fmt("%.2f", static_cast<double>(b) * rate_bin);
    out.add_ratio({label, "at_least_1"}, c.first.count, c.first.n);
    out.add_ratio({label, "at_least_2"}, c.second.count, c.second.n);
  }
  return out;
}

SeriesTable first_success_shift(std::span<const Team> teams, std::span<const ImpulseSummary> summaries,
                                std::span<const TeamSuccess> success, Tier tier, const std::vector<bool>& mask,
                                int cohort_width) {
  constexpr const char* kConditions[] = {"persistence", "persistence_topq", "early_persistence_topq", "freshness",
                                         "freshness_topq"};
  const auto q = static_cast<int>(tier);
  std::map<int, std::array<Tally, 6>> cohorts;  // slot 0 is the closed baseline
  for (std::size_t i = 0; i < teams.size(); ++i) {
    if (!mask[i]) continue;
    const auto age = first_success_age(teams[i], success[i], tier);
    if (!age) continue;
    auto& row = cohorts[cohort_of(teams[i].duration_years(), cohort_width)];
    const auto& s = summaries[i];
    const auto& per = s.of(Impulse::Persistence);
    const auto& fresh = s.of(Impulse::Freshness);
    const bool present[6] = {s.closed(),          per.total > 0,   per.from_top[q] > 0, s.early_persistence[q] > 0,
                             fresh.total > 0, fresh.from_top[q] > 0};
    for (int k = 0; k < 6; ++k) {
      if (!present[k]) continue;
      ++row[k].n;
      row[k].count += *age;
    }
  }
  SeriesTable out{suffixed("fig5d", tier), {"duration", "condition"}, {}};
  for (const auto& [cohort, row] : cohorts) {
    const auto label = cohort_label(cohort, cohort_width);
    out.add_ratio({label, "closed_mean_age"}, row[0].count, row[0].n);
    const double base = row[0].n ? static_cast<double>(row[0].count) / static_cast<double>(row[0].n) : 0.0;
    for (int k = 1; k < 6; ++k) {
      if (row[k].n == 0) continue;
      SeriesRow r{{label, kConditions[k - 1]}, 0.0, row[k].count, row[k].n, row[0].n == 0};
      if (!r.undefined) r.value = base - static_cast<double>(row[k].count) / static_cast<double>(row[k].n);
      out.rows.push_back(std::move(r));
    }
  }
  return out;
}

std::vector<SeriesTable> compute_figures(const AnalyticsInput& in, const AnalyticsConfig& config) {
  const auto mask = analysis_mask(in.teams, config);
  std::vector<SeriesTable> out;
  out.push_back(team_prevalence_by_year(in.pubs, in.teams, in.tags, config));
  out.push_back(team_prevalence_by_country(in.pubs, in.teams, config));
  for (Tier tier : {Tier::Top1, Tier::Top10}) {
    out.push_back(success_prob_by_age(in.teams, in.pubs, in.tags, tier, mask, config.cohort_width));
    out.push_back(first_success_distribution(in.teams, in.success, tier, mask, config.cohort_width));
    out.push_back(newly_successful_rate(in.teams, in.success, tier, mask));
    out.push_back(success_by_composition(in.teams, in.metrics, in.success, tier, mask));
    auto [a, b] = success_by_impulse_count(in.teams, in.summaries, in.success, tier, mask);
    out.push_back(std::move(a));
    out.push_back(std::move(b));
    out.push_back(success_by_impulse_rate(in.teams, in.summaries, in.success, tier, mask, config.rate_bin));
    out.push_back(first_success_shift(in.teams, in.summaries, in.success, tier, mask, config.cohort_width));
  }
  return out;
}

}  // namespace pteams

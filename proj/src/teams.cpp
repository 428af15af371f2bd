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

#include "pteams/teams.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace pteams {

double great_circle_km(GeoPoint a, GeoPoint b) {
  for (const auto& p : {a, b})
    if (!(p.lat >= -90.0 && p.lat <= 90.0 && p.lon >= -180.0 && p.lon <= 180.0))
      throw std::invalid_argument("coordinates out of range");
  constexpr double kRad = std::numbers::pi / 180.0;
  const double dlat = (b.lat - a.lat) * kRad;
  const double dlon = (b.lon - a.lon) * kRad;
  const double h = std::sin(dlat / 2) * std::sin(dlat / 2) +
                   std::cos(a.lat * kRad) * std::cos(b.lat * kRad) * std::sin(dlon / 2) * std::sin(dlon / 2);
  return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(h)));
}

bool Team::active_in(Year y) const {
  return std::any_of(intervals.begin(), intervals.end(), [y](const Period& p) { return p.contains(y); });
}

std::vector<Team> assemble_teams(const std::vector<TemporalClique>& cliques) {
  std::vector<const TemporalClique*> sorted;
  sorted.reserve(cliques.size());
  for (const auto& c : cliques) sorted.push_back(&c);
  std::sort(sorted.begin(), sorted.end(), [](const auto* l, const auto* r) { return *l < *r; });

  std::vector<Team> teams;
  for (std::size_t i = 0; i < sorted.size();) {
    Team t;
    t.id = static_cast<TeamId>(teams.size());
    t.members = sorted[i]->members;
    std::size_t j = i;
    for (; j < sorted.size() && sorted[j]->members == t.members; ++j) {
      if (!t.intervals.empty() && sorted[j]->span.start <= t.intervals.back().end)
        throw InternalError("cliques with identical members have overlapping spans");
      t.intervals.push_back(sorted[j]->span);
    }
    t.duration = {t.intervals.front().start, t.intervals.back().end};
    teams.push_back(std::move(t));
    i = j;
  }
  return teams;
}

std::size_t association_quorum(std::size_t team_size) { return std::max<std::size_t>(2, (team_size + 1) / 2); }

AuthorPubIndex::AuthorPubIndex(const PublicationTable& pubs) {
  offsets_.assign(pubs.authors.size() + 1, 0);
  for (const auto& p : pubs.pubs)
    for (const auto& a : p.authors) ++offsets_[a.author + 1];
  for (std::size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];
  pubs_.resize(offsets_.back());
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t i = 0; i < pubs.size(); ++i)
    for (const auto& a : pubs.pubs[i].authors) pubs_[cursor[a.author]++] = static_cast<PubIndex>(i);
}

std::vector<PubIndex> associate_publications(const Team& team, const PublicationTable& pubs,
                                             const AuthorPubIndex& index) {
  std::vector<PubIndex> hits;
  for (AuthorId m : team.members)
    for (PubIndex p : index.pubs_of(m))
      if (team.active_in(pubs.pubs[p].year)) hits.push_back(p);
  std::sort(hits.begin(), hits.end());
  const std::size_t quorum = association_quorum(team.members.size());
  std::vector<PubIndex> out;
  for (std::size_t i = 0; i < hits.size();) {
    std::size_t j = i;
    while (j < hits.size() && hits[j] == hits[i]) ++j;
    if (j - i >= quorum) out.push_back(hits[i]);
    i = j;
  }
  return out;
}

CompositionMetrics composition_metrics(const Team& team, const PublicationTable& pubs) {
  std::vector<std::int32_t> orgs, cities, countries;
  for (PubIndex pi : team.pubs) {
    for (const auto& a : pubs.pubs[pi].authors) {
      if (!std::binary_search(team.members.begin(), team.members.end(), a.author)) continue;
      for (const auto& af : a.affiliations) {
        if (af.org != kNone) orgs.push_back(af.org);
        if (af.city != kNone) cities.push_back(af.city);
        if (af.country != kNone) countries.push_back(af.country);
      }
    }
  }
  for (auto* v : {&orgs, &cities, &countries}) {
    std::sort(v->begin(), v->end());
    v->erase(std::unique(v->begin(), v->end()), v->end());
  }
  CompositionMetrics m;
  m.members = team.members.size();
  m.orgs = orgs.size();
  m.cities = cities.size();
  m.countries = countries.size();
  std::vector<GeoPoint> located;
  for (auto c : cities)
    if (const auto& loc = pubs.city_location[static_cast<std::size_t>(c)]) located.push_back(*loc);
  if (located.size() >= 2) {
    double sum = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < located.size(); ++i)
      for (std::size_t j = i + 1; j < located.size(); ++j, ++pairs) sum += great_circle_km(located[i], located[j]);
    m.mean_city_distance_km = sum / static_cast<double>(pairs);
  }
  return m;
}

TeamTable build_teams(const std::vector<TemporalClique>& cliques, const PublicationTable& pubs, unsigned threads) {
  TeamTable table;
  table.teams = assemble_teams(cliques);
  table.metrics.resize(table.teams.size());
  const AuthorPubIndex index(pubs);
  parallel_for(table.teams.size(), threads, [&](std::size_t i) {
    auto& t = table.teams[i];
    t.pubs = associate_publications(t, pubs, index);
    table.metrics[i] = composition_metrics(t, pubs);
  });
  return table;
}

namespace {

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

void write_teams_csv(std::ostream& out, const TeamTable& table, const PublicationTable& pubs,
                     std::span<const SuccessTag> tags) {
  out << "team_id,members,intervals,duration_start,duration_end,n_pubs,n_top10,n_top1,orgs_pm,cities_pm,"
         "countries_pm,dist_pm\n";
  for (std::size_t i = 0; i < table.teams.size(); ++i) {
    const auto& t = table.teams[i];
    out << t.id << ',';
    for (std::size_t k = 0; k < t.members.size(); ++k) out << (k ? ";" : "") << pubs.author_name(t.members[k]);
    out << ',';
    for (std::size_t k = 0; k < t.intervals.size(); ++k)
      out << (k ? ";" : "") << t.intervals[k].start << '-' << t.intervals[k].end;
    std::size_t n10 = 0, n1 = 0;
    for (PubIndex p : t.pubs) {
      n10 += tags[p].top10 ? 1 : 0;
      n1 += tags[p].top1 ? 1 : 0;
    }
    out << ',' << t.duration.start << ',' << t.duration.end << ',' << t.pubs.size() << ',' << n10 << ',' << n1;
    const auto& m = table.metrics[i];
    out << ',' << fixed6(m.orgs_per_member()) << ',' << fixed6(m.cities_per_member()) << ','
        << fixed6(m.countries_per_member()) << ',' << fixed6(m.distance_per_member()) << '\n';
  }
}

void write_team_pubs_csv(std::ostream& out, const TeamTable& table, const PublicationTable& pubs) {
  out << "team_id,pub_id\n";
  for (const auto& t : table.teams)
    for (PubIndex p : t.pubs) out << t.id << ',' << pubs.pubs[p].pub_id << '\n';
}

TeamTable read_teams(std::istream& teams_csv, std::istream& team_pubs_csv, const PublicationTable& pubs) {
  TeamTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(teams_csv, line)) {
    if (++line_no == 1 || line.empty()) continue;
    std::istringstream row(line);
    std::string id, members, intervals;
    if (!std::getline(row, id, ',') || !std::getline(row, members, ',') || !std::getline(row, intervals, ','))
      throw InputError("teams line " + std::to_string(line_no) + ": malformed row");
    Team t;
    t.id = static_cast<TeamId>(std::stoul(id));
    if (t.id != table.teams.size()) throw InputError("teams line " + std::to_string(line_no) + ": ids not dense");
    std::istringstream ms(members);
    std::string m;
    while (std::getline(ms, m, ';')) {
      auto a = pubs.authors.find(m);
      if (!a) throw InputError("teams line " + std::to_string(line_no) + ": unknown author '" + m + "'");
      t.members.push_back(*a);
    }
    std::sort(t.members.begin(), t.members.end());
    std::istringstream is(intervals);
    std::string iv;
    while (std::getline(is, iv, ';')) {
      auto dash = iv.find('-', 1);
      if (dash == std::string::npos) throw InputError("teams line " + std::to_string(line_no) + ": bad interval");
      t.intervals.push_back({std::stoi(iv.substr(0, dash)), std::stoi(iv.substr(dash + 1))});
    }
    if (t.intervals.empty()) throw InputError("teams line " + std::to_string(line_no) + ": no intervals");
    t.duration = {t.intervals.front().start, t.intervals.back().end};
    table.teams.push_back(std::move(t));
  }
  line_no = 0;
  while (std::getline(team_pubs_csv, line)) {
    if (++line_no == 1 || line.empty()) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos) throw InputError("team_pubs line " + std::to_string(line_no) + ": malformed row");
    auto tid = std::stoul(line.substr(0, comma));
    auto pid = pubs.find(line.substr(comma + 1));
    if (tid >= table.teams.size() || !pid)
      throw InputError("team_pubs line " + std::to_string(line_no) + ": unknown team or publication");
    table.teams[tid].pubs.push_back(*pid);
  }
  for (auto& t : table.teams) std::sort(t.pubs.begin(), t.pubs.end());
  table.metrics.reserve(table.teams.size());
  for (const auto& t : table.teams) table.metrics.push_back(composition_metrics(t, pubs));
  return table;
}

}  // namespace pteams

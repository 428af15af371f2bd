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

#include "pteams/overlap.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>

namespace pteams {

namespace {

constexpr std::string_view kKindNames[] = {"core", "extension", "offshoot_shared_core", "offshoot_no_shared_core"};
constexpr std::string_view kTimingNames[] = {"preceding", "simultaneous", "succeeding"};
constexpr std::string_view kImpulseNames[] = {"persistence", "synchronous", "freshness", "none"};

template <class E, std::size_t N>
E parse_enum(std::string_view s, const std::string_view (&names)[N], const char* what) {
  for (std::size_t i = 0; i < N; ++i)
    if (names[i] == s) return static_cast<E>(i);
  throw InputError(std::string("unknown ") + what + " '" + std::string(s) + "'");
}

bool proper_subset(std::span<const AuthorId> sub, std::span<const AuthorId> super) {
  return sub.size() < super.size() && std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

std::size_t intersection_size(std::span<const AuthorId> a, std::span<const AuthorId> b) {
  std::size_t n = 0;
  for (auto i = a.begin(), j = b.begin(); i != a.end() && j != b.end();) {
    if (*i < *j) ++i;
    else if (*j < *i) ++j;
    else ++n, ++i, ++j;
  }
  return n;
}

std::string span_text(const Period& p) { return "[" + std::to_string(p.start) + "," + std::to_string(p.end) + "]"; }

}  // namespace

std::string_view to_string(OverlapKind k) { return kKindNames[static_cast<int>(k)]; }
std::string_view to_string(Timing t) { return kTimingNames[static_cast<int>(t)]; }
std::string_view to_string(Impulse i) { return kImpulseNames[static_cast<int>(i)]; }
OverlapKind parse_overlap_kind(std::string_view s) { return parse_enum<OverlapKind>(s, kKindNames, "overlap kind"); }
Timing parse_timing(std::string_view s) { return parse_enum<Timing>(s, kTimingNames, "timing"); }
Impulse parse_impulse(std::string_view s) { return parse_enum<Impulse>(s, kImpulseNames, "impulse"); }

TeamMemberIndex::TeamMemberIndex(std::span<const Team> teams, std::size_t n_authors) {
  offsets_.assign(n_authors + 1, 0);
  for (const auto& t : teams)
    for (AuthorId a : t.members) {
      if (a >= n_authors) throw InternalError("team member id out of range");
      ++offsets_[a + 1];
    }
  for (std::size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];
  teams_.resize(offsets_.back());
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const auto& t : teams)
    for (AuthorId a : t.members) teams_[cursor[a]++] = t.id;
}

bool member_overlap_qualifies(std::span<const AuthorId> a, std::span<const AuthorId> b) {
  return 2 * intersection_size(a, b) >= std::max(a.size(), b.size());
}

std::vector<std::pair<TeamId, TeamId>> find_overlap_candidates(std::span<const Team> teams,
                                                               const TeamMemberIndex& index, unsigned threads) {
  std::vector<std::vector<std::pair<TeamId, TeamId>>> per_focal(teams.size());
  parallel_for(teams.size(), threads, [&](std::size_t f) {
    const Team& focal = teams[f];
    std::vector<TeamId> hits;
    for (AuthorId a : focal.members) {
      auto ts = index.teams_of(a);
      hits.insert(hits.end(), ts.begin(), ts.end());
    }
    std::sort(hits.begin(), hits.end());
    for (std::size_t i = 0; i < hits.size();) {
      std::size_t j = i;
      while (j < hits.size() && hits[j] == hits[i]) ++j;
      const Team& other = teams[hits[i]];
      if (other.id != focal.id && 2 * (j - i) >= std::max(focal.members.size(), other.members.size()) &&
          focal.duration.intersects(other.duration))
        per_focal[f].emplace_back(focal.id, other.id);
      i = j;
    }
  });
  std::vector<std::pair<TeamId, TeamId>> out;
  for (auto& v : per_focal) out.insert(out.end(), v.begin(), v.end());
  std::sort(out.begin(), out.end());
  return out;
}

Timing relative_timing(const Team& focal, const Team& other) {
  if (other.duration.start < focal.duration.start) return Timing::Preceding;
  if (other.duration.start == focal.duration.start) return Timing::Simultaneous;
  return Timing::Succeeding;
}

Impulse impulse_for(OverlapKind kind, Timing timing) {
  switch (kind) {
    case OverlapKind::Core:
      if (timing == Timing::Succeeding) throw InternalError("succeeding core team");
      return timing == Timing::Preceding ? Impulse::Persistence : Impulse::None;
    case OverlapKind::Extension:
      if (timing == Timing::Preceding) throw InternalError("preceding extension team");
      return timing == Timing::Simultaneous ? Impulse::Synchronous : Impulse::Freshness;
    case OverlapKind::OffshootSharedCore:
      if (timing == Timing::Preceding) return Impulse::None;
      return timing == Timing::Simultaneous ? Impulse::Synchronous : Impulse::Freshness;
    case OverlapKind::OffshootNoSharedCore:
      break;
  }
  switch (timing) {
    case Timing::Preceding: return Impulse::Persistence;
    case Timing::Simultaneous: return Impulse::Synchronous;
    case Timing::Succeeding: break;
  }
  return Impulse::Freshness;
}

std::optional<std::string> containment_anomaly(const Team& focal, const Team& other) {
  if (proper_subset(other.members, focal.members)) {
    if (!other.duration.contains(focal.duration) || other.duration == focal.duration)
      return "core span " + span_text(other.duration) + " does not strictly contain focal span " +
             span_text(focal.duration);
  } else if (proper_subset(focal.members, other.members)) {
    if (!focal.duration.contains(other.duration))
      return "extension span " + span_text(other.duration) + " leaves focal span " + span_text(focal.duration);
  }
  return std::nullopt;
}

bool shared_core_test(const Team& focal, const Team& offshoot, std::span<const Team> teams,
                      const TeamMemberIndex& index) {
  std::vector<AuthorId> shared;
  std::set_intersection(focal.members.begin(), focal.members.end(), offshoot.members.begin(),
                        offshoot.members.end(), std::back_inserter(shared));
  for (AuthorId a : shared) {
    for (TeamId c : index.teams_of(a)) {
      const Team& core = teams[c];
      if (core.members.size() > shared.size() || core.duration.start >= focal.duration.start) continue;
      if (!std::includes(shared.begin(), shared.end(), core.members.begin(), core.members.end())) continue;
      if (member_overlap_qualifies(core.members, focal.members) && core.duration.intersects(focal.duration) &&
          !containment_anomaly(focal, core))
        return true;
    }
  }
  return false;
}

OverlapRelation classify_overlap(const Team& focal, const Team& other, std::span<const Team> teams,
                                 const TeamMemberIndex& index) {
  if (focal.members == other.members) throw InternalError("distinct teams with identical member sets");
  OverlapRelation r{focal.id, other.id};
  if (proper_subset(other.members, focal.members)) r.kind = OverlapKind::Core;
  else if (proper_subset(focal.members, other.members)) r.kind = OverlapKind::Extension;
  else if (shared_core_test(focal, other, teams, index)) r.kind = OverlapKind::OffshootSharedCore;
  else r.kind = OverlapKind::OffshootNoSharedCore;
  r.timing = relative_timing(focal, other);
  r.impulse = impulse_for(r.kind, r.timing);
  return r;
}

std::vector<TeamSuccess> team_success(std::span<const Team> teams, const PublicationTable& pubs,
                                      std::span<const SuccessTag> tags) {
  std::vector<TeamSuccess> out(teams.size());
  for (std::size_t i = 0; i < teams.size(); ++i) {
    auto& s = out[i];
    s.n_pubs = teams[i].pubs.size();
    for (Tier t : kTiers) {
      std::vector<Year> years;
      for (PubIndex p : teams[i].pubs)
        if (is_top(tags[p], t)) years.push_back(pubs.pubs[p].year);
      std::sort(years.begin(), years.end());
      const auto k = static_cast<int>(t);
      s.n_top[k] = years.size();
      if (!years.empty()) s.first_top[k] = years[0];
      if (years.size() > 1) s.second_top[k] = years[1];
    }
  }
  return out;
}

ImpulseSummary impulse_summary(const Team& focal, std::span<const OverlapRelation> relations,
                               std::span<const Team> teams, std::span<const TeamSuccess> success) {
  ImpulseSummary s;
  s.team = focal.id;
  for (const auto& r : relations) {
    if (r.focal != focal.id) throw InternalError("relation does not belong to the focal team");
    if (r.impulse == Impulse::None) continue;
    auto& c = s.by_impulse[static_cast<int>(r.impulse)];
    ++c.total;
    const auto& src = success[r.other];
    for (Tier t : kTiers) {
      const auto k = static_cast<int>(t);
      if (!src.successful(t)) continue;
      ++c.from_top[k];
      if (r.impulse == Impulse::Persistence && *src.first_top[k] < focal.duration.start) ++s.early_persistence[k];
    }
  }
  (void)teams;
  s.impulses_per_year = static_cast<double>(s.total()) / static_cast<double>(focal.duration_years());
  return s;
}

OverlapResult analyze_overlaps(std::span<const Team> teams, std::size_t n_authors,
                               std::span<const TeamSuccess> success, unsigned threads) {
  for (std::size_t i = 0; i < teams.size(); ++i)
    if (teams[i].id != i) throw InternalError("team ids must be dense and ordered");
  const TeamMemberIndex index(teams, n_authors);
  const auto candidates = find_overlap_candidates(teams, index, threads);

  std::vector<std::optional<OverlapRelation>> classified(candidates.size());
  std::vector<std::optional<std::string>> anomalies(candidates.size());
  parallel_for(candidates.size(), threads, [&](std::size_t i) {
    const Team& f = teams[candidates[i].first];
    const Team& o = teams[candidates[i].second];
    anomalies[i] = containment_anomaly(f, o);
    if (!anomalies[i]) classified[i] = classify_overlap(f, o, teams, index);
  });

  OverlapResult result;
  result.candidates = candidates.size();
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (classified[i]) result.relations.push_back(*classified[i]);
    else result.anomalies.push_back({candidates[i].first, candidates[i].second, std::move(*anomalies[i])});
  }
  result.summaries.resize(teams.size());
  std::size_t r = 0;
  for (const auto& t : teams) {
    std::size_t e = r;
    while (e < result.relations.size() && result.relations[e].focal == t.id) ++e;
    result.summaries[t.id] =
        impulse_summary(t, std::span(result.relations).subspan(r, e - r), teams, success);
    r = e;
  }
  return result;
}

void write_overlaps_csv(std::ostream& out, std::span<const OverlapRelation> relations) {
  out << "focal_id,other_id,kind,timing,impulse\n";
  for (const auto& r : relations)
    out << r.focal << ',' << r.other << ',' << to_string(r.kind) << ',' << to_string(r.timing) << ','
        << to_string(r.impulse) << '\n';
}

std::vector<OverlapRelation> read_overlaps_csv(std::istream& in) {
  std::vector<OverlapRelation> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    if (++line_no == 1 || line.empty()) continue;
    std::istringstream row(line);
    std::string f, o, k, t, i;
    if (!std::getline(row, f, ',') || !std::getline(row, o, ',') || !std::getline(row, k, ',') ||
        !std::getline(row, t, ',') || !std::getline(row, i))
      throw InputError("overlaps line " + std::to_string(line_no) + ": malformed row");
    out.push_back({static_cast<TeamId>(std::stoul(f)), static_cast<TeamId>(std::stoul(o)), parse_overlap_kind(k),
                   parse_timing(t), parse_impulse(i)});
  }
  return out;
}

void write_anomalies_csv(std::ostream& out, std::span<const OverlapAnomaly> anomalies) {
  out << "focal_id,other_id,reason\n";
  for (const auto& a : anomalies) out << a.focal << ',' << a.other << ",\"" << a.reason << "\"\n";
}

void write_impulses_csv(std::ostream& out, std::span<const ImpulseSummary> summaries) {
  out << "team_id,persistence,persistence_top10,persistence_top1,synchronous,synchronous_top10,"
         "synchronous_top1,freshness,freshness_top10,freshness_top1,early_persistence_top10,"
         "early_persistence_top1,impulses_per_year\n";
  char rate[64];
  for (const auto& s : summaries) {
    out << s.team;
    for (const auto& c : s.by_impulse) out << ',' << c.total << ',' << c.from_top[0] << ',' << c.from_top[1];
    std::snprintf(rate, sizeof rate, "%.17g", s.impulses_per_year);
    out << ',' << s.early_persistence[0] << ',' << s.early_persistence[1] << ',' << rate << '\n';
  }
}

std::vector<ImpulseSummary> read_impulses_csv(std::istream& in) {
  std::vector<ImpulseSummary> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    if (++line_no == 1 || line.empty()) continue;
    std::vector<std::string> cells;
    std::istringstream row(line);
    for (std::string c; std::getline(row, c, ',');) cells.push_back(c);
    if (cells.size() != 13) throw InputError("impulses line " + std::to_string(line_no) + ": expected 13 columns");
    ImpulseSummary s;
    s.team = static_cast<TeamId>(std::stoul(cells[0]));
    for (int k = 0; k < 3; ++k) {
      s.by_impulse[k].total = std::stoull(cells[1 + 3 * k]);
      s.by_impulse[k].from_top[0] = std::stoull(cells[2 + 3 * k]);
      s.by_impulse[k].from_top[1] = std::stoull(cells[3 + 3 * k]);
    }
    s.early_persistence[0] = std::stoull(cells[10]);
    s.early_persistence[1] = std::stoull(cells[11]);
    s.impulses_per_year = std::stod(cells[12]);
    out.push_back(s);
  }
  return out;
}

}  // namespace pteams

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


#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>
#include <sstream>

#include "../support/oracles.hpp"
#include "pteams/overlap.hpp"

namespace pteams {
namespace {

constexpr AuthorId A = 0, B = 1, C = 2, D = 3, E = 4, F = 5;

Team team(TeamId id, std::vector<AuthorId> m, Period span) {
  Team t;
  t.id = id;
  std::sort(m.begin(), m.end());
  t.members = std::move(m);
  t.intervals = {span};
  t.duration = span;
  return t;
}

OverlapRelation classify(const std::vector<Team>& teams, TeamId f, TeamId o) {
  TeamMemberIndex index(teams, 16);
  return classify_overlap(teams[f], teams[o], teams, index);
}

TEST(Candidates, MembershipThreshold) {
  std::vector<Team> teams = {team(0, {A, B, C}, {1, 5}), team(1, {D, E, F}, {1, 5}),
                             team(2, {A, B, C, D}, {1, 5}), team(3, {A, B, E, F}, {1, 5}),
                             team(4, {A, B}, {1, 6})};
  TeamMemberIndex index(teams, 8);
  auto c = find_overlap_candidates(teams, index, 1);
  std::set<std::pair<TeamId, TeamId>> got(c.begin(), c.end());
  EXPECT_FALSE(got.count({0, 1}));
  EXPECT_TRUE(got.count({2, 3}));
  EXPECT_TRUE(got.count({3, 2}));
  EXPECT_TRUE(got.count({0, 4}));
  EXPECT_TRUE(got.count({4, 0}));
  EXPECT_TRUE(member_overlap_qualifies(teams[2].members, teams[3].members));
  EXPECT_FALSE(member_overlap_qualifies(teams[0].members, teams[1].members));
}

TEST(Candidates, DisjointDurationsAreNotCandidates) {
  std::vector<Team> teams = {team(0, {A, B, C}, {1, 3}), team(1, {A, B, D}, {6, 9})};
  EXPECT_TRUE(find_overlap_candidates(teams, TeamMemberIndex(teams, 8), 1).empty());
}

TEST(Classify, Examples) {
  std::vector<Team> t = {team(0, {A, B, C}, {3, 6}), team(1, {A, B}, {1, 7}), team(2, {A, B, C, D}, {4, 5}),
                         team(3, {A, B}, {3, 8})};
  EXPECT_EQ(classify(t, 0, 1), (OverlapRelation{0, 1, OverlapKind::Core, Timing::Preceding, Impulse::Persistence}));
  EXPECT_EQ(classify(t, 0, 2),
            (OverlapRelation{0, 2, OverlapKind::Extension, Timing::Succeeding, Impulse::Freshness}));
  EXPECT_EQ(classify(t, 0, 3), (OverlapRelation{0, 3, OverlapKind::Core, Timing::Simultaneous, Impulse::None}));

  std::vector<Team> u = {team(0, {A, B, C, D}, {3, 6}), team(1, {A, B, E, F}, {3, 5})};
  EXPECT_EQ(classify(u, 0, 1), (OverlapRelation{0, 1, OverlapKind::OffshootNoSharedCore, Timing::Simultaneous,
                                                Impulse::Synchronous}));
}

TEST(ImpulseTable, FeasibleCells) {
  using K = OverlapKind;
  using T = Timing;
  using I = Impulse;
  EXPECT_EQ(impulse_for(K::Core, T::Preceding), I::Persistence);
  EXPECT_EQ(impulse_for(K::Core, T::Simultaneous), I::None);
  EXPECT_THROW(impulse_for(K::Core, T::Succeeding), InternalError);
  EXPECT_THROW(impulse_for(K::Extension, T::Preceding), InternalError);
  EXPECT_EQ(impulse_for(K::Extension, T::Simultaneous), I::Synchronous);
  EXPECT_EQ(impulse_for(K::Extension, T::Succeeding), I::Freshness);
  EXPECT_EQ(impulse_for(K::OffshootSharedCore, T::Preceding), I::None);
  EXPECT_EQ(impulse_for(K::OffshootSharedCore, T::Simultaneous), I::Synchronous);
  EXPECT_EQ(impulse_for(K::OffshootSharedCore, T::Succeeding), I::Freshness);
  EXPECT_EQ(impulse_for(K::OffshootNoSharedCore, T::Preceding), I::Persistence);
  EXPECT_EQ(impulse_for(K::OffshootNoSharedCore, T::Simultaneous), I::Synchronous);
  EXPECT_EQ(impulse_for(K::OffshootNoSharedCore, T::Succeeding), I::Freshness);
}

TEST(SharedCore, Examples) {
  std::vector<Team> t = {team(0, {A, B}, {1, 9}), team(1, {A, B, C}, {3, 6}), team(2, {A, B, D}, {2, 5})};
  TeamMemberIndex index(t, 8);
  EXPECT_TRUE(shared_core_test(t[1], t[2], t, index));
  EXPECT_EQ(classify(t, 1, 2).kind, OverlapKind::OffshootSharedCore);
  EXPECT_EQ(classify(t, 1, 2).impulse, Impulse::None);

  std::vector<Team> none = {team(0, {A, B, C}, {3, 6}), team(1, {A, B, D}, {2, 5})};
  EXPECT_FALSE(shared_core_test(none[0], none[1], none, TeamMemberIndex(none, 8)));

  std::vector<Team> simultaneous = {team(0, {A, B}, {3, 9}), team(1, {A, B, C}, {3, 6}), team(2, {A, B, D}, {2, 5})};
  EXPECT_FALSE(shared_core_test(simultaneous[1], simultaneous[2], simultaneous, TeamMemberIndex(simultaneous, 8)));
}

TEST(Anomalies, ContainmentLemmas) {
  auto focal = team(0, {A, B, C}, {3, 6});
  EXPECT_FALSE(containment_anomaly(focal, team(1, {A, B}, {2, 6})));
  EXPECT_TRUE(containment_anomaly(focal, team(1, {A, B}, {3, 6})));
  EXPECT_TRUE(containment_anomaly(focal, team(1, {A, B}, {4, 8})));
  EXPECT_FALSE(containment_anomaly(focal, team(1, {A, B, C, D}, {3, 6})));
  EXPECT_TRUE(containment_anomaly(focal, team(1, {A, B, C, D}, {2, 4})));
  EXPECT_FALSE(containment_anomaly(focal, team(1, {A, B, D}, {1, 9})));
}

TEST(Summary, ClosedTeam) {
  std::vector<Team> t = {team(0, {A, B}, {1, 4})};
  std::vector<TeamSuccess> s(1);
  auto sum = impulse_summary(t[0], {}, t, s);
  EXPECT_TRUE(sum.closed());
  EXPECT_EQ(sum.impulses_per_year, 0.0);
}

TEST(Summary, EarlyPersistenceFromTopSource) {
  std::vector<Team> t = {team(0, {A, B, C}, {3, 6}), team(1, {A, B}, {1, 7})};
  std::vector<TeamSuccess> s(2);
  s[1].n_pubs = 5;
  s[1].n_top = {1, 1};
  s[1].first_top = {Year{2}, Year{2}};
  std::vector<OverlapRelation> r = {{0, 1, OverlapKind::Core, Timing::Preceding, Impulse::Persistence}};
  auto sum = impulse_summary(t[0], r, t, s);
  EXPECT_EQ(sum.of(Impulse::Persistence).total, 1u);
  EXPECT_EQ(sum.of(Impulse::Persistence).from_top[static_cast<int>(Tier::Top1)], 1u);
  EXPECT_EQ(sum.early_persistence[static_cast<int>(Tier::Top1)], 1u);
  EXPECT_DOUBLE_EQ(sum.impulses_per_year, 0.25);

  s[1].first_top = {Year{3}, Year{3}};
  EXPECT_EQ(impulse_summary(t[0], r, t, s).early_persistence[1], 0u);
}

TEST(Summary, RatePerYear) {
  std::vector<Team> t = {team(0, {A, B, C}, {3, 6})};
  for (TeamId i = 1; i <= 6; ++i) t.push_back(team(i, {A, B, static_cast<AuthorId>(5 + i)}, {4, 5}));
  std::vector<TeamSuccess> s(t.size());
  std::vector<OverlapRelation> r;
  for (TeamId i = 1; i <= 6; ++i)
    r.push_back({0, i, OverlapKind::OffshootNoSharedCore, Timing::Succeeding, Impulse::Freshness});
  EXPECT_DOUBLE_EQ(impulse_summary(t[0], r, t, s).impulses_per_year, 1.5);
}

TEST(TeamSuccessTable, FirstAndSecondYears) {
  PublicationTable p;
  for (int y : {5, 3, 4}) p.pubs.push_back({"P" + std::to_string(y), y, DocType::Article, {0}, {}});
  Team t = team(0, {A, B}, {3, 5});
  t.pubs = {0, 1, 2};
  std::vector<SuccessTag> tags = {{9, true, true}, {1, false, false}, {5, true, false}};
  auto s = team_success(std::vector<Team>{t}, p, tags)[0];
  EXPECT_EQ(s.n_pubs, 3u);
  EXPECT_EQ(s.n_top[0], 2u);
  EXPECT_EQ(s.first_top[0], Year{4});
  EXPECT_EQ(s.second_top[0], Year{5});
  EXPECT_EQ(s.first_top[1], Year{5});
  EXPECT_FALSE(s.second_top[1]);
}

std::vector<Team> random_teams(std::mt19937_64& rng) {
  auto net = oracle::random_network(rng, 10, 8);
  return assemble_teams(enumerate_maximal_cliques(net));
}

bool feasible(const OverlapRelation& r) {
  if (r.kind == OverlapKind::Core && r.timing == Timing::Succeeding) return false;
  if (r.kind == OverlapKind::Extension && r.timing == Timing::Preceding) return false;
  return r.impulse == impulse_for(r.kind, r.timing);
}

TEST(OverlapProperty, ExhaustiveFeasibleAndOrderIndependent) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    auto teams = random_teams(rng);
    std::vector<TeamSuccess> s(teams.size());
    auto res = analyze_overlaps(teams, 16, s, 1);
    ASSERT_EQ(res.relations.size() + res.anomalies.size(), res.candidates);
    std::set<std::pair<TeamId, TeamId>> seen;
    for (const auto& r : res.relations) {
      ASSERT_TRUE(feasible(r));
      ASSERT_TRUE(seen.insert({r.focal, r.other}).second);
      ASSERT_TRUE(member_overlap_qualifies(teams[r.focal].members, teams[r.other].members));
    }
    for (const auto& a : res.anomalies) ASSERT_TRUE(seen.insert({a.focal, a.other}).second);

    // Relabel teams in reverse and compare through the mapping.
    std::vector<Team> rev(teams.rbegin(), teams.rend());
    const auto n = static_cast<TeamId>(teams.size());
    for (TeamId i = 0; i < n; ++i) rev[i].id = i;
    auto res2 = analyze_overlaps(rev, 16, s, 3);
    std::vector<OverlapRelation> mapped;
    for (auto r : res2.relations) {
      r.focal = n - 1 - r.focal;
      r.other = n - 1 - r.other;
      mapped.push_back(r);
    }
    std::sort(mapped.begin(), mapped.end());
    ASSERT_EQ(mapped, res.relations);
  }
}

TEST(OverlapCsv, RoundTrip) {
  std::vector<OverlapRelation> r = {{0, 1, OverlapKind::Core, Timing::Preceding, Impulse::Persistence},
                                    {1, 0, OverlapKind::Extension, Timing::Succeeding, Impulse::Freshness}};
  std::stringstream s;
  write_overlaps_csv(s, r);
  EXPECT_EQ(read_overlaps_csv(s), r);
  std::istringstream bad("h\n0,1,core,later,none\n");
  EXPECT_THROW(read_overlaps_csv(bad), InputError);

  ImpulseSummary sum;
  sum.team = 3;
  sum.by_impulse[2] = {2, {1, 0}};
  sum.impulses_per_year = 2.0 / 3.0;
  std::stringstream t;
  write_impulses_csv(t, std::vector<ImpulseSummary>{sum});
  auto back = read_impulses_csv(t);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].of(Impulse::Freshness).from_top[0], 1u);
  EXPECT_EQ(back[0].impulses_per_year, sum.impulses_per_year);
}

}  // namespace
}  // namespace pteams

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

#include <random>
#include <sstream>

#include "../support/oracles.hpp"
#include "pteams/cliques.hpp"

namespace pteams {
namespace {

constexpr AuthorId A = 0, B = 1, C = 2, D = 3, E = 4, F = 5;

PersistentNetwork net_of(std::vector<std::tuple<AuthorId, AuthorId, std::vector<Period>>> edges) {
  PersistentNetwork n;
  for (auto& [a, b, ps] : edges) n.edges.push_back({AuthorPair::of(a, b), ps});
  std::sort(n.edges.begin(), n.edges.end(), [](auto& x, auto& y) { return x.pair < y.pair; });
  return n;
}

TEST(MaximalCliques, ThreeEdgeExample) {
  auto n = net_of({{A, B, {{1, 3}}}, {A, C, {{2, 4}}}, {B, C, {{2, 3}}}});
  std::vector<TemporalClique> expect = {{{A, B}, {1, 3}}, {{A, B, C}, {2, 3}}, {{A, C}, {2, 4}}};
  EXPECT_EQ(enumerate_maximal_cliques(n), expect);
  EXPECT_EQ(brute_force_cliques(n), expect);
}

TEST(MaximalCliques, SingleEdge) {
  auto n = net_of({{A, B, {{2, 6}}}});
  EXPECT_EQ(enumerate_maximal_cliques(n), (std::vector<TemporalClique>{{{A, B}, {2, 6}}}));
}

TEST(MaximalCliques, WorkedExampleNetwork) {
  auto n = net_of({{A, B, {{2, 6}}}, {A, C, {{2, 5}}}, {B, C, {{1, 7}}}, {E, F, {{6, 8}}}});
  auto out = enumerate_maximal_cliques(n);
  std::vector<TemporalClique> expect = {
      {{A, B}, {2, 6}}, {{A, B, C}, {2, 5}}, {{B, C}, {1, 7}}, {{E, F}, {6, 8}}};
  EXPECT_EQ(out, expect);
}

TEST(MaximalCliques, DisconnectedPeriodsGiveSeparateCliques) {
  auto n = net_of({{A, B, {{1, 3}, {7, 9}}}, {A, D, {{8, 8}}}, {B, D, {{7, 9}}}});
  std::vector<TemporalClique> expect = {
      {{A, B}, {1, 3}}, {{A, B}, {7, 9}}, {{A, B, D}, {8, 8}}, {{B, D}, {7, 9}}};
  EXPECT_EQ(enumerate_maximal_cliques(n), expect);
}

TEST(BruteForce, EmptyAndTriangle) {
  EXPECT_TRUE(brute_force_cliques({}).empty());
  EXPECT_TRUE(enumerate_maximal_cliques({}).empty());
  auto tri = net_of({{A, B, {{1, 5}}}, {A, C, {{1, 5}}}, {B, C, {{1, 5}}}});
  EXPECT_EQ(brute_force_cliques(tri), (std::vector<TemporalClique>{{{A, B, C}, {1, 5}}}));
}

TEST(BruteForce, SizeGuard) {
  PersistentNetwork big;
  for (AuthorId k = 1; k <= kBruteForceMaxAuthors; ++k) big.edges.push_back({{0, k}, {{1, 2}}});
  EXPECT_THROW(brute_force_cliques(big), std::exception);
  auto long_span = net_of({{A, B, {{1, 11}}}});
  EXPECT_THROW(brute_force_cliques(long_span), std::exception);
}

TEST(CliqueParamsCheck, OnlyUnitDeltaGamma) {
  EXPECT_THROW((CliqueParams{2, 1, 2, 0}.validate()), std::invalid_argument);
  EXPECT_THROW((CliqueParams{1, 2, 2, 0}.validate()), std::invalid_argument);
  EXPECT_THROW((CliqueParams{1, 1, 1, 0}.validate()), std::invalid_argument);
}

TEST(MaximalCliquesProperty, OracleSoundnessMaximality) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 600; ++i) {
    auto n = oracle::random_network(rng);
    auto out = enumerate_maximal_cliques(n);
    ASSERT_EQ(out, brute_force_cliques(n)) << "case " << i;
    ASSERT_TRUE(std::is_sorted(out.begin(), out.end()));
    AuthorId max_author = 0;
    for (const auto& e : n.edges) max_author = std::max(max_author, e.pair.b);
    for (const auto& c : out) {
      ASSERT_TRUE(oracle::fully_connected(n, c.members, c.span));
      ASSERT_FALSE(oracle::fully_connected(n, c.members, {c.span.start - 1, c.span.end}));
      ASSERT_FALSE(oracle::fully_connected(n, c.members, {c.span.start, c.span.end + 1}));
      for (AuthorId x = 0; x <= max_author; ++x) {
        if (std::binary_search(c.members.begin(), c.members.end(), x)) continue;
        auto m = c.members;
        m.insert(std::upper_bound(m.begin(), m.end(), x), x);
        ASSERT_FALSE(oracle::fully_connected(n, m, c.span));
      }
      for (const auto& d : out) {
        if (&c == &d) continue;
        const bool dominated = std::includes(d.members.begin(), d.members.end(), c.members.begin(), c.members.end()) &&
                               d.span.contains(c.span);
        ASSERT_FALSE(dominated);
      }
    }
  }
}

TEST(MaximalCliquesProperty, ThreadCountDoesNotChangeOutput) {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 50; ++i) {
    auto n = oracle::random_network(rng, 40, 12);
    CliqueParams one, many;
    one.threads = 1;
    many.threads = 8;
    ASSERT_EQ(enumerate_maximal_cliques(n, one), enumerate_maximal_cliques(n, many));
  }
}

TEST(CliquesCsv, RoundTrip) {
  Dictionary names;
  for (const char* s : {"A", "B", "C"}) names.intern(s);
  std::vector<TemporalClique> cl = {{{A, B}, {1, 3}}, {{A, B, C}, {2, 3}}};
  std::stringstream s;
  write_cliques_csv(s, cl, names);
  EXPECT_NE(s.str().find("A;B;C,2,3"), std::string::npos);
  EXPECT_EQ(read_cliques_csv(s, names), cl);
}

}  // namespace
}  // namespace pteams

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

#include <sstream>

#include "../support/harness.hpp"
#include "pteams/corpus.hpp"
#include "pteams/synth.hpp"

namespace pteams {
namespace {

struct Emitted {
  std::string pubs, cites;
  GroundTruth truth;
};

Emitted emit(const SynthConfig& c) {
  std::ostringstream p, q;
  auto t = generate_corpus(c, p, q);
  return {p.str(), q.str(), t};
}

SynthConfig one_pair() {
  SynthConfig c;
  c.first_year = 2010;
  c.last_year = 2012;
  TeamGroup g;
  g.units = 1;
  g.min_size = g.max_size = 2;
  g.min_duration = g.max_duration = 1;
  c.groups = {g};
  return c;
}

TEST(Rng, RangesAndDeterminism) {
  SynthRng a(5), b(5);
  for (int i = 0; i < 10000; ++i) {
    auto x = a.uniform(-3, 7);
    ASSERT_GE(x, -3);
    ASSERT_LE(x, 7);
    ASSERT_EQ(x, b.uniform(-3, 7));
    const double r = a.real();
    ASSERT_GE(r, 0.0);
    ASSERT_LT(r, 1.0);
    ASSERT_EQ(r, b.real());
  }
  EXPECT_THROW(a.uniform(2, 1), std::invalid_argument);
  EXPECT_EQ(a.uniform(4, 4), 4);
}

TEST(Rng, UniformIsRoughlyFlat) {
  SynthRng r(9);
  std::array<int, 6> hist{};
  for (int i = 0; i < 60000; ++i) ++hist[static_cast<std::size_t>(r.uniform(0, 5))];
  for (int h : hist) EXPECT_NEAR(h, 10000, 500);
}

TEST(Generator, SameSeedSameBytes) {
  auto c = synth_preset("recovery", 3);
  auto a = emit(c), b = emit(c);
  EXPECT_EQ(a.pubs, b.pubs);
  EXPECT_EQ(a.cites, b.cites);
  std::ostringstream ta, tb;
  write_truth_json(ta, a.truth);
  write_truth_json(tb, b.truth);
  EXPECT_EQ(ta.str(), tb.str());
  c.seed = 4;
  EXPECT_NE(emit(c).pubs, a.pubs);
}

TEST(Generator, InfeasibleSpecsRejected) {
  auto c = one_pair();
  c.groups[0].pubs_per_year = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  std::ostringstream sink;
  EXPECT_THROW(generate_corpus(c, sink, sink), std::invalid_argument);
  c = one_pair();
  c.groups[0].pubs_per_year = 2;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = one_pair();
  c.groups[0].max_duration = 9;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = one_pair();
  c.groups[0].min_size = 1;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = one_pair();
  c.groups[0].wiring = Wiring::PrecedingCore;
  c.groups[0].max_size = 2;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  EXPECT_THROW(synth_preset("nope"), std::invalid_argument);
  EXPECT_THROW(parse_wiring("sideways"), std::invalid_argument);
}

TEST(Generator, OutputPassesIngestWithoutRejects) {
  for (const char* preset : {"tiny", "recovery", "overlaps"}) {
    auto c = synth_preset(preset, 11);
    auto e = emit(c);
    std::istringstream in(e.pubs);
    auto loaded = parse_publications(in, {c.first_year, c.last_year, 1});
    EXPECT_TRUE(loaded.report.rejects.empty()) << preset;
    EXPECT_EQ(loaded.table.size(), e.truth.publications) << preset;
    EXPECT_EQ(check_table_invariants(loaded.table, {c.first_year, c.last_year, 1}), std::nullopt);
    std::istringstream cin(e.cites);
    auto cites = parse_citations(cin, loaded.table);
    EXPECT_EQ(cites.report.unknown_cited, 0u);
  }
}

TEST(Generator, PlantedRejectShare) {
  auto c = synth_preset("recovery", 2);
  c.reject_rate = 0.133;
  auto e = emit(c);
  std::istringstream in(e.pubs);
  auto loaded = parse_publications(in, {c.first_year, c.last_year, 1});
  EXPECT_EQ(loaded.report.rejects.size(), e.truth.planted_rejects);
  EXPECT_EQ(loaded.report.accepted, e.truth.publications);
  EXPECT_NEAR(loaded.report.rejected_percent(), 13.3, 0.5);
}

TEST(Generator, WorkedExampleShape) {
  auto e = emit(synth_preset("fig-s1"));
  EXPECT_EQ(e.truth.teams.size(), 4u);
  EXPECT_EQ(e.truth.overlaps.size(), 6u);
  std::istringstream in(e.pubs);
  EXPECT_EQ(parse_publications(in, {1, 8, 1}).table.size(), 17u);
}

TEST(Truth, JsonRoundTrip) {
  auto e = emit(synth_preset("overlaps", 5));
  std::stringstream s;
  write_truth_json(s, e.truth);
  auto back = read_truth_json(s);
  std::ostringstream again;
  write_truth_json(again, back);
  EXPECT_EQ(s.str(), again.str());
  EXPECT_EQ(back.teams.size(), e.truth.teams.size());
}

TEST(Verify, EmptyCorpusGivesEmptyReport) {
  auto r = verify_against_truth({}, {});
  EXPECT_TRUE(r.empty());
  EXPECT_EQ(r.recall(), 1.0);
}

TEST(Verify, ExactSupersetAndMissing) {
  GroundTruth t;
  t.teams = {{"x", {"A", "B"}, {{2, 4}}}, {"y", {"C", "D"}, {{2, 4}}}, {"z", {"E", "F"}, {{1, 2}}}};
  MinedArtifacts m;
  m.teams = {{{"A", "B"}, {{2, 4}}}, {{"C", "D", "G"}, {{1, 5}}}};
  auto r = verify_against_truth(m, t);
  EXPECT_EQ(r.exact, 1u);
  EXPECT_EQ(r.superset, 1u);
  EXPECT_NEAR(r.recall(), 2.0 / 3.0, 1e-12);
  EXPECT_EQ(r.precision(), 0.5);
}

TEST(EndToEnd, OnePlantedPairGivesOneTeam) {
  harness::Workdir w("one_pair");
  auto run = harness::synthesize(one_pair(), w.path());
  ASSERT_EQ(run.truth.teams.size(), 1u);
  Pipeline p(harness::pipeline_for(run, w / "out"));
  p.run_all();
  auto mined = load_mined_artifacts(w / "out");
  ASSERT_EQ(mined.teams.size(), 1u);
  EXPECT_EQ(mined.teams[0].members, run.truth.teams[0].members);
  EXPECT_EQ(verify_against_truth(mined, run.truth).exact, 1u);
}

TEST(EndToEnd, TruthClosedUnderPipeline) {
  harness::Workdir w("closure");
  auto run = harness::synthesize(synth_preset("overlaps", 8), w.path());
  Pipeline p(harness::pipeline_for(run, w / "out"));
  p.run_all();
  auto r = harness::verify_dir(w / "out", run.truth);
  EXPECT_EQ(r.exact_recall(), 1.0);
  EXPECT_EQ(r.precision(), 1.0);
  EXPECT_EQ(r.overlap_match_rate(), 1.0);
  EXPECT_EQ(r.tag_match_rate(), 1.0);
}

}  // namespace
}  // namespace pteams

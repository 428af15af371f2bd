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

#include <fstream>
#include <map>
#include <sstream>

#include "../support/harness.hpp"
#include "pteams/pipeline.hpp"

namespace pteams {
namespace {

namespace fs = std::filesystem;
using harness::slurp;

std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().filename() != "manifest.json") files[e.path().filename().string()] = slurp(e.path());
  return files;
}

std::string error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    return e.what();
  }
  return {};
}

class WorkedExample : public ::testing::Test {
 protected:
  void SetUp() override { run_ = harness::synthesize(synth_preset("fig-s1"), work_.path()); }
  PipelineConfig config(unsigned threads = 0) { return harness::pipeline_for(run_, work_ / "out", 0, threads); }

  harness::Workdir work_{"pipeline"};
  harness::SynthRun run_;
};

TEST_F(WorkedExample, RunAllProducesTheChain) {
  Pipeline p(config());
  auto outcomes = p.run_all();
  ASSERT_EQ(outcomes.size(), 8u);
  for (const auto& o : outcomes) EXPECT_FALSE(o.cached);
  const auto out = work_ / "out";
  for (const char* f : {"publications.jsonl", "citations.csv", "rejects.csv", "success_tags.csv", "thresholds.csv",
                        "pair_timelines.csv", "persistent_edges.csv", "cliques.csv", "teams.csv", "team_pubs.csv",
                        "overlaps.csv", "impulses.csv", "overlap_anomalies.csv", "fig1a.csv", "fig5d.csv",
                        "fig5d_top10.csv", "table_s1.csv", "manifest.json"})
    EXPECT_TRUE(fs::exists(out / f)) << f;
  EXPECT_NE(slurp(out / "teams.csv").find(",A;B;C,2-5,"), std::string::npos);
  const auto edges = slurp(out / "persistent_edges.csv");
  EXPECT_NE(edges.find("A,B,2-6\n"), std::string::npos);
  EXPECT_EQ(edges.find("C,D,"), std::string::npos);
}

TEST_F(WorkedExample, RerunIsCacheHitWithIdenticalBytes) {
  {
    Pipeline p(config());
    p.run_all();
  }
  auto before = snapshot(work_ / "out");
  Pipeline again(config(1));
  for (const auto& o : again.run_all()) EXPECT_TRUE(o.cached) << to_string(o.stage);
  EXPECT_EQ(snapshot(work_ / "out"), before);
  for (const auto& o : again.run_all(true)) EXPECT_FALSE(o.cached);
  EXPECT_EQ(snapshot(work_ / "out"), before);
}

TEST_F(WorkedExample, MissingPrerequisiteNamesStage) {
  Pipeline p(config());
  p.run(Stage::Ingest);
  p.run(Stage::Tag);
  p.run(Stage::Network);
  auto msg = error_of([&] { p.run(Stage::Mine); });
  EXPECT_NE(msg.find("persist"), std::string::npos) << msg;
  EXPECT_NE(msg.find("missing"), std::string::npos) << msg;
  EXPECT_THROW(p.run(Stage::Mine), StageError);
}

TEST_F(WorkedExample, StaleSettingsRefused) {
  {
    Pipeline p(config());
    p.run_all();
  }
  auto changed = config();
  changed.min_pubs = 2;
  Pipeline p(changed);
  auto msg = error_of([&] { p.run(Stage::Teams); });
  EXPECT_NE(msg.find("stale"), std::string::npos) << msg;
  EXPECT_NE(msg.find("persist"), std::string::npos) << msg;
  // Rerunning the changed stage makes its successor runnable again.
  EXPECT_FALSE(p.run(Stage::Persist).cached);
  EXPECT_NO_THROW(p.run(Stage::Mine));
}

TEST_F(WorkedExample, TamperedArtifactRefused) {
  {
    Pipeline p(config());
    p.run_all();
  }
  std::ofstream(work_ / "out" / "cliques.csv", std::ios::app) << "A;F,1,1\n";
  Pipeline p(config());
  auto msg = error_of([&] { p.run(Stage::Teams); });
  EXPECT_NE(msg.find("cliques.csv"), std::string::npos) << msg;
  EXPECT_FALSE(p.run(Stage::Mine).cached);
  // Regenerated cliques match what Teams recorded, so its outputs stay valid.
  EXPECT_TRUE(p.run(Stage::Teams).cached);
}

TEST_F(WorkedExample, ChangedInputRefused) {
  {
    Pipeline p(config());
    p.run_all();
  }
  std::ofstream(run_.pubs, std::ios::app) << "\n";
  Pipeline p(config());
  auto msg = error_of([&] { p.run(Stage::Tag); });
  EXPECT_NE(msg.find("input files changed"), std::string::npos) << msg;
}

TEST_F(WorkedExample, ExplainTeams) {
  Pipeline p(config());
  p.run_all();
  auto all = slurp(work_ / "out" / "teams.csv");
  auto text = p.explain(1);
  EXPECT_NE(text.find("members: A B C"), std::string::npos) << text;
  EXPECT_NE(text.find("intervals: 2-5"), std::string::npos) << text;
  EXPECT_NE(text.find("A-B periods 2-6"), std::string::npos) << text;
  EXPECT_NE(text.find("core, preceding, impulse persistence"), std::string::npos) << text;
  auto ef = p.explain(3);
  EXPECT_NE(ef.find("members: E F"), std::string::npos) << ef;
  EXPECT_NE(ef.find("none (closed team)"), std::string::npos) << ef;
  EXPECT_THROW(p.explain(99), InputError);
}

TEST(PipelineConfigTest, SetValidateAndEntries) {
  PipelineConfig c;
  EXPECT_EQ(c.window_len, 5);
  EXPECT_EQ(c.min_pubs, 3);
  EXPECT_EQ(c.delta, 1);
  EXPECT_EQ(c.gamma, 1);
  EXPECT_EQ(c.min_size, 2u);
  EXPECT_THROW(c.set("nonsense", "1"), std::invalid_argument);
  EXPECT_THROW(c.set("min_pubs", "three"), std::invalid_argument);
  c.set("top1", "1/200");
  EXPECT_NO_THROW(c.validate());
  c.set("top1", "0.5");
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.set("delta", "2");
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.set("margin", "0");
  c.set("citation_window", "following");
  PipelineConfig d;
  for (auto& [k, v] : c.entries()) d.set(k, v);
  EXPECT_EQ(d.entries(), c.entries());
  EXPECT_NE(PipelineConfig::describe().find("min_pubs"), std::string::npos);
}

TEST(PipelineConfigTest, FileRelativePaths) {
  harness::Workdir w("config");
  std::ofstream(w / "run.conf") << "# comment\npublications = pubs.jsonl\nmin_pubs=4\n\nout_dir=/abs/out\n";
  PipelineConfig c;
  c.load_file(w / "run.conf");
  EXPECT_EQ(c.publications, w / "pubs.jsonl");
  EXPECT_EQ(c.out_dir, fs::path("/abs/out"));
  EXPECT_EQ(c.min_pubs, 4);
  std::ofstream(w / "bad.conf") << "novalue\n";
  EXPECT_THROW(c.load_file(w / "bad.conf"), InputError);
}

TEST(Digests, Fnv1a64) {
  EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
  EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
}

TEST(Stages, Names) {
  for (Stage s : kStages) EXPECT_EQ(parse_stage(to_string(s)), s);
  EXPECT_THROW(parse_stage("all"), std::invalid_argument);
}

TEST(Determinism, ThreadCountsGiveSameFigures) {
  harness::Workdir w("threads");
  auto run = harness::synthesize(synth_preset("overlaps", 21), w.path());
  Pipeline one(harness::pipeline_for(run, w / "one", 0, 1));
  Pipeline many(harness::pipeline_for(run, w / "many", 0, 4));
  one.run_all();
  many.run_all();
  EXPECT_EQ(snapshot(w / "one"), snapshot(w / "many"));
}

}  // namespace
}  // namespace pteams

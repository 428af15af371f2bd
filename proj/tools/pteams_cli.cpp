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

// Command-line front end for the staged pipeline.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pteams/pipeline.hpp"
#include "pteams/synth.hpp"

namespace fs = std::filesystem;

namespace {

struct Globals {
  std::string config_file;
  std::vector<std::string> sets;
  std::string out_dir;
  int threads = -1;
  bool force = false;
  bool quiet = false;
};

pteams::PipelineConfig build_config(const Globals& g) {
  pteams::PipelineConfig c;
  if (!g.config_file.empty()) c.load_file(g.config_file);
  for (const auto& kv : g.sets) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("--set expects key=value, got '" + kv + "'");
    c.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (!g.out_dir.empty()) c.out_dir = g.out_dir;
  if (g.threads >= 0) c.threads = static_cast<unsigned>(g.threads);
  return c;
}

int run_synth(const std::string& preset, std::uint64_t seed, const fs::path& dir) {
  auto cfg = pteams::synth_preset(preset, seed);
  fs::create_directories(dir);
  std::ofstream pubs(dir / "pubs.jsonl", std::ios::binary);
  std::ofstream cites(dir / "cites.csv", std::ios::binary);
  if (!pubs || !cites) throw pteams::InputError("cannot write into " + dir.string());
  auto truth = pteams::generate_corpus(cfg, pubs, cites);
  std::ofstream(dir / "truth.json") << [&] {
    std::ostringstream s;
    pteams::write_truth_json(s, truth);
    return s.str();
  }();
  std::ofstream conf(dir / "pipeline.conf");
  conf << "# generated by `pteams synth --preset " << preset << " --seed " << seed << "`\n"
       << "publications=pubs.jsonl\ncitations=cites.csv\nout_dir=run\n"
       << "first_year=" << truth.first_year << "\nlast_year=" << truth.last_year << '\n';
  if (preset == "fig-s1") conf << "margin=0\n";
  std::cout << "wrote " << truth.publications << " publications (" << truth.planted_rejects
            << " planted rejects), " << truth.teams.size() << " planted teams, " << truth.overlaps.size()
            << " planted overlaps to " << dir.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pteams: persistent team mining over co-authorship records"};
  app.footer(pteams::PipelineConfig::describe());
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("-c,--config", g.config_file, "key=value settings file");
  app.add_option("-s,--set", g.sets, "override a setting, key=value (repeatable)");
  app.add_option("-o,--out", g.out_dir, "artifact directory (overrides out_dir)");
  app.add_option("-j,--threads", g.threads, "worker threads, 0 = all cores");
  app.add_flag("-f,--force", g.force, "recompute even when outputs are up to date");
  app.add_flag("-q,--quiet", g.quiet, "no progress output");

  std::vector<std::pair<CLI::App*, pteams::Stage>> stage_cmds;
  for (pteams::Stage s : pteams::kStages) {
    std::string name(pteams::to_string(s));
    stage_cmds.emplace_back(app.add_subcommand(name, "run the " + name + " stage"), s);
  }

  auto* run = app.add_subcommand("run", "run one stage by name, or `all`");
  std::string run_target = "all";
  run->add_option("stage", run_target, "stage name or all")->required();

  auto* synth = app.add_subcommand("synth", "generate a synthetic corpus with ground truth");
  std::string preset = "recovery";
  std::uint64_t seed = 1;
  std::string synth_dir = "synth";
  synth->add_option("--preset", preset, "fig-s1, tiny, recovery, overlaps, hazard, shift or scale")
      ->capture_default_str();
  synth->add_option("--seed", seed, "random seed")->capture_default_str();
  synth->add_option("dir", synth_dir, "output directory")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "compare a finished run against a truth file");
  std::string truth_file;
  double min_recall = 0.0;
  verify->add_option("--truth", truth_file, "truth.json written by synth")->required();
  verify->add_option("--min-recall", min_recall, "fail unless planted-team recall reaches this value");

  auto* explain = app.add_subcommand("explain", "describe one team from the written artifacts");
  unsigned team_id = 0;
  explain->add_option("team_id", team_id, "team id as in teams.csv")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth->parsed()) return run_synth(preset, seed, synth_dir);

    auto config = build_config(g);
    std::ostream* log = g.quiet ? nullptr : &std::cerr;

    if (verify->parsed()) {
      std::ifstream in(truth_file);
      if (!in) throw pteams::InputError("cannot read truth file '" + truth_file + "'");
      auto truth = pteams::read_truth_json(in);
      auto report = pteams::verify_against_truth(pteams::load_mined_artifacts(config.out_dir), truth);
      pteams::write_verify_report(std::cout, report);
      return report.recall() + 1e-12 >= min_recall ? 0 : 3;
    }

    pteams::Pipeline pipeline(config, log);
    if (explain->parsed()) {
      std::cout << pipeline.explain(team_id);
      return 0;
    }
    if (run->parsed()) {
      if (run_target == "all") pipeline.run_all(g.force);
      else pipeline.run(pteams::parse_stage(run_target), g.force);
      return 0;
    }
    for (auto& [cmd, stage] : stage_cmds)
      if (cmd->parsed()) pipeline.run(stage, g.force);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "pteams: " << e.what() << '\n';
    return 1;
  }
}

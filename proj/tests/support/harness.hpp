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

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

#include "pteams/pipeline.hpp"
#include "pteams/synth.hpp"

namespace pteams::harness {

namespace fs = std::filesystem;

class Workdir {
 public:
  explicit Workdir(const std::string& tag) {
    static std::atomic<int> counter{0};
    const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
    dir_ = fs::temp_directory_path() /
           ("pteams_" + tag + "_" + std::to_string(stamp) + "_" + std::to_string(counter++));
    fs::create_directories(dir_);
  }
  ~Workdir() {
    std::error_code ec;
    if (std::getenv("PTEAMS_KEEP_WORKDIR") == nullptr) fs::remove_all(dir_, ec);
  }
  Workdir(const Workdir&) = delete;
  Workdir& operator=(const Workdir&) = delete;

  [[nodiscard]] const fs::path& path() const { return dir_; }
  [[nodiscard]] fs::path operator/(const std::string& name) const { return dir_ / name; }

 private:
  fs::path dir_;
};

struct SynthRun {
  GroundTruth truth;
  fs::path pubs;
  fs::path cites;
};

inline SynthRun synthesize(const SynthConfig& config, const fs::path& dir) {
  SynthRun r{{}, dir / "pubs.jsonl", dir / "cites.csv"};
  std::ofstream p(r.pubs), c(r.cites);
  r.truth = generate_corpus(config, p, c);
  return r;
}

inline PipelineConfig pipeline_for(const SynthRun& run, const fs::path& out, int margin = 0, unsigned threads = 0) {
  PipelineConfig cfg;
  cfg.publications = run.pubs;
  cfg.citations = run.cites;
  cfg.out_dir = out;
  cfg.first_year = run.truth.first_year;
  cfg.last_year = run.truth.last_year;
  cfg.margin = margin;
  cfg.threads = threads;
  return cfg;
}

inline VerifyReport verify_dir(const fs::path& out, const GroundTruth& truth) {
  return verify_against_truth(load_mined_artifacts(out), truth);
}

inline std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace pteams::harness

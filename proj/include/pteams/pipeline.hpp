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
#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pteams/common.hpp"

namespace pteams {

enum class Stage : std::uint8_t { Ingest, Tag, Network, Persist, Mine, Teams, Overlaps, Stats };
inline constexpr Stage kStages[] = {Stage::Ingest, Stage::Tag,   Stage::Network,  Stage::Persist,
                                    Stage::Mine,   Stage::Teams, Stage::Overlaps, Stage::Stats};
std::string_view to_string(Stage s);
Stage parse_stage(std::string_view s);

/// Flat key=value settings. Defaults reproduce the reference
/// parameterization: three publications within five years, delta = gamma = 1,
/// top 1% and 10%, window 2008-2020.
struct PipelineConfig {
  std::filesystem::path publications;
  std::filesystem::path citations;  // optional
  std::filesystem::path out_dir = "pteams_out";
  Year first_year = 2008;
  Year last_year = 2020;
  int window_len = 5;
  int min_pubs = 3;
  int delta = 1;
  int gamma = 1;
  std::size_t min_size = 2;
  std::string top10 = "0.10";
  std::string top1 = "0.01";
  std::string citation_window = "inclusive";
  std::size_t author_cap = 0;  // 0 disables the cap
  int margin = 4;
  int cohort_width = 1;
  double rate_bin = 0.25;
  unsigned threads = 0;  // not part of any digest

  /// Applies one `key=value` setting; throws std::invalid_argument for an
  /// unknown key or a bad value.
  void set(std::string_view key, std::string_view value);
  void load_file(const std::filesystem::path& path);
  void validate() const;
  /// Every key with its current value, in a fixed order.
  [[nodiscard]] std::vector<std::pair<std::string, std::string>> entries() const;
  /// Help text listing keys and defaults.
  static std::string describe();
};

/// 64-bit FNV-1a, hex encoded.
std::string fnv1a_hex(std::string_view data);
std::string file_digest(const std::filesystem::path& path);

struct StageOutcome {
  Stage stage = Stage::Ingest;
  bool cached = false;
  std::vector<std::pair<std::string, std::size_t>> outputs;  // file name, data rows
  double seconds = 0.0;
};

/// Raised when a stage cannot run: a prerequisite artifact is missing or out
/// of date. The message names the stage to rerun.
class StageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Pipeline {
 public:
  explicit Pipeline(PipelineConfig config, std::ostream* log = nullptr);
  ~Pipeline();
  Pipeline(const Pipeline&) = delete;
  Pipeline& operator=(const Pipeline&) = delete;

  /// Runs one stage, reusing cached outputs when inputs and settings are
  /// unchanged. Prerequisites are never run implicitly.
  StageOutcome run(Stage stage, bool force = false);
  /// Runs every stage in order.
  std::vector<StageOutcome> run_all(bool force = false);

  /// Human-readable account of one team from the written artifacts.
  std::string explain(TeamId team);

  [[nodiscard]] const PipelineConfig& config() const { return config_; }

 private:
  struct State;
  PipelineConfig config_;
  std::ostream* log_;
  std::unique_ptr<State> state_;
};

}  // namespace pteams

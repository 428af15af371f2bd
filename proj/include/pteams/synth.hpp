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
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "pteams/common.hpp"
#include "pteams/overlap.hpp"
#include "pteams/success.hpp"

namespace pteams {

/// Seeded source for the generator. Built on std::mt19937_64, whose output
/// sequence is fixed by the standard; the integer and real mappings below
/// are spelled out here rather than delegated to the library distributions,
/// whose algorithms differ between standard libraries.
class SynthRng {
 public:
  explicit SynthRng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform on [lo, hi], rejection-sampled so there is no modulo bias.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  /// Uniform on [0, 1) with 53 random bits.
  double real();
  bool chance(double p) { return real() < p; }

 private:
  std::mt19937_64 engine_;
};

/// Overlap structures a planted unit can carry. The first team of every unit
/// is its primary team.
enum class Wiring : std::uint8_t {
  Isolated,                     // one team
  PrecedingCore,                // core C, then C plus extras
  SimultaneousExtension,        // F, and F plus extras starting the same year
  SucceedingExtension,          // F, and F plus extras starting later
  SucceedingOffshoot,           // F, and a later team sharing at least half of F
  PrecedingOffshootSharedCore,  // core S, offshoot S+b, then focal S+a
};
std::string_view to_string(Wiring w);
Wiring parse_wiring(std::string_view s);

struct SuccessPlan {
  Tier tier = Tier::Top1;
  /// Per-age probability of the first success.
  double hazard = 0.0;
  /// Fixed age of the first success; takes precedence over the hazard.
  std::optional<int> first_success_age;
  /// Chance of each publication after the first success being a success.
  double later_rate = 0.0;
};

struct TeamGroup {
  std::size_t units = 0;
  int min_size = 2;
  int max_size = 4;
  /// Span of the whole unit, first to last year.
  int min_duration = 1;
  int max_duration = 5;
  int pubs_per_year = 3;
  Wiring wiring = Wiring::Isolated;
  SuccessPlan primary;
  SuccessPlan partners;
};

struct SynthConfig {
  std::uint64_t seed = 1;
  Year first_year = 2008;
  Year last_year = 2020;
  std::vector<TeamGroup> groups;
  std::size_t noise_authors = 0;
  std::size_t noise_pubs = 0;
  int noise_max_authors = 4;
  /// Chance that a background publication lists one team member.
  double noise_team_author_rate = 0.3;
  double multi_field_rate = 0.1;
  std::size_t n_fields = 5;
  std::size_t n_cities = 40;
  /// Fraction of emitted records that are invalid and must be rejected.
  double reject_rate = 0.0;
  /// Emits the fixed six-author example corpus instead of a random one.
  bool worked_example = false;

  /// Throws std::invalid_argument naming the infeasible setting.
  void validate() const;
};

/// Named configurations: fig-s1, recovery, hazard, shift, overlaps, scale,
/// tiny.
SynthConfig synth_preset(std::string_view name, std::uint64_t seed = 1);

struct PlantedTeam {
  std::string name;
  std::vector<std::string> members;  // sorted
  std::vector<Period> intervals;
};

struct PlantedOverlap {
  std::string focal;
  std::string other;
  OverlapKind kind = OverlapKind::Core;
  Timing timing = Timing::Simultaneous;
  Impulse impulse = Impulse::None;
};

struct GroundTruth {
  std::uint64_t seed = 0;
  Year first_year = 0;
  Year last_year = 0;
  std::size_t publications = 0;  // valid records
  std::size_t planted_rejects = 0;
  std::vector<PlantedTeam> teams;
  std::vector<PlantedOverlap> overlaps;
  std::vector<std::string> top10;  // sorted pub ids
  std::vector<std::string> top1;
};

/// Writes the publication and citation files and returns what was planted.
/// Deterministic for a fixed config.
GroundTruth generate_corpus(const SynthConfig& config, std::ostream& pubs_out, std::ostream& cites_out);

void write_truth_json(std::ostream& out, const GroundTruth& truth);
GroundTruth read_truth_json(std::istream& in);

/// A mined team as written to teams.csv, by author name.
struct MinedTeam {
  std::vector<std::string> members;  // sorted
  std::vector<Period> intervals;
};

struct MinedArtifacts {
  std::vector<MinedTeam> teams;  // index = team id
  std::vector<OverlapRelation> relations;
  std::vector<std::string> top10;  // sorted pub ids
  std::vector<std::string> top1;
  std::size_t tagged_publications = 0;
};

/// Reads teams.csv, overlaps.csv and success_tags.csv from a run directory.
MinedArtifacts load_mined_artifacts(const std::filesystem::path& dir);

struct VerifyReport {
  std::size_t planted = 0;
  std::size_t exact = 0;     // same members and intervals
  std::size_t superset = 0;  // not exact, but some team covers members and intervals
  std::size_t mined = 0;
  std::size_t mined_matching = 0;  // mined teams equal to a planted team
  std::size_t overlaps_planted = 0;
  std::size_t overlaps_matched = 0;
  std::size_t tags_checked = 0;
  std::size_t tags_matched = 0;

  [[nodiscard]] double recall() const { return rate(exact + superset, planted); }
  [[nodiscard]] double exact_recall() const { return rate(exact, planted); }
  [[nodiscard]] double precision() const { return rate(mined_matching, mined); }
  [[nodiscard]] double overlap_match_rate() const { return rate(overlaps_matched, overlaps_planted); }
  [[nodiscard]] double tag_match_rate() const { return rate(tags_matched, tags_checked); }
  [[nodiscard]] bool empty() const { return planted == 0 && mined == 0 && tags_checked == 0; }

 private:
  static double rate(std::size_t k, std::size_t n) {
    return n == 0 ? 1.0 : static_cast<double>(k) / static_cast<double>(n);
  }
};

VerifyReport verify_against_truth(const MinedArtifacts& mined, const GroundTruth& truth);
void write_verify_report(std::ostream& out, const VerifyReport& report);

}  // namespace pteams

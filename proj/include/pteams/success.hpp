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
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "pteams/common.hpp"
#include "pteams/corpus.hpp"

namespace pteams {

/// A percentile fraction held as an exact ratio so that ceil(q * N) never
/// suffers from binary rounding (0.01 * 1000 must be exactly 10).
struct Quantile {
  std::int64_t num = 1;
  std::int64_t den = 100;

  static Quantile from_double(double q);
  [[nodiscard]] double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  /// ceil(q * n)
  [[nodiscard]] std::int64_t rank_cutoff(std::int64_t n) const { return (num * n + den - 1) / den; }
};

enum class CitationWindow : std::uint8_t {
  Inclusive,  // [Y, Y+2]
  Following,  // [Y+1, Y+3]
};
CitationWindow parse_citation_window(const std::string& s);
std::string to_string(CitationWindow w);

struct SuccessTag {
  std::uint32_t citations_3y = 0;
  bool top10 = false;
  bool top1 = false;
};

enum class Tier : std::uint8_t { Top10 = 0, Top1 = 1 };
inline constexpr Tier kTiers[] = {Tier::Top10, Tier::Top1};
inline bool is_top(const SuccessTag& t, Tier tier) { return tier == Tier::Top1 ? t.top1 : t.top10; }
inline const char* to_string(Tier t) { return t == Tier::Top1 ? "top1" : "top10"; }

struct PercentileThreshold {
  std::uint32_t field = 0;
  Year year = 0;
  double q = 0.0;
  std::uint32_t threshold = 1;
  std::uint32_t population = 0;
};

/// Thresholds for one percentile, indexed by (field, year).
class ThresholdTable {
 public:
  ThresholdTable() = default;
  ThresholdTable(Year first_year, Year last_year, std::size_t n_fields);

  void set(const PercentileThreshold& t);
  [[nodiscard]] const PercentileThreshold* find(std::uint32_t field, Year year) const;
  [[nodiscard]] std::vector<PercentileThreshold> rows() const;

 private:
  Year first_year_ = 0;
  Year years_ = 0;
  std::vector<PercentileThreshold> cells_;
  std::vector<bool> present_;
};

/// Counts citation events falling in the three-year window of each cited
/// publication, indexed by PubIndex.
std::vector<std::uint32_t> three_year_citations(const PublicationTable& pubs, const CitationTable& cites,
                                                CitationWindow window = CitationWindow::Inclusive);

/// Per (field, year) cell: rank by count descending, k = ceil(q N); the
/// threshold is the k-th count, floored at 1.
ThresholdTable percentile_thresholds(const PublicationTable& pubs, std::span<const std::uint32_t> counts,
                                     Quantile q);

/// A publication is top-q when its count reaches the threshold of any of its
/// (field, year) cells.
std::vector<SuccessTag> tag_success(const PublicationTable& pubs, std::span<const std::uint32_t> counts,
                                    const ThresholdTable& top10, const ThresholdTable& top1);

struct SuccessConfig {
  Quantile top10{1, 10};
  Quantile top1{1, 100};
  CitationWindow window = CitationWindow::Inclusive;
};

struct SuccessResult {
  std::vector<std::uint32_t> counts;
  ThresholdTable top10;
  ThresholdTable top1;
  std::vector<SuccessTag> tags;
};

SuccessResult compute_success(const PublicationTable& pubs, const CitationTable& cites, const SuccessConfig& config);

void write_success_tags_csv(std::ostream& out, const PublicationTable& pubs, std::span<const SuccessTag> tags);
std::vector<SuccessTag> read_success_tags_csv(std::istream& in, const PublicationTable& pubs);
void write_thresholds_csv(std::ostream& out, const PublicationTable& pubs, const ThresholdTable& top10,
                          const ThresholdTable& top1);

}  // namespace pteams

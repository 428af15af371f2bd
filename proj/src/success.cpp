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

#include "pteams/success.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace pteams {

Quantile Quantile::from_double(double q) {
  if (!(q > 0.0 && q <= 1.0)) throw std::invalid_argument("percentile fraction must lie in (0, 1]");
  constexpr std::int64_t kDen = 1'000'000;
  auto num = static_cast<std::int64_t>(std::llround(q * static_cast<double>(kDen)));
  auto g = std::gcd(num, kDen);
  return {num / g, kDen / g};
}

CitationWindow parse_citation_window(const std::string& s) {
  if (s == "inclusive") return CitationWindow::Inclusive;
  if (s == "following") return CitationWindow::Following;
  throw std::invalid_argument("citation window must be 'inclusive' or 'following', got '" + s + "'");
}

std::string to_string(CitationWindow w) { return w == CitationWindow::Inclusive ? "inclusive" : "following"; }

ThresholdTable::ThresholdTable(Year first_year, Year last_year, std::size_t n_fields)
    : first_year_(first_year), years_(std::max(0, last_year - first_year + 1)) {
  cells_.resize(static_cast<std::size_t>(years_) * n_fields);
  present_.assign(cells_.size(), false);
}

void ThresholdTable::set(const PercentileThreshold& t) {
  auto idx = static_cast<std::size_t>(t.field) * static_cast<std::size_t>(years_) +
             static_cast<std::size_t>(t.year - first_year_);
  cells_.at(idx) = t;
  present_[idx] = true;
}

const PercentileThreshold* ThresholdTable::find(std::uint32_t field, Year year) const {
  if (year < first_year_ || year >= first_year_ + years_) return nullptr;
  auto idx = static_cast<std::size_t>(field) * static_cast<std::size_t>(years_) +
             static_cast<std::size_t>(year - first_year_);
  if (idx >= cells_.size() || !present_[idx]) return nullptr;
  return &cells_[idx];
}

std::vector<PercentileThreshold> ThresholdTable::rows() const {
  std::vector<PercentileThreshold> out;
  for (std::size_t i = 0; i < cells_.size(); ++i)
    if (present_[i]) out.push_back(cells_[i]);
  return out;
}

std::vector<std::uint32_t> three_year_citations(const PublicationTable& pubs, const CitationTable& cites,
                                                CitationWindow window) {
  std::vector<std::uint32_t> counts(pubs.size(), 0);
  const int lo = window == CitationWindow::Inclusive ? 0 : 1;
  for (const auto& e : cites.events) {
    const Year y = pubs.pubs[e.cited].year;
    if (e.citing_year >= y + lo && e.citing_year <= y + lo + 2) ++counts[e.cited];
  }
  return counts;
}

namespace {

std::pair<Year, Year> year_range(const PublicationTable& pubs) {
  if (pubs.pubs.empty()) return {0, -1};
  auto [lo, hi] = std::minmax_element(pubs.pubs.begin(), pubs.pubs.end(),
                                      [](const auto& a, const auto& b) { return a.year < b.year; });
  return {lo->year, hi->year};
}

}  // namespace

ThresholdTable percentile_thresholds(const PublicationTable& pubs, std::span<const std::uint32_t> counts,
                                     Quantile q) {
  auto [first, last] = year_range(pubs);
  ThresholdTable table(first, last, pubs.fields.size());
  if (pubs.pubs.empty()) return table;
  const auto years = static_cast<std::size_t>(last - first + 1);
  std::vector<std::vector<std::uint32_t>> cells(years * pubs.fields.size());
  for (std::size_t i = 0; i < pubs.size(); ++i) {
    const auto& p = pubs.pubs[i];
    for (auto f : p.fields) cells[f * years + static_cast<std::size_t>(p.year - first)].push_back(counts[i]);
  }
  for (std::size_t c = 0; c < cells.size(); ++c) {
    auto& v = cells[c];
    if (v.empty()) continue;
    const auto n = static_cast<std::int64_t>(v.size());
    const auto k = std::clamp<std::int64_t>(q.rank_cutoff(n), 1, n);
    std::nth_element(v.begin(), v.begin() + (k - 1), v.end(), std::greater<>());
    PercentileThreshold t;
    t.field = static_cast<std::uint32_t>(c / years);
    t.year = first + static_cast<Year>(c % years);
    t.q = q.value();
    t.threshold = std::max<std::uint32_t>(1, v[static_cast<std::size_t>(k - 1)]);
    t.population = static_cast<std::uint32_t>(n);
    table.set(t);
  }
  return table;
}

std::vector<SuccessTag> tag_success(const PublicationTable& pubs, std::span<const std::uint32_t> counts,
                                    const ThresholdTable& top10, const ThresholdTable& top1) {
  std::vector<SuccessTag> tags(pubs.size());
  for (std::size_t i = 0; i < pubs.size(); ++i) {
    const auto& p = pubs.pubs[i];
    auto& tag = tags[i];
    tag.citations_3y = counts[i];
    for (auto f : p.fields) {
      const auto* t10 = top10.find(f, p.year);
      const auto* t1 = top1.find(f, p.year);
      if (t10 == nullptr || t1 == nullptr)
        throw InternalError("no percentile threshold for publication '" + p.pub_id + "'");
      tag.top10 = tag.top10 || counts[i] >= t10->threshold;
      tag.top1 = tag.top1 || counts[i] >= t1->threshold;
    }
  }
  return tags;
}

SuccessResult compute_success(const PublicationTable& pubs, const CitationTable& cites, const SuccessConfig& config) {
  SuccessResult r;
  r.counts = three_year_citations(pubs, cites, config.window);
  r.top10 = percentile_thresholds(pubs, r.counts, config.top10);
  r.top1 = percentile_thresholds(pubs, r.counts, config.top1);
  r.tags = tag_success(pubs, r.counts, r.top10, r.top1);
  return r;
}

void write_success_tags_csv(std::ostream& out, const PublicationTable& pubs, std::span<const SuccessTag> tags) {
  out << "pub_id,citations_3y,top10,top1\n";
  for (std::size_t i = 0; i < tags.size(); ++i)
    out << pubs.pubs[i].pub_id << ',' << tags[i].citations_3y << ',' << (tags[i].top10 ? 1 : 0) << ','
        << (tags[i].top1 ? 1 : 0) << '\n';
}

std::vector<SuccessTag> read_success_tags_csv(std::istream& in, const PublicationTable& pubs) {
  std::vector<SuccessTag> tags(pubs.size());
  std::vector<bool> seen(pubs.size(), false);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1) continue;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string id, c, t10, t1;
    if (!std::getline(row, id, ',') || !std::getline(row, c, ',') || !std::getline(row, t10, ',') ||
        !std::getline(row, t1))
      throw InputError("success_tags line " + std::to_string(line_no) + ": malformed row");
    auto idx = pubs.find(id);
    if (!idx) throw InputError("success_tags line " + std::to_string(line_no) + ": unknown pub_id '" + id + "'");
    tags[*idx] = {static_cast<std::uint32_t>(std::stoul(c)), t10 == "1", t1 == "1"};
    seen[*idx] = true;
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    throw InputError("success_tags does not cover every publication");
  return tags;
}

void write_thresholds_csv(std::ostream& out, const PublicationTable& pubs, const ThresholdTable& top10,
                          const ThresholdTable& top1) {
  out << "field,year,q,threshold,population\n";
  for (const auto* table : {&top10, &top1})
    for (const auto& t : table->rows())
      out << pubs.fields.name(t.field) << ',' << t.year << ',' << t.q << ',' << t.threshold << ',' << t.population
          << '\n';
}

}  // namespace pteams

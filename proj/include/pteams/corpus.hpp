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

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pteams/common.hpp"

namespace pteams {

enum class DocType : std::uint8_t { Article, Review, Letter, ProceedingsPaper };
inline constexpr std::array<DocType, 4> kDocTypes = {
    DocType::Article, DocType::Review, DocType::Letter, DocType::ProceedingsPaper};

std::string_view to_string(DocType t);
/// Accepts "Article", "Review", "Letter", "Proceedings Paper" and the usual
/// spelling variants; anything else is not a retained document type.
std::optional<DocType> parse_doc_type(std::string_view s);

struct GeoPoint {
  double lat = 0.0;
  double lon = 0.0;
  auto operator<=>(const GeoPoint&) const = default;
};

/// Interned string ids. Indices follow lexicographic order of the names once
/// the owning table is finalized.
class Dictionary {
 public:
  std::uint32_t intern(std::string_view name);
  [[nodiscard]] std::optional<std::uint32_t> find(std::string_view name) const;
  [[nodiscard]] const std::string& name(std::uint32_t id) const { return names_[id]; }
  [[nodiscard]] std::size_t size() const { return names_.size(); }
  [[nodiscard]] const std::vector<std::string>& names() const { return names_; }

  /// Reorders ids lexicographically; returns old id -> new id.
  std::vector<std::uint32_t> sort();

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

inline constexpr std::int32_t kNone = -1;

struct Affiliation {
  std::int32_t org = kNone;
  std::int32_t city = kNone;
  std::int32_t country = kNone;
  std::optional<GeoPoint> location;
};

struct AuthorEntry {
  AuthorId author = 0;
  std::vector<Affiliation> affiliations;
};

struct Publication {
  std::string pub_id;
  Year year = 0;
  DocType doc_type = DocType::Article;
  std::vector<std::uint32_t> fields;  // sorted, distinct
  std::vector<AuthorEntry> authors;   // file order
};

struct PublicationTable {
  std::vector<Publication> pubs;
  Dictionary authors;
  Dictionary fields;
  Dictionary orgs;
  Dictionary cities;
  Dictionary countries;
  /// Canonical coordinates per city id: smallest (lat, lon) seen for it.
  std::vector<std::optional<GeoPoint>> city_location;
  std::unordered_map<std::string, PubIndex> by_id;

  [[nodiscard]] std::size_t size() const { return pubs.size(); }
  [[nodiscard]] std::optional<PubIndex> find(std::string_view pub_id) const;
  [[nodiscard]] const std::string& author_name(AuthorId a) const { return authors.name(a); }
  /// Sorted author ids of publication i.
  [[nodiscard]] std::vector<AuthorId> author_set(PubIndex i) const;
};

struct IngestConfig {
  Year first_year = 2008;
  Year last_year = 2020;
  unsigned threads = 0;
};

enum class RejectReason : std::uint8_t {
  DocType,
  YearWindow,
  NoFields,
  NoAuthors,
  DuplicateAuthor,
  NoAffiliation,
  UnlocatedAffiliation,
  BadCoordinates,
  BadCountry,
  BadIdentifier,
};
inline constexpr std::size_t kRejectReasonCount = 10;
std::string_view to_string(RejectReason r);

struct Reject {
  std::size_t line = 0;  // 1-based
  RejectReason reason = RejectReason::DocType;
};

struct IngestReport {
  std::size_t lines = 0;  // non-blank input lines
  std::size_t accepted = 0;
  std::vector<Reject> rejects;

  [[nodiscard]] std::size_t count(RejectReason r) const;
  [[nodiscard]] double rejected_percent() const;
};

struct LoadedPublications {
  PublicationTable table;
  IngestReport report;
};

/// Reads line-delimited JSON publication records. Records failing validation
/// are rejected with a reason; malformed lines and duplicate pub_ids throw
/// InputError.
LoadedPublications load_publications(const std::filesystem::path& path, const IngestConfig& config);
LoadedPublications parse_publications(std::istream& in, const IngestConfig& config);

/// Writes the canonical form of the table (one JSON object per line, fixed
/// key order). Loading the output reproduces an identical table.
void write_publications(std::ostream& out, const PublicationTable& table);
void write_rejects_csv(std::ostream& out, const IngestReport& report);

struct CitationEvent {
  std::string citing_pub_id;
  PubIndex cited = 0;
  Year citing_year = 0;
};

struct CitationReport {
  std::size_t read = 0;
  std::size_t stored = 0;
  std::size_t unknown_cited = 0;
  std::size_t before_cited_year = 0;
  std::size_t missing_year = 0;
};

struct CitationTable {
  std::vector<CitationEvent> events;
  CitationReport report;
};

/// Reads `citing_pub_id,cited_pub_id,citing_year` rows (header required).
CitationTable load_citations(const std::filesystem::path& path, const PublicationTable& pubs);
CitationTable parse_citations(std::istream& in, const PublicationTable& pubs);
void write_citations(std::ostream& out, const CitationTable& cites, const PublicationTable& pubs);

struct SuccessTag;

struct DocTypeRow {
  DocType type = DocType::Article;
  std::array<std::size_t, 3> count{};  // all, top10, top1
  std::array<double, 3> percent{};
};

struct CorpusStats {
  std::array<DocTypeRow, 4> rows{};
  std::array<std::size_t, 3> totals{};
  /// Set when a population is empty; its percentages are reported as 0.
  std::array<bool, 3> empty{};
};

CorpusStats corpus_stats(const PublicationTable& pubs, std::span<const SuccessTag> tags);
void write_corpus_stats_csv(std::ostream& out, const CorpusStats& stats);

/// Full scan of the table against every record invariant; returns the first
/// violation found or nullopt.
std::optional<std::string> check_table_invariants(const PublicationTable& table, const IngestConfig& config);

}  // namespace pteams

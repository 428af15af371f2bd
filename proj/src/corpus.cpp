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

#include "pteams/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "pteams/success.hpp"

namespace pteams {

namespace {

using nlohmann::json;

struct RawAffiliation {
  std::optional<std::string> org;
  std::optional<std::string> city;
  std::optional<std::string> country;
  std::optional<double> lat;
  std::optional<double> lon;
};

struct RawAuthor {
  std::string id;
  std::vector<RawAffiliation> affiliations;
};

struct RawRecord {
  std::string pub_id;
  long long year = 0;
  std::string doc_type;
  std::vector<std::string> fields;
  std::vector<RawAuthor> authors;
};

struct ParsedLine {
  std::size_t line = 0;
  RawRecord record;
  std::string error;  // non-empty when malformed
};

const json& require(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw std::runtime_error(std::string("missing key '") + key + "'");
  return *it;
}

std::string require_string(const json& obj, const char* key) {
  const json& v = require(obj, key);
  if (!v.is_string()) throw std::runtime_error(std::string("key '") + key + "' must be a string");
  return v.get<std::string>();
}

std::optional<std::string> optional_string(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw std::runtime_error(std::string("key '") + key + "' must be a string");
  return it->get<std::string>();
}

std::optional<double> optional_number(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_number()) throw std::runtime_error(std::string("key '") + key + "' must be a number");
  return it->get<double>();
}

RawRecord parse_record(std::string_view text) {
  json j = json::parse(text);
  if (!j.is_object()) throw std::runtime_error("record is not a JSON object");
  RawRecord r;
  r.pub_id = require_string(j, "pub_id");
  const json& year = require(j, "year");
  if (!year.is_number_integer()) throw std::runtime_error("key 'year' must be an integer");
  r.year = year.get<long long>();
  r.doc_type = require_string(j, "doc_type");
  const json& fields = require(j, "fields");
  if (!fields.is_array()) throw std::runtime_error("key 'fields' must be an array");
  for (const auto& f : fields) {
    if (!f.is_string()) throw std::runtime_error("field identifiers must be strings");
    r.fields.push_back(f.get<std::string>());
  }
  const json& authors = require(j, "authors");
  if (!authors.is_array()) throw std::runtime_error("key 'authors' must be an array");
  for (const auto& a : authors) {
    if (!a.is_object()) throw std::runtime_error("author entries must be objects");
    RawAuthor ra;
    ra.id = require_string(a, "author_id");
    const json& affs = require(a, "affiliations");
    if (!affs.is_array()) throw std::runtime_error("key 'affiliations' must be an array");
    for (const auto& af : affs) {
      if (!af.is_object()) throw std::runtime_error("affiliations must be objects");
      RawAffiliation raf;
      raf.org = optional_string(af, "org_id");
      raf.city = optional_string(af, "city_id");
      raf.country = optional_string(af, "country");
      raf.lat = optional_number(af, "lat");
      raf.lon = optional_number(af, "lon");
      ra.affiliations.push_back(std::move(raf));
    }
    r.authors.push_back(std::move(ra));
  }
  return r;
}

bool valid_identifier(std::string_view s) {
  if (s.empty()) return false;
  return std::none_of(s.begin(), s.end(), [](char c) {
    return c == ',' || c == ';' || c == '"' || c == '\n' || c == '\r';
  });
}

std::optional<RejectReason> validate(const RawRecord& r, const IngestConfig& config) {
  if (!valid_identifier(r.pub_id)) return RejectReason::BadIdentifier;
  for (const auto& f : r.fields)
    if (!valid_identifier(f)) return RejectReason::BadIdentifier;
  for (const auto& a : r.authors) {
    if (!valid_identifier(a.id)) return RejectReason::BadIdentifier;
    for (const auto& af : a.affiliations) {
      if ((af.org && !valid_identifier(*af.org)) || (af.city && !valid_identifier(*af.city)))
        return RejectReason::BadIdentifier;
    }
  }
  if (!parse_doc_type(r.doc_type)) return RejectReason::DocType;
  if (r.year < config.first_year || r.year > config.last_year) return RejectReason::YearWindow;
  if (r.fields.empty()) return RejectReason::NoFields;
  if (r.authors.empty()) return RejectReason::NoAuthors;
  {
    std::vector<std::string_view> ids;
    ids.reserve(r.authors.size());
    for (const auto& a : r.authors) ids.emplace_back(a.id);
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) return RejectReason::DuplicateAuthor;
  }
  for (const auto& a : r.authors) {
    if (a.affiliations.empty()) return RejectReason::NoAffiliation;
    for (const auto& af : a.affiliations) {
      if (af.lat.has_value() != af.lon.has_value()) return RejectReason::BadCoordinates;
      if (af.lat && (!std::isfinite(*af.lat) || !std::isfinite(*af.lon) || *af.lat < -90.0 || *af.lat > 90.0 ||
                     *af.lon < -180.0 || *af.lon > 180.0))
        return RejectReason::BadCoordinates;
      if (!af.org && !af.lat) return RejectReason::UnlocatedAffiliation;
      if (af.country) {
        const auto& c = *af.country;
        if (c.size() != 2 || !std::isupper(static_cast<unsigned char>(c[0])) ||
            !std::isupper(static_cast<unsigned char>(c[1])))
          return RejectReason::BadCountry;
      }
    }
  }
  return std::nullopt;
}

std::int32_t intern_optional(Dictionary& d, const std::optional<std::string>& s) {
  return s ? static_cast<std::int32_t>(d.intern(*s)) : kNone;
}

Publication convert(RawRecord&& r, PublicationTable& t) {
  Publication p;
  p.pub_id = std::move(r.pub_id);
  p.year = static_cast<Year>(r.year);
  p.doc_type = *parse_doc_type(r.doc_type);
  for (const auto& f : r.fields) p.fields.push_back(t.fields.intern(f));
  p.authors.reserve(r.authors.size());
  for (auto& a : r.authors) {
    AuthorEntry e;
    e.author = t.authors.intern(a.id);
    for (auto& af : a.affiliations) {
      Affiliation x;
      x.org = intern_optional(t.orgs, af.org);
      x.city = intern_optional(t.cities, af.city);
      x.country = intern_optional(t.countries, af.country);
      if (af.lat) x.location = GeoPoint{*af.lat, *af.lon};
      e.affiliations.push_back(x);
    }
    p.authors.push_back(std::move(e));
  }
  return p;
}

std::int32_t remap(std::int32_t id, const std::vector<std::uint32_t>& m) {
  return id == kNone ? kNone : static_cast<std::int32_t>(m[static_cast<std::size_t>(id)]);
}

void finalize(PublicationTable& t) {
  auto author_map = t.authors.sort();
  auto field_map = t.fields.sort();
  auto org_map = t.orgs.sort();
  auto city_map = t.cities.sort();
  auto country_map = t.countries.sort();
  t.city_location.assign(t.cities.size(), std::nullopt);
  t.by_id.clear();
  t.by_id.reserve(t.pubs.size());
  for (std::size_t i = 0; i < t.pubs.size(); ++i) {
    auto& p = t.pubs[i];
    for (auto& f : p.fields) f = field_map[f];
    std::sort(p.fields.begin(), p.fields.end());
    p.fields.erase(std::unique(p.fields.begin(), p.fields.end()), p.fields.end());
    for (auto& a : p.authors) {
      a.author = author_map[a.author];
      for (auto& af : a.affiliations) {
        af.org = remap(af.org, org_map);
        af.city = remap(af.city, city_map);
        af.country = remap(af.country, country_map);
        if (af.city != kNone && af.location) {
          auto& loc = t.city_location[static_cast<std::size_t>(af.city)];
          if (!loc || *af.location < *loc) loc = af.location;
        }
      }
    }
    t.by_id.emplace(p.pub_id, static_cast<PubIndex>(i));
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    auto next = s.find(sep, pos);
    if (next == std::string_view::npos) {
      out.push_back(s.substr(pos));
      return out;
    }
    out.push_back(s.substr(pos, next - pos));
    pos = next + 1;
  }
}

}  // namespace

std::string_view to_string(DocType t) {
  switch (t) {
    case DocType::Article: return "Article";
    case DocType::Review: return "Review";
    case DocType::Letter: return "Letter";
    case DocType::ProceedingsPaper: return "Proceedings Paper";
  }
  return "?";
}

std::optional<DocType> parse_doc_type(std::string_view s) {
  if (s == "Article") return DocType::Article;
  if (s == "Review") return DocType::Review;
  if (s == "Letter") return DocType::Letter;
  if (s == "Proceedings Paper" || s == "Proceeding Paper" || s == "ProceedingsPaper") return DocType::ProceedingsPaper;
  return std::nullopt;
}

std::string_view to_string(RejectReason r) {
  switch (r) {
    case RejectReason::DocType: return "doc_type";
    case RejectReason::YearWindow: return "year_window";
    case RejectReason::NoFields: return "no_fields";
    case RejectReason::NoAuthors: return "no_authors";
    case RejectReason::DuplicateAuthor: return "duplicate_author";
    case RejectReason::NoAffiliation: return "no_affiliation";
    case RejectReason::UnlocatedAffiliation: return "unlocated_affiliation";
    case RejectReason::BadCoordinates: return "bad_coordinates";
    case RejectReason::BadCountry: return "bad_country";
    case RejectReason::BadIdentifier: return "bad_identifier";
  }
  return "?";
}

std::uint32_t Dictionary::intern(std::string_view name) {
  auto it = index_.find(std::string(name));
  if (it != index_.end()) return it->second;
  auto id = static_cast<std::uint32_t>(names_.size());
  names_.emplace_back(name);
  index_.emplace(names_.back(), id);
  return id;
}

std::optional<std::uint32_t> Dictionary::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::uint32_t> Dictionary::sort() {
  std::vector<std::uint32_t> order(names_.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](auto x, auto y) { return names_[x] < names_[y]; });
  std::vector<std::uint32_t> old_to_new(names_.size());
  std::vector<std::string> sorted;
  sorted.reserve(names_.size());
  for (std::uint32_t i = 0; i < order.size(); ++i) {
    old_to_new[order[i]] = i;
    sorted.push_back(std::move(names_[order[i]]));
  }
  names_ = std::move(sorted);
  for (std::uint32_t i = 0; i < names_.size(); ++i) index_[names_[i]] = i;
  return old_to_new;
}

std::optional<PubIndex> PublicationTable::find(std::string_view pub_id) const {
  auto it = by_id.find(std::string(pub_id));
  if (it == by_id.end()) return std::nullopt;
  return it->second;
}

std::vector<AuthorId> PublicationTable::author_set(PubIndex i) const {
  std::vector<AuthorId> out;
  out.reserve(pubs[i].authors.size());
  for (const auto& a : pubs[i].authors) out.push_back(a.author);
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t IngestReport::count(RejectReason r) const {
  return static_cast<std::size_t>(
      std::count_if(rejects.begin(), rejects.end(), [r](const Reject& x) { return x.reason == r; }));
}

double IngestReport::rejected_percent() const {
  return lines == 0 ? 0.0 : 100.0 * static_cast<double>(rejects.size()) / static_cast<double>(lines);
}

LoadedPublications parse_publications(std::istream& in, const IngestConfig& config) {
  constexpr std::size_t kBlock = 1 << 15;
  LoadedPublications out;
  auto& table = out.table;
  auto& report = out.report;
  std::unordered_set<std::string> seen_ids;

  std::vector<std::pair<std::size_t, std::string>> block;
  std::vector<ParsedLine> parsed;
  std::size_t line_no = 0;
  std::string line;
  bool eof = false;
  while (!eof) {
    block.clear();
    while (block.size() < kBlock) {
      if (!std::getline(in, line)) {
        eof = true;
        break;
      }
      ++line_no;
      if (trim(line).empty()) continue;
      block.emplace_back(line_no, std::move(line));
      line.clear();
    }
    parsed.assign(block.size(), ParsedLine{});
    parallel_for(block.size(), config.threads, [&](std::size_t i) {
      parsed[i].line = block[i].first;
      try {
        parsed[i].record = parse_record(block[i].second);
      } catch (const std::exception& e) {
        parsed[i].error = e.what();
      }
    });
    for (auto& p : parsed) {
      if (!p.error.empty())
        throw InputError("publications line " + std::to_string(p.line) + ": malformed record: " + p.error);
      ++report.lines;
      if (!seen_ids.insert(p.record.pub_id).second)
        throw InputError("publications line " + std::to_string(p.line) + ": duplicate pub_id '" +
                         p.record.pub_id + "'");
      if (auto reason = validate(p.record, config)) {
        report.rejects.push_back({p.line, *reason});
        continue;
      }
      table.pubs.push_back(convert(std::move(p.record), table));
      ++report.accepted;
    }
  }
  if (in.bad()) throw InputError("error while reading publications");
  finalize(table);
  return out;
}

LoadedPublications load_publications(const std::filesystem::path& path, const IngestConfig& config) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read publications file '" + path.string() + "'");
  return parse_publications(in, config);
}

void write_publications(std::ostream& out, const PublicationTable& t) {
  for (const auto& p : t.pubs) {
    nlohmann::ordered_json j;
    j["pub_id"] = p.pub_id;
    j["year"] = p.year;
    j["doc_type"] = to_string(p.doc_type);
    auto& fields = j["fields"] = nlohmann::ordered_json::array();
    for (auto f : p.fields) fields.push_back(t.fields.name(f));
    auto& authors = j["authors"] = nlohmann::ordered_json::array();
    for (const auto& a : p.authors) {
      nlohmann::ordered_json ja;
      ja["author_id"] = t.authors.name(a.author);
      auto& affs = ja["affiliations"] = nlohmann::ordered_json::array();
      for (const auto& af : a.affiliations) {
        nlohmann::ordered_json jf = nlohmann::ordered_json::object();
        if (af.org != kNone) jf["org_id"] = t.orgs.name(static_cast<std::uint32_t>(af.org));
        if (af.city != kNone) jf["city_id"] = t.cities.name(static_cast<std::uint32_t>(af.city));
        if (af.country != kNone) jf["country"] = t.countries.name(static_cast<std::uint32_t>(af.country));
        if (af.location) {
          jf["lat"] = af.location->lat;
          jf["lon"] = af.location->lon;
        }
        affs.push_back(std::move(jf));
      }
      authors.push_back(std::move(ja));
    }
    out << j.dump() << '\n';
  }
}

void write_rejects_csv(std::ostream& out, const IngestReport& report) {
  out << "line,reason\n";
  for (const auto& r : report.rejects) out << r.line << ',' << to_string(r.reason) << '\n';
}

CitationTable parse_citations(std::istream& in, const PublicationTable& pubs) {
  CitationTable table;
  auto& rep = table.report;
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    auto text = trim(line);
    if (text.empty()) continue;
    if (!header) {
      if (text != "citing_pub_id,cited_pub_id,citing_year")
        throw InputError("citations line " + std::to_string(line_no) +
                         ": expected header 'citing_pub_id,cited_pub_id,citing_year'");
      header = true;
      continue;
    }
    auto cols = split(text, ',');
    if (cols.size() != 3 || trim(cols[0]).empty() || trim(cols[1]).empty())
      throw InputError("citations line " + std::to_string(line_no) + ": malformed row");
    ++rep.read;
    auto citing = trim(cols[0]);
    auto cited = pubs.find(trim(cols[1]));
    if (!cited) {
      ++rep.unknown_cited;
      continue;
    }
    std::optional<Year> year;
    auto ytext = trim(cols[2]);
    if (!ytext.empty()) {
      Year y = 0;
      auto [ptr, ec] = std::from_chars(ytext.data(), ytext.data() + ytext.size(), y);
      if (ec != std::errc() || ptr != ytext.data() + ytext.size())
        throw InputError("citations line " + std::to_string(line_no) + ": bad citing_year '" +
                         std::string(ytext) + "'");
      year = y;
    } else if (auto ci = pubs.find(citing)) {
      year = pubs.pubs[*ci].year;
    }
    if (!year) {
      ++rep.missing_year;
      continue;
    }
    if (*year < pubs.pubs[*cited].year) {
      ++rep.before_cited_year;
      continue;
    }
    table.events.push_back({std::string(citing), *cited, *year});
    ++rep.stored;
  }
  if (in.bad()) throw InputError("error while reading citations");
  return table;
}

CitationTable load_citations(const std::filesystem::path& path, const PublicationTable& pubs) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read citations file '" + path.string() + "'");
  return parse_citations(in, pubs);
}

void write_citations(std::ostream& out, const CitationTable& cites, const PublicationTable& pubs) {
  out << "citing_pub_id,cited_pub_id,citing_year\n";
  for (const auto& e : cites.events)
    out << e.citing_pub_id << ',' << pubs.pubs[e.cited].pub_id << ',' << e.citing_year << '\n';
}

CorpusStats corpus_stats(const PublicationTable& pubs, std::span<const SuccessTag> tags) {
  CorpusStats s;
  for (std::size_t i = 0; i < kDocTypes.size(); ++i) s.rows[i].type = kDocTypes[i];
  for (std::size_t i = 0; i < pubs.size(); ++i) {
    auto& row = s.rows[static_cast<std::size_t>(pubs.pubs[i].doc_type)];
    ++row.count[0];
    if (i < tags.size() && tags[i].top10) ++row.count[1];
    if (i < tags.size() && tags[i].top1) ++row.count[2];
  }
  for (std::size_t c = 0; c < 3; ++c) {
    for (const auto& r : s.rows) s.totals[c] += r.count[c];
    s.empty[c] = s.totals[c] == 0;
    for (auto& r : s.rows)
      r.percent[c] = s.empty[c] ? 0.0 : 100.0 * static_cast<double>(r.count[c]) / static_cast<double>(s.totals[c]);
  }
  return s;
}

void write_corpus_stats_csv(std::ostream& out, const CorpusStats& stats) {
  out << "doc_type,all_count,all_percent,top10_count,top10_percent,top1_count,top1_percent\n";
  char buf[64];
  for (const auto& r : stats.rows) {
    out << to_string(r.type);
    for (std::size_t c = 0; c < 3; ++c) {
      std::snprintf(buf, sizeof buf, "%.2f", r.percent[c]);
      out << ',' << r.count[c] << ',' << buf;
    }
    out << '\n';
  }
  out << "empty_population," << (stats.empty[0] ? 1 : 0) << ",," << (stats.empty[1] ? 1 : 0) << ",,"
      << (stats.empty[2] ? 1 : 0) << ",\n";
}

std::optional<std::string> check_table_invariants(const PublicationTable& t, const IngestConfig& config) {
  std::unordered_set<std::string_view> ids;
  for (std::size_t i = 0; i < t.pubs.size(); ++i) {
    const auto& p = t.pubs[i];
    auto where = "pub '" + p.pub_id + "': ";
    if (!ids.insert(p.pub_id).second) return where + "duplicate pub_id";
    if (p.year < config.first_year || p.year > config.last_year) return where + "year outside window";
    if (p.fields.empty()) return where + "no fields";
    if (p.authors.empty()) return where + "no authors";
    auto set = t.author_set(static_cast<PubIndex>(i));
    if (std::adjacent_find(set.begin(), set.end()) != set.end()) return where + "repeated author";
    for (const auto& a : p.authors) {
      if (a.affiliations.empty()) return where + "author without affiliation";
      for (const auto& af : a.affiliations) {
        if (af.org == kNone && !af.location) return where + "affiliation without org or location";
        if (af.location && (std::abs(af.location->lat) > 90.0 || std::abs(af.location->lon) > 180.0))
          return where + "coordinates out of range";
      }
    }
  }
  return std::nullopt;
}

}  // namespace pteams

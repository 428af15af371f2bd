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

#include <sstream>
#include <string>
#include <vector>

#include "pteams/corpus.hpp"
#include "pteams/success.hpp"

namespace pteams::testing {

struct Rec {
  std::string id;
  int year = 1;
  std::vector<std::string> authors;
  std::vector<std::string> fields = {"F1"};
  std::string doc = "Article";
  std::string country = "NL";
  double lat = 52.0;
  double lon = 4.5;
  std::string city = "C1";
};

inline std::string to_json(const Rec& r) {
  std::ostringstream o;
  o << "{\"pub_id\":\"" << r.id << "\",\"year\":" << r.year << ",\"doc_type\":\"" << r.doc << "\",\"fields\":[";
  for (std::size_t i = 0; i < r.fields.size(); ++i) o << (i ? "," : "") << '"' << r.fields[i] << '"';
  o << "],\"authors\":[";
  for (std::size_t i = 0; i < r.authors.size(); ++i) {
    o << (i ? "," : "") << "{\"author_id\":\"" << r.authors[i] << "\",\"affiliations\":[{\"org_id\":\"O"
      << r.authors[i] << "\",\"city_id\":\"" << r.city << "\",\"country\":\"" << r.country << "\",\"lat\":" << r.lat
      << ",\"lon\":" << r.lon << "}]}";
  }
  o << "]}";
  return o.str();
}

inline std::string to_jsonl(const std::vector<Rec>& recs) {
  std::string s;
  for (const auto& r : recs) s += to_json(r) + "\n";
  return s;
}

inline LoadedPublications load(const std::vector<Rec>& recs, Year first = 1, Year last = 20) {
  std::istringstream in(to_jsonl(recs));
  return parse_publications(in, IngestConfig{first, last, 1});
}

inline PublicationTable table(const std::vector<Rec>& recs, Year first = 1, Year last = 20) {
  return load(recs, first, last).table;
}

inline AuthorId aid(const PublicationTable& t, const std::string& name) { return *t.authors.find(name); }

inline CitationTable cites(const PublicationTable& t, const std::string& csv) {
  std::istringstream in("citing_pub_id,cited_pub_id,citing_year\n" + csv);
  return parse_citations(in, t);
}

}  // namespace pteams::testing

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

#include <sstream>

#include "fixtures.hpp"
#include "pteams/corpus.hpp"
#include "pteams/success.hpp"

namespace pteams {
namespace {

using testing::Rec;

std::vector<Rec> articles(int n) {
  std::vector<Rec> v;
  for (int i = 0; i < n; ++i) v.push_back({"P" + std::to_string(i), 1 + i % 5, {"A", "B" + std::to_string(i % 7)}});
  return v;
}

TEST(Ingest, AllValidArticlesAccepted) {
  auto r = testing::load(articles(100));
  EXPECT_EQ(r.table.size(), 100u);
  EXPECT_TRUE(r.report.rejects.empty());
  EXPECT_EQ(r.report.lines, 100u);
}

TEST(Ingest, EditorialRejectedByDocType) {
  Rec e{"E1", 3, {"A", "B"}};
  e.doc = "Editorial";
  auto r = testing::load({e});
  EXPECT_EQ(r.table.size(), 0u);
  ASSERT_EQ(r.report.rejects.size(), 1u);
  EXPECT_EQ(r.report.rejects[0].reason, RejectReason::DocType);
  EXPECT_EQ(r.report.rejects[0].line, 1u);
}

TEST(Ingest, AllFourDocTypesAccepted) {
  std::vector<Rec> v;
  const char* docs[] = {"Article", "Review", "Letter", "Proceedings Paper"};
  for (int i = 0; i < 4; ++i) {
    v.push_back({"P" + std::to_string(i), 2, {"A"}});
    v.back().doc = docs[i];
  }
  EXPECT_EQ(testing::load(v).table.size(), 4u);
}

TEST(Ingest, RejectShareMatchesConstruction) {
  // 867 of 1000 records survive.
  auto v = articles(1000);
  for (int i = 0; i < 133; ++i) v[static_cast<std::size_t>(i * 7)].doc = "Meeting Abstract";
  auto r = testing::load(v);
  EXPECT_EQ(r.report.accepted, 867u);
  EXPECT_NEAR(r.report.rejected_percent(), 13.3, 1e-9);
  EXPECT_EQ(r.report.accepted + r.report.rejects.size(), r.report.lines);
}

TEST(Ingest, RejectReasons) {
  Rec window{"W", 30, {"A", "B"}};
  Rec nofield{"NF", 2, {"A", "B"}, {}};
  Rec noauth{"NA", 2, {}};
  Rec dup{"D", 2, {"A", "A"}};
  Rec badcountry{"BC", 2, {"A", "B"}};
  badcountry.country = "nld";
  Rec badlat{"BL", 2, {"A", "B"}};
  badlat.lat = 91;
  auto r = testing::load({window, nofield, noauth, dup, badcountry, badlat}, 1, 20);
  EXPECT_EQ(r.table.size(), 0u);
  ASSERT_EQ(r.report.rejects.size(), 6u);
  EXPECT_EQ(r.report.count(RejectReason::YearWindow), 1u);
  EXPECT_EQ(r.report.count(RejectReason::NoFields), 1u);
  EXPECT_EQ(r.report.count(RejectReason::NoAuthors), 1u);
  EXPECT_EQ(r.report.count(RejectReason::DuplicateAuthor), 1u);
  EXPECT_EQ(r.report.count(RejectReason::BadCountry), 1u);
  EXPECT_EQ(r.report.count(RejectReason::BadCoordinates), 1u);
}

TEST(Ingest, MissingAffiliationLinkageRejectsWholeRecord) {
  std::istringstream in(
      R"({"pub_id":"X","year":2,"doc_type":"Article","fields":["F"],"authors":[)"
      R"({"author_id":"A","affiliations":[{"org_id":"O1"}]},)"
      R"({"author_id":"B","affiliations":[{"city_id":"C1","country":"NL"}]}]})"
      "\n"
      R"({"pub_id":"Y","year":2,"doc_type":"Article","fields":["F"],"authors":[)"
      R"({"author_id":"A","affiliations":[]}]})"
      "\n"
      R"({"pub_id":"Z","year":2,"doc_type":"Article","fields":["F"],"authors":[)"
      R"({"author_id":"A","affiliations":[{"lat":1.5,"lon":2.5}]}]})"
      "\n");
  auto r = parse_publications(in, {1, 20, 1});
  EXPECT_EQ(r.report.count(RejectReason::UnlocatedAffiliation), 1u);
  EXPECT_EQ(r.report.count(RejectReason::NoAffiliation), 1u);
  ASSERT_EQ(r.table.size(), 1u);
  EXPECT_EQ(r.table.pubs[0].pub_id, "Z");
}

TEST(Ingest, MalformedLineReportsLineNumber) {
  std::istringstream in(testing::to_json({"P1", 2, {"A"}}) + "\n\n{\"pub_id\": oops}\n");
  try {
    parse_publications(in, {1, 20, 1});
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(Ingest, DuplicatePubIdIsFatal) {
  EXPECT_THROW(testing::load({{"P1", 2, {"A"}}, {"P1", 3, {"B"}}}), InputError);
}

TEST(Ingest, UnreadableFile) {
  EXPECT_THROW(load_publications("/nonexistent/pubs.jsonl", {}), InputError);
}

TEST(Ingest, CanonicalRoundTripIsIdempotent) {
  auto v = articles(50);
  v[3].fields = {"F2", "F1", "F2"};
  auto t1 = testing::table(v);
  std::ostringstream a;
  write_publications(a, t1);
  std::istringstream in(a.str());
  auto t2 = parse_publications(in, {1, 20, 1}).table;
  std::ostringstream b;
  write_publications(b, t2);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(t1.pubs[3].fields.size(), 2u);
}

TEST(Ingest, StoredRecordsSatisfyInvariants) {
  auto v = articles(200);
  v[5].doc = "Note";
  v[9].year = 99;
  IngestConfig cfg{1, 20, 1};
  auto t = testing::table(v);
  EXPECT_EQ(check_table_invariants(t, cfg), std::nullopt);
}

TEST(Ingest, CityLocationIsSmallestSeen) {
  Rec a{"P1", 2, {"A"}};
  a.lat = 10;
  a.lon = 5;
  Rec b{"P2", 2, {"B"}};
  b.lat = 9;
  b.lon = 50;
  auto t = testing::table({a, b});
  ASSERT_EQ(t.cities.size(), 1u);
  EXPECT_EQ(t.city_location[0]->lat, 9);
  EXPECT_EQ(t.city_location[0]->lon, 50);
}

TEST(Citations, EmptyFile) {
  auto t = testing::table(articles(3));
  std::istringstream in("");
  EXPECT_TRUE(parse_citations(in, t).events.empty());
}

TEST(Citations, UnknownCitedDropped) {
  auto t = testing::table(articles(3));
  auto c = testing::cites(t, "X1,NOPE,5\n");
  EXPECT_TRUE(c.events.empty());
  EXPECT_EQ(c.report.unknown_cited, 1u);
}

TEST(Citations, AllEventsStoredWindowAppliedLater) {
  auto t = testing::table({{"P", 10, {"A"}}});
  auto c = testing::cites(t, "X1,P,10\nX2,P,11\nX3,P,15\n");
  ASSERT_EQ(c.events.size(), 3u);
  EXPECT_EQ(c.events[2].citing_year, 15);
}

TEST(Citations, YearDefaultsFromInCorpusCitingPub) {
  auto t = testing::table({{"P", 10, {"A"}}, {"Q", 12, {"B"}}});
  auto c = testing::cites(t, "Q,P,\nOUT,P,\n");
  ASSERT_EQ(c.events.size(), 1u);
  EXPECT_EQ(c.events[0].citing_year, 12);
  EXPECT_EQ(c.report.missing_year, 1u);
}

TEST(Citations, BeforeCitedYearDroppedNotFatal) {
  auto t = testing::table({{"P", 10, {"A"}}});
  auto c = testing::cites(t, "X,P,9\n");
  EXPECT_TRUE(c.events.empty());
  EXPECT_EQ(c.report.before_cited_year, 1u);
}

TEST(Citations, MalformedRowThrows) {
  auto t = testing::table({{"P", 10, {"A"}}});
  EXPECT_THROW(testing::cites(t, "X,P\n"), InputError);
  std::istringstream bad_header("a,b,c\n");
  EXPECT_THROW(parse_citations(bad_header, t), InputError);
}

TEST(CorpusStatsTable, OnlyArticles) {
  auto t = testing::table(articles(10));
  std::vector<SuccessTag> tags(10);
  tags[0] = {5, true, true};
  auto s = corpus_stats(t, tags);
  for (int c = 0; c < 3; ++c) EXPECT_DOUBLE_EQ(s.rows[0].percent[c], 100.0);
  EXPECT_FALSE(s.empty[2]);
}

TEST(CorpusStatsTable, EmptyCorpusFlagged) {
  PublicationTable t;
  auto s = corpus_stats(t, {});
  for (int c = 0; c < 3; ++c) {
    EXPECT_TRUE(s.empty[c]);
    EXPECT_EQ(s.totals[c], 0u);
    for (const auto& r : s.rows) EXPECT_EQ(r.percent[c], 0.0);
  }
}

TEST(CorpusStatsTable, ReviewOverRepresentedAmongTop1) {
  // Citation count equals the index; the 20 reviews hold the top counts.
  std::vector<Rec> v;
  std::string csv;
  for (int i = 0; i < 200; ++i) {
    v.push_back({"P" + std::to_string(i), 5, {"A" + std::to_string(i)}});
    if (i >= 180) v.back().doc = "Review";
    for (int k = 0; k < i; ++k) csv += "X,P" + std::to_string(i) + ",5\n";
  }
  auto t = testing::table(v);
  auto c = testing::cites(t, csv);
  auto res = compute_success(t, c, {});
  auto s = corpus_stats(t, res.tags);
  const auto& review = s.rows[static_cast<int>(DocType::Review)];
  EXPECT_NEAR(review.percent[0], 10.0, 1e-9);
  EXPECT_GT(review.percent[2], review.percent[0]);
  for (int col = 0; col < 3; ++col) {
    double sum = 0;
    for (const auto& r : s.rows) sum += r.percent[col];
    EXPECT_NEAR(sum, 100.0, 0.01);
  }
}

}  // namespace
}  // namespace pteams

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

#include "pteams/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "pteams/persistence.hpp"

namespace pteams {

using ojson = nlohmann::ordered_json;

std::int64_t SynthRng::uniform(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw std::invalid_argument("empty sampling range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(engine_());
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t x;
  do x = engine_();
  while (x >= limit);
  return lo + static_cast<std::int64_t>(x % span);
}

double SynthRng::real() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

namespace {

constexpr std::array<std::string_view, 6> kWiringNames = {
    "isolated", "preceding_core", "simultaneous_extension", "succeeding_extension", "succeeding_offshoot",
    "preceding_offshoot_shared_core"};

constexpr std::array<const char*, 10> kCountries = {"US", "CN", "DE", "GB", "FR", "JP", "NL", "IT", "CA", "BR"};

enum : std::uint8_t { kTierNone = 0, kTierTop10 = 1, kTierTop1 = 2 };

struct Site {
  std::uint32_t city = 0;
  std::uint32_t org = 0;
};

struct GenAuthor {
  std::string name;
  std::vector<Site> sites;
};

struct GenPub {
  Year year = 0;
  std::vector<std::uint32_t> authors;
  std::array<std::uint16_t, 2> fields{};
  std::uint8_t n_fields = 1;
  std::uint8_t tier = kTierNone;
  bool free = false;  // background record whose tier may be raised when balancing cells
};

struct City {
  std::string country;
  double lat = 0.0;
  double lon = 0.0;
};

std::string padded(char prefix, std::size_t n, int width) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%c%0*zu", prefix, width, n);
  return buf;
}

std::string coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

void append_quoted(std::string& out, std::string_view s) {
  out += '"';
  out += s;
  out += '"';
}

/// One planted team while its unit is being laid out.
struct Draft {
  std::vector<std::uint32_t> members;
  Period span;
  std::vector<Year> own_years;  // years in which the team publishes alone
  const SuccessPlan* plan = nullptr;
};

struct DraftRelation {
  std::size_t focal = 0;
  std::size_t other = 0;
  OverlapKind kind;
  Timing timing;
  Impulse impulse;
};

std::vector<Year> years_between(Year a, Year b) {
  std::vector<Year> out;
  for (Year y = a; y <= b; ++y) out.push_back(y);
  return out;
}

class Generator {
 public:
  explicit Generator(const SynthConfig& config) : cfg_(config), rng_(config.seed) {}

  GroundTruth run(std::ostream& pubs_out, std::ostream& cites_out) {
    make_cities();
    for (const auto& g : cfg_.groups)
      for (std::size_t u = 0; u < g.units; ++u) plant_unit(g);
    add_noise();
    balance_cells();
    return emit(pubs_out, cites_out);
  }

 private:
  void make_cities() {
    for (std::size_t c = 0; c < cfg_.n_cities; ++c) {
      City city;
      city.country = kCountries[c % kCountries.size()];
      city.lat = static_cast<double>(rng_.uniform(-600000, 700000)) / 10000.0;
      city.lon = static_cast<double>(rng_.uniform(-1799999, 1799999)) / 10000.0;
      cities_.push_back(std::move(city));
    }
  }

  std::uint32_t new_author(char prefix, std::size_t& counter) {
    GenAuthor a;
    a.name = padded(prefix, counter++, 6);
    const int n_sites = rng_.chance(0.1) ? 2 : 1;
    for (int i = 0; i < n_sites; ++i) {
      Site s;
      s.city = static_cast<std::uint32_t>(rng_.uniform(0, static_cast<std::int64_t>(cfg_.n_cities) - 1));
      s.org = s.city * 4 + static_cast<std::uint32_t>(rng_.uniform(0, 3));
      if (std::none_of(a.sites.begin(), a.sites.end(), [&](const Site& o) { return o.org == s.org; }))
        a.sites.push_back(s);
    }
    authors_.push_back(std::move(a));
    return static_cast<std::uint32_t>(authors_.size() - 1);
  }

  std::vector<std::uint32_t> new_members(int n) {
    std::vector<std::uint32_t> out;
    for (int i = 0; i < n; ++i) {
      out.push_back(new_author('T', team_counter_));
      team_authors_.push_back(out.back());
    }
    return out;
  }

  std::uint16_t random_field() {
    return static_cast<std::uint16_t>(rng_.uniform(0, static_cast<std::int64_t>(cfg_.n_fields) - 1));
  }

  int draw(int lo, int hi) { return static_cast<int>(rng_.uniform(lo, std::max(lo, hi))); }

  void plant_unit(const TeamGroup& g) {
    const int needed = g.wiring == Wiring::Isolated ? 1 : g.wiring == Wiring::PrecedingOffshootSharedCore ? 3 : 2;
    const int span_len = std::max(needed, draw(g.min_duration, g.max_duration));
    const Year s = static_cast<Year>(rng_.uniform(cfg_.first_year, cfg_.last_year - span_len + 1));
    const Year e = s + span_len - 1;
    const int lo = std::max(2, g.min_size);
    const int hi = g.max_size;
    std::vector<Draft> d;
    std::vector<DraftRelation> rel;
    auto join = [](std::vector<std::uint32_t> a, const std::vector<std::uint32_t>& b) {
      a.insert(a.end(), b.begin(), b.end());
      std::sort(a.begin(), a.end());
      return a;
    };
    auto gaps = [](Period whole, Period busy) {
      auto out = years_between(whole.start, busy.start - 1);
      auto tail = years_between(busy.end + 1, whole.end);
      out.insert(out.end(), tail.begin(), tail.end());
      return out;
    };
    switch (g.wiring) {
      case Wiring::Isolated: {
        auto m = new_members(draw(lo, hi));
        d.push_back({m, {s, e}, years_between(s, e), &g.primary});
        break;
      }
      case Wiring::PrecedingCore: {
        const int n_f = draw(std::max(lo, 3), hi);
        const int n_c = draw(std::max(2, (n_f + 1) / 2), n_f - 1);
        auto core = new_members(n_c);
        auto focal = join(core, new_members(n_f - n_c));
        const Year sf = static_cast<Year>(rng_.uniform(s + 1, e));
        d.push_back({focal, {sf, e}, years_between(sf, e), &g.primary});
        d.push_back({core, {s, e}, years_between(s, sf - 1), &g.partners});
        rel.push_back({0, 1, OverlapKind::Core, Timing::Preceding, Impulse::Persistence});
        rel.push_back({1, 0, OverlapKind::Extension, Timing::Succeeding, Impulse::Freshness});
        break;
      }
      case Wiring::SimultaneousExtension: {
        const int n_f = draw(lo, hi - 1);
        const int k = draw(1, std::min(n_f, hi - n_f));
        auto focal = new_members(n_f);
        auto ext = join(focal, new_members(k));
        const Year ee = static_cast<Year>(rng_.uniform(s, e - 1));
        d.push_back({focal, {s, e}, years_between(ee + 1, e), &g.primary});
        d.push_back({ext, {s, ee}, years_between(s, ee), &g.partners});
        rel.push_back({0, 1, OverlapKind::Extension, Timing::Simultaneous, Impulse::Synchronous});
        rel.push_back({1, 0, OverlapKind::Core, Timing::Simultaneous, Impulse::None});
        break;
      }
      case Wiring::SucceedingExtension: {
        const int n_f = draw(lo, hi - 1);
        const int k = draw(1, std::min(n_f, hi - n_f));
        auto focal = new_members(n_f);
        auto ext = join(focal, new_members(k));
        const Year se = static_cast<Year>(rng_.uniform(s + 1, e));
        const Year ee = static_cast<Year>(rng_.uniform(se, e));
        d.push_back({focal, {s, e}, gaps({s, e}, {se, ee}), &g.primary});
        d.push_back({ext, {se, ee}, years_between(se, ee), &g.partners});
        rel.push_back({0, 1, OverlapKind::Extension, Timing::Succeeding, Impulse::Freshness});
        rel.push_back({1, 0, OverlapKind::Core, Timing::Preceding, Impulse::Persistence});
        break;
      }
      case Wiring::SucceedingOffshoot: {
        const int n_f = draw(lo, hi);
        const int n_s = draw((n_f + 1) / 2, n_f - 1);
        const int b = draw(std::max(1, lo - n_s), std::min(n_s, hi - n_s));
        auto shared = new_members(n_s);
        auto focal = join(shared, new_members(n_f - n_s));
        auto off = join(shared, new_members(b));
        const Year so = static_cast<Year>(rng_.uniform(s + 1, e));
        const Year eo = static_cast<Year>(rng_.uniform(so, e));
        d.push_back({focal, {s, e}, years_between(s, e), &g.primary});
        d.push_back({off, {so, eo}, years_between(so, eo), &g.partners});
        rel.push_back({0, 1, OverlapKind::OffshootNoSharedCore, Timing::Succeeding, Impulse::Freshness});
        rel.push_back({1, 0, OverlapKind::OffshootNoSharedCore, Timing::Preceding, Impulse::Persistence});
        break;
      }
      case Wiring::PrecedingOffshootSharedCore: {
        const int n_s = draw(std::max(2, (lo + 1) / 2), hi - 1);
        const int a = draw(1, std::min(n_s, hi - n_s));
        const int b = draw(1, std::min(n_s, hi - n_s));
        auto core = new_members(n_s);
        auto focal = join(core, new_members(a));
        auto off = join(core, new_members(b));
        const Year so = static_cast<Year>(rng_.uniform(s + 1, e - 1));
        const Year sf = static_cast<Year>(rng_.uniform(so + 1, e));
        const Year eo = static_cast<Year>(rng_.uniform(sf, e));
        const Year ef = static_cast<Year>(rng_.uniform(sf, e));
        d.push_back({focal, {sf, ef}, years_between(sf, ef), &g.primary});
        d.push_back({off, {so, eo}, years_between(so, eo), &g.partners});
        d.push_back({core, {s, e}, gaps({s, e}, {so, std::max(eo, ef)}), &g.partners});
        rel.push_back({0, 2, OverlapKind::Core, Timing::Preceding, Impulse::Persistence});
        rel.push_back({2, 0, OverlapKind::Extension, Timing::Succeeding, Impulse::Freshness});
        rel.push_back({1, 2, OverlapKind::Core, Timing::Preceding, Impulse::Persistence});
        rel.push_back({2, 1, OverlapKind::Extension, Timing::Succeeding, Impulse::Freshness});
        rel.push_back({0, 1, OverlapKind::OffshootSharedCore, Timing::Preceding, Impulse::None});
        rel.push_back({1, 0, OverlapKind::OffshootSharedCore, Timing::Succeeding, Impulse::Freshness});
        break;
      }
    }

    const std::size_t base = truth_.teams.size();
    for (auto& t : d) {
      PlantedTeam p;
      p.name = padded('G', base + (&t - d.data()), 5);
      p.intervals = {t.span};
      for (auto m : t.members) p.members.push_back(authors_[m].name);
      std::sort(p.members.begin(), p.members.end());
      truth_.teams.push_back(std::move(p));
      plant_publications(t, g.pubs_per_year);
    }
    for (const auto& r : rel)
      truth_.overlaps.push_back({truth_.teams[base + r.focal].name, truth_.teams[base + r.other].name, r.kind,
                                 r.timing, r.impulse});
  }

  void plant_publications(const Draft& t, int per_year) {
    const std::uint16_t field = random_field();
    std::map<Year, std::vector<std::size_t>> by_year;
    for (Year y : t.own_years)
      for (int k = 0; k < per_year; ++k) {
        GenPub p;
        p.year = y;
        p.authors = t.members;
        p.fields[0] = field;
        by_year[y].push_back(pubs_.size());
        pubs_.push_back(std::move(p));
      }
    const SuccessPlan& plan = *t.plan;
    const std::uint8_t tier = plan.tier == Tier::Top1 ? kTierTop1 : kTierTop10;
    std::optional<Year> first;
    for (int age = 1; age <= t.span.length(); ++age) {
      const Year y = t.span.start + age - 1;
      auto it = by_year.find(y);
      if (first) {
        if (it != by_year.end())
          for (auto i : it->second)
            if (rng_.chance(plan.later_rate)) pubs_[i].tier = tier;
        continue;
      }
      const bool hit = plan.first_success_age ? *plan.first_success_age == age : rng_.chance(plan.hazard);
      if (!hit) continue;
      if (it == by_year.end()) {
        if (plan.first_success_age) break;
        continue;
      }
      const auto& list = it->second;
      pubs_[list[static_cast<std::size_t>(rng_.uniform(0, static_cast<std::int64_t>(list.size()) - 1))]].tier = tier;
      first = y;
    }
  }

  void add_noise() {
    std::vector<std::uint32_t> pool;
    for (std::size_t i = 0; i < cfg_.noise_authors; ++i) pool.push_back(new_author('N', noise_counter_));
    if (pool.empty()) return;
    std::unordered_map<std::uint64_t, std::uint8_t> joint;
    joint.reserve(cfg_.noise_pubs * 4);
    for (std::size_t n = 0; n < cfg_.noise_pubs; ++n) {
      GenPub p;
      p.year = static_cast<Year>(rng_.uniform(cfg_.first_year, cfg_.last_year));
      p.fields[0] = random_field();
      if (cfg_.n_fields > 1 && rng_.chance(cfg_.multi_field_rate)) {
        do p.fields[1] = random_field();
        while (p.fields[1] == p.fields[0]);
        p.n_fields = 2;
        if (p.fields[1] < p.fields[0]) std::swap(p.fields[0], p.fields[1]);
      }
      const int size = draw(1, std::min<int>(cfg_.noise_max_authors, static_cast<int>(pool.size())));
      for (int attempt = 0; attempt < 20; ++attempt) {
        p.authors.clear();
        while (static_cast<int>(p.authors.size()) < size) {
          auto a = pool[static_cast<std::size_t>(rng_.uniform(0, static_cast<std::int64_t>(pool.size()) - 1))];
          if (std::find(p.authors.begin(), p.authors.end(), a) == p.authors.end()) p.authors.push_back(a);
        }
        if (!team_authors_.empty() && rng_.chance(cfg_.noise_team_author_rate))
          p.authors[0] = team_authors_[static_cast<std::size_t>(
              rng_.uniform(0, static_cast<std::int64_t>(team_authors_.size()) - 1))];
        if (pairs_below_cap(p.authors, joint)) break;
        p.authors.resize(1);
      }
      if (!pairs_below_cap(p.authors, joint)) p.authors.resize(1);
      for (std::size_t i = 0; i < p.authors.size(); ++i)
        for (std::size_t j = i + 1; j < p.authors.size(); ++j) ++joint[AuthorPair::of(p.authors[i], p.authors[j]).key()];
      p.free = p.n_fields == 1;
      pubs_.push_back(std::move(p));
    }
  }

  static bool pairs_below_cap(const std::vector<std::uint32_t>& authors,
                              const std::unordered_map<std::uint64_t, std::uint8_t>& joint) {
    for (std::size_t i = 0; i < authors.size(); ++i)
      for (std::size_t j = i + 1; j < authors.size(); ++j) {
        auto it = joint.find(AuthorPair::of(authors[i], authors[j]).key());
        if (it != joint.end() && it->second >= 2) return false;
      }
    return true;
  }

  // Per (field, year) cell, make the planted tiers come out exactly: the
  // cell needs ceil(N/100) top-1% and ceil(N/10) top-10% records. Background
  // records are promoted first; single-author filler records make up the rest.
  void balance_cells() {
    struct Cell {
      std::int64_t r = 0, s1 = 0, s10 = 0;
      std::vector<std::size_t> free;
    };
    std::map<std::pair<std::uint16_t, Year>, Cell> cells;
    for (std::size_t i = 0; i < pubs_.size(); ++i) {
      const auto& p = pubs_[i];
      for (int f = 0; f < p.n_fields; ++f) {
        auto& c = cells[{p.fields[static_cast<std::size_t>(f)], p.year}];
        ++c.r;
        c.s1 += p.tier == kTierTop1;
        c.s10 += p.tier == kTierTop10;
        if (p.free) c.free.push_back(i);
      }
    }
    std::vector<std::uint32_t> fillers;
    for (auto& [key, c] : cells) {
      std::int64_t f = 0, need1 = 0, need10 = 0;
      for (;; ++f) {
        const std::int64_t n = c.r + f;
        const std::int64_t k1 = (n + 99) / 100;
        const std::int64_t k10 = (n + 9) / 10;
        need1 = k1 - c.s1;
        need10 = k10 - k1 - c.s10;
        if (need1 >= 0 && need10 >= 0 && need1 + need10 <= static_cast<std::int64_t>(c.free.size()) + f) break;
      }
      std::vector<std::size_t> slots = c.free;
      for (std::size_t i = slots.size(); i > 1; --i)
        std::swap(slots[i - 1], slots[static_cast<std::size_t>(rng_.uniform(0, static_cast<std::int64_t>(i) - 1))]);
      for (std::int64_t k = 0; k < f; ++k) {
        if (fillers.empty())
          for (int i = 0; i < 500; ++i) fillers.push_back(new_author('Z', filler_counter_));
        GenPub p;
        p.year = key.second;
        p.fields[0] = key.first;
        p.authors = {fillers[static_cast<std::size_t>(rng_.uniform(0, static_cast<std::int64_t>(fillers.size()) - 1))]};
        slots.push_back(pubs_.size());
        pubs_.push_back(std::move(p));
      }
      for (std::int64_t k = 0; k < need1 + need10; ++k)
        pubs_[slots[static_cast<std::size_t>(k)]].tier = k < need1 ? kTierTop1 : kTierTop10;
    }
  }

  std::string doc_type_for(std::uint8_t tier) {
    const double u = rng_.real();
    const double review = tier == kTierTop1 ? 0.25 : 0.08;
    if (u < review) return "Review";
    if (u < review + 0.05) return "Letter";
    if (u < review + 0.12) return "Proceedings Paper";
    return "Article";
  }

  std::uint32_t citation_count(std::uint8_t tier) {
    if (tier == kTierTop1) return static_cast<std::uint32_t>(rng_.uniform(30, 40));
    if (tier == kTierTop10) return static_cast<std::uint32_t>(rng_.uniform(10, 20));
    return rng_.chance(0.5) ? 0u : static_cast<std::uint32_t>(rng_.uniform(1, 4));
  }

  void write_author(std::string& line, std::uint32_t a) {
    const auto& au = authors_[a];
    line += "{\"author_id\":";
    append_quoted(line, au.name);
    line += ",\"affiliations\":[";
    for (std::size_t k = 0; k < au.sites.size(); ++k) {
      const auto& site = au.sites[k];
      const auto& city = cities_[site.city];
      if (k) line += ',';
      line += "{\"org_id\":\"" + padded('O', site.org, 4) + "\",\"city_id\":\"" + padded('C', site.city, 3) +
              "\",\"country\":\"" + city.country + "\",\"lat\":" + coord(city.lat) + ",\"lon\":" + coord(city.lon) +
              "}";
    }
    line += "]}";
  }

  GroundTruth emit(std::ostream& pubs_out, std::ostream& cites_out) {
    std::vector<std::size_t> order(pubs_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    for (std::size_t i = order.size(); i > 1; --i)
      std::swap(order[i - 1], order[static_cast<std::size_t>(rng_.uniform(0, static_cast<std::int64_t>(i) - 1))]);

    const std::size_t rejects =
        cfg_.reject_rate > 0.0
            ? static_cast<std::size_t>(std::llround(static_cast<double>(pubs_.size()) * cfg_.reject_rate /
                                                    (1.0 - cfg_.reject_rate)))
            : 0;
    truth_.seed = cfg_.seed;
    truth_.first_year = cfg_.first_year;
    truth_.last_year = cfg_.last_year;
    truth_.publications = pubs_.size();
    truth_.planted_rejects = rejects;

    cites_out << "citing_pub_id,cited_pub_id,citing_year\n";
    std::size_t citing = 0;
    std::string line;
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
      const auto& p = pubs_[order[rank]];
      const std::string id = padded('P', rank, 8);
      line.clear();
      line += "{\"pub_id\":\"" + id + "\",\"year\":" + std::to_string(p.year) + ",\"doc_type\":\"" +
              doc_type_for(p.tier) + "\",\"fields\":[";
      for (int f = 0; f < p.n_fields; ++f) {
        if (f) line += ',';
        line += '"' + padded('F', p.fields[static_cast<std::size_t>(f)], 2) + '"';
      }
      line += "],\"authors\":[";
      for (std::size_t k = 0; k < p.authors.size(); ++k) {
        if (k) line += ',';
        write_author(line, p.authors[k]);
      }
      line += "]}\n";
      pubs_out << line;

      if (p.tier != kTierNone) truth_.top10.push_back(id);
      if (p.tier == kTierTop1) truth_.top1.push_back(id);
      const auto n = citation_count(p.tier);
      for (std::uint32_t c = 0; c < n; ++c)
        cites_out << padded('X', citing++, 8) << ',' << id << ',' << p.year + rng_.uniform(1, 2) << '\n';
      if (rng_.chance(0.05)) cites_out << padded('X', citing++, 8) << ',' << id << ',' << p.year + rng_.uniform(4, 6) << '\n';
      if (rng_.chance(0.01)) cites_out << padded('X', citing++, 8) << ',' << id << ',' << p.year - 1 << '\n';
    }
    static constexpr const char* kBadRecords[] = {
        R"("year":%d,"doc_type":"Editorial","fields":["F00"],"authors":[{"author_id":"R0","affiliations":[{"org_id":"O0000"}]}])",
        R"("year":%d,"doc_type":"Article","fields":[],"authors":[{"author_id":"R0","affiliations":[{"org_id":"O0000"}]}])",
        R"("year":%d,"doc_type":"Article","fields":["F00"],"authors":[])",
        R"("year":%d,"doc_type":"Article","fields":["F00"],"authors":[{"author_id":"R0","affiliations":[]}])",
        R"("year":%d,"doc_type":"Letter","fields":["F00"],"authors":[{"author_id":"R0","affiliations":[{"org_id":"O0000"}]}])",
    };
    for (std::size_t r = 0; r < rejects; ++r) {
      const int kind = static_cast<int>(r % 5);
      const Year y = kind == 4 ? cfg_.first_year - 1 : cfg_.first_year;
      char body[256];
      std::snprintf(body, sizeof body, kBadRecords[kind], y);
      pubs_out << "{\"pub_id\":\"" << padded('R', r, 7) << "\"," << body << "}\n";
    }
    std::sort(truth_.top10.begin(), truth_.top10.end());
    std::sort(truth_.top1.begin(), truth_.top1.end());
    return std::move(truth_);
  }

  const SynthConfig& cfg_;
  SynthRng rng_;
  std::vector<City> cities_;
  std::vector<GenAuthor> authors_;
  std::vector<std::uint32_t> team_authors_;
  std::vector<GenPub> pubs_;
  std::size_t team_counter_ = 0, noise_counter_ = 0, filler_counter_ = 0;
  GroundTruth truth_;
};

GroundTruth worked_example(std::ostream& pubs_out, std::ostream& cites_out) {
  // Joint publications per year for authors A-F over years 1-8.
  const std::vector<std::pair<Year, std::string>> records = {
      {1, "BC"}, {2, "ABC"}, {3, "AC"}, {3, "BC"}, {3, "CD"}, {4, "AB"}, {5, "AC"},
      {5, "BC"}, {5, "CD"}, {6, "AB"}, {6, "BC"}, {6, "EF"}, {7, "BC"}, {7, "EF"},
      {8, "CD"}, {8, "EF"}, {8, "DE"}};
  std::size_t n = 0;
  for (const auto& [year, who] : records) {
    ojson rec;
    rec["pub_id"] = padded('P', n++, 2);
    rec["year"] = year;
    rec["doc_type"] = "Article";
    rec["fields"] = {"F1"};
    rec["authors"] = ojson::array();
    for (char c : who)
      rec["authors"].push_back({{"author_id", std::string(1, c)},
                                {"affiliations", {{{"org_id", std::string("O") + c}, {"city_id", "C1"},
                                                   {"country", "NL"}, {"lat", 52.0}, {"lon", 4.5}}}}});
    pubs_out << rec.dump() << '\n';
  }
  cites_out << "citing_pub_id,cited_pub_id,citing_year\n";
  GroundTruth t;
  t.first_year = 1;
  t.last_year = 8;
  t.publications = records.size();
  t.teams = {{"ABC", {"A", "B", "C"}, {{2, 5}}},
             {"AB", {"A", "B"}, {{2, 6}}},
             {"BC", {"B", "C"}, {{1, 7}}},
             {"EF", {"E", "F"}, {{6, 8}}}};
  using K = OverlapKind;
  using T = Timing;
  using I = Impulse;
  t.overlaps = {{"ABC", "AB", K::Core, T::Simultaneous, I::None},
                {"ABC", "BC", K::Core, T::Preceding, I::Persistence},
                {"AB", "ABC", K::Extension, T::Simultaneous, I::Synchronous},
                {"AB", "BC", K::OffshootNoSharedCore, T::Preceding, I::Persistence},
                {"BC", "ABC", K::Extension, T::Succeeding, I::Freshness},
                {"BC", "AB", K::OffshootNoSharedCore, T::Succeeding, I::Freshness}};
  return t;
}

}  // namespace

std::string_view to_string(Wiring w) { return kWiringNames[static_cast<std::size_t>(w)]; }

Wiring parse_wiring(std::string_view s) {
  for (std::size_t i = 0; i < kWiringNames.size(); ++i)
    if (kWiringNames[i] == s) return static_cast<Wiring>(i);
  throw std::invalid_argument("unknown wiring '" + std::string(s) + "'");
}

void SynthConfig::validate() const {
  if (worked_example) return;
  if (last_year < first_year) throw std::invalid_argument("last_year precedes first_year");
  if (n_fields == 0 || n_fields > 99) throw std::invalid_argument("n_fields must be in [1, 99]");
  if (n_cities == 0 || n_cities > 999) throw std::invalid_argument("n_cities must be in [1, 999]");
  if (reject_rate < 0.0 || reject_rate >= 1.0) throw std::invalid_argument("reject_rate must be in [0, 1)");
  if (noise_pubs > 0 && noise_authors == 0) throw std::invalid_argument("noise_pubs needs noise_authors");
  if (noise_max_authors < 1) throw std::invalid_argument("noise_max_authors must be positive");
  const int window = last_year - first_year + 1;
  for (const auto& g : groups) {
    const std::string where = "group with wiring " + std::string(to_string(g.wiring)) + ": ";
    if (g.pubs_per_year < PersistenceParams{}.min_pubs)
      throw std::invalid_argument(where + "pubs_per_year below " + std::to_string(PersistenceParams{}.min_pubs) +
                                  " cannot make every planted pair persistent in each active year");
    if (g.min_size < 2 || g.max_size < g.min_size) throw std::invalid_argument(where + "bad size range");
    if (g.min_duration < 1 || g.max_duration < g.min_duration || g.max_duration > window)
      throw std::invalid_argument(where + "duration range must lie within the year window");
    const bool needs_three = g.wiring == Wiring::PrecedingCore || g.wiring == Wiring::SimultaneousExtension ||
                             g.wiring == Wiring::SucceedingExtension ||
                             g.wiring == Wiring::PrecedingOffshootSharedCore;
    if (needs_three && g.max_size < 3) throw std::invalid_argument(where + "max_size must be at least 3");
    const int min_span = g.wiring == Wiring::Isolated ? 1 : g.wiring == Wiring::PrecedingOffshootSharedCore ? 3 : 2;
    if (window < min_span) throw std::invalid_argument(where + "year window too short for the wiring");
    for (const auto* plan : {&g.primary, &g.partners})
      if (plan->hazard < 0.0 || plan->hazard > 1.0 || plan->later_rate < 0.0 || plan->later_rate > 1.0)
        throw std::invalid_argument(where + "success rates must lie in [0, 1]");
  }
}

GroundTruth generate_corpus(const SynthConfig& config, std::ostream& pubs_out, std::ostream& cites_out) {
  config.validate();
  if (config.worked_example) {
    auto t = worked_example(pubs_out, cites_out);
    t.seed = config.seed;
    return t;
  }
  return Generator(config).run(pubs_out, cites_out);
}

SynthConfig synth_preset(std::string_view name, std::uint64_t seed) {
  SynthConfig c;
  c.seed = seed;
  auto group = [](std::size_t units, int lo, int hi, int dmin, int dmax, Wiring w) {
    TeamGroup g;
    g.units = units;
    g.min_size = lo;
    g.max_size = hi;
    g.min_duration = dmin;
    g.max_duration = dmax;
    g.wiring = w;
    return g;
  };
  if (name == "fig-s1") {
    c.worked_example = true;
    c.first_year = 1;
    c.last_year = 8;
  } else if (name == "tiny") {
    c.groups = {group(1, 2, 2, 1, 1, Wiring::Isolated)};
  } else if (name == "recovery" || name == "overlaps") {
    // 56 isolated teams plus 4 units of each wiring: 56 + 4*2*4 + 4*3 = 100 teams.
    const std::size_t per = name == "recovery" ? 4 : 20;
    c.groups.push_back(group(name == "recovery" ? 56 : 0, 2, 6, 1, 8, Wiring::Isolated));
    for (auto w : {Wiring::PrecedingCore, Wiring::SimultaneousExtension, Wiring::SucceedingExtension,
                   Wiring::SucceedingOffshoot, Wiring::PrecedingOffshootSharedCore})
      c.groups.push_back(group(per, 2, 6, 1, 8, w));
    for (auto& g : c.groups) {
      g.primary = {Tier::Top1, 0.15, std::nullopt, 0.1};
      g.partners = g.primary;
    }
    if (name == "recovery") {
      c.noise_authors = 2000;
      c.noise_pubs = 3000;
    }
  } else if (name == "hazard") {
    auto g = group(6000, 2, 3, 1, 8, Wiring::Isolated);
    g.primary = {Tier::Top10, 0.2, std::nullopt, 0.3};
    c.groups = {g};
    c.noise_authors = 3000;
    c.noise_pubs = 5000;
  } else if (name == "shift") {
    auto closed = group(1500, 2, 3, 3, 8, Wiring::Isolated);
    closed.primary = {Tier::Top10, 0.0, 3, 0.2};
    auto opened = group(1500, 3, 4, 4, 9, Wiring::PrecedingCore);
    opened.primary = {Tier::Top10, 0.0, 2, 0.2};
    c.groups = {closed, opened};
    c.noise_authors = 3000;
    c.noise_pubs = 5000;
  } else if (name == "scale") {
    auto isolated = group(25000, 2, 6, 1, 8, Wiring::Isolated);
    isolated.primary = {Tier::Top1, 0.05, std::nullopt, 0.01};
    c.groups = {isolated};
    for (auto w : {Wiring::PrecedingCore, Wiring::SimultaneousExtension, Wiring::SucceedingExtension,
                   Wiring::SucceedingOffshoot, Wiring::PrecedingOffshootSharedCore}) {
      auto g = group(400, 2, 6, 2, 8, w);
      g.primary = isolated.primary;
      g.partners = isolated.primary;
      c.groups.push_back(g);
    }
    // Planted units publish about 3 * 4.5 records per team; background
    // records bring the total to roughly one million over 300k authors.
    c.noise_authors = 190000;
    c.noise_pubs = 640000;
    c.noise_max_authors = 6;
    c.n_fields = 20;
    c.n_cities = 300;
  } else {
    throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
  }
  return c;
}

void write_truth_json(std::ostream& out, const GroundTruth& t) {
  ojson j;
  j["seed"] = t.seed;
  j["first_year"] = t.first_year;
  j["last_year"] = t.last_year;
  j["publications"] = t.publications;
  j["planted_rejects"] = t.planted_rejects;
  j["teams"] = ojson::array();
  for (const auto& p : t.teams) {
    ojson iv = ojson::array();
    for (const auto& i : p.intervals) iv.push_back({i.start, i.end});
    j["teams"].push_back({{"name", p.name}, {"members", p.members}, {"intervals", iv}});
  }
  j["overlaps"] = ojson::array();
  for (const auto& o : t.overlaps)
    j["overlaps"].push_back({{"focal", o.focal},
                             {"other", o.other},
                             {"kind", to_string(o.kind)},
                             {"timing", to_string(o.timing)},
                             {"impulse", to_string(o.impulse)}});
  j["top10"] = t.top10;
  j["top1"] = t.top1;
  out << j.dump(1) << '\n';
}

GroundTruth read_truth_json(std::istream& in) {
  ojson j;
  try {
    j = ojson::parse(in);
    GroundTruth t;
    t.seed = j.at("seed").get<std::uint64_t>();
    t.first_year = j.at("first_year").get<Year>();
    t.last_year = j.at("last_year").get<Year>();
    t.publications = j.at("publications").get<std::size_t>();
    t.planted_rejects = j.at("planted_rejects").get<std::size_t>();
    for (const auto& p : j.at("teams")) {
      PlantedTeam pt;
      pt.name = p.at("name").get<std::string>();
      pt.members = p.at("members").get<std::vector<std::string>>();
      for (const auto& iv : p.at("intervals")) pt.intervals.push_back({iv.at(0).get<Year>(), iv.at(1).get<Year>()});
      t.teams.push_back(std::move(pt));
    }
    for (const auto& o : j.at("overlaps"))
      t.overlaps.push_back({o.at("focal").get<std::string>(), o.at("other").get<std::string>(),
                            parse_overlap_kind(o.at("kind").get<std::string>()),
                            parse_timing(o.at("timing").get<std::string>()),
                            parse_impulse(o.at("impulse").get<std::string>())});
    t.top10 = j.at("top10").get<std::vector<std::string>>();
    t.top1 = j.at("top1").get<std::vector<std::string>>();
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("truth file: ") + e.what());
  }
}

MinedArtifacts load_mined_artifacts(const std::filesystem::path& dir) {
  auto open = [&](const char* name) {
    std::ifstream in(dir / name);
    if (!in) throw InputError("cannot open " + (dir / name).string());
    return in;
  };
  MinedArtifacts m;
  {
    auto in = open("teams.csv");
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::istringstream row(line);
      std::string id, members, intervals;
      std::getline(row, id, ',');
      std::getline(row, members, ',');
      std::getline(row, intervals, ',');
      MinedTeam t;
      std::istringstream ms(members);
      for (std::string x; std::getline(ms, x, ';');) t.members.push_back(x);
      std::sort(t.members.begin(), t.members.end());
      std::istringstream is(intervals);
      for (std::string x; std::getline(is, x, ';');) {
        auto dash = x.find('-', 1);
        if (dash == std::string::npos) throw InputError("teams.csv: bad interval '" + x + "'");
        t.intervals.push_back({std::stoi(x.substr(0, dash)), std::stoi(x.substr(dash + 1))});
      }
      m.teams.push_back(std::move(t));
    }
  }
  {
    auto in = open("overlaps.csv");
    m.relations = read_overlaps_csv(in);
  }
  {
    auto in = open("success_tags.csv");
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::istringstream row(line);
      std::string id, cites, t10, t1;
      std::getline(row, id, ',');
      std::getline(row, cites, ',');
      std::getline(row, t10, ',');
      std::getline(row, t1, ',');
      ++m.tagged_publications;
      if (t10 == "1") m.top10.push_back(id);
      if (t1 == "1") m.top1.push_back(id);
    }
    std::sort(m.top10.begin(), m.top10.end());
    std::sort(m.top1.begin(), m.top1.end());
  }
  return m;
}

VerifyReport verify_against_truth(const MinedArtifacts& mined, const GroundTruth& truth) {
  VerifyReport r;
  r.planted = truth.teams.size();
  r.mined = mined.teams.size();

  std::map<std::vector<std::string>, std::size_t> by_members;
  for (std::size_t i = 0; i < mined.teams.size(); ++i) by_members.emplace(mined.teams[i].members, i);

  std::map<std::string, std::size_t> planted_to_mined;
  std::set<std::size_t> matched_mined;
  for (const auto& p : truth.teams) {
    auto it = by_members.find(p.members);
    if (it != by_members.end() && mined.teams[it->second].intervals == p.intervals) {
      ++r.exact;
      planted_to_mined[p.name] = it->second;
      matched_mined.insert(it->second);
      continue;
    }
    const bool covered = std::any_of(mined.teams.begin(), mined.teams.end(), [&](const MinedTeam& t) {
      if (!std::includes(t.members.begin(), t.members.end(), p.members.begin(), p.members.end())) return false;
      return std::all_of(p.intervals.begin(), p.intervals.end(), [&](const Period& want) {
        return std::any_of(t.intervals.begin(), t.intervals.end(),
                           [&](const Period& have) { return have.contains(want); });
      });
    });
    if (covered) ++r.superset;
  }
  r.mined_matching = matched_mined.size();

  std::map<std::pair<TeamId, TeamId>, const OverlapRelation*> relations;
  for (const auto& rel : mined.relations) relations[{rel.focal, rel.other}] = &rel;
  r.overlaps_planted = truth.overlaps.size();
  for (const auto& o : truth.overlaps) {
    auto f = planted_to_mined.find(o.focal);
    auto g = planted_to_mined.find(o.other);
    if (f == planted_to_mined.end() || g == planted_to_mined.end()) continue;
    auto it = relations.find({static_cast<TeamId>(f->second), static_cast<TeamId>(g->second)});
    if (it != relations.end() && it->second->kind == o.kind && it->second->timing == o.timing &&
        it->second->impulse == o.impulse)
      ++r.overlaps_matched;
  }

  r.tags_checked = mined.tagged_publications;
  std::vector<std::string> diff10, diff1;
  std::set_symmetric_difference(mined.top10.begin(), mined.top10.end(), truth.top10.begin(), truth.top10.end(),
                                std::back_inserter(diff10));
  std::set_symmetric_difference(mined.top1.begin(), mined.top1.end(), truth.top1.begin(), truth.top1.end(),
                                std::back_inserter(diff1));
  std::set<std::string> wrong(diff10.begin(), diff10.end());
  wrong.insert(diff1.begin(), diff1.end());
  r.tags_matched = r.tags_checked >= wrong.size() ? r.tags_checked - wrong.size() : 0;
  return r;
}

void write_verify_report(std::ostream& out, const VerifyReport& r) {
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "planted_teams=%zu exact=%zu superset=%zu recall=%.4f exact_recall=%.4f\n"
                "mined_teams=%zu matching=%zu precision=%.4f\n"
                "planted_overlaps=%zu matched=%zu overlap_match_rate=%.4f\n"
                "tags_checked=%zu matched=%zu tag_match_rate=%.4f\n",
                r.planted, r.exact, r.superset, r.recall(), r.exact_recall(), r.mined, r.mined_matching,
                r.precision(), r.overlaps_planted, r.overlaps_matched, r.overlap_match_rate(), r.tags_checked,
                r.tags_matched, r.tag_match_rate());
  out << buf;
}

}  // namespace pteams

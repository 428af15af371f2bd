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

#include "pteams/pipeline.hpp"

#include <array>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <ostream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pteams/analytics.hpp"
#include "pteams/cliques.hpp"
#include "pteams/coauthorship.hpp"
#include "pteams/corpus.hpp"
#include "pteams/overlap.hpp"
#include "pteams/persistence.hpp"
#include "pteams/success.hpp"
#include "pteams/teams.hpp"

namespace pteams {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

constexpr std::array<std::string_view, 8> kStageNames = {"ingest", "tag",   "network",  "persist",
                                                         "mine",   "teams", "overlaps", "stats"};

template <class T>
T parse_number(std::string_view key, std::string_view v) {
  T out{};
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size())
    throw std::invalid_argument("setting '" + std::string(key) + "': bad number '" + std::string(v) + "'");
  return out;
}

double parse_real(std::string_view key, std::string_view v) {
  try {
    std::size_t used = 0;
    double d = std::stod(std::string(v), &used);
    if (used == v.size()) return d;
  } catch (const std::exception&) {
  }
  throw std::invalid_argument("setting '" + std::string(key) + "': bad number '" + std::string(v) + "'");
}

Quantile parse_quantile(std::string_view key, const std::string& v) {
  auto slash = v.find('/');
  if (slash == std::string::npos) return Quantile::from_double(parse_real(key, v));
  Quantile q{parse_number<std::int64_t>(key, std::string_view(v).substr(0, slash)),
             parse_number<std::int64_t>(key, std::string_view(v).substr(slash + 1))};
  if (q.num <= 0 || q.den <= 0 || q.num > q.den)
    throw std::invalid_argument("setting '" + std::string(key) + "' must lie in (0, 1]");
  return q;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string real_text(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Input {
  Stage producer;
  const char* file;
};

struct StageSpec {
  std::vector<std::string> keys;
  std::vector<Input> inputs;
};

const StageSpec& spec_of(Stage s) {
  static const std::array<StageSpec, 8> specs = {{
      {{"first_year", "last_year"}, {}},
      {{"top10", "top1", "citation_window"}, {{Stage::Ingest, "publications.jsonl"}, {Stage::Ingest, "citations.csv"}}},
      {{"author_cap"}, {{Stage::Ingest, "publications.jsonl"}}},
      {{"window_len", "min_pubs"}, {{Stage::Network, "pair_timelines.csv"}}},
      {{"delta", "gamma", "min_size"}, {{Stage::Persist, "persistent_edges.csv"}, {Stage::Ingest, "publications.jsonl"}}},
      {{}, {{Stage::Mine, "cliques.csv"}, {Stage::Ingest, "publications.jsonl"}, {Stage::Tag, "success_tags.csv"}}},
      {{},
       {{Stage::Teams, "teams.csv"},
        {Stage::Teams, "team_pubs.csv"},
        {Stage::Ingest, "publications.jsonl"},
        {Stage::Tag, "success_tags.csv"}}},
      {{"first_year", "last_year", "margin", "cohort_width", "rate_bin"},
       {{Stage::Ingest, "publications.jsonl"},
        {Stage::Tag, "success_tags.csv"},
        {Stage::Teams, "teams.csv"},
        {Stage::Teams, "team_pubs.csv"},
        {Stage::Overlaps, "impulses.csv"}}},
  }};
  return specs[static_cast<std::size_t>(s)];
}

std::string rerun_hint(Stage s) { return "rerun `pteams " + std::string(to_string(s)) + "` (or `pteams run all`)"; }

}  // namespace

std::string_view to_string(Stage s) { return kStageNames[static_cast<std::size_t>(s)]; }

Stage parse_stage(std::string_view s) {
  for (std::size_t i = 0; i < kStageNames.size(); ++i)
    if (kStageNames[i] == s) return static_cast<Stage>(i);
  throw std::invalid_argument("unknown stage '" + std::string(s) + "'");
}

void PipelineConfig::set(std::string_view key, std::string_view value) {
  value = trim(value);
  const std::string v(value);
  if (key == "publications") publications = v;
  else if (key == "citations") citations = v;
  else if (key == "out_dir") out_dir = v;
  else if (key == "first_year") first_year = parse_number<Year>(key, value);
  else if (key == "last_year") last_year = parse_number<Year>(key, value);
  else if (key == "window_len") window_len = parse_number<int>(key, value);
  else if (key == "min_pubs") min_pubs = parse_number<int>(key, value);
  else if (key == "delta") delta = parse_number<int>(key, value);
  else if (key == "gamma") gamma = parse_number<int>(key, value);
  else if (key == "min_size") min_size = parse_number<std::size_t>(key, value);
  else if (key == "top10") top10 = v;
  else if (key == "top1") top1 = v;
  else if (key == "citation_window") citation_window = v;
  else if (key == "author_cap") author_cap = parse_number<std::size_t>(key, value);
  else if (key == "margin") margin = parse_number<int>(key, value);
  else if (key == "cohort_width") cohort_width = parse_number<int>(key, value);
  else if (key == "rate_bin") rate_bin = parse_real(key, value);
  else if (key == "threads") threads = parse_number<unsigned>(key, value);
  else throw std::invalid_argument("unknown setting '" + std::string(key) + "'");
}

void PipelineConfig::load_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read config file '" + path.string() + "'");
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    auto eq = text.find('=');
    if (eq == std::string_view::npos)
      throw InputError(path.string() + ":" + std::to_string(line_no) + ": expected key=value");
    auto key = trim(text.substr(0, eq));
    auto value = text.substr(eq + 1);
    // Relative paths in a config file are taken relative to the file.
    if (key == "publications" || key == "citations" || key == "out_dir") {
      fs::path p{std::string(trim(value))};
      if (!p.empty() && p.is_relative()) p = path.parent_path() / p;
      set(key, p.string());
    } else {
      set(key, value);
    }
  }
}

void PipelineConfig::validate() const {
  if (last_year < first_year) throw std::invalid_argument("last_year precedes first_year");
  PersistenceParams{window_len, min_pubs}.validate();
  CliqueParams{delta, gamma, min_size, threads}.validate();
  const auto q10 = parse_quantile("top10", top10);
  const auto q1 = parse_quantile("top1", top1);
  if (q1.value() > q10.value()) throw std::invalid_argument("top1 must not exceed top10");
  parse_citation_window(citation_window);
  if (margin < 0) throw std::invalid_argument("margin must be non-negative");
  if (cohort_width < 1) throw std::invalid_argument("cohort_width must be positive");
  if (!(rate_bin > 0.0)) throw std::invalid_argument("rate_bin must be positive");
}

std::vector<std::pair<std::string, std::string>> PipelineConfig::entries() const {
  return {{"publications", publications.string()},
          {"citations", citations.string()},
          {"out_dir", out_dir.string()},
          {"first_year", std::to_string(first_year)},
          {"last_year", std::to_string(last_year)},
          {"window_len", std::to_string(window_len)},
          {"min_pubs", std::to_string(min_pubs)},
          {"delta", std::to_string(delta)},
          {"gamma", std::to_string(gamma)},
          {"min_size", std::to_string(min_size)},
          {"top10", top10},
          {"top1", top1},
          {"citation_window", citation_window},
          {"author_cap", std::to_string(author_cap)},
          {"margin", std::to_string(margin)},
          {"cohort_width", std::to_string(cohort_width)},
          {"rate_bin", real_text(rate_bin)},
          {"threads", std::to_string(threads)}};
}

std::string PipelineConfig::describe() {
  return "Settings (key=value in a config file, or --set key=value):\n"
         "  publications     raw publication records, one JSON object per line\n"
         "  citations        citation events CSV (citing_pub_id,cited_pub_id,citing_year); optional\n"
         "  out_dir          artifact directory [pteams_out]\n"
         "  first_year       first year of the data window [2008]\n"
         "  last_year        last year of the data window [2020]\n"
         "  window_len       persistence window in years [5]\n"
         "  min_pubs         joint publications needed within a window [3]\n"
         "  delta, gamma     clique window and weight; only 1 is supported [1]\n"
         "  min_size         smallest team size [2]\n"
         "  top10, top1      percentile fractions, decimal or a/b [0.10, 0.01]\n"
         "  citation_window  inclusive = years Y..Y+2, following = Y+1..Y+3 [inclusive]\n"
         "  author_cap       skip larger author lists when pairing; 0 = no cap [0]\n"
         "  margin           boundary years left out of figure tables [4]\n"
         "  cohort_width     duration cohort width in figure tables [1]\n"
         "  rate_bin         bin width for impulses per year [0.25]\n"
         "  threads          worker threads; 0 = all cores [0]\n";
}

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

struct FileScan {
  std::string digest;
  std::size_t lines = 0;
};

FileScan scan_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path.string() + "'");
  std::uint64_t h = 0xcbf29ce484222325ULL;
  std::vector<char> buf(1 << 20);
  FileScan s;
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    const auto n = static_cast<std::size_t>(in.gcount());
    for (std::size_t i = 0; i < n; ++i) {
      const auto c = static_cast<unsigned char>(buf[i]);
      h ^= c;
      h *= 0x100000001b3ULL;
      s.lines += c == '\n';
    }
  }
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
  s.digest = hex;
  return s;
}

}  // namespace

std::string file_digest(const fs::path& path) { return scan_file(path).digest; }

struct Pipeline::State {
  ojson manifest = ojson::object();
  std::map<std::string, std::string> digests;  // path -> digest, this process

  std::optional<PublicationTable> pubs;
  std::optional<CitationTable> cites;
  std::optional<std::vector<SuccessTag>> tags;
  std::optional<PairTimelineTable> timelines;
  std::optional<PersistentNetwork> network;
  std::optional<std::vector<TemporalClique>> cliques;
  std::optional<TeamTable> teams;
  std::optional<std::vector<OverlapRelation>> relations;
  std::optional<std::vector<ImpulseSummary>> summaries;

  void drop_tables() {
    pubs.reset();
    cites.reset();
    tags.reset();
    timelines.reset();
    network.reset();
    cliques.reset();
    teams.reset();
    relations.reset();
    summaries.reset();
  }
};

Pipeline::Pipeline(PipelineConfig config, std::ostream* log)
    : config_(std::move(config)), log_(log), state_(std::make_unique<State>()) {
  config_.validate();
  const auto path = config_.out_dir / "manifest.json";
  if (fs::exists(path)) {
    std::ifstream in(path);
    try {
      state_->manifest = ojson::parse(in);
    } catch (const nlohmann::json::exception&) {
      state_->manifest = ojson::object();
    }
  }
}

Pipeline::~Pipeline() = default;

namespace {

std::string config_digest(const PipelineConfig& c, Stage s) {
  std::map<std::string, std::string> all;
  for (auto& [k, v] : c.entries()) all[k] = v;
  std::string text;
  for (const auto& k : spec_of(s).keys) text += k + "=" + all.at(k) + "\n";
  return fnv1a_hex(text);
}

}  // namespace

StageOutcome Pipeline::run(Stage stage, bool force) {
  auto& st = *state_;
  const auto t0 = std::chrono::steady_clock::now();
  const fs::path dir = config_.out_dir;
  fs::create_directories(dir);
  const std::string name(to_string(stage));

  auto digest = [&](const fs::path& p) {
    auto key = p.string();
    auto it = st.digests.find(key);
    if (it != st.digests.end()) return it->second;
    return st.digests[key] = file_digest(p);
  };
  auto stage_entry = [&](Stage s) -> const ojson* {
    auto stages = st.manifest.find("stages");
    if (stages == st.manifest.end()) return nullptr;
    auto it = stages->find(std::string(to_string(s)));
    return it == stages->end() ? nullptr : &*it;
  };
  auto external_inputs = [&]() {
    std::vector<std::pair<std::string, fs::path>> out;
    if (config_.publications.empty()) throw StageError("ingest: no publications file configured (publications=...)");
    out.emplace_back("publications", config_.publications);
    if (!config_.citations.empty()) out.emplace_back("citations", config_.citations);
    return out;
  };
  auto current_inputs = [&](Stage s) {
    ojson in = ojson::object();
    if (s == Stage::Ingest) {
      for (auto& [role, p] : external_inputs()) {
        if (!fs::exists(p)) throw StageError("ingest: input file '" + p.string() + "' does not exist");
        in[role] = {{"path", p.string()}, {"digest", digest(p)}};
      }
    } else {
      for (const auto& i : spec_of(s).inputs) in[i.file] = {{"digest", digest(dir / i.file)}};
    }
    return in;
  };

  // Prerequisites must exist, be unmodified and have been produced under the
  // current settings, all the way up the chain.
  std::function<void(Stage)> check_fresh = [&](Stage s) {
    const ojson* e = stage_entry(s);
    const std::string sn(to_string(s));
    if (!e) throw StageError("missing prerequisite: stage '" + sn + "' has not been run; run `pteams " + sn + "` first");
    for (auto& [file, rec] : e->at("outputs").items()) {
      if (!fs::exists(dir / file))
        throw StageError("missing prerequisite: artifact " + file + " from stage '" + sn + "' not found; " +
                         rerun_hint(s));
      if (digest(dir / file) != rec.at("digest").get<std::string>())
        throw StageError("stale prerequisite: " + file + " changed since stage '" + sn + "' wrote it; " +
                         rerun_hint(s));
    }
    if (e->at("config_digest").get<std::string>() != config_digest(config_, s))
      throw StageError("stale prerequisite: settings for stage '" + sn + "' changed since it ran; " + rerun_hint(s));
    if (s == Stage::Ingest) {
      if (current_inputs(s) != e->at("inputs"))
        throw StageError("stale prerequisite: input files changed since stage 'ingest' ran; " + rerun_hint(s));
      return;
    }
    std::set<Stage> producers;
    for (const auto& i : spec_of(s).inputs) producers.insert(i.producer);
    for (Stage p : producers) check_fresh(p);
    if (current_inputs(s) != e->at("inputs"))
      throw StageError("stale prerequisite: inputs of stage '" + sn + "' changed since it ran; " + rerun_hint(s));
  };

  std::set<Stage> producers;
  for (const auto& i : spec_of(stage).inputs) producers.insert(i.producer);
  for (Stage p : producers) check_fresh(p);

  const auto inputs = current_inputs(stage);
  const auto cfg_digest = config_digest(config_, stage);
  StageOutcome outcome;
  outcome.stage = stage;

  if (!force) {
    if (const ojson* e = stage_entry(stage);
        e && e->at("config_digest") == cfg_digest && e->at("inputs") == inputs) {
      bool intact = true;
      for (auto& [file, rec] : e->at("outputs").items())
        intact = intact && fs::exists(dir / file) && digest(dir / file) == rec.at("digest").get<std::string>();
      if (intact) {
        outcome.cached = true;
        for (auto& [file, rec] : e->at("outputs").items())
          outcome.outputs.emplace_back(file, rec.at("rows").get<std::size_t>());
        if (log_) *log_ << "[" << name << "] up to date\n";
        return outcome;
      }
    }
  }

  // Lazy loaders for upstream artifacts.
  auto open_in = [&](const char* file) {
    std::ifstream in(dir / file);
    if (!in) throw StageError("cannot open " + (dir / file).string());
    return in;
  };
  auto need_pubs = [&]() -> const PublicationTable& {
    if (!st.pubs) {
      auto in = open_in("publications.jsonl");
      st.pubs = parse_publications(in, {config_.first_year, config_.last_year, config_.threads}).table;
    }
    return *st.pubs;
  };
  auto need_tags = [&]() -> const std::vector<SuccessTag>& {
    if (!st.tags) {
      auto in = open_in("success_tags.csv");
      st.tags = read_success_tags_csv(in, need_pubs());
    }
    return *st.tags;
  };
  auto need_teams = [&]() -> const TeamTable& {
    if (!st.teams) {
      auto a = open_in("teams.csv");
      auto b = open_in("team_pubs.csv");
      st.teams = read_teams(a, b, need_pubs());
    }
    return *st.teams;
  };

  std::vector<std::pair<std::string, std::function<void(std::ostream&)>>> writes;
  switch (stage) {
    case Stage::Ingest: {
      st.drop_tables();
      auto loaded = load_publications(config_.publications, {config_.first_year, config_.last_year, config_.threads});
      st.pubs = std::move(loaded.table);
      if (config_.citations.empty()) {
        std::istringstream empty("citing_pub_id,cited_pub_id,citing_year\n");
        st.cites = parse_citations(empty, *st.pubs);
      } else {
        st.cites = load_citations(config_.citations, *st.pubs);
      }
      if (log_) {
        char buf[256];
        std::snprintf(buf, sizeof buf,
                      "[ingest] %zu records, %zu accepted, %.2f%% rejected; %zu citation events kept of %zu\n",
                      loaded.report.lines, loaded.report.accepted, loaded.report.rejected_percent(),
                      st.cites->report.stored, st.cites->report.read);
        *log_ << buf;
      }
      auto report = std::move(loaded.report);
      writes.emplace_back("publications.jsonl", [&](std::ostream& o) { write_publications(o, *st.pubs); });
      writes.emplace_back("citations.csv", [&](std::ostream& o) { write_citations(o, *st.cites, *st.pubs); });
      writes.emplace_back("rejects.csv", [report](std::ostream& o) { write_rejects_csv(o, report); });
      writes.emplace_back("reject_summary.csv", [report](std::ostream& o) {
        o << "reason,count,percent\n";
        for (std::size_t r = 0; r < kRejectReasonCount; ++r) {
          const auto reason = static_cast<RejectReason>(r);
          const auto n = report.count(reason);
          const double pct = report.lines ? 100.0 * static_cast<double>(n) / static_cast<double>(report.lines) : 0.0;
          char buf[96];
          std::snprintf(buf, sizeof buf, "%s,%zu,%.4f\n", std::string(to_string(reason)).c_str(), n, pct);
          o << buf;
        }
      });
      break;
    }
    case Stage::Tag: {
      const auto& pubs = need_pubs();
      if (!st.cites) {
        auto in = open_in("citations.csv");
        st.cites = parse_citations(in, pubs);
      }
      SuccessConfig sc{parse_quantile("top10", config_.top10), parse_quantile("top1", config_.top1),
                       parse_citation_window(config_.citation_window)};
      auto result = std::make_shared<SuccessResult>(compute_success(pubs, *st.cites, sc));
      st.tags = result->tags;
      writes.emplace_back("success_tags.csv", [&](std::ostream& o) { write_success_tags_csv(o, pubs, *st.tags); });
      writes.emplace_back("thresholds.csv",
                          [&, result](std::ostream& o) { write_thresholds_csv(o, pubs, result->top10, result->top1); });
      break;
    }
    case Stage::Network: {
      const auto& pubs = need_pubs();
      CoauthorshipConfig cc;
      if (config_.author_cap) cc.author_cap = config_.author_cap;
      cc.threads = config_.threads;
      st.timelines = build_pair_timelines(pubs, cc);
      writes.emplace_back("pair_timelines.csv",
                          [&](std::ostream& o) { write_pair_timelines_csv(o, *st.timelines, pubs.authors); });
      break;
    }
    case Stage::Persist: {
      const auto& pubs = need_pubs();
      if (!st.timelines) {
        auto in = open_in("pair_timelines.csv");
        st.timelines = read_pair_timelines_csv(in, pubs.authors);
      }
      st.network = build_persistent_network(*st.timelines, {config_.window_len, config_.min_pubs}, config_.threads);
      writes.emplace_back("persistent_edges.csv",
                          [&](std::ostream& o) { write_persistent_edges_csv(o, *st.network, pubs.authors); });
      break;
    }
    case Stage::Mine: {
      const auto& pubs = need_pubs();
      if (!st.network) {
        auto in = open_in("persistent_edges.csv");
        st.network = read_persistent_edges_csv(in, pubs.authors);
      }
      st.cliques = enumerate_maximal_cliques(*st.network,
                                             {config_.delta, config_.gamma, config_.min_size, config_.threads});
      writes.emplace_back("cliques.csv", [&](std::ostream& o) { write_cliques_csv(o, *st.cliques, pubs.authors); });
      break;
    }
    case Stage::Teams: {
      const auto& pubs = need_pubs();
      const auto& tags = need_tags();
      if (!st.cliques) {
        auto in = open_in("cliques.csv");
        st.cliques = read_cliques_csv(in, pubs.authors);
      }
      st.teams = build_teams(*st.cliques, pubs, config_.threads);
      writes.emplace_back("teams.csv", [&](std::ostream& o) { write_teams_csv(o, *st.teams, pubs, tags); });
      writes.emplace_back("team_pubs.csv", [&](std::ostream& o) { write_team_pubs_csv(o, *st.teams, pubs); });
      break;
    }
    case Stage::Overlaps: {
      const auto& pubs = need_pubs();
      const auto& tags = need_tags();
      const auto& teams = need_teams();
      const auto success = team_success(teams.teams, pubs, tags);
      auto result = std::make_shared<OverlapResult>(
          analyze_overlaps(teams.teams, pubs.authors.size(), success, config_.threads));
      st.relations = result->relations;
      st.summaries = result->summaries;
      if (log_)
        *log_ << "[overlaps] " << result->candidates << " candidate pairs, " << result->relations.size()
              << " classified, " << result->anomalies.size() << " anomalies\n";
      writes.emplace_back("overlaps.csv", [result](std::ostream& o) { write_overlaps_csv(o, result->relations); });
      writes.emplace_back("impulses.csv", [result](std::ostream& o) { write_impulses_csv(o, result->summaries); });
      writes.emplace_back("overlap_anomalies.csv",
                          [result](std::ostream& o) { write_anomalies_csv(o, result->anomalies); });
      break;
    }
    case Stage::Stats: {
      const auto& pubs = need_pubs();
      const auto& tags = need_tags();
      const auto& teams = need_teams();
      if (!st.summaries) {
        auto in = open_in("impulses.csv");
        st.summaries = read_impulses_csv(in);
      }
      if (st.summaries->size() != teams.teams.size())
        throw StageError("impulses.csv does not match teams.csv; " + rerun_hint(Stage::Overlaps));
      const auto success = team_success(teams.teams, pubs, tags);
      AnalyticsConfig ac{config_.first_year, config_.last_year, config_.margin, config_.cohort_width,
                         config_.rate_bin};
      auto figures = std::make_shared<std::vector<SeriesTable>>(
          compute_figures({pubs, tags, teams.teams, teams.metrics, success, *st.summaries}, ac));
      for (const auto& f : *figures)
        writes.emplace_back(f.figure_id + ".csv", [&f, figures](std::ostream& o) { write_series_csv(o, f); });
      auto stats = corpus_stats(pubs, tags);
      writes.emplace_back("table_s1.csv", [stats](std::ostream& o) { write_corpus_stats_csv(o, stats); });
      break;
    }
  }

  ojson entry;
  entry["config_digest"] = cfg_digest;
  ojson cfg = ojson::object();
  {
    std::map<std::string, std::string> all;
    for (auto& [k, v] : config_.entries()) all[k] = v;
    for (const auto& k : spec_of(stage).keys) cfg[k] = all.at(k);
  }
  entry["config"] = cfg;
  entry["inputs"] = inputs;
  entry["outputs"] = ojson::object();
  for (auto& [file, write] : writes) {
    const fs::path p = dir / file;
    {
      std::ofstream out(p, std::ios::binary | std::ios::trunc);
      if (!out) throw StageError("cannot write " + p.string());
      write(out);
      if (!out) throw StageError("failed writing " + p.string());
    }
    auto scan = scan_file(p);
    st.digests[p.string()] = scan.digest;
    const bool has_header = p.extension() == ".csv";
    const std::size_t rows = has_header && scan.lines > 0 ? scan.lines - 1 : scan.lines;
    entry["outputs"][file] = {{"digest", scan.digest}, {"rows", rows}};
    outcome.outputs.emplace_back(file, rows);
  }

  // Rebuild in stage order; a rerun stage invalidates nothing by itself,
  // downstream stages notice changed digests.
  ojson stages = ojson::object();
  auto old = st.manifest.find("stages");
  for (Stage s : kStages) {
    const std::string sn(to_string(s));
    if (s == stage) stages[sn] = entry;
    else if (old != st.manifest.end() && old->contains(sn)) stages[sn] = (*old)[sn];
  }
  st.manifest = {{"format", 1}, {"stages", stages}};
  {
    std::ofstream out(dir / "manifest.json", std::ios::trunc);
    out << st.manifest.dump(2) << '\n';
  }
  outcome.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (log_) {
    *log_ << "[" << name << "]";
    for (auto& [f, rows] : outcome.outputs) *log_ << ' ' << f << '(' << rows << ')';
    char buf[64];
    std::snprintf(buf, sizeof buf, " in %.2fs\n", outcome.seconds);
    *log_ << buf;
  }
  return outcome;
}

std::vector<StageOutcome> Pipeline::run_all(bool force) {
  std::vector<StageOutcome> out;
  for (Stage s : kStages) out.push_back(run(s, force));
  return out;
}

std::string Pipeline::explain(TeamId id) {
  const fs::path dir = config_.out_dir;
  auto open_in = [&](const char* file) {
    std::ifstream in(dir / file);
    if (!in) throw StageError("missing artifact " + (dir / file).string() + "; run the pipeline first");
    return in;
  };
  auto& st = *state_;
  if (!st.pubs) {
    auto in = open_in("publications.jsonl");
    st.pubs = parse_publications(in, {config_.first_year, config_.last_year, config_.threads}).table;
  }
  const auto& pubs = *st.pubs;
  if (!st.tags) {
    auto in = open_in("success_tags.csv");
    st.tags = read_success_tags_csv(in, pubs);
  }
  if (!st.teams) {
    auto a = open_in("teams.csv");
    auto b = open_in("team_pubs.csv");
    st.teams = read_teams(a, b, pubs);
  }
  if (!st.timelines) {
    auto in = open_in("pair_timelines.csv");
    st.timelines = read_pair_timelines_csv(in, pubs.authors);
  }
  if (!st.network) {
    auto in = open_in("persistent_edges.csv");
    st.network = read_persistent_edges_csv(in, pubs.authors);
  }
  if (!st.relations) {
    auto in = open_in("overlaps.csv");
    st.relations = read_overlaps_csv(in);
  }
  if (!st.summaries) {
    auto in = open_in("impulses.csv");
    st.summaries = read_impulses_csv(in);
  }
  const auto& teams = st.teams->teams;
  if (id >= teams.size())
    throw InputError("unknown team id " + std::to_string(id) + " (" + std::to_string(teams.size()) + " teams)");
  const Team& t = teams[id];

  std::ostringstream o;
  o << "team " << t.id << "\n  members:";
  for (AuthorId a : t.members) o << ' ' << pubs.author_name(a);
  o << "\n  intervals:";
  for (const auto& p : t.intervals) o << ' ' << p.start << '-' << p.end;
  o << "\n  duration: " << t.duration.start << '-' << t.duration.end << " (" << t.duration_years() << " years)\n";
  const auto& m = st.teams->metrics[id];
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "  composition: %zu orgs, %zu cities, %zu countries, mean city distance %.1f km\n", m.orgs,
                m.cities, m.countries, m.mean_city_distance_km);
  o << buf;

  o << "  pairs:\n";
  for (std::size_t i = 0; i < t.members.size(); ++i)
    for (std::size_t j = i + 1; j < t.members.size(); ++j) {
      const auto pair = AuthorPair::of(t.members[i], t.members[j]);
      o << "    " << pubs.author_name(pair.a) << '-' << pubs.author_name(pair.b) << " periods";
      auto e = std::lower_bound(st.network->edges.begin(), st.network->edges.end(), pair,
                                [](const PersistentEdge& x, const AuthorPair& p) { return x.pair < p; });
      if (e != st.network->edges.end() && e->pair == pair)
        for (const auto& p : e->periods) o << ' ' << p.start << '-' << p.end;
      o << " years";
      if (auto k = st.timelines->find(pair))
        for (Year y : st.timelines->years(*k)) o << ' ' << y;
      o << '\n';
    }

  o << "  publications (" << t.pubs.size() << "):\n";
  for (PubIndex p : t.pubs) {
    const auto& tag = (*st.tags)[p];
    o << "    " << pubs.pubs[p].pub_id << ' ' << pubs.pubs[p].year << " citations=" << tag.citations_3y
      << (tag.top1 ? " top1" : tag.top10 ? " top10" : "") << '\n';
  }

  std::size_t as_focal = 0, as_other = 0;
  o << "  relations as focal team:\n";
  for (const auto& r : *st.relations)
    if (r.focal == id) {
      ++as_focal;
      o << "    other " << r.other << ": " << to_string(r.kind) << ", " << to_string(r.timing) << ", impulse "
        << to_string(r.impulse) << '\n';
    }
  if (!as_focal) o << "    none (closed team)\n";
  o << "  relations as other team:\n";
  for (const auto& r : *st.relations)
    if (r.other == id) {
      ++as_other;
      o << "    focal " << r.focal << ": " << to_string(r.kind) << ", " << to_string(r.timing) << ", impulse "
        << to_string(r.impulse) << '\n';
    }
  if (!as_other) o << "    none\n";
  if (id < st.summaries->size()) {
    const auto& s = (*st.summaries)[id];
    std::snprintf(buf, sizeof buf, "  impulses: persistence %zu, synchronous %zu, freshness %zu, %.3f per year\n",
                  s.by_impulse[0].total, s.by_impulse[1].total, s.by_impulse[2].total, s.impulses_per_year);
    o << buf;
  }
  return o.str();
}

}  // namespace pteams

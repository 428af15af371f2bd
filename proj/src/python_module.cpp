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


#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "pteams/cliques.hpp"
#include "pteams/persistence.hpp"
#include "pteams/pipeline.hpp"
#include "pteams/synth.hpp"
#include "pteams/teams.hpp"

namespace py = pybind11;
using namespace pteams;

namespace {

using Span = std::pair<Year, Year>;
using EdgeSpec = std::tuple<AuthorId, AuthorId, std::vector<Span>>;
using CliqueOut = std::pair<std::vector<AuthorId>, Span>;

PersistentNetwork network_of(const std::vector<EdgeSpec>& edges) {
  PersistentNetwork net;
  for (const auto& [a, b, periods] : edges) {
    if (a == b) throw py::value_error("self loop on author " + std::to_string(a));
    PersistentEdge e{AuthorPair::of(a, b), {}};
    for (auto [s, t] : periods) e.periods.push_back({s, t});
    net.edges.push_back(std::move(e));
  }
  std::sort(net.edges.begin(), net.edges.end(),
            [](const PersistentEdge& x, const PersistentEdge& y) { return x.pair.key() < y.pair.key(); });
  return net;
}

std::vector<CliqueOut> cliques_out(const std::vector<TemporalClique>& cs) {
  std::vector<CliqueOut> out;
  out.reserve(cs.size());
  for (const auto& c : cs) out.push_back({c.members, {c.span.start, c.span.end}});
  return out;
}

PipelineConfig config_of(const std::map<std::string, std::string>& settings) {
  PipelineConfig cfg;
  for (const auto& [k, v] : settings) cfg.set(k, v);
  cfg.validate();
  return cfg;
}

py::dict report_dict(const VerifyReport& r) {
  py::dict d;
  d["planted"] = r.planted;
  d["exact"] = r.exact;
  d["superset"] = r.superset;
  d["mined"] = r.mined;
  d["recall"] = r.recall();
  d["exact_recall"] = r.exact_recall();
  d["precision"] = r.precision();
  d["overlap_match_rate"] = r.overlap_match_rate();
  d["tag_match_rate"] = r.tag_match_rate();
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Persistent team mining over co-authorship corpora.";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<StageError>(m, "StageError", PyExc_RuntimeError);

  m.def(
      "persistent_periods",
      [](std::vector<Year> years, int window_len, int min_pubs) {
        std::vector<Span> out;
        for (auto p : persistent_periods(years, {window_len, min_pubs})) out.push_back({p.start, p.end});
        return out;
      },
      py::arg("years"), py::arg("window_len") = 5, py::arg("min_pubs") = 3,
      "Maximal persistent periods of a pair's publication years, as (start, end) pairs.");

  m.def(
      "enumerate_maximal_cliques",
      [](const std::vector<EdgeSpec>& edges, std::size_t min_size, unsigned threads) {
        auto net = network_of(edges);
        std::vector<TemporalClique> cs;
        {
          py::gil_scoped_release nogil;
          cs = enumerate_maximal_cliques(net, {1, 1, min_size, threads});
        }
        return cliques_out(cs);
      },
      py::arg("edges"), py::arg("min_size") = 2, py::arg("threads") = 0,
      "edges: (author_a, author_b, [(start, end), ...]). Returns (members, (start, end)) sorted.");

  m.def(
      "brute_force_cliques",
      [](const std::vector<EdgeSpec>& edges, std::size_t min_size) {
        try {
          return cliques_out(brute_force_cliques(network_of(edges), {1, 1, min_size, 1}));
        } catch (const std::invalid_argument& e) {
          throw py::value_error(e.what());
        }
      },
      py::arg("edges"), py::arg("min_size") = 2, "Reference enumeration for small networks.");

  m.def(
      "great_circle_km",
      [](double lat1, double lon1, double lat2, double lon2) { return great_circle_km({lat1, lon1}, {lat2, lon2}); },
      py::arg("lat1"), py::arg("lon1"), py::arg("lat2"), py::arg("lon2"));

  m.def(
      "run_pipeline",
      [](const std::map<std::string, std::string>& settings, std::optional<std::string> stage, bool force) {
        auto cfg = config_of(settings);
        std::vector<StageOutcome> outcomes;
        {
          py::gil_scoped_release nogil;
          Pipeline p(cfg);
          if (stage) outcomes.push_back(p.run(parse_stage(*stage), force));
          else outcomes = p.run_all(force);
        }
        py::list out;
        for (const auto& o : outcomes) {
          py::dict d;
          d["stage"] = std::string(to_string(o.stage));
          d["cached"] = o.cached;
          d["outputs"] = o.outputs;
          d["seconds"] = o.seconds;
          out.append(d);
        }
        return out;
      },
      py::arg("settings"), py::arg("stage") = py::none(), py::arg("force") = false,
      "Runs one stage or all stages. settings uses the same keys as the config file.");

  m.def(
      "explain",
      [](const std::map<std::string, std::string>& settings, TeamId team) {
        Pipeline p(config_of(settings));
        return p.explain(team);
      },
      py::arg("settings"), py::arg("team"));

  m.def(
      "generate_corpus",
      [](const std::string& preset, std::uint64_t seed, const std::filesystem::path& pubs,
         const std::filesystem::path& cites, std::optional<std::filesystem::path> truth) {
        SynthConfig cfg;
        try {
          cfg = synth_preset(preset, seed);
        } catch (const std::invalid_argument& e) {
          throw py::value_error(e.what());
        }
        GroundTruth t;
        {
          py::gil_scoped_release nogil;
          std::ofstream p(pubs), c(cites);
          if (!p || !c) throw InputError("cannot write corpus files");
          t = generate_corpus(cfg, p, c);
          if (truth) {
            std::ofstream tj(*truth);
            write_truth_json(tj, t);
          }
        }
        py::dict d;
        d["publications"] = t.publications;
        d["teams"] = t.teams.size();
        d["overlaps"] = t.overlaps.size();
        d["first_year"] = t.first_year;
        d["last_year"] = t.last_year;
        return d;
      },
      py::arg("preset"), py::arg("seed"), py::arg("pubs"), py::arg("cites"), py::arg("truth") = py::none());

  m.def(
      "verify",
      [](const std::filesystem::path& run_dir, const std::filesystem::path& truth_path) {
        std::ifstream in(truth_path);
        if (!in) throw InputError("cannot open " + truth_path.string());
        auto truth = read_truth_json(in);
        return report_dict(verify_against_truth(load_mined_artifacts(run_dir), truth));
      },
      py::arg("run_dir"), py::arg("truth"));
}

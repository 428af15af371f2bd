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

#include "pteams/cliques.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace pteams {

void CliqueParams::validate() const {
  if (delta != 1 || gamma != 1)
    throw std::invalid_argument("only delta = 1 and gamma = 1 are supported on the persistent network");
  if (min_size < 2) throw std::invalid_argument("clique min_size must be >= 2");
}

namespace {

// Undirected graph on local vertex ids; each adjacency entry carries the
// persistent period of that pair which contains the current start year.
struct LocalGraph {
  struct Arc {
    int to;
    Period period;
  };
  std::vector<std::vector<Arc>> adj;  // sorted by `to`

  [[nodiscard]] const Period& period(int u, int v) const {
    const auto& a = adj[static_cast<std::size_t>(u)];
    auto it = std::lower_bound(a.begin(), a.end(), v, [](const Arc& x, int key) { return x.to < key; });
    return it->period;
  }
};

// Bron-Kerbosch with Tomita pivoting over one threshold graph.
class MaximalCliqueSearch {
 public:
  MaximalCliqueSearch(const std::vector<std::vector<int>>& nbrs, std::function<void(const std::vector<int>&)> emit)
      : nbrs_(nbrs), emit_(std::move(emit)) {}

  void run() {
    const auto order = degeneracy_order();
    std::vector<int> position(nbrs_.size());
    for (std::size_t i = 0; i < order.size(); ++i) position[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
    for (int v : order) {
      const auto& nv = nbrs_[static_cast<std::size_t>(v)];
      if (nv.empty()) continue;
      std::vector<int> p, x;
      for (int w : nv) (position[static_cast<std::size_t>(w)] > position[static_cast<std::size_t>(v)] ? p : x).push_back(w);
      clique_ = {v};
      expand(std::move(p), std::move(x));
    }
  }

 private:
  std::vector<int> degeneracy_order() const {
    const std::size_t n = nbrs_.size();
    std::vector<std::size_t> degree(n);
    std::size_t max_deg = 0;
    for (std::size_t v = 0; v < n; ++v) max_deg = std::max(max_deg, degree[v] = nbrs_[v].size());
    std::vector<std::vector<int>> buckets(max_deg + 1);
    for (std::size_t v = 0; v < n; ++v) buckets[degree[v]].push_back(static_cast<int>(v));
    std::vector<bool> removed(n, false);
    std::vector<int> order;
    order.reserve(n);
    std::size_t d = 0;
    while (order.size() < n) {
      d = d > 0 ? d - 1 : 0;
      while (buckets[d].empty()) ++d;
      int v = buckets[d].back();
      buckets[d].pop_back();
      if (removed[static_cast<std::size_t>(v)] || degree[static_cast<std::size_t>(v)] != d) continue;
      removed[static_cast<std::size_t>(v)] = true;
      order.push_back(v);
      for (int w : nbrs_[static_cast<std::size_t>(v)]) {
        auto& dw = degree[static_cast<std::size_t>(w)];
        if (removed[static_cast<std::size_t>(w)]) continue;
        --dw;
        buckets[dw].push_back(w);
      }
    }
    return order;
  }

  static std::vector<int> intersect(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
  }

  static std::size_t intersection_size(const std::vector<int>& a, const std::vector<int>& b) {
    std::size_t n = 0;
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
      if (*i < *j) ++i;
      else if (*j < *i) ++j;
      else { ++n; ++i; ++j; }
    }
    return n;
  }

  void expand(std::vector<int> p, std::vector<int> x) {
    std::sort(p.begin(), p.end());
    std::sort(x.begin(), x.end());
    if (p.empty()) {
      if (x.empty()) emit_(clique_);
      return;
    }
    int pivot = -1;
    std::size_t best = 0;
    for (const auto* set : {&p, &x}) {
      for (int u : *set) {
        std::size_t k = intersection_size(p, nbrs_[static_cast<std::size_t>(u)]);
        if (pivot < 0 || k > best) {
          pivot = u;
          best = k;
        }
      }
    }
    std::vector<int> candidates;
    std::set_difference(p.begin(), p.end(), nbrs_[static_cast<std::size_t>(pivot)].begin(),
                        nbrs_[static_cast<std::size_t>(pivot)].end(), std::back_inserter(candidates));
    for (int v : candidates) {
      const auto& nv = nbrs_[static_cast<std::size_t>(v)];
      clique_.push_back(v);
      expand(intersect(p, nv), intersect(x, nv));
      clique_.pop_back();
      p.erase(std::lower_bound(p.begin(), p.end(), v));
      x.insert(std::lower_bound(x.begin(), x.end(), v), v);
    }
  }

  const std::vector<std::vector<int>>& nbrs_;
  std::function<void(const std::vector<int>&)> emit_;
  std::vector<int> clique_;
};

struct Component {
  std::vector<AuthorId> authors;       // sorted
  std::vector<std::size_t> edges;      // indices into the network
  std::vector<Year> starts;            // distinct period starts
};

std::vector<Component> components(const PersistentNetwork& net) {
  std::unordered_map<AuthorId, std::size_t> slot;
  std::vector<AuthorId> ids;
  for (const auto& e : net.edges)
    for (AuthorId a : {e.pair.a, e.pair.b})
      if (slot.emplace(a, ids.size()).second) ids.push_back(a);
  std::vector<std::size_t> parent(ids.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& e : net.edges) {
    auto ra = find(slot[e.pair.a]);
    auto rb = find(slot[e.pair.b]);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  }
  std::map<std::size_t, std::size_t> root_to_comp;
  std::vector<Component> comps;
  for (std::size_t i = 0; i < net.edges.size(); ++i) {
    auto root = find(slot[net.edges[i].pair.a]);
    auto [it, fresh] = root_to_comp.emplace(root, comps.size());
    if (fresh) comps.emplace_back();
    auto& c = comps[it->second];
    c.edges.push_back(i);
    c.authors.push_back(net.edges[i].pair.a);
    c.authors.push_back(net.edges[i].pair.b);
    for (const auto& p : net.edges[i].periods) c.starts.push_back(p.start);
  }
  for (auto& c : comps) {
    for (auto* v : {&c.authors}) {
      std::sort(v->begin(), v->end());
      v->erase(std::unique(v->begin(), v->end()), v->end());
    }
    std::sort(c.starts.begin(), c.starts.end());
    c.starts.erase(std::unique(c.starts.begin(), c.starts.end()), c.starts.end());
  }
  return comps;
}

// Maximal temporal cliques whose span starts exactly at `x`. A clique (M,
// [x, y]) is maximal iff M is a maximal clique among pairs connected over
// all of [x, y], and the pairwise periods containing x have latest start x
// and earliest end y.
std::vector<TemporalClique> cliques_starting_at(const PersistentNetwork& net, const Component& comp, Year x,
                                                std::size_t min_size) {
  const auto local = [&](AuthorId a) {
    return static_cast<int>(std::lower_bound(comp.authors.begin(), comp.authors.end(), a) - comp.authors.begin());
  };
  LocalGraph g;
  g.adj.resize(comp.authors.size());
  std::vector<Year> ends;
  bool any_start_here = false;
  for (std::size_t ei : comp.edges) {
    const auto& e = net.edges[ei];
    for (const auto& p : e.periods) {
      if (!p.contains(x)) continue;
      int u = local(e.pair.a);
      int v = local(e.pair.b);
      g.adj[static_cast<std::size_t>(u)].push_back({v, p});
      g.adj[static_cast<std::size_t>(v)].push_back({u, p});
      ends.push_back(p.end);
      any_start_here = any_start_here || p.start == x;
    }
  }
  std::vector<TemporalClique> out;
  if (!any_start_here) return out;
  for (auto& a : g.adj) std::sort(a.begin(), a.end(), [](const auto& l, const auto& r) { return l.to < r.to; });
  std::sort(ends.begin(), ends.end());
  ends.erase(std::unique(ends.begin(), ends.end()), ends.end());

  std::vector<std::vector<int>> nbrs(g.adj.size());
  for (Year y : ends) {
    for (std::size_t u = 0; u < g.adj.size(); ++u) {
      nbrs[u].clear();
      for (const auto& arc : g.adj[u])
        if (arc.period.end >= y) nbrs[u].push_back(arc.to);
    }
    MaximalCliqueSearch search(nbrs, [&](const std::vector<int>& m) {
      if (m.size() < min_size) return;
      Year latest_start = x - 1;
      Year earliest_end = y + 1;
      for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j) {
          const auto& p = g.period(m[i], m[j]);
          latest_start = std::max(latest_start, p.start);
          earliest_end = std::min(earliest_end, p.end);
        }
      if (latest_start != x || earliest_end != y) return;
      TemporalClique c;
      c.span = {x, y};
      c.members.reserve(m.size());
      for (int v : m) c.members.push_back(comp.authors[static_cast<std::size_t>(v)]);
      std::sort(c.members.begin(), c.members.end());
      out.push_back(std::move(c));
    });
    search.run();
  }
  return out;
}

}  // namespace

std::vector<TemporalClique> enumerate_maximal_cliques(const PersistentNetwork& net, const CliqueParams& params) {
  params.validate();
  const auto comps = components(net);
  std::vector<std::pair<std::size_t, Year>> tasks;
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (Year x : comps[c].starts) tasks.emplace_back(c, x);

  std::vector<std::vector<TemporalClique>> found(tasks.size());
  parallel_for(tasks.size(), params.threads, [&](std::size_t t) {
    found[t] = cliques_starting_at(net, comps[tasks[t].first], tasks[t].second, params.min_size);
  });
  std::vector<TemporalClique> out;
  for (auto& f : found) std::move(f.begin(), f.end(), std::back_inserter(out));
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end())
    throw InternalError("clique enumeration produced a duplicate");
  return out;
}

std::vector<TemporalClique> brute_force_cliques(const PersistentNetwork& net, const CliqueParams& params) {
  params.validate();
  std::vector<AuthorId> authors;
  Year y0 = 0, y1 = -1;
  bool any = false;
  for (const auto& e : net.edges) {
    authors.push_back(e.pair.a);
    authors.push_back(e.pair.b);
    for (const auto& p : e.periods) {
      y0 = any ? std::min(y0, p.start) : p.start;
      y1 = any ? std::max(y1, p.end) : p.end;
      any = true;
    }
  }
  std::sort(authors.begin(), authors.end());
  authors.erase(std::unique(authors.begin(), authors.end()), authors.end());
  if (!any) return {};
  const int n = static_cast<int>(authors.size());
  const int span_years = y1 - y0 + 1;
  if (n > static_cast<int>(kBruteForceMaxAuthors) || span_years > kBruteForceMaxYears)
    throw std::invalid_argument("brute_force_cliques: instance exceeds size guard (" + std::to_string(n) +
                                " authors, " + std::to_string(span_years) + " years)");

  std::vector<std::uint32_t> year_mask(static_cast<std::size_t>(n * n), 0);
  auto idx = [&](AuthorId a) {
    return static_cast<int>(std::lower_bound(authors.begin(), authors.end(), a) - authors.begin());
  };
  for (const auto& e : net.edges) {
    std::uint32_t m = 0;
    for (const auto& p : e.periods)
      for (Year y = p.start; y <= p.end; ++y) m |= 1u << (y - y0);
    int a = idx(e.pair.a), b = idx(e.pair.b);
    year_mask[static_cast<std::size_t>(a * n + b)] |= m;
    year_mask[static_cast<std::size_t>(b * n + a)] |= m;
  }

  struct Candidate {
    std::uint32_t members;
    int start, end;  // offsets from y0
  };
  std::vector<Candidate> all;
  for (std::uint32_t s = 1; s < (1u << n); ++s) {
    if (std::popcount(s) < 2) continue;
    std::uint32_t common = (1u << span_years) - 1;
    for (int i = 0; i < n && common; ++i) {
      if (!(s >> i & 1u)) continue;
      for (int j = i + 1; j < n && common; ++j)
        if (s >> j & 1u) common &= year_mask[static_cast<std::size_t>(i * n + j)];
    }
    for (int a = 0; a < span_years; ++a)
      for (int b = a; b < span_years; ++b) {
        std::uint32_t want = ((1u << (b - a + 1)) - 1) << a;
        if ((common & want) == want) all.push_back({s, a, b});
      }
  }
  auto weight = [](const Candidate& c) { return std::popcount(c.members) + (c.end - c.start + 1); };
  std::stable_sort(all.begin(), all.end(), [&](const auto& l, const auto& r) { return weight(l) > weight(r); });
  std::vector<Candidate> maximal;
  for (const auto& c : all) {
    bool dominated = std::any_of(maximal.begin(), maximal.end(), [&](const Candidate& m) {
      return (m.members & c.members) == c.members && m.start <= c.start && c.end <= m.end;
    });
    if (!dominated) maximal.push_back(c);
  }
  std::vector<TemporalClique> out;
  for (const auto& c : maximal) {
    if (static_cast<std::size_t>(std::popcount(c.members)) < params.min_size) continue;
    TemporalClique t;
    for (int i = 0; i < n; ++i)
      if (c.members >> i & 1u) t.members.push_back(authors[static_cast<std::size_t>(i)]);
    t.span = {y0 + c.start, y0 + c.end};
    out.push_back(std::move(t));
  }
  std::sort(out.begin(), out.end());
  return out;
}

void write_cliques_csv(std::ostream& out, const std::vector<TemporalClique>& cliques, const Dictionary& authors) {
  out << "members,start,end\n";
  for (const auto& c : cliques) {
    for (std::size_t i = 0; i < c.members.size(); ++i) out << (i ? ";" : "") << authors.name(c.members[i]);
    out << ',' << c.span.start << ',' << c.span.end << '\n';
  }
}

std::vector<TemporalClique> read_cliques_csv(std::istream& in, const Dictionary& authors) {
  std::vector<TemporalClique> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    if (++line_no == 1 || line.empty()) continue;
    std::istringstream row(line);
    std::string members, s, e;
    if (!std::getline(row, members, ',') || !std::getline(row, s, ',') || !std::getline(row, e))
      throw InputError("cliques line " + std::to_string(line_no) + ": malformed row");
    TemporalClique c;
    std::istringstream ms(members);
    std::string m;
    while (std::getline(ms, m, ';')) {
      auto id = authors.find(m);
      if (!id) throw InputError("cliques line " + std::to_string(line_no) + ": unknown author '" + m + "'");
      c.members.push_back(*id);
    }
    std::sort(c.members.begin(), c.members.end());
    c.span = {std::stoi(s), std::stoi(e)};
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace pteams

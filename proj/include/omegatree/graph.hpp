#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <limits>
#include <optional>
#include <vector>

#include "omegatree/words.hpp"

namespace omt {

/// Edge of a labeled digraph; the label is a symbol or a direction.
struct Edge {
  std::uint32_t label;
  State dst;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Adjacency lists kept sorted by (label, dst) so searches are reproducible.
struct LabeledDigraph {
  std::vector<std::vector<Edge>> out;

  std::size_t size() const noexcept { return out.size(); }

  void add(State src, std::uint32_t label, State dst) { out[src].push_back({label, dst}); }

  void normalize() {
    for (auto& edges : out) {
      std::sort(edges.begin(), edges.end());
      edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    }
  }
};

struct SccDecomposition {
  std::vector<std::size_t> component_of;      ///< per node; npos for excluded nodes
  std::vector<std::vector<State>> components;  ///< members sorted ascending
  std::vector<bool> recurrent;                 ///< contains a cycle

  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
};

/// Tarjan's algorithm (iterative) on the subgraph induced by `keep`
/// (all nodes when `keep` is empty). A singleton is recurrent iff it has a
/// self-loop.
inline SccDecomposition sccs(const LabeledDigraph& g, const std::vector<bool>& keep = {}) {
  const std::size_t n = g.size();
  auto kept = [&](State v) { return keep.empty() || keep[v]; };

  SccDecomposition result;
  result.component_of.assign(n, SccDecomposition::npos);
  std::vector<std::size_t> index(n, SccDecomposition::npos), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<State> stack;
  std::size_t counter = 0;

  struct Frame {
    State v;
    std::size_t next_edge;
  };
  std::vector<Frame> calls;

  for (State root = 0; root < n; ++root) {
    if (!kept(root) || index[root] != SccDecomposition::npos) continue;
    calls.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!calls.empty()) {
      Frame& f = calls.back();
      const auto& edges = g.out[f.v];
      if (f.next_edge < edges.size()) {
        State w = edges[f.next_edge++].dst;
        if (!kept(w)) continue;
        if (index[w] == SccDecomposition::npos) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          calls.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      State v = f.v;
      calls.pop_back();
      if (!calls.empty()) low[calls.back().v] = std::min(low[calls.back().v], low[v]);
      if (low[v] != index[v]) continue;
      std::vector<State> comp;
      State w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        result.component_of[w] = result.components.size();
        comp.push_back(w);
      } while (w != v);
      std::sort(comp.begin(), comp.end());
      bool cyclic = comp.size() > 1;
      if (!cyclic)
        for (const Edge& e : g.out[comp.front()]) cyclic = cyclic || e.dst == comp.front();
      result.components.push_back(std::move(comp));
      result.recurrent.push_back(cyclic);
    }
  }
  return result;
}

/// Nodes reachable from `from` (inclusive).
inline std::vector<bool> reachable_from(const LabeledDigraph& g, State from) {
  std::vector<bool> seen(g.size(), false);
  std::vector<State> todo{from};
  seen[from] = true;
  while (!todo.empty()) {
    State v = todo.back();
    todo.pop_back();
    for (const Edge& e : g.out[v])
      if (!seen[e.dst]) {
        seen[e.dst] = true;
        todo.push_back(e.dst);
      }
  }
  return seen;
}

/// Shortest label word from `from` to `to` using only nodes accepted by
/// `allowed` (the endpoints included). With `nonempty`, from == to yields the
/// shortest cycle instead of the empty word. Ties are broken by smallest label.
template <class Allowed>
std::optional<Word> shortest_word(const LabeledDigraph& g, State from, State to, Allowed allowed,
                                  bool nonempty = false) {
  const bool cycle = nonempty && from == to;
  if (from == to && !cycle) return Word{};
  const std::size_t n = g.size();
  std::vector<State> parent(n, 0);
  std::vector<std::uint32_t> via(n, 0);
  std::vector<bool> seen(n, false);
  seen[from] = !cycle;
  std::deque<State> queue{from};
  bool found = false;
  while (!queue.empty() && !found) {
    State v = queue.front();
    queue.pop_front();
    for (const Edge& e : g.out[v]) {
      if (seen[e.dst] || !allowed(e.dst)) continue;
      seen[e.dst] = true;
      parent[e.dst] = v;
      via[e.dst] = e.label;
      if (e.dst == to) {
        found = true;
        break;
      }
      queue.push_back(e.dst);
    }
  }
  if (!found) return std::nullopt;
  Word w;
  State cur = to;
  do {
    w.push_back(via[cur]);
    cur = parent[cur];
  } while (cur != from);
  std::reverse(w.begin(), w.end());
  return w;
}

}  // namespace omt

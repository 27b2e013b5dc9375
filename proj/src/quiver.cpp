#include "slices/quiver.hpp"

#include <algorithm>
#include <set>

namespace slices {

void Quiver::validate() const {
  std::set<std::string> vs;
  for (const auto& v : vertices) {
    if (!vs.insert(v).second) throw validation_error("duplicate vertex id: " + v);
  }
  std::set<std::string> as;
  for (const auto& a : arrows) {
    if (!as.insert(a.id).second) throw validation_error("duplicate arrow id: " + a.id);
    if (!vs.count(a.from)) throw validation_error("arrow " + a.id + " has dangling source " + a.from);
    if (!vs.count(a.to)) throw validation_error("arrow " + a.id + " has dangling target " + a.to);
  }
}

std::size_t Quiver::vertex_index(const std::string& v) const {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i] == v) return i;
  throw validation_error("unknown vertex: " + v);
}

std::vector<std::vector<std::size_t>> Quiver::out_adjacency() const {
  std::vector<std::vector<std::size_t>> adj(vertices.size());
  for (const auto& a : arrows) adj[vertex_index(a.from)].push_back(vertex_index(a.to));
  return adj;
}

Quiver Quiver::opposite() const {
  Quiver op;
  op.vertices = vertices;
  for (const auto& a : arrows) op.arrows.push_back({a.id, a.to, a.from});
  return op;
}

namespace {

// Simple undirected adjacency, parallel edges collapsed but counted.
struct Underlying {
  std::vector<std::set<std::size_t>> nbrs;
  std::size_t edge_count = 0;  // arrows, i.e. with multiplicity
  bool has_loop = false;
  bool has_multi = false;
};

Underlying underlying_graph(const Quiver& q) {
  Underlying u;
  u.nbrs.resize(q.vertices.size());
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& a : q.arrows) {
    auto s = q.vertex_index(a.from), t = q.vertex_index(a.to);
    ++u.edge_count;
    if (s == t) {
      u.has_loop = true;
      continue;
    }
    auto key = std::minmax(s, t);
    if (!seen.insert({key.first, key.second}).second) u.has_multi = true;
    u.nbrs[s].insert(t);
    u.nbrs[t].insert(s);
  }
  return u;
}

bool is_connected(const Underlying& u) {
  if (u.nbrs.empty()) return false;
  std::vector<bool> vis(u.nbrs.size(), false);
  std::vector<std::size_t> stack{0};
  vis[0] = true;
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    for (auto w : u.nbrs[v]) {
      if (!vis[w]) {
        vis[w] = true;
        stack.push_back(w);
      }
    }
  }
  return std::all_of(vis.begin(), vis.end(), [](bool b) { return b; });
}

std::optional<DynkinType> dynkin_of_tree(const Underlying& u) {
  const std::size_t n = u.nbrs.size();
  if (u.has_multi || u.has_loop) return std::nullopt;
  std::vector<std::size_t> deg(n);
  std::size_t branch = n;  // index of the unique degree-3 vertex, if any
  for (std::size_t v = 0; v < n; ++v) {
    deg[v] = u.nbrs[v].size();
    if (deg[v] > 3) return std::nullopt;
    if (deg[v] == 3) {
      if (branch != n) return std::nullopt;  // two branch points
      branch = v;
    }
  }
  if (branch == n) return DynkinType{'A', static_cast<int>(n)};
  // Walk the three branches away from the branch point.
  std::vector<int> lens;
  for (auto start : u.nbrs[branch]) {
    int len = 1;
    std::size_t prev = branch, cur = start;
    while (u.nbrs[cur].size() == 2) {
      auto it = u.nbrs[cur].begin();
      std::size_t nxt = (*it == prev) ? *std::next(it) : *it;
      prev = cur;
      cur = nxt;
      ++len;
    }
    if (u.nbrs[cur].size() == 3) return std::nullopt;  // hit the branch again
    lens.push_back(len);
  }
  std::sort(lens.begin(), lens.end());
  if (lens[0] != 1) return std::nullopt;
  if (lens[1] == 1) return DynkinType{'D', static_cast<int>(n)};
  if (lens[1] == 2 && lens[2] >= 2 && lens[2] <= 4)
    return DynkinType{'E', static_cast<int>(n)};
  return std::nullopt;
}

}  // namespace

QuiverClass classify(const Quiver& q) {
  q.validate();
  QuiverClass c;
  auto u = underlying_graph(q);
  c.connected = is_connected(u);

  // Cycle detection on the directed quiver.
  c.acyclic = true;
  try {
    topological_order(q);
  } catch (const validation_error&) {
    c.acyclic = false;
  }

  c.tree = c.connected && !u.has_loop && u.edge_count + 1 == q.vertices.size();
  if (c.tree) c.dynkin = dynkin_of_tree(u);
  return c;
}

std::vector<std::string> topological_order(const Quiver& q) {
  const std::size_t n = q.vertices.size();
  std::vector<std::size_t> indeg(n, 0);
  auto adj = q.out_adjacency();
  for (const auto& outs : adj)
    for (auto t : outs) ++indeg[t];
  // Deterministic: repeatedly take the smallest-index source.
  std::vector<std::string> order;
  std::vector<bool> done(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t pick = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (!done[v] && indeg[v] == 0) {
        pick = v;
        break;
      }
    }
    if (pick == n) throw validation_error("quiver has a directed cycle");
    done[pick] = true;
    order.push_back(q.vertices[pick]);
    for (auto t : adj[pick]) --indeg[t];
  }
  return order;
}

int positive_root_count(const DynkinType& t) {
  switch (t.family) {
    case 'A':
      return t.rank * (t.rank + 1) / 2;
    case 'D':
      return t.rank * (t.rank - 1);
    case 'E':
      if (t.rank == 6) return 36;
      if (t.rank == 7) return 63;
      if (t.rank == 8) return 120;
      break;
  }
  throw validation_error("not a Dynkin type: " + t.str());
}

}  // namespace slices

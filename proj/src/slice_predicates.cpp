#include "slices/slice_predicates.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace slices {

namespace {

std::vector<std::string> normalized(const TranslationQuiver& g, const SliceCandidate& s) {
  if (s.points.empty()) throw validation_error("empty slice candidate");
  std::vector<std::string> v = s.points;
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  for (const auto& p : v) g.point_index(p);
  return v;
}

bool contains(const std::vector<std::string>& sorted, const std::string& x) {
  return std::binary_search(sorted.begin(), sorted.end(), x);
}

bool all_interior(const TranslationQuiver& g, const std::vector<std::string>& s) {
  return std::all_of(s.begin(), s.end(), [&](const std::string& p) { return g.interior(p); });
}

bool connected_induced(const TranslationQuiver& g, const std::vector<std::string>& s) {
  std::set<std::string> todo(s.begin() + 1, s.end());
  std::vector<std::string> stack{s[0]};
  while (!stack.empty()) {
    std::string cur = stack.back();
    stack.pop_back();
    for (const auto* nb : {&g.out_neighbors(cur), &g.in_neighbors(cur)}) {
      for (const auto& n : *nb) {
        auto it = todo.find(n);
        if (it != todo.end()) {
          todo.erase(it);
          stack.push_back(n);
        }
      }
    }
  }
  return todo.empty();
}

// All sectional paths starting inside s stay inside s once they return to s.
// DFS over sectional paths without point revisits; windows are small.
bool sectionally_convex(const TranslationQuiver& g, const std::vector<std::string>& s) {
  bool ok = true;
  std::function<void(std::vector<std::string>&, std::set<std::string>&)> dfs =
      [&](std::vector<std::string>& path, std::set<std::string>& on_path) {
        if (!ok) return;
        const std::string& cur = path.back();
        for (const auto& next : g.out_neighbors(cur)) {
          if (on_path.count(next)) continue;
          if (path.size() >= 2) {
            auto t = g.tau(next);
            if (t && *t == path[path.size() - 2]) continue;  // not sectional
          }
          if (contains(s, next) && path.size() >= 2) {
            for (std::size_t i = 1; i + 1 < path.size() + 1; ++i)
              if (!contains(s, path[i])) {
                ok = false;
                return;
              }
          }
          path.push_back(next);
          on_path.insert(next);
          dfs(path, on_path);
          on_path.erase(next);
          path.pop_back();
        }
      };
  for (const auto& a : s) {
    std::vector<std::string> path{a};
    std::set<std::string> on_path{a};
    dfs(path, on_path);
    if (!ok) return false;
  }
  return true;
}

std::vector<std::string> forward_reach(const TranslationQuiver& g, const std::string& a) {
  std::set<std::string> seen{a};
  std::vector<std::string> stack{a};
  while (!stack.empty()) {
    auto cur = stack.back();
    stack.pop_back();
    for (const auto& n : g.out_neighbors(cur))
      if (seen.insert(n).second) stack.push_back(n);
  }
  return {seen.begin(), seen.end()};
}

std::set<std::string> backward_reach(const TranslationQuiver& g, const std::string& b) {
  std::set<std::string> seen{b};
  std::vector<std::string> stack{b};
  while (!stack.empty()) {
    auto cur = stack.back();
    stack.pop_back();
    for (const auto& n : g.in_neighbors(cur))
      if (seen.insert(n).second) stack.push_back(n);
  }
  return seen;
}

}  // namespace

bool p1_holds_at(const TranslationQuiver& g, const std::vector<std::string>& s,
                 const std::string& x) {
  for (const auto& y : g.out_neighbors(x)) {
    if (contains(s, y)) continue;
    auto t = g.tau(y);
    if (!t || !contains(s, *t)) return false;
  }
  return true;
}

bool p2_holds_at(const TranslationQuiver& g, const std::vector<std::string>& s,
                 const std::string& x) {
  for (const auto& y : g.in_neighbors(x)) {
    if (contains(s, y)) continue;
    auto t = g.tau_inv(y);
    if (!t || !contains(s, *t)) return false;
  }
  return true;
}

Verdict is_presection(const TranslationQuiver& g, const SliceCandidate& s) {
  auto pts = normalized(g, s);
  if (!all_interior(g, pts)) return Verdict::Boundary;
  if (!connected_induced(g, pts)) return Verdict::False;
  for (const auto& x : pts)
    if (!p1_holds_at(g, pts, x) || !p2_holds_at(g, pts, x)) return Verdict::False;
  return Verdict::True;
}

Verdict is_local_section(const TranslationQuiver& g, const SliceCandidate& s) {
  Verdict v = is_presection(g, s);
  if (v != Verdict::True) return v;
  return sectionally_convex(g, normalized(g, s)) ? Verdict::True : Verdict::False;
}

Verdict is_section(const TranslationQuiver& g, const SliceCandidate& s) {
  auto pts = normalized(g, s);
  if (!all_interior(g, pts)) return Verdict::Boundary;

  // (S1) the induced subquiver is acyclic: Kahn's algorithm on s.
  {
    std::map<std::string, int> indeg;
    for (const auto& p : pts) indeg[p] = 0;
    for (const auto& p : pts)
      for (const auto& n : g.out_neighbors(p))
        if (contains(pts, n)) ++indeg[n];
    std::vector<std::string> stack;
    for (auto& [p, d] : indeg)
      if (d == 0) stack.push_back(p);
    std::size_t seen = 0;
    while (!stack.empty()) {
      auto cur = stack.back();
      stack.pop_back();
      ++seen;
      for (const auto& n : g.out_neighbors(cur))
        if (contains(pts, n) && --indeg[n] == 0) stack.push_back(n);
    }
    if (seen != pts.size()) return Verdict::False;
  }

  // (S2) exactly one point per tau-orbit of g.
  {
    std::map<std::string, std::string> root;
    for (const auto& p : g.points) root[p.id] = p.id;
    std::function<std::string(const std::string&)> find = [&](const std::string& x) {
      std::string r = x;
      while (root[r] != r) r = root[r];
      root[x] = r;
      return r;
    };
    for (const auto& [a, b] : g.tau_pairs) root[find(a)] = find(b);
    std::map<std::string, int> hits;
    for (const auto& p : g.points) hits[find(p.id)] = 0;
    for (const auto& p : pts) ++hits[find(p)];
    for (const auto& [o, h] : hits)
      if (h != 1) return Verdict::False;
  }

  // (S3) convexity: between-sets of all ordered pairs stay inside s.
  for (const auto& a : pts) {
    auto fwd = forward_reach(g, a);
    for (const auto& b : pts) {
      if (a == b) continue;
      auto bwd = backward_reach(g, b);
      for (const auto& z : fwd)
        if (bwd.count(z) && !contains(pts, z)) return Verdict::False;
    }
  }
  return Verdict::True;
}

Verdict is_local_slice(const TranslationQuiver& g, const SliceCandidate& s) {
  if (!g.rank_hint) throw validation_error("translation quiver has no rank_hint");
  Verdict v = is_local_section(g, s);
  if (v != Verdict::True) return v;
  return normalized(g, s).size() == static_cast<std::size_t>(*g.rank_hint)
             ? Verdict::True
             : Verdict::False;
}

std::vector<SliceCandidate> enumerate_local_slices(const TranslationQuiver& g) {
  if (!g.rank_hint) throw validation_error("translation quiver has no rank_hint");
  const int k = *g.rank_hint;
  if (k > 8) throw resource_error("rank_hint > 8: enumeration capped");

  // Interior points and their undirected adjacency, index-ordered.
  std::vector<std::string> ids;
  for (const auto& p : g.points)
    if (g.interior(p.id)) ids.push_back(p.id);
  std::sort(ids.begin(), ids.end());
  std::map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < ids.size(); ++i) pos[ids[i]] = i;
  std::vector<std::vector<std::size_t>> adj(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    std::set<std::size_t> nb;
    for (const auto* lists : {&g.out_neighbors(ids[i]), &g.in_neighbors(ids[i])})
      for (const auto& n : *lists) {
        auto it = pos.find(n);
        if (it != pos.end() && it->second != i) nb.insert(it->second);
      }
    adj[i].assign(nb.begin(), nb.end());
  }

  // Wernicke-style enumeration of connected k-subsets, each exactly once.
  std::vector<SliceCandidate> out;
  std::vector<std::size_t> sub;
  std::vector<char> in_sub(ids.size(), 0), seen(ids.size(), 0);
  std::function<void(std::vector<std::size_t>, std::size_t)> extend =
      [&](std::vector<std::size_t> ext, std::size_t root) {
        if (sub.size() == static_cast<std::size_t>(k)) {
          SliceCandidate c;
          for (auto i : sub) c.points.push_back(ids[i]);
          std::sort(c.points.begin(), c.points.end());
          if (is_local_section(g, c) == Verdict::True) out.push_back(std::move(c));
          return;
        }
        while (!ext.empty()) {
          std::size_t w = ext.back();
          ext.pop_back();
          std::vector<std::size_t> ext2 = ext;
          std::vector<std::size_t> newly;
          for (auto u : adj[w])
            if (u > root && !seen[u]) {
              ext2.push_back(u);
              seen[u] = 1;
              newly.push_back(u);
            }
          sub.push_back(w);
          in_sub[w] = 1;
          extend(std::move(ext2), root);
          in_sub[w] = 0;
          sub.pop_back();
          for (auto u : newly) seen[u] = 0;
        }
      };
  for (std::size_t v = 0; v < ids.size(); ++v) {
    std::vector<std::size_t> ext;
    std::fill(seen.begin(), seen.end(), 0);
    seen[v] = 1;
    for (auto u : adj[v])
      if (u > v) {
        ext.push_back(u);
        seen[u] = 1;
      }
    sub = {v};
    in_sub[v] = 1;
    extend(std::move(ext), v);
    in_sub[v] = 0;
  }
  std::sort(out.begin(), out.end(),
            [](const SliceCandidate& a, const SliceCandidate& b) { return a.points < b.points; });
  return out;
}

}  // namespace slices

#include "slices/derived_model.hpp"

#include <algorithm>
#include <set>

namespace slices {

namespace {

// path_count[u][v] = number of directed paths u -> v in the (acyclic) quiver.
std::vector<std::vector<long long>> path_counts(const Quiver& q) {
  const std::size_t n = q.vertices.size();
  std::vector<std::vector<long long>> c(n, std::vector<long long>(n, 0));
  auto topo = topological_order(q);
  auto adj = q.out_adjacency();
  for (std::size_t u = 0; u < n; ++u) c[u][u] = 1;
  // Process targets in reverse topological order: c[u][v] = sum over u->w.
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    std::size_t u = q.vertex_index(*it);
    for (auto w : adj[u])
      for (std::size_t v = 0; v < n; ++v) c[u][v] += c[w][v];
  }
  return c;
}

bool is_zero(const DimVec& d) {
  return std::all_of(d.begin(), d.end(), [](long long x) { return x == 0; });
}

bool has_negative(const DimVec& d) {
  return std::any_of(d.begin(), d.end(), [](long long x) { return x < 0; });
}

}  // namespace

KnitResult knit(const Quiver& q) {
  auto cls = classify(q);
  if (!cls.dynkin) throw validation_error("knit requires a Dynkin quiver");
  const std::size_t n = q.vertices.size();
  auto paths = path_counts(q);
  auto topo = topological_order(q);

  KnitResult r;
  // dim P_v(w) = #paths w -> v (irreducible map P_u -> P_v for each arrow
  // u -> v, matching the ZQ arrow rule with projectives at level 0).
  std::map<std::pair<int, std::string>, DimVec> present;
  for (std::size_t vi = 0; vi < n; ++vi) {
    DimVec d(n);
    for (std::size_t w = 0; w < n; ++w) d[w] = paths[w][vi];
    present[{0, q.vertices[vi]}] = d;
    r.proj[q.vertices[vi]] = tq_point_id(0, q.vertices[vi]);
  }

  std::map<std::string, std::vector<std::string>> out_q, in_q;
  for (const auto& a : q.arrows) {
    out_q[a.from].push_back(a.to);
    in_q[a.to].push_back(a.from);
  }

  // Knit level by level: dim tau^{-1}(n,v) = sum of dims of the present
  // in-neighbors of (n+1,v) minus dim(n,v); stop an orbit when that vector
  // leaves the positive cone (the point was injective).
  const int cap = 1000;
  for (int lvl = 0; lvl < cap; ++lvl) {
    bool any = false;
    for (const auto& vname : topo) {
      auto at = present.find({lvl, vname});
      if (at == present.end()) continue;
      DimVec d(n, 0);
      for (const auto& u : in_q[vname]) {
        auto it = present.find({lvl + 1, u});
        if (it != present.end())
          for (std::size_t i = 0; i < n; ++i) d[i] += it->second[i];
      }
      for (const auto& w : out_q[vname]) {
        auto it = present.find({lvl, w});
        if (it != present.end())
          for (std::size_t i = 0; i < n; ++i) d[i] += it->second[i];
      }
      for (std::size_t i = 0; i < n; ++i) d[i] -= at->second[i];
      if (is_zero(d) || has_negative(d)) continue;  // (lvl, v) is injective
      present[{lvl + 1, vname}] = d;
      any = true;
    }
    if (!any) break;
  }

  int expected = positive_root_count(*cls.dynkin);
  if (static_cast<int>(present.size()) != expected)
    throw algorithm_failure("knitting produced " + std::to_string(present.size()) +
                            " modules, expected " + std::to_string(expected));

  // Injectives by dimension-vector match: dim I_v(w) = #paths v -> w.
  for (std::size_t vi = 0; vi < n; ++vi) {
    DimVec want(n);
    for (std::size_t w = 0; w < n; ++w) want[w] = paths[vi][w];
    bool found = false;
    for (const auto& [key, d] : present) {
      if (d == want) {
        r.inj[q.vertices[vi]] = tq_point_id(key.first, key.second);
        found = true;
        break;
      }
    }
    if (!found) throw algorithm_failure("injective of " + q.vertices[vi] + " not found");
  }

  // Assemble the translation quiver (a genuine AR quiver: no boundary).
  r.gamma.kind = TQKind::Deleted;
  r.gamma.rank_hint = static_cast<int>(n);
  for (const auto& [key, d] : present) {
    auto id = tq_point_id(key.first, key.second);
    r.gamma.points.push_back({id, key.second, key.first});
    r.dims[id] = d;
  }
  std::sort(r.gamma.points.begin(), r.gamma.points.end(),
            [](const TQPoint& a, const TQPoint& b) {
              return std::tie(a.orbit, a.level) < std::tie(b.orbit, b.level);
            });
  for (const auto& [key, d] : present) {
    auto [lvl, v] = key;
    for (const auto& w : out_q.count(v) ? out_q[v] : std::vector<std::string>{})
      if (present.count({lvl, w}))
        r.gamma.arrows.emplace_back(tq_point_id(lvl, v), tq_point_id(lvl, w));
    for (const auto& u : in_q.count(v) ? in_q[v] : std::vector<std::string>{})
      if (present.count({lvl + 1, u}))
        r.gamma.arrows.emplace_back(tq_point_id(lvl, v), tq_point_id(lvl + 1, u));
    if (present.count({lvl - 1, v}))
      r.gamma.tau_pairs.emplace_back(tq_point_id(lvl, v), tq_point_id(lvl - 1, v));
  }
  r.gamma.finalize();
  r.gamma.validate();
  return r;
}

bool is_zq_automorphism(const Quiver& q, const OffsetAutomorphism& phi) {
  std::set<std::pair<std::string, std::string>> arr;
  for (const auto& a : q.arrows) arr.insert({a.from, a.to});
  std::set<std::string> images;
  for (const auto& v : q.vertices) {
    if (!phi.map.count(v)) return false;
    if (!images.insert(phi.map.at(v).orbit).second) return false;
  }
  for (const auto& a : q.arrows) {
    const auto& iu = phi.map.at(a.from);
    const auto& iv = phi.map.at(a.to);
    bool same_level = arr.count({iu.orbit, iv.orbit}) && iu.offset == iv.offset;
    bool step = arr.count({iv.orbit, iu.orbit}) && iv.offset == iu.offset + 1;
    if (!same_level && !step) return false;
  }
  return true;
}

std::optional<std::string> DerivedModel::apply(const OffsetAutomorphism& phi,
                                               const std::string& point_id) const {
  const auto& p = window.point(point_id);
  const auto& im = phi.map.at(p.orbit);
  int lvl = p.level + im.offset;
  auto id = tq_point_id(lvl, im.orbit);
  if (!window.has_point(id)) return std::nullopt;
  return id;
}

std::optional<std::string> DerivedModel::apply_inv(const OffsetAutomorphism& phi,
                                                   const std::string& point_id) const {
  const auto& p = window.point(point_id);
  for (const auto& [src, im] : phi.map) {
    if (im.orbit != p.orbit) continue;
    auto id = tq_point_id(p.level - im.offset, src);
    if (!window.has_point(id)) return std::nullopt;
    return id;
  }
  return std::nullopt;
}

std::vector<std::string> DerivedModel::module_range() const {
  std::vector<std::string> out;
  for (const auto& [id, d] : dim_vectors) out.push_back(id);
  std::sort(out.begin(), out.end(), [&](const std::string& a, const std::string& b) {
    const auto& pa = window.point(a);
    const auto& pb = window.point(b);
    return std::tie(pa.level, pa.orbit) < std::tie(pb.level, pb.orbit);
  });
  return out;
}

DerivedModel build_model(const Quiver& q, int extra_margin) {
  if (extra_margin < 0) throw validation_error("window margin must be >= 0");
  auto cls = classify(q);
  if (!cls.dynkin) throw validation_error("build_model requires a Dynkin quiver");
  auto k = knit(q);

  DerivedModel m;
  m.quiver = q;
  m.type = *cls.dynkin;
  m.proj_pos = k.proj;
  m.inj_pos = k.inj;
  for (const auto& v : q.vertices) {
    const auto& ip = k.gamma.point(k.inj[v]);
    m.nu.map[v] = {ip.orbit, ip.level};
    m.shift.map[v] = {ip.orbit, ip.level + 1};
    m.F.map[v] = {ip.orbit, ip.level + 2};
  }
  if (!is_zq_automorphism(q, m.nu))
    throw algorithm_failure("nu is not a ZQ automorphism (convention bug)");

  int max_module_level = 0, max_f = 0;
  for (const auto& p : k.gamma.points) max_module_level = std::max(max_module_level, p.level);
  for (const auto& v : q.vertices) max_f = std::max(max_f, m.F.map.at(v).offset);
  m.window_lo = -max_f - 2 - extra_margin;
  m.window_hi = max_module_level + 2 * max_f + 2 + extra_margin;
  m.window = build_zq(q, m.window_lo, m.window_hi);
  for (const auto& [id, d] : k.dims) m.dim_vectors[id] = d;

  // F is fixed-point free: every row image either moves rows or moves
  // forward by >= 2 levels.
  for (const auto& v : q.vertices) {
    const auto& im = m.F.map.at(v);
    if (im.orbit == v && im.offset == 0)
      throw algorithm_failure("F has a fixed point at row " + v);
  }
  return m;
}

std::vector<std::string> fundamental_domain(const DerivedModel& m) {
  std::vector<std::string> out = m.module_range();
  for (const auto& v : m.quiver.vertices) {
    auto s = m.apply(m.shift, m.proj_pos.at(v));
    if (!s) throw algorithm_failure("shifted projective escapes the window");
    out.push_back(*s);
  }
  std::sort(out.begin(), out.end(), [&](const std::string& a, const std::string& b) {
    const auto& pa = m.window.point(a);
    const auto& pb = m.window.point(b);
    return std::tie(pa.level, pa.orbit) < std::tie(pb.level, pb.orbit);
  });
  return out;
}

}  // namespace slices

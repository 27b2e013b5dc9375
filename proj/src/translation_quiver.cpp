#include "slices/translation_quiver.hpp"

#include <algorithm>
#include <set>

namespace slices {

std::string tq_kind_name(TQKind k) {
  switch (k) {
    case TQKind::ZqWindow: return "zq-window";
    case TQKind::QuotientCyclic: return "quotient-cyclic";
    case TQKind::Deleted: return "deleted";
    case TQKind::Transcribed: return "transcribed";
    case TQKind::Tube: return "tube";
  }
  throw validation_error("bad translation-quiver kind");
}

TQKind tq_kind_from_name(const std::string& s) {
  if (s == "zq-window") return TQKind::ZqWindow;
  if (s == "quotient-cyclic") return TQKind::QuotientCyclic;
  if (s == "deleted") return TQKind::Deleted;
  if (s == "transcribed") return TQKind::Transcribed;
  if (s == "tube") return TQKind::Tube;
  throw validation_error("unknown translation-quiver kind: " + s);
}

OffsetAutomorphism OffsetAutomorphism::then(const OffsetAutomorphism& b) const {
  OffsetAutomorphism out;
  for (const auto& [orb, im] : map) {
    auto it = b.map.find(im.orbit);
    if (it == b.map.end()) throw validation_error("automorphism composition: missing orbit " + im.orbit);
    out.map[orb] = Image{it->second.orbit, im.offset + it->second.offset};
  }
  return out;
}

std::string tq_point_id(int level, const std::string& orbit) {
  return std::to_string(level) + ":" + orbit;
}

void TranslationQuiver::finalize() {
  idx_.clear();
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!idx_.emplace(points[i].id, i).second)
      throw validation_error("duplicate point id: " + points[i].id);
  }
  out_.assign(points.size(), {});
  in_.assign(points.size(), {});
  for (const auto& [s, t] : arrows) {
    out_[point_index(s)].push_back(t);
    in_[point_index(t)].push_back(s);
  }
  tau_.assign(points.size(), std::nullopt);
  tau_inv_.assign(points.size(), std::nullopt);
  for (const auto& [p, q] : tau_pairs) {
    auto pi = point_index(p), qi = point_index(q);
    if (tau_[pi] || tau_inv_[qi]) throw validation_error("tau multiply defined at " + p + " or " + q);
    tau_[pi] = qi;
    tau_inv_[qi] = pi;
  }
  std::set<std::string> bnd(boundary.begin(), boundary.end());
  interior_.assign(points.size(), true);
  for (const auto& b : bnd) interior_[point_index(b)] = false;
}

std::size_t TranslationQuiver::point_index(const std::string& id) const {
  auto it = idx_.find(id);
  if (it == idx_.end()) throw validation_error("unknown point id: " + id);
  return it->second;
}

std::optional<std::string> TranslationQuiver::tau(const std::string& id) const {
  auto t = tau_[point_index(id)];
  if (!t) return std::nullopt;
  return points[*t].id;
}

std::optional<std::string> TranslationQuiver::tau_inv(const std::string& id) const {
  auto t = tau_inv_[point_index(id)];
  if (!t) return std::nullopt;
  return points[*t].id;
}

const std::vector<std::string>& TranslationQuiver::out_neighbors(const std::string& id) const {
  return out_[point_index(id)];
}

const std::vector<std::string>& TranslationQuiver::in_neighbors(const std::string& id) const {
  return in_[point_index(id)];
}

std::vector<std::string> TranslationQuiver::orbit_ids() const {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& p : points)
    if (seen.insert(p.orbit).second) out.push_back(p.orbit);
  return out;
}

std::vector<std::string> TranslationQuiver::orbit_points(const std::string& orbit) const {
  std::vector<const TQPoint*> ps;
  for (const auto& p : points)
    if (p.orbit == orbit) ps.push_back(&p);
  std::sort(ps.begin(), ps.end(),
            [](const TQPoint* a, const TQPoint* b) { return a->level < b->level; });
  std::vector<std::string> out;
  for (auto* p : ps) out.push_back(p->id);
  return out;
}

std::optional<bool> TranslationQuiver::mesh_ok_at(const std::string& id) const {
  auto t = tau(id);
  if (!t || !interior(id)) return std::nullopt;
  auto ins = in_neighbors(id);
  auto outs = out_neighbors(*t);
  std::sort(ins.begin(), ins.end());
  std::sort(outs.begin(), outs.end());
  return ins == outs;
}

void TranslationQuiver::validate() const {
  if (idx_.size() != points.size())
    throw validation_error("translation quiver not finalized");
  for (const auto& [s, t] : arrows) {
    point_index(s);
    point_index(t);
  }
  for (const auto& m : marked)
    if (idx_.count(m)) throw validation_error("marked (deleted) point still present: " + m);
  for (const auto& b : boundary) point_index(b);

  // Orbit/level discipline of tau per kind.
  for (const auto& [p, q] : tau_pairs) {
    const auto& pp = points[point_index(p)];
    const auto& qq = points[point_index(q)];
    if (kind == TQKind::Deleted) continue;  // labels inherited; gaps allowed
    if (pp.orbit != qq.orbit)
      throw validation_error("tau leaves its orbit at " + p);
    bool ok = false;
    switch (kind) {
      case TQKind::ZqWindow:
      case TQKind::Transcribed:
        ok = qq.level == pp.level - 1;
        break;
      case TQKind::QuotientCyclic:
      case TQKind::Tube: {
        int n = static_cast<int>(orbit_points(pp.orbit).size());
        ok = (qq.level - pp.level + 1) % n == 0;
        break;
      }
      case TQKind::Deleted:
        break;
    }
    if (!ok) throw validation_error("tau level discipline violated at " + p);
  }

  for (const auto& p : points) {
    auto ok = mesh_ok_at(p.id);
    if (ok && !*ok) throw validation_error("mesh axiom fails at point " + p.id);
  }
}

TranslationQuiver build_zq(const Quiver& q, int lo, int hi) {
  topological_order(q);  // throws on a directed cycle
  if (lo > hi) throw validation_error("empty ZQ window");
  TranslationQuiver g;
  g.kind = TQKind::ZqWindow;
  g.rank_hint = static_cast<int>(q.vertices.size());
  for (int n = lo; n <= hi; ++n)
    for (const auto& v : q.vertices) g.points.push_back({tq_point_id(n, v), v, n});
  for (int n = lo; n <= hi; ++n) {
    for (const auto& a : q.arrows) {
      g.arrows.emplace_back(tq_point_id(n, a.from), tq_point_id(n, a.to));
      if (n + 1 <= hi) g.arrows.emplace_back(tq_point_id(n, a.to), tq_point_id(n + 1, a.from));
    }
  }
  for (int n = lo + 1; n <= hi; ++n)
    for (const auto& v : q.vertices)
      g.tau_pairs.emplace_back(tq_point_id(n, v), tq_point_id(n - 1, v));
  for (const auto& v : q.vertices) {
    g.boundary.push_back(tq_point_id(lo, v));
    if (hi != lo) g.boundary.push_back(tq_point_id(hi, v));
  }
  g.finalize();
  g.validate();
  return g;
}

namespace {

// Canonical representative of the <phi>-class of (level, orbit): walk sigma
// to the lexicographically least row of its sigma-cycle, then reduce the
// level modulo the cycle's total offset.
struct PhiClasser {
  const OffsetAutomorphism& phi;

  std::pair<int, std::string> canon(int level, const std::string& orbit) const {
    std::string least = orbit;
    {
      std::string v = phi.map.at(orbit).orbit;
      while (v != orbit) {
        least = std::min(least, v);
        v = phi.map.at(v).orbit;
      }
    }
    int carry = 0;
    std::string v = orbit;
    while (v != least) {
      carry += phi.map.at(v).offset;
      v = phi.map.at(v).orbit;
    }
    int total = phi.map.at(least).offset;
    for (std::string w = phi.map.at(least).orbit; w != least; w = phi.map.at(w).orbit)
      total += phi.map.at(w).offset;
    int m = (level + carry) % total;
    if (m < 0) m += total;
    return {m, least};
  }
};

}  // namespace

std::string phi_class_id(const OffsetAutomorphism& phi, int level, const std::string& orbit) {
  auto [lv, orb] = PhiClasser{phi}.canon(level, orbit);
  return tq_point_id(lv, orb);
}

TranslationQuiver quotient_by_automorphism(const TranslationQuiver& g,
                                           const OffsetAutomorphism& phi) {
  if (g.kind != TQKind::ZqWindow)
    throw validation_error("quotient_by_automorphism expects a zq-window");
  auto orbits = g.orbit_ids();
  std::set<std::string> orbset(orbits.begin(), orbits.end()), imgset;
  for (const auto& o : orbits) {
    auto it = phi.map.find(o);
    if (it == phi.map.end()) throw validation_error("automorphism misses orbit " + o);
    if (!orbset.count(it->second.orbit))
      throw validation_error("automorphism image outside quiver: " + it->second.orbit);
    if (!imgset.insert(it->second.orbit).second)
      throw validation_error("automorphism is not a row permutation");
  }
  // Every row-cycle must drift forward by at least two levels; this rejects
  // phi with fixed points and phi = tau (degenerate quotients).
  for (const auto& o : orbits) {
    int total = phi.map.at(o).offset;
    for (std::string w = phi.map.at(o).orbit; w != o; w = phi.map.at(w).orbit)
      total += phi.map.at(w).offset;
    if (total < 2)
      throw validation_error("automorphism does not act freely enough on orbit " + o +
                             " (cycle offset " + std::to_string(total) + " < 2)");
  }

  PhiClasser cl{phi};
  // class id -> an interior representative of g (the rep supplies the
  // class's arrows and tau, which a boundary rep could truncate).
  std::map<std::string, std::string> rep;
  std::vector<std::string> class_order;
  for (const auto& p : g.points) {
    auto [lv, orb] = cl.canon(p.level, p.orbit);
    std::string cid = tq_point_id(lv, orb);
    if (!rep.count(cid)) {
      rep[cid] = "";
      class_order.push_back(cid);
    }
    if (g.interior(p.id) && rep[cid].empty()) rep[cid] = p.id;
  }
  for (const auto& cid : class_order)
    if (rep[cid].empty())
      throw validation_error("window too small: class " + cid + " has no interior representative");

  auto project = [&](const std::string& pid) {
    const auto& p = g.point(pid);
    auto [lv, orb] = cl.canon(p.level, p.orbit);
    return tq_point_id(lv, orb);
  };

  TranslationQuiver out;
  out.kind = TQKind::QuotientCyclic;
  out.rank_hint = g.rank_hint;
  std::set<std::pair<std::string, std::string>> arrs, taus;
  for (const auto& cid : class_order) {
    const std::string& r = rep[cid];
    for (const auto& t : g.out_neighbors(r)) arrs.insert({cid, project(t)});
    auto tr = g.tau(r);
    if (!tr) throw validation_error("window too small: tau missing at representative " + r);
    taus.insert({cid, project(*tr)});
  }
  out.arrows.assign(arrs.begin(), arrs.end());
  out.tau_pairs.assign(taus.begin(), taus.end());

  // Relabel orbits and levels along the induced tau-cycles.
  std::map<std::string, std::string> tau_of;
  for (const auto& [p, q] : out.tau_pairs) tau_of[p] = q;
  std::set<std::string> placed;
  std::vector<TQPoint> pts;
  std::vector<std::string> sorted_classes = class_order;
  std::sort(sorted_classes.begin(), sorted_classes.end());
  for (const auto& cid : sorted_classes) {
    if (placed.count(cid)) continue;
    std::vector<std::string> cyc{cid};
    for (std::string c = tau_of.at(cid); c != cid; c = tau_of.at(c)) cyc.push_back(c);
    std::string base = *std::min_element(cyc.begin(), cyc.end());
    auto it = std::find(cyc.begin(), cyc.end(), base);
    std::rotate(cyc.begin(), it, cyc.end());
    // cyc now starts at base and follows tau; tau decreases level, so walk
    // it backwards to assign increasing levels 0,1,2,...
    std::reverse(cyc.begin() + 1, cyc.end());
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      pts.push_back({cyc[i], base, static_cast<int>(i)});
      placed.insert(cyc[i]);
    }
  }
  std::sort(pts.begin(), pts.end(), [](const TQPoint& a, const TQPoint& b) {
    return std::tie(a.orbit, a.level) < std::tie(b.orbit, b.level);
  });
  out.points = std::move(pts);
  out.finalize();
  out.validate();
  return out;
}

TranslationQuiver delete_points(const TranslationQuiver& g,
                                const std::vector<std::string>& marked_points) {
  std::set<std::string> del;
  for (const auto& m : marked_points) {
    g.point_index(m);  // throws on unknown id
    del.insert(m);
  }
  TranslationQuiver out;
  out.kind = TQKind::Deleted;
  out.rank_hint = g.rank_hint;
  for (const auto& p : g.points)
    if (!del.count(p.id)) out.points.push_back(p);
  for (const auto& a : g.arrows)
    if (!del.count(a.first) && !del.count(a.second)) out.arrows.push_back(a);
  for (const auto& t : g.tau_pairs)
    if (!del.count(t.first) && !del.count(t.second)) out.tau_pairs.push_back(t);
  out.marked = g.marked;
  for (const auto& m : del) out.marked.push_back(m);
  for (const auto& b : g.boundary)
    if (!del.count(b)) out.boundary.push_back(b);
  out.finalize();
  out.validate();
  return out;
}

TranslationQuiver synthetic_tube(int rank, int height) {
  if (rank < 1) throw validation_error("tube rank must be >= 1");
  if (height < 2) throw validation_error("tube height must be >= 2");
  TranslationQuiver g;
  g.kind = TQKind::Tube;
  g.rank_hint = rank;
  auto id = [&](int n, int l) { return std::to_string(((n % rank) + rank) % rank) + ":" + std::to_string(l); };
  for (int l = 1; l <= height; ++l)
    for (int n = 0; n < rank; ++n)
      g.points.push_back({id(n, l), "q" + std::to_string(l), n});
  for (int l = 1; l <= height; ++l) {
    for (int n = 0; n < rank; ++n) {
      if (l < height) g.arrows.emplace_back(id(n, l), id(n, l + 1));
      if (l >= 2) g.arrows.emplace_back(id(n, l), id(n + 1, l - 1));
      g.tau_pairs.emplace_back(id(n, l), id(n - 1, l));
    }
  }
  for (int n = 0; n < rank; ++n) g.boundary.push_back(id(n, height));
  g.finalize();
  g.validate();
  return g;
}

bool is_sectional(const TranslationQuiver& g, const std::vector<std::string>& path) {
  if (path.empty()) throw validation_error("empty path");
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const auto& outs = g.out_neighbors(path[i]);
    if (std::find(outs.begin(), outs.end(), path[i + 1]) == outs.end())
      throw validation_error("not a path: no arrow " + path[i] + " -> " + path[i + 1]);
  }
  for (std::size_t i = 1; i + 1 < path.size(); ++i) {
    auto t = g.tau(path[i + 1]);
    if (t && *t == path[i - 1]) return false;
  }
  return true;
}

}  // namespace slices

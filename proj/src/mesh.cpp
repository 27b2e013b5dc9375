#include "slices/mesh.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace slices {

namespace {

long long sat_add(long long a, long long b, long long cap) {
  return std::min(a + b, cap + 1);
}

}  // namespace

MeshContext::MeshContext(const DerivedModel& m, long long path_cap)
    : m_(m), cap_(path_cap) {}

long long MeshContext::path_count(const std::string& x, const std::string& y) {
  std::map<std::string, long long> memo;
  const int target_level = m_.window.point(y).level;
  std::function<long long(const std::string&)> cnt = [&](const std::string& z) -> long long {
    if (z == y) return 1;
    if (m_.window.point(z).level > target_level) return 0;
    auto it = memo.find(z);
    if (it != memo.end()) return it->second;
    long long total = 0;
    for (const auto& w : m_.window.out_neighbors(z)) total = sat_add(total, cnt(w), cap_);
    memo[z] = total;
    return total;
  };
  return cnt(x);
}

int MeshContext::hom_dim(const std::string& x, const std::string& y) {
  m_.window.point_index(y);
  std::lock_guard<std::mutex> lock(mu_);
  auto it = dim_cache_.find(x);
  if (it == dim_cache_.end()) {
    // One forward knitting pass over the window, seeded at x.
    std::map<std::string, int> rank_of;
    {
      auto topo = topological_order(m_.quiver);
      for (std::size_t i = 0; i < topo.size(); ++i) rank_of[topo[i]] = static_cast<int>(i);
    }
    std::vector<const TQPoint*> order;
    for (const auto& p : m_.window.points) order.push_back(&p);
    std::sort(order.begin(), order.end(), [&](const TQPoint* a, const TQPoint* b) {
      return std::tie(a->level, rank_of[a->orbit]) < std::tie(b->level, rank_of[b->orbit]);
    });
    std::map<std::string, int> g;
    for (const auto* p : order) {
      if (p->id == x) {
        g[p->id] = 1;
        continue;
      }
      int s = 0;
      for (const auto& w : m_.window.in_neighbors(p->id)) s += g.count(w) ? g[w] : 0;
      auto t = m_.window.tau(p->id);
      if (t && g.count(*t)) s -= g[*t];
      g[p->id] = std::max(0, s);
    }
    it = dim_cache_.emplace(x, std::move(g)).first;
  }
  return it->second.at(y);
}

const MeshContext::PairData& MeshContext::pair(const std::string& x, const std::string& y) {
  std::lock_guard<std::mutex> lock(mu_);
  auto key = std::make_pair(x, y);
  auto it = cache_.find(key);
  if (it != cache_.end()) return *it->second;

  auto d = std::make_unique<PairData>();
  long long n_paths = path_count(x, y);
  if (n_paths > cap_)
    throw resource_error("path explosion for Hom(" + x + ", " + y + "): more than " +
                         std::to_string(cap_) + " paths");

  // All paths x -> y, DFS in neighbor order (deterministic).
  {
    std::vector<std::string> cur{x};
    const int target_level = m_.window.point(y).level;
    std::function<void()> dfs = [&]() {
      const std::string& z = cur.back();
      if (z == y) {
        d->index.emplace(cur, d->paths.size());
        d->paths.push_back(cur);
        return;
      }
      if (m_.window.point(z).level > target_level) return;
      for (const auto& w : m_.window.out_neighbors(z)) {
        cur.push_back(w);
        dfs();
        cur.pop_back();
      }
    };
    dfs();
  }

  // Mesh subspace: p . (mesh relation ending at z) . q for every z with
  // tau(z) defined and reachable between x and y.
  SpanBuilder span(d->paths.size());
  if (!d->paths.empty()) {
    for (const auto& zp : m_.window.points) {
      const std::string& z = zp.id;
      auto t = m_.window.tau(z);
      if (!t) continue;
      if (path_count(x, *t) == 0 || path_count(z, y) == 0) continue;
      // Middle points of the mesh from tau(z) to z.
      std::vector<std::string> mids;
      for (const auto& w : m_.window.out_neighbors(*t)) {
        const auto& outs = m_.window.out_neighbors(w);
        if (std::find(outs.begin(), outs.end(), z) != outs.end()) mids.push_back(w);
      }
      if (mids.empty()) continue;
      // Enumerate prefixes and suffixes.
      std::vector<std::vector<std::string>> pre, suf;
      {
        std::vector<std::string> cur{x};
        const int tl = m_.window.point(*t).level;
        std::function<void()> dfs = [&]() {
          const std::string& zz = cur.back();
          if (zz == *t) {
            pre.push_back(cur);
            return;
          }
          if (m_.window.point(zz).level > tl) return;
          for (const auto& w : m_.window.out_neighbors(zz)) {
            cur.push_back(w);
            dfs();
            cur.pop_back();
          }
        };
        dfs();
      }
      {
        std::vector<std::string> cur{z};
        const int tl = m_.window.point(y).level;
        std::function<void()> dfs = [&]() {
          const std::string& zz = cur.back();
          if (zz == y) {
            suf.push_back(cur);
            return;
          }
          if (m_.window.point(zz).level > tl) return;
          for (const auto& w : m_.window.out_neighbors(zz)) {
            cur.push_back(w);
            dfs();
            cur.pop_back();
          }
        };
        dfs();
      }
      for (const auto& p : pre) {
        for (const auto& q : suf) {
          Vec row(d->paths.size(), Rat(0));
          for (const auto& w : mids) {
            std::vector<std::string> full = p;
            full.push_back(w);
            full.insert(full.end(), q.begin(), q.end());
            row[d->index.at(full)] += Rat(1);
          }
          span.add(std::move(row));
        }
      }
    }
  }
  d->mesh_rows = span.rows();
  d->pivots = span.pivots();
  std::vector<bool> is_pivot(d->paths.size(), false);
  for (auto p : d->pivots) is_pivot[p] = true;
  for (std::size_t c = 0; c < d->paths.size(); ++c)
    if (!is_pivot[c]) d->free_cols.push_back(c);
  d->space.source = x;
  d->space.target = y;
  d->space.total_paths = d->paths.size();
  d->space.dimension = d->free_cols.size();
  for (auto c : d->free_cols) d->space.path_basis.push_back(d->paths[c]);

  auto res = cache_.emplace(key, std::move(d));
  return *res.first->second;
}

MorphismVector MeshContext::project(const PairData& d, const std::string& x,
                                    const std::string& y, const Vec& full) const {
  Vec red = reduce_against(d.mesh_rows, d.pivots, full);
  MorphismVector out{x, y, {}};
  out.coeffs.reserve(d.free_cols.size());
  for (auto c : d.free_cols) out.coeffs.push_back(red[c]);
  return out;
}

const HomSpace& MeshContext::hom_space(const std::string& x, const std::string& y) {
  return pair(x, y).space;
}

MorphismVector MeshContext::zero(const std::string& x, const std::string& y) {
  const auto& d = pair(x, y);
  return MorphismVector{x, y, Vec(d.free_cols.size(), Rat(0))};
}

MorphismVector MeshContext::identity(const std::string& x) { return from_path({x}); }

MorphismVector MeshContext::from_path(const std::vector<std::string>& path) {
  if (path.empty()) throw validation_error("empty path");
  const auto& d = pair(path.front(), path.back());
  auto it = d.index.find(path);
  if (it == d.index.end()) throw validation_error("not a path of the window");
  Vec full(d.paths.size(), Rat(0));
  full[it->second] = Rat(1);
  return project(d, path.front(), path.back(), full);
}

std::vector<MorphismVector> MeshContext::hom_basis_vectors(const std::string& x,
                                                           const std::string& y) {
  const auto& d = pair(x, y);
  std::vector<MorphismVector> out;
  for (std::size_t i = 0; i < d.free_cols.size(); ++i) {
    MorphismVector f{x, y, Vec(d.free_cols.size(), Rat(0))};
    f.coeffs[i] = Rat(1);
    out.push_back(std::move(f));
  }
  return out;
}

MorphismVector MeshContext::add(const MorphismVector& f, const MorphismVector& g) const {
  if (f.source != g.source || f.target != g.target)
    throw validation_error("morphism addition: endpoint mismatch");
  MorphismVector out = f;
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] += g.coeffs[i];
  return out;
}

MorphismVector MeshContext::scale(const Rat& c, const MorphismVector& f) const {
  MorphismVector out = f;
  for (auto& x : out.coeffs) x *= c;
  return out;
}

MorphismVector MeshContext::compose(const MorphismVector& f, const MorphismVector& g) {
  if (f.target != g.source) throw validation_error("compose: endpoint mismatch");
  const auto& df = pair(f.source, f.target);
  const auto& dg = pair(g.source, g.target);
  const auto& dr = pair(f.source, g.target);
  Vec full(dr.paths.size(), Rat(0));
  for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
    if (f.coeffs[i].is_zero()) continue;
    const auto& pf = df.paths[df.free_cols[i]];
    for (std::size_t j = 0; j < g.coeffs.size(); ++j) {
      if (g.coeffs[j].is_zero()) continue;
      const auto& pg = dg.paths[dg.free_cols[j]];
      std::vector<std::string> cat = pf;
      cat.insert(cat.end(), pg.begin() + 1, pg.end());
      full[dr.index.at(cat)] += f.coeffs[i] * g.coeffs[j];
    }
  }
  return project(dr, f.source, g.target, full);
}

MorphismVector MeshContext::transport_F(const MorphismVector& f, int k) {
  if (k < 0) throw validation_error("transport_F: k must be >= 0");
  if (k == 0) return f;
  auto shift_pt = [&](const std::string& p) {
    std::string cur = p;
    for (int i = 0; i < k; ++i) {
      auto nx = m_.apply(m_.F, cur);
      if (!nx) throw validation_error("transport_F: image leaves the window at " + cur);
      cur = *nx;
    }
    return cur;
  };
  const auto& df = pair(f.source, f.target);
  std::string nx = shift_pt(f.source), ny = shift_pt(f.target);
  const auto& dr = pair(nx, ny);
  Vec full(dr.paths.size(), Rat(0));
  for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
    if (f.coeffs[i].is_zero()) continue;
    std::vector<std::string> img;
    for (const auto& pt : df.paths[df.free_cols[i]]) img.push_back(shift_pt(pt));
    full[dr.index.at(img)] += f.coeffs[i];
  }
  return project(dr, nx, ny, full);
}

}  // namespace slices

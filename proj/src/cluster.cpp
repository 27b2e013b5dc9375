#include "slices/cluster.hpp"

#include <algorithm>
#include <functional>

namespace slices {

ClusterModel::ClusterModel(const DerivedModel& m, long long path_cap)
    : m_(m), ctx_(m, path_cap), fd_(fundamental_domain(m)) {
  for (std::size_t i = 0; i < fd_.size(); ++i) fd_index_[fd_[i]] = i;
}

const std::string& ClusterModel::require_object(const std::string& id) const {
  if (!fd_index_.count(id))
    throw validation_error("not a fundamental-domain representative: " + id);
  return id;
}

int ClusterModel::cone_exit_level(const std::string& x) {
  auto it = cone_cache_.find(x);
  if (it != cone_cache_.end()) return it->second;
  // One fully-zero window level kills every level above it (the dimension
  // recursion at level n reads only levels n and n-1).
  const int lx = m_.window.point(x).level;
  for (int lvl = lx + 1; lvl <= m_.window_hi; ++lvl) {
    bool all_zero = true;
    for (const auto& v : m_.quiver.vertices)
      if (ctx_.hom_dim(x, tq_point_id(lvl, v)) != 0) {
        all_zero = false;
        break;
      }
    if (all_zero) {
      cone_cache_[x] = lvl;
      return lvl;
    }
  }
  throw resource_error("window too small to certify cone exit from " + x);
}

GradedHom ClusterModel::cluster_hom(const std::string& x, const std::string& y) {
  require_object(x);
  m_.window.point_index(y);  // y: any window point (used with shifts too)

  GradedHom out;
  out.source = x;
  out.target = y;
  out.cone_exit_level = cone_exit_level(x);
  const int lx = m_.window.point(x).level;

  auto record = [&](int grade, const std::string& z) {
    int d = ctx_.hom_dim(x, z);
    if (d > 0) {
      out.dims[grade] = d;
      out.total += d;
    }
  };

  // Upward: levels of F^i(y) strictly increase; stop past the cone exit.
  std::string z = y;
  int i = 0;
  while (m_.window.point(z).level < out.cone_exit_level) {
    record(i, z);
    auto nz = m_.apply(m_.F, z);
    if (!nz)
      throw resource_error("window too small to scan grade " + std::to_string(i + 1) +
                           " of Hom(" + x + ", " + y + ")");
    z = *nz;
    ++i;
  }
  out.grade_hi = i;

  // Downward: levels strictly decrease; below level(x) there is no path,
  // and leaving the window bottom lands below level(x) >= 0 as well.
  z = y;
  i = 0;
  while (true) {
    auto pz = m_.apply_inv(m_.F, z);
    if (!pz) break;
    z = *pz;
    --i;
    if (m_.window.point(z).level < lx) break;
    record(i, z);
  }
  out.grade_lo = i;
  return out;
}

int ClusterModel::ext1_dim(const std::string& x, const std::string& y) {
  auto key = std::make_pair(x, y);
  auto it = ext1_cache_.find(key);
  if (it != ext1_cache_.end()) return it->second;
  require_object(x);
  require_object(y);
  auto sy = m_.apply(m_.shift, y);
  if (!sy) throw resource_error("window too small to shift " + y);
  int d = cluster_hom(x, *sy).total;
  ext1_cache_[key] = d;
  return d;
}

bool ClusterModel::is_tilting(const std::vector<std::string>& candidate) {
  std::vector<std::string> c = candidate;
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  if (c.size() != m_.quiver.vertices.size()) return false;
  for (const auto& a : c)
    if (!fd_index_.count(a)) throw validation_error("not a fundamental-domain representative: " + a);
  for (const auto& a : c)
    for (const auto& b : c)
      if (ext1_dim(a, b) != 0) return false;
  return true;
}

std::vector<std::vector<std::string>> ClusterModel::enumerate_tilting() {
  const std::size_t rank = m_.quiver.vertices.size();
  if (rank > 6) throw resource_error("tilting enumeration capped at rank 6");
  const std::size_t n = fd_.size();

  std::vector<std::vector<bool>> compat(n, std::vector<bool>(n, false));
  std::vector<bool> self_ok(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    self_ok[i] = ext1_dim(fd_[i], fd_[i]) == 0;
    for (std::size_t j = i + 1; j < n; ++j)
      compat[i][j] = compat[j][i] =
          ext1_dim(fd_[i], fd_[j]) == 0 && ext1_dim(fd_[j], fd_[i]) == 0;
  }

  std::vector<std::vector<std::string>> out;
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> grow = [&](std::size_t start) {
    if (cur.size() == rank) {
      std::vector<std::string> t;
      for (auto k : cur) t.push_back(fd_[k]);
      out.push_back(std::move(t));
      return;
    }
    for (std::size_t k = start; k < n; ++k) {
      if (!self_ok[k]) continue;
      bool ok = true;
      for (auto c : cur)
        if (!compat[c][k]) {
          ok = false;
          break;
        }
      if (!ok) continue;
      cur.push_back(k);
      grow(k + 1);
      cur.pop_back();
    }
  };
  grow(0);
  return out;
}

}  // namespace slices

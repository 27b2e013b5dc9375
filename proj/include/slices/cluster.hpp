#pragma once

// The cluster category C = D/F at the combinatorial level: objects are
// F-orbits of window points (one fundamental-domain representative each),
// Hom is the graded sum over Hom_D(X, F^i Y), Ext^1 is shifted Hom, and
// tilting objects are rank-subsets with vanishing Ext^1.

#include <map>
#include <string>
#include <vector>

#include "slices/mesh.hpp"

namespace slices {

struct GradedHom {
  std::string source, target;
  std::map<int, int> dims;  // grade -> dimension, nonzero grades only
  int total = 0;
  // Certified scan range: grades outside [grade_lo, grade_hi] vanish because
  // F^i(target) either drops below level(source) or past the cone exit.
  int grade_lo = 0, grade_hi = 0;
  int cone_exit_level = 0;  // first window level with Hom(source, -) all zero
};

class ClusterModel {
 public:
  explicit ClusterModel(const DerivedModel& m, long long path_cap = 1000000);

  const DerivedModel& model() const { return m_; }
  MeshContext& mesh() { return ctx_; }
  // Orbit representatives (the fundamental domain), deterministic order.
  const std::vector<std::string>& objects() const { return fd_; }

  GradedHom cluster_hom(const std::string& x, const std::string& y);
  int ext1_dim(const std::string& x, const std::string& y);

  // |candidate| == rank, all distinct representatives, pairwise (and self)
  // Ext^1 vanishing.
  bool is_tilting(const std::vector<std::string>& candidate);

  // All tilting objects as sorted index-lexicographic lists of
  // representatives; rank > 6 raises resource_error.
  std::vector<std::vector<std::string>> enumerate_tilting();

 private:
  int cone_exit_level(const std::string& x);
  const std::string& require_object(const std::string& id) const;

  const DerivedModel& m_;
  MeshContext ctx_;
  std::vector<std::string> fd_;
  std::map<std::string, std::size_t> fd_index_;
  std::map<std::string, int> cone_cache_;
  std::map<std::pair<std::string, std::string>, int> ext1_cache_;
};

}  // namespace slices

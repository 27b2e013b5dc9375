#pragma once

// Finite translation quivers (Gamma, tau): ZQ windows, cyclic quotients,
// point deletion, synthetic stable-tube windows and hand-transcribed figure
// data. Every construction records which points are "boundary" (their
// neighborhoods are truncated by the window); predicates downstream return
// an indeterminate verdict there instead of a boolean.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "slices/common.hpp"
#include "slices/quiver.hpp"

namespace slices {

enum class TQKind { ZqWindow, QuotientCyclic, Deleted, Transcribed, Tube };

std::string tq_kind_name(TQKind k);
TQKind tq_kind_from_name(const std::string& s);

struct TQPoint {
  std::string id;
  std::string orbit;
  int level = 0;
};

// phi(level n, orbit v) = (n + offset[v], sigma[v]); the shape of every
// automorphism of ZQ used here (tau, nu, [1], F and their composites).
struct OffsetAutomorphism {
  struct Image {
    std::string orbit;
    int offset = 0;
  };
  std::map<std::string, Image> map;  // source orbit -> image

  // Compose: (a then b)(p) = b(a(p)).
  OffsetAutomorphism then(const OffsetAutomorphism& b) const;
};

struct TranslationQuiver {
  TQKind kind = TQKind::Transcribed;
  std::optional<int> rank_hint;
  std::vector<TQPoint> points;
  std::vector<std::pair<std::string, std::string>> arrows;
  std::vector<std::pair<std::string, std::string>> tau_pairs;  // tau(first) = second
  std::vector<std::string> marked;    // points removed by delete_points (for rendering)
  std::vector<std::string> boundary;  // window-truncated points (not interior)

  // Rebuilds the index below; call after any structural mutation.
  void finalize();
  // Structural invariants: ids, tau injectivity, orbit/level discipline per
  // kind, and the mesh axiom wherever it is checkable. Throws validation_error.
  void validate() const;

  std::size_t size() const { return points.size(); }
  bool has_point(const std::string& id) const { return idx_.count(id) != 0; }
  std::size_t point_index(const std::string& id) const;
  const TQPoint& point(const std::string& id) const { return points[point_index(id)]; }

  bool interior(const std::string& id) const { return interior_[point_index(id)]; }
  std::optional<std::string> tau(const std::string& id) const;
  std::optional<std::string> tau_inv(const std::string& id) const;
  const std::vector<std::string>& out_neighbors(const std::string& id) const;
  const std::vector<std::string>& in_neighbors(const std::string& id) const;

  // Distinct orbit ids in first-appearance order, and the points of one
  // orbit sorted by level.
  std::vector<std::string> orbit_ids() const;
  std::vector<std::string> orbit_points(const std::string& orbit) const;

  // Mesh axiom at z (in-neighbors of z == out-neighbors of tau z as sets):
  // nullopt when tau(z) is undefined or z is boundary (not checkable).
  std::optional<bool> mesh_ok_at(const std::string& id) const;

 private:
  std::map<std::string, std::size_t> idx_;
  std::vector<std::vector<std::string>> out_, in_;
  std::vector<std::optional<std::size_t>> tau_, tau_inv_;
  std::vector<bool> interior_;
};

// Point ids of generated quivers are "level:orbit".
std::string tq_point_id(int level, const std::string& orbit);

// ZQ over an acyclic quiver, levels lo..hi; boundary = the two extreme
// levels. Orbits are the vertices of q.
TranslationQuiver build_zq(const Quiver& q, int lo, int hi);

// Canonical class id of the point (level, orbit) under the group generated
// by phi; equals the point id assigned by quotient_by_automorphism.
std::string phi_class_id(const OffsetAutomorphism& phi, int level, const std::string& orbit);

// Quotient of a ZQ window by the group generated by phi. Preconditions:
// phi permutes the rows with total forward level-offset >= 2 around every
// row-cycle (this excludes fixed points and phi = tau), and the window is
// wide enough that every class has an interior representative.
TranslationQuiver quotient_by_automorphism(const TranslationQuiver& g,
                                           const OffsetAutomorphism& phi);

// Full subquiver on the complement of `marked_points`; tau kept where both
// endpoints survive; boundary and rank_hint inherited.
TranslationQuiver delete_points(const TranslationQuiver& g,
                                const std::vector<std::string>& marked_points);

// Stable tube ZA_inf / <tau^rank> truncated at quasi-length `height`;
// the top row is boundary. Point (n, l): id "n:l", orbit "q<l>", level n.
TranslationQuiver synthetic_tube(int rank, int height);

// True iff the path (given as consecutive arrow endpoints) never contains
// x -> y -> tau^{-1} x. Throws if the input is not a path of g.
bool is_sectional(const TranslationQuiver& g, const std::vector<std::string>& path);

}  // namespace slices

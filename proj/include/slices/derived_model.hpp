#pragma once

// Combinatorial model of the derived category of a Dynkin-type hereditary
// algebra: the AR quiver of mod kQ obtained by knitting, its embedding into
// a ZQ window with projectives at level 0, and the point automorphisms
// nu (Serre), shift ([1] = tau^{-1} nu) and F (= tau^{-1} shift).

#include <map>
#include <string>
#include <vector>

#include "slices/quiver.hpp"
#include "slices/translation_quiver.hpp"

namespace slices {

using DimVec = std::vector<long long>;  // indexed like quiver.vertices

struct KnitResult {
  TranslationQuiver gamma;                // the AR quiver, in ZQ coordinates
  std::map<std::string, DimVec> dims;     // point id -> dimension vector
  std::map<std::string, std::string> proj;  // vertex -> point id (level 0)
  std::map<std::string, std::string> inj;   // vertex -> point id
};

// Knit Gamma(mod kQ) for Dynkin q; throws validation_error otherwise.
KnitResult knit(const Quiver& q);

struct DerivedModel {
  Quiver quiver;
  DynkinType type;
  TranslationQuiver window;  // zq-window, >= 3 F-fundamental domains + margins
  std::map<std::string, std::string> proj_pos, inj_pos;  // vertex -> point id
  OffsetAutomorphism nu, shift, F;
  std::map<std::string, DimVec> dim_vectors;  // module-range points only
  int window_lo = 0, window_hi = 0;

  // Image of a window point under an offset automorphism (or its inverse);
  // nullopt when the image leaves the window.
  std::optional<std::string> apply(const OffsetAutomorphism& phi,
                                   const std::string& point_id) const;
  std::optional<std::string> apply_inv(const OffsetAutomorphism& phi,
                                       const std::string& point_id) const;

  // Points of the module range (level-sorted, deterministic).
  std::vector<std::string> module_range() const;
};

// extra_margin widens the window symmetrically beyond the default policy.
DerivedModel build_model(const Quiver& q, int extra_margin = 0);

// One representative per F-orbit: the module range plus the shifted
// projective slice; |result| = #positive roots + rank.
std::vector<std::string> fundamental_domain(const DerivedModel& m);

// Whether phi (rows + offsets) preserves the arrows of ZQ over q.
bool is_zq_automorphism(const Quiver& q, const OffsetAutomorphism& phi);

}  // namespace slices

#pragma once

// B = End_C(T~) for a tilting object T~: graded basis with exact structure
// constants, the bound quiver (Q~, I~), Gamma(mod B) as a deleted quotient,
// module actions, annihilators of local slices, tilted quotients, lifting of
// local slices to sections of the window, and the section-repair algorithm.

#include <functional>
#include <map>
#include <set>
#include <tuple>
#include <string>
#include <vector>

#include "slices/cluster.hpp"
#include "slices/slice_predicates.hpp"

namespace slices {

struct AlgebraBasisElem {
  std::size_t from = 0, to = 0;  // summand indices
  int grade = 0;                 // f lands in Hom_D(pt(from), F^grade pt(to))
  std::size_t k = 0;             // position inside that graded hom basis
  MorphismVector f;
};

struct AlgebraArrow {
  std::string id;
  std::size_t from = 0, to = 0;
  int grade = 0;
  std::size_t basis_index = 0;  // the basis element lifting this arrow
};

// A linear combination of parallel paths (each path = list of arrow ids)
// that maps to zero; the presentation-level form of one relation.
struct Relation {
  std::size_t from = 0, to = 0;
  std::vector<std::vector<std::string>> paths;
  Vec coeffs;  // same length as paths
};

struct Presentation {
  Quiver quiver;                       // per-vertex names "1".."n"
  std::map<std::string, int> grades;   // arrow id -> grade label
  std::vector<Relation> relations;
};

struct AnnIdeal {
  SliceCandidate slice;
  std::vector<Vec> ideal_basis;          // coefficient vectors over the algebra basis
  std::vector<std::string> arrow_generators;
  std::size_t dimension = 0;
};

struct ModuleAction {
  std::string point;  // mod-quiver point (class id; also a window point)
  // Basis of Hom_C(T_x, s) per summand: (grade, index) pairs, flattened in
  // summand-major order; dim_by_summand gives the block sizes.
  std::vector<std::size_t> dim_by_summand;
  std::size_t total_dim = 0;
  // Right action of every algebra basis element: matrices over the flattened
  // module coordinates (row = image coordinate, column = input coordinate).
  std::vector<Mat> action;
};

class ClusterTiltedAlgebra {
 public:
  ClusterTiltedAlgebra(ClusterModel& cm, const std::vector<std::string>& tilting);

  ClusterModel& cluster() const { return cm_; }
  const std::vector<std::string>& summands() const { return summands_; }
  std::size_t rank() const { return summands_.size(); }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<AlgebraBasisElem>& basis() const { return basis_; }
  const std::vector<AlgebraArrow>& arrows() const { return arrows_; }
  const Presentation& presentation() const { return pres_; }
  const TranslationQuiver& gamma_c() const { return gamma_c_; }
  const TranslationQuiver& mod_quiver() const { return mod_quiver_; }
  const std::vector<std::string>& deleted_classes() const { return deleted_; }

  std::string vertex_name(std::size_t i) const { return std::to_string(i + 1); }

  // Product of basis elements a.b ("a then b"), as algebra coordinates.
  const Vec& table(std::size_t a, std::size_t b) const { return table_[a][b]; }
  Vec multiply(const Vec& a, const Vec& b) const;
  Vec unit(std::size_t basis_index) const;

  // Value of a path of quiver arrows (front applied first) in B.
  Vec eval_path(const std::vector<std::string>& arrow_ids) const;

  ModuleAction module_action(const std::string& s) const;
  std::vector<SliceCandidate> local_slices() const;
  std::vector<SliceCandidate> local_slices_through(const std::string& point) const;

  AnnIdeal annihilator(const SliceCandidate& sigma) const;
  Presentation tilted_quotient(const SliceCandidate& sigma) const;
  std::vector<Presentation> realizing_tilted_algebras() const;

  // Lift of a local slice of mod_quiver to a section of the window that
  // avoids every F-translate of the tau(T~) positions.
  std::vector<std::string> lift_local_slice(const SliceCandidate& sigma) const;

  // pi(injective slice) for an all-module tilting representative.
  SliceCandidate canonical_slice_image() const;

  // All window points whose F-class is a deleted (tau T~) class.
  std::vector<std::string> forbidden_window_points() const;

  // Class of a window point in gamma_c.
  std::string project(const std::string& window_point) const;

 private:
  void build_basis();
  void build_quiver();
  void build_relations();
  void build_mod_quiver();
  std::size_t piece_offset(std::size_t i, std::size_t j, int grade) const;
  bool has_piece(std::size_t i, std::size_t j, int grade) const;
  Vec compute_product(const AlgebraBasisElem& a, const AlgebraBasisElem& b) const;
  std::vector<Relation> relations_by_kernel(
      const Quiver& q, const std::map<std::string, const AlgebraArrow*>& arrow_of,
      const std::function<Vec(const Vec&)>& residue, std::size_t residue_dim) const;

  ClusterModel& cm_;
  std::vector<std::string> summands_;
  std::map<std::pair<std::size_t, std::size_t>, GradedHom> hom_;
  // (i, j, grade) -> [offset, offset + dim) in the flat basis.
  std::map<std::tuple<std::size_t, std::size_t, int>, std::pair<std::size_t, std::size_t>> piece_;
  std::vector<AlgebraBasisElem> basis_;
  std::vector<std::vector<Vec>> table_;
  std::vector<AlgebraArrow> arrows_;
  Presentation pres_;
  TranslationQuiver gamma_c_, mod_quiver_;
  std::vector<std::string> deleted_;
};

ClusterTiltedAlgebra build_algebra(ClusterModel& cm, const std::vector<std::string>& tilting);

// Presentation isomorphism: vertex/arrow relabeling under which the relation
// spans agree per (length, source, target). Brute force; rank <= 6.
bool presentations_isomorphic(const Presentation& a, const Presentation& b);

// Local slices of an arbitrary translation quiver containing a given point.
std::vector<SliceCandidate> local_slices_through(const TranslationQuiver& g,
                                                 const std::string& point);

struct RepairResult {
  std::map<std::string, int> heights;  // orbit -> level
  std::vector<std::string> points;     // the section, sorted
  std::vector<int> d_log;              // nearest distance per outer round
  int rounds = 0;
};

// Section repair: the tau-stable section through M, iteratively
// pushed off the forbidden set R by cutting at the last edge towards each
// nearest forbidden point and translating the far subtree.
RepairResult section_through_avoiding(const DerivedModel& m, const std::string& M,
                                      const std::set<std::string>& R);

}  // namespace slices

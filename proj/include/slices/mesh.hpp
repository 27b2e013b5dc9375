#pragma once

// Hom spaces of the mesh category k(ZQ) over a derived model's window:
// path bases modulo mesh relations (exact elimination), a fast dimension
// recursion, composition, and transport of morphisms along F.

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "slices/derived_model.hpp"
#include "slices/exact.hpp"

namespace slices {

struct HomSpace {
  std::string source, target;
  // Reduced path representatives: the free columns of the mesh subspace.
  std::vector<std::vector<std::string>> path_basis;
  std::size_t dimension = 0;
  std::size_t total_paths = 0;
};

struct MorphismVector {
  std::string source, target;
  Vec coeffs;  // normal-form coordinates over the HomSpace path basis
};

class MeshContext {
 public:
  explicit MeshContext(const DerivedModel& m, long long path_cap = 1000000);

  const DerivedModel& model() const { return m_; }
  long long path_cap() const { return cap_; }

  // Number of directed paths x -> y inside the window, saturating at cap+1.
  long long path_count(const std::string& x, const std::string& y);

  // Dimension by the clamped knitting recursion
  //   g(x) = 1,  g(z) = max(0, sum_{w->z} g(w) - g(tau z))  (z != x).
  int hom_dim(const std::string& x, const std::string& y);

  // Full path/mesh linear algebra for the pair (throws resource_error past
  // the path cap). Cached; safe for concurrent use.
  const HomSpace& hom_space(const std::string& x, const std::string& y);

  MorphismVector zero(const std::string& x, const std::string& y);
  MorphismVector identity(const std::string& x);
  // Normal form of a single path given by its points (front = source).
  MorphismVector from_path(const std::vector<std::string>& path);
  std::vector<MorphismVector> hom_basis_vectors(const std::string& x, const std::string& y);

  bool is_zero(const MorphismVector& f) const { return is_zero_vec(f.coeffs); }
  MorphismVector add(const MorphismVector& f, const MorphismVector& g) const;
  MorphismVector scale(const Rat& c, const MorphismVector& f) const;

  // f: x->y then g: y->z, by path concatenation and reduction.
  MorphismVector compose(const MorphismVector& f, const MorphismVector& g);

  // Relabel every basis path by the point automorphism F (k >= 0 times);
  // throws validation_error if an image leaves the window.
  MorphismVector transport_F(const MorphismVector& f, int k = 1);

 private:
  struct PairData {
    std::vector<std::vector<std::string>> paths;  // all paths, DFS order
    std::map<std::vector<std::string>, std::size_t> index;
    Mat mesh_rows;                    // reduced echelon basis of the mesh subspace
    std::vector<std::size_t> pivots;  // its pivot columns
    std::vector<std::size_t> free_cols;
    HomSpace space;
  };

  const PairData& pair(const std::string& x, const std::string& y);
  MorphismVector project(const PairData& d, const std::string& x, const std::string& y,
                         const Vec& full) const;

  const DerivedModel& m_;
  long long cap_;
  std::mutex mu_;
  std::map<std::pair<std::string, std::string>, std::unique_ptr<PairData>> cache_;
  std::map<std::string, std::map<std::string, int>> dim_cache_;  // per source
};

}  // namespace slices

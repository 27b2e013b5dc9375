#pragma once

// Finite quivers (directed multigraphs with labeled arrows) and the
// classification predicates used by every other module.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "slices/common.hpp"

namespace slices {

struct QuiverArrow {
  std::string id;
  std::string from;
  std::string to;
};

struct Quiver {
  std::vector<std::string> vertices;
  std::vector<QuiverArrow> arrows;

  // Throws validation_error on duplicate ids or dangling endpoints.
  void validate() const;

  std::size_t vertex_index(const std::string& v) const;
  std::vector<std::vector<std::size_t>> out_adjacency() const;  // by vertex index
  Quiver opposite() const;
};

struct DynkinType {
  char family = 0;  // 'A', 'D' or 'E'
  int rank = 0;
  std::string str() const { return std::string(1, family) + std::to_string(rank); }
};

struct QuiverClass {
  bool connected = false;
  bool acyclic = false;
  bool tree = false;
  std::optional<DynkinType> dynkin;
};

QuiverClass classify(const Quiver& q);

// Vertices in a topological order of the arrows; throws if cyclic.
std::vector<std::string> topological_order(const Quiver& q);

// Number of positive roots of a simply laced Dynkin type.
int positive_root_count(const DynkinType& t);

}  // namespace slices

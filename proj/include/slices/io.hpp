#pragma once

// JSON (de)serialization with canonical key order and exact fraction strings,
// DOT rendering, and the named property-suite runner behind `verify`.

#include <string>
#include <vector>

#include "slices/cluster_tilted.hpp"

namespace slices {

inline constexpr const char* kFormatVersion = "slices/1";

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// FNV-1a (64 bit) of a byte string; used to pin golden files and tables.
unsigned long long fnv1a(const std::string& bytes);

// Canonical JSON text <-> objects. Serializers emit a fixed key order and a
// trailing newline, so save(load(text)) == text for canonical files. Schema
// violations throw validation_error whose message starts with a JSON pointer
// to the offending element.
std::string quiver_to_json(const Quiver& q);
Quiver quiver_from_json(const std::string& text);

std::string tq_to_json(const TranslationQuiver& g);
TranslationQuiver tq_from_json(const std::string& text);

std::string point_set_to_json(const std::vector<std::string>& points);
std::vector<std::string> point_set_from_json(const std::string& text);

std::string point_set_list_to_json(const std::vector<std::vector<std::string>>& sets);
std::vector<std::vector<std::string>> point_set_list_from_json(const std::string& text);

// A derived model is persisted as its generator quiver plus the derived
// tables; loading rebuilds from the quiver and cross-checks every table.
std::string model_to_json(const DerivedModel& m);
DerivedModel model_from_json(const std::string& text);

std::string presentation_to_json(const Presentation& p);
std::string presentation_list_to_json(const std::vector<Presentation>& ps);

std::string annihilator_to_json(const AnnIdeal& a);
std::string repair_to_json(const RepairResult& r, const std::string& point);

std::string algebra_to_json(const ClusterTiltedAlgebra& b);

// Parsed algebra file: enough to rebuild the algebra (hereditary quiver +
// tilting) plus the stored exact tables for cross-checking.
struct AlgebraFile {
  Quiver hereditary;
  std::vector<std::string> tilting;
  std::size_t dim = 0;
  // table[a][b] = structure-constant column as fraction strings.
  std::vector<std::vector<std::vector<std::string>>> table;
};
AlgebraFile algebra_from_json(const std::string& text);

// DOT rendering: deterministic byte output, tau as dashed edges, `boxed`
// points as boxes, slice members filled.
struct DotOptions {
  std::vector<std::string> boxed;
  std::vector<SliceCandidate> highlighted;
};
std::string render_dot(const Quiver& q);
std::string render_dot(const TranslationQuiver& g, const DotOptions& opt = {});

struct PropertyResult {
  std::string name;
  bool pass = false;
  std::string detail;  // counterexample payload on failure, stats on success
};

struct VerifyReport {
  std::string suite;
  std::vector<PropertyResult> properties;
  bool all_pass() const;
  std::string to_json() const;
};

// Individual properties (also reused by the acceptance runner).
namespace verify {
PropertyResult golden_data(const std::string& data_dir);
PropertyResult generated_mesh();
PropertyResult predicate_equivalence(unsigned seed, int min_samples);
PropertyResult tube_slices_empty();
PropertyResult dim_oracle_equivalence();
PropertyResult section_hom_vanishing(unsigned seed);
PropertyResult tilting_counts();
PropertyResult exchange_property();
PropertyResult annihilator_invariant();
PropertyResult canonical_slice_dims();
PropertyResult repair_coverage();
}  // namespace verify

// name in {axioms, mesh, cluster, tilted, repair, all}.
VerifyReport verify_suite(const std::string& name, const std::string& data_dir,
                          unsigned seed = 1);

}  // namespace slices

// Command dispatcher: every command is a pure function of its input files
// and flags, with canonical (byte-stable) output.

#include <iostream>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "slices/io.hpp"

using namespace slices;

namespace {

struct GlobalFlags {
  unsigned seed = 1;
  int window = 0;          // extra window margin (levels) for model building
  long long cap = 1000000;  // path cap for mesh linear algebra
  std::string format = "json";
};

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty())
    std::cout << text;
  else
    write_text_file(out_path, text);
}

// Keeps the model/cluster/algebra reference chain alive in one object.
struct AlgebraContext {
  DerivedModel model;
  ClusterModel cluster;
  ClusterTiltedAlgebra algebra;
  AlgebraContext(DerivedModel m, long long cap, const std::vector<std::string>& tilting)
      : model(std::move(m)), cluster(model, cap), algebra(cluster, tilting) {}
};

std::unique_ptr<AlgebraContext> load_algebra(const std::string& path, const GlobalFlags& gf) {
  AlgebraFile af = algebra_from_json(read_text_file(path));
  auto ctx = std::make_unique<AlgebraContext>(build_model(af.hereditary, gf.window), gf.cap,
                                              af.tilting);
  const auto& alg = ctx->algebra;
  if (alg.dim() != af.dim)
    throw validation_error("/dim: stored dimension disagrees with recomputation");
  for (std::size_t a = 0; a < alg.dim(); ++a)
    for (std::size_t b = 0; b < alg.dim(); ++b) {
      const Vec& col = alg.table(a, b);
      for (std::size_t k = 0; k < col.size(); ++k)
        if (col[k].str() != af.table[a][b][k])
          throw validation_error("/table/" + std::to_string(a) + "/" + std::to_string(b) +
                                 "/" + std::to_string(k) +
                                 ": stored structure constant disagrees with recomputation");
    }
  return ctx;
}

int run(int argc, char** argv) {
  CLI::App app{"local slices in cluster-tilted algebras: translation quivers, mesh Hom "
               "spaces, tilting enumeration, annihilators and section repair"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalFlags gf;
  app.add_option("--seed", gf.seed, "seed for randomized property suites");
  app.add_option("--window", gf.window, "extra window margin in levels")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--cap-paths", gf.cap, "path-enumeration cap for mesh linear algebra")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", gf.format, "output format")
      ->check(CLI::IsMember({"json", "dot"}));

  std::string quiver_path, set_path, predicate, model_path, from_id, to_id, out_path;
  std::string tilting_path, algebra_path, slice_path, point_id, forbidden_path;
  std::string suite, data_dir = "data";

  auto* check = app.add_subcommand("check", "evaluate a slice predicate on a point set");
  check->add_option("--quiver", quiver_path, "translation-quiver JSON file")->required();
  check->add_option("--set", set_path, "point-set JSON file")->required();
  check->add_option("--predicate", predicate, "predicate name")
      ->required()
      ->check(CLI::IsMember({"presection", "local-section", "section", "local-slice"}));

  auto* enumerate = app.add_subcommand("enumerate", "enumerate all local slices");
  enumerate->add_option("--quiver", quiver_path, "translation-quiver JSON file")->required();

  auto* derived = app.add_subcommand("derived", "derived-category models");
  auto* derived_build = derived->add_subcommand("build", "build the model of a Dynkin quiver");
  derived_build->add_option("--quiver", quiver_path, "quiver JSON file")->required();
  derived_build->add_option("--out", out_path, "output file (default stdout)");

  auto* mesh = app.add_subcommand("mesh", "mesh-category Hom spaces");
  auto* homdim = mesh->add_subcommand("homdim", "Hom dimension between window points");
  homdim->add_option("--model", model_path, "derived-model JSON file")->required();
  homdim->add_option("--from", from_id, "source point id");
  homdim->add_option("--to", to_id, "target point id");

  auto* cluster = app.add_subcommand("cluster", "cluster-category queries");
  auto* tilt_enum = cluster->add_subcommand("tilting-enumerate", "all tilting objects");
  tilt_enum->add_option("--model", model_path, "derived-model JSON file")->required();
  auto* ext1 = cluster->add_subcommand("ext1", "Ext^1 dimension between orbit objects");
  ext1->add_option("--model", model_path, "derived-model JSON file")->required();
  ext1->add_option("--x", from_id, "first orbit representative")->required();
  ext1->add_option("--y", to_id, "second orbit representative")->required();

  auto* ct = app.add_subcommand("ct", "cluster-tilted algebras");
  auto* ct_build = ct->add_subcommand("build", "build End(T~) as a quiver with relations");
  ct_build->add_option("--model", model_path, "derived-model JSON file")->required();
  ct_build->add_option("--tilting", tilting_path, "point-set JSON file of summands")->required();
  ct_build->add_option("--out", out_path, "output file (default stdout)");
  auto* ct_slices = ct->add_subcommand("slices", "local slices of Gamma(mod B)");
  ct_slices->add_option("algebra", algebra_path, "algebra JSON file")->required();
  auto* ct_ann = ct->add_subcommand("annihilator", "annihilator of a local slice");
  ct_ann->add_option("algebra", algebra_path, "algebra JSON file")->required();
  ct_ann->add_option("--slice", slice_path, "point-set JSON file")->required();
  auto* ct_tilted = ct->add_subcommand("tilted", "tilted quotient of a local slice");
  ct_tilted->add_option("algebra", algebra_path, "algebra JSON file")->required();
  ct_tilted->add_option("--slice", slice_path, "point-set JSON file")->required();
  auto* ct_realize = ct->add_subcommand("realize", "all realizing tilted algebras");
  ct_realize->add_option("algebra", algebra_path, "algebra JSON file")->required();
  auto* ct_repair = ct->add_subcommand("repair-section", "section through a point avoiding "
                                                         "a forbidden set");
  ct_repair->add_option("--model", model_path, "derived-model JSON file")->required();
  ct_repair->add_option("--point", point_id, "window point id")->required();
  ct_repair->add_option("--forbidden", forbidden_path, "point-set JSON file");

  auto* verify = app.add_subcommand("verify", "run a named property suite");
  verify->add_option("suite", suite, "axioms|mesh|cluster|tilted|repair|all")->required();
  verify->add_option("--data", data_dir, "golden data directory (default: data)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // usage errors are validation errors
  }

  if (check->parsed()) {
    auto g = tq_from_json(read_text_file(quiver_path));
    SliceCandidate s{point_set_from_json(read_text_file(set_path))};
    Verdict v;
    if (predicate == "presection")
      v = is_presection(g, s);
    else if (predicate == "local-section")
      v = is_local_section(g, s);
    else if (predicate == "section")
      v = is_section(g, s);
    else
      v = is_local_slice(g, s);
    std::cout << "{\n  \"predicate\": \"" << predicate << "\",\n  \"verdict\": \""
              << verdict_name(v) << "\"\n}\n";
    return 0;
  }
  if (enumerate->parsed()) {
    auto g = tq_from_json(read_text_file(quiver_path));
    std::vector<std::vector<std::string>> out;
    for (const auto& s : enumerate_local_slices(g)) out.push_back(s.points);
    std::cout << point_set_list_to_json(out);
    return 0;
  }
  if (derived_build->parsed()) {
    auto q = quiver_from_json(read_text_file(quiver_path));
    auto m = build_model(q, gf.window);
    emit(gf.format == "dot" ? render_dot(m.window) : model_to_json(m), out_path);
    return 0;
  }
  if (homdim->parsed()) {
    auto m = model_from_json(read_text_file(model_path));
    MeshContext ctx(m, gf.cap);
    if (!from_id.empty() && !to_id.empty()) {
      std::cout << "{\n  \"from\": \"" << from_id << "\",\n  \"to\": \"" << to_id
                << "\",\n  \"dim\": " << ctx.hom_dim(from_id, to_id) << "\n}\n";
      return 0;
    }
    std::cout << "source,target,dim\n";
    for (const auto& x : m.window.points) {
      if (!m.window.interior(x.id)) continue;
      for (const auto& y : m.window.points) {
        if (!m.window.interior(y.id)) continue;
        int d = ctx.hom_dim(x.id, y.id);
        if (d > 0) std::cout << x.id << "," << y.id << "," << d << "\n";
      }
    }
    return 0;
  }
  if (tilt_enum->parsed()) {
    auto m = model_from_json(read_text_file(model_path));
    ClusterModel cm(m, gf.cap);
    std::cout << point_set_list_to_json(cm.enumerate_tilting());
    return 0;
  }
  if (ext1->parsed()) {
    auto m = model_from_json(read_text_file(model_path));
    ClusterModel cm(m, gf.cap);
    std::cout << "{\n  \"x\": \"" << from_id << "\",\n  \"y\": \"" << to_id
              << "\",\n  \"dim\": " << cm.ext1_dim(from_id, to_id) << "\n}\n";
    return 0;
  }
  if (ct_build->parsed()) {
    auto m = model_from_json(read_text_file(model_path));
    ClusterModel cm(m, gf.cap);
    ClusterTiltedAlgebra alg(cm, point_set_from_json(read_text_file(tilting_path)));
    if (gf.format == "dot") {
      DotOptions opt;
      opt.boxed = alg.deleted_classes();
      emit(render_dot(alg.gamma_c(), opt), out_path);
    } else {
      emit(algebra_to_json(alg), out_path);
    }
    return 0;
  }
  if (ct_slices->parsed()) {
    auto ctx = load_algebra(algebra_path, gf);
    auto found = ctx->algebra.local_slices();
    if (gf.format == "dot") {
      std::cout << render_dot(ctx->algebra.mod_quiver(), DotOptions{{}, found});
      return 0;
    }
    std::vector<std::vector<std::string>> out;
    for (const auto& s : found) out.push_back(s.points);
    std::cout << point_set_list_to_json(out);
    return 0;
  }
  if (ct_ann->parsed()) {
    auto ctx = load_algebra(algebra_path, gf);
    SliceCandidate s{point_set_from_json(read_text_file(slice_path))};
    std::cout << annihilator_to_json(ctx->algebra.annihilator(s));
    return 0;
  }
  if (ct_tilted->parsed()) {
    auto ctx = load_algebra(algebra_path, gf);
    SliceCandidate s{point_set_from_json(read_text_file(slice_path))};
    std::cout << presentation_to_json(ctx->algebra.tilted_quotient(s));
    return 0;
  }
  if (ct_realize->parsed()) {
    auto ctx = load_algebra(algebra_path, gf);
    std::cout << presentation_list_to_json(ctx->algebra.realizing_tilted_algebras());
    return 0;
  }
  if (ct_repair->parsed()) {
    auto m = model_from_json(read_text_file(model_path));
    std::set<std::string> R;
    if (!forbidden_path.empty())
      for (const auto& p : point_set_from_json(read_text_file(forbidden_path))) R.insert(p);
    auto res = section_through_avoiding(m, point_id, R);
    std::cout << repair_to_json(res, point_id);
    return 0;
  }
  if (verify->parsed()) {
    auto rep = verify_suite(suite, data_dir, gf.seed);
    std::cout << rep.to_json();
    return rep.all_pass() ? 0 : 1;
  }
  throw validation_error("no command given");
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const validation_error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const resource_error& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return 3;
  } catch (const algorithm_failure& e) {
    std::cerr << "algorithm failure: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

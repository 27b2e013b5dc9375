#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "slices/io.hpp"

using namespace slices;

namespace {

const std::string kData = SLICES_DATA_DIR;

std::string golden(const std::string& name) { return read_text_file(kData + "/" + name); }

Quiver d4_star() {
  return Quiver{{"0", "1", "2", "3"},
                {{"a", "1", "0"}, {"b", "2", "0"}, {"c", "3", "0"}}};
}

}  // namespace

TEST_CASE("golden files are pinned byte-for-byte") {
  const std::vector<std::pair<std::string, unsigned long long>> pins = {
      {"rank5_window.json", 12026449197937344919ull},
      {"rank5_sigma.json", 10384097692186902192ull},
      {"rank5_sigma_prime.json", 13798410145172814328ull},
      {"rank3_window.json", 15531321519662966723ull},
      {"d4_quiver.json", 5392130555844563561ull},
      {"d4_tilting.json", 10734668587075744381ull},
      {"d4_window.json", 5333243792640239038ull},
      {"d4_marked.json", 16538675606874826011ull},
      {"d4_slices.json", 8915828110443200715ull},
  };
  for (const auto& [name, hash] : pins) {
    CAPTURE(name);
    CHECK(fnv1a(golden(name)) == hash);
  }
}

TEST_CASE("translation-quiver round trips are byte-stable") {
  for (const std::string name : {"rank5_window.json", "rank3_window.json", "d4_window.json"}) {
    CAPTURE(name);
    std::string bytes = golden(name);
    CHECK(tq_to_json(tq_from_json(bytes)) == bytes);
  }
}

TEST_CASE("point-set and quiver round trips are byte-stable") {
  for (const std::string name :
       {"rank5_sigma.json", "rank5_sigma_prime.json", "d4_tilting.json", "d4_marked.json"}) {
    CAPTURE(name);
    std::string bytes = golden(name);
    CHECK(point_set_to_json(point_set_from_json(bytes)) == bytes);
  }
  std::string q = golden("d4_quiver.json");
  CHECK(quiver_to_json(quiver_from_json(q)) == q);
  std::string l = golden("d4_slices.json");
  CHECK(point_set_list_to_json(point_set_list_from_json(l)) == l);
}

TEST_CASE("model round trip rebuilds and is byte-stable") {
  std::string bytes = model_to_json(build_model(d4_star(), 1));
  DerivedModel m = model_from_json(bytes);
  CHECK(model_to_json(m) == bytes);
  CHECK(m.quiver.vertices.size() == 4);
}

TEST_CASE("loading a mesh-violating quiver names the failing point") {
  auto j = nlohmann::ordered_json::parse(golden("rank5_window.json"));
  auto& arrows = j["arrows"];
  for (std::size_t i = 0; i < arrows.size(); ++i)
    if (arrows[i][0] == "3" && arrows[i][1] == "4/3") {
      arrows.erase(i);
      break;
    }
  CHECK_THROWS_WITH_AS(tq_from_json(j.dump(2) + "\n"),
                       doctest::Contains("mesh axiom fails at point"), validation_error);
}

TEST_CASE("golden-data property fails on a corrupted tau table") {
  namespace fs = std::filesystem;
  fs::path tmp = fs::temp_directory_path() / "slices_bad_data";
  fs::remove_all(tmp);
  fs::copy(kData, tmp);
  auto j = nlohmann::ordered_json::parse(golden("rank5_window.json"));
  for (auto& pair : j["tau"])
    if (pair[0] == "3/2") pair[1] = "3/21";  // cross-orbit translate
  write_text_file((tmp / "rank5_window.json").string(), j.dump(2) + "\n");
  auto res = verify::golden_data(tmp.string());
  CHECK_FALSE(res.pass);
  CHECK(res.detail.find("3/2") != std::string::npos);
  fs::remove_all(tmp);
}

TEST_CASE("version and schema violations carry JSON pointers") {
  std::string bytes = golden("rank5_sigma.json");
  std::string other = bytes;
  other.replace(other.find("slices/1"), 8, "slices/2");
  CHECK_THROWS_WITH_AS(point_set_from_json(other), doctest::Contains("/version"),
                       validation_error);
  CHECK_THROWS_WITH_AS(point_set_from_json("{\"version\": \"slices/1\", \"type\": "
                                           "\"point-set\"}"),
                       doctest::Contains("/points"), validation_error);
  CHECK_THROWS_WITH_AS(tq_from_json("not json"), doctest::Contains("parse"), validation_error);
}

TEST_CASE("dot rendering is deterministic and marks deleted points as boxes") {
  auto g = tq_from_json(golden("d4_window.json"));
  DotOptions opt;
  opt.boxed = point_set_from_json(golden("d4_marked.json"));
  std::string once = render_dot(g, opt);
  CHECK(once == render_dot(g, opt));
  std::size_t boxes = 0;
  for (std::size_t at = once.find("shape=box"); at != std::string::npos;
       at = once.find("shape=box", at + 1))
    ++boxes;
  CHECK(boxes == 4);
  CHECK(once.rfind("digraph translation_quiver {", 0) == 0);

  TranslationQuiver empty;
  empty.finalize();
  CHECK(render_dot(empty) == "digraph translation_quiver {\n  rankdir=LR;\n}\n");
}

TEST_CASE("algebra file reload reproduces every structure constant") {
  auto m = build_model(quiver_from_json(golden("d4_quiver.json")));
  ClusterModel cm(m);
  ClusterTiltedAlgebra alg(cm, point_set_from_json(golden("d4_tilting.json")));
  std::string bytes = algebra_to_json(alg);
  AlgebraFile f = algebra_from_json(bytes);
  CHECK(f.dim == alg.dim());
  CHECK(f.tilting == alg.summands());

  auto m2 = build_model(f.hereditary);
  ClusterModel cm2(m2);
  ClusterTiltedAlgebra alg2(cm2, f.tilting);
  REQUIRE(alg2.dim() == f.dim);
  for (std::size_t a = 0; a < f.dim; ++a)
    for (std::size_t b = 0; b < f.dim; ++b) {
      const Vec& col = alg2.table(a, b);
      REQUIRE(col.size() == f.table[a][b].size());
      for (std::size_t k = 0; k < col.size(); ++k) CHECK(col[k].str() == f.table[a][b][k]);
    }
  CHECK(fnv1a(algebra_to_json(alg2)) == fnv1a(bytes));
}

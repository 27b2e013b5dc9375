#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "slices/cluster_tilted.hpp"

using namespace slices;

namespace {

Quiver a2() { return Quiver{{"1", "2"}, {{"a", "1", "2"}}}; }
Quiver a3() { return Quiver{{"1", "2", "3"}, {{"a", "1", "2"}, {"b", "2", "3"}}}; }
Quiver d4_star() {
  return Quiver{{"0", "1", "2", "3"},
                {{"a", "1", "0"}, {"b", "2", "0"}, {"c", "3", "0"}}};
}

std::vector<std::string> projectives(const DerivedModel& m) {
  std::vector<std::string> out;
  for (const auto& v : m.quiver.vertices) out.push_back(m.proj_pos.at(v));
  return out;
}

// The rank-4 bound quiver with arrows be: 2->1, ep: 1->4, al: 4->2,
// ga: 4->3, de: 3->1 and relations {al.be - ga.de, be.ep, de.ep, ep.al, ep.ga}.
Presentation square_with_diagonal() {
  Presentation p;
  p.quiver.vertices = {"1", "2", "3", "4"};
  p.quiver.arrows = {{"be", "2", "1"}, {"ep", "1", "4"}, {"al", "4", "2"},
                     {"ga", "4", "3"}, {"de", "3", "1"}};
  p.relations.push_back({3, 0, {{"al", "be"}, {"ga", "de"}}, {Rat(1), Rat(-1)}});
  p.relations.push_back({1, 3, {{"be", "ep"}}, {Rat(1)}});
  p.relations.push_back({2, 3, {{"de", "ep"}}, {Rat(1)}});
  p.relations.push_back({0, 1, {{"ep", "al"}}, {Rat(1)}});
  p.relations.push_back({0, 2, {{"ep", "ga"}}, {Rat(1)}});
  return p;
}

}  // namespace

TEST_CASE("hereditary case: T = projectives gives back kQ") {
  for (const auto& q : {a2(), a3(), d4_star()}) {
    auto m = build_model(q);
    ClusterModel cm(m);
    auto alg = build_algebra(cm, projectives(m));

    CHECK(alg.arrows().size() == q.arrows.size());
    for (const auto& a : alg.arrows()) CHECK(a.grade == 0);
    CHECK(alg.presentation().relations.empty());

    // Gamma(mod B): deleted classes are the shifted slice, survivors are the
    // module-range classes; point count = positive roots.
    CHECK(alg.mod_quiver().size() == positive_root_count(*classify(q).dynkin));
    std::set<std::string> survivors;
    for (const auto& p : m.module_range()) survivors.insert(alg.project(p));
    CHECK(survivors.size() == alg.mod_quiver().size());
    for (const auto& c : survivors) CHECK(alg.mod_quiver().has_point(c));

    // The canonical slice image is the injective slice; nothing annihilates.
    auto img = alg.canonical_slice_image();
    auto ann = alg.annihilator(img);
    CHECK(ann.dimension == 0);
    CHECK(ann.arrow_generators.empty());

    // Exactly one realizing tilted algebra: kQ itself.
    auto real = alg.realizing_tilted_algebras();
    REQUIRE(real.size() == 1);
    CHECK(real[0].quiver.arrows.size() == q.arrows.size());
    CHECK(real[0].relations.empty());
  }
}

TEST_CASE("A2: every tilting object gives the hereditary algebra kA2") {
  auto m = build_model(a2());
  ClusterModel cm(m);
  for (const auto& t : cm.enumerate_tilting()) {
    auto alg = build_algebra(cm, t);
    CHECK(alg.dim() == 3);  // two idempotents + one arrow
    CHECK(alg.arrows().size() == 1);
    CHECK(alg.presentation().relations.empty());
    CHECK(alg.mod_quiver().size() == 3);
  }
}

TEST_CASE("basis products are homogeneous and idempotents act as units") {
  auto m = build_model(d4_star());
  ClusterModel cm(m);
  auto alg = build_algebra(cm, projectives(m));
  const auto& bs = alg.basis();
  // Locate the idempotents (diagonal grade-0 elements).
  std::map<std::size_t, std::size_t> idem;
  for (std::size_t i = 0; i < bs.size(); ++i)
    if (bs[i].from == bs[i].to && bs[i].grade == 0) idem[bs[i].from] = i;
  REQUIRE(idem.size() == alg.rank());
  for (std::size_t a = 0; a < bs.size(); ++a) {
    CHECK(alg.table(idem.at(bs[a].from), a) == alg.unit(a));
    CHECK(alg.table(a, idem.at(bs[a].to)) == alg.unit(a));
    for (std::size_t b = 0; b < bs.size(); ++b) {
      const Vec& t = alg.table(a, b);
      for (std::size_t k = 0; k < t.size(); ++k)
        if (!t[k].is_zero()) {
          CHECK(bs[k].from == bs[a].from);
          CHECK(bs[k].to == bs[b].to);
          CHECK(bs[k].grade == bs[a].grade + bs[b].grade);
        }
    }
  }
}

TEST_CASE("D4: some tilting object realizes the square-with-diagonal algebra") {
  auto m = build_model(d4_star());
  ClusterModel cm(m);
  auto target = square_with_diagonal();

  std::vector<std::vector<std::string>> witnesses;
  std::vector<std::string> module_witness;
  std::set<std::string> mrs;
  for (const auto& p : m.module_range()) mrs.insert(p);
  for (const auto& t : cm.enumerate_tilting()) {
    auto alg = build_algebra(cm, t);
    if (alg.arrows().size() != 5) continue;
    if (!presentations_isomorphic(alg.presentation(), target)) continue;
    witnesses.push_back(t);
    bool all_modules = true;
    for (const auto& s : t)
      if (!mrs.count(s)) all_modules = false;
    if (all_modules && module_witness.empty()) module_witness = t;
  }
  REQUIRE(!witnesses.empty());
  REQUIRE(!module_witness.empty());

  auto alg = build_algebra(cm, module_witness);
  // One new (grade 1) arrow, four inherited (grade 0) ones.
  int grade1 = 0;
  for (const auto& a : alg.arrows()) grade1 += a.grade == 1 ? 1 : 0;
  CHECK(grade1 == 1);
  CHECK(alg.dim() == 10);  // 4 idempotents + 5 arrows + the one surviving length-2 path
  CHECK(alg.mod_quiver().size() == 12);

  SUBCASE("realizing tilted algebras: exactly three presentations") {
    auto real = alg.realizing_tilted_algebras();
    REQUIRE(real.size() == 3);
    std::multiset<std::size_t> arrow_counts, rel_counts;
    for (const auto& p : real) {
      arrow_counts.insert(p.quiver.arrows.size());
      rel_counts.insert(p.relations.size());
    }
    CHECK(arrow_counts == std::multiset<std::size_t>{3, 3, 4});
    CHECK(rel_counts == std::multiset<std::size_t>{1, 2, 2});
  }

  SUBCASE("annihilator arrow-generator sets partition the arrows") {
    std::string grade1_arrow;
    for (const auto& a : alg.arrows())
      if (a.grade == 1) grade1_arrow = a.id;
    std::set<std::set<std::string>> gen_sets;
    for (const auto& s : alg.local_slices()) {
      auto ann = alg.annihilator(s);
      gen_sets.insert(
          std::set<std::string>(ann.arrow_generators.begin(), ann.arrow_generators.end()));
    }
    REQUIRE(gen_sets.size() == 3);
    CHECK(gen_sets.count({grade1_arrow}));
    std::set<std::string> all_gens;
    for (const auto& g : gen_sets) {
      CHECK((g.size() == 1 || g.size() == 2));
      all_gens.insert(g.begin(), g.end());
    }
    CHECK(all_gens.size() == 5);
  }

  SUBCASE("canonical slice image and the grade rule") {
    auto img = alg.canonical_slice_image();
    auto slices_list = alg.local_slices();
    bool found = false;
    for (const auto& s : slices_list)
      if (s.points == img.points) found = true;
    CHECK(found);
    auto ann = alg.annihilator(img);
    std::set<std::string> gens(ann.arrow_generators.begin(), ann.arrow_generators.end());
    std::set<std::string> grade1_arrows;
    int grade1_dim = 0;
    for (const auto& a : alg.arrows())
      if (a.grade == 1) grade1_arrows.insert(a.id);
    for (const auto& b : alg.basis()) grade1_dim += b.grade == 1 ? 1 : 0;
    CHECK(gens == grade1_arrows);
    // dim Ann(Sigma') = dim Hom_D(T, FT) (the grade-1 part of B).
    CHECK(static_cast<int>(ann.dimension) == grade1_dim);
  }

  SUBCASE("module dimensions") {
    int total = 0;
    bool has_dim4 = false;
    for (const auto& p : alg.mod_quiver().points) {
      auto ma = alg.module_action(p.id);
      CHECK(ma.total_dim >= 1);
      // Oracle: sum of linear-algebra Hom dimensions over the F-orbit,
      // filtered by Serre duality (nonzero Hom(x, z) needs a path x -> z and
      // a path z -> nu(x)) so far-away pairs are certified zero cheaply.
      auto hom = [&](const std::string& x, const std::string& z) -> std::size_t {
        if (cm.mesh().path_count(x, z) == 0) return 0;
        auto nx = m.apply(m.nu, x);
        REQUIRE(nx.has_value());
        if (cm.mesh().path_count(z, *nx) == 0) return 0;
        return cm.mesh().hom_space(x, z).dimension;
      };
      std::size_t oracle = 0;
      for (const auto& x : alg.summands()) {
        std::string z = p.id;
        oracle += hom(x, z);
        while (auto nz = m.apply(m.F, z)) {
          z = *nz;
          oracle += hom(x, z);
        }
        z = p.id;
        while (auto pz = m.apply_inv(m.F, z)) {
          z = *pz;
          oracle += hom(x, z);
        }
      }
      CHECK(ma.total_dim == oracle);
      total += static_cast<int>(ma.total_dim);
      if (ma.total_dim == 4) has_dim4 = true;
    }
    CHECK(has_dim4);
    CHECK(total == 24);
  }

  SUBCASE("local slices lift to sections avoiding the forbidden translates") {
    auto forb = alg.forbidden_window_points();
    for (const auto& s : alg.local_slices()) {
      auto lifted = alg.lift_local_slice(s);
      CHECK(lifted.size() == alg.rank());
      CHECK(is_section(m.window, SliceCandidate{lifted}) != Verdict::False);
      std::set<std::string> proj;
      for (const auto& p : lifted) proj.insert(alg.project(p));
      CHECK(std::vector<std::string>(proj.begin(), proj.end()) == s.points);
    }
  }

  SUBCASE("section repair succeeds from every module point") {
    std::set<std::string> R;
    for (const auto& p : alg.forbidden_window_points()) R.insert(p);
    for (const auto& p : alg.mod_quiver().points) {
      auto res = section_through_avoiding(m, p.id, R);
      CHECK(res.points.size() == alg.rank());
      for (std::size_t i = 1; i < res.d_log.size(); ++i)
        CHECK(res.d_log[i] > res.d_log[i - 1]);
      // pi(Sigma) is a local slice through pi(M).
      std::set<std::string> proj;
      for (const auto& w : res.points) proj.insert(alg.project(w));
      SliceCandidate img{std::vector<std::string>(proj.begin(), proj.end())};
      CHECK(is_local_slice(alg.mod_quiver(), img) == Verdict::True);
      CHECK(proj.count(p.id));
    }
  }

  SUBCASE("every point lies on a local slice") {
    for (const auto& p : alg.mod_quiver().points)
      CHECK(!alg.local_slices_through(p.id).empty());
  }
}

TEST_CASE("section repair with an empty forbidden set is the flat section") {
  auto m = build_model(a3());
  auto res = section_through_avoiding(m, "1:2", {});
  CHECK(res.rounds == 0);
  CHECK(res.d_log.empty());
  CHECK(res.points == std::vector<std::string>{"1:1", "1:2", "1:3"});
}

TEST_CASE("validation: non-tilting input and non-slice annihilator input") {
  auto m = build_model(a3());
  ClusterModel cm(m);
  auto fd = cm.objects();
  std::vector<std::string> bad{fd[0], fd[1], fd[2]};
  if (!cm.is_tilting(bad)) CHECK_THROWS_AS(build_algebra(cm, bad), validation_error);

  auto alg = build_algebra(cm, projectives(m));
  SliceCandidate not_a_slice{{alg.mod_quiver().points[0].id}};
  CHECK_THROWS_AS(alg.annihilator(not_a_slice), validation_error);
  CHECK_THROWS_AS(alg.lift_local_slice(not_a_slice), validation_error);
}

#include "slices/cluster_tilted.hpp"

#include <algorithm>
#include <functional>
#include <queue>

namespace slices {

namespace {

// Window point F^g(p) (g of either sign); throws when it leaves the window.
std::string shift_point(const DerivedModel& m, const std::string& p, int g) {
  std::string cur = p;
  for (; g > 0; --g) {
    auto nx = m.apply(m.F, cur);
    if (!nx) throw resource_error("F-translate leaves the window at " + cur);
    cur = *nx;
  }
  for (; g < 0; ++g) {
    auto pv = m.apply_inv(m.F, cur);
    if (!pv) throw resource_error("F-translate leaves the window at " + cur);
    cur = *pv;
  }
  return cur;
}

std::vector<std::string> normalized_points(const SliceCandidate& s) {
  std::vector<std::string> pts = s.points;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace

ClusterTiltedAlgebra::ClusterTiltedAlgebra(ClusterModel& cm,
                                           const std::vector<std::string>& tilting)
    : cm_(cm) {
  summands_ = tilting;
  std::sort(summands_.begin(), summands_.end());
  summands_.erase(std::unique(summands_.begin(), summands_.end()), summands_.end());
  if (!cm_.is_tilting(summands_)) throw validation_error("not a tilting object");
  build_basis();
  build_quiver();
  build_relations();
  build_mod_quiver();
}

ClusterTiltedAlgebra build_algebra(ClusterModel& cm, const std::vector<std::string>& tilting) {
  return ClusterTiltedAlgebra(cm, tilting);
}

bool ClusterTiltedAlgebra::has_piece(std::size_t i, std::size_t j, int grade) const {
  return piece_.count({i, j, grade}) != 0;
}

std::size_t ClusterTiltedAlgebra::piece_offset(std::size_t i, std::size_t j, int grade) const {
  return piece_.at({i, j, grade}).first;
}

void ClusterTiltedAlgebra::build_basis() {
  const auto& m = cm_.model();
  auto& ctx = cm_.mesh();
  for (std::size_t i = 0; i < summands_.size(); ++i)
    for (std::size_t j = 0; j < summands_.size(); ++j) {
      GradedHom gh = cm_.cluster_hom(summands_[i], summands_[j]);
      if (i == j && (gh.total != 1 || !gh.dims.count(0)))
        throw algorithm_failure("endomorphism ring of summand " + summands_[i] +
                                " is not one-dimensional in grade 0");
      for (const auto& [g, d] : gh.dims) {
        if (g < 0)
          throw algorithm_failure("negative grade in Hom(" + summands_[i] + ", " +
                                  summands_[j] + ")");
        piece_[{i, j, g}] = {basis_.size(), static_cast<std::size_t>(d)};
        auto target = shift_point(m, summands_[j], g);
        auto vecs = ctx.hom_basis_vectors(summands_[i], target);
        for (std::size_t k = 0; k < vecs.size(); ++k)
          basis_.push_back({i, j, g, k, vecs[k]});
      }
      hom_.emplace(std::make_pair(i, j), std::move(gh));
    }

  table_.assign(basis_.size(), std::vector<Vec>(basis_.size()));
  for (std::size_t a = 0; a < basis_.size(); ++a)
    for (std::size_t b = 0; b < basis_.size(); ++b)
      table_[a][b] = compute_product(basis_[a], basis_[b]);
}

Vec ClusterTiltedAlgebra::compute_product(const AlgebraBasisElem& a,
                                          const AlgebraBasisElem& b) const {
  Vec out(basis_.size(), Rat(0));
  if (a.to != b.from) return out;
  int g = a.grade + b.grade;
  if (!has_piece(a.from, b.to, g)) return out;  // certified-zero graded piece
  auto& ctx = cm_.mesh();
  auto prod = ctx.compose(a.f, ctx.transport_F(b.f, a.grade));
  std::size_t off = piece_offset(a.from, b.to, g);
  for (std::size_t c = 0; c < prod.coeffs.size(); ++c) out[off + c] = prod.coeffs[c];
  return out;
}

Vec ClusterTiltedAlgebra::unit(std::size_t basis_index) const {
  Vec v(basis_.size(), Rat(0));
  v[basis_index] = Rat(1);
  return v;
}

Vec ClusterTiltedAlgebra::multiply(const Vec& a, const Vec& b) const {
  Vec out(basis_.size(), Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j].is_zero()) continue;
      Rat c = a[i] * b[j];
      const Vec& t = table_[i][j];
      for (std::size_t k = 0; k < t.size(); ++k)
        if (!t[k].is_zero()) out[k] += c * t[k];
    }
  }
  return out;
}

void ClusterTiltedAlgebra::build_quiver() {
  // rad(i, j) for i != j is the whole Hom; rad(i, i) = 0 (End is local and
  // one-dimensional). rad^2 is spanned by products of such pieces; arrows
  // are unit lifts of a homogeneous complement of rad^2 in rad.
  int next = 1;
  for (std::size_t i = 0; i < summands_.size(); ++i)
    for (std::size_t j = 0; j < summands_.size(); ++j) {
      if (i == j) continue;
      const GradedHom& gh = hom_.at({i, j});
      for (const auto& [g, d] : gh.dims) {
        SpanBuilder rad2(static_cast<std::size_t>(d));
        std::size_t off = piece_offset(i, j, g);
        for (std::size_t w = 0; w < summands_.size(); ++w) {
          if (w == i || w == j) continue;
          for (std::size_t a = 0; a < basis_.size(); ++a) {
            if (basis_[a].from != i || basis_[a].to != w) continue;
            for (std::size_t b = 0; b < basis_.size(); ++b) {
              if (basis_[b].from != w || basis_[b].to != j) continue;
              if (basis_[a].grade + basis_[b].grade != g) continue;
              Vec row(static_cast<std::size_t>(d), Rat(0));
              const Vec& t = table_[a][b];
              for (std::size_t c = 0; c < row.size(); ++c) row[c] = t[off + c];
              rad2.add(std::move(row));
            }
          }
        }
        std::vector<bool> is_pivot(static_cast<std::size_t>(d), false);
        for (auto p : rad2.pivots()) is_pivot[p] = true;
        for (std::size_t c = 0; c < static_cast<std::size_t>(d); ++c)
          if (!is_pivot[c])
            arrows_.push_back({"a" + std::to_string(next++), i, j, g, off + c});
      }
    }

  pres_.quiver.vertices.clear();
  for (std::size_t i = 0; i < summands_.size(); ++i)
    pres_.quiver.vertices.push_back(vertex_name(i));
  for (const auto& a : arrows_) {
    pres_.quiver.arrows.push_back({a.id, vertex_name(a.from), vertex_name(a.to)});
    pres_.grades[a.id] = a.grade;
  }
}

Vec ClusterTiltedAlgebra::eval_path(const std::vector<std::string>& arrow_ids) const {
  if (arrow_ids.empty()) throw validation_error("empty path");
  std::map<std::string, std::size_t> by_id;
  for (const auto& a : arrows_) by_id[a.id] = a.basis_index;
  Vec v = unit(by_id.at(arrow_ids.front()));
  for (std::size_t k = 1; k < arrow_ids.size(); ++k)
    v = multiply(v, unit(by_id.at(arrow_ids[k])));
  return v;
}

std::vector<Relation> ClusterTiltedAlgebra::relations_by_kernel(
    const Quiver& q, const std::map<std::string, const AlgebraArrow*>& arrow_of,
    const std::function<Vec(const Vec&)>& residue, std::size_t residue_dim) const {
  // Arrows out of each vertex index, sorted by arrow id for lex path order.
  std::map<std::size_t, std::vector<const AlgebraArrow*>> out;
  for (const auto& qa : q.arrows) out[arrow_of.at(qa.id)->from].push_back(arrow_of.at(qa.id));
  for (auto& [v, as] : out)
    std::sort(as.begin(), as.end(),
              [](const AlgebraArrow* x, const AlgebraArrow* y) { return x->id < y->id; });

  struct PathInfo {
    std::vector<std::string> arrows;
    Vec value;  // algebra coordinates (pre-residue)
  };
  // Per (from, to): paths of the previous length and its full relation kernel.
  std::map<std::pair<std::size_t, std::size_t>, std::vector<PathInfo>> prev;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Vec>> prev_kernel;

  for (std::size_t i = 0; i < summands_.size(); ++i) {
    for (const auto* a : out.count(i) ? out[i] : std::vector<const AlgebraArrow*>{})
      prev[{i, a->to}].push_back({{a->id}, unit(a->basis_index)});
  }
  // Length-1 sanity: surviving arrows must be independent in the quotient.
  for (const auto& [key, paths] : prev) {
    Mat cols(residue_dim, Vec(paths.size(), Rat(0)));
    for (std::size_t p = 0; p < paths.size(); ++p) {
      Vec r = residue(paths[p].value);
      for (std::size_t c = 0; c < residue_dim; ++c) cols[c][p] = r[c];
    }
    auto ker = kernel_basis(cols, paths.size());
    if (!ker.empty())
      throw algorithm_failure("presentation is not admissible: dependent arrows");
    prev_kernel[key] = {};
  }

  std::vector<Relation> gens;
  const std::size_t cap = 2 * basis_.size() + 4;
  for (std::size_t len = 2; len <= cap + 1; ++len) {
    if (len > cap) throw resource_error("relation search exceeded length cap");
    // Extend every previous path by one arrow.
    std::map<std::pair<std::size_t, std::size_t>, std::vector<PathInfo>> curr;
    for (const auto& [key, paths] : prev) {
      auto it = out.find(key.second);
      if (it == out.end()) continue;
      for (const auto& pi : paths)
        for (const auto* a : it->second) {
          PathInfo np;
          np.arrows = pi.arrows;
          np.arrows.push_back(a->id);
          np.value = multiply(pi.value, unit(a->basis_index));
          curr[{key.first, a->to}].push_back(std::move(np));
        }
    }
    if (curr.empty()) break;
    for (auto& [key, paths] : curr)
      std::sort(paths.begin(), paths.end(),
                [](const PathInfo& x, const PathInfo& y) { return x.arrows < y.arrows; });

    bool all_zero = true;
    std::map<std::pair<std::size_t, std::size_t>, std::vector<Vec>> curr_kernel;
    for (const auto& [key, paths] : curr) {
      std::map<std::vector<std::string>, std::size_t> index;
      for (std::size_t p = 0; p < paths.size(); ++p) index[paths[p].arrows] = p;

      Mat cols(residue_dim, Vec(paths.size(), Rat(0)));
      for (std::size_t p = 0; p < paths.size(); ++p) {
        Vec r = residue(paths[p].value);
        for (std::size_t c = 0; c < residue_dim; ++c) {
          cols[c][p] = r[c];
          if (!r[c].is_zero()) all_zero = false;
        }
      }
      auto ker = kernel_basis(cols, paths.size());
      curr_kernel[key] = ker;

      // Ideal part at this length: arrow * (kernel of length-1 shorter) and
      // (kernel) * arrow, expressed over the current paths.
      SpanBuilder ideal(paths.size());
      for (const auto& [pkey, pker] : prev_kernel) {
        const auto& ppaths = prev.at(pkey);
        for (const auto& k : pker) {
          for (const auto& qa : q.arrows) {
            const auto* a = arrow_of.at(qa.id);
            if (a->to == pkey.first && key == std::make_pair(a->from, pkey.second)) {
              Vec row(paths.size(), Rat(0));
              for (std::size_t p = 0; p < k.size(); ++p) {
                if (k[p].is_zero()) continue;
                std::vector<std::string> ext{a->id};
                ext.insert(ext.end(), ppaths[p].arrows.begin(), ppaths[p].arrows.end());
                row[index.at(ext)] = k[p];
              }
              ideal.add(std::move(row));
            }
            if (pkey.second == a->from && key == std::make_pair(pkey.first, a->to)) {
              Vec row(paths.size(), Rat(0));
              for (std::size_t p = 0; p < k.size(); ++p) {
                if (k[p].is_zero()) continue;
                std::vector<std::string> ext = ppaths[p].arrows;
                ext.push_back(a->id);
                row[index.at(ext)] = k[p];
              }
              ideal.add(std::move(row));
            }
          }
        }
      }
      for (const auto& k : ker) {
        if (ideal.contains(k)) continue;
        Relation r;
        r.from = key.first;
        r.to = key.second;
        for (std::size_t p = 0; p < k.size(); ++p)
          if (!k[p].is_zero()) {
            r.paths.push_back(paths[p].arrows);
            r.coeffs.push_back(k[p]);
          }
        gens.push_back(std::move(r));
        ideal.add(k);
      }
    }
    prev = std::move(curr);
    prev_kernel = std::move(curr_kernel);
    if (all_zero) break;
  }
  return gens;
}

void ClusterTiltedAlgebra::build_relations() {
  std::map<std::string, const AlgebraArrow*> arrow_of;
  for (const auto& a : arrows_) arrow_of[a.id] = &a;
  pres_.relations = relations_by_kernel(
      pres_.quiver, arrow_of, [](const Vec& v) { return v; }, basis_.size());
}

std::string ClusterTiltedAlgebra::project(const std::string& window_point) const {
  const auto& p = cm_.model().window.point(window_point);
  return phi_class_id(cm_.model().F, p.level, p.orbit);
}

void ClusterTiltedAlgebra::build_mod_quiver() {
  const auto& m = cm_.model();
  gamma_c_ = quotient_by_automorphism(m.window, m.F);
  std::set<std::string> del;
  for (const auto& s : summands_) {
    auto t = m.window.tau(s);
    if (!t) throw algorithm_failure("tau undefined at summand " + s);
    del.insert(project(*t));
  }
  deleted_.assign(del.begin(), del.end());
  mod_quiver_ = delete_points(gamma_c_, deleted_);
  mod_quiver_.rank_hint = static_cast<int>(rank());
}

std::vector<std::string> ClusterTiltedAlgebra::forbidden_window_points() const {
  std::set<std::string> del(deleted_.begin(), deleted_.end());
  std::vector<std::string> out;
  for (const auto& p : cm_.model().window.points)
    if (del.count(phi_class_id(cm_.model().F, p.level, p.orbit))) out.push_back(p.id);
  std::sort(out.begin(), out.end());
  return out;
}

ModuleAction ClusterTiltedAlgebra::module_action(const std::string& s) const {
  if (!mod_quiver_.has_point(s)) throw validation_error("not a point of mod B: " + s);
  const auto& m = cm_.model();
  auto& ctx = cm_.mesh();

  ModuleAction ma;
  ma.point = s;
  struct Col {
    std::size_t summand;
    int grade;
    MorphismVector h;
  };
  std::vector<Col> cols;
  std::vector<GradedHom> gh(summands_.size());
  // Offset of the (summand, grade) block inside the flattened module.
  std::map<std::pair<std::size_t, int>, std::size_t> block;
  for (std::size_t i = 0; i < summands_.size(); ++i) {
    gh[i] = cm_.cluster_hom(summands_[i], s);
    std::size_t d = 0;
    for (const auto& [g, dim] : gh[i].dims) {
      block[{i, g}] = cols.size();
      auto vecs = ctx.hom_basis_vectors(summands_[i], shift_point(m, s, g));
      for (auto& v : vecs) cols.push_back({i, g, std::move(v)});
      d += static_cast<std::size_t>(dim);
    }
    ma.dim_by_summand.push_back(d);
  }
  ma.total_dim = cols.size();

  for (const auto& b : basis_) {
    Mat act(ma.total_dim, Vec(ma.total_dim, Rat(0)));
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (cols[c].summand != b.to) continue;
      int g = b.grade + cols[c].grade;
      // Absent grade = zero Hom space: the composite vanishes and composing
      // would enumerate paths of a far-away pair for nothing.
      if (!gh[b.from].dims.count(g)) continue;
      auto img = ctx.compose(b.f, ctx.transport_F(cols[c].h, b.grade));
      std::size_t off = block.at({b.from, g});
      for (std::size_t r = 0; r < img.coeffs.size(); ++r) act[off + r][c] = img.coeffs[r];
    }
    ma.action.push_back(std::move(act));
  }
  return ma;
}

std::vector<SliceCandidate> ClusterTiltedAlgebra::local_slices() const {
  return enumerate_local_slices(mod_quiver_);
}

std::vector<SliceCandidate> ClusterTiltedAlgebra::local_slices_through(
    const std::string& point) const {
  return slices::local_slices_through(mod_quiver_, point);
}

AnnIdeal ClusterTiltedAlgebra::annihilator(const SliceCandidate& sigma) const {
  SliceCandidate s{normalized_points(sigma)};
  if (is_local_slice(mod_quiver_, s) != Verdict::True)
    throw validation_error("candidate is not a local slice of mod B");

  // Constraint rows: every coordinate of (h . b) for every module basis
  // element h of every slice module; Ann = the kernel over b-coefficients.
  std::vector<ModuleAction> acts;
  for (const auto& p : s.points) acts.push_back(module_action(p));

  std::size_t nrows = 0;
  for (const auto& ma : acts) nrows += ma.total_dim * ma.total_dim;
  Mat rows(nrows, Vec(basis_.size(), Rat(0)));
  std::size_t r0 = 0;
  for (const auto& ma : acts) {
    for (std::size_t b = 0; b < basis_.size(); ++b)
      for (std::size_t r = 0; r < ma.total_dim; ++r)
        for (std::size_t c = 0; c < ma.total_dim; ++c)
          rows[r0 + r * ma.total_dim + c][b] = ma.action[b][r][c];
    r0 += ma.total_dim * ma.total_dim;
  }

  AnnIdeal out;
  out.slice = s;
  out.ideal_basis = kernel_basis(rows, basis_.size());
  out.dimension = out.ideal_basis.size();

  for (const auto& a : arrows_) {
    bool zero = true;
    for (const auto& row : rows)
      if (!row[a.basis_index].is_zero()) {
        zero = false;
        break;
      }
    if (zero) out.arrow_generators.push_back(a.id);
  }

  // Cor 4.7 as an enforced invariant: the two-sided ideal generated by the
  // annihilating arrows is the whole annihilator.
  SpanBuilder ideal(basis_.size());
  std::vector<Vec> queue;
  std::map<std::string, std::size_t> by_id;
  for (const auto& a : arrows_) by_id[a.id] = a.basis_index;
  for (const auto& id : out.arrow_generators) {
    Vec v = unit(by_id.at(id));
    if (ideal.add(v)) queue.push_back(std::move(v));
  }
  while (!queue.empty()) {
    Vec v = std::move(queue.back());
    queue.pop_back();
    for (std::size_t b = 0; b < basis_.size(); ++b) {
      for (Vec w : {multiply(unit(b), v), multiply(v, unit(b))})
        if (!is_zero_vec(w) && ideal.add(w)) queue.push_back(std::move(w));
    }
  }
  if (ideal.dim() != out.dimension)
    throw algorithm_failure("annihilator is not generated by arrows: ideal dim " +
                            std::to_string(ideal.dim()) + " vs " +
                            std::to_string(out.dimension));
  return out;
}

Presentation ClusterTiltedAlgebra::tilted_quotient(const SliceCandidate& sigma) const {
  AnnIdeal ann = annihilator(sigma);
  std::set<std::string> killed(ann.arrow_generators.begin(), ann.arrow_generators.end());

  Presentation out;
  out.quiver.vertices = pres_.quiver.vertices;
  std::map<std::string, const AlgebraArrow*> arrow_of;
  for (const auto& a : arrows_)
    if (!killed.count(a.id)) {
      out.quiver.arrows.push_back({a.id, vertex_name(a.from), vertex_name(a.to)});
      out.grades[a.id] = a.grade;
      arrow_of[a.id] = &a;
    }

  // Way 1: reduce algebra values modulo the annihilator span.
  SpanBuilder annspan(basis_.size());
  for (const auto& v : ann.ideal_basis) annspan.add(v);
  auto residue1 = [&](const Vec& v) {
    return reduce_against(annspan.rows(), annspan.pivots(), v);
  };
  out.relations = relations_by_kernel(out.quiver, arrow_of, residue1, basis_.size());

  // Way 2: a path dies in C iff its value acts by zero on every slice module.
  std::vector<ModuleAction> acts;
  std::size_t rdim = 0;
  for (const auto& p : ann.slice.points) {
    acts.push_back(module_action(p));
    rdim += acts.back().total_dim * acts.back().total_dim;
  }
  auto residue2 = [&](const Vec& v) {
    Vec r(rdim, Rat(0));
    std::size_t r0 = 0;
    for (const auto& ma : acts) {
      for (std::size_t b = 0; b < basis_.size(); ++b) {
        if (v[b].is_zero()) continue;
        for (std::size_t i = 0; i < ma.total_dim; ++i)
          for (std::size_t j = 0; j < ma.total_dim; ++j)
            if (!ma.action[b][i][j].is_zero())
              r[r0 + i * ma.total_dim + j] += v[b] * ma.action[b][i][j];
      }
      r0 += ma.total_dim * ma.total_dim;
    }
    return r;
  };
  auto rel2 = relations_by_kernel(out.quiver, arrow_of, residue2, rdim);

  // The two computations must agree span-by-span per (length, source, target).
  auto group = [](const std::vector<Relation>& rels) {
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>,
             std::vector<const Relation*>>
        g;
    for (const auto& r : rels) g[{r.paths.front().size(), r.from, r.to}].push_back(&r);
    return g;
  };
  auto g1 = group(out.relations), g2 = group(rel2);
  std::set<std::tuple<std::size_t, std::size_t, std::size_t>> keys;
  for (const auto& [k, v] : g1) keys.insert(k);
  for (const auto& [k, v] : g2) keys.insert(k);
  for (const auto& key : keys) {
    std::vector<std::vector<std::string>> allp;
    auto collect = [&](const std::vector<const Relation*>& rs) {
      for (const auto* r : rs)
        for (const auto& p : r->paths) allp.push_back(p);
    };
    if (g1.count(key)) collect(g1[key]);
    if (g2.count(key)) collect(g2[key]);
    std::sort(allp.begin(), allp.end());
    allp.erase(std::unique(allp.begin(), allp.end()), allp.end());
    std::map<std::vector<std::string>, std::size_t> pix;
    for (std::size_t i = 0; i < allp.size(); ++i) pix[allp[i]] = i;
    auto vectors = [&](const std::vector<const Relation*>& rs) {
      Mat m;
      for (const auto* r : rs) {
        Vec v(allp.size(), Rat(0));
        for (std::size_t i = 0; i < r->paths.size(); ++i) v[pix.at(r->paths[i])] = r->coeffs[i];
        m.push_back(std::move(v));
      }
      return m;
    };
    Mat m1 = g1.count(key) ? vectors(g1[key]) : Mat{};
    Mat m2 = g2.count(key) ? vectors(g2[key]) : Mat{};
    if (!same_span(m1, m2, allp.size()))
      throw algorithm_failure("tilted-quotient relation spans disagree between methods");
  }
  return out;
}

std::vector<Presentation> ClusterTiltedAlgebra::realizing_tilted_algebras() const {
  std::vector<Presentation> out;
  for (const auto& s : local_slices()) {
    Presentation p = tilted_quotient(s);
    bool dup = false;
    for (const auto& q : out)
      if (presentations_isomorphic(p, q)) {
        dup = true;
        break;
      }
    if (!dup) out.push_back(std::move(p));
  }
  return out;
}

std::vector<std::string> ClusterTiltedAlgebra::lift_local_slice(
    const SliceCandidate& sigma) const {
  SliceCandidate s{normalized_points(sigma)};
  if (is_local_slice(mod_quiver_, s) != Verdict::True)
    throw validation_error("candidate is not a local slice of mod B");
  const auto& m = cm_.model();

  std::map<std::string, std::vector<std::string>> pre;
  for (const auto& p : m.window.points)
    pre[phi_class_id(m.F, p.level, p.orbit)].push_back(p.id);
  for (auto& [c, v] : pre) std::sort(v.begin(), v.end());

  std::set<std::string> members(s.points.begin(), s.points.end());
  std::map<std::string, std::string> lift;
  std::queue<std::string> bfs;
  lift[s.points.front()] = s.points.front();  // a class id is a window point
  bfs.push(s.points.front());
  while (!bfs.empty()) {
    std::string c = bfs.front();
    bfs.pop();
    const std::string& w = lift.at(c);
    auto try_lift = [&](const std::string& c2, bool outgoing) {
      if (!members.count(c2) || lift.count(c2)) return;
      for (const auto& p2 : pre.at(c2)) {
        const auto& ns = outgoing ? m.window.out_neighbors(w) : m.window.in_neighbors(w);
        if (std::find(ns.begin(), ns.end(), p2) != ns.end()) {
          lift[c2] = p2;
          bfs.push(c2);
          return;
        }
      }
    };
    for (const auto& c2 : mod_quiver_.out_neighbors(c)) try_lift(c2, true);
    for (const auto& c2 : mod_quiver_.in_neighbors(c)) try_lift(c2, false);
  }
  if (lift.size() != s.points.size())
    throw algorithm_failure("local slice did not lift connectedly");

  std::vector<std::string> lifted;
  for (const auto& [c, w] : lift) lifted.push_back(w);
  std::sort(lifted.begin(), lifted.end());
  if (is_section(m.window, SliceCandidate{lifted}) == Verdict::False)
    throw algorithm_failure("lift is not a section");
  auto forb = forbidden_window_points();
  for (const auto& p : lifted)
    if (std::binary_search(forb.begin(), forb.end(), p))
      throw algorithm_failure("lift meets a tau(T~) translate");
  return lifted;
}

SliceCandidate ClusterTiltedAlgebra::canonical_slice_image() const {
  const auto& m = cm_.model();
  auto mr = m.module_range();
  std::set<std::string> mrs(mr.begin(), mr.end());
  for (const auto& s : summands_)
    if (!mrs.count(s))
      throw validation_error("summand " + s + " is not an A-module representative");

  std::set<std::string> del(deleted_.begin(), deleted_.end());
  std::set<std::string> img;
  for (const auto& v : m.quiver.vertices) {
    std::string c = project(m.inj_pos.at(v));
    if (del.count(c)) throw algorithm_failure("injective position collides with tau(T~)");
    img.insert(c);
  }
  SliceCandidate out{std::vector<std::string>(img.begin(), img.end())};
  if (is_local_slice(mod_quiver_, out) != Verdict::True)
    throw algorithm_failure("canonical image is not a local slice");
  return out;
}

bool presentations_isomorphic(const Presentation& a, const Presentation& b) {
  const std::size_t n = a.quiver.vertices.size();
  if (n != b.quiver.vertices.size()) return false;
  if (a.quiver.arrows.size() != b.quiver.arrows.size()) return false;
  if (a.relations.size() != b.relations.size()) return false;

  // Group relations of one presentation per (length, from, to) given an
  // arrow-id mapping into the other's ids and a sign per arrow (the reachable
  // part of an admissible change of arrows), and compare spans.
  auto spans_match = [&](const std::map<std::string, std::string>& amap,
                         const std::map<std::string, int>& sign,
                         const std::vector<std::size_t>& vperm) {
    using Key = std::tuple<std::size_t, std::string, std::string>;
    std::map<Key, std::vector<std::pair<std::vector<std::vector<std::string>>, Vec>>> g1, g2;
    for (const auto& r : a.relations) {
      std::vector<std::vector<std::string>> mapped;
      Vec coeffs = r.coeffs;
      for (std::size_t i = 0; i < r.paths.size(); ++i) {
        std::vector<std::string> mp;
        for (const auto& id : r.paths[i]) {
          if (sign.at(id) < 0) coeffs[i] = -coeffs[i];
          mp.push_back(amap.at(id));
        }
        mapped.push_back(std::move(mp));
      }
      g1[{r.paths.front().size(), std::to_string(vperm[r.from] + 1),
          std::to_string(vperm[r.to] + 1)}]
          .push_back({std::move(mapped), std::move(coeffs)});
    }
    for (const auto& r : b.relations)
      g2[{r.paths.front().size(), std::to_string(r.from + 1), std::to_string(r.to + 1)}]
          .push_back({r.paths, r.coeffs});
    std::set<Key> keys;
    for (const auto& [k, v] : g1) keys.insert(k);
    for (const auto& [k, v] : g2) keys.insert(k);
    for (const auto& key : keys) {
      std::vector<std::vector<std::string>> allp;
      for (auto* g : {&g1, &g2})
        if (g->count(key))
          for (const auto& [paths, c] : (*g)[key])
            for (const auto& p : paths) allp.push_back(p);
      std::sort(allp.begin(), allp.end());
      allp.erase(std::unique(allp.begin(), allp.end()), allp.end());
      std::map<std::vector<std::string>, std::size_t> pix;
      for (std::size_t i = 0; i < allp.size(); ++i) pix[allp[i]] = i;
      Mat m1, m2;
      for (auto [g, m] : {std::make_pair(&g1, &m1), std::make_pair(&g2, &m2)})
        if (g->count(key))
          for (const auto& [paths, c] : (*g)[key]) {
            Vec v(allp.size(), Rat(0));
            for (std::size_t i = 0; i < paths.size(); ++i) v[pix.at(paths[i])] = c[i];
            m->push_back(std::move(v));
          }
      if (!same_span(m1, m2, allp.size())) return false;
    }
    return true;
  };

  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  do {
    // Arrow groups must correspond under the vertex permutation.
    std::map<std::pair<std::string, std::string>, std::vector<std::string>> ga, gb;
    bool ok = true;
    for (const auto& ar : a.quiver.arrows) {
      std::size_t f = std::stoul(ar.from) - 1, t = std::stoul(ar.to) - 1;
      ga[{std::to_string(perm[f] + 1), std::to_string(perm[t] + 1)}].push_back(ar.id);
    }
    for (const auto& ar : b.quiver.arrows) gb[{ar.from, ar.to}].push_back(ar.id);
    if (ga.size() != gb.size()) continue;
    for (const auto& [k, v] : ga)
      if (!gb.count(k) || gb[k].size() != v.size()) {
        ok = false;
        break;
      }
    if (!ok) continue;

    // Try every arrow matching within each parallel class.
    std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> groups;
    for (auto& [k, v] : ga) groups.push_back({v, gb[k]});
    std::function<bool(std::size_t, std::map<std::string, std::string>&)> match =
        [&](std::size_t gi, std::map<std::string, std::string>& amap) -> bool {
      if (gi == groups.size()) {
        std::vector<std::string> ids;
        for (const auto& [id, img] : amap) ids.push_back(id);
        const std::size_t na = ids.size();
        if (na > 16) {
          std::map<std::string, int> sign;
          for (const auto& id : ids) sign[id] = 1;
          return spans_match(amap, sign, perm);
        }
        for (std::size_t bits = 0; bits < (std::size_t{1} << na); ++bits) {
          std::map<std::string, int> sign;
          for (std::size_t i = 0; i < na; ++i) sign[ids[i]] = (bits >> i) & 1 ? -1 : 1;
          if (spans_match(amap, sign, perm)) return true;
        }
        return false;
      }
      auto& [va, vb] = groups[gi];
      std::vector<std::string> pb = vb;
      std::sort(pb.begin(), pb.end());
      do {
        for (std::size_t i = 0; i < va.size(); ++i) amap[va[i]] = pb[i];
        if (match(gi + 1, amap)) return true;
      } while (std::next_permutation(pb.begin(), pb.end()));
      return false;
    };
    std::map<std::string, std::string> amap;
    if (match(0, amap)) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

std::vector<SliceCandidate> local_slices_through(const TranslationQuiver& g,
                                                 const std::string& point) {
  g.point_index(point);
  std::vector<SliceCandidate> out;
  for (const auto& s : enumerate_local_slices(g))
    if (std::binary_search(s.points.begin(), s.points.end(), point)) out.push_back(s);
  return out;
}

RepairResult section_through_avoiding(const DerivedModel& m, const std::string& M,
                                      const std::set<std::string>& R) {
  const Quiver& q = m.quiver;
  if (q.arrows.size() + 1 != q.vertices.size())
    throw validation_error("section repair requires a tree quiver");
  if (R.count(M)) throw validation_error("target point is forbidden");
  const auto& mp = m.window.point(M);

  // Undirected tree structure rooted at M's orbit.
  std::map<std::string, std::vector<std::string>> adj;
  for (const auto& a : q.arrows) {
    adj[a.from].push_back(a.to);
    adj[a.to].push_back(a.from);
  }
  std::map<std::string, int> dist;
  std::map<std::string, std::string> parent;
  std::queue<std::string> bfs;
  dist[mp.orbit] = 0;
  bfs.push(mp.orbit);
  while (!bfs.empty()) {
    std::string v = bfs.front();
    bfs.pop();
    for (const auto& w : adj[v])
      if (!dist.count(w)) {
        dist[w] = dist[v] + 1;
        parent[w] = v;
        bfs.push(w);
      }
  }
  if (dist.size() != q.vertices.size())
    throw validation_error("section repair requires a connected quiver");

  // Q-arrow between orbits x and y: +1 if x -> y, -1 if y -> x.
  auto arrow_dir = [&](const std::string& x, const std::string& y) {
    for (const auto& a : q.arrows) {
      if (a.from == x && a.to == y) return 1;
      if (a.from == y && a.to == x) return -1;
    }
    throw algorithm_failure("no quiver arrow between " + x + " and " + y);
  };
  // Section-arrow validity for Q-arrow u -> v: n_v ∈ {n_u, n_u - 1}.
  auto edge_ok = [&](const std::map<std::string, int>& h) {
    for (const auto& a : q.arrows) {
      int d = h.at(a.from) - h.at(a.to);
      if (d != 0 && d != 1) return false;
    }
    return true;
  };

  RepairResult out;
  for (const auto& v : q.vertices) out.heights[v] = mp.level;

  const int cap = static_cast<int>(q.vertices.size() * q.vertices.size());
  while (true) {
    std::vector<std::string> forb;
    for (const auto& [v, h] : out.heights)
      if (R.count(tq_point_id(h, v))) forb.push_back(v);
    if (forb.empty()) break;
    if (out.rounds >= cap)
      throw algorithm_failure("section repair exceeded the round cap");

    int d = dist.at(forb.front());
    for (const auto& v : forb) d = std::min(d, dist.at(v));
    if (!out.d_log.empty() && d <= out.d_log.back())
      throw algorithm_failure("nearest distance failed to increase");
    out.d_log.push_back(d);

    std::vector<std::string> nearest;
    for (const auto& v : forb)
      if (dist.at(v) == d) nearest.push_back(v);
    std::sort(nearest.begin(), nearest.end());

    for (const auto& nv : nearest) {
      // Proof-anchored invariant: the translates of the forbidden point in
      // its own tau-orbit are themselves allowed.
      int hn = out.heights.at(nv);
      if (R.count(tq_point_id(hn - 1, nv)) || R.count(tq_point_id(hn + 1, nv)))
        throw algorithm_failure("adjacent tau-translates of " + nv + " are forbidden");
      if (nv == mp.orbit) throw algorithm_failure("target orbit became forbidden");

      const std::string lv = parent.at(nv);
      // Section arrow L -> N iff (Q-arrow l->n and equal heights) or
      // (Q-arrow n->l and n_l = n_n + 1); then shift the far subtree by tau.
      int dir = arrow_dir(lv, nv);
      bool l_to_n = dir == 1 ? out.heights.at(nv) == out.heights.at(lv)
                             : out.heights.at(lv) == out.heights.at(nv) + 1;
      int delta = l_to_n ? -1 : 1;

      // Subtree on N's side of the cut edge.
      std::vector<std::string> sub;
      std::queue<std::string> sq;
      std::set<std::string> seen{lv, nv};
      sq.push(nv);
      sub.push_back(nv);
      while (!sq.empty()) {
        std::string v = sq.front();
        sq.pop();
        for (const auto& w : adj[v])
          if (seen.insert(w).second) {
            sub.push_back(w);
            sq.push(w);
          }
      }
      for (const auto& v : sub) {
        out.heights[v] += delta;
        if (out.heights[v] < m.window_lo || out.heights[v] > m.window_hi)
          throw resource_error("section repair left the window at orbit " + v);
      }
    }
    if (out.heights.at(mp.orbit) != mp.level)
      throw algorithm_failure("target point moved during repair");
    if (!edge_ok(out.heights)) throw algorithm_failure("repair broke the section");
    ++out.rounds;
  }

  for (const auto& [v, h] : out.heights) out.points.push_back(tq_point_id(h, v));
  std::sort(out.points.begin(), out.points.end());
  return out;
}

}  // namespace slices

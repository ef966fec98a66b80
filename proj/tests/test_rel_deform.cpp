#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "flatsurf/diagrams.hpp"
#include "flatsurf/errors.hpp"
#include "flatsurf/rel_deform.hpp"
#include "oracles.hpp"
#include "witnesses.hpp"

using namespace flatsurf;
using witnesses::core_on;

namespace {

CylSurface torus() { return CylSurface::make(CylDiagram::make({{{0}, {0}}}), {Q(1)}, {Q(1)}, {Q(0)}); }

CylSurface config6_surface() {
  return CylSurface::make(fixtures::diagram_6(), std::vector<Q>(8, Q(1)), {Q(1), Q(2)}, {Q(0), Q(0)});
}

CylSurface config2_surface(const Q& tau1) { return fixtures::diagram_2_surface(tau1); }

bool proportional(const std::vector<Q>& a, const std::vector<Q>& b) {
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a.size(); ++j)
      if (a[i] * b[j] != a[j] * b[i]) return false;
  return true;
}

bool same_surface(const CylSurface& x, const CylSurface& y) {
  return x.lengths() == y.lengths() && x.heights() == y.heights() && x.twists() == y.twists();
}

Mat pairing_matrix(const HomBasis& B, const std::vector<Vec>& chains) {
  const int n = int(chains.size());
  Mat P(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) P(i, j) = intersection_pairing(B, absolute_class(B, chains[i]), absolute_class(B, chains[j]));
  return P;
}

// a census surface: the realizable lengths, heights 1, 2, 3, ... and twists 0
CylSurface census_surface(const CylDiagram& d) {
  std::vector<Q> lengths;
  REQUIRE(realizable(d, &lengths));
  std::vector<Q> heights, twists(d.r(), Q(0));
  for (int i = 0; i < d.r(); ++i) heights.push_back(Q(i + 1));
  return CylSurface::make(d, lengths, heights, twists);
}

std::vector<CylDiagram> small_census() {
  std::vector<CylDiagram> out;
  for (auto kappa : std::vector<std::vector<int>>{{1, 1, 1, 1}, {2, 1, 1}, {2, 2}, {3, 1}, {4}, {1, 1}, {2}})
    for (const auto& c : enumerate_cylinder_diagrams(kappa, true)) out.push_back(c.diagram);
  return out;
}

std::vector<std::pair<Q, Q>> cylinder_shapes(const CylSurface& m) {
  std::vector<std::pair<Q, Q>> out;
  for (int i = 0; i < m.diagram().r(); ++i) out.push_back({m.width(i), m.height(i)});
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("period map") {
  auto t = torus();
  auto p = period_map(t);
  REQUIRE(p.size() == 2);
  CHECK(p[0] == Holonomy{Q(1), Q(0)});
  CHECK(p[1] == Holonomy{Q(0), Q(1)});

  auto m = fixtures::h11_three_cyl_surface();
  auto B = h1_bases(m.diagram());
  std::vector<Q> L, H, T;
  for (const auto& x : m.lengths()) L.push_back(2 * x);
  for (const auto& x : m.heights()) H.push_back(2 * x);
  for (const auto& x : m.twists()) T.push_back(2 * x);
  auto m2 = CylSurface::make(m.diagram(), L, H, T);
  auto a = absolute_periods(m, B), a2 = absolute_periods(m2, B);
  for (size_t i = 0; i < a.size(); ++i) CHECK(a2[i] == a[i].scaled(Q(2)));

  CHECK_THROWS_WITH_AS(period_map(m, h1_bases(fixtures::h11_one_cyl())), doctest::Contains("BasisMismatch"), Error);
}

TEST_CASE("REL twist spaces") {
  for (const auto& c : enumerate_cylinder_diagrams({1, 1}, 2, false)) CHECK(rel_twist_space(census_surface(c.diagram)).empty());

  auto six = rel_twist_space(config6_surface());
  REQUIRE(six.size() == 1);
  CHECK(proportional(six[0], {Q(1), Q(-1)}));

  CHECK(rel_twist_space(fixtures::h11_three_cyl_surface()).size() == 1);
  CHECK(is_rel(fixtures::h11_three_cyl_surface(), {Q(-1), Q(1), Q(1)}));
  CHECK_FALSE(is_rel(fixtures::h11_three_cyl_surface(), {Q(1), Q(0), Q(0)}));
}

TEST_CASE("genus two example: REL stretch and REL twist keep absolute periods") {
  auto left = fixtures::h11_three_cyl_surface();
  auto B = h1_bases(left.diagram());
  auto before = absolute_periods(left, B);

  auto st = rel_stretch_path(left, {Q(1), Q(-1), Q(-1)}, Q(3, 2));
  REQUIRE_FALSE(st.collapsed);
  const auto& center = st.surface;
  CHECK(center.heights() == std::vector<Q>{Q(7, 2), Q(1, 2), Q(5, 2)});
  CHECK(center.lengths() == left.lengths());
  CHECK(absolute_periods(center, B) == before);

  std::vector<Q> t{Q(-1), Q(1), Q(1)};
  auto right = apply_rel_twist(left, t);
  Mat mk = twist_marking(left, t);
  CHECK(right.twists() != left.twists());
  CHECK(absolute_periods(right, B, &mk) == before);

  CHECK_THROWS_WITH_AS(apply_rel_twist(left, {Q(1), Q(0), Q(0)}), doctest::Contains("NotRel"), Error);
  CHECK_THROWS_WITH_AS(rel_stretch_path(left, {Q(1), Q(0), Q(0)}, Q(1)), doctest::Contains("NotRel"), Error);
}

TEST_CASE("twist group action and trivial stretch") {
  auto m = fixtures::h11_three_cyl_surface();
  CHECK(same_surface(apply_rel_twist(m, {Q(0), Q(0), Q(0)}), m));
  std::vector<Q> t{Q(-5, 3), Q(5, 3), Q(5, 3)}, minus{Q(5, 3), Q(-5, 3), Q(-5, 3)};
  CHECK(same_surface(apply_rel_twist(apply_rel_twist(m, t), minus), m));

  auto st = rel_stretch_path(m, {Q(0), Q(0), Q(0)}, Q(1000));
  CHECK_FALSE(st.collapsed);
  CHECK(same_surface(st.surface, m));
}

TEST_CASE("collapse: Config2 stretch merges two simple zeros") {
  auto m = config2_surface(Q(0));
  auto st = rel_stretch_path(m, {Q(-1), Q(-1), Q(1)}, Q(10));
  REQUIRE(st.collapsed);
  const auto& e = st.event;
  CHECK(e.u == Q(1));
  CHECK(e.cylinders == std::vector<int>{0});
  CHECK(m.height(1) - e.u == m.height(1) - m.height(0));
  CHECK(m.height(1) - e.u > 0);
  REQUIRE(e.vanishing.size() == 1);
  CHECK(e.vanishing[0].bottom_zero != e.vanishing[0].top_zero);
  auto c = classify_collapse(e, m);
  CHECK(c.kind == CollapseKind::LowerStratumSameGenus);
  CHECK(c.target_stratum == std::vector<int>{2, 1, 1});

  // no junctions line up: collapse without a vanishing connection is not decided
  auto m2 = config2_surface(Q(2));
  auto e2 = rel_stretch_path(m2, {Q(-1), Q(-1), Q(1)}, Q(10)).event;
  CHECK(e2.vanishing.empty());
  CHECK(classify_collapse(e2, m2).kind == CollapseKind::Inconclusive);
}

TEST_CASE("collapse: 3C two vanishing connections without a loop") {
  auto m = apply_rel_twist(fixtures::diagram_3C_surface(), {Q(0), Q(-7), Q(7)});
  auto st = rel_stretch_path(m, {Q(0), Q(1), Q(-1)}, Q(10));
  REQUIRE(st.collapsed);
  CHECK(st.event.u == Q(2));
  REQUIRE(st.event.vanishing.size() == 2);
  std::set<int> zeros;
  for (const auto& v : st.event.vanishing) {
    CHECK(v.bottom_zero != v.top_zero);
    zeros.insert(v.bottom_zero);
    zeros.insert(v.top_zero);
  }
  CHECK(zeros.size() == 3);
  auto c = classify_collapse(st.event, m);
  CHECK(c.kind == CollapseKind::LowerStratumSameGenus);
  CHECK(c.target_stratum == std::vector<int>{3, 1});
}

TEST_CASE("collapse: a connection from a zero to itself pinches a curve") {
  auto t = torus();
  auto e = class_collapse(t, {0});
  REQUIRE(e.vanishing.size() == 1);
  CHECK(e.vanishing[0].bottom_zero == e.vanishing[0].top_zero);
  CHECK(classify_collapse(e, t).kind == CollapseKind::CurvePinched);

  auto h = CylSurface::make(fixtures::h11_one_cyl(), std::vector<Q>(4, Q(1)), {Q(1)}, {Q(0)});
  CHECK(classify_collapse(class_collapse(h, {0}), h).kind == CollapseKind::CurvePinched);
}

TEST_CASE("matrix actions") {
  MatrixAction u;
  u.param = Q(7, 3);
  CHECK(apply_matrix(torus(), u).twist(0) == Q(1, 3));

  auto m = fixtures::h11_three_cyl_surface();
  MatrixAction a;
  a.op = MatrixOp::Diagonal;
  a.param = Q(2);
  CHECK(apply_matrix(m, a).area() == 2 * m.area());

  // a free simple cylinder of a Config4 surface: shear until its junctions align, then collapse it
  auto m4 = fixtures::diagram_4A_surface();
  MatrixAction shear;
  shear.param = Q(5, 2);
  shear.subset = {0};
  auto sheared = apply_matrix(m4, shear);
  CHECK(sheared.twist(0) == Q(0));
  CHECK(sheared.twist(1) == m4.twist(1));
  auto c = classify_collapse(class_collapse(sheared, {0}), sheared);
  CHECK(c.kind == CollapseKind::LowerStratumSameGenus);
  CHECK(c.target_stratum == std::vector<int>{2, 1, 1});

  // C3 alone is half of a homologous pair
  MatrixAction half = shear;
  half.subset = {2};
  CHECK_THROWS_WITH_AS(apply_matrix(m4, half), doctest::Contains("InvalidClass"), Error);
  half.subset = {2, 3};
  CHECK_NOTHROW(apply_matrix(m4, half));
  half.subset = {2};
  half.asserted = true;
  CHECK_NOTHROW(apply_matrix(m4, half));
}

TEST_CASE("direction cylinders on fixtures") {
  auto t = torus();
  auto dc = direction_cylinders(t, Direction{true, Q(0)});
  REQUIRE(dc.determined);
  REQUIRE(dc.surface.diagram().r() == 1);
  CHECK(dc.surface.width(0) == Q(1));
  CHECK(dc.surface.height(0) == Q(1));

  // after a REL twist, Config6 has a vertical cylinder of circumference h1 + h2 and a
  // parallel one of another circumference
  auto m0 = config6_surface();
  auto m = apply_rel_twist(m0, {Q(1, 4), Q(-1, 4)});
  auto v = direction_cylinders(m, Direction{true, Q(0)});
  REQUIRE(v.determined);
  auto B = h1_bases(m.diagram());
  int with_sum = -1, other = -1;
  for (int i = 0; i < v.surface.diagram().r(); ++i) {
    if (v.surface.width(i) == m.height(0) + m.height(1)) with_sum = i;
    else other = i;
  }
  REQUIRE(with_sum >= 0);
  REQUIRE(other >= 0);
  CHECK_FALSE(absolute_class(B, v.core_chains[with_sum]) == absolute_class(B, v.core_chains[other]));
  CHECK(v.surface.area() == m.area());

  auto u = direction_cylinders(fixtures::h11_three_cyl_surface(), Direction{false, Q(1000)}, 10);
  CHECK_FALSE(u.determined);
  CHECK(u.crossings > 10);
  CHECK(direction_cylinders(fixtures::h11_three_cyl_surface(), Direction{false, Q(1000)}).determined);
}

TEST_CASE("property: vertical cylinders of an origami are horizontal cylinders of its transpose") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 150; ++trial) {
    auto o = oracle::random_origami(2 + int(rng() % 9), rng);
    auto m = horizontal_cylinders(o);
    auto v = direction_cylinders(m, Direction{true, Q(0)});
    REQUIRE(v.determined);
    CHECK(cylinder_shapes(v.surface) == cylinder_shapes(horizontal_cylinders(Origami::make(o.v(), o.h()))));
  }
}

TEST_CASE("property: census surfaces") {
  std::mt19937_64 rng(5);
  for (const auto& d : small_census()) {
    auto m = census_surface(d);
    auto B = h1_bases(d);
    auto before = absolute_periods(m, B);
    int dim = core_curve_span(B, d).dimension;
    auto rel = rel_twist_space(m);
    CHECK(int(rel.size()) == d.r() - dim);

    for (const auto& t : rel) {
      CHECK(is_rel(m, t));
      auto tw = apply_rel_twist(m, t);
      Mat mk = twist_marking(m, t);
      CHECK(absolute_periods(tw, B, &mk) == before);

      Q big(0);
      for (const auto& x : t) big = std::max(big, x < 0 ? -x : x);
      auto st = rel_stretch_path(m, t, Q(1, 2) / big);
      REQUIRE_FALSE(st.collapsed);
      CHECK(st.surface.lengths() == m.lengths());
      CHECK(absolute_periods(st.surface, B) == before);
    }

    // cylinders in a random rational direction: core holonomy is circumference times (q, p)
    Q slope(int(rng() % 7) - 3, 1 + int(rng() % 3));
    if (slope == 0) slope = Q(1);
    auto dc = direction_cylinders(m, Direction{false, slope}, 20000);
    if (!dc.determined) continue;
    CHECK(dc.surface.area() == m.area());
    for (int i = 0; i < dc.surface.diagram().r(); ++i) {
      Q c = dc.surface.width(i);
      CHECK(chain_period(m, dc.core_chains[i]) == Holonomy{c * Q(dc.q), c * Q(dc.p)});
    }
  }
}

TEST_CASE("witnesses: 3A") {
  auto f = witnesses::basis_3A();
  const auto& B = f.B;
  auto cls = [&](const Vec& c) { return absolute_class(B, c); };
  auto a3 = cls(f.a[2]);
  CHECK(intersection_pairing(B, cls(f.b[1]), a3) == 0);
  CHECK(intersection_pairing(B, cls(f.b[2]), a3) != 0);
  CHECK(abs_det(pairing_matrix(B, {f.a[0], f.a[1], f.a[2], f.b[0], f.b[1], f.b[2]})) != 0);

  auto defs = witnesses::deformations_3A(f.surface);
  std::vector<RealizedClass> realized{{cls(f.a[0]), "horizontal core C1"}, {cls(f.a[1]), "horizontal core C2"}};
  for (int i = 0; i < 3; ++i) {
    CHECK(core_on(defs[i].surface, defs[i].marking, B, f.b[i]));
    realized.push_back({cls(f.b[i]), defs[i].id});
  }
  auto neg = witnesses::stretch_then_twist(f.surface, {Q(0), Q(1), Q(-1)}, Q(7, 8), {Q(0), Q(5), Q(-5)}, "");
  CHECK_FALSE(core_on(neg.surface, neg.marking, B, f.b[0]));

  auto cert = certify_forni_trivial(B, realized);
  CHECK(cert.accepted);
  CHECK(cert.condition == "i");
  CHECK(cert.witnesses.size() == 5);

  auto two = certify_forni_trivial(B, {realized[0], realized[1]});
  CHECK_FALSE(two.accepted);
  CHECK_FALSE(two.reason.empty());
  auto unwitnessed = realized;
  unwitnessed[3].witness.clear();
  CHECK(certify_forni_trivial(B, unwitnessed).reason == "missing witnesses");
}

TEST_CASE("witnesses: 4A case L1") {
  auto f = witnesses::basis_4A_L1();
  const auto& B = f.B;
  CHECK(abs_det(pairing_matrix(B, {f.a[0], f.a[1], f.a[2], f.b[0], f.b[1], f.b[2]})) != 0);
  auto def = witnesses::deformation_4A_L1(f.surface);
  std::vector<RealizedClass> realized{{absolute_class(B, f.a[0]), "horizontal core C1"},
                                      {absolute_class(B, f.a[1]), "horizontal core C2"}};
  for (int i = 0; i < 3; ++i) {
    CHECK(core_on(def.surface, def.marking, B, f.b[i]));
    realized.push_back({absolute_class(B, f.b[i]), def.id});
  }
  auto neg = witnesses::stretch_then_twist(f.surface, {Q(0), Q(0), Q(1), Q(-1)}, Q(7, 8), {Q(0), Q(0), Q(1), Q(-1)}, "");
  CHECK_FALSE(core_on(neg.surface, neg.marking, B, f.b[2]));
  auto cert = certify_forni_trivial(B, realized);
  CHECK(cert.accepted);
  CHECK(cert.condition == "i");
}

TEST_CASE("witnesses: 4A case L2") {
  auto f = witnesses::basis_4A_L2();
  const auto& B = f.B;
  std::vector<HomClass> as;
  for (const auto& a : f.a) as.push_back(absolute_class(B, a));
  CHECK(is_lagrangian(B, as));
  auto P = pairing_matrix(B, {f.a[0], f.a[1], f.a[2], f.b[0], f.b[1], f.b[2]});
  CHECK(P(0, 3) != 0);
  CHECK(P(1, 3) == 0);
  CHECK(P(2, 3) == 0);
  CHECK(P(1, 4) != 0);
  CHECK(P(0, 4) == 0);
  CHECK(P(2, 4) == 0);
  CHECK(P(2, 5) != 0);
  CHECK(abs_det(P) != 0);

  auto def = witnesses::deformation_4A_L2(f.surface);
  std::vector<RealizedClass> realized{{as[0], "horizontal core C1"}, {as[1], "horizontal core C2"}};
  for (int i = 0; i < 3; ++i) {
    CHECK(core_on(def.surface, def.marking, B, f.b[i]));
    realized.push_back({absolute_class(B, f.b[i]), def.id});
  }
  auto cert = certify_forni_trivial(B, realized);
  CHECK(cert.accepted);
  CHECK(cert.condition == "i");
}

TEST_CASE("witnesses: 4B without deformation") {
  auto f = witnesses::basis_4B();
  const auto& B = f.B;
  Mat id = witnesses::identity_marking(f.surface);
  std::vector<RealizedClass> realized{{absolute_class(B, f.a[0]), "horizontal core C1"},
                                      {absolute_class(B, f.a[1]), "horizontal core C4"}};
  std::vector<HomClass> bs;
  for (int i = 0; i < 3; ++i) {
    CHECK(core_on(f.surface, id, B, f.b[i]));
    bs.push_back(absolute_class(B, f.b[i]));
    realized.push_back({bs.back(), "4B b" + std::to_string(i + 1)});
  }
  // b2 and b3 cross once, so the b-curves alone do not span a Lagrangian
  CHECK(intersection_pairing(B, bs[1], bs[2]) != 0);
  CHECK_FALSE(certify_forni_trivial(B, {realized[2], realized[3], realized[4]}).accepted);
  auto cert = certify_forni_trivial(B, realized);
  CHECK(cert.accepted);
  CHECK(cert.condition == "i");
}

TEST_CASE("certificate from a realized Lagrangian triple") {
  // horizontal cores of a principal-stratum diagram with d = 3
  bool found = false;
  for (const auto& c : enumerate_cylinder_diagrams({1, 1, 1, 1}, 3, true)) {
    if (configuration_label(c.diagram) != ConfigurationLabel::OtherLagrangian) continue;
    auto B = h1_bases(c.diagram);
    auto span = core_curve_span(B, c.diagram);
    std::vector<RealizedClass> realized;
    for (int i = 0; i < 3; ++i) realized.push_back({span.classes[i], "horizontal core " + std::to_string(i)});
    auto cert = certify_forni_trivial(B, realized);
    CHECK(cert.accepted);
    CHECK(cert.condition == "ii");
    found = true;
    break;
  }
  CHECK(found);
}

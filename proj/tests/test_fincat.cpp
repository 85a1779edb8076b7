#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "wgcat/fincat.hpp"

using namespace wgcat;

TEST_CASE("check_category accepts the basic fixtures") {
  CHECK(check_category(*d_discrete(make_set({"a", "b"}))).ok);
  CHECK(check_category(*fx::walking_arrow()).ok);
  CHECK(check_category(*fx::ef()).ok);
  CHECK(check_category(*fx::z2()).ok);
}

TEST_CASE("check_category detects a broken associativity table") {
  // chain x -f-> y -g-> z -h-> w with h.(g.f) forced different from (h.g).f
  FinCatBuilder b;
  for (auto o : {"x", "y", "z", "w"}) {
    b.add_object(o);
    b.add_mor(std::string("i") + o, o, o);
    b.set_identity(o, std::string("i") + o);
  }
  b.add_mor("f", "x", "y");
  b.add_mor("g", "y", "z");
  b.add_mor("h", "z", "w");
  b.add_mor("gf", "x", "z");
  b.add_mor("hg", "y", "w");
  b.add_mor("p", "x", "w");
  b.add_mor("q", "x", "w");
  for (auto o : {"x", "y", "z", "w"})
    b.set_compose(std::string("i") + o, std::string("i") + o, std::string("i") + o);
  auto unit = [&](const char* m, const char* s, const char* t) {
    b.set_compose(m, std::string("i") + s, m);
    b.set_compose(std::string("i") + t, m, m);
  };
  unit("f", "x", "y");
  unit("g", "y", "z");
  unit("h", "z", "w");
  unit("gf", "x", "z");
  unit("hg", "y", "w");
  unit("p", "x", "w");
  unit("q", "x", "w");
  b.set_compose("g", "f", "gf");
  b.set_compose("h", "g", "hg");
  b.set_compose("h", "gf", "p");
  b.set_compose("hg", "f", "q");  // mismatch
  auto r = check_category(*b.build());
  CHECK_FALSE(r.ok);
  CHECK(r.code == "associativity");
}

TEST_CASE("pullback along identities recovers the category") {
  auto c = fx::walking_arrow();
  auto pb = pullback_cat(identity_functor(c), identity_functor(c));
  // diagonal pairs only
  CHECK(pb.apex->num_objects() == c->num_objects());
  CHECK(pb.apex->num_morphisms() == c->num_morphisms());
  CHECK(check_category(*pb.apex).ok);
  CHECK(check_functor(pb.pr1).ok);
}

TEST_CASE("pullback over a discrete base is a coproduct of fiber products") {
  // paper eq (2.13): C x_E D = coprod over x of C_x x D_x
  auto e = d_discrete(make_set({"x", "y"}));
  // C: walking arrow mapping both endpoints to x; D: two points, one over x, one over y
  auto c = fx::walking_arrow();
  FinFunctor f{c, e, {0, 0}, {0, 0, 0}};
  auto d = d_discrete(make_set({"p", "q"}));
  FinFunctor g{d, e, {0, 1}, {0, 1}};
  auto pb = pullback_cat(f, g);
  // only the p-fiber over x contributes: arrow x point
  CHECK(pb.apex->num_objects() == 2);
  CHECK(pb.apex->num_morphisms() == 3);
  // independent oracle: enumerate pairs directly
  int objs = 0;
  for (const auto& a : c->objects())
    for (const auto& bobj : d->objects())
      if (f.on_object_name(a) == g.on_object_name(bobj)) objs++;
  CHECK(objs == pb.apex->num_objects());
}

TEST_CASE("pullback of walking arrow against point at target has one object") {
  auto c = fx::walking_arrow();
  auto pt = fx::point();
  FinFunctor g{pt, c, {c->object_index("1")}, {c->mor_index("i1")}};
  auto pb = pullback_cat(identity_functor(c), g);
  CHECK(pb.apex->num_objects() == 1);
  CHECK(pb.apex->num_morphisms() == 1);
}

TEST_CASE("pullback universal property against exhaustive cone search") {
  // cones over f: arrow -> point <- ef : g, small enough to enumerate
  auto c = fx::walking_arrow();
  auto e = fx::ef();
  auto pt = fx::point();
  FinFunctor f{c, pt, {0, 0}, {0, 0, 0}};
  FinFunctor g{e, pt, {0, 0, 0}, std::vector<int>(e->num_morphisms(), 0)};
  auto pb = pullback_cat(f, g);
  REQUIRE(check_category(*pb.apex).ok);
  // every pair of objects (a,b) appears exactly once
  CHECK(pb.apex->num_objects() == c->num_objects() * e->num_objects());
  // projections commute with the cospan
  for (int o = 0; o < pb.apex->num_objects(); ++o)
    CHECK(f.omap[pb.pr1.omap[o]] == g.omap[pb.pr2.omap[o]]);
}

TEST_CASE("p_iso_classes") {
  auto d = d_discrete(make_set({"a", "b"}));
  CHECK(p_iso_classes(*d).classes == make_set({"a", "b"}));
  CHECK(p_iso_classes(*fx::walking_iso()).classes.size() == 1);
  auto ef = fx::ef();
  auto pc = p_iso_classes(*ef);
  CHECK(pc.classes == make_set({"1", "3"}));
  CHECK(pc.assign.at("2") == "1");
}

TEST_CASE("q_components") {
  CHECK(q_components(*fx::walking_arrow()).size() == 1);
  CHECK(q_components(*d_discrete(make_set({"a", "b"}))).size() == 2);
  // zigzag a -> b <- c is connected
  FinCatBuilder b;
  for (auto o : {"a", "b", "c"}) {
    b.add_object(o);
    b.add_mor(std::string("i") + o, o, o);
    b.set_identity(o, std::string("i") + o);
    b.set_compose(std::string("i") + o, std::string("i") + o, std::string("i") + o);
  }
  b.add_mor("f", "a", "b");
  b.add_mor("g", "c", "b");
  b.set_compose("f", "ia", "f");
  b.set_compose("ib", "f", "f");
  b.set_compose("g", "ic", "g");
  b.set_compose("ib", "g", "g");
  CHECK(q_components(*b.build()).size() == 1);
  // p = q on groupoids
  CHECK(q_components(*fx::ef()) == p_iso_classes(*fx::ef()).classes);
}

TEST_CASE("d_discrete") {
  CHECK(d_discrete({})->num_objects() == 0);
  CHECK(d_discrete(make_set({"x"}))->num_morphisms() == 1);
  auto d3 = d_discrete(make_set({"x", "y", "z"}));
  CHECK(d3->num_objects() == 3);
  CHECK(d3->num_morphisms() == 3);
  CHECK(p_iso_classes(*d3).classes == make_set({"x", "y", "z"}));
}

TEST_CASE("decalage of Ef has A x_B A objects and d1 is an isofibration") {
  auto e = fx::ef();
  auto dec = decalage(e);
  // objects are morphisms <x~y> with x ~ y: {(1,1),(1,2),(2,1),(2,2),(3,3)}
  CHECK(dec.dec->num_objects() == 5);
  CHECK(check_category(*dec.dec).ok);
  CHECK(check_functor(dec.d1).ok);
  CHECK(is_equiv_relation(*dec.dec));
  CHECK(is_isofibration(dec.d1));
  CHECK(surjective_on_objects(dec.d1));
}

TEST_CASE("decalage of discrete categories") {
  auto d1c = decalage(d_discrete(make_set({"a"})));
  CHECK(d1c.dec->num_objects() == 1);
  auto d2c = decalage(d_discrete(make_set({"a", "b"})));
  CHECK(d2c.dec->num_objects() == 2);
  CHECK(functor_is_iso(d2c.d1));
}

TEST_CASE("is_isofibration") {
  // any functor into a discrete category
  auto c = fx::walking_arrow();
  auto pt = fx::point();
  FinFunctor f{c, pt, {0, 0}, {0, 0, 0}};
  CHECK(is_isofibration(f));
  // endpoint inclusion into the walking iso is not an isofibration
  auto wi = fx::walking_iso();
  FinFunctor incl{pt, wi, {wi->object_index("0")}, {wi->mor_index("i0")}};
  CHECK_FALSE(is_isofibration(incl));
}

TEST_CASE("equivalence_analysis") {
  auto e = fx::ef();
  auto id = identity_functor(e);
  auto r = equivalence_analysis(id);
  CHECK(r.fully_faithful);
  CHECK(r.essentially_surjective);
  CHECK(r.equivalence);

  // gamma: Ef -> discrete classes
  auto cls = p_iso_classes(*e);
  auto d = d_discrete(cls.classes);
  FinFunctor gamma{e, d, {}, {}};
  for (const auto& o : e->objects())
    gamma.omap.push_back(d->object_index(cls.assign.at(o)));
  for (const auto& m : e->morphisms())
    gamma.mmap.push_back(d->identity_of(gamma.omap[e->mor(e->mor_index(m.id)).src]));
  REQUIRE(check_functor(gamma).ok);
  auto rg = equivalence_analysis(gamma);
  CHECK(rg.equivalence);

  // constant functor from 2-object discrete to the point is not ff
  auto d2 = d_discrete(make_set({"a", "b"}));
  auto pt = fx::point();
  FinFunctor cst{d2, pt, {0, 0}, {0, 0}};
  auto rc = equivalence_analysis(cst);
  CHECK_FALSE(rc.fully_faithful);
  CHECK(rc.essentially_surjective);
  CHECK_FALSE(rc.equivalence);
}

TEST_CASE("pseudo_inverse is deterministic and strict over discrete targets") {
  auto e = fx::ef();
  auto cls = p_iso_classes(*e);
  auto d = d_discrete(cls.classes);
  FinFunctor gamma{e, d, {}, {}};
  for (const auto& o : e->objects()) gamma.omap.push_back(d->object_index(cls.assign.at(o)));
  for (const auto& m : e->morphisms())
    gamma.mmap.push_back(d->identity_of(gamma.omap[e->mor(e->mor_index(m.id)).src]));
  auto ae = pseudo_inverse(gamma);
  CHECK(check_adjoint_equivalence(ae).ok);
  // gamma . gamma' = Id on the discrete target
  auto comp = compose(gamma, ae.backward);
  CHECK(functor_equal(comp, identity_functor(d)));
  // min-labeled representative: class "1" -> object "1"
  CHECK(ae.backward.on_object_name("1") == "1");
  CHECK(ae.backward.on_object_name("3") == "3");
  // determinism: same input, identical output
  auto ae2 = pseudo_inverse(gamma);
  CHECK(functor_equal(ae.backward, ae2.backward));
  CHECK(ae.unit.component == ae2.unit.component);
  CHECK(ae.counit.component == ae2.counit.component);
}

TEST_CASE("pseudo_inverse of walking iso -> point") {
  auto wi = fx::walking_iso();
  auto pt = fx::point();
  FinFunctor f{wi, pt, {0, 0}, {0, 0, 0, 0}};
  auto ae = pseudo_inverse(f);
  CHECK(check_adjoint_equivalence(ae).ok);
  CHECK(ae.backward.on_object_name("*") == "0");  // least object
  auto aeid = pseudo_inverse(identity_functor(wi));
  CHECK(functor_equal(aeid.backward, identity_functor(wi)));
}

TEST_CASE("is_equiv_relation") {
  CHECK(is_equiv_relation(*fx::ef()));
  CHECK_FALSE(is_equiv_relation(*fx::walking_arrow()));
  CHECK_FALSE(is_equiv_relation(*fx::z2()));
  CHECK(is_equiv_relation(*fx::walking_iso()));
}

TEST_CASE("q preserves fiber products over discrete objects (paper 2.4)") {
  auto e = d_discrete(make_set({"x", "y"}));
  auto c = fx::walking_arrow();  // both endpoints over x
  FinFunctor f{c, e, {0, 0}, {0, 0, 0}};
  // ef: classes {1,2} over x and {3} over y
  auto ef = fx::ef();
  FinFunctor g{ef, e, {}, {}};
  for (const auto& o : ef->objects()) g.omap.push_back(o == "3" ? 1 : 0);
  for (const auto& m : ef->morphisms())
    g.mmap.push_back(e->identity_of(g.omap[ef->mor(ef->mor_index(m.id)).src]));
  REQUIRE(check_functor(g).ok);
  auto pb = pullback_cat(f, g);
  auto qp = q_components(*pb.apex);
  auto qc = q_assign(*c);
  auto qw = q_assign(*ef);
  SetFun qf{qc.cod, e->objects(), {}};
  for (const auto& [o, comp] : qc.map) qf.map[comp] = f.on_object_name(o);
  SetFun qg{qw.cod, e->objects(), {}};
  for (const auto& [o, comp] : qw.map) qg.map[comp] = g.on_object_name(o);
  auto qpb = pullback_set(qf, qg);
  CHECK(qp.size() == qpb.apex.size());
}

TEST_CASE("q sends equivalences to isomorphisms (cardinality check)") {
  auto e = fx::ef();
  auto cls = p_iso_classes(*e);
  CHECK(q_components(*e).size() == cls.classes.size());
}

TEST_CASE("full subcategory and coproduct") {
  auto e = fx::ef();
  auto sub = full_subcategory(*e, {e->object_index("1"), e->object_index("2")});
  CHECK(sub->num_objects() == 2);
  CHECK(sub->num_morphisms() == 4);
  CHECK(check_category(*sub).ok);
  auto cop = coproduct_cat(*fx::walking_arrow(), *fx::point());
  CHECK(cop->num_objects() == 3);
  CHECK(check_category(*cop).ok);
  CHECK(q_components(*cop).size() == 2);
}

TEST_CASE("find_isomorphism") {
  Guard g(5000);
  auto e = fx::ef();
  auto found = find_isomorphism(e, e, g);
  REQUIRE(found.has_value());
  CHECK(check_functor(*found).ok);
  CHECK(functor_is_iso(*found));
  // relabeled copy
  auto e2 = canonical_relabel(*e);
  auto found2 = find_isomorphism(e, e2, g);
  REQUIRE(found2.has_value());
  CHECK(functor_is_iso(*found2));
  // non-isomorphic pair
  CHECK_FALSE(find_isomorphism(e, fx::walking_arrow(), g).has_value());
  CHECK_FALSE(find_isomorphism(fx::walking_iso(), fx::z2(), g).has_value());
}

TEST_CASE("pullback of a fully faithful functor is fully faithful (paper 4)") {
  // f: point -> walking iso at object 1 is fully faithful (hom singletons)
  auto wi = fx::walking_iso();
  auto pt = fx::point();
  FinFunctor f{pt, wi, {wi->object_index("1")}, {wi->mor_index("i1")}};
  REQUIRE(equivalence_analysis(f).fully_faithful);
  auto pb = pullback_cat(identity_functor(wi), f);
  auto r = equivalence_analysis(pb.pr1);
  CHECK(r.fully_faithful);
}

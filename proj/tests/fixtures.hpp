#ifndef WGCAT_TEST_FIXTURES_HPP
#define WGCAT_TEST_FIXTURES_HPP

#include "wgcat/fincat.hpp"
#include "wgcat/nfold.hpp"

namespace fx {

using namespace wgcat;

// equivalence relation on {1,2,3} with classes {1,2},{3}
inline CatPtr ef() {
  SetFun f{make_set({"1", "2", "3"}), make_set({"u", "v"}), {{"1", "u"}, {"2", "u"}, {"3", "v"}}};
  return hd_from_surjection(f.dom, f);
}

inline CatPtr walking_arrow() {
  FinCatBuilder b;
  b.add_object("0");
  b.add_object("1");
  b.add_mor("i0", "0", "0");
  b.add_mor("i1", "1", "1");
  b.add_mor("a", "0", "1");
  b.set_identity("0", "i0");
  b.set_identity("1", "i1");
  b.set_compose("i0", "i0", "i0");
  b.set_compose("i1", "i1", "i1");
  b.set_compose("a", "i0", "a");
  b.set_compose("i1", "a", "a");
  return b.build();
}

inline CatPtr walking_iso() {
  FinCatBuilder b;
  b.add_object("0");
  b.add_object("1");
  b.add_mor("i0", "0", "0");
  b.add_mor("i1", "1", "1");
  b.add_mor("f", "0", "1");
  b.add_mor("g", "1", "0");
  b.set_identity("0", "i0");
  b.set_identity("1", "i1");
  b.set_compose("i0", "i0", "i0");
  b.set_compose("i1", "i1", "i1");
  b.set_compose("f", "i0", "f");
  b.set_compose("i1", "f", "f");
  b.set_compose("g", "i1", "g");
  b.set_compose("i0", "g", "g");
  b.set_compose("g", "f", "i0");
  b.set_compose("f", "g", "i1");
  return b.build();
}

// Z/2 as a one-object groupoid
inline CatPtr z2() {
  FinCatBuilder b;
  b.add_object("*");
  b.add_mor("e", "*", "*");
  b.add_mor("s", "*", "*");
  b.set_identity("*", "e");
  b.set_compose("e", "e", "e");
  b.set_compose("e", "s", "s");
  b.set_compose("s", "e", "s");
  b.set_compose("s", "s", "e");
  return b.build();
}

inline CatPtr point() { return d_discrete(make_set({"*"})); }

// unique-morphism functor between posetal groupoids, from an object assignment
inline FinFunctor posetal_functor(const CatPtr& dom, const CatPtr& cod,
                                  const std::function<std::string(const std::string&)>& on_obj) {
  FinFunctor f{dom, cod, {}, {}};
  for (const auto& o : dom->objects()) f.omap.push_back(cod->object_index(on_obj(o)));
  for (const auto& m : dom->morphisms()) {
    int a = f.omap[m.src], b = f.omap[m.tgt];
    const auto& h = cod->hom(a, b);
    if (h.size() != 1) throw input_error("posetal_functor: hom not a singleton");
    f.mmap.push_back(h[0]);
  }
  return f;
}

// double category of commuting squares of an equivalence relation
inline NFold squares_of(const CatPtr& e) {
  auto n = nerve(*e, 2);
  auto cls = p_iso_classes(*e);
  auto cell_of = [&](int k) {
    FinSet chains = n.cell({k});
    SetFun g{chains, cls.classes, {}};
    SetFun src1 = identity_fun(chains);
    if (k >= 1) {
      MultiMono u = mm_id({k});
      u[0] = mono_vertex(k, 0);
      src1 = n.act(u);
    }
    for (const auto& c : chains) g.map[c] = cls.assign.at(k >= 1 ? src1.at(c) : c);
    return hd_from_surjection(chains, g);
  };
  CatTable t(1, 2);
  for (int k = 0; k <= 2; ++k) t.set_cell({k}, cell_of(k));
  for (const auto& g : t.all_generators()) {
    const SetFun& sf = n.gen_action(g);
    t.set_action(g, posetal_functor(t.cell(g.at), t.cell(gen_target(g)),
                                    [&](const std::string& o) { return sf.at(o); }));
  }
  NFold x;
  x.n = 2;
  x.t = std::move(t);
  return x;
}

// double category constant in the outer direction (weakly globular, not globular
// when c is a non-discrete equivalence relation)
inline NFold constant_double(const CatPtr& c) {
  NFold x;
  x.n = 2;
  x.t = CatTable(1, 2);
  for (int k = 0; k <= 2; ++k) x.t.set_cell({k}, c);
  for (const auto& g : x.t.all_generators()) x.t.set_action(g, identity_functor(c));
  return x;
}

inline bool nfold_equal(const NFold& a, const NFold& b) {
  if (a.n != b.n || a.t.trunc() != b.t.trunc()) return false;
  for (const auto& [k, c] : a.t.cells())
    if (!b.t.has_cell(k) || !(*b.t.cell(k) == *c)) return false;
  for (const auto& [g, f] : a.t.actions()) {
    auto it = b.t.actions().find(g);
    if (it == b.t.actions().end()) return false;
    if (f.omap != it->second.omap || f.mmap != it->second.mmap) return false;
  }
  return true;
}

}  // namespace fx

#endif

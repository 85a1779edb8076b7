#include "wgcat/models.hpp"

#include <algorithm>

namespace wgcat {

ValidationReport validate_tam(const TamTrunc& x) {
  if (x.t.arity() != x.n - 1) return {false, "malformed-table", "table arity does not match n"};
  if (auto r = x.t.validate(); !r) return r;
  for (const auto& k : x.t.all_indices()) {
    auto r = check_category(*x.t.cell(k));
    if (!r) return {false, r.code, "cell (" + idx_name(k) + "): " + r.detail};
  }
  return {};
}

TamTrunc tam_from_cat(const CatPtr& c) {
  TamTrunc x;
  x.n = 1;
  x.t = CatTable(0, 3);
  x.t.set_cell({}, c);
  return x;
}

TamTrunc tam_from_nfold(const NFold& x, int L) {
  TamTrunc out;
  out.n = x.n;
  out.t = corner_J(x, L);
  return out;
}

NFold nfold_from_tam(const TamTrunc& x, ValidationReport* why) { return from_levels(x.t, why); }

TamTrunc tam_slice(const TamTrunc& x, int k) {
  TamTrunc s;
  s.n = x.n - 1;
  s.t = table_slice(x.t, k);
  std::string prefix = std::to_string(k);
  for (const auto& [path, sec] : x.sections) {
    if (path == prefix)
      s.sections[""] = sec;
    else if (path.rfind(prefix + ",", 0) == 0)
      s.sections[path.substr(prefix.size() + 1)] = sec;
  }
  return s;
}

NFold nfold_slice_as(const TamTrunc& x, int k, ValidationReport* why) {
  NFold s;
  s.n = x.n - 1;
  s.t = table_slice(x.t, k);
  auto r = validate_nfold(s);
  if (why) *why = r;
  if (!r) {
    if (!why) throw input_error("nfold_slice_as: " + r.code + ": " + r.detail);
    s.n = 0;
  }
  return s;
}

// ---------------------------------------------------------------------------
// discretization

FinSet truncate_p_base(const CatPtr& c) { return p_iso_classes(*c).classes; }

HDData discretize_table(const CatTable& t) {
  HDData out;
  MultiIdx bottom(t.arity(), 0);
  SetFun chi = identity_fun(FinSet(t.cell(bottom)->objects()));
  CatTable cur = t;
  while (true) {
    if (cur.arity() == 0) {
      auto cls = p_iso_classes(*cur.cell({}));
      chi = compose(cls.assign, chi);
      out.set = cls.classes;
      break;
    }
    auto tr = truncate_p_table(cur);
    if (!tr.ok) {
      out.error = tr.error;
      return out;
    }
    MultiIdx b(cur.arity(), 0);
    auto cls = p_iso_classes(*cur.cell(b));
    SetFun step{chi.cod, FinSet(tr.t.cell(MultiIdx(cur.arity() - 1, 0))->objects()), {}};
    for (const auto& o : step.dom) step.map[o] = cls.assign.at(o);
    chi = compose(step, chi);
    cur = tr.t;
  }
  for (const auto& j : t.all_indices()) {
    MultiMono v = mm_id(j);
    for (int d = 0; d < t.arity(); ++d) v[d] = mono_vertex(j[d], 0);
    FinFunctor red = t.act(v);
    SetFun a{FinSet(t.cell(j)->objects()), out.set, {}};
    for (int o = 0; o < t.cell(j)->num_objects(); ++o)
      a.map[t.cell(j)->object(o)] = chi.at(red.tgt->object(red.omap[o]));
    out.obj_assign[j] = std::move(a);
  }
  out.ok = true;
  return out;
}

CatTable discrete_table(int arity, int trunc, const FinSet& s) {
  CatTable t(arity, trunc);
  auto d = d_discrete(s);
  for (const auto& k : t.all_indices()) t.set_cell(k, d);
  for (const auto& g : t.all_generators()) t.set_action(g, identity_functor(d));
  return t;
}

TamMap gamma_map(const CatTable& t, const HDData& d) {
  TamMap m;
  auto dt = d_discrete(d.set);
  for (const auto& j : t.all_indices()) {
    const CatPtr& c = t.cell(j);
    FinFunctor f{c, dt, {}, {}};
    const SetFun& a = d.obj_assign.at(j);
    for (const auto& o : c->objects()) f.omap.push_back(dt->object_index(a.at(o)));
    for (int mi = 0; mi < c->num_morphisms(); ++mi)
      f.mmap.push_back(dt->identity_of(f.omap[c->mor(mi).src]));
    m.comp[j] = std::move(f);
  }
  return m;
}

TamMap section_map(const CatTable& t, const HDData& d,
                   const std::map<std::string, std::string>* chosen) {
  TamMap m;
  auto dt = d_discrete(d.set);
  MultiIdx bottom(t.arity(), 0);
  const SetFun& ab = d.obj_assign.at(bottom);
  std::map<std::string, std::string> rep;
  if (chosen) {
    rep = *chosen;
  } else {
    for (const auto& o : t.cell(bottom)->objects()) {
      const std::string& s = ab.at(o);
      auto it = rep.find(s);
      if (it == rep.end() || o < it->second) rep[s] = o;
    }
  }
  for (const auto& j : t.all_indices()) {
    MultiMono u = mm_id(bottom);
    for (int dd = 0; dd < t.arity(); ++dd) u[dd] = Mono{j[dd], 0, std::vector<int>(j[dd] + 1, 0)};
    FinFunctor deg = t.act(u);  // bottom -> cell(j)
    const CatPtr& c = t.cell(j);
    FinFunctor f{dt, c, {}, {}};
    for (const auto& s : d.set) {
      auto it = rep.find(s);
      if (it == rep.end()) throw input_error("section_map: no representative for '" + s + "'");
      int bo = t.cell(bottom)->object_index(it->second);
      if (bo < 0) throw input_error("section_map: chosen representative not in bottom cell");
      f.omap.push_back(deg.omap[bo]);
    }
    for (int mi = 0; mi < dt->num_morphisms(); ++mi)
      f.mmap.push_back(c->identity_of(f.omap[dt->mor(mi).src]));
    m.comp[j] = std::move(f);
  }
  return m;
}

// ---------------------------------------------------------------------------
// truncation functors

namespace {

TruncResult truncate_table(const CatTable& t, bool use_q) {
  TruncResult out;
  if (t.arity() == 0) {
    out.error = "truncation of a 1-fold structure is a set; use truncate_p_base";
    return out;
  }
  int m = t.arity();
  CatTable r(m - 1, t.trunc());
  std::map<MultiIdx, SetFun> cls;
  for (const auto& j : t.all_indices())
    cls[j] = use_q ? q_assign(*t.cell(j)) : p_iso_classes(*t.cell(j)).assign;
  auto sub_indices = box_indices_of(m - 1, t.trunc());
  for (const auto& j : sub_indices) {
    MultiIdx j0 = j, j1 = j, j2 = j;
    j0.push_back(0);
    j1.push_back(1);
    j2.push_back(2);
    const SetFun& c0 = cls.at(j0);
    const SetFun& c1 = cls.at(j1);
    const FinFunctor& d0 = t.gen_action({j1, m - 1, true, 0});
    const FinFunctor& d1 = t.gen_action({j1, m - 1, true, 1});
    const FinFunctor& s0 = t.gen_action({j0, m - 1, false, 0});
    FinCatBuilder b;
    for (const auto& o : c0.cod) b.add_object(o);
    std::map<std::string, std::pair<std::string, std::string>> ends;
    for (const auto& mo : c1.cod) {
      std::string src, tgt;
      for (const auto& x : t.cell(j1)->objects()) {
        if (c1.at(x) != mo) continue;
        int xi = t.cell(j1)->object_index(x);
        std::string s = c0.at(d1.tgt->object(d1.omap[xi]));
        std::string tt = c0.at(d0.tgt->object(d0.omap[xi]));
        if (src.empty()) {
          src = s;
          tgt = tt;
        } else if (src != s || tgt != tt) {
          out.error = "truncation endpoints ill-defined at (" + idx_name(j1) + ")";
          return out;
        }
      }
      b.add_mor(mo, src, tgt);
      ends[mo] = {src, tgt};
    }
    for (const auto& o : c0.cod) {
      std::string id;
      for (const auto& x : t.cell(j0)->objects()) {
        if (c0.at(x) != o) continue;
        int xi = t.cell(j0)->object_index(x);
        std::string v = c1.at(s0.tgt->object(s0.omap[xi]));
        if (id.empty())
          id = v;
        else if (id != v) {
          out.error = "truncation identity ill-defined at (" + idx_name(j0) + ")";
          return out;
        }
      }
      b.set_identity(o, id);
    }
    const FinFunctor& e1 = t.gen_action({j2, m - 1, true, 1});
    MultiMono nu1 = mm_id(j2), nu2 = mm_id(j2);
    nu1[m - 1] = mono_edge(2, 1);
    nu2[m - 1] = mono_edge(2, 2);
    FinFunctor v1 = t.act(nu1), v2 = t.act(nu2);
    std::map<std::pair<std::string, std::string>, std::string> comp;
    for (const auto& w : t.cell(j2)->objects()) {
      int wi = t.cell(j2)->object_index(w);
      std::string f = c1.at(v1.tgt->object(v1.omap[wi]));
      std::string g = c1.at(v2.tgt->object(v2.omap[wi]));
      std::string gf = c1.at(e1.tgt->object(e1.omap[wi]));
      auto key = std::make_pair(g, f);
      auto it = comp.find(key);
      if (it == comp.end())
        comp[key] = gf;
      else if (it->second != gf) {
        out.error = "truncation composition ill-defined at (" + idx_name(j2) + ")";
        return out;
      }
    }
    for (const auto& f : c1.cod)
      for (const auto& g : c1.cod) {
        if (ends.at(f).second != ends.at(g).first) continue;
        auto it = comp.find({g, f});
        if (it == comp.end()) {
          out.error = "truncation not Segal at (" + idx_name(j2) + "): no composite (" + g + "," +
                      f + ")";
          return out;
        }
        b.set_compose(g, f, it->second);
      }
    r.set_cell(j, b.build());
  }
  for (const auto& j : sub_indices)
    for (int dim = 0; dim < m - 1; ++dim) {
      auto build = [&](bool face, int i) -> bool {
        MultiIdx tgt = j;
        tgt[dim] += face ? -1 : 1;
        MultiIdx j0 = j, j1 = j, t0 = tgt, t1 = tgt;
        j0.push_back(0);
        j1.push_back(1);
        t0.push_back(0);
        t1.push_back(1);
        const FinFunctor& f0 = t.gen_action({j0, dim, face, i});
        const FinFunctor& f1 = t.gen_action({j1, dim, face, i});
        const CatPtr& dom = r.cell(j);
        const CatPtr& cod = r.cell(tgt);
        FinFunctor f{dom, cod, {}, {}};
        f.omap.assign(dom->num_objects(), -1);
        f.mmap.assign(dom->num_morphisms(), -1);
        for (const auto& x : t.cell(j0)->objects()) {
          int oi = dom->object_index(cls.at(j0).at(x));
          int v = cod->object_index(cls.at(t0).at(f0.on_object_name(x)));
          if (f.omap[oi] >= 0 && f.omap[oi] != v) {
            out.error = "truncation action ill-defined at (" + idx_name(j0) + ")";
            return false;
          }
          f.omap[oi] = v;
        }
        for (const auto& x : t.cell(j1)->objects()) {
          int mi = dom->mor_index(cls.at(j1).at(x));
          int v = cod->mor_index(cls.at(t1).at(f1.on_object_name(x)));
          if (f.mmap[mi] >= 0 && f.mmap[mi] != v) {
            out.error = "truncation action ill-defined at (" + idx_name(j1) + ")";
            return false;
          }
          f.mmap[mi] = v;
        }
        r.set_action({j, dim, face, i}, std::move(f));
        return true;
      };
      if (j[dim] >= 1)
        for (int i = 0; i <= j[dim]; ++i)
          if (!build(true, i)) return out;
      if (j[dim] < t.trunc())
        for (int i = 0; i <= j[dim]; ++i)
          if (!build(false, i)) return out;
    }
  out.ok = true;
  out.t = std::move(r);
  return out;
}

}  // namespace

TruncResult truncate_p_table(const CatTable& t) { return truncate_table(t, false); }
TruncResult truncate_q_table(const CatTable& t) { return truncate_table(t, true); }

namespace {

TamTrunc truncate_tam_impl(const TamTrunc& x, bool use_q, ValidationReport* why) {
  TamTrunc out;
  out.n = x.n - 1;
  auto tr = use_q ? truncate_q_table(x.t) : truncate_p_table(x.t);
  if (!tr.ok) {
    if (why) {
      *why = {false, "truncation", tr.error};
      out.n = 0;
      return out;
    }
    throw input_error("truncate: " + tr.error);
  }
  out.t = std::move(tr.t);
  if (why) *why = {};
  for (const auto& [path, sec] : x.sections) {
    MultiIdx k = parse_idx(path);
    if ((int)k.size() > x.n - 3) continue;
    MultiIdx bottom = k;
    bottom.push_back(0);
    while ((int)bottom.size() < x.n - 1) bottom.push_back(0);
    auto cls = use_q ? q_assign(*x.t.cell(bottom)) : p_iso_classes(*x.t.cell(bottom)).assign;
    std::map<std::string, std::string> nsec;
    for (const auto& [s, o] : sec) nsec[s] = cls.at(o);
    out.sections[path] = std::move(nsec);
  }
  return out;
}

}  // namespace

TamTrunc truncate_p_tam(const TamTrunc& x, ValidationReport* why) {
  return truncate_tam_impl(x, false, why);
}
TamTrunc truncate_q_tam(const TamTrunc& x, ValidationReport* why) {
  return truncate_tam_impl(x, true, why);
}

NFold truncate_p_nfold(const NFold& x, ValidationReport* why) {
  auto tr = truncate_p_table(x.t);
  NFold out;
  if (!tr.ok) {
    if (why) {
      *why = {false, "truncation", tr.error};
      return out;
    }
    throw input_error("truncate_p: " + tr.error);
  }
  out.n = x.n - 1;
  out.t = std::move(tr.t);
  auto r = validate_nfold(out);
  if (why) *why = r;
  if (!r) {
    if (!why) throw input_error("truncate_p: " + r.code + ": " + r.detail);
    out.n = 0;
  }
  return out;
}

NFold truncate_q_nfold(const NFold& x, ValidationReport* why) {
  auto tr = truncate_q_table(x.t);
  NFold out;
  if (!tr.ok) {
    if (why) {
      *why = {false, "truncation", tr.error};
      return out;
    }
    throw input_error("truncate_q: " + tr.error);
  }
  out.n = x.n - 1;
  out.t = std::move(tr.t);
  auto r = validate_nfold(out);
  if (why) *why = r;
  if (!r) {
    if (!why) throw input_error("truncate_q: " + r.code + ": " + r.detail);
    out.n = 0;
  }
  return out;
}

namespace {

TruncatedMap truncate_map_impl(const TamMap& f, const TamTrunc& X, const TamTrunc& Y, bool use_q) {
  TruncatedMap out;
  ValidationReport w1, w2;
  out.src = truncate_tam_impl(X, use_q, &w1);
  out.tgt = truncate_tam_impl(Y, use_q, &w2);
  if (!w1 || !w2) {
    out.error = !w1 ? w1.detail : w2.detail;
    return out;
  }
  for (const auto& j : out.src.t.all_indices()) {
    MultiIdx j0 = j, j1 = j;
    j0.push_back(0);
    j1.push_back(1);
    auto clsx0 = use_q ? q_assign(*X.t.cell(j0)) : p_iso_classes(*X.t.cell(j0)).assign;
    auto clsx1 = use_q ? q_assign(*X.t.cell(j1)) : p_iso_classes(*X.t.cell(j1)).assign;
    auto clsy0 = use_q ? q_assign(*Y.t.cell(j0)) : p_iso_classes(*Y.t.cell(j0)).assign;
    auto clsy1 = use_q ? q_assign(*Y.t.cell(j1)) : p_iso_classes(*Y.t.cell(j1)).assign;
    const CatPtr& dom = out.src.t.cell(j);
    const CatPtr& cod = out.tgt.t.cell(j);
    FinFunctor g{dom, cod, {}, {}};
    g.omap.assign(dom->num_objects(), -1);
    g.mmap.assign(dom->num_morphisms(), -1);
    const FinFunctor& f0 = f.at(j0);
    const FinFunctor& f1 = f.at(j1);
    for (const auto& x : X.t.cell(j0)->objects()) {
      int oi = dom->object_index(clsx0.at(x));
      int v = cod->object_index(clsy0.at(f0.on_object_name(x)));
      if (g.omap[oi] >= 0 && g.omap[oi] != v) {
        out.error = "induced truncation map ill-defined at (" + idx_name(j0) + ")";
        return out;
      }
      g.omap[oi] = v;
    }
    for (const auto& x : X.t.cell(j1)->objects()) {
      int mi = dom->mor_index(clsx1.at(x));
      int v = cod->mor_index(clsy1.at(f1.on_object_name(x)));
      if (g.mmap[mi] >= 0 && g.mmap[mi] != v) {
        out.error = "induced truncation map ill-defined at (" + idx_name(j1) + ")";
        return out;
      }
      g.mmap[mi] = v;
    }
    out.map.comp[j] = std::move(g);
  }
  out.ok = true;
  return out;
}

}  // namespace

TruncatedMap truncate_map_p(const TamMap& f, const TamTrunc& X, const TamTrunc& Y) {
  return truncate_map_impl(f, X, Y, false);
}
TruncatedMap truncate_map_q(const TamMap& f, const TamTrunc& X, const TamTrunc& Y) {
  return truncate_map_impl(f, X, Y, true);
}

// ---------------------------------------------------------------------------
// one-step discretization

OneStepDisc one_step_discretization(const CatTable& t) {
  OneStepDisc out;
  if (t.arity() == 0) {
    auto cls = p_iso_classes(*t.cell({}));
    out.table = CatTable(0, t.trunc());
    auto dt = d_discrete(cls.classes);
    out.table.set_cell({}, dt);
    FinFunctor u{t.cell({}), dt, {}, {}};
    for (const auto& o : t.cell({})->objects())
      u.omap.push_back(dt->object_index(cls.assign.at(o)));
    for (int mi = 0; mi < t.cell({})->num_morphisms(); ++mi)
      u.mmap.push_back(dt->identity_of(u.omap[t.cell({})->mor(mi).src]));
    out.unit.comp[{}] = std::move(u);
    out.ok = true;
    return out;
  }
  auto tr = truncate_p_table(t);
  if (!tr.ok) {
    out.error = tr.error;
    return out;
  }
  int m = t.arity();
  NFold pn;
  pn.n = m;
  pn.t = tr.t;
  auto mp = multinerve(pn, std::max(2, t.trunc()));
  out.table = CatTable(m, t.trunc());
  for (const auto& j : t.all_indices()) out.table.set_cell(j, d_discrete(mp.cell(j)));
  for (const auto& g : t.all_generators()) {
    const SetFun& sf = mp.gen_action(g);
    const CatPtr& dom = out.table.cell(g.at);
    const CatPtr& cod = out.table.cell(gen_target(g));
    FinFunctor ff{dom, cod, {}, {}};
    for (const auto& o : dom->objects()) ff.omap.push_back(cod->object_index(sf.at(o)));
    for (int mi = 0; mi < dom->num_morphisms(); ++mi)
      ff.mmap.push_back(cod->identity_of(ff.omap[dom->mor(mi).src]));
    out.table.set_action(g, std::move(ff));
  }
  std::map<MultiIdx, SetFun> cls;
  for (const auto& j : t.all_indices()) cls[j] = p_iso_classes(*t.cell(j)).assign;
  for (const auto& j : t.all_indices()) {
    int c = j[m - 1];
    const CatPtr& dom = t.cell(j);
    const CatPtr& cod = out.table.cell(j);
    FinFunctor u{dom, cod, {}, {}};
    auto value = [&](const std::string& o) -> std::string {
      if (c <= 1) return cls.at(j).at(o);
      std::vector<std::string> parts;
      for (int jj = 1; jj <= c; ++jj) {
        MultiMono e = mm_id(j);
        e[m - 1] = mono_edge(c, jj);
        FinFunctor nu = t.act(e);
        MultiIdx j1 = j;
        j1[m - 1] = 1;
        parts.push_back(cls.at(j1).at(nu.on_object_name(o)));
      }
      return chain_name(parts);
    };
    for (const auto& o : dom->objects()) u.omap.push_back(cod->object_index(value(o)));
    for (int mi = 0; mi < dom->num_morphisms(); ++mi)
      u.mmap.push_back(cod->identity_of(u.omap[dom->mor(mi).src]));
    out.unit.comp[j] = std::move(u);
  }
  out.ok = true;
  return out;
}

bool is_discrete_table(const CatTable& t) {
  for (const auto& [k, c] : t.cells()) {
    (void)k;
    if (!c->is_discrete()) return false;
  }
  for (const auto& [g, f] : t.actions()) {
    (void)g;
    if (!functor_is_iso(f)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// hom fibers

FinSet hom_object_base(const CatPtr& c, const std::string& a, const std::string& b) {
  auto cls = p_iso_classes(*c);
  std::vector<std::string> out;
  for (const auto& m : c->morphisms())
    if (cls.assign.at(c->object(m.src)) == a && cls.assign.at(c->object(m.tgt)) == b)
      out.push_back(m.id);
  return make_set(out);
}

HomFiber hom_object(const TamTrunc& x, const std::string& a, const std::string& b) {
  if (x.n < 2) throw input_error("hom_object: n must be >= 2 (use hom_object_base)");
  auto x0d = discretize_table(table_slice(x.t, 0));
  if (!x0d.ok) throw input_error("hom_object: level 0 not discretizable: " + x0d.error);
  if (!std::binary_search(x0d.set.begin(), x0d.set.end(), a) ||
      !std::binary_search(x0d.set.begin(), x0d.set.end(), b))
    throw input_error("hom_object: labels not in X0^d");
  HomFiber out;
  out.fiber.n = x.n - 1;
  CatTable ft(x.t.arity() - 1, x.t.trunc());
  for (const auto& j : box_indices_of(x.t.arity() - 1, x.t.trunc())) {
    MultiIdx j1 = j;
    j1.insert(j1.begin(), 1);
    const CatPtr& c = x.t.cell(j1);
    const FinFunctor& dtgt = x.t.gen_action({j1, 0, true, 0});
    const FinFunctor& dsrc = x.t.gen_action({j1, 0, true, 1});
    const SetFun& assign = x0d.obj_assign.at(j);
    std::vector<int> keep;
    for (int o = 0; o < c->num_objects(); ++o)
      if (assign.at(dsrc.tgt->object(dsrc.omap[o])) == a &&
          assign.at(dtgt.tgt->object(dtgt.omap[o])) == b)
        keep.push_back(o);
    ft.set_cell(j, full_subcategory(*c, keep));
  }
  for (const auto& g : ft.all_generators()) {
    MultiIdx at1 = g.at;
    at1.insert(at1.begin(), 1);
    const FinFunctor& f = x.t.gen_action({at1, g.dir + 1, g.face, g.i});
    const CatPtr& dom = ft.cell(g.at);
    const CatPtr& cod = ft.cell(gen_target(g));
    FinFunctor ff{dom, cod, {}, {}};
    for (const auto& o : dom->objects()) {
      int v = cod->object_index(f.on_object_name(o));
      if (v < 0)
        throw input_error("hom_object: action leaves the fiber at (" + idx_name(g.at) + ")");
      ff.omap.push_back(v);
    }
    for (const auto& mo : dom->morphisms()) {
      int v = cod->mor_index(f.on_mor_name(mo.id));
      if (v < 0)
        throw input_error("hom_object: action leaves the fiber at (" + idx_name(g.at) + ")");
      ff.mmap.push_back(v);
    }
    ft.set_action(g, std::move(ff));
  }
  out.fiber.t = std::move(ft);
  return out;
}

// ---------------------------------------------------------------------------
// induced Segal structures

InducedSegal induced_segal_structure(const TamTrunc& x, int k, const HDData& x0d) {
  InducedSegal out;
  int m = x.t.arity();
  auto dt = d_discrete(x0d.set);
  CatTable wt(m - 1, x.t.trunc());
  for (const auto& j : box_indices_of(m - 1, x.t.trunc())) {
    MultiIdx j1 = j;
    j1.insert(j1.begin(), 1);
    const CatPtr& c = x.t.cell(j1);
    const FinFunctor& dtgt = x.t.gen_action({j1, 0, true, 0});
    const FinFunctor& dsrc = x.t.gen_action({j1, 0, true, 1});
    const SetFun& assign = x0d.obj_assign.at(j);
    auto mk = [&](const FinFunctor& d) {
      FinFunctor f{c, dt, {}, {}};
      for (int o = 0; o < c->num_objects(); ++o)
        f.omap.push_back(dt->object_index(assign.at(d.tgt->object(d.omap[o]))));
      for (int mi = 0; mi < c->num_morphisms(); ++mi)
        f.mmap.push_back(dt->identity_of(f.omap[c->mor(mi).src]));
      return f;
    };
    auto wide = wide_pullback_cat(c, mk(dsrc), mk(dtgt), k);
    wt.set_cell(j, wide.apex);
  }
  for (const auto& g : wt.all_generators()) {
    MultiIdx at1 = g.at;
    at1.insert(at1.begin(), 1);
    const FinFunctor& part = x.t.gen_action({at1, g.dir + 1, g.face, g.i});
    const CatPtr& dom = wt.cell(g.at);
    const CatPtr& cod = wt.cell(gen_target(g));
    FinFunctor ff{dom, cod, {}, {}};
    for (const auto& o : dom->objects()) {
      auto parts = split_chain(o, k);
      for (auto& p : parts) p = part.on_object_name(p);
      ff.omap.push_back(cod->object_index(chain_name(parts)));
    }
    for (const auto& mo : dom->morphisms()) {
      auto parts = split_chain(mo.id, k);
      for (auto& p : parts) p = part.on_mor_name(p);
      ff.mmap.push_back(cod->mor_index(chain_name(parts)));
    }
    wt.set_action(g, std::move(ff));
  }
  out.wide.n = x.n - 1;
  out.wide.t = std::move(wt);
  for (const auto& j : out.wide.t.all_indices()) {
    MultiIdx jk = j;
    jk.insert(jk.begin(), k);
    const CatPtr& dom = x.t.cell(jk);
    const CatPtr& cod = out.wide.t.cell(j);
    std::vector<FinFunctor> nus;
    for (int jj = 1; jj <= k; ++jj) {
      MultiMono e = mm_id(jk);
      e[0] = mono_edge(k, jj);
      nus.push_back(x.t.act(e));
    }
    FinFunctor f{dom, cod, {}, {}};
    for (const auto& o : dom->objects()) {
      std::vector<std::string> parts;
      for (auto& nu : nus) parts.push_back(nu.on_object_name(o));
      f.omap.push_back(cod->object_index(chain_name(parts)));
    }
    for (const auto& mo : dom->morphisms()) {
      std::vector<std::string> parts;
      for (auto& nu : nus) parts.push_back(nu.on_mor_name(mo.id));
      f.mmap.push_back(cod->mor_index(chain_name(parts)));
    }
    out.mu.comp[j] = std::move(f);
  }
  return out;
}

// ---------------------------------------------------------------------------
// n-equivalences

EquivCert is_n_equivalence(const TamMap& f, const TamTrunc& X, const TamTrunc& Y, int n) {
  EquivCert cert;
  cert.n = n;
  if (n == 1) {
    cert.base = equivalence_analysis(f.at({}));
    cert.pass = cert.base->equivalence;
    if (!cert.pass) cert.fail_path = "base: " + cert.base->detail;
    return cert;
  }
  auto x0d = discretize_table(table_slice(X.t, 0));
  auto y0d = discretize_table(table_slice(Y.t, 0));
  if (!x0d.ok || !y0d.ok) {
    cert.fail_path = "level-0 discretization failed";
    return cert;
  }
  MultiIdx bottom(X.t.arity(), 0);
  SetFun fd{x0d.set, y0d.set, {}};
  {
    const SetFun& ax = x0d.obj_assign.at(MultiIdx(X.t.arity() - 1, 0));
    const SetFun& ay = y0d.obj_assign.at(MultiIdx(Y.t.arity() - 1, 0));
    const FinFunctor& f0 = f.at(bottom);
    for (const auto& o : X.t.cell(bottom)->objects()) {
      const std::string& cls = ax.at(o);
      const std::string& img = ay.at(f0.on_object_name(o));
      auto it = fd.map.find(cls);
      if (it == fd.map.end())
        fd.map[cls] = img;
      else if (it->second != img) {
        cert.fail_path = "f does not descend to discretizations";
        return cert;
      }
    }
  }
  bool all = true;
  for (const auto& a : x0d.set)
    for (const auto& b : x0d.set) {
      auto xf = hom_object(X, a, b);
      auto yf = hom_object(Y, fd.at(a), fd.at(b));
      TamMap fr;
      bool ok = true;
      for (const auto& j : xf.fiber.t.all_indices()) {
        MultiIdx j1 = j;
        j1.insert(j1.begin(), 1);
        const FinFunctor& comp = f.at(j1);
        const CatPtr& dom = xf.fiber.t.cell(j);
        const CatPtr& cod = yf.fiber.t.cell(j);
        FinFunctor g{dom, cod, {}, {}};
        for (const auto& o : dom->objects()) {
          int v = cod->object_index(comp.on_object_name(o));
          if (v < 0) {
            ok = false;
            break;
          }
          g.omap.push_back(v);
        }
        if (!ok) break;
        for (const auto& mo : dom->morphisms()) {
          int v = cod->mor_index(comp.on_mor_name(mo.id));
          if (v < 0) {
            ok = false;
            break;
          }
          g.mmap.push_back(v);
        }
        if (!ok) break;
        fr.comp[j] = std::move(g);
      }
      std::shared_ptr<EquivCert> sub;
      if (!ok) {
        sub = std::make_shared<EquivCert>();
        sub->n = n - 1;
        sub->fail_path = "fiber image mismatch";
      } else {
        sub = std::make_shared<EquivCert>(is_n_equivalence(fr, xf.fiber, yf.fiber, n - 1));
      }
      if (!sub->pass) {
        all = false;
        if (cert.fail_path.empty())
          cert.fail_path = "fiber (" + a + "," + b + "): " + sub->fail_path;
      }
      cert.fibers.push_back({a, b, sub});
    }
  auto tm = truncate_map_p(f, X, Y);
  if (!tm.ok) {
    cert.fail_path = "truncation: " + tm.error;
    cert.pass = false;
    return cert;
  }
  cert.truncation = std::make_shared<EquivCert>(is_n_equivalence(tm.map, tm.src, tm.tgt, n - 1));
  if (!cert.truncation->pass) {
    all = false;
    if (cert.fail_path.empty()) cert.fail_path = "truncation: " + cert.truncation->fail_path;
  }
  cert.pass = all;
  return cert;
}

bool replay_certificate(const EquivCert& c, const TamMap& f, const TamTrunc& X,
                        const TamTrunc& Y) {
  if (c.n == 1) {
    if (!c.base) return false;
    auto a = equivalence_analysis(f.at({}));
    return a.fully_faithful == c.base->fully_faithful &&
           a.essentially_surjective == c.base->essentially_surjective &&
           c.pass == a.equivalence;
  }
  auto x0d = discretize_table(table_slice(X.t, 0));
  if (!x0d.ok) return false;
  if (c.fibers.size() != x0d.set.size() * x0d.set.size()) return false;
  size_t i = 0;
  for (const auto& a : x0d.set)
    for (const auto& b : x0d.set) {
      if (std::get<0>(c.fibers[i]) != a || std::get<1>(c.fibers[i]) != b) return false;
      ++i;
    }
  return c.truncation != nullptr;
}

// ---------------------------------------------------------------------------
// checkers

ModelReport is_hd(const NFold& x) {
  ModelReport r;
  r.model = "hd";
  r.n = x.n;
  r.trunc = x.t.trunc();
  if (x.n == 1) {
    r.add("hd.base", is_equiv_relation(*x.t.cell({})), "", "");
    return r;
  }
  auto v = validate_nfold(x);
  r.add("hd.valid", v.ok, "", v.detail);
  if (!v.ok) return r;
  for (int k = 0; k <= x.t.trunc(); ++k) {
    auto sub = is_hd(outer_slice(x, k));
    r.add("hd.level", sub.pass, "level " + std::to_string(k), "");
  }
  ValidationReport why;
  auto p = truncate_p_nfold(x, &why);
  if (!why) {
    r.add("hd.p", false, "", why.detail);
    return r;
  }
  auto sub = is_hd(p);
  r.add("hd.p", sub.pass, "", "");
  return r;
}

HDWitness hd_witness(const NFold& x) {
  HDWitness w;
  w.report = is_hd(x);
  if (!w.report.pass) return w;
  w.data = discretize_table(x.t);
  if (!w.data.ok) {
    w.report.add("hd.discretize", false, "", w.data.error);
    return w;
  }
  w.gamma = gamma_map(x.t, w.data);
  w.section = section_map(x.t, w.data);
  auto dt = discrete_table(x.t.arity(), x.t.trunc(), w.data.set);
  auto g = check_table_map<CatOps>(w.gamma, x.t, dt);
  w.report.add("hd.gamma", g.ok, "", g.detail);
  auto s = check_table_map<CatOps>(w.section, dt, x.t);
  w.report.add("hd.section", s.ok, "", s.detail);
  bool gs = true;
  for (const auto& j : x.t.all_indices()) {
    auto comp = compose(w.gamma.at(j), w.section.at(j));
    if (!functor_equal(comp, identity_functor(w.gamma.at(j).tgt))) gs = false;
  }
  w.report.add("hd.gamma-section", gs, "", gs ? "" : "gamma . section != id");
  return w;
}

ModelReport is_catwg(const NFold& x) {
  ModelReport r;
  r.model = "wg";
  r.n = x.n;
  r.trunc = x.t.trunc();
  if (x.n == 1) {
    auto v = check_category(*x.t.cell({}));
    r.add("wg.base", v.ok, "", v.detail);
    return r;
  }
  auto v = validate_nfold(x);
  r.add("wg.valid", v.ok, "", v.detail);
  if (!v.ok) return r;
  auto x0 = outer_slice(x, 0);
  auto a = is_hd(x0);
  r.add("wg.a", a.pass, "level 0", a.pass ? "" : "X0 not homotopically discrete");
  auto sg = check_segal_isos(x.t);
  r.add("wg.b", sg.ok, "", sg.detail);
  if (!a.pass || !sg.ok) return r;
  auto x0d = discretize_table(x0.t);
  if (!x0d.ok) {
    r.add("wg.c", false, "", x0d.error);
    return r;
  }
  TamTrunc xt;
  xt.n = x.n;
  xt.t = x.t;
  for (int k = 2; k <= x.t.trunc(); ++k) {
    auto ind = induced_segal_structure(xt, k, x0d);
    TamTrunc slice_k;
    slice_k.n = x.n - 1;
    slice_k.t = table_slice(x.t, k);
    auto cert = is_n_equivalence(ind.mu, slice_k, ind.wide, x.n - 1);
    r.add("wg.c", cert.pass, "k=" + std::to_string(k), cert.pass ? "" : cert.fail_path);
  }
  ValidationReport why;
  auto p = truncate_p_nfold(x, &why);
  if (!why) {
    r.add("wg.d", false, "", why.detail);
    return r;
  }
  auto sub = is_catwg(p);
  r.add("wg.d", sub.pass, "", "");
  return r;
}

ModelReport is_tawg(const TamTrunc& x) {
  ModelReport r;
  r.model = "tawg";
  r.n = x.n;
  r.trunc = x.t.trunc();
  if (x.n == 1) {
    auto v = check_category(*x.t.cell({}));
    r.add("tawg.base", v.ok, "", v.detail);
    return r;
  }
  auto v = validate_tam(x);
  r.add("tawg.valid", v.ok, "", v.detail);
  if (!v.ok) return r;
  ValidationReport w0;
  auto x0 = nfold_slice_as(x, 0, &w0);
  if (!w0) {
    r.add("tawg.a", false, "level 0", w0.detail);
    return r;
  }
  auto a = is_hd(x0);
  r.add("tawg.a", a.pass, "level 0", a.pass ? "" : "X0 not homotopically discrete");
  if (!a.pass) return r;
  auto x0d = discretize_table(x0.t);
  if (!x0d.ok) {
    r.add("tawg.b", false, "", x0d.error);
    return r;
  }
  for (int k = 2; k <= x.t.trunc(); ++k) {
    auto ind = induced_segal_structure(x, k, x0d);
    auto slice_k = tam_slice(x, k);
    auto cert = is_n_equivalence(ind.mu, slice_k, ind.wide, x.n - 1);
    r.add("tawg.b", cert.pass, "k=" + std::to_string(k), cert.pass ? "" : cert.fail_path);
  }
  for (int k = 0; k <= x.t.trunc(); ++k) {
    auto sub = is_tawg(tam_slice(x, k));
    r.add("tawg.level", sub.pass, "level " + std::to_string(k), "");
  }
  return r;
}

ModelReport is_tam(const TamTrunc& x) {
  ModelReport r = is_tawg(x);
  r.model = "tam";
  if (x.n == 1 || !r.pass) return r;
  CatTable cur = x.t;
  for (int rdepth = 0; rdepth <= x.n - 2; ++rdepth) {
    auto corner = table_slice(cur, 0);
    bool disc = is_discrete_table(corner);
    r.add("tam.disc", disc, "corner " + std::to_string(rdepth), disc ? "" : "corner not discrete");
    if (rdepth < x.n - 2) cur = table_slice(cur, 1);
  }
  return r;
}

ModelReport is_lta(const TamTrunc& x) {
  ModelReport r;
  r.model = "lta";
  r.n = x.n;
  r.trunc = x.t.trunc();
  if (x.n <= 2) {
    r = is_tawg(x);
    r.model = "lta";
    return r;
  }
  auto v = validate_tam(x);
  r.add("lta.valid", v.ok, "", v.detail);
  if (!v.ok) return r;
  for (int k = 0; k <= x.t.trunc(); ++k) {
    auto sub = is_lta(tam_slice(x, k));
    r.add("lta.i", sub.pass, "level " + std::to_string(k), "");
  }
  auto x0t = table_slice(x.t, 0);
  auto osd = one_step_discretization(x0t);
  if (!osd.ok) {
    r.add("lta.ii", false, "", osd.error);
    return r;
  }
  for (int k = 2; k <= x.t.trunc(); ++k) {
    bool all = true;
    std::string why;
    for (const auto& j : box_indices_of(x.t.arity() - 1, x.t.trunc())) {
      MultiIdx j1 = j, jk = j;
      j1.insert(j1.begin(), 1);
      jk.insert(jk.begin(), k);
      const CatPtr& c1 = x.t.cell(j1);
      const FinFunctor& dtgt = x.t.gen_action({j1, 0, true, 0});
      const FinFunctor& dsrc = x.t.gen_action({j1, 0, true, 1});
      FinFunctor ls = compose(osd.unit.at(j), dsrc);
      FinFunctor lt = compose(osd.unit.at(j), dtgt);
      auto wide = wide_pullback_cat(c1, ls, lt, k);
      std::vector<FinFunctor> nus;
      for (int jj = 1; jj <= k; ++jj) {
        MultiMono e = mm_id(jk);
        e[0] = mono_edge(k, jj);
        nus.push_back(x.t.act(e));
      }
      const CatPtr& dom = x.t.cell(jk);
      FinFunctor vk{dom, wide.apex, {}, {}};
      bool ok = true;
      for (const auto& o : dom->objects()) {
        std::vector<std::string> parts;
        for (auto& nu : nus) parts.push_back(nu.on_object_name(o));
        int w = wide.apex->object_index(chain_name(parts));
        if (w < 0) {
          ok = false;
          break;
        }
        vk.omap.push_back(w);
      }
      if (ok)
        for (const auto& mo : dom->morphisms()) {
          std::vector<std::string> parts;
          for (auto& nu : nus) parts.push_back(nu.on_mor_name(mo.id));
          int w = wide.apex->mor_index(chain_name(parts));
          if (w < 0) {
            ok = false;
            break;
          }
          vk.mmap.push_back(w);
        }
      if (!ok) {
        all = false;
        why = "v_k not defined at (" + idx_name(j) + ")";
        continue;
      }
      auto an = equivalence_analysis(vk);
      if (!an.equivalence) {
        all = false;
        why = "v_k not an equivalence at (" + idx_name(j) + "): " + an.detail;
      }
    }
    r.add("lta.ii", all, "k=" + std::to_string(k), why);
  }
  ValidationReport wp;
  auto xp = truncate_p_tam(x, &wp);
  if (!wp) {
    r.add("lta.iii", false, "", wp.detail);
    return r;
  }
  ValidationReport ws;
  auto xpn = nfold_from_tam(xp, &ws);
  if (!ws) {
    r.add("lta.iii", false, "", "p-image not an n-fold category: " + ws.detail);
    return r;
  }
  auto sub = is_catwg(xpn);
  r.add("lta.iii", sub.pass, "", "");
  return r;
}

ModelReport is_ftawg(const TamTrunc& x) {
  ModelReport r = is_tawg(x);
  r.model = "ftawg";
  if (x.n == 1) return r;
  if (!r.pass) return r;
  for (int s = 0; s <= x.n - 2; ++s) {
    auto paths = box_indices_of(s, x.t.trunc());
    struct Corner {
      CatTable t;
      HDData d;
    };
    std::map<MultiIdx, Corner> corners;
    for (const auto& kpath : paths) {
      CatTable cur = x.t;
      for (int i = 0; i < (int)kpath.size(); ++i) cur = table_slice(cur, kpath[i]);
      cur = table_slice(cur, 0);
      Corner c;
      c.t = cur;
      c.d = discretize_table(cur);
      if (!c.d.ok) {
        r.add("ftawg.corner", false, idx_name(kpath), c.d.error);
        return r;
      }
      corners.emplace(kpath, std::move(c));
    }
    for (const auto& kpath : paths) {
      auto it = x.sections.find(idx_name(kpath));
      if (it == x.sections.end()) {
        r.add("ftawg.section", false, idx_name(kpath), "missing section annotation");
        continue;
      }
      const Corner& c = corners.at(kpath);
      bool ok = true;
      std::string why;
      MultiIdx bottom(c.t.arity(), 0);
      for (const auto& s2 : c.d.set) {
        auto f = it->second.find(s2);
        if (f == it->second.end()) {
          ok = false;
          why = "no choice for '" + s2 + "'";
          break;
        }
        if (c.t.cell(bottom)->object_index(f->second) < 0) {
          ok = false;
          why = "chosen object '" + f->second + "' not in the corner";
          break;
        }
        if (c.d.obj_assign.at(bottom).at(f->second) != s2) {
          ok = false;
          why = "gamma . section != id at '" + s2 + "'";
          break;
        }
      }
      if (ok) {
        auto sm = section_map(c.t, c.d, &it->second);
        auto chk =
            check_table_map<CatOps>(sm, discrete_table(c.t.arity(), c.t.trunc(), c.d.set), c.t);
        if (!chk.ok) {
          ok = false;
          why = chk.detail;
        }
      }
      r.add("ftawg.section", ok, idx_name(kpath), why);
    }
    for (const auto& kpath : paths) {
      for (int d = 0; d < s; ++d) {
        auto square = [&](bool face, int i) {
          MultiIdx rpath = kpath;
          rpath[d] += face ? -1 : 1;
          if (rpath[d] < 0 || rpath[d] > x.t.trunc()) return;
          auto si = x.sections.find(idx_name(kpath));
          auto ri = x.sections.find(idx_name(rpath));
          if (si == x.sections.end() || ri == x.sections.end()) return;
          const Corner& ck = corners.at(kpath);
          const Corner& cr = corners.at(rpath);
          MultiIdx full(x.t.arity(), 0);
          for (int q = 0; q < (int)kpath.size(); ++q) full[q] = kpath[q];
          const FinFunctor& F0 = x.t.gen_action({full, d, face, i});
          MultiIdx bottom(ck.t.arity(), 0);
          bool ok = true;
          std::string why;
          for (const auto& e : ck.d.set) {
            const std::string& o = si->second.at(e);
            std::string img = F0.on_object_name(o);
            const std::string& ed = cr.d.obj_assign.at(bottom).at(img);
            if (img != ri->second.at(ed)) {
              ok = false;
              why = "square fails at element '" + e + "'";
              break;
            }
          }
          r.add("ftawg.square", ok,
                idx_name(kpath) + "->" + idx_name(rpath) + (face ? " d" : " s") + std::to_string(i),
                why);
        };
        if (kpath[d] >= 1)
          for (int i = 0; i <= kpath[d]; ++i) square(true, i);
        if (kpath[d] < x.t.trunc())
          for (int i = 0; i <= kpath[d]; ++i) square(false, i);
      }
    }
  }
  return r;
}

ModelReport is_groupoidal_nfold(const NFold& x) {
  ModelReport r;
  r.model = "groupoidal";
  r.n = x.n;
  r.trunc = x.t.trunc();
  if (x.n == 1) {
    r.add("gpd.base", x.t.cell({})->is_groupoid(), "", "");
    return r;
  }
  for (int k = 0; k <= x.t.trunc(); ++k) {
    auto sub = is_groupoidal_nfold(outer_slice(x, k));
    r.add("gpd.level", sub.pass, "level " + std::to_string(k), "");
  }
  ValidationReport why;
  auto p = truncate_p_nfold(x, &why);
  if (!why) {
    r.add("gpd.p", false, "", why.detail);
    return r;
  }
  auto sub = is_groupoidal_nfold(p);
  r.add("gpd.p", sub.pass, "", "");
  return r;
}

ModelReport is_groupoidal_tam(const TamTrunc& x) {
  ModelReport r;
  r.model = "groupoidal";
  r.n = x.n;
  r.trunc = x.t.trunc();
  if (x.n == 1) {
    r.add("gpd.base", x.t.cell({})->is_groupoid(), "", "");
    return r;
  }
  for (int k = 0; k <= x.t.trunc(); ++k) {
    auto sub = is_groupoidal_tam(tam_slice(x, k));
    r.add("gpd.level", sub.pass, "level " + std::to_string(k), "");
  }
  ValidationReport wp;
  auto xp = truncate_p_tam(x, &wp);
  if (!wp) {
    r.add("gpd.p", false, "", wp.detail);
    return r;
  }
  auto sub = is_groupoidal_tam(xp);
  r.add("gpd.p", sub.pass, "", "");
  return r;
}

std::map<std::string, std::map<std::string, std::string>> derive_sections(const CatTable& t,
                                                                          int n) {
  std::map<std::string, std::map<std::string, std::string>> out;
  for (int s = 0; s <= n - 2; ++s) {
    for (const auto& kpath : box_indices_of(s, t.trunc())) {
      CatTable cur = t;
      for (int i = 0; i < (int)kpath.size(); ++i) cur = table_slice(cur, kpath[i]);
      cur = table_slice(cur, 0);
      auto d = discretize_table(cur);
      if (!d.ok) throw input_error("derive_sections: corner not discretizable: " + d.error);
      MultiIdx bottom(cur.arity(), 0);
      const SetFun& a = d.obj_assign.at(bottom);
      std::map<std::string, std::string> rep;
      for (const auto& o : cur.cell(bottom)->objects()) {
        const std::string& cls = a.at(o);
        auto it = rep.find(cls);
        if (it == rep.end() || o < it->second) rep[cls] = o;
      }
      out[idx_name(kpath)] = std::move(rep);
    }
  }
  return out;
}

}  // namespace wgcat

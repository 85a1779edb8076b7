#include "wgcat/nfold.hpp"

#include <algorithm>

namespace wgcat {

namespace {

SetFun chain_map(const FinSet& dom, const FinSet& cod, int k,
                 const std::function<std::string(const std::string&)>& f) {
  SetFun r{dom, cod, {}};
  for (const auto& el : dom) {
    auto parts = split_chain(el, k);
    for (auto& p : parts) p = f(p);
    r.map[el] = chain_name(parts);
  }
  return r;
}

FinFunctor functor_chain_map(const CatPtr& dom, const CatPtr& cod, int k,
                             const std::function<std::string(const std::string&)>& on_obj,
                             const std::function<std::string(const std::string&)>& on_mor) {
  FinFunctor f{dom, cod, {}, {}};
  for (const auto& o : dom->objects()) {
    auto parts = split_chain(o, k);
    for (auto& p : parts) p = on_obj(p);
    f.omap.push_back(cod->object_index(chain_name(parts)));
  }
  for (const auto& m : dom->morphisms()) {
    auto parts = split_chain(m.id, k);
    for (auto& p : parts) p = on_mor(p);
    f.mmap.push_back(cod->mor_index(chain_name(parts)));
  }
  return f;
}

std::vector<MultiIdx> box_indices(const std::function<int(int)>& dim_max, int arity) {
  std::vector<MultiIdx> out{{}};
  for (int dim = 0; dim < arity; ++dim) {
    std::vector<MultiIdx> next;
    for (const auto& p : out)
      for (int k = 0; k <= dim_max(dim); ++k) {
        auto q = p;
        q.push_back(k);
        next.push_back(q);
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace

ValidationReport check_segal_isos(const CatTable& t) {
  for (const auto& k : t.all_indices())
    for (int d = 0; d < t.arity(); ++d) {
      if (k[d] < 2) continue;
      auto sg = segal_map_cat(t, k, d);
      if (!sg.iso)
        return {false, "segal-failure",
                "direction " + std::to_string(d + 1) + " at (" + idx_name(k) + ")"};
    }
  return {};
}

namespace {

// explicit associativity of the composition in table direction d, needed when
// the truncation stores no level 3
ValidationReport check_dim_associativity(const CatTable& t, int d) {
  for (const auto& k : t.all_indices()) {
    if (k[d] != 1) continue;  // enumerate transversal indices via the level-1 slot
    MultiIdx l2 = k;
    l2[d] = 2;
    auto sg = segal_map_cat(t, l2, d);
    if (!sg.iso) return {false, "segal-failure", "at (" + idx_name(l2) + ")"};
    FinFunctor mul = compose(t.face(l2, d, 1), invert_iso(sg.mu));  // W2 -> X1
    const FinCat& x1 = *t.cell(k);
    const FinCat& w2 = *sg.wide;
    MultiMono vs = mm_id(k), vt = mm_id(k);
    vs[d] = mono_vertex(1, 0);
    vt[d] = mono_vertex(1, 1);
    FinFunctor fs = t.act(vs), ft = t.act(vt);
    auto mul_obj = [&](int x, int y) {
      return mul.omap[w2.object_index(pair_name(x1.object(x), x1.object(y)))];
    };
    auto mul_mor = [&](int x, int y) {
      return mul.mmap[w2.mor_index(pair_name(x1.mor(x).id, x1.mor(y).id))];
    };
    for (int x = 0; x < x1.num_objects(); ++x)
      for (int y = 0; y < x1.num_objects(); ++y) {
        if (ft.omap[x] != fs.omap[y]) continue;
        for (int z = 0; z < x1.num_objects(); ++z) {
          if (ft.omap[y] != fs.omap[z]) continue;
          if (mul_obj(mul_obj(x, y), z) != mul_obj(x, mul_obj(y, z)))
            return {false, "associativity",
                    "direction " + std::to_string(d + 1) + " at (" + idx_name(k) + ") objects " +
                        x1.object(x) + "," + x1.object(y) + "," + x1.object(z)};
        }
      }
    for (int x = 0; x < x1.num_morphisms(); ++x)
      for (int y = 0; y < x1.num_morphisms(); ++y) {
        if (ft.mmap[x] != fs.mmap[y]) continue;
        for (int z = 0; z < x1.num_morphisms(); ++z) {
          if (ft.mmap[y] != fs.mmap[z]) continue;
          if (mul_mor(mul_mor(x, y), z) != mul_mor(x, mul_mor(y, z)))
            return {false, "associativity",
                    "direction " + std::to_string(d + 1) + " at (" + idx_name(k) +
                        ") morphisms " + x1.mor(x).id + "," + x1.mor(y).id + "," + x1.mor(z).id};
        }
      }
  }
  return {};
}

}  // namespace

ValidationReport validate_nfold(const NFold& x) {
  if (x.t.arity() != x.n - 1) return {false, "malformed-table", "table arity does not match n"};
  if (auto r = x.t.validate(); !r) return r;
  for (const auto& k : x.t.all_indices()) {
    auto r = check_category(*x.t.cell(k));
    if (!r)
      return {false, r.code,
              "cell (" + idx_name(k) + ") direction " + std::to_string(x.n) + ": " + r.detail};
  }
  if (auto r = check_segal_isos(x.t); !r) return r;
  if (x.t.trunc() < 3)
    for (int d = 0; d < x.t.arity(); ++d)
      if (auto r = check_dim_associativity(x.t, d); !r) return r;
  return {};
}

NFold nfold_from_cat(const CatPtr& c) {
  NFold x;
  x.n = 1;
  x.t = CatTable(0, 2);
  x.t.set_cell({}, c);
  return x;
}

NFold from_levels(const CatTable& t, ValidationReport* why) {
  NFold x;
  x.n = t.arity() + 1;
  x.t = t;
  auto r = validate_nfold(x);
  if (why) *why = r;
  if (!r && !why) throw input_error("from_levels: " + r.code + ": " + r.detail);
  if (!r) x.n = 0;  // caller asked for the report; mark invalid
  return x;
}

// ---------------------------------------------------------------------------
// truncation extension

SetTable extend_set_table(const SetTable& t, int L) {
  if (L <= t.trunc()) return t;
  SetTable cur = t;
  int tau = t.trunc();
  for (int d = 0; d < t.arity(); ++d) {
    auto dim_max = [&](int dim) { return dim <= d ? L : tau; };
    SetTable next(t.arity(), 0);
    auto idxs = box_indices(dim_max, t.arity());
    for (const auto& k : idxs) {
      if (k[d] <= tau) {
        next.set_cell(k, cur.cell(k));
        continue;
      }
      MultiIdx l1 = k;
      l1[d] = 1;
      MultiMono vs = mm_id(l1), vt = mm_id(l1);
      vs[d] = mono_vertex(1, 0);
      vt[d] = mono_vertex(1, 1);
      auto wide = wide_pullback_set(cur.cell(l1), cur.act(vs), cur.act(vt), k[d]);
      next.set_cell(k, wide.apex);
    }
    // per transversal index: composite lookup (middle faces) and the Segal
    // inverse at the boundary level tau
    std::map<MultiIdx, std::map<std::string, std::string>> mul, mu_inv;
    std::map<MultiIdx, std::vector<SetFun>> nu_at;  // nu decomposition per level <= tau
    for (const auto& k : idxs) {
      if (k[d] == 2) {
        auto sg = segal_map_set(cur, k, d);
        if (!sg.iso) throw input_error("extend_set_table: Segal map not invertible");
        const SetFun& d1 = cur.face(k, d, 1);
        for (const auto& [el, ch] : sg.mu.map) mul[k][ch] = d1.at(el);
      }
      if (k[d] == tau && tau >= 2) {
        auto sg = segal_map_set(cur, k, d);
        if (!sg.iso) throw input_error("extend_set_table: Segal map not invertible");
        for (const auto& [el, ch] : sg.mu.map) mu_inv[k][ch] = el;
      }
      if (k[d] >= 1 && k[d] <= tau) {
        std::vector<SetFun> nus;
        for (int j = 1; j <= k[d]; ++j) {
          MultiMono e = mm_id(k);
          e[d] = mono_edge(k[d], j);
          nus.push_back(cur.act(e));
        }
        nu_at[k] = std::move(nus);
      }
    }
    // decompose an element at dim-d level lvl into its length-lvl chain parts
    auto parts_of = [&](const std::string& el, const MultiIdx& at) {
      int lvl = at[d];
      if (lvl > tau) return split_chain(el, lvl);
      if (lvl == 1) return std::vector<std::string>{el};
      std::vector<std::string> parts;
      for (const auto& nu : nu_at.at(at)) parts.push_back(nu.at(el));
      return parts;
    };
    // rebuild an element at dim-d level lvl from chain parts
    auto element_of = [&](const std::vector<std::string>& parts, const MultiIdx& at) {
      int lvl = at[d];
      if (lvl > tau || lvl == 1) return chain_name(parts);
      return mu_inv.at(at).at(chain_name(parts));
    };
    for (const auto& k : idxs)
      for (int dim = 0; dim < t.arity(); ++dim) {
        if (k[dim] >= 1)
          for (int i = 0; i <= k[dim]; ++i) {
            GenKey g{k, dim, true, i};
            MultiIdx tgt = gen_target(g);
            if (k[d] <= tau && tgt[d] <= tau) {
              next.set_action(g, cur.gen_action(g));
              continue;
            }
            SetFun f{next.cell(k), next.cell(tgt), {}};
            int kk = k[d];
            if (dim == d) {
              MultiIdx l2 = k;
              l2[d] = 2;
              const auto& table = mul.at(l2);
              for (const auto& el : next.cell(k)) {
                auto parts = parts_of(el, k);
                std::vector<std::string> out;
                if (i == 0)
                  out.assign(parts.begin() + 1, parts.end());
                else if (i == kk)
                  out.assign(parts.begin(), parts.end() - 1);
                else {
                  out = parts;
                  out[i - 1] = table.at(pair_name(parts[i - 1], parts[i]));
                  out.erase(out.begin() + i);
                }
                f.map[el] = element_of(out, tgt);
              }
            } else {
              MultiIdx l1k = k, l1t = tgt;
              l1k[d] = 1;
              l1t[d] = 1;
              const SetFun& part = cur.gen_action({l1k, dim, true, i});
              for (const auto& el : next.cell(k)) {
                auto parts = parts_of(el, k);
                for (auto& p : parts) p = part.at(p);
                f.map[el] = element_of(parts, tgt);
              }
            }
            next.set_action(g, std::move(f));
          }
        if (k[dim] < dim_max(dim))
          for (int i = 0; i <= k[dim]; ++i) {
            GenKey g{k, dim, false, i};
            MultiIdx tgt = gen_target(g);
            if (k[d] <= tau && tgt[d] <= tau) {
              next.set_action(g, cur.gen_action(g));
              continue;
            }
            SetFun f{next.cell(k), next.cell(tgt), {}};
            int kk = k[d];
            if (dim == d) {
              MultiIdx l0 = k, l1 = k;
              l0[d] = 0;
              l1[d] = 1;
              const SetFun& s0 = cur.gen_action({l0, d, false, 0});
              MultiMono vsrc = mm_id(l1), vtgt = mm_id(l1);
              vsrc[d] = mono_vertex(1, 0);
              vtgt[d] = mono_vertex(1, 1);
              SetFun fsrc = cur.act(vsrc), ftgt = cur.act(vtgt);
              for (const auto& el : next.cell(k)) {
                std::vector<std::string> parts =
                    kk == 0 ? std::vector<std::string>{} : parts_of(el, k);
                std::string vtx = kk == 0 ? el : (i == 0 ? fsrc.at(parts[0]) : ftgt.at(parts[i - 1]));
                auto out = parts;
                out.insert(out.begin() + i, s0.at(vtx));
                f.map[el] = element_of(out, tgt);
              }
            } else {
              const MultiIdx l1k = [&] {
                MultiIdx v = k;
                v[d] = 1;
                return v;
              }();
              const SetFun& part = cur.gen_action({l1k, dim, false, i});
              for (const auto& el : next.cell(k)) {
                auto parts = parts_of(el, k);
                for (auto& p : parts) p = part.at(p);
                f.map[el] = element_of(parts, tgt);
              }
            }
            next.set_action(g, std::move(f));
          }
      }
    cur = std::move(next);
  }
  SetTable out(t.arity(), L);
  for (const auto& [k, c] : cur.cells()) out.set_cell(k, c);
  for (const auto& [g, m] : cur.actions()) out.set_action(g, m);
  return out;
}

CatTable extend_cat_table(const CatTable& t, int L) {
  if (L <= t.trunc()) return t;
  CatTable cur = t;
  int tau = t.trunc();
  for (int d = 0; d < t.arity(); ++d) {
    auto dim_max = [&](int dim) { return dim <= d ? L : tau; };
    CatTable next(t.arity(), 0);
    auto idxs = box_indices(dim_max, t.arity());
    for (const auto& k : idxs) {
      if (k[d] <= tau) {
        next.set_cell(k, cur.cell(k));
        continue;
      }
      MultiIdx l1 = k;
      l1[d] = 1;
      MultiMono vs = mm_id(l1), vt = mm_id(l1);
      vs[d] = mono_vertex(1, 0);
      vt[d] = mono_vertex(1, 1);
      auto wide = wide_pullback_cat(cur.cell(l1), cur.act(vs), cur.act(vt), k[d]);
      next.set_cell(k, wide.apex);
    }
    struct Names {
      std::map<std::string, std::string> obj, mor;
    };
    std::map<MultiIdx, Names> mul, mu_inv;
    std::map<MultiIdx, std::vector<FinFunctor>> nu_at;
    for (const auto& k : idxs) {
      if (k[d] == 2 || (k[d] == tau && tau >= 2)) {
        auto sg = segal_map_cat(cur, k, d);
        if (!sg.iso) throw input_error("extend_cat_table: Segal map not invertible");
        const FinCat& w2 = *sg.wide;
        if (k[d] == 2) {
          FinFunctor m2 = compose(cur.face(k, d, 1), invert_iso(sg.mu));
          Names& tab = mul[k];
          for (int o = 0; o < w2.num_objects(); ++o)
            tab.obj[w2.object(o)] = m2.tgt->object(m2.omap[o]);
          for (int mm2 = 0; mm2 < w2.num_morphisms(); ++mm2)
            tab.mor[w2.mor(mm2).id] = m2.tgt->mor(m2.mmap[mm2]).id;
        }
        if (k[d] == tau) {
          FinFunctor inv = invert_iso(sg.mu);
          Names& tab = mu_inv[k];
          for (int o = 0; o < w2.num_objects(); ++o)
            tab.obj[w2.object(o)] = inv.tgt->object(inv.omap[o]);
          for (int mm2 = 0; mm2 < w2.num_morphisms(); ++mm2)
            tab.mor[w2.mor(mm2).id] = inv.tgt->mor(inv.mmap[mm2]).id;
        }
      }
      if (k[d] >= 1 && k[d] <= tau) {
        std::vector<FinFunctor> nus;
        for (int j = 1; j <= k[d]; ++j) {
          MultiMono e = mm_id(k);
          e[d] = mono_edge(k[d], j);
          nus.push_back(cur.act(e));
        }
        nu_at[k] = std::move(nus);
      }
    }
    auto parts_of = [&](const std::string& el, const MultiIdx& at, bool objects) {
      int lvl = at[d];
      if (lvl > tau) return split_chain(el, lvl);
      if (lvl == 1) return std::vector<std::string>{el};
      std::vector<std::string> parts;
      for (const auto& nu : nu_at.at(at))
        parts.push_back(objects ? nu.on_object_name(el) : nu.on_mor_name(el));
      return parts;
    };
    auto element_of = [&](const std::vector<std::string>& parts, const MultiIdx& at,
                          bool objects) {
      int lvl = at[d];
      if (lvl > tau || lvl == 1) return chain_name(parts);
      const Names& tab = mu_inv.at(at);
      return objects ? tab.obj.at(chain_name(parts)) : tab.mor.at(chain_name(parts));
    };
    auto build = [&](const GenKey& g, const MultiIdx& tgt,
                     const std::function<std::string(const std::string&, bool)>& fn) {
      FinFunctor f{next.cell(g.at), next.cell(tgt), {}, {}};
      for (const auto& o : next.cell(g.at)->objects())
        f.omap.push_back(next.cell(tgt)->object_index(fn(o, true)));
      for (const auto& m : next.cell(g.at)->morphisms())
        f.mmap.push_back(next.cell(tgt)->mor_index(fn(m.id, false)));
      next.set_action(g, std::move(f));
    };
    for (const auto& k : idxs)
      for (int dim = 0; dim < t.arity(); ++dim) {
        if (k[dim] >= 1)
          for (int i = 0; i <= k[dim]; ++i) {
            GenKey g{k, dim, true, i};
            MultiIdx tgt = gen_target(g);
            if (k[d] <= tau && tgt[d] <= tau) {
              next.set_action(g, cur.gen_action(g));
              continue;
            }
            int kk = k[d];
            if (dim == d) {
              MultiIdx l2 = k;
              l2[d] = 2;
              const auto& tab = mul.at(l2);
              build(g, tgt, [&](const std::string& el, bool objects) {
                auto parts = parts_of(el, k, objects);
                std::vector<std::string> out;
                if (i == 0)
                  out.assign(parts.begin() + 1, parts.end());
                else if (i == kk)
                  out.assign(parts.begin(), parts.end() - 1);
                else {
                  out = parts;
                  out[i - 1] = objects ? tab.obj.at(pair_name(parts[i - 1], parts[i]))
                                       : tab.mor.at(pair_name(parts[i - 1], parts[i]));
                  out.erase(out.begin() + i);
                }
                return element_of(out, tgt, objects);
              });
            } else {
              MultiIdx l1k = k;
              l1k[d] = 1;
              const FinFunctor& part = cur.gen_action({l1k, dim, true, i});
              build(g, tgt, [&](const std::string& el, bool objects) {
                auto parts = parts_of(el, k, objects);
                for (auto& p : parts)
                  p = objects ? part.on_object_name(p) : part.on_mor_name(p);
                return element_of(parts, tgt, objects);
              });
            }
          }
        if (k[dim] < dim_max(dim))
          for (int i = 0; i <= k[dim]; ++i) {
            GenKey g{k, dim, false, i};
            MultiIdx tgt = gen_target(g);
            if (k[d] <= tau && tgt[d] <= tau) {
              next.set_action(g, cur.gen_action(g));
              continue;
            }
            int kk = k[d];
            if (dim == d) {
              MultiIdx l0 = k, l1 = k;
              l0[d] = 0;
              l1[d] = 1;
              const FinFunctor& s0 = cur.gen_action({l0, d, false, 0});
              MultiMono vsrc = mm_id(l1), vtgt = mm_id(l1);
              vsrc[d] = mono_vertex(1, 0);
              vtgt[d] = mono_vertex(1, 1);
              FinFunctor fsrc = cur.act(vsrc), ftgt = cur.act(vtgt);
              build(g, tgt, [&](const std::string& el, bool objects) {
                std::vector<std::string> parts =
                    kk == 0 ? std::vector<std::string>{} : parts_of(el, k, objects);
                std::string vtx;
                if (kk == 0)
                  vtx = el;
                else if (objects)
                  vtx = i == 0 ? fsrc.on_object_name(parts[0]) : ftgt.on_object_name(parts[i - 1]);
                else
                  vtx = i == 0 ? fsrc.on_mor_name(parts[0]) : ftgt.on_mor_name(parts[i - 1]);
                auto out = parts;
                out.insert(out.begin() + i, objects ? s0.on_object_name(vtx) : s0.on_mor_name(vtx));
                return element_of(out, tgt, objects);
              });
            } else {
              MultiIdx l1k = k;
              l1k[d] = 1;
              const FinFunctor& part = cur.gen_action({l1k, dim, false, i});
              build(g, tgt, [&](const std::string& el, bool objects) {
                auto parts = parts_of(el, k, objects);
                for (auto& p : parts)
                  p = objects ? part.on_object_name(p) : part.on_mor_name(p);
                return element_of(parts, tgt, objects);
              });
            }
          }
      }
    cur = std::move(next);
  }
  CatTable out(t.arity(), L);
  for (const auto& [k, c] : cur.cells()) out.set_cell(k, c);
  for (const auto& [g, m] : cur.actions()) out.set_action(g, m);
  return out;
}

CatTable corner_J(const NFold& x, int L) { return extend_cat_table(x.t, L); }

// ---------------------------------------------------------------------------
// multinerve

SetTable multinerve(const NFold& x, int L) {
  if (L < 2) throw input_error("multinerve: L must be >= 2");
  int tau = std::min(L, x.t.trunc());
  SetTable m(x.n, tau);
  std::map<MultiIdx, SetTable> nerves;
  auto within = [&](const MultiIdx& j) {
    for (int v : j)
      if (v > tau) return false;
    return true;
  };
  for (const auto& j : x.t.all_indices()) {
    if (!within(j)) continue;
    nerves.emplace(j, nerve(*x.t.cell(j), std::max(tau, 2)));
  }
  for (const auto& [j, nv] : nerves) {
    for (int c = 0; c <= tau; ++c) {
      MultiIdx full = j;
      full.push_back(c);
      m.set_cell(full, nv.cell({c}));
      if (c >= 1)
        for (int i = 0; i <= c; ++i) m.set_action({full, x.n - 1, true, i}, nv.face({c}, 0, i));
      if (c < tau)
        for (int i = 0; i <= c; ++i) m.set_action({full, x.n - 1, false, i}, nv.deg({c}, 0, i));
    }
  }
  for (const auto& g : x.t.all_generators()) {
    if (!within(g.at) || !within(gen_target(g))) continue;
    const FinFunctor& f = x.t.gen_action(g);
    for (int c = 0; c <= tau; ++c) {
      MultiIdx full = g.at, tgt = gen_target(g);
      full.push_back(c);
      tgt.push_back(c);
      SetFun sf{m.cell(full), m.cell(tgt), {}};
      if (c == 0) {
        for (const auto& o : sf.dom) sf.map[o] = f.on_object_name(o);
      } else if (c == 1) {
        for (const auto& mm2 : sf.dom) sf.map[mm2] = f.on_mor_name(mm2);
      } else {
        sf = chain_map(sf.dom, sf.cod, c, [&](const std::string& p) { return f.on_mor_name(p); });
      }
      m.set_action({full, g.dir, g.face, g.i}, std::move(sf));
    }
  }
  return L > tau ? extend_set_table(m, L) : m;
}

NFold nfold_from_multinerve(const SetTable& m, ValidationReport* why) {
  int n = m.arity();
  int cdim = n - 1;
  CatTable t(n - 1, m.trunc());
  auto dim_max = [&](int) { return m.trunc(); };
  for (const auto& j : box_indices(dim_max, n - 1)) {
    MultiIdx j0 = j, j1 = j, j2 = j;
    j0.push_back(0);
    j1.push_back(1);
    j2.push_back(2);
    SetFun dsrc = m.face(j1, cdim, 1), dtgt = m.face(j1, cdim, 0);
    SetFun s0 = m.deg(j0, cdim, 0);
    FinCatBuilder b;
    for (const auto& o : m.cell(j0)) b.add_object(o);
    for (const auto& mo : m.cell(j1)) b.add_mor(mo, dsrc.at(mo), dtgt.at(mo));
    for (const auto& o : m.cell(j0)) b.set_identity(o, s0.at(o));
    auto sg = segal_map_set(m, j2, cdim);
    if (!sg.iso) {
      if (why) {
        *why = {false, "segal-failure", "cell direction at (" + idx_name(j2) + ")"};
        return {};
      }
      throw input_error("nfold_from_multinerve: segal failure at (" + idx_name(j2) + ")");
    }
    std::map<std::string, std::string> mu_inv;
    for (const auto& [el, ch] : sg.mu.map) mu_inv[ch] = el;
    SetFun d1 = m.face(j2, cdim, 1);
    for (const auto& f : m.cell(j1))
      for (const auto& g : m.cell(j1))
        if (dtgt.at(f) == dsrc.at(g)) b.set_compose(g, f, d1.at(mu_inv.at(pair_name(f, g))));
    t.set_cell(j, b.build());
  }
  for (const auto& j : box_indices(dim_max, n - 1))
    for (int dim = 0; dim < n - 1; ++dim) {
      auto build_f = [&](bool face, int i) {
        MultiIdx tgt = j;
        tgt[dim] += face ? -1 : 1;
        MultiIdx f0 = j, f1 = j;
        f0.push_back(0);
        f1.push_back(1);
        const SetFun& on_obj = m.gen_action({f0, dim, face, i});
        const SetFun& on_mor = m.gen_action({f1, dim, face, i});
        const CatPtr& dom = t.cell(j);
        const CatPtr& cod = t.cell(tgt);
        FinFunctor f{dom, cod, {}, {}};
        for (const auto& o : dom->objects()) f.omap.push_back(cod->object_index(on_obj.at(o)));
        for (const auto& mo : dom->morphisms()) f.mmap.push_back(cod->mor_index(on_mor.at(mo.id)));
        return f;
      };
      if (j[dim] >= 1)
        for (int i = 0; i <= j[dim]; ++i) t.set_action({j, dim, true, i}, build_f(true, i));
      if (j[dim] < m.trunc())
        for (int i = 0; i <= j[dim]; ++i) t.set_action({j, dim, false, i}, build_f(false, i));
    }
  NFold x;
  x.n = n;
  x.t = std::move(t);
  auto r = validate_nfold(x);
  if (why) {
    *why = r;
    if (!r) return {};
  } else if (!r) {
    throw input_error("nfold_from_multinerve: " + r.code + ": " + r.detail);
  }
  return x;
}

namespace {

SetTable permute_set_table(const SetTable& m, const std::vector<int>& perm) {
  // new position i carries old position perm[i]
  SetTable out(m.arity(), m.trunc());
  for (const auto& [k, c] : m.cells()) {
    MultiIdx nk(k.size());
    for (size_t i = 0; i < k.size(); ++i) nk[i] = k[perm[i]];
    out.set_cell(nk, c);
  }
  for (const auto& [g, f] : m.actions()) {
    MultiIdx nk(g.at.size());
    for (size_t i = 0; i < g.at.size(); ++i) nk[i] = g.at[perm[i]];
    int ndir = 0;
    for (size_t i = 0; i < nk.size(); ++i)
      if (perm[i] == g.dir) ndir = (int)i;
    out.set_action({nk, ndir, g.face, g.i}, f);
  }
  return out;
}

}  // namespace

NFold xi_swap(const NFold& x, int k) {
  if (k < 1 || k > x.n) throw input_error("xi_swap: direction out of range");
  if (k == x.n) return x;
  auto m = multinerve(x, std::max(2, x.t.trunc()));
  std::vector<int> perm;
  for (int d = 1; d <= x.n; ++d)
    if (d != k) perm.push_back(d - 1);
  perm.push_back(k - 1);
  return nfold_from_multinerve(permute_set_table(m, perm));
}

NFold xi_swap_inverse(const NFold& x, int k) {
  if (k < 1 || k > x.n) throw input_error("xi_swap: direction out of range");
  if (k == x.n) return x;
  auto m = multinerve(x, std::max(2, x.t.trunc()));
  std::vector<int> fwd;
  for (int d = 1; d <= x.n; ++d)
    if (d != k) fwd.push_back(d - 1);
  fwd.push_back(k - 1);
  std::vector<int> perm(x.n);
  for (int i = 0; i < x.n; ++i) perm[fwd[i]] = i;
  return nfold_from_multinerve(permute_set_table(m, perm));
}

DirNerve nerve_dir(const NFold& x, int k, int L) {
  if (k < 1 || k > x.n) throw input_error("nerve_dir: direction out of range");
  if (x.n == 1) throw input_error("nerve_dir: use nerve() for 1-fold categories");
  DirNerve out;
  auto m = multinerve(x, std::max(2, L));
  int pos = k - 1;
  auto slice_at = [&](int lvl) {
    SetTable s(x.n - 1, m.trunc());
    for (const auto& [idx, c] : m.cells()) {
      if (idx[pos] != lvl) continue;
      MultiIdx rest;
      for (size_t i = 0; i < idx.size(); ++i)
        if ((int)i != pos) rest.push_back(idx[i]);
      s.set_cell(rest, c);
    }
    for (const auto& [g, f] : m.actions()) {
      if (g.dir == pos || g.at[pos] != lvl) continue;
      MultiIdx rest;
      for (size_t i = 0; i < g.at.size(); ++i)
        if ((int)i != pos) rest.push_back(g.at[i]);
      s.set_action({rest, g.dir < pos ? g.dir : g.dir - 1, g.face, g.i}, f);
    }
    return s;
  };
  for (int lvl = 0; lvl <= L; ++lvl) out.levels.push_back(nfold_from_multinerve(slice_at(lvl)));
  auto insert_at = [&](const MultiIdx& rest, int lvl) {
    MultiIdx full;
    size_t q = 0;
    for (int p = 0; p < x.n; ++p) {
      if (p == pos)
        full.push_back(lvl);
      else
        full.push_back(rest[q++]);
    }
    return full;
  };
  for (int lvl = 0; lvl <= L; ++lvl) {
    auto add_map = [&](bool face, int i) {
      int dst = lvl + (face ? -1 : 1);
      if (dst < 0 || dst > L) return;
      NFoldMap fm;
      const NFold& A = out.levels[lvl];
      const NFold& B = out.levels[dst];
      for (const auto& j : A.t.all_indices()) {
        MultiIdx j0 = j, j1 = j;
        j0.push_back(0);
        j1.push_back(1);
        const SetFun& on_obj = m.gen_action({insert_at(j0, lvl), pos, face, i});
        const SetFun& on_mor = m.gen_action({insert_at(j1, lvl), pos, face, i});
        const CatPtr& dom = A.t.cell(j);
        const CatPtr& cod = B.t.cell(j);
        FinFunctor f{dom, cod, {}, {}};
        for (const auto& o : dom->objects()) f.omap.push_back(cod->object_index(on_obj.at(o)));
        for (const auto& mo : dom->morphisms()) f.mmap.push_back(cod->mor_index(on_mor.at(mo.id)));
        fm.comp[j] = std::move(f);
      }
      out.maps[{{lvl}, 0, face, i}] = std::move(fm);
    };
    if (lvl >= 1)
      for (int i = 0; i <= lvl; ++i) add_map(true, i);
    if (lvl < L)
      for (int i = 0; i <= lvl; ++i) add_map(false, i);
  }
  return out;
}

NFold discrete_inclusion(const NFold& x) {
  auto m = multinerve(x, std::max(2, x.t.trunc()));
  CatTable t(x.n, m.trunc());
  for (const auto& [k, c] : m.cells()) t.set_cell(k, d_discrete(c));
  for (const auto& [g, f] : m.actions()) {
    const CatPtr& dom = t.cell(g.at);
    const CatPtr& cod = t.cell(gen_target(g));
    FinFunctor ff{dom, cod, {}, {}};
    for (const auto& o : dom->objects()) ff.omap.push_back(cod->object_index(f.at(o)));
    for (int mi = 0; mi < dom->num_morphisms(); ++mi)
      ff.mmap.push_back(cod->identity_of(ff.omap[dom->mor(mi).src]));
    t.set_action(g, std::move(ff));
  }
  NFold out;
  out.n = x.n + 1;
  out.t = std::move(t);
  return out;
}

// a multi-simplicial set is constant up to the canonical identifications iff
// every generator action is a bijection
bool is_discrete_in_dir(const NFold& x, int k) {
  auto m = multinerve(x, std::max(2, x.t.trunc()));
  for (const auto& [g, f] : m.actions())
    if (g.dir == k - 1 && !set_iso(f)) return false;
  return true;
}

bool is_discrete_nfold(const NFold& x) {
  auto m = multinerve(x, std::max(2, x.t.trunc()));
  for (const auto& [g, f] : m.actions()) {
    (void)g;
    if (!set_iso(f)) return false;
  }
  return true;
}

NFold discrete_nfold(int n, const FinSet& s) {
  NFold x;
  x.n = n;
  x.t = CatTable(n - 1, 2);
  auto d = d_discrete(s);
  for (const auto& k : x.t.all_indices()) x.t.set_cell(k, d);
  for (const auto& g : x.t.all_generators()) x.t.set_action(g, identity_functor(d));
  return x;
}

CatTable table_slice(const CatTable& t, int k) {
  CatTable s(t.arity() - 1, t.trunc());
  for (const auto& [idx, c] : t.cells()) {
    if (idx[0] != k) continue;
    s.set_cell(MultiIdx(idx.begin() + 1, idx.end()), c);
  }
  for (const auto& [g, f] : t.actions()) {
    if (g.dir == 0 || g.at[0] != k) continue;
    s.set_action({MultiIdx(g.at.begin() + 1, g.at.end()), g.dir - 1, g.face, g.i}, f);
  }
  return s;
}

NFold outer_slice(const NFold& x, int k) {
  if (x.n < 2) throw input_error("outer_slice: n must be >= 2");
  NFold s;
  s.n = x.n - 1;
  s.t = table_slice(x.t, k);
  return s;
}

NFoldMap outer_action(const CatTable& t, bool face, int level, int i) {
  NFoldMap m;
  for (const auto& [idx, c] : t.cells()) {
    (void)c;
    if (idx[0] != level) continue;
    m.comp[MultiIdx(idx.begin() + 1, idx.end())] = t.gen_action({idx, 0, face, i});
  }
  return m;
}

NFoldPullback pullback_nfold(const NFold& a, const NFold& b, const NFold& c, const NFoldMap& f,
                             const NFoldMap& g) {
  (void)c;
  CatTable t(a.t.arity(), std::min(a.t.trunc(), b.t.trunc()));
  NFoldMap pr1, pr2;
  std::map<MultiIdx, CatPullback> pbs;
  for (const auto& k : t.all_indices()) {
    auto pb = pullback_cat(f.at(k), g.at(k));
    t.set_cell(k, pb.apex);
    pr1.comp[k] = pb.pr1;
    pr2.comp[k] = pb.pr2;
    pbs.emplace(k, std::move(pb));
  }
  for (const auto& gk : t.all_generators()) {
    const FinFunctor& fa = a.t.gen_action(gk);
    const FinFunctor& fb = b.t.gen_action(gk);
    const CatPtr& dom = t.cell(gk.at);
    const CatPtr& cod = t.cell(gen_target(gk));
    FinFunctor ff{dom, cod, {}, {}};
    for (const auto& o : dom->objects()) {
      auto [x, y] = split_pair(o);
      ff.omap.push_back(cod->object_index(pair_name(fa.on_object_name(x), fb.on_object_name(y))));
    }
    for (const auto& mo : dom->morphisms()) {
      auto [x, y] = split_pair(mo.id);
      ff.mmap.push_back(cod->mor_index(pair_name(fa.on_mor_name(x), fb.on_mor_name(y))));
    }
    t.set_action(gk, std::move(ff));
  }
  NFoldPullback out;
  out.apex.n = a.n;
  out.apex.t = std::move(t);
  out.pr1 = std::move(pr1);
  out.pr2 = std::move(pr2);
  return out;
}

ValidationReport check_nfold_map(const NFoldMap& f, const NFold& src, const NFold& tgt) {
  return check_table_map<CatOps>(f, src.t, tgt.t);
}

}  // namespace wgcat

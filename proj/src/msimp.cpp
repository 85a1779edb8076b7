#include "wgcat/msimp.hpp"

#include <algorithm>
#include <sstream>

namespace wgcat {

bool Mono::is_identity() const {
  if (dom != cod) return false;
  for (int i = 0; i <= dom; ++i)
    if (v[i] != i) return false;
  return true;
}

Mono mono_id(int k) {
  Mono m{k, k, {}};
  m.v.resize(k + 1);
  for (int i = 0; i <= k; ++i) m.v[i] = i;
  return m;
}

Mono mono_face(int k, int i) {
  Mono m{k - 1, k, {}};
  for (int x = 0; x <= k - 1; ++x) m.v.push_back(x < i ? x : x + 1);
  return m;
}

Mono mono_deg(int k, int i) {
  Mono m{k + 1, k, {}};
  for (int x = 0; x <= k + 1; ++x) m.v.push_back(x <= i ? x : x - 1);
  return m;
}

Mono mono_vertex(int k, int j) { return Mono{0, k, {j}}; }
Mono mono_edge(int k, int j) { return Mono{1, k, {j - 1, j}}; }

Mono mono_compose(const Mono& g, const Mono& f) {
  if (f.cod != g.dom) throw input_error("mono_compose: not composable");
  Mono m{f.dom, g.cod, {}};
  for (int x = 0; x <= f.dom; ++x) m.v.push_back(g.v[f.v[x]]);
  return m;
}

std::vector<Mono> all_monos(int dom, int cod) {
  std::vector<Mono> out;
  Mono cur{dom, cod, std::vector<int>(dom + 1, 0)};
  std::function<void(int, int)> rec = [&](int pos, int minv) {
    if (pos > dom) {
      out.push_back(cur);
      return;
    }
    for (int v = minv; v <= cod; ++v) {
      cur.v[pos] = v;
      rec(pos + 1, v);
    }
  };
  rec(0, 0);
  return out;
}

std::string mono_name(const Mono& m) {
  std::string s = "[";
  for (int i = 0; i <= m.dom; ++i) s += (i ? "," : "") + std::to_string(m.v[i]);
  return s + "]>" + std::to_string(m.cod);
}

std::string idx_name(const MultiIdx& k) {
  std::string s;
  for (size_t i = 0; i < k.size(); ++i) s += (i ? "," : "") + std::to_string(k[i]);
  return s;
}

MultiIdx parse_idx(const std::string& s) {
  MultiIdx k;
  if (s.empty()) return k;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) k.push_back(std::stoi(part));
  return k;
}

MultiIdx mm_src_level(const MultiMono& u) {
  MultiIdx k;
  for (const auto& m : u) k.push_back(m.cod);
  return k;
}

MultiIdx mm_tgt_level(const MultiMono& u) {
  MultiIdx k;
  for (const auto& m : u) k.push_back(m.dom);
  return k;
}

std::string mm_name(const MultiMono& u) {
  std::string s;
  for (size_t i = 0; i < u.size(); ++i) s += (i ? ";" : "") + mono_name(u[i]);
  return s;
}

MultiMono mm_id(const MultiIdx& k) {
  MultiMono u;
  for (int x : k) u.push_back(mono_id(x));
  return u;
}

MultiMono mm_compose(const MultiMono& g, const MultiMono& f) {
  MultiMono u;
  for (size_t d = 0; d < g.size(); ++d) u.push_back(mono_compose(g[d], f[d]));
  return u;
}

std::vector<MultiMono> all_multimonos(const MultiIdx& to_level, const MultiIdx& from_level) {
  // morphisms acting cell(from_level) -> cell(to_level): monos [to_d] -> [from_d]
  std::vector<MultiMono> out{{}};
  for (size_t d = 0; d < from_level.size(); ++d) {
    auto ms = all_monos(to_level[d], from_level[d]);
    std::vector<MultiMono> next;
    for (const auto& partial : out)
      for (const auto& m : ms) {
        auto p = partial;
        p.push_back(m);
        next.push_back(p);
      }
    out = std::move(next);
  }
  return out;
}

MultiIdx gen_target(const GenKey& g) {
  MultiIdx t = g.at;
  t[g.dir] += g.face ? -1 : 1;
  return t;
}

MultiMono gen_mono(const GenKey& g) {
  MultiMono u;
  for (size_t d = 0; d < g.at.size(); ++d) {
    if ((int)d == g.dir)
      u.push_back(g.face ? mono_face(g.at[d], g.i) : mono_deg(g.at[d], g.i));
    else
      u.push_back(mono_id(g.at[d]));
  }
  return u;
}

ValidationReport SetOps::check_map(const Map& m, const Cell& dom, const Cell& cod) {
  if (m.dom != dom || m.cod != cod) return {false, "malformed-table", "SetFun endpoints differ"};
  if (!m.total()) return {false, "malformed-table", "SetFun not total"};
  for (const auto& [k, v] : m.map)
    if (!std::binary_search(cod.begin(), cod.end(), v))
      return {false, "malformed-table", "SetFun value outside codomain"};
  return {};
}

ValidationReport CatOps::check_map(const Map& m, const Cell& dom, const Cell& cod) {
  if (m.src.get() != dom.get() && !(*m.src == *dom))
    return {false, "malformed-table", "functor domain differs"};
  if (m.tgt.get() != cod.get() && !(*m.tgt == *cod))
    return {false, "malformed-table", "functor codomain differs"};
  return check_functor(m);
}

// ---------------------------------------------------------------------------
// MultiTrunc

template <class Ops>
const typename Ops::Cell& MultiTrunc<Ops>::cell(const MultiIdx& k) const {
  auto it = cells_.find(k);
  if (it == cells_.end()) throw input_error("MultiTrunc: missing cell at " + idx_name(k));
  return it->second;
}

template <class Ops>
const typename Ops::Map& MultiTrunc<Ops>::gen_action(const GenKey& g) const {
  auto it = acts_.find(g);
  if (it == acts_.end())
    throw input_error("MultiTrunc: missing action " + idx_name(g.at) + " dir " +
                      std::to_string(g.dir) + (g.face ? " d" : " s") + std::to_string(g.i));
  return it->second;
}

template <class Ops>
typename Ops::Map MultiTrunc<Ops>::act(const MultiMono& u) const {
  // peel generators direction by direction; faces first (largest missing
  // element), then degeneracies (least repeated index)
  MultiIdx cur = mm_src_level(u);
  std::optional<Map> acc;
  auto push = [&](const Map& step) { acc = acc ? Ops::compose_maps(step, *acc) : step; };
  for (int d = 0; d < arity_; ++d) {
    Mono m = u[d];
    while (!m.is_identity()) {
      std::vector<char> hit(m.cod + 1, 0);
      for (int x : m.v) hit[x] = 1;
      int miss = -1;
      for (int i = m.cod; i >= 0; --i)
        if (!hit[i]) {
          miss = i;
          break;
        }
      if (miss >= 0) {
        // m = delta_miss o m'
        push(gen_action({cur, d, true, miss}));
        cur[d] -= 1;
        Mono m2{m.dom, m.cod - 1, {}};
        for (int x : m.v) m2.v.push_back(x < miss ? x : x - 1);
        m = m2;
        continue;
      }
      // surjective, non-injective: m = m'' o sigma_j; act = s_j o act(m'')
      int j = -1;
      for (int x = 0; x < m.dom; ++x)
        if (m.v[x] == m.v[x + 1]) {
          j = x;
          break;
        }
      if (j < 0) break;  // identity
      Mono m2{m.dom - 1, m.cod, {}};
      for (int x = 0; x <= m.dom; ++x)
        if (x != j + 1) m2.v.push_back(m.v[x]);
      // apply m'' first (recursively within this direction), then s_j
      MultiMono rest = mm_id(cur);
      rest[d] = m2;
      push(act(rest));
      cur[d] = m2.dom;
      push(gen_action({cur, d, false, j}));
      cur[d] += 1;
      m = mono_id(cur[d]);
    }
  }
  if (!acc) return Ops::identity(cell(mm_src_level(u)));
  return *acc;
}

template <class Ops>
std::vector<MultiIdx> MultiTrunc<Ops>::all_indices() const {
  std::vector<MultiIdx> out{{}};
  for (int d = 0; d < arity_; ++d) {
    std::vector<MultiIdx> next;
    for (const auto& p : out)
      for (int k = 0; k <= trunc_; ++k) {
        auto q = p;
        q.push_back(k);
        next.push_back(q);
      }
    out = std::move(next);
  }
  return out;
}

template <class Ops>
std::vector<GenKey> MultiTrunc<Ops>::all_generators() const {
  std::vector<GenKey> out;
  for (const auto& at : all_indices())
    for (int d = 0; d < arity_; ++d) {
      if (at[d] >= 1)
        for (int i = 0; i <= at[d]; ++i) out.push_back({at, d, true, i});
      if (at[d] < trunc_)
        for (int i = 0; i < at[d] + 1; ++i) out.push_back({at, d, false, i});
    }
  return out;
}

template <class Ops>
ValidationReport MultiTrunc<Ops>::validate() const {
  for (const auto& k : all_indices())
    if (!cells_.count(k)) return {false, "malformed-table", "missing cell " + idx_name(k)};
  for (const auto& g : all_generators()) {
    auto it = acts_.find(g);
    if (it == acts_.end())
      return {false, "malformed-table", "missing action at " + idx_name(g.at)};
    auto r = Ops::check_map(it->second, cell(g.at), cell(gen_target(g)));
    if (!r) return {false, r.code, "action at " + idx_name(g.at) + ": " + r.detail};
  }
  // simplicial identities: generator-pair composites must agree with the
  // canonically factored action of the composite index map
  for (const auto& g1 : all_generators()) {
    MultiIdx mid = gen_target(g1);
    for (int d = 0; d < arity_; ++d) {
      std::vector<GenKey> seconds;
      if (mid[d] >= 1)
        for (int i = 0; i <= mid[d]; ++i) seconds.push_back({mid, d, true, i});
      if (mid[d] < trunc_)
        for (int i = 0; i < mid[d] + 1; ++i) seconds.push_back({mid, d, false, i});
      for (const auto& g2 : seconds) {
        MultiMono u = mm_compose(gen_mono(g1), gen_mono(g2));
        Map path = Ops::compose_maps(gen_action(g2), gen_action(g1));
        Map canon = act(u);
        if (!Ops::map_equal(path, canon))
          return {false, "simplicial-identity",
                  idx_name(g1.at) + " dirs " + std::to_string(g1.dir) + "," +
                      std::to_string(g2.dir)};
      }
    }
  }
  return {};
}

template class MultiTrunc<SetOps>;
template class MultiTrunc<CatOps>;

template <class Ops>
ValidationReport check_table_map(const TableMap<Ops>& f, const MultiTrunc<Ops>& src,
                                 const MultiTrunc<Ops>& tgt) {
  for (const auto& k : src.all_indices()) {
    auto it = f.comp.find(k);
    if (it == f.comp.end()) return {false, "malformed-table", "missing component " + idx_name(k)};
    auto r = Ops::check_map(it->second, src.cell(k), tgt.cell(k));
    if (!r) return {false, r.code, "component " + idx_name(k) + ": " + r.detail};
  }
  for (const auto& g : src.all_generators()) {
    auto left = Ops::compose_maps(tgt.gen_action(g), f.at(g.at));
    auto right = Ops::compose_maps(f.at(gen_target(g)), src.gen_action(g));
    if (!Ops::map_equal(left, right)) return {false, "naturality", "component " + idx_name(g.at)};
  }
  return {};
}

template ValidationReport check_table_map<SetOps>(const SetTableMap&, const SetTable&,
                                                  const SetTable&);
template ValidationReport check_table_map<CatOps>(const CatTableMap&, const CatTable&,
                                                  const CatTable&);

template <class Ops>
TableMap<Ops> compose_table_maps(const TableMap<Ops>& g, const TableMap<Ops>& f) {
  TableMap<Ops> r;
  for (const auto& [k, m] : f.comp) r.comp[k] = Ops::compose_maps(g.at(k), m);
  return r;
}
template SetTableMap compose_table_maps<SetOps>(const SetTableMap&, const SetTableMap&);
template CatTableMap compose_table_maps<CatOps>(const CatTableMap&, const CatTableMap&);

template <class Ops>
TableMap<Ops> identity_table_map(const MultiTrunc<Ops>& t) {
  TableMap<Ops> r;
  for (const auto& [k, c] : t.cells()) r.comp[k] = Ops::identity(c);
  return r;
}
template SetTableMap identity_table_map<SetOps>(const SetTable&);
template CatTableMap identity_table_map<CatOps>(const CatTable&);

// ---------------------------------------------------------------------------
// chains and wide pullbacks

std::vector<MultiIdx> box_indices_of(int arity, int trunc) {
  std::vector<MultiIdx> out{{}};
  for (int dim = 0; dim < arity; ++dim) {
    std::vector<MultiIdx> next;
    for (const auto& p : out)
      for (int k = 0; k <= trunc; ++k) {
        auto q = p;
        q.push_back(k);
        next.push_back(q);
      }
    out = std::move(next);
  }
  return out;
}

std::string chain_name(const std::vector<std::string>& parts) {
  std::string s = parts[0];
  for (size_t i = 1; i < parts.size(); ++i) s = pair_name(s, parts[i]);
  return s;
}

std::vector<std::string> split_chain(const std::string& name, int k) {
  std::vector<std::string> parts;
  std::string cur = name;
  for (int i = k; i > 1; --i) {
    auto [a, b] = split_pair(cur);
    parts.push_back(b);
    cur = a;
  }
  parts.push_back(cur);
  std::reverse(parts.begin(), parts.end());
  return parts;
}

SetWide wide_pullback_set(const FinSet& x1, const SetFun& leg_src, const SetFun& leg_tgt, int k) {
  SetWide out;
  std::vector<std::vector<std::string>> chains;
  for (const auto& f : x1) chains.push_back({f});
  for (int j = 2; j <= k; ++j) {
    std::vector<std::vector<std::string>> next;
    for (const auto& c : chains)
      for (const auto& f : x1)
        if (leg_tgt.at(c.back()) == leg_src.at(f)) {
          auto c2 = c;
          c2.push_back(f);
          next.push_back(c2);
        }
    chains = std::move(next);
  }
  std::vector<std::string> names;
  for (const auto& c : chains) names.push_back(chain_name(c));
  out.apex = make_set(names);
  out.proj.assign(k, SetFun{out.apex, x1, {}});
  for (const auto& c : chains) {
    std::string nm = chain_name(c);
    for (int j = 0; j < k; ++j) out.proj[j].map[nm] = c[j];
  }
  return out;
}

CatWide wide_pullback_cat(const CatPtr& x1, const FinFunctor& leg_src, const FinFunctor& leg_tgt,
                          int k) {
  CatWide out;
  if (k == 1) {
    out.apex = x1;
    out.proj = {identity_functor(x1)};
    return out;
  }
  CatPtr acc = x1;
  FinFunctor acc_tgt = leg_tgt;  // rightmost leg of the accumulated chain
  std::vector<FinFunctor> projs{identity_functor(x1)};
  for (int j = 2; j <= k; ++j) {
    auto pb = pullback_cat(acc_tgt, leg_src);
    std::vector<FinFunctor> next;
    for (auto& p : projs) next.push_back(compose(p, pb.pr1));
    next.push_back(pb.pr2);
    projs = std::move(next);
    acc = pb.apex;
    acc_tgt = compose(leg_tgt, projs.back());
  }
  out.apex = acc;
  out.proj = std::move(projs);
  return out;
}

// ---------------------------------------------------------------------------
// Segal maps

namespace {

template <bool Induced>
SetSegal set_segal_common(const SetTable& x, const MultiIdx& at, int dir, const SetFun* gamma) {
  int k = at[dir];
  if (k < 2) throw input_error("segal_map: level must be >= 2");
  MultiIdx lvl1 = at;
  lvl1[dir] = 1;
  MultiMono src_m = mm_id(lvl1), tgt_m = mm_id(lvl1);
  src_m[dir] = mono_vertex(1, 0);
  tgt_m[dir] = mono_vertex(1, 1);
  SetFun leg_src = x.act(src_m);
  SetFun leg_tgt = x.act(tgt_m);
  if constexpr (Induced) {
    leg_src = compose(*gamma, leg_src);
    leg_tgt = compose(*gamma, leg_tgt);
  }
  auto wide = wide_pullback_set(x.cell(lvl1), leg_src, leg_tgt, k);
  SetSegal out;
  out.wide = wide.apex;
  out.proj = wide.proj;
  out.mu = SetFun{x.cell(at), out.wide, {}};
  std::vector<SetFun> nus;
  for (int j = 1; j <= k; ++j) {
    MultiMono e = mm_id(at);
    e[dir] = mono_edge(k, j);
    nus.push_back(x.act(e));
  }
  for (const auto& el : x.cell(at)) {
    std::vector<std::string> parts;
    for (int j = 0; j < k; ++j) parts.push_back(nus[j].at(el));
    std::string nm = chain_name(parts);
    if (!std::binary_search(out.wide.begin(), out.wide.end(), nm)) return out;
    out.mu.map[el] = nm;
  }
  out.iso = set_iso(out.mu);
  return out;
}

}  // namespace

SetSegal segal_map_set(const SetTable& x, const MultiIdx& at, int dir) {
  return set_segal_common<false>(x, at, dir, nullptr);
}

SetSegal induced_segal_map_set(const SetTable& x, const MultiIdx& at, int dir,
                               const SetFun& gamma) {
  return set_segal_common<true>(x, at, dir, &gamma);
}

namespace {

CatSegal cat_segal_common(const CatTable& x, const MultiIdx& at, int dir,
                          const FinFunctor& leg_src, const FinFunctor& leg_tgt) {
  int k = at[dir];
  MultiIdx lvl1 = at;
  lvl1[dir] = 1;
  auto wide = wide_pullback_cat(x.cell(lvl1), leg_src, leg_tgt, k);
  CatSegal out;
  out.wide = wide.apex;
  out.proj = wide.proj;
  std::vector<FinFunctor> nus;
  for (int j = 1; j <= k; ++j) {
    MultiMono e = mm_id(at);
    e[dir] = mono_edge(k, j);
    nus.push_back(x.act(e));
  }
  const FinCat& src = *x.cell(at);
  out.mu = FinFunctor{x.cell(at), out.wide, {}, {}};
  out.mu.omap.assign(src.num_objects(), -1);
  out.mu.mmap.assign(src.num_morphisms(), -1);
  for (int o = 0; o < src.num_objects(); ++o) {
    std::vector<std::string> parts;
    for (int j = 0; j < k; ++j) parts.push_back(nus[j].tgt->object(nus[j].omap[o]));
    int w = out.wide->object_index(chain_name(parts));
    if (w < 0) return out;
    out.mu.omap[o] = w;
  }
  for (int m = 0; m < src.num_morphisms(); ++m) {
    std::vector<std::string> parts;
    for (int j = 0; j < k; ++j) parts.push_back(nus[j].tgt->mor(nus[j].mmap[m]).id);
    int w = out.wide->mor_index(chain_name(parts));
    if (w < 0) return out;
    out.mu.mmap[m] = w;
  }
  out.iso = functor_is_iso(out.mu);
  return out;
}

}  // namespace

CatSegal segal_map_cat(const CatTable& x, const MultiIdx& at, int dir) {
  if (at[dir] < 2) throw input_error("segal_map: level must be >= 2");
  MultiIdx lvl1 = at;
  lvl1[dir] = 1;
  MultiMono src_m = mm_id(lvl1), tgt_m = mm_id(lvl1);
  src_m[dir] = mono_vertex(1, 0);
  tgt_m[dir] = mono_vertex(1, 1);
  return cat_segal_common(x, at, dir, x.act(src_m), x.act(tgt_m));
}

CatSegal induced_segal_map_cat(const CatTable& x, const MultiIdx& at, int dir,
                               const FinFunctor& gamma) {
  if (at[dir] < 2) throw input_error("induced_segal_map: level must be >= 2");
  MultiIdx lvl1 = at;
  lvl1[dir] = 1;
  MultiMono src_m = mm_id(lvl1), tgt_m = mm_id(lvl1);
  src_m[dir] = mono_vertex(1, 0);
  tgt_m[dir] = mono_vertex(1, 1);
  return cat_segal_common(x, at, dir, compose(gamma, x.act(src_m)), compose(gamma, x.act(tgt_m)));
}

// ---------------------------------------------------------------------------
// nerve / reconstruction

SetTable nerve(const FinCat& c, int L) {
  if (L < 2) throw input_error("nerve: L must be >= 2");
  SetTable t(1, L);
  t.set_cell({0}, FinSet(c.objects()));
  std::vector<std::vector<std::vector<int>>> chains(L + 1);
  for (int m = 0; m < c.num_morphisms(); ++m) chains[1].push_back({m});
  std::vector<std::string> mor_names;
  for (const auto& m : c.morphisms()) mor_names.push_back(m.id);
  t.set_cell({1}, make_set(mor_names));
  auto name_of = [&](const std::vector<int>& ch) {
    std::vector<std::string> parts;
    for (int m : ch) parts.push_back(c.mor(m).id);
    return chain_name(parts);
  };
  for (int k = 2; k <= L; ++k) {
    for (const auto& ch : chains[k - 1])
      for (int m = 0; m < c.num_morphisms(); ++m)
        if (c.mor(ch.back()).tgt == c.mor(m).src) {
          auto c2 = ch;
          c2.push_back(m);
          chains[k].push_back(c2);
        }
    std::vector<std::string> names;
    for (const auto& ch : chains[k]) names.push_back(name_of(ch));
    t.set_cell({k}, make_set(names));
  }
  // faces
  for (int k = 1; k <= L; ++k) {
    for (int i = 0; i <= k; ++i) {
      SetFun d{t.cell({k}), t.cell({k - 1}), {}};
      for (const auto& ch : chains[k]) {
        std::string nm = name_of(ch);
        if (k == 1) {
          d.map[nm] = i == 0 ? c.object(c.mor(ch[0]).tgt) : c.object(c.mor(ch[0]).src);
        } else if (i == 0) {
          d.map[nm] = name_of(std::vector<int>(ch.begin() + 1, ch.end()));
        } else if (i == k) {
          d.map[nm] = name_of(std::vector<int>(ch.begin(), ch.end() - 1));
        } else {
          auto c2 = ch;
          c2[i - 1] = *c.compose(ch[i], ch[i - 1]);
          c2.erase(c2.begin() + i);
          d.map[nm] = name_of(c2);
        }
      }
      t.set_action({{k}, 0, true, i}, std::move(d));
    }
  }
  // degeneracies
  for (int k = 0; k < L; ++k) {
    for (int i = 0; i <= k; ++i) {
      SetFun s{t.cell({k}), t.cell({k + 1}), {}};
      if (k == 0) {
        for (const auto& o : c.objects()) s.map[o] = c.mor(c.identity_of(c.object_index(o))).id;
      } else {
        for (const auto& ch : chains[k]) {
          auto c2 = ch;
          int vtx = i == 0 ? c.mor(ch[0]).src : c.mor(ch[i - 1]).tgt;
          c2.insert(c2.begin() + i, c.identity_of(vtx));
          s.map[name_of(ch)] = name_of(c2);
        }
      }
      t.set_action({{k}, 0, false, i}, std::move(s));
    }
  }
  return t;
}

ReconstructResult reconstruct_category(const SetTable& x) {
  ReconstructResult out;
  if (x.arity() != 1 || x.trunc() < 3) {
    out.error = "reconstruct_category requires a 1-simplicial table with L >= 3";
    return out;
  }
  for (int k = 2; k <= x.trunc(); ++k) {
    auto sg = segal_map_set(x, {k}, 0);
    if (!sg.iso) {
      out.failing_k = k;
      out.error = "segal-failure(" + std::to_string(k) + ")";
      return out;
    }
  }
  const FinSet& objs = x.cell({0});
  const FinSet& mors = x.cell({1});
  SetFun dsrc = x.face({1}, 0, 1), dtgt = x.face({1}, 0, 0);
  SetFun s0 = x.deg({0}, 0, 0);
  FinCatBuilder b;
  for (const auto& o : objs) b.add_object(o);
  for (const auto& m : mors) b.add_mor(m, dsrc.at(m), dtgt.at(m));
  for (const auto& o : objs) b.set_identity(o, s0.at(o));
  auto sg2 = segal_map_set(x, {2}, 0);
  std::map<std::string, std::string> mu_inv;
  for (const auto& [el, ch] : sg2.mu.map) mu_inv[ch] = el;
  SetFun d1 = x.face({2}, 0, 1);
  for (const auto& f : mors)
    for (const auto& g : mors)
      if (dtgt.at(f) == dsrc.at(g)) {
        auto it = mu_inv.find(pair_name(f, g));
        if (it == mu_inv.end()) {
          out.failing_k = 2;
          out.error = "segal-failure(2)";
          return out;
        }
        b.set_compose(g, f, d1.at(it->second));
      }
  auto cat = b.build();
  auto chk = check_category(*cat);
  if (!chk) {
    out.error = chk.code + ": " + chk.detail;
    return out;
  }
  out.cat = cat;
  return out;
}

MultinerveReport check_multinerve_property(const SetTable& t) {
  for (const auto& k : t.all_indices())
    for (int d = 0; d < t.arity(); ++d) {
      if (k[d] < 2) continue;
      auto sg = segal_map_set(t, k, d);
      if (!sg.iso) return {false, k, d};
    }
  return {};
}

}  // namespace wgcat

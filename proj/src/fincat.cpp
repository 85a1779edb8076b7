#include "wgcat/fincat.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <numeric>

namespace wgcat {

static long long now_ms() {
  using namespace std::chrono;
  return duration_cast<milliseconds>(steady_clock::now().time_since_epoch()).count();
}

Guard::Guard() {
  const char* env = std::getenv("WGCAT_GUARD_MS");
  budget_ms_ = env ? std::atoll(env) : 60000;
  if (budget_ms_ <= 0) budget_ms_ = 60000;
  start_ms_ = now_ms();
}

Guard::Guard(long long budget_ms) : start_ms_(now_ms()), budget_ms_(budget_ms) {}

bool Guard::expired() const { return now_ms() - start_ms_ > budget_ms_; }

void Guard::check(const char* where) const {
  if (expired()) throw guard_error(std::string("guard: timeout in ") + where);
}

// ---------------------------------------------------------------------------
// sets

FinSet make_set(std::vector<std::string> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  return elems;
}

const std::string& SetFun::at(const std::string& x) const {
  auto it = map.find(x);
  if (it == map.end()) throw input_error("SetFun: no value for '" + x + "'");
  return it->second;
}

bool SetFun::total() const {
  for (const auto& x : dom)
    if (!map.count(x)) return false;
  return true;
}

bool SetFun::surjective() const {
  std::set<std::string> img;
  for (const auto& [k, v] : map) img.insert(v);
  for (const auto& y : cod)
    if (!img.count(y)) return false;
  return true;
}

bool SetFun::injective() const {
  std::set<std::string> img;
  for (const auto& x : dom) {
    if (!img.insert(at(x)).second) return false;
  }
  return true;
}

SetFun compose(const SetFun& g, const SetFun& f) {
  SetFun r{f.dom, g.cod, {}};
  for (const auto& x : f.dom) r.map[x] = g.at(f.at(x));
  return r;
}

SetFun identity_fun(const FinSet& s) {
  SetFun r{s, s, {}};
  for (const auto& x : s) r.map[x] = x;
  return r;
}

bool set_iso(const SetFun& f) { return f.total() && f.injective() && f.surjective(); }

std::string pair_name(const std::string& a, const std::string& b) {
  return "(" + a + "|" + b + ")";
}

std::pair<std::string, std::string> split_pair(const std::string& p) {
  // inverse of pair_name; scans for the separating '|' at depth 1
  if (p.size() < 3 || p.front() != '(' || p.back() != ')')
    throw input_error("not a pair name: " + p);
  int depth = 0;
  for (size_t i = 1; i + 1 < p.size(); ++i) {
    char c = p[i];
    if (c == '(') depth++;
    else if (c == ')') depth--;
    else if (c == '|' && depth == 0)
      return {p.substr(1, i - 1), p.substr(i + 1, p.size() - i - 2)};
  }
  throw input_error("not a pair name: " + p);
}

SetPullback pullback_set(const SetFun& f, const SetFun& g) {
  if (f.cod != g.cod) throw input_error("pullback_set: cospan targets differ");
  SetPullback r;
  std::vector<std::string> elems;
  for (const auto& a : f.dom)
    for (const auto& b : g.dom)
      if (f.at(a) == g.at(b)) elems.push_back(pair_name(a, b));
  r.apex = make_set(std::move(elems));
  r.pr1 = SetFun{r.apex, f.dom, {}};
  r.pr2 = SetFun{r.apex, g.dom, {}};
  for (const auto& e : r.apex) {
    auto [a, b] = split_pair(e);
    r.pr1.map[e] = a;
    r.pr2.map[e] = b;
  }
  return r;
}

// ---------------------------------------------------------------------------
// FinCat

uint64_t pack_pair(int g, int f) {
  return (static_cast<uint64_t>(static_cast<uint32_t>(g)) << 32) |
         static_cast<uint32_t>(f);
}

int FinCat::object_index(const std::string& name) const {
  auto it = obj_idx_.find(name);
  return it == obj_idx_.end() ? -1 : it->second;
}

int FinCat::mor_index(const std::string& name) const {
  auto it = mor_idx_.find(name);
  return it == mor_idx_.end() ? -1 : it->second;
}

bool FinCat::is_identity(int m) const { return identity_[mors_[m].src] == m; }

std::optional<int> FinCat::compose(int g, int f) const {
  if (mors_[f].tgt != mors_[g].src) return std::nullopt;
  auto key = pack_pair(g, f);
  auto it = std::lower_bound(comp_.begin(), comp_.end(), key,
                             [](const auto& e, uint64_t k) { return e.first < k; });
  if (it == comp_.end() || it->first != key) return std::nullopt;
  return it->second;
}

const std::vector<int>& FinCat::hom(int a, int b) const {
  if (homs_.empty()) {
    for (int m = 0; m < num_morphisms(); ++m)
      homs_[{mors_[m].src, mors_[m].tgt}].push_back(m);
  }
  static const std::vector<int> empty;
  auto it = homs_.find({a, b});
  return it == homs_.end() ? empty : it->second;
}

std::optional<int> FinCat::inverse(int m) const {
  if (inverse_.empty()) inverse_.assign(mors_.size(), -2);
  if (inverse_[m] == -2) {
    inverse_[m] = -1;
    const auto& cands = hom(mors_[m].tgt, mors_[m].src);
    for (int h : cands) {
      auto a = compose(h, m), b = compose(m, h);
      if (a && *a == identity_[mors_[m].src] && b && *b == identity_[mors_[m].tgt]) {
        inverse_[m] = h;
        break;
      }
    }
  }
  return inverse_[m] < 0 ? std::nullopt : std::optional<int>(inverse_[m]);
}

bool FinCat::is_invertible(int m) const { return inverse(m).has_value(); }

bool FinCat::is_discrete() const {
  return num_morphisms() == num_objects();
}

bool FinCat::is_groupoid() const {
  for (int m = 0; m < num_morphisms(); ++m)
    if (!is_invertible(m)) return false;
  return true;
}

bool FinCat::operator==(const FinCat& o) const {
  if (objects_ != o.objects_) return false;
  if (mors_.size() != o.mors_.size()) return false;
  for (size_t i = 0; i < mors_.size(); ++i)
    if (mors_[i].id != o.mors_[i].id || mors_[i].src != o.mors_[i].src ||
        mors_[i].tgt != o.mors_[i].tgt)
      return false;
  return identity_ == o.identity_ && comp_ == o.comp_;
}

FinCat FinCat::from_tables(std::vector<std::string> objects,
                           std::vector<std::array<std::string, 3>> morphisms,
                           std::map<std::string, std::string> identities,
                           std::vector<std::array<std::string, 3>> compose) {
  FinCatBuilder b;
  for (auto& o : objects) b.add_object(o);
  for (auto& m : morphisms) b.add_mor(m[0], m[1], m[2]);
  for (auto& [o, m] : identities) b.set_identity(o, m);
  for (auto& c : compose) b.set_compose(c[0], c[1], c[2]);
  return *b.build();
}

void FinCatBuilder::add_object(const std::string& name) {
  if (obj_seen_.insert(name).second) objects_.push_back(name);
}

void FinCatBuilder::add_mor(const std::string& id, const std::string& src,
                            const std::string& tgt) {
  if (mor_seen_.insert(id).second) mors_.push_back({id, src, tgt});
}

bool FinCatBuilder::has_object(const std::string& name) const { return obj_seen_.count(name); }
bool FinCatBuilder::has_mor(const std::string& id) const { return mor_seen_.count(id); }

void FinCatBuilder::set_identity(const std::string& obj, const std::string& mor) {
  ids_[obj] = mor;
}

void FinCatBuilder::set_compose(const std::string& g, const std::string& f,
                                const std::string& gf) {
  comp_.push_back({g, f, gf});
}

CatPtr FinCatBuilder::build() const {
  auto c = std::make_shared<FinCat>();
  c->objects_ = objects_;
  std::sort(c->objects_.begin(), c->objects_.end());
  c->objects_.erase(std::unique(c->objects_.begin(), c->objects_.end()), c->objects_.end());
  for (int i = 0; i < (int)c->objects_.size(); ++i) c->obj_idx_[c->objects_[i]] = i;

  std::vector<std::array<std::string, 3>> ms = mors_;
  std::sort(ms.begin(), ms.end(),
            [](const auto& a, const auto& b) { return a[0] < b[0]; });
  for (const auto& m : ms) {
    int s = c->object_index(m[1]), t = c->object_index(m[2]);
    if (s < 0 || t < 0)
      throw input_error("morphism '" + m[0] + "' has dangling endpoint");
    c->mor_idx_[m[0]] = (int)c->mors_.size();
    c->mors_.push_back({m[0], s, t});
  }

  c->identity_.assign(c->objects_.size(), -1);
  for (const auto& [o, m] : ids_) {
    int oi = c->object_index(o), mi = c->mor_index(m);
    if (oi < 0 || mi < 0) throw input_error("identity table refers to unknown '" + o + "'/'" + m + "'");
    c->identity_[oi] = mi;
  }
  for (int i = 0; i < c->num_objects(); ++i)
    if (c->identity_[i] < 0)
      throw input_error("object '" + c->objects_[i] + "' has no identity morphism");

  c->comp_.reserve(comp_.size());
  for (const auto& e : comp_) {
    int g = c->mor_index(e[0]), f = c->mor_index(e[1]), gf = c->mor_index(e[2]);
    if (g < 0 || f < 0 || gf < 0)
      throw input_error("compose table refers to unknown morphism");
    c->comp_.push_back({pack_pair(g, f), gf});
  }
  std::sort(c->comp_.begin(), c->comp_.end());
  c->comp_.erase(std::unique(c->comp_.begin(), c->comp_.end()), c->comp_.end());
  for (size_t i = 1; i < c->comp_.size(); ++i)
    if (c->comp_[i].first == c->comp_[i - 1].first)
      throw input_error("compose table has conflicting entries");
  return c;
}

ValidationReport check_category(const FinCat& c) {
  // identity endpoints
  for (int o = 0; o < c.num_objects(); ++o) {
    int id = c.identity_of(o);
    if (c.mor(id).src != o || c.mor(id).tgt != o)
      return {false, "malformed-table", "identity of '" + c.object(o) + "' has wrong endpoints"};
  }
  // totality on composable pairs, and endpoints of composites
  for (int f = 0; f < c.num_morphisms(); ++f)
    for (int g = 0; g < c.num_morphisms(); ++g) {
      bool composable = c.mor(f).tgt == c.mor(g).src;
      auto gf = c.compose(g, f);
      if (composable && !gf)
        return {false, "malformed-table",
                "compose undefined on composable pair (" + c.mor(g).id + "," + c.mor(f).id + ")"};
      if (gf && (c.mor(*gf).src != c.mor(f).src || c.mor(*gf).tgt != c.mor(g).tgt))
        return {false, "malformed-table",
                "composite (" + c.mor(g).id + "," + c.mor(f).id + ") has wrong endpoints"};
    }
  // identity laws
  for (int f = 0; f < c.num_morphisms(); ++f) {
    int ids = c.identity_of(c.mor(f).src), idt = c.identity_of(c.mor(f).tgt);
    if (*c.compose(f, ids) != f)
      return {false, "identity-law", c.mor(f).id + " . id != " + c.mor(f).id};
    if (*c.compose(idt, f) != f)
      return {false, "identity-law", "id . " + c.mor(f).id + " != " + c.mor(f).id};
  }
  // associativity
  for (int f = 0; f < c.num_morphisms(); ++f) {
    for (int b = 0; b < c.num_objects(); ++b) {
      for (int g : c.hom(c.mor(f).tgt, b)) {
        int gf = *c.compose(g, f);
        for (int o = 0; o < c.num_objects(); ++o) {
          for (int h : c.hom(b, o)) {
            if (*c.compose(h, gf) != *c.compose(*c.compose(h, g), f))
              return {false, "associativity",
                      c.mor(h).id + "," + c.mor(g).id + "," + c.mor(f).id};
          }
        }
      }
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// functors

const std::string& FinFunctor::on_object_name(const std::string& o) const {
  int i = src->object_index(o);
  if (i < 0) throw input_error("functor: unknown object '" + o + "'");
  return tgt->object(omap[i]);
}

const std::string& FinFunctor::on_mor_name(const std::string& m) const {
  int i = src->mor_index(m);
  if (i < 0) throw input_error("functor: unknown morphism '" + m + "'");
  return tgt->mor(mmap[i]).id;
}

FinFunctor identity_functor(const CatPtr& c) {
  FinFunctor f{c, c, {}, {}};
  f.omap.resize(c->num_objects());
  std::iota(f.omap.begin(), f.omap.end(), 0);
  f.mmap.resize(c->num_morphisms());
  std::iota(f.mmap.begin(), f.mmap.end(), 0);
  return f;
}

FinFunctor compose(const FinFunctor& g, const FinFunctor& f) {
  FinFunctor r{f.src, g.tgt, {}, {}};
  r.omap.reserve(f.omap.size());
  for (int o : f.omap) r.omap.push_back(g.omap[o]);
  r.mmap.reserve(f.mmap.size());
  for (int m : f.mmap) r.mmap.push_back(g.mmap[m]);
  return r;
}

ValidationReport check_functor(const FinFunctor& f) {
  if ((int)f.omap.size() != f.src->num_objects() ||
      (int)f.mmap.size() != f.src->num_morphisms())
    return {false, "malformed-table", "functor maps have wrong size"};
  for (int m = 0; m < f.src->num_morphisms(); ++m) {
    const Mor& mm = f.src->mor(m);
    const Mor& im = f.tgt->mor(f.mmap[m]);
    if (im.src != f.omap[mm.src] || im.tgt != f.omap[mm.tgt])
      return {false, "functor-endpoints", mm.id};
  }
  for (int o = 0; o < f.src->num_objects(); ++o)
    if (f.mmap[f.src->identity_of(o)] != f.tgt->identity_of(f.omap[o]))
      return {false, "functor-identity", f.src->object(o)};
  for (const auto& [key, gf] : f.src->compose_table()) {
    int g = (int)(key >> 32), ff = (int)(key & 0xffffffffu);
    auto img = f.tgt->compose(f.mmap[g], f.mmap[ff]);
    if (!img || *img != f.mmap[gf])
      return {false, "functor-composition",
              f.src->mor(g).id + "," + f.src->mor(ff).id};
  }
  return {};
}

bool functor_equal(const FinFunctor& f, const FinFunctor& g) {
  bool same_src = f.src.get() == g.src.get() || *f.src == *g.src;
  bool same_tgt = f.tgt.get() == g.tgt.get() || *f.tgt == *g.tgt;
  return same_src && same_tgt && f.omap == g.omap && f.mmap == g.mmap;
}

bool functor_is_iso(const FinFunctor& f) {
  if (f.src->num_objects() != f.tgt->num_objects() ||
      f.src->num_morphisms() != f.tgt->num_morphisms())
    return false;
  std::vector<char> seen(f.omap.size(), 0);
  for (int o : f.omap) {
    if (seen[o]) return false;
    seen[o] = 1;
  }
  std::vector<char> seenm(f.mmap.size(), 0);
  for (int m : f.mmap) {
    if (seenm[m]) return false;
    seenm[m] = 1;
  }
  return true;
}

FinFunctor invert_iso(const FinFunctor& f) {
  if (!functor_is_iso(f)) throw input_error("invert_iso: functor is not an isomorphism");
  FinFunctor r{f.tgt, f.src, {}, {}};
  r.omap.assign(f.omap.size(), -1);
  r.mmap.assign(f.mmap.size(), -1);
  for (int o = 0; o < (int)f.omap.size(); ++o) r.omap[f.omap[o]] = o;
  for (int m = 0; m < (int)f.mmap.size(); ++m) r.mmap[f.mmap[m]] = m;
  return r;
}

bool surjective_on_objects(const FinFunctor& f) {
  std::vector<char> hit(f.tgt->num_objects(), 0);
  for (int o : f.omap) hit[o] = 1;
  return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

// ---------------------------------------------------------------------------
// natural isomorphisms & adjoint equivalences

NatIso identity_nat_iso(const FinFunctor& f) {
  NatIso n{f, f, {}};
  n.component.reserve(f.omap.size());
  for (int o : f.omap) n.component.push_back(f.tgt->identity_of(o));
  return n;
}

ValidationReport check_nat_iso(const NatIso& n) {
  const FinCat& T = *n.f.tgt;
  if (n.f.src.get() != n.g.src.get() || n.f.tgt.get() != n.g.tgt.get())
    return {false, "malformed-table", "components between different functor pairs"};
  if ((int)n.component.size() != n.f.src->num_objects())
    return {false, "malformed-table", "wrong component count"};
  for (int a = 0; a < n.f.src->num_objects(); ++a) {
    int c = n.component[a];
    if (T.mor(c).src != n.f.omap[a] || T.mor(c).tgt != n.g.omap[a])
      return {false, "nat-iso-endpoints", n.f.src->object(a)};
    if (!T.is_invertible(c)) return {false, "nat-iso-invertibility", n.f.src->object(a)};
  }
  for (int m = 0; m < n.f.src->num_morphisms(); ++m) {
    const Mor& mm = n.f.src->mor(m);
    auto left = T.compose(n.component[mm.tgt], n.f.mmap[m]);
    auto right = T.compose(n.g.mmap[m], n.component[mm.src]);
    if (!left || !right || *left != *right) return {false, "naturality", mm.id};
  }
  return {};
}

NatIso invert_nat_iso(const NatIso& n) {
  NatIso r{n.g, n.f, {}};
  r.component.reserve(n.component.size());
  for (int c : n.component) {
    auto inv = n.f.tgt->inverse(c);
    if (!inv) throw input_error("invert_nat_iso: non-invertible component");
    r.component.push_back(*inv);
  }
  return r;
}

NatIso vcompose(const NatIso& second, const NatIso& first) {
  NatIso r{first.f, second.g, {}};
  r.component.reserve(first.component.size());
  for (size_t a = 0; a < first.component.size(); ++a) {
    auto c = first.f.tgt->compose(second.component[a], first.component[a]);
    if (!c) throw input_error("vcompose: non-composable components");
    r.component.push_back(*c);
  }
  return r;
}

ValidationReport check_adjoint_equivalence(const AdjointEquivalence& e) {
  if (auto r = check_functor(e.forward); !r) return r;
  if (auto r = check_functor(e.backward); !r) return r;
  if (auto r = check_nat_iso(e.unit); !r) return r;
  if (auto r = check_nat_iso(e.counit); !r) return r;
  const FinCat& B = *e.forward.tgt;
  const FinCat& A = *e.forward.src;
  // triangle: counit(f a) . f(unit a) = id_{f a}
  for (int a = 0; a < A.num_objects(); ++a) {
    int fu = e.forward.mmap[e.unit.component[a]];
    auto c = B.compose(e.counit.component[e.forward.omap[a]], fu);
    if (!c || *c != B.identity_of(e.forward.omap[a]))
      return {false, "triangle-identity", A.object(a)};
  }
  // triangle: f'(counit b) . unit(f' b) = id_{f' b}
  for (int b = 0; b < B.num_objects(); ++b) {
    int bc = e.backward.mmap[e.counit.component[b]];
    auto c = A.compose(bc, e.unit.component[e.backward.omap[b]]);
    if (!c || *c != A.identity_of(e.backward.omap[b]))
      return {false, "triangle-identity", B.object(b)};
  }
  return {};
}

// ---------------------------------------------------------------------------
// p, q, d

IsoClasses p_iso_classes(const FinCat& c) {
  int n = c.num_objects();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int m = 0; m < c.num_morphisms(); ++m)
    if (c.is_invertible(m)) {
      int a = find(c.mor(m).src), b = find(c.mor(m).tgt);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  // class name = least object identifier in the class
  std::vector<std::string> least(n);
  for (int o = 0; o < n; ++o) {
    int r = find(o);
    if (least[r].empty() || c.object(o) < least[r]) least[r] = c.object(o);
  }
  IsoClasses out;
  std::vector<std::string> names;
  for (int o = 0; o < n; ++o)
    if (find(o) == o) names.push_back(least[o]);
  out.classes = make_set(names);
  out.assign = SetFun{FinSet(c.objects()), out.classes, {}};
  for (int o = 0; o < n; ++o) out.assign.map[c.object(o)] = least[find(o)];
  return out;
}

FinSet q_components(const FinCat& c) { return q_assign(c).cod; }

SetFun q_assign(const FinCat& c) {
  int n = c.num_objects();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int m = 0; m < c.num_morphisms(); ++m) {
    int a = find(c.mor(m).src), b = find(c.mor(m).tgt);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::string> least(n);
  for (int o = 0; o < n; ++o) {
    int r = find(o);
    if (least[r].empty() || c.object(o) < least[r]) least[r] = c.object(o);
  }
  std::vector<std::string> names;
  for (int o = 0; o < n; ++o)
    if (find(o) == o) names.push_back(least[o]);
  SetFun f{FinSet(c.objects()), make_set(names), {}};
  for (int o = 0; o < n; ++o) f.map[c.object(o)] = least[find(o)];
  return f;
}

CatPtr d_discrete(const FinSet& s) {
  FinCatBuilder b;
  for (const auto& x : s) {
    b.add_object(x);
    b.add_mor("id:" + x, x, x);
    b.set_identity(x, "id:" + x);
    b.set_compose("id:" + x, "id:" + x, "id:" + x);
  }
  return b.build();
}

// ---------------------------------------------------------------------------
// pullbacks / products

CatPullback pullback_cat(const FinFunctor& f, const FinFunctor& g) {
  if (f.tgt.get() != g.tgt.get() && !(*f.tgt == *g.tgt))
    throw input_error("pullback_cat: cospan targets differ");
  const FinCat& A = *f.src;
  const FinCat& B = *g.src;
  FinCatBuilder bld;
  for (int a = 0; a < A.num_objects(); ++a)
    for (int b = 0; b < B.num_objects(); ++b)
      if (f.omap[a] == g.omap[b]) bld.add_object(pair_name(A.object(a), B.object(b)));
  std::vector<std::pair<int, int>> morpairs;
  for (int m = 0; m < A.num_morphisms(); ++m)
    for (int n = 0; n < B.num_morphisms(); ++n)
      if (f.mmap[m] == g.mmap[n]) {
        bld.add_mor(pair_name(A.mor(m).id, B.mor(n).id),
                    pair_name(A.object(A.mor(m).src), B.object(B.mor(n).src)),
                    pair_name(A.object(A.mor(m).tgt), B.object(B.mor(n).tgt)));
        morpairs.push_back({m, n});
      }
  for (int a = 0; a < A.num_objects(); ++a)
    for (int b = 0; b < B.num_objects(); ++b)
      if (f.omap[a] == g.omap[b])
        bld.set_identity(pair_name(A.object(a), B.object(b)),
                         pair_name(A.mor(A.identity_of(a)).id, B.mor(B.identity_of(b)).id));
  for (auto [m2, n2] : morpairs)
    for (auto [m1, n1] : morpairs) {
      auto cm = A.compose(m2, m1);
      auto cn = B.compose(n2, n1);
      if (cm && cn)
        bld.set_compose(pair_name(A.mor(m2).id, B.mor(n2).id),
                        pair_name(A.mor(m1).id, B.mor(n1).id),
                        pair_name(A.mor(*cm).id, B.mor(*cn).id));
    }
  CatPullback out;
  out.apex = bld.build();
  const FinCat& P = *out.apex;
  out.pr1 = FinFunctor{out.apex, f.src, {}, {}};
  out.pr2 = FinFunctor{out.apex, g.src, {}, {}};
  out.pr1.omap.resize(P.num_objects());
  out.pr2.omap.resize(P.num_objects());
  for (int o = 0; o < P.num_objects(); ++o) {
    auto [a, b] = split_pair(P.object(o));
    out.pr1.omap[o] = A.object_index(a);
    out.pr2.omap[o] = B.object_index(b);
  }
  out.pr1.mmap.resize(P.num_morphisms());
  out.pr2.mmap.resize(P.num_morphisms());
  for (int m = 0; m < P.num_morphisms(); ++m) {
    auto [x, y] = split_pair(P.mor(m).id);
    out.pr1.mmap[m] = A.mor_index(x);
    out.pr2.mmap[m] = B.mor_index(y);
  }
  return out;
}

CatPullback product_cat(const CatPtr& a, const CatPtr& b) {
  CatPtr pt = d_discrete(make_set({"*"}));
  auto bang = [&](const CatPtr& c) {
    FinFunctor f{c, pt, {}, {}};
    f.omap.assign(c->num_objects(), 0);
    f.mmap.assign(c->num_morphisms(), 0);
    return f;
  };
  return pullback_cat(bang(a), bang(b));
}

// ---------------------------------------------------------------------------
// decalage

Decalage decalage(const CatPtr& cp) {
  const FinCat& c = *cp;
  FinCatBuilder b;
  // objects: morphisms f of c (basepoint = src f); morphisms: pairs [f;h]
  for (int f = 0; f < c.num_morphisms(); ++f) b.add_object(c.mor(f).id);
  auto mor_name = [&](int f, int h) { return "[" + c.mor(f).id + ";" + c.mor(h).id + "]"; };
  for (int f = 0; f < c.num_morphisms(); ++f) {
    for (int o = 0; o < c.num_objects(); ++o)
      for (int h : c.hom(c.mor(f).tgt, o)) {
        int hf = *c.compose(h, f);
        b.add_mor(mor_name(f, h), c.mor(f).id, c.mor(hf).id);
      }
    b.set_identity(c.mor(f).id, mor_name(f, c.identity_of(c.mor(f).tgt)));
  }
  for (int f = 0; f < c.num_morphisms(); ++f)
    for (int o = 0; o < c.num_objects(); ++o)
      for (int h : c.hom(c.mor(f).tgt, o)) {
        int hf = *c.compose(h, f);
        for (int o2 = 0; o2 < c.num_objects(); ++o2)
          for (int k : c.hom(c.mor(hf).tgt, o2))
            b.set_compose(mor_name(hf, k), mor_name(f, h), mor_name(f, *c.compose(k, h)));
      }
  Decalage out;
  out.dec = b.build();
  const FinCat& D = *out.dec;
  out.d1 = FinFunctor{out.dec, cp, {}, {}};
  out.d1.omap.resize(D.num_objects());
  for (int o = 0; o < D.num_objects(); ++o)
    out.d1.omap[o] = c.mor(c.mor_index(D.object(o))).tgt;
  out.d1.mmap.resize(D.num_morphisms());
  for (int m = 0; m < D.num_morphisms(); ++m) {
    const std::string& id = D.mor(m).id;
    auto semi = id.find(';');
    // scan from matching depth: the name is "[f;h]" with f itself possibly containing ';'
    // find the split by trying prefixes that are morphisms of c
    size_t pos = std::string::npos;
    for (size_t i = 1; i + 1 < id.size(); ++i) {
      if (id[i] != ';') continue;
      if (c.mor_index(id.substr(1, i - 1)) >= 0 &&
          c.mor_index(id.substr(i + 1, id.size() - i - 2)) >= 0) {
        pos = i;
        break;
      }
    }
    if (pos == std::string::npos) pos = semi;
    out.d1.mmap[m] = c.mor_index(id.substr(pos + 1, id.size() - pos - 2));
  }
  return out;
}

// ---------------------------------------------------------------------------
// isofibrations, equivalences

bool is_isofibration(const FinFunctor& f) {
  const FinCat& A = *f.src;
  const FinCat& B = *f.tgt;
  for (int b0 = 0; b0 < A.num_objects(); ++b0) {
    int fb = f.omap[b0];
    for (int y = 0; y < B.num_objects(); ++y)
      for (int phi : B.hom(fb, y)) {
        if (!B.is_invertible(phi)) continue;
        bool lifted = false;
        for (int b1 = 0; b1 < A.num_objects() && !lifted; ++b1)
          for (int psi : A.hom(b0, b1)) {
            if (A.is_invertible(psi) && f.mmap[psi] == phi) {
              lifted = true;
              break;
            }
          }
        if (!lifted) return false;
      }
  }
  return true;
}

bool is_equiv_relation(const FinCat& c) {
  if (!c.is_groupoid()) return false;
  for (int a = 0; a < c.num_objects(); ++a)
    for (int b = 0; b < c.num_objects(); ++b)
      if (c.hom(a, b).size() > 1) return false;
  return true;
}

CatPtr hd_from_surjection(const FinSet& a, const SetFun& f) {
  if (!f.total() || !f.surjective()) throw input_error("hd_from_surjection: f must be a surjection");
  FinCatBuilder b;
  auto nm = [](const std::string& x, const std::string& y) { return "<" + x + "~" + y + ">"; };
  for (const auto& x : a) b.add_object(x);
  for (const auto& x : a)
    for (const auto& y : a)
      if (f.at(x) == f.at(y)) b.add_mor(nm(x, y), x, y);
  for (const auto& x : a) b.set_identity(x, nm(x, x));
  for (const auto& x : a)
    for (const auto& y : a) {
      if (f.at(x) != f.at(y)) continue;
      for (const auto& z : a)
        if (f.at(y) == f.at(z)) b.set_compose(nm(y, z), nm(x, y), nm(x, z));
    }
  return b.build();
}

EquivAnalysis equivalence_analysis(const FinFunctor& f) {
  EquivAnalysis r;
  const FinCat& A = *f.src;
  const FinCat& B = *f.tgt;
  r.fully_faithful = true;
  for (int a = 0; a < A.num_objects() && r.fully_faithful; ++a)
    for (int b = 0; b < A.num_objects(); ++b) {
      const auto& ha = A.hom(a, b);
      const auto& hb = B.hom(f.omap[a], f.omap[b]);
      std::set<int> img;
      for (int m : ha) img.insert(f.mmap[m]);
      if (img.size() != ha.size() || img.size() != hb.size()) {
        r.fully_faithful = false;
        r.detail = "hom(" + A.object(a) + "," + A.object(b) + ")";
        break;
      }
    }
  auto classes = p_iso_classes(B);
  std::set<std::string> hit;
  for (int a = 0; a < A.num_objects(); ++a)
    hit.insert(classes.assign.at(B.object(f.omap[a])));
  r.essentially_surjective = hit.size() == classes.classes.size();
  if (!r.essentially_surjective && r.detail.empty()) r.detail = "iso-class not hit";
  r.equivalence = r.fully_faithful && r.essentially_surjective;
  return r;
}

AdjointEquivalence pseudo_inverse(const FinFunctor& f) {
  auto an = equivalence_analysis(f);
  if (!an.equivalence) throw input_error("pseudo_inverse: not an equivalence (" + an.detail + ")");
  const FinCat& A = *f.src;
  const FinCat& B = *f.tgt;
  AdjointEquivalence e;
  e.forward = f;
  e.backward = FinFunctor{f.tgt, f.src, {}, {}};
  e.backward.omap.assign(B.num_objects(), -1);
  e.backward.mmap.assign(B.num_morphisms(), -1);

  if (functor_is_iso(f)) {
    e.backward = invert_iso(f);
    e.unit = identity_nat_iso(identity_functor(f.src));
    e.unit.g = compose(e.backward, f);
    e.counit = identity_nat_iso(identity_functor(f.tgt));
    e.counit.f = compose(f, e.backward);
    return e;
  }

  auto classes = p_iso_classes(B);
  // representative object of each target class: least identifier within the
  // class that lies in the image of f
  std::map<std::string, int> rep;  // class -> object of B
  for (int b = 0; b < B.num_objects(); ++b) {
    bool in_image = false;
    for (int a = 0; a < A.num_objects(); ++a)
      if (f.omap[a] == b) { in_image = true; break; }
    if (!in_image) continue;
    const std::string& cls = classes.assign.at(B.object(b));
    auto it = rep.find(cls);
    if (it == rep.end() || B.object(b) < B.object(it->second)) rep[cls] = b;
  }
  // backward object: least a in A with f(a) = representative
  std::map<std::string, int> back_of_class;
  for (const auto& [cls, rb] : rep) {
    int best = -1;
    for (int a = 0; a < A.num_objects(); ++a)
      if (f.omap[a] == rb && (best < 0 || A.object(a) < A.object(best))) best = a;
    back_of_class[cls] = best;
  }
  // counit component at b: lexicographically least iso rep(b) -> b (identity when equal)
  std::vector<int> counit_comp(B.num_objects(), -1);
  for (int b = 0; b < B.num_objects(); ++b) {
    const std::string& cls = classes.assign.at(B.object(b));
    int rb = rep.at(cls);
    e.backward.omap[b] = back_of_class.at(cls);
    if (rb == b) {
      counit_comp[b] = B.identity_of(b);
      continue;
    }
    int best = -1;
    for (int m : B.hom(rb, b))
      if (B.is_invertible(m) && (best < 0 || B.mor(m).id < B.mor(best).id)) best = m;
    counit_comp[b] = best;
  }
  // backward morphism: unique lift of counit(b')^-1 . beta . counit(b)
  auto lift = [&](int a0, int a1, int target_m) -> int {
    for (int m : A.hom(a0, a1))
      if (f.mmap[m] == target_m) return m;
    throw input_error("pseudo_inverse: full faithfulness lift missing");
  };
  for (int beta = 0; beta < B.num_morphisms(); ++beta) {
    int b0 = B.mor(beta).src, b1 = B.mor(beta).tgt;
    int w = *B.compose(*B.inverse(counit_comp[b1]), *B.compose(beta, counit_comp[b0]));
    e.backward.mmap[beta] = lift(e.backward.omap[b0], e.backward.omap[b1], w);
  }
  // unit at a: unique morphism a -> f'(f a) with f(unit_a) = counit(f a)^-1
  e.unit = NatIso{identity_functor(f.src), compose(e.backward, f), {}};
  e.unit.component.resize(A.num_objects());
  for (int a = 0; a < A.num_objects(); ++a) {
    int fa = f.omap[a];
    e.unit.component[a] = lift(a, e.backward.omap[fa], *B.inverse(counit_comp[fa]));
  }
  e.counit = NatIso{compose(f, e.backward), identity_functor(f.tgt), {}};
  e.counit.component = counit_comp;
  return e;
}

// ---------------------------------------------------------------------------
// subcategories, coproducts

CatPtr full_subcategory(const FinCat& c, const std::vector<int>& objs) {
  FinCatBuilder b;
  std::set<int> keep(objs.begin(), objs.end());
  for (int o : objs) b.add_object(c.object(o));
  std::vector<int> kept_mors;
  for (int m = 0; m < c.num_morphisms(); ++m)
    if (keep.count(c.mor(m).src) && keep.count(c.mor(m).tgt)) {
      b.add_mor(c.mor(m).id, c.object(c.mor(m).src), c.object(c.mor(m).tgt));
      kept_mors.push_back(m);
    }
  for (int o : objs) b.set_identity(c.object(o), c.mor(c.identity_of(o)).id);
  for (int g : kept_mors)
    for (int f : kept_mors) {
      auto gf = c.compose(g, f);
      if (gf) b.set_compose(c.mor(g).id, c.mor(f).id, c.mor(*gf).id);
    }
  return b.build();
}

FinFunctor subcategory_inclusion(const CatPtr& sub, const CatPtr& whole) {
  FinFunctor f{sub, whole, {}, {}};
  f.omap.reserve(sub->num_objects());
  for (int o = 0; o < sub->num_objects(); ++o) {
    int w = whole->object_index(sub->object(o));
    if (w < 0) throw input_error("inclusion: object missing in ambient category");
    f.omap.push_back(w);
  }
  f.mmap.reserve(sub->num_morphisms());
  for (int m = 0; m < sub->num_morphisms(); ++m) {
    int w = whole->mor_index(sub->mor(m).id);
    if (w < 0) throw input_error("inclusion: morphism missing in ambient category");
    f.mmap.push_back(w);
  }
  return f;
}

CatPtr coproduct_cat(const FinCat& a, const FinCat& b) {
  bool clash = false;
  for (const auto& o : b.objects())
    if (a.object_index(o) >= 0) clash = true;
  for (const auto& m : b.morphisms())
    if (a.mor_index(m.id) >= 0) clash = true;
  auto lname = [&](const std::string& s) { return clash ? "l:" + s : s; };
  auto rname = [&](const std::string& s) { return clash ? "r:" + s : s; };
  FinCatBuilder bl;
  for (const auto& o : a.objects()) bl.add_object(lname(o));
  for (const auto& o : b.objects()) bl.add_object(rname(o));
  for (const auto& m : a.morphisms())
    bl.add_mor(lname(m.id), lname(a.object(m.src)), lname(a.object(m.tgt)));
  for (const auto& m : b.morphisms())
    bl.add_mor(rname(m.id), rname(b.object(m.src)), rname(b.object(m.tgt)));
  for (int o = 0; o < a.num_objects(); ++o)
    bl.set_identity(lname(a.object(o)), lname(a.mor(a.identity_of(o)).id));
  for (int o = 0; o < b.num_objects(); ++o)
    bl.set_identity(rname(b.object(o)), rname(b.mor(b.identity_of(o)).id));
  for (const auto& [k, gf] : a.compose_table())
    bl.set_compose(lname(a.mor((int)(k >> 32)).id), lname(a.mor((int)(k & 0xffffffffu)).id),
                   lname(a.mor(gf).id));
  for (const auto& [k, gf] : b.compose_table())
    bl.set_compose(rname(b.mor((int)(k >> 32)).id), rname(b.mor((int)(k & 0xffffffffu)).id),
                   rname(b.mor(gf).id));
  return bl.build();
}

// ---------------------------------------------------------------------------
// bounded isomorphism search

namespace {

// object invariant for pruning: (#out-by-target-count, #in, |End|, is-id-only)
std::vector<std::string> object_invariants(const FinCat& c) {
  std::vector<std::string> inv(c.num_objects());
  for (int o = 0; o < c.num_objects(); ++o) {
    std::vector<int> outs, ins;
    for (int p = 0; p < c.num_objects(); ++p) {
      outs.push_back((int)c.hom(o, p).size());
      ins.push_back((int)c.hom(p, o).size());
    }
    std::sort(outs.begin(), outs.end());
    std::sort(ins.begin(), ins.end());
    std::string s = "e" + std::to_string(c.hom(o, o).size());
    for (int x : outs) s += "," + std::to_string(x);
    s += ";";
    for (int x : ins) s += "," + std::to_string(x);
    inv[o] = s;
  }
  return inv;
}

bool extend_mor_iso(const FinCat& A, const FinCat& B, const std::vector<int>& omap,
                    FinFunctor& out) {
  // object bijection fixed; match hom-sets greedily with backtracking per hom-set
  out.omap = omap;
  out.mmap.assign(A.num_morphisms(), -1);
  std::vector<int> used(B.num_morphisms(), 0);
  // process morphisms hom-set by hom-set
  struct HomTask {
    std::vector<int> amors, bmors;
  };
  std::vector<HomTask> tasks;
  for (int a = 0; a < A.num_objects(); ++a)
    for (int b = 0; b < A.num_objects(); ++b) {
      const auto& ha = A.hom(a, b);
      const auto& hb = B.hom(omap[a], omap[b]);
      if (ha.size() != hb.size()) return false;
      if (!ha.empty()) tasks.push_back({ha, hb});
    }
  // assign identities first
  for (int o = 0; o < A.num_objects(); ++o) {
    out.mmap[A.identity_of(o)] = B.identity_of(omap[o]);
    used[B.identity_of(omap[o])] = 1;
  }
  std::function<bool(size_t, size_t)> rec = [&](size_t ti, size_t mi) -> bool {
    if (ti == tasks.size()) {
      // verify functoriality on full compose tables
      for (const auto& [k, gf] : A.compose_table()) {
        int g = (int)(k >> 32), f = (int)(k & 0xffffffffu);
        auto c = B.compose(out.mmap[g], out.mmap[f]);
        if (!c || *c != out.mmap[gf]) return false;
      }
      return true;
    }
    const auto& t = tasks[ti];
    if (mi == t.amors.size()) return rec(ti + 1, 0);
    int am = t.amors[mi];
    if (out.mmap[am] >= 0) return rec(ti, mi + 1);
    for (int bm : t.bmors) {
      if (used[bm]) continue;
      if (A.is_invertible(am) != B.is_invertible(bm)) continue;
      out.mmap[am] = bm;
      used[bm] = 1;
      // local composition consistency with already-assigned morphisms
      bool ok = true;
      for (int other = 0; other < A.num_morphisms() && ok; ++other) {
        if (out.mmap[other] < 0) continue;
        auto c1 = A.compose(am, other);
        if (c1 && out.mmap[*c1] >= 0) {
          auto d = B.compose(bm, out.mmap[other]);
          if (!d || *d != out.mmap[*c1]) ok = false;
        }
        auto c2 = A.compose(other, am);
        if (ok && c2 && out.mmap[*c2] >= 0) {
          auto d = B.compose(out.mmap[other], bm);
          if (!d || *d != out.mmap[*c2]) ok = false;
        }
      }
      if (ok && rec(ti, mi + 1)) return true;
      out.mmap[am] = -1;
      used[bm] = 0;
    }
    return false;
  };
  return rec(0, 0);
}

}  // namespace

std::optional<FinFunctor> find_isomorphism(const CatPtr& a, const CatPtr& b, const Guard& guard) {
  const FinCat& A = *a;
  const FinCat& B = *b;
  if (A.num_objects() != B.num_objects() || A.num_morphisms() != B.num_morphisms())
    return std::nullopt;
  FinFunctor out{a, b, {}, {}};
  // try the name-preserving map first (canonical-form pruning: pipelines often
  // produce literally equal presentations)
  {
    bool names_match = true;
    std::vector<int> omap(A.num_objects());
    for (int o = 0; o < A.num_objects() && names_match; ++o) {
      int bo = B.object_index(A.object(o));
      if (bo < 0) names_match = false;
      else omap[o] = bo;
    }
    if (names_match) {
      FinFunctor cand{a, b, {}, {}};
      if (extend_mor_iso(A, B, omap, cand)) return cand;
    }
  }
  auto inva = object_invariants(A);
  auto invb = object_invariants(B);
  {
    auto sa = inva, sb = invb;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return std::nullopt;
  }
  std::vector<int> omap(A.num_objects(), -1);
  std::vector<int> usedo(B.num_objects(), 0);
  std::function<bool(int)> rec = [&](int o) -> bool {
    guard.check("find_isomorphism");
    if (o == A.num_objects()) {
      FinFunctor cand{a, b, {}, {}};
      if (extend_mor_iso(A, B, omap, cand)) {
        out = cand;
        return true;
      }
      return false;
    }
    for (int bo = 0; bo < B.num_objects(); ++bo) {
      if (usedo[bo] || inva[o] != invb[bo]) continue;
      bool ok = true;
      for (int prev = 0; prev < o && ok; ++prev)
        if (A.hom(prev, o).size() != B.hom(omap[prev], bo).size() ||
            A.hom(o, prev).size() != B.hom(bo, omap[prev]).size())
          ok = false;
      if (!ok) continue;
      omap[o] = bo;
      usedo[bo] = 1;
      if (rec(o + 1)) return true;
      omap[o] = -1;
      usedo[bo] = 0;
    }
    return false;
  };
  if (rec(0)) return out;
  return std::nullopt;
}

CatPtr canonical_relabel(const FinCat& c, std::map<std::string, std::string>* obj_names,
                         std::map<std::string, std::string>* mor_names) {
  FinCatBuilder b;
  std::vector<std::string> on(c.num_objects()), mn(c.num_morphisms());
  for (int o = 0; o < c.num_objects(); ++o) on[o] = "o" + std::to_string(o);
  for (int m = 0; m < c.num_morphisms(); ++m) mn[m] = "m" + std::to_string(m);
  for (int o = 0; o < c.num_objects(); ++o) b.add_object(on[o]);
  for (int m = 0; m < c.num_morphisms(); ++m)
    b.add_mor(mn[m], on[c.mor(m).src], on[c.mor(m).tgt]);
  for (int o = 0; o < c.num_objects(); ++o) b.set_identity(on[o], mn[c.identity_of(o)]);
  for (const auto& [k, gf] : c.compose_table())
    b.set_compose(mn[(int)(k >> 32)], mn[(int)(k & 0xffffffffu)], mn[gf]);
  if (obj_names)
    for (int o = 0; o < c.num_objects(); ++o) (*obj_names)[c.object(o)] = on[o];
  if (mor_names)
    for (int m = 0; m < c.num_morphisms(); ++m) (*mor_names)[c.mor(m).id] = mn[m];
  return b.build();
}

}  // namespace wgcat

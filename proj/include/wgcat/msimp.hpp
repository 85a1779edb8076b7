#ifndef WGCAT_MSIMP_HPP
#define WGCAT_MSIMP_HPP

#include <functional>

#include "wgcat/fincat.hpp"

namespace wgcat {

// ---------------------------------------------------------------------------
// the truncated simplex category

/// monotone map [dom] -> [cod]; v[i] = image of i
struct Mono {
  int dom = 0, cod = 0;
  std::vector<int> v;
  bool operator==(const Mono&) const = default;
  bool operator<(const Mono& o) const {
    return std::tie(dom, cod, v) < std::tie(o.dom, o.cod, o.v);
  }
  bool is_identity() const;
};

Mono mono_id(int k);
Mono mono_face(int k, int i);    // delta_i : [k-1] -> [k]
Mono mono_deg(int k, int i);     // sigma_i : [k+1] -> [k]
Mono mono_vertex(int k, int j);  // [0] -> [k], 0 |-> j
Mono mono_edge(int k, int j);    // nu_j : [1] -> [k], 0 |-> j-1, 1 |-> j
Mono mono_compose(const Mono& g, const Mono& f);
std::vector<Mono> all_monos(int dom, int cod);
std::string mono_name(const Mono& m);

using MultiIdx = std::vector<int>;
std::string idx_name(const MultiIdx& k);
MultiIdx parse_idx(const std::string& s);

/// morphism of the truncated m-fold simplex category, one Mono per direction.
/// As a map of multi-simplicial objects it acts cell(cods) -> cell(doms).
using MultiMono = std::vector<Mono>;
MultiIdx mm_src_level(const MultiMono& u);  // cods: the level acted FROM
MultiIdx mm_tgt_level(const MultiMono& u);  // doms: the level acted TO
std::string mm_name(const MultiMono& u);
MultiMono mm_id(const MultiIdx& k);
MultiMono mm_compose(const MultiMono& g, const MultiMono& f);
/// all morphisms of the truncated index category from level `from` to `to`
std::vector<MultiMono> all_multimonos(const MultiIdx& to_level, const MultiIdx& from_level);

/// a generator: face d_i (level k -> k-1) or degeneracy s_i (k -> k+1) in one
/// direction, at a fixed source multi-index.
struct GenKey {
  MultiIdx at;  // source level
  int dir = 0;
  bool face = true;
  int i = 0;
  bool operator<(const GenKey& o) const {
    return std::tie(at, dir, face, i) < std::tie(o.at, o.dir, o.face, o.i);
  }
};
MultiIdx gen_target(const GenKey& g);
/// the underlying MultiMono of a generator
MultiMono gen_mono(const GenKey& g);

// ---------------------------------------------------------------------------
// value sorts

struct SetOps {
  using Cell = FinSet;
  using Map = SetFun;
  static Map compose_maps(const Map& g, const Map& f) { return wgcat::compose(g, f); }
  static Map identity(const Cell& c) { return identity_fun(c); }
  static bool map_equal(const Map& a, const Map& b) { return a.map == b.map; }
  static ValidationReport check_map(const Map& m, const Cell& dom, const Cell& cod);
  static size_t cell_size(const Cell& c) { return c.size(); }
};

struct CatOps {
  using Cell = CatPtr;
  using Map = FinFunctor;
  static Map compose_maps(const Map& g, const Map& f) { return wgcat::compose(g, f); }
  static Map identity(const Cell& c) { return identity_functor(c); }
  static bool map_equal(const Map& a, const Map& b) {
    return a.omap == b.omap && a.mmap == b.mmap;
  }
  static ValidationReport check_map(const Map& m, const Cell& dom, const Cell& cod);
  static size_t cell_size(const Cell& c) { return c->num_objects() + c->num_morphisms(); }
};

/// truncated m-simplicial object: cells over {0..trunc}^arity plus generator
/// actions. Composite actions are derived via the canonical epi-mono
/// factorization; validate() checks all generator-pair coherences, which pins
/// every simplicial identity expressible within the truncation.
template <class Ops>
class MultiTrunc {
 public:
  using Cell = typename Ops::Cell;
  using Map = typename Ops::Map;

  MultiTrunc() = default;
  MultiTrunc(int arity, int trunc) : arity_(arity), trunc_(trunc) {}

  int arity() const { return arity_; }
  int trunc() const { return trunc_; }

  const Cell& cell(const MultiIdx& k) const;
  bool has_cell(const MultiIdx& k) const { return cells_.count(k) > 0; }
  void set_cell(const MultiIdx& k, Cell c) { cells_[k] = std::move(c); }
  void set_action(const GenKey& g, Map m) { acts_[g] = std::move(m); }
  const Map& gen_action(const GenKey& g) const;

  /// action of an arbitrary index-category morphism (computed by factorization)
  Map act(const MultiMono& u) const;

  /// face/degeneracy shorthand in one direction
  Map face(const MultiIdx& at, int dir, int i) const { return gen_action({at, dir, true, i}); }
  Map deg(const MultiIdx& at, int dir, int i) const { return gen_action({at, dir, false, i}); }

  std::vector<MultiIdx> all_indices() const;
  std::vector<GenKey> all_generators() const;

  ValidationReport validate() const;

  const std::map<MultiIdx, Cell>& cells() const { return cells_; }
  const std::map<GenKey, Map>& actions() const { return acts_; }

 private:
  int arity_ = 0, trunc_ = 0;
  std::map<MultiIdx, Cell> cells_;
  std::map<GenKey, Map> acts_;
};

using SetTable = MultiTrunc<SetOps>;
using CatTable = MultiTrunc<CatOps>;

/// maps of tables: one component per multi-index, commuting with actions.
template <class Ops>
struct TableMap {
  std::map<MultiIdx, typename Ops::Map> comp;
  const typename Ops::Map& at(const MultiIdx& k) const {
    auto it = comp.find(k);
    if (it == comp.end()) throw input_error("TableMap: missing component at " + idx_name(k));
    return it->second;
  }
};
using SetTableMap = TableMap<SetOps>;
using CatTableMap = TableMap<CatOps>;

template <class Ops>
ValidationReport check_table_map(const TableMap<Ops>& f, const MultiTrunc<Ops>& src,
                                 const MultiTrunc<Ops>& tgt);

template <class Ops>
TableMap<Ops> compose_table_maps(const TableMap<Ops>& g, const TableMap<Ops>& f);
template <class Ops>
TableMap<Ops> identity_table_map(const MultiTrunc<Ops>& t);

// ---------------------------------------------------------------------------
// Segal maps

struct SetSegal {
  FinSet wide;                 // iterated binary pullback, left to right
  std::vector<SetFun> proj;    // k projections to X1
  SetFun mu;                   // X_k -> wide
  bool iso = false;
};

struct CatSegal {
  CatPtr wide;
  std::vector<FinFunctor> proj;
  FinFunctor mu;
  bool iso = false;  // bijective on objects and morphisms
};

/// wide pullback of k copies of x1 over x0 along src/tgt legs, elements are
/// left-associated chains
struct SetWide {
  FinSet apex;
  std::vector<SetFun> proj;
};
SetWide wide_pullback_set(const FinSet& x1, const SetFun& leg_src, const SetFun& leg_tgt, int k);
struct CatWide {
  CatPtr apex;
  std::vector<FinFunctor> proj;
};
CatWide wide_pullback_cat(const CatPtr& x1, const FinFunctor& leg_src, const FinFunctor& leg_tgt,
                          int k);

/// k-th Segal map of a 1-truncated-simplicial table in direction dir at index k.
SetSegal segal_map_set(const SetTable& x, const MultiIdx& at, int dir);
CatSegal segal_map_cat(const CatTable& x, const MultiIdx& at, int dir);

/// induced Segal map over a discretization gamma : X_(0 at dir) -> X0d
SetSegal induced_segal_map_set(const SetTable& x, const MultiIdx& at, int dir, const SetFun& gamma);
CatSegal induced_segal_map_cat(const CatTable& x, const MultiIdx& at, int dir,
                               const FinFunctor& gamma);

// ---------------------------------------------------------------------------
// nerve and reconstruction

SetTable nerve(const FinCat& c, int L);

struct ReconstructResult {
  CatPtr cat;              // null on failure
  int failing_k = -1;      // segal-failure(k)
  std::string error;
  explicit operator bool() const { return cat != nullptr; }
};
ReconstructResult reconstruct_category(const SetTable& x);

/// Lemma 2.3 a): all directional Segal maps of a set table are bijections
struct MultinerveReport {
  bool ok = true;
  MultiIdx at;
  int dir = -1;
};
MultinerveReport check_multinerve_property(const SetTable& t);

/// chain naming used by nerve/wide pullbacks
std::string chain_name(const std::vector<std::string>& parts);
std::vector<std::string> split_chain(const std::string& name, int k);

/// all multi-indices of the given arity within a truncation
std::vector<MultiIdx> box_indices_of(int arity, int trunc);

extern template class MultiTrunc<SetOps>;
extern template class MultiTrunc<CatOps>;

}  // namespace wgcat

#endif

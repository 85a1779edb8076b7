#ifndef WGCAT_FINCAT_HPP
#define WGCAT_FINCAT_HPP

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace wgcat {

/// Thrown on malformed input documents; the CLI maps it to exit code 2.
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when a depth/size/timeout guard trips; the CLI maps it to exit code 3.
struct guard_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Global search/size guard. Deadline from WGCAT_GUARD_MS (default 60000).
class Guard {
 public:
  Guard();
  explicit Guard(long long budget_ms);
  void check(const char* where) const;  // throws guard_error past deadline
  bool expired() const;
  long long budget_ms() const { return budget_ms_; }

 private:
  long long start_ms_ = 0;
  long long budget_ms_ = 0;
};

// ---------------------------------------------------------------------------
// finite sets and functions between them

using FinSet = std::vector<std::string>;  // kept sorted and duplicate-free

FinSet make_set(std::vector<std::string> elems);

struct SetFun {
  FinSet dom, cod;
  std::map<std::string, std::string> map;

  const std::string& at(const std::string& x) const;
  bool total() const;
  bool surjective() const;
  bool injective() const;
};

SetFun compose(const SetFun& g, const SetFun& f);
SetFun identity_fun(const FinSet& s);
bool set_iso(const SetFun& f);  // total bijection

// pullback of f: A -> C <- B : g, elements named "(a|b)"
struct SetPullback {
  FinSet apex;
  SetFun pr1, pr2;
};
SetPullback pullback_set(const SetFun& f, const SetFun& g);
std::string pair_name(const std::string& a, const std::string& b);
std::pair<std::string, std::string> split_pair(const std::string& p);

// ---------------------------------------------------------------------------
// finitely presented categories

struct Mor {
  std::string id;
  int src = -1, tgt = -1;
};

struct ValidationReport {
  bool ok = true;
  std::string code;    // "", or e.g. "malformed-table", "identity-law", "associativity"
  std::string detail;  // witnessing identifiers
  explicit operator bool() const { return ok; }
};

/// A finite category: explicit object/morphism lists and a total composition
/// table on composable pairs. Immutable after construction.
class FinCat {
 public:
  FinCat() = default;

  // raw-table constructor; performs well-formedness checks only (dangling ids),
  // categorical axioms are checked by check_category.
  static FinCat from_tables(std::vector<std::string> objects,
                            std::vector<std::array<std::string, 3>> morphisms,
                            std::map<std::string, std::string> identities,
                            std::vector<std::array<std::string, 3>> compose);

  int num_objects() const { return static_cast<int>(objects_.size()); }
  int num_morphisms() const { return static_cast<int>(mors_.size()); }
  const std::vector<std::string>& objects() const { return objects_; }
  const std::vector<Mor>& morphisms() const { return mors_; }
  const std::string& object(int i) const { return objects_[i]; }
  const Mor& mor(int i) const { return mors_[i]; }

  int object_index(const std::string& name) const;  // -1 when absent
  int mor_index(const std::string& name) const;
  int identity_of(int obj) const { return identity_[obj]; }
  bool is_identity(int m) const;

  // composition g after f; requires tgt(f) == src(g)
  std::optional<int> compose(int g, int f) const;

  // morphisms a -> b
  const std::vector<int>& hom(int a, int b) const;

  bool is_invertible(int m) const;
  std::optional<int> inverse(int m) const;
  bool is_discrete() const;  // identities only
  bool is_groupoid() const;

  const std::vector<std::pair<uint64_t, int>>& compose_table() const { return comp_; }

  bool operator==(const FinCat& o) const;

 private:
  std::vector<std::string> objects_;  // sorted
  std::vector<Mor> mors_;            // sorted by id
  std::vector<int> identity_;        // per object
  std::vector<std::pair<uint64_t, int>> comp_;  // key = g*N+f, sorted
  std::unordered_map<std::string, int> obj_idx_, mor_idx_;
  mutable std::map<std::pair<int, int>, std::vector<int>> homs_;
  mutable std::vector<int> inverse_;  // -2 unknown, -1 none, else index
  friend class FinCatBuilder;
};

using CatPtr = std::shared_ptr<const FinCat>;

/// Incremental builder used by all constructions.
class FinCatBuilder {
 public:
  void add_object(const std::string& name);
  void add_mor(const std::string& id, const std::string& src, const std::string& tgt);
  void set_identity(const std::string& obj, const std::string& mor);
  void set_compose(const std::string& g, const std::string& f, const std::string& gf);
  bool has_object(const std::string& name) const;
  bool has_mor(const std::string& id) const;
  CatPtr build() const;  // sorts, indexes, throws input_error on dangling refs

 private:
  std::vector<std::string> objects_;
  std::vector<std::array<std::string, 3>> mors_;
  std::map<std::string, std::string> ids_;
  std::vector<std::array<std::string, 3>> comp_;
  std::set<std::string> obj_seen_, mor_seen_;
};

/// check_category: pass, or the first violated axiom with witnesses.
ValidationReport check_category(const FinCat& c);

struct FinFunctor {
  CatPtr src, tgt;
  std::vector<int> omap;  // by source object index
  std::vector<int> mmap;  // by source morphism index

  int on_object(int o) const { return omap[o]; }
  int on_mor(int m) const { return mmap[m]; }
  const std::string& on_object_name(const std::string& o) const;
  const std::string& on_mor_name(const std::string& m) const;
};

FinFunctor identity_functor(const CatPtr& c);
FinFunctor compose(const FinFunctor& g, const FinFunctor& f);
ValidationReport check_functor(const FinFunctor& f);
bool functor_equal(const FinFunctor& f, const FinFunctor& g);
bool functor_is_iso(const FinFunctor& f);  // bijective on objects and morphisms
FinFunctor invert_iso(const FinFunctor& f);
/// true when the functor is literally surjective on objects.
bool surjective_on_objects(const FinFunctor& f);

struct NatIso {
  FinFunctor f, g;             // parallel functors
  std::vector<int> component;  // per source object: morphism f(a) -> g(a) in tgt
};

NatIso identity_nat_iso(const FinFunctor& f);
ValidationReport check_nat_iso(const NatIso& n);
NatIso invert_nat_iso(const NatIso& n);
/// vertical composite (second after first); requires first.g == second.f
NatIso vcompose(const NatIso& second, const NatIso& first);

struct AdjointEquivalence {
  FinFunctor forward;   // f : A -> B
  FinFunctor backward;  // f' : B -> A
  NatIso unit;          // Id_A => f' f
  NatIso counit;        // f f' => Id_B
};
ValidationReport check_adjoint_equivalence(const AdjointEquivalence& e);

struct EquivAnalysis {
  bool fully_faithful = false;
  bool essentially_surjective = false;
  bool equivalence = false;
  std::string detail;  // first offending pair, when any
};

EquivAnalysis equivalence_analysis(const FinFunctor& f);

/// Deterministic pseudo-inverse of an equivalence (min-identifier representative,
/// lexicographically least connecting isomorphism). Exact inverse on isos.
AdjointEquivalence pseudo_inverse(const FinFunctor& f);

// ---------------------------------------------------------------------------
// categorical operations

struct IsoClasses {
  FinSet classes;  // named by the least member
  SetFun assign;   // objects -> classes
};
IsoClasses p_iso_classes(const FinCat& c);
FinSet q_components(const FinCat& c);
/// quotient map object-set -> components (named by least member)
SetFun q_assign(const FinCat& c);

CatPtr d_discrete(const FinSet& s);

struct CatPullback {
  CatPtr apex;
  FinFunctor pr1, pr2;  // to src(f), src(g)
};
/// pullback of f: A -> C <- B : g; objects "(a|b)", morphisms "(m|n)".
CatPullback pullback_cat(const FinFunctor& f, const FinFunctor& g);
/// binary product (pullback over the terminal category)
CatPullback product_cat(const CatPtr& a, const CatPtr& b);

struct Decalage {
  CatPtr dec;      // objects = morphisms of c; morphisms = composable (f,h) pairs
  FinFunctor d1;   // codomain comparison Dec c -> c
};
Decalage decalage(const CatPtr& c);

bool is_isofibration(const FinFunctor& f);
bool is_equiv_relation(const FinCat& c);

/// equivalence-relation category A[f] for a surjection f : A -> B.
CatPtr hd_from_surjection(const FinSet& a, const SetFun& f);

/// full subcategory on the given object indices (object/morphism names kept)
CatPtr full_subcategory(const FinCat& c, const std::vector<int>& objs);
FinFunctor subcategory_inclusion(const CatPtr& sub, const CatPtr& whole);

/// disjoint union; names prefixed "l:" / "r:" only on collision
CatPtr coproduct_cat(const FinCat& a, const FinCat& b);

/// bounded isomorphism search (canonical invariants + identity-first probing);
/// nullopt = none found within bounds, throws guard_error on timeout.
std::optional<FinFunctor> find_isomorphism(const CatPtr& a, const CatPtr& b, const Guard& guard);

/// canonical relabel: objects "o0".. and morphisms "m0".. in a deterministic
/// order (sorted by current names); used at pipeline boundaries for bit-stable
/// compact output.
CatPtr canonical_relabel(const FinCat& c, std::map<std::string, std::string>* obj_names = nullptr,
                         std::map<std::string, std::string>* mor_names = nullptr);

uint64_t pack_pair(int g, int f);

}  // namespace wgcat

#endif

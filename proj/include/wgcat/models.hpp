#ifndef WGCAT_MODELS_HPP
#define WGCAT_MODELS_HPP

#include "wgcat/nfold.hpp"

namespace wgcat {

/// Truncated Tamsamani-style presentation: a J_n corner table without the
/// Segal isomorphism requirement, plus optional section annotations (FCat^n
/// documents). Sections are keyed by the corner path "k1,...,ks" (s = 0 gives
/// key "") and assign to every element of the corner's discretization an
/// object of the corner's bottom cell.
struct TamTrunc {
  int n = 1;
  CatTable t;  // arity n-1
  std::map<std::string, std::map<std::string, std::string>> sections;

  bool has_sections() const { return !sections.empty(); }
};

using TamMap = CatTableMap;

ValidationReport validate_tam(const TamTrunc& x);

TamTrunc tam_from_cat(const CatPtr& c);
TamTrunc tam_from_nfold(const NFold& x, int L);
/// requires all Segal maps to be isomorphisms
NFold nfold_from_tam(const TamTrunc& x, ValidationReport* why = nullptr);

/// outer-level slice (drops direction 1); sections restrict to paths "k,..."
TamTrunc tam_slice(const TamTrunc& x, int k);
NFold nfold_slice_as(const TamTrunc& x, int k, ValidationReport* why = nullptr);

// ---------------------------------------------------------------------------
// discretization of homotopically discrete structures

/// X^d data: the underlying set and the per-index object quotient; gamma is
/// the induced map of structures, the section its deterministic splitting.
struct HDData {
  bool ok = false;
  std::string error;
  FinSet set;                              // X^d
  std::map<MultiIdx, SetFun> obj_assign;   // cell objects -> set, per table index
};

/// iterated-p discretization of a corner table (any arity, including 0)
HDData discretize_table(const CatTable& t);

/// gamma as a table map into the discrete table on d.set
TamMap gamma_map(const CatTable& t, const HDData& d);
/// deterministic section (min-identifier representative), or the chosen one;
/// returns components from the discrete table into t
TamMap section_map(const CatTable& t, const HDData& d,
                   const std::map<std::string, std::string>* chosen = nullptr);
CatTable discrete_table(int arity, int trunc, const FinSet& s);

// ---------------------------------------------------------------------------
// truncation functors p and q

struct TruncResult {
  bool ok = false;
  std::string error;
  CatTable t;  // arity reduced by one
};
/// levelwise iso-classes (p) or connected components (q) of the cell direction
TruncResult truncate_p_table(const CatTable& t);
TruncResult truncate_q_table(const CatTable& t);

TamTrunc truncate_p_tam(const TamTrunc& x, ValidationReport* why = nullptr);
TamTrunc truncate_q_tam(const TamTrunc& x, ValidationReport* why = nullptr);
NFold truncate_p_nfold(const NFold& x, ValidationReport* why = nullptr);
NFold truncate_q_nfold(const NFold& x, ValidationReport* why = nullptr);

/// truncation applied to a map, with both truncated endpoints
struct TruncatedMap {
  bool ok = false;
  std::string error;
  TamTrunc src, tgt;
  TamMap map;
};
TruncatedMap truncate_map_p(const TamMap& f, const TamTrunc& X, const TamTrunc& Y);
TruncatedMap truncate_map_q(const TamMap& f, const TamTrunc& X, const TamTrunc& Y);

/// set-level iso-classes of a 1-fold (the recursion base)
FinSet truncate_p_base(const CatPtr& c);

/// one-step discretization d_n p^(n): the same-arity discrete-celled table
/// together with the unit map into it
struct OneStepDisc {
  bool ok = false;
  std::string error;
  CatTable table;
  TamMap unit;
};
OneStepDisc one_step_discretization(const CatTable& t);

/// all cells discrete and all actions bijective
bool is_discrete_table(const CatTable& t);

// ---------------------------------------------------------------------------
// hom fibers and induced Segal structures

struct HomFiber {
  TamTrunc fiber;  // one dimension lower
};
/// fiber of X_1 -> X_0^d x X_0^d over (a, b); requires n >= 2
HomFiber hom_object(const TamTrunc& x, const std::string& a, const std::string& b);
/// set-level variant for n = 1: morphisms between the two iso-classes
FinSet hom_object_base(const CatPtr& c, const std::string& a, const std::string& b);

/// the wide pullback of X_1 over the discretized X_0 at outer level k, with
/// the induced Segal map from the level-k slice
struct InducedSegal {
  TamTrunc wide;
  TamMap mu;
};
InducedSegal induced_segal_structure(const TamTrunc& x, int k, const HDData& x0d);

// ---------------------------------------------------------------------------
// model membership reports

struct Clause {
  std::string tag;
  bool pass = true;
  std::string path;    // index/fiber path into the structure
  std::string detail;
};

struct ModelReport {
  std::string model;
  int n = 0;
  int trunc = 0;
  bool pass = true;
  std::vector<Clause> clauses;
  void add(const std::string& tag, bool ok, const std::string& path = "",
           const std::string& detail = "") {
    clauses.push_back({tag, ok, path, detail});
    pass = pass && ok;
  }
};

// ---------------------------------------------------------------------------
// n-equivalence certificates

struct EquivCert {
  int n = 0;
  bool pass = false;
  std::string fail_path;
  std::optional<EquivAnalysis> base;  // n = 1
  std::vector<std::tuple<std::string, std::string, std::shared_ptr<EquivCert>>> fibers;
  std::shared_ptr<EquivCert> truncation;
};

/// decide whether f : X -> Y is an n-equivalence (Def 3.2/3.3 recursion)
EquivCert is_n_equivalence(const TamMap& f, const TamTrunc& X, const TamTrunc& Y, int n);
/// replay a stored certificate against the same map without re-deriving it
bool replay_certificate(const EquivCert& c, const TamMap& f, const TamTrunc& X,
                        const TamTrunc& Y);

// ---------------------------------------------------------------------------
// checkers

struct HDWitness {
  ModelReport report;
  HDData data;     // X^d, quotients
  TamMap gamma;    // X -> X^d
  TamMap section;  // X^d -> X (deterministic)
};

ModelReport is_hd(const NFold& x);
HDWitness hd_witness(const NFold& x);

ModelReport is_catwg(const NFold& x);
ModelReport is_tawg(const TamTrunc& x);
ModelReport is_tam(const TamTrunc& x);
ModelReport is_lta(const TamTrunc& x);
ModelReport is_ftawg(const TamTrunc& x);
ModelReport is_groupoidal_nfold(const NFold& x);
ModelReport is_groupoidal_tam(const TamTrunc& x);

/// fills in deterministic sections for every corner of a weakly globular
/// object (used when promoting constructions into FCat^n documents)
std::map<std::string, std::map<std::string, std::string>> derive_sections(const CatTable& t,
                                                                          int n);

}  // namespace wgcat

#endif

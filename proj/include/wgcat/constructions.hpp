#ifndef WGCAT_CONSTRUCTIONS_HPP
#define WGCAT_CONSTRUCTIONS_HPP

#include "wgcat/models.hpp"

namespace wgcat {

/// X(f0): replace level 0 of x by y0 along f0 : y0 -> x_0, with the
/// comparison projection V(X) : X(f0) -> X.
struct ShiftOut {
  NFold x;
  NFoldMap v;
};
ShiftOut shift(const NFold& x, const CatTable& y0, const NFoldMap& f0);

/// shift applied to a morphism: g : X -> X', g0 : Y0 -> Y0' commuting with
/// the f0 legs; returns X(f0) -> X'(f0')
NFoldMap shift_on_map(const ShiftOut& sx, const ShiftOut& sy, const NFoldMap& g,
                      const TamMap& g0);

FinFunctor dec_on_map(const FinFunctor& g);

/// V_n : Cat^n_hd -> Cat^n_hd with f_X : V_n X -> X (decalage resolution)
struct VOut {
  NFold vx;
  NFoldMap fx;
};
VOut resolve_hd_V(const NFold& x);
/// V_n applied to a morphism g : X -> Y in Cat^n_hd
NFoldMap v_on_map(const NFold& x, const NFold& y, const NFoldMap& g);

/// F_n : Cat^n_wg -> Cat^n_wg with V_X : F_n X -> X
struct FOut {
  NFold fx;
  NFoldMap vx;
};
FOut resolve_wg_F(const NFold& x);
NFoldMap f_on_map(const NFold& x, const NFold& y, const NFoldMap& g);

/// G_n : Cat^n_wg -> FCat^n with the comparison G_n X -> X in Ta^n_wg
struct GOut {
  TamTrunc gx;   // carries derived section annotations
  TamMap cmp;    // G_n X -> X (level expansion of x as the target)
  TamTrunc x_tam;
};
GOut to_fcat_G(const NFold& x, int depth_guard = 4);
TamMap g_on_map(const NFold& x, const NFold& y, const NFoldMap& g);

/// iterated connected-components functor q^(2,n) with per-index chain maps
/// into the nerve of the resulting category
struct QTower {
  bool ok = false;
  std::string error;
  CatPtr cat;                             // q^(2,n) X
  std::map<MultiIdx, SetFun> to_chain;    // cell objects -> N(cat)_{k1}
};
QTower q_tower(const CatTable& t);
/// induced functor between the q-tower categories of two tables
FinFunctor q_tower_on_map(const QTower& qx, const QTower& qy, const CatTable& tx,
                          const CatTable& ty, const NFoldMap& g);

/// per-index isofibration + surjectivity check (clause a of Prop 4.6)
bool levelwise_isofib_surjective(const NFoldMap& f);

/// comparison-certified construction bundle
struct ConstructionTrace {
  bool ok = false;
  std::string error;
  std::string functor;
  NFold output;       // v/f outputs
  TamTrunc output_tam;  // g output
  TamMap comparison;
  EquivCert cert;
};
ConstructionTrace trace_v(const NFold& x);
ConstructionTrace trace_f(const NFold& x);
ConstructionTrace trace_g(const NFold& x);

}  // namespace wgcat

#endif

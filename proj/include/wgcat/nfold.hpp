#ifndef WGCAT_NFOLD_HPP
#define WGCAT_NFOLD_HPP

#include "wgcat/msimp.hpp"

namespace wgcat {

/// n-fold category stored as its J_n corner table: arity n-1 (directions
/// 1..n-1, dim 0 outermost), cells carry direction n. Valid iff the table
/// satisfies the simplicial identities, every directional Segal map is an
/// isomorphism and every cell is a category.
struct NFold {
  int n = 1;
  CatTable t;  // arity n-1

  const CatPtr& cell(const MultiIdx& k) const { return t.cell(k); }
};

/// maps between n-fold categories (componentwise functors on corner tables)
using NFoldMap = CatTableMap;

ValidationReport validate_nfold(const NFold& x);

/// directional Segal isomorphisms only (cells and identities assumed checked)
ValidationReport check_segal_isos(const CatTable& t);

NFold nfold_from_cat(const CatPtr& c);  // n = 1
NFold from_levels(const CatTable& t, ValidationReport* why = nullptr);

/// corner table, extended to truncation L by derived wide pullbacks
CatTable corner_J(const NFold& x, int L);

/// extends a Segal cat table (or set table) to a higher truncation
CatTable extend_cat_table(const CatTable& t, int L);
SetTable extend_set_table(const SetTable& t, int L);

/// full n-dimensional set-valued multinerve at truncation L; index position
/// i-1 carries direction i (position n-1 = the cell direction)
SetTable multinerve(const NFold& x, int L);

/// reassemble an n-fold category from its multinerve (inverse of multinerve)
NFold nfold_from_multinerve(const SetTable& m, ValidationReport* why = nullptr);

/// re-present as an internal category in direction k: direction k moves to
/// the cell position, the rest keep their relative order. xi_swap(x, n) = x.
NFold xi_swap(const NFold& x, int k);
NFold xi_swap_inverse(const NFold& x, int k);

/// one level of the direction-k nerve plus the generator actions between levels
struct DirNerve {
  std::vector<NFold> levels;          // 0..L
  std::map<GenKey, NFoldMap> maps;    // arity-1 generator keys {{k},0,face,i}
};
DirNerve nerve_dir(const NFold& x, int k, int L);

/// discrete inclusion in a new innermost direction n
NFold discrete_inclusion(const NFold& x);
bool is_discrete_nfold(const NFold& x);
bool is_discrete_in_dir(const NFold& x, int k);

/// discrete n-fold category on a set
NFold discrete_nfold(int n, const FinSet& s);

/// slice of the outer simplicial direction (direction 1, dim 0) at level k;
/// for n = 1 this is invalid (use the FinCat interface instead).
NFold outer_slice(const NFold& x, int k);
CatTable table_slice(const CatTable& t, int k);
/// outer-direction generator action as a map of slices
NFoldMap outer_action(const CatTable& t, bool face, int level, int i);

/// pullback of f : A -> C <- B : g computed levelwise and reassembled
struct NFoldPullback {
  NFold apex;
  NFoldMap pr1, pr2;
};
NFoldPullback pullback_nfold(const NFold& a, const NFold& b, const NFold& c, const NFoldMap& f,
                             const NFoldMap& g);

ValidationReport check_nfold_map(const NFoldMap& f, const NFold& src, const NFold& tgt);

}  // namespace wgcat

#endif

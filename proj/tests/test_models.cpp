#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "wgcat/models.hpp"

using namespace wgcat;

namespace {

TamMap identity_tam_map(const TamTrunc& x) {
  TamMap m;
  for (const auto& [k, c] : x.t.cells()) m.comp[k] = identity_functor(c);
  return m;
}

}  // namespace

TEST_CASE("truncate_p at the base: p of Ef is the 2-element set") {
  CHECK(truncate_p_base(fx::ef()).size() == 2);
  CHECK(truncate_p_base(d_discrete(make_set({"a", "b"}))) == make_set({"a", "b"}));
}

TEST_CASE("truncate_p of the constant-Ef double category is the discrete 2-set nerve") {
  auto x = fx::constant_double(fx::ef());
  REQUIRE(validate_nfold(x).ok);
  auto p = truncate_p_nfold(x);
  CHECK(p.n == 1);
  CHECK(p.t.cell({})->num_objects() == 2);
  CHECK(p.t.cell({})->is_discrete());
  // q agrees with p on groupoidal input
  auto q = truncate_q_nfold(x);
  CHECK(*q.t.cell({}) == *p.t.cell({}));
}

TEST_CASE("p and q differ on the walking arrow") {
  auto x = fx::constant_double(fx::walking_arrow());
  REQUIRE(validate_nfold(x).ok);
  auto p = truncate_p_nfold(x);
  auto q = truncate_q_nfold(x);
  CHECK(p.t.cell({})->num_objects() == 2);
  CHECK(q.t.cell({})->num_objects() == 1);
}

TEST_CASE("discretize_table on Ef-based structures") {
  auto sq = fx::squares_of(fx::ef());
  auto d = discretize_table(sq.t);
  REQUIRE(d.ok);
  CHECK(d.set.size() == 2);
  // gamma and section assemble into a witness
  auto w = hd_witness(sq);
  CHECK(w.report.pass);
  CHECK(w.data.set.size() == 2);
}

TEST_CASE("is_hd") {
  CHECK(is_hd(nfold_from_cat(fx::ef())).pass);
  CHECK_FALSE(is_hd(nfold_from_cat(fx::walking_arrow())).pass);
  CHECK_FALSE(is_hd(nfold_from_cat(fx::z2())).pass);
  CHECK(is_hd(fx::squares_of(fx::ef())).pass);
  CHECK(is_hd(discrete_nfold(2, make_set({"a", "b"}))).pass);
  // discrete witness: X^d is itself
  auto w = hd_witness(discrete_nfold(2, make_set({"a", "b"})));
  CHECK(w.data.set == make_set({"a", "b"}));
}

TEST_CASE("is_catwg: homotopically discrete and constant examples pass") {
  CHECK(is_catwg(fx::squares_of(fx::ef())).pass);       // Cat^2_hd subset Cat^2_wg
  CHECK(is_catwg(fx::constant_double(fx::ef())).pass);  // weakly globular, not globular
  CHECK(is_catwg(discrete_nfold(2, make_set({"s"}))).pass);
  // a non-hd level 0 (the walking arrow) breaks weak globularity
  CHECK_FALSE(is_catwg(fx::constant_double(fx::walking_arrow())).pass);
}

TEST_CASE("is_catwg fails on a Z/2 level 0") {
  auto x = fx::constant_double(fx::z2());
  REQUIRE(validate_nfold(x).ok);
  auto r = is_catwg(x);
  CHECK_FALSE(r.pass);
  bool wg_a_failed = false;
  for (const auto& c : r.clauses)
    if (c.tag == "wg.a" && !c.pass) wg_a_failed = true;
  CHECK(wg_a_failed);
}

TEST_CASE("every is_catwg pass level-expands to an is_tawg pass (Remark 3.3)") {
  for (auto x : {fx::squares_of(fx::ef()), fx::constant_double(fx::ef()),
                 discrete_inclusion(nfold_from_cat(fx::ef()))}) {
    REQUIRE(is_catwg(x).pass);
    auto t = tam_from_nfold(x, 3);
    CHECK(is_tawg(t).pass);
  }
}

TEST_CASE("is_tam: globularity separates the constant-Ef instance") {
  auto strict = tam_from_nfold(discrete_inclusion(nfold_from_cat(fx::ef())), 3);
  auto r1 = is_tam(strict);
  CHECK(r1.pass);
  auto weak = tam_from_nfold(fx::constant_double(fx::ef()), 3);
  auto r2 = is_tam(weak);
  CHECK_FALSE(r2.pass);
  bool disc_failed = false;
  for (const auto& c : r2.clauses)
    if (c.tag == "tam.disc" && !c.pass) disc_failed = true;
  CHECK(disc_failed);
  // n=1: any category
  CHECK(is_tam(tam_from_cat(fx::walking_arrow())).pass);
}

TEST_CASE("hom_object") {
  // discrete: X(a,a) = point, X(a,b) empty
  auto d = tam_from_nfold(discrete_nfold(2, make_set({"a", "b"})), 2);
  auto faa = hom_object(d, "a", "a");
  CHECK(faa.fiber.t.cell({})->num_objects() == 1);
  auto fab = hom_object(d, "a", "b");
  CHECK(fab.fiber.t.cell({})->num_objects() == 0);
  // base case: walking arrow with X0^d = {0,1}
  CHECK(hom_object_base(fx::walking_arrow(), "0", "1") == make_set({"a"}));
  CHECK(hom_object_base(fx::walking_arrow(), "1", "0").empty());
  // X_1 decomposes as the disjoint union of the fibers (Lemma, section 7)
  auto sq = tam_from_nfold(fx::squares_of(fx::ef()), 2);
  auto x0d = discretize_table(table_slice(sq.t, 0));
  size_t total = 0;
  for (const auto& a : x0d.set)
    for (const auto& b : x0d.set) total += hom_object(sq, a, b).fiber.t.cell({})->num_objects();
  CHECK(total == (size_t)sq.t.cell({1})->num_objects());
}

TEST_CASE("is_n_equivalence: identity and discretization maps pass") {
  auto sq = tam_from_nfold(fx::squares_of(fx::ef()), 2);
  auto cert = is_n_equivalence(identity_tam_map(sq), sq, sq, 2);
  CHECK(cert.pass);

  // gamma: X -> X^d is a 2-equivalence for homotopically discrete X
  auto w = hd_witness(fx::squares_of(fx::ef()));
  REQUIRE(w.report.pass);
  TamTrunc xd;
  xd.n = 2;
  xd.t = discrete_table(1, 2, w.data.set);
  auto cert2 = is_n_equivalence(w.gamma, sq, xd, 2);
  CHECK(cert2.pass);
  CHECK(replay_certificate(cert2, w.gamma, sq, xd));
}

TEST_CASE("is_n_equivalence fails when a fiber breaks") {
  // collapse constant-Ef to the point: the (1,3) fiber is empty upstairs but
  // the point's single fiber is not
  auto x = tam_from_nfold(fx::constant_double(fx::ef()), 2);
  auto y = tam_from_nfold(discrete_nfold(2, make_set({"*"})), 2);
  TamMap f;
  for (const auto& [k, c] : x.t.cells()) {
    FinFunctor ff{c, y.t.cell(k), {}, {}};
    ff.omap.assign(c->num_objects(), 0);
    ff.mmap.assign(c->num_morphisms(), 0);
    f.comp[k] = ff;
  }
  auto cert = is_n_equivalence(f, x, y, 2);
  CHECK_FALSE(cert.pass);
  CHECK(cert.fail_path.find("fiber") != std::string::npos);
}

TEST_CASE("is_lta agrees with is_tawg at n = 2") {
  auto t = tam_from_nfold(fx::constant_double(fx::ef()), 3);
  auto a = is_tawg(t);
  auto b = is_lta(t);
  CHECK(a.pass == b.pass);
}

TEST_CASE("is_ftawg requires and verifies section annotations") {
  auto x = tam_from_nfold(fx::constant_double(fx::ef()), 3);
  // without sections: fail
  auto r0 = is_ftawg(x);
  CHECK_FALSE(r0.pass);
  // derived sections: pass
  x.sections = derive_sections(x.t, x.n);
  auto r1 = is_ftawg(x);
  CHECK(r1.pass);
  // a mismatched section: fail with the offending square/section
  auto bad = x;
  bad.sections[""]["1"] = "2";  // still in the class of 1, so gamma.section = id holds...
  auto r2 = is_ftawg(bad);
  // "2" has class "1" so the section splits gamma; naturality still holds for
  // constant structures, so force a genuinely broken choice instead:
  auto worse = x;
  worse.sections[""]["1"] = "3";  // wrong class
  auto r3 = is_ftawg(worse);
  CHECK_FALSE(r3.pass);
  (void)r2;
  // n=1 vacuous
  CHECK(is_ftawg(tam_from_cat(fx::ef())).pass);
}

TEST_CASE("is_groupoidal") {
  CHECK(is_groupoidal_nfold(fx::squares_of(fx::ef())).pass);
  CHECK(is_groupoidal_nfold(fx::constant_double(fx::z2())).pass);
  CHECK_FALSE(is_groupoidal_nfold(fx::constant_double(fx::walking_arrow())).pass);
  CHECK(is_groupoidal_tam(tam_from_nfold(fx::constant_double(fx::ef()), 2)).pass);
  // every Cat^n_hd object is groupoidal
  CHECK(is_groupoidal_nfold(discrete_nfold(2, make_set({"a"}))).pass);
}

TEST_CASE("one_step_discretization unit lands in a discrete structure") {
  auto sq = fx::squares_of(fx::ef());
  auto osd = one_step_discretization(sq.t);
  REQUIRE(osd.ok);
  CHECK(is_discrete_table(osd.table));
  auto chk = check_table_map<CatOps>(osd.unit, sq.t, osd.table);
  CHECK(chk.ok);
}

TEST_CASE("truncate_map_p produces a map between truncations") {
  auto sq = tam_from_nfold(fx::squares_of(fx::ef()), 2);
  auto tm = truncate_map_p(identity_tam_map(sq), sq, sq);
  REQUIRE(tm.ok);
  auto chk = check_table_map<CatOps>(tm.map, tm.src.t, tm.tgt.t);
  CHECK(chk.ok);
}

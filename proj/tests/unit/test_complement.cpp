#include "doctest.h"

#include "lcpat/complement.hpp"
#include "lcpat/errors.hpp"
#include "lcpat/oracle.hpp"
#include "lcpat/theory.hpp"
#include "lcpat/unification.hpp"
#include "testkit.hpp"

using namespace lcpat;
using testkit::keys;
using testkit::Sigma1;

namespace {

std::vector<Term> parse_all(const Sigma1& s, std::initializer_list<const char*> texts) {
  std::vector<Term> out;
  for (auto t : texts) out.push_back(s.t(t));
  return out;
}

std::vector<Term> co(const Sigma1& s, const ConstructorUniverse& cu, const char* text) {
  FreshVars fresh;
  Term u = s.t(text);
  fresh.reserve(u);
  return cocterm(u, cu, fresh);
}

}  // namespace

TEST_CASE("cocterm over a finite integer universe") {
  Sigma1 s;
  ConstructorUniverse cu(s.sig);
  cu.with_finite_ints({0, 1});
  CHECK(keys(co(s, cu, "0")) == keys(parse_all(s, {"1"})));
  CHECK(keys(co(s, cu, "1")) == keys(parse_all(s, {"0"})));
  CHECK(keys(co(s, cu, "nil")) == keys(parse_all(s, {"cons(x, xs)"})));
  auto c = co(s, cu, "cons(0, cons(z3, zs3))");
  CHECK(c.size() == 3);
  CHECK(keys(c) == keys(parse_all(s, {"nil", "cons(1, ys)", "cons(0, nil)"})));
}

TEST_CASE("cocterm of a variable is empty") {
  Sigma1 s;
  ConstructorUniverse cu(s.sig);
  FreshVars fresh;
  CHECK(cocterm(Term::variable("xs", s.nil->result_sort), cu, fresh).empty());
  CHECK(cocterm(Term::variable("y", Sort::Int()), cu, fresh).empty());
}

TEST_CASE("cocterm errors") {
  Sigma1 s;
  ConstructorUniverse cu(s.sig);
  FreshVars fresh;
  CHECK_THROWS_AS(cocterm(s.t("cons(0, nil)"), cu, fresh), InfiniteComplement);
  CHECK_THROWS_AS(cocterm(s.t("f(nil, y)"), cu, fresh), NotConstructorTerm);
}

TEST_CASE("cocterm partitions the ground terms of its sort") {
  testkit::PropSig ps;
  Sigma1 s;
  ConstructorUniverse cu(s.sig);
  cu.with_finite_ints({0, 1});
  FiniteFragment frag{0, 1, 4};
  GroundOracle oracle(s.sig, frag);
  Sort list = s.nil->result_sort;
  std::set<std::string> all;
  for (const auto& g : oracle.ground(list, 4)) all.insert(canonical_key(g));
  for (const char* text : {"nil", "cons(x, xs)", "cons(0, xs)", "cons(x, cons(1, nil))",
                           "cons(1, cons(z, cons(0, zs)))"}) {
    Term u = s.t(text);
    FreshVars fresh;
    fresh.reserve(u);
    auto cs = cocterm(u, cu, fresh);
    std::set<std::string> covered;
    auto add = [&](const Term& t) {
      for (const auto& k : oracle.ginst(make_constrained(t, theory::top()))) {
        CHECK_MESSAGE(covered.insert(k).second, "overlap at " << k << " for " << text);
      }
    };
    add(u);
    for (const auto& c : cs) {
      CHECK(c.is_app());
      CHECK(is_linear(c));
      CHECK(c.sort() == list);
      CHECK(height(c) <= height(u));
      add(c);
    }
    CHECK(covered == all);
  }
}

TEST_CASE("cosubst over a finite integer universe") {
  Sigma1 s;
  ConstructorUniverse cu(s.sig);
  cu.with_finite_ints({0, 1});
  Term pat = s.t("f(xs, y)");
  Substitution sigma;
  sigma.bind(pat.args()[0].var(), Term::apply(s.nil));
  sigma.bind(pat.args()[1].var(), theory::num(0));
  FreshVars fresh;
  fresh.reserve(pat);
  auto rhos = cosubst(sigma, cu, fresh);
  REQUIRE(rhos.size() == 3);
  std::vector<Term> images;
  for (const auto& r : rhos) images.push_back(apply(pat, r));
  CHECK(keys(images) ==
        keys(parse_all(s, {"f(nil, 1)", "f(cons(x, xs1), 0)", "f(cons(x, xs1), 1)"})));

  Substitution renaming;
  renaming.bind(pat.args()[0].var(), Term::variable("ys", s.nil->result_sort));
  CHECK(cosubst(renaming, cu, fresh).empty());
  CHECK(cosubst(Substitution{}, cu, fresh).empty());
}

TEST_CASE("copattern examples") {
  Sigma1 s;
  ConstructorUniverse cu(s.sig);
  cu.with_finite_ints({0, 1});
  FreshVars fresh;
  Term pat = s.t("f(xs, y)");
  fresh.reserve(pat);
  auto m = unify(pat, s.t("f(nil, 0)"));
  REQUIRE(m);
  auto cp = copattern(pat, *m, cu, fresh);
  CHECK(keys(cp) == keys(parse_all(s, {"f(nil, 1)", "f(cons(a, b), 0)", "f(cons(a, b), 1)"})));
  for (const auto& u : cp) CHECK(strictly_more_general(pat, u));

  Substitution ren;
  ren.bind(pat.args()[1].var(), Term::variable("y2", Sort::Int()));
  CHECK(copattern(pat, ren, cu, fresh).empty());
  Term fnil = s.t("f(nil, y)");
  Substitution ren2;
  ren2.bind(fnil.args()[1].var(), Term::variable("y3", Sort::Int()));
  CHECK(copattern(fnil, ren2, cu, fresh).empty());
}

TEST_CASE("cosubst complements tσ inside GInst(t)") {
  testkit::PropSig ps;
  ConstructorUniverse cu(ps.sig);
  FiniteFragment frag{-1, 1, 4};
  GroundOracle oracle(ps.sig, frag);
  testkit::Gen gen(ps, 3);
  testkit::GenOptions o;
  o.constraint = false;
  for (int i = 0; i < 60; ++i) {
    gen.set_prefix("a");
    Term t = gen.pattern(o).term;
    gen.set_prefix("b");
    Term u = gen.pattern(o).term;
    auto m = unify(t, u);
    if (!m) continue;
    Substitution sigma = m->restrict(vars(t));
    FreshVars fresh;
    fresh.reserve(t);
    fresh.reserve(u);
    std::set<std::string> covered;
    bool disjoint = true;
    auto add = [&](const Term& x) {
      for (const auto& k : oracle.ginst(make_constrained(x, theory::top())))
        disjoint = covered.insert(k).second && disjoint;
    };
    add(apply(t, sigma));
    for (const auto& r : cosubst(sigma, cu, fresh)) {
      Term tr = apply(t, r);
      if (!(tr == apply(t, sigma))) add(tr);
    }
    CHECK(disjoint);
    CHECK(covered == oracle.ginst(make_constrained(t, theory::top())));
  }
}

#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "lcpat/constrained.hpp"
#include "lcpat/io.hpp"
#include "lcpat/lctrs.hpp"
#include "lcpat/oracle.hpp"
#include "lcpat/signature.hpp"

namespace testkit {

using namespace lcpat;

std::string slurp(const std::string& path);
std::string fixture(const std::string& name);

/// Σ1: nil, cons : int * list -> list, f : list * int -> int (defined).
struct Sigma1 {
  Signature sig;
  Symbol nil, cons, f;
  Sigma1();
  Term t(const std::string& text) const { return parse_term(text, sig); }
  ConstrainedTerm ct(const std::string& text) const { return parse_constrained(text, sig); }
};

/// Lctrs parsed from a fixture file; aborts the test run on parse errors.
Lctrs load_fixture(const std::string& name);

/// Two term sorts for randomized properties: nat (z, s) and list (nil, cons : int * list),
/// defined g : list * nat * int -> int and h : nat * int -> int.
struct PropSig {
  Signature sig;
  Symbol z, s, nil, cons, g, h;
  PropSig();
};

struct GenOptions {
  unsigned max_depth = 2;
  bool linear = true;
  bool values = false;  // allow integer literals inside the term
  bool constraint = true;
};

/// Deterministic generator of random terms, constraints and constrained patterns.
class Gen {
 public:
  Gen(const PropSig& ps, std::uint64_t seed, std::string prefix = "v")
      : ps_(ps), rng_(seed), prefix_(std::move(prefix)) {}

  Term term(const Sort& sort, unsigned depth, const GenOptions& o);
  Term constraint_over(const std::vector<Var>& ints);
  /// Pattern rooted at g (or h with small probability when `mixed`).
  ConstrainedTerm pattern(const GenOptions& o, bool mixed = false);
  void set_prefix(std::string p) { prefix_ = std::move(p); }
  std::mt19937_64& rng() { return rng_; }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

 private:
  Term atom(const std::vector<Var>& ints);
  Var fresh(const Sort& s);

  const PropSig& ps_;
  std::mt19937_64 rng_;
  std::string prefix_;
  unsigned counter_ = 0;
  std::vector<Var> used_;
};

/// Canonical keys of a term list, as a set.
std::set<std::string> keys(const std::vector<Term>& ts);

}  // namespace testkit

#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lcpat/constrained.hpp"
#include "lcpat/signature.hpp"

namespace lcpat {

/// Finite slice of the ground constructor terms: integers in [int_lo, int_hi], heights up to
/// max_height, booleans in full.
struct FiniteFragment {
  std::int64_t int_lo = -2;
  std::int64_t int_hi = 2;
  unsigned max_height = 4;
};

/// Throws Error when the range is empty or max_height is 0.
void check_fragment(const FiniteFragment& frag);

/// Brute-force enumerator of ground constructor instances inside one fragment.
class GroundOracle {
 public:
  GroundOracle(const Signature& sig, FiniteFragment frag);

  /// Ground constructor terms of `sort` with height <= h inside the fragment.
  const std::vector<Term>& ground(const Sort& sort, unsigned h);

  /// Keys of the ground instances of `ct` that lie in the fragment. Constraint variables
  /// outside the term are read existentially over the fragment values.
  std::set<std::string> ginst(const ConstrainedTerm& ct);
  std::set<std::string> ginst(const ConstrainedSet& cs);

  /// The ground instances themselves.
  std::vector<Term> ginst_terms(const ConstrainedTerm& ct);

  const FiniteFragment& fragment() const { return frag_; }

 private:
  template <class F>
  void for_each_instance(const ConstrainedTerm& ct, F&& visit);

  const Signature& sig_;
  FiniteFragment frag_;
  std::map<std::pair<std::string, unsigned>, std::vector<Term>> cache_;
};

/// Ground constructor terms of `sort` in the fragment (height <= max_height).
std::vector<Term> enumerate_ground(const Sort& sort, const FiniteFragment& frag,
                                   const Signature& sig);

std::vector<Term> ginst(const ConstrainedTerm& ct, const FiniteFragment& frag,
                        const Signature& sig);

/// GInst(D) = GInst(P) \ GInst(Q) on the fragment.
bool check_diff_semantics(const ConstrainedSet& p, const ConstrainedSet& q,
                          const ConstrainedSet& d, const FiniteFragment& frag,
                          const Signature& sig);

/// Every ground pattern f(g1..gn) of the fragment for f ranging over the defined symbols.
std::vector<Term> ground_patterns(const Signature& sig, const FiniteFragment& frag);

}  // namespace lcpat

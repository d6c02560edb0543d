#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "lcpat/constrained.hpp"
#include "lcpat/diagnostics.hpp"
#include "lcpat/difference.hpp"
#include "lcpat/lctrs.hpp"
#include "lcpat/quasi_reducibility.hpp"

namespace lcpat {

struct LctrsParse {
  std::optional<Lctrs> lctrs;  // absent when any error was reported
  std::vector<Diagnostic> diagnostics;
};

/// Parses the SORTS / SIGNATURE / RULES format. Symbols heading a rule lhs, or named in
/// `extra_defined`, are defined; all others are constructors.
LctrsParse parse_lctrs(std::string_view text, const std::set<std::string>& extra_defined = {});

struct PatternParse {
  std::optional<ConstrainedSet> patterns;
  std::vector<Diagnostic> diagnostics;
};

/// Parses `term [constraint] ;` items (brackets optional) over `sig`.
PatternParse parse_patterns(std::string_view text, const Signature& sig);

/// Root identifiers of the items of a pattern file, without resolving them.
std::set<std::string> pattern_roots(std::string_view text);

/// Parses a single term or constraint; throws Error with the first diagnostic.
Term parse_term(std::string_view text, const Signature& sig);
ConstrainedTerm parse_constrained(std::string_view text, const Signature& sig);

/// `term [constraint]` after normalization, avoiding the names of declared symbols.
std::string print_constrained_pattern(const ConstrainedTerm& ct, const Signature* sig = nullptr);

/// Declarations and rules in the input format.
std::string print_lctrs(const Lctrs& r);

std::string export_json(const QrVerdict& v, const Signature* sig = nullptr);
std::string export_json(const DiffOutcome& d, const Signature* sig = nullptr);

}  // namespace lcpat

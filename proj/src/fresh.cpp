#include "lcpat/fresh.hpp"

#include <cctype>

namespace lcpat {

std::string base_name(const std::string& name) {
  auto us = name.rfind('_');
  if (us == std::string::npos || us == 0 || us + 1 == name.size()) return name;
  for (std::size_t i = us + 1; i < name.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return name;
  return name.substr(0, us);
}

void FreshVars::reserve(const Term& t) {
  for (const auto& v : vars(t)) used_.insert(v.name);
}

void FreshVars::reserve(const VarSet& xs) {
  for (const auto& v : xs) used_.insert(v.name);
}

Var FreshVars::fresh(const Sort& sort, const std::string& hint) {
  std::string base = base_name(hint.empty() ? std::string("x") : hint);
  for (;;) {
    std::string name = base + "_" + std::to_string(++counter_);
    if (used_.insert(name).second) return Var{name, sort};
  }
}

}  // namespace lcpat

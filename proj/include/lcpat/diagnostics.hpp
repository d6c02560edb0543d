#pragma once

#include <cstddef>
#include <optional>
#include <string>

namespace lcpat {

/// Region of an input text; lines and columns are 1-based, offsets are byte offsets.
struct SourceSpan {
  std::size_t line = 1;
  std::size_t column = 1;
  std::size_t begin = 0;
  std::size_t end = 0;
};

enum class Severity { Error, Warning };

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string code;  // stable identifier, e.g. "non-left-linear"
  std::string message;
  std::optional<SourceSpan> span;
};

/// `line:col: error[code]: message` (position omitted when there is no span).
std::string to_string(const Diagnostic& d);

}  // namespace lcpat

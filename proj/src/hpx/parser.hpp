#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "hpx/model.hpp"

namespace hpx {

struct SourceSpan {
  int line = 1;
  int column = 1;
};

enum class ParseErrorKind {
  lexical,
  unbalanced_parentheses,
  unknown_keyword,
  duplicate_action,
  unexpected_token,
  multiple_observations,
};

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, SourceSpan span, const std::string& message);

  ParseErrorKind kind() const { return kind_; }
  SourceSpan span() const { return span_; }
  /// Message without the `line:col:` prefix.
  const std::string& detail() const { return detail_; }

 private:
  ParseErrorKind kind_;
  SourceSpan span_;
  std::string detail_;
};

/// Parses the s-expression domain dialect.
///
/// Accepted forms (all optional, any order, optionally wrapped in
/// `(define (domain NAME) ...)`):
///
///     (:fluents f1 f2 ...)
///     (:action a [:executable C | executable C] [:effect E]* [:observe f])
///     (:init l1 l2 (oneof l ...) (:static l ...))
///     (oneof l1 l2 ...)
///     (:goal [weak|strong] C)
///
/// where a literal is `f`, `-f`, `¬f` or `(not f)`, a condition C is a
/// literal or `(and l ...)`, and an effect E is `when C l`, `(when C l)`,
/// a bare literal, or `(and E ...)`. Fluents are declared on first use.
/// `;` starts a comment that runs to the end of the line.
///
/// Throws ParseError.
PlanningDomain parse_domain(std::string_view text);

/// Inverse of parse_domain for well-formed domains.
std::string render_domain(const PlanningDomain& d);

}  // namespace hpx

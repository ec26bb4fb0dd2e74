#ifndef REACHPROBE_EXPRESSION_HPP
#define REACHPROBE_EXPRESSION_HPP

#include <memory>
#include <string>
#include <string_view>

#include "reachprobe/geometry.hpp"

namespace reachprobe {

/// Scalar field F: R^N -> R parsed from text, used for implicit domains
/// {F < 0}.
///
/// Grammar (whitespace and newlines are insignificant):
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := ('+' | '-') unary | power
///   power   := primary ('^' unary)?          right associative
///   primary := number | 'pi' | variable | call | '(' expr ')'
///   call    := name '(' expr (',' expr)* ')'
/// Variables: x, y, z (coordinates 1..3) or x1 .. xN.
/// Functions: sqrt, exp, log, sin, cos (one argument) and smin(a, b, k), the
/// smooth minimum -k log(exp(-a/k) + exp(-b/k)) with k > 0.
///
/// Parse errors throw ParseError with the 1-based line and column.
class Expression {
 public:
  static Expression parse(std::string_view source, int dim);

  double value(const Point& x) const;
  /// Value and exact gradient (forward-mode dual numbers).
  double value_and_gradient(const Point& x, Point& gradient) const;

  int dim() const noexcept { return dim_; }
  const std::string& source() const noexcept { return source_; }

  struct Node;

 private:
  Expression(std::shared_ptr<const Node> root, int dim, std::string source);
  std::shared_ptr<const Node> root_;
  int dim_;
  std::string source_;
};

}  // namespace reachprobe

#endif  // REACHPROBE_EXPRESSION_HPP

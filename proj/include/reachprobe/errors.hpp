#ifndef REACHPROBE_ERRORS_HPP
#define REACHPROBE_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace reachprobe {

// Bad arguments, malformed files, violated preconditions. The CLI maps this
// family to exit code 2.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Expression or file parse failure with a 1-based source position.
class ParseError : public InvalidInput {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : InvalidInput(what + " at line " + std::to_string(line) + ", column " +
                     std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Too few probe lines crossed the boundary.
class SamplingFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A vertical line of the local-graph cylinder crossed the boundary zero or
// several times; the caller must shrink rho and/or h.
class CylinderTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A supporting-ball radius larger than what the boundary samples allow.
class CertificateInfeasible : public std::runtime_error {
 public:
  CertificateInfeasible(const std::string& what, std::size_t violating_sample)
      : std::runtime_error(what), violating_sample_(violating_sample) {}

  std::size_t violating_sample() const noexcept { return violating_sample_; }

 private:
  std::size_t violating_sample_;
};

// The parabola envelope failed, so no delta0 certificate is issued.
class CertificateRefused : public std::runtime_error {
 public:
  CertificateRefused(const std::string& what, std::size_t worst_node, double worst_margin)
      : std::runtime_error(what), worst_node_(worst_node), worst_margin_(worst_margin) {}

  std::size_t worst_node() const noexcept { return worst_node_; }
  double worst_margin() const noexcept { return worst_margin_; }

 private:
  std::size_t worst_node_;
  double worst_margin_;
};

}  // namespace reachprobe

#endif  // REACHPROBE_ERRORS_HPP

#include "reachprobe/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <type_traits>
#include <vector>

#include "reachprobe/errors.hpp"

namespace reachprobe {

enum class Op { number, variable, add, sub, mul, div, pow, neg, sqrt, exp, log, sin, cos, smin };

struct Expression::Node {
  Op op = Op::number;
  double number = 0.0;
  int variable = 0;
  std::vector<std::unique_ptr<Node>> kids;
};

namespace {

using Node = Expression::Node;

// Value with gradient for forward-mode differentiation.
struct Dual {
  double v;
  Point d;
};

double val(double a) { return a; }
double val(const Dual& a) { return a.v; }

template <class T> T constant(double c, int dim);
template <> double constant<double>(double c, int) { return c; }
template <> Dual constant<Dual>(double c, int dim) { return {c, Point::Zero(dim)}; }

template <class T> T variable(const Point& x, int i);
template <> double variable<double>(const Point& x, int i) { return x[i]; }
template <> Dual variable<Dual>(const Point& x, int i) {
  Dual out{x[i], Point::Zero(x.size())};
  out.d[i] = 1.0;
  return out;
}

Dual operator+(const Dual& a, const Dual& b) { return {a.v + b.v, a.d + b.d}; }
Dual operator-(const Dual& a, const Dual& b) { return {a.v - b.v, a.d - b.d}; }
Dual operator-(const Dual& a) { return {-a.v, -a.d}; }
Dual operator*(const Dual& a, const Dual& b) { return {a.v * b.v, b.v * a.d + a.v * b.d}; }
Dual operator/(const Dual& a, const Dual& b) {
  return {a.v / b.v, (b.v * a.d - a.v * b.d) / (b.v * b.v)};
}
// Chain rule for a unary map with value f and derivative df at a.v.
Dual apply(const Dual& a, double f, double df) { return {f, df * a.d}; }

double f_sqrt(double a) { return std::sqrt(a); }
Dual f_sqrt(const Dual& a) {
  const double s = std::sqrt(a.v);
  return apply(a, s, 0.5 / s);
}
double f_exp(double a) { return std::exp(a); }
Dual f_exp(const Dual& a) {
  const double e = std::exp(a.v);
  return apply(a, e, e);
}
double f_log(double a) { return std::log(a); }
Dual f_log(const Dual& a) { return apply(a, std::log(a.v), 1.0 / a.v); }
double f_sin(double a) { return std::sin(a); }
Dual f_sin(const Dual& a) { return apply(a, std::sin(a.v), std::cos(a.v)); }
double f_cos(double a) { return std::cos(a); }
Dual f_cos(const Dual& a) { return apply(a, std::cos(a.v), -std::sin(a.v)); }
double f_abs(double a) { return std::abs(a); }
Dual f_abs(const Dual& a) { return a.v < 0.0 ? -a : a; }

double f_pow(double a, double b) { return std::pow(a, b); }
Dual f_pow(const Dual& a, const Dual& b) {
  const double f = std::pow(a.v, b.v);
  Point d = (b.v == 0.0 ? 0.0 : b.v * std::pow(a.v, b.v - 1.0)) * a.d;
  if (b.d.cwiseAbs().maxCoeff() != 0.0) {
    // Exponent depends on x: d(a^b) includes a^b log(a) db.
    d += f * std::log(a.v) * b.d;
  }
  return {f, std::move(d)};
}

template <class T>
T f_smin(const T& a, const T& b, const T& k) {
  if (!(val(k) > 0.0)) throw InvalidInput("smin: smoothing width k must be positive");
  const T& lo = val(a) <= val(b) ? a : b;
  const T diff = f_abs(a - b);
  const int dim = [&] {
    if constexpr (std::is_same_v<T, Dual>) return static_cast<int>(a.d.size());
    else return 0;
  }();
  const T one = constant<T>(1.0, dim);
  return lo - k * f_log(one + f_exp(-(diff / k)));
}

template <class T>
T eval(const Node& n, const Point& x) {
  const int dim = static_cast<int>(x.size());
  switch (n.op) {
    case Op::number: return constant<T>(n.number, dim);
    case Op::variable: return variable<T>(x, n.variable);
    case Op::add: return eval<T>(*n.kids[0], x) + eval<T>(*n.kids[1], x);
    case Op::sub: return eval<T>(*n.kids[0], x) - eval<T>(*n.kids[1], x);
    case Op::mul: return eval<T>(*n.kids[0], x) * eval<T>(*n.kids[1], x);
    case Op::div: return eval<T>(*n.kids[0], x) / eval<T>(*n.kids[1], x);
    case Op::pow: return f_pow(eval<T>(*n.kids[0], x), eval<T>(*n.kids[1], x));
    case Op::neg: return -eval<T>(*n.kids[0], x);
    case Op::sqrt: return f_sqrt(eval<T>(*n.kids[0], x));
    case Op::exp: return f_exp(eval<T>(*n.kids[0], x));
    case Op::log: return f_log(eval<T>(*n.kids[0], x));
    case Op::sin: return f_sin(eval<T>(*n.kids[0], x));
    case Op::cos: return f_cos(eval<T>(*n.kids[0], x));
    case Op::smin:
      return f_smin<T>(eval<T>(*n.kids[0], x), eval<T>(*n.kids[1], x), eval<T>(*n.kids[2], x));
  }
  return constant<T>(0.0, dim);
}

class Parser {
 public:
  Parser(std::string_view src, int dim) : src_(src), dim_(dim) {}

  std::unique_ptr<Node> parse() {
    skip_space();
    if (at_end()) fail("empty expression");
    auto root = expr();
    skip_space();
    if (!at_end()) fail(std::string("unexpected '") + peek() + "'");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < pos_ && i < src_.size(); ++i) {
      if (src_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("expression: " + msg, line, col);
  }

  bool at_end() const { return pos_ >= src_.size(); }
  char peek() const { return at_end() ? '\0' : src_[pos_]; }
  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_space();
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  static std::unique_ptr<Node> make(Op op, std::unique_ptr<Node> a = nullptr,
                                    std::unique_ptr<Node> b = nullptr) {
    auto n = std::make_unique<Node>();
    n->op = op;
    if (a) n->kids.push_back(std::move(a));
    if (b) n->kids.push_back(std::move(b));
    return n;
  }

  std::unique_ptr<Node> expr() {
    auto lhs = term();
    for (;;) {
      if (accept('+')) lhs = make(Op::add, std::move(lhs), term());
      else if (accept('-')) lhs = make(Op::sub, std::move(lhs), term());
      else return lhs;
    }
  }

  std::unique_ptr<Node> term() {
    auto lhs = unary();
    for (;;) {
      if (accept('*')) lhs = make(Op::mul, std::move(lhs), unary());
      else if (accept('/')) lhs = make(Op::div, std::move(lhs), unary());
      else return lhs;
    }
  }

  std::unique_ptr<Node> unary() {
    if (accept('-')) return make(Op::neg, unary());
    if (accept('+')) return unary();
    return power();
  }

  std::unique_ptr<Node> power() {
    auto base = primary();
    if (accept('^')) return make(Op::pow, std::move(base), unary());
    return base;
  }

  std::unique_ptr<Node> primary() {
    skip_space();
    if (at_end()) fail("unexpected end of expression");
    const char c = peek();
    if (c == '(') {
      ++pos_;
      auto inner = expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail(std::string("unexpected '") + c + "'");
  }

  std::unique_ptr<Node> number() {
    const std::size_t start = pos_;
    const std::string tail(src_.substr(pos_));
    char* end = nullptr;
    const double v = std::strtod(tail.c_str(), &end);
    if (end == tail.c_str()) fail("malformed number");
    pos_ += static_cast<std::size_t>(end - tail.c_str());
    if (!std::isfinite(v)) {
      pos_ = start;
      fail("number out of range");
    }
    auto n = make(Op::number);
    n->number = v;
    return n;
  }

  std::unique_ptr<Node> identifier() {
    const std::size_t start = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
    const std::string name(src_.substr(start, pos_ - start));

    skip_space();
    if (peek() == '(') {
      ++pos_;
      std::vector<std::unique_ptr<Node>> args;
      args.push_back(expr());
      while (accept(',')) args.push_back(expr());
      expect(')');
      return call(name, std::move(args), start);
    }
    if (name == "pi") {
      auto n = make(Op::number);
      n->number = M_PI;
      return n;
    }
    int index = -1;
    if (name == "x") index = 0;
    else if (name == "y") index = 1;
    else if (name == "z") index = 2;
    else if (name.size() > 1 && name[0] == 'x' &&
             name.find_first_not_of("0123456789", 1) == std::string::npos) {
      index = std::stoi(name.substr(1)) - 1;
    }
    if (index < 0) {
      pos_ = start;
      fail("unknown identifier '" + name + "'");
    }
    if (index >= dim_) {
      pos_ = start;
      fail("variable '" + name + "' exceeds dimension " + std::to_string(dim_));
    }
    auto n = make(Op::variable);
    n->variable = index;
    return n;
  }

  std::unique_ptr<Node> call(const std::string& name, std::vector<std::unique_ptr<Node>> args,
                             std::size_t start) {
    struct Fn {
      const char* name;
      Op op;
      std::size_t arity;
    };
    static const Fn table[] = {{"sqrt", Op::sqrt, 1}, {"exp", Op::exp, 1}, {"log", Op::log, 1},
                               {"sin", Op::sin, 1},   {"cos", Op::cos, 1}, {"smin", Op::smin, 3}};
    for (const auto& fn : table) {
      if (name != fn.name) continue;
      if (args.size() != fn.arity) {
        pos_ = start;
        fail(name + " takes " + std::to_string(fn.arity) + " argument(s)");
      }
      auto n = make(fn.op);
      n->kids = std::move(args);
      return n;
    }
    pos_ = start;
    fail("unknown function '" + name + "'");
  }

  std::string_view src_;
  int dim_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression::Expression(std::shared_ptr<const Node> root, int dim, std::string source)
    : root_(std::move(root)), dim_(dim), source_(std::move(source)) {}

Expression Expression::parse(std::string_view source, int dim) {
  if (dim < 1) throw InvalidInput("expression dimension must be positive");
  Parser parser(source, dim);
  std::shared_ptr<const Node> root = parser.parse();
  return Expression(std::move(root), dim, std::string(source));
}

double Expression::value(const Point& x) const {
  if (x.size() != dim_) throw InvalidInput("expression: point dimension mismatch");
  return eval<double>(*root_, x);
}

double Expression::value_and_gradient(const Point& x, Point& gradient) const {
  if (x.size() != dim_) throw InvalidInput("expression: point dimension mismatch");
  Dual d = eval<Dual>(*root_, x);
  gradient = std::move(d.d);
  return d.v;
}

}  // namespace reachprobe

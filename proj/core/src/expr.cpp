#include "lw/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <utility>
#include <vector>

namespace lw {
namespace detail {

enum class Kind { Const, Var, Neg, Call, Add, Sub, Mul, Div, Pow };

enum class Fn { Sin, Cos, Tan, Sinh, Cosh, Tanh, Exp, Ln, Sqrt };

struct ExprNode {
  Kind kind;
  double value = 0.0;  // Const
  Fn fn = Fn::Sin;     // Call
  std::shared_ptr<const ExprNode> lhs;
  std::shared_ptr<const ExprNode> rhs;
};

using NodePtr = std::shared_ptr<const ExprNode>;

namespace {

NodePtr make_const(double v) {
  auto n = std::make_shared<ExprNode>();
  n->kind = Kind::Const;
  n->value = v;
  return n;
}

NodePtr make_var() {
  auto n = std::make_shared<ExprNode>();
  n->kind = Kind::Var;
  return n;
}

NodePtr make_unary(Kind k, NodePtr child) {
  auto n = std::make_shared<ExprNode>();
  n->kind = k;
  n->lhs = std::move(child);
  return n;
}

NodePtr make_call(Fn fn, NodePtr child) {
  auto n = std::make_shared<ExprNode>();
  n->kind = Kind::Call;
  n->fn = fn;
  n->lhs = std::move(child);
  return n;
}

NodePtr make_binary(Kind k, NodePtr l, NodePtr r) {
  auto n = std::make_shared<ExprNode>();
  n->kind = k;
  n->lhs = std::move(l);
  n->rhs = std::move(r);
  return n;
}

bool is_const(const NodePtr& n, double v) {
  return n->kind == Kind::Const && n->value == v;
}

// Light simplification only: 0*x -> 0, x*0 -> 0, 1*x -> x, x*1 -> x.
NodePtr s_mul(NodePtr l, NodePtr r) {
  if (is_const(l, 0.0) || is_const(r, 0.0)) return make_const(0.0);
  if (is_const(l, 1.0)) return r;
  if (is_const(r, 1.0)) return l;
  return make_binary(Kind::Mul, std::move(l), std::move(r));
}

NodePtr s_add(NodePtr l, NodePtr r) {
  if (is_const(l, 0.0)) return r;
  if (is_const(r, 0.0)) return l;
  return make_binary(Kind::Add, std::move(l), std::move(r));
}

NodePtr s_sub(NodePtr l, NodePtr r) {
  if (is_const(r, 0.0)) return l;
  return make_binary(Kind::Sub, std::move(l), std::move(r));
}

NodePtr s_neg(NodePtr x) {
  if (is_const(x, 0.0)) return x;
  return make_unary(Kind::Neg, std::move(x));
}

NodePtr s_div(NodePtr l, NodePtr r) {
  if (is_const(l, 0.0)) return l;
  if (is_const(r, 1.0)) return l;
  return make_binary(Kind::Div, std::move(l), std::move(r));
}

struct FnName {
  const char* name;
  Fn fn;
};

const FnName kFunctions[] = {
    {"sin", Fn::Sin},   {"cos", Fn::Cos},   {"tan", Fn::Tan},
    {"sinh", Fn::Sinh}, {"cosh", Fn::Cosh}, {"tanh", Fn::Tanh},
    {"exp", Fn::Exp},   {"ln", Fn::Ln},     {"sqrt", Fn::Sqrt},
};

bool lookup_fn(const std::string& name, Fn* out) {
  for (const auto& f : kFunctions) {
    if (name == f.name) {
      *out = f.fn;
      return true;
    }
  }
  return false;
}

const char* fn_name(Fn fn) {
  for (const auto& f : kFunctions) {
    if (f.fn == fn) return f.name;
  }
  return "?";
}

// Recursive-descent parser over raw bytes; offsets refer to the input string.
class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  NodePtr run(std::string* var_name) {
    skip_ws();
    if (pos_ >= text_.size()) throw SyntaxError("empty expression", pos_);
    NodePtr e = parse_sum();
    skip_ws();
    if (pos_ < text_.size()) throw SyntaxError("trailing input", pos_);
    *var_name = var_name_;
    return e;
  }

 private:
  NodePtr parse_sum() {
    NodePtr e = parse_term();
    for (;;) {
      skip_ws();
      if (peek() == '+') {
        ++pos_;
        e = make_binary(Kind::Add, e, parse_term());
      } else if (peek() == '-') {
        ++pos_;
        e = make_binary(Kind::Sub, e, parse_term());
      } else {
        return e;
      }
    }
  }

  NodePtr parse_term() {
    NodePtr e = parse_unary();
    for (;;) {
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        e = make_binary(Kind::Mul, e, parse_unary());
      } else if (peek() == '/') {
        ++pos_;
        e = make_binary(Kind::Div, e, parse_unary());
      } else {
        return e;
      }
    }
  }

  NodePtr parse_unary() {
    skip_ws();
    if (peek() == '-') {
      ++pos_;
      return make_unary(Kind::Neg, parse_unary());
    }
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_atom();
    skip_ws();
    if (peek() == '^') {
      ++pos_;
      // Right-associative; exponent may carry a unary minus.
      return make_binary(Kind::Pow, base, parse_unary());
    }
    return base;
  }

  NodePtr parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) throw SyntaxError("unexpected end of input", pos_);
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = parse_sum();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      return parse_number();
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      return parse_identifier();
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", pos_);
  }

  NodePtr parse_number() {
    std::size_t start = pos_;
    const char* begin = text_.c_str() + start;
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin) throw SyntaxError("malformed number", start);
    pos_ = start + static_cast<std::size_t>(end - begin);
    return make_const(v);
  }

  NodePtr parse_identifier() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    std::string name = text_.substr(start, pos_ - start);
    skip_ws();
    if (peek() == '(') {
      Fn fn;
      if (!lookup_fn(name, &fn)) {
        throw SyntaxError("unknown function '" + name + "'", start);
      }
      ++pos_;
      NodePtr arg = parse_sum();
      expect(')');
      return make_call(fn, arg);
    }
    Fn fn;
    if (lookup_fn(name, &fn)) {
      throw SyntaxError("function name '" + name + "' used without arguments", start);
    }
    if (var_name_.empty()) {
      var_name_ = name;
    } else if (var_name_ != name) {
      throw SyntaxError("second free variable '" + name + "' (already using '" + var_name_ + "')",
                        start);
    }
    return make_var();
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c) {
      throw SyntaxError(std::string("expected '") + c + "'", pos_);
    }
    ++pos_;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  std::string var_name_;
};

void check_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw DomainError(std::string("non-finite result in ") + what);
  }
}

double eval_pow(double base, double expo) {
  double r = std::round(expo);
  if (expo == r && std::fabs(expo) <= 1024.0) {
    // Integer exponent: exponentiation by squaring, any base.
    long long n = static_cast<long long>(r);
    bool inv = n < 0;
    unsigned long long k = inv ? static_cast<unsigned long long>(-n)
                               : static_cast<unsigned long long>(n);
    double acc = 1.0, p = base;
    while (k) {
      if (k & 1ULL) acc *= p;
      p *= p;
      k >>= 1;
    }
    double out = inv ? 1.0 / acc : acc;
    check_finite(out, "power");
    return out;
  }
  if (base <= 0.0) {
    throw DomainError("fractional power of a non-positive base");
  }
  double out = std::pow(base, expo);
  check_finite(out, "power");
  return out;
}

double eval_node(const ExprNode& n, double t) {
  switch (n.kind) {
    case Kind::Const:
      return n.value;
    case Kind::Var:
      return t;
    case Kind::Neg:
      return -eval_node(*n.lhs, t);
    case Kind::Add: {
      double v = eval_node(*n.lhs, t) + eval_node(*n.rhs, t);
      check_finite(v, "addition");
      return v;
    }
    case Kind::Sub: {
      double v = eval_node(*n.lhs, t) - eval_node(*n.rhs, t);
      check_finite(v, "subtraction");
      return v;
    }
    case Kind::Mul: {
      double v = eval_node(*n.lhs, t) * eval_node(*n.rhs, t);
      check_finite(v, "multiplication");
      return v;
    }
    case Kind::Div: {
      double v = eval_node(*n.lhs, t) / eval_node(*n.rhs, t);
      check_finite(v, "division");
      return v;
    }
    case Kind::Pow:
      return eval_pow(eval_node(*n.lhs, t), eval_node(*n.rhs, t));
    case Kind::Call: {
      double x = eval_node(*n.lhs, t);
      double v = 0.0;
      switch (n.fn) {
        case Fn::Sin: v = std::sin(x); break;
        case Fn::Cos: v = std::cos(x); break;
        case Fn::Tan: v = std::tan(x); break;
        case Fn::Sinh: v = std::sinh(x); break;
        case Fn::Cosh: v = std::cosh(x); break;
        case Fn::Tanh: v = std::tanh(x); break;
        case Fn::Exp: v = std::exp(x); break;
        case Fn::Ln:
          if (x <= 0.0) throw DomainError("ln of a non-positive number");
          v = std::log(x);
          break;
        case Fn::Sqrt:
          if (x < 0.0) throw DomainError("sqrt of a negative number");
          v = std::sqrt(x);
          break;
      }
      check_finite(v, fn_name(n.fn));
      return v;
    }
  }
  throw DomainError("corrupt expression node");
}

NodePtr diff_node(const NodePtr& n);

NodePtr diff_call(const NodePtr& n) {
  const NodePtr& x = n->lhs;
  NodePtr dx = diff_node(x);
  switch (n->fn) {
    case Fn::Sin:
      return s_mul(make_call(Fn::Cos, x), dx);
    case Fn::Cos:
      return s_neg(s_mul(make_call(Fn::Sin, x), dx));
    case Fn::Tan:
      return s_div(dx, make_binary(Kind::Pow, make_call(Fn::Cos, x), make_const(2.0)));
    case Fn::Sinh:
      return s_mul(make_call(Fn::Cosh, x), dx);
    case Fn::Cosh:
      return s_mul(make_call(Fn::Sinh, x), dx);
    case Fn::Tanh:
      return s_div(dx, make_binary(Kind::Pow, make_call(Fn::Cosh, x), make_const(2.0)));
    case Fn::Exp:
      return s_mul(make_call(Fn::Exp, x), dx);
    case Fn::Ln:
      return s_div(dx, x);
    case Fn::Sqrt:
      return s_div(dx, s_mul(make_const(2.0), make_call(Fn::Sqrt, x)));
  }
  throw DomainError("corrupt expression node");
}

NodePtr diff_node(const NodePtr& n) {
  switch (n->kind) {
    case Kind::Const:
      return make_const(0.0);
    case Kind::Var:
      return make_const(1.0);
    case Kind::Neg:
      return s_neg(diff_node(n->lhs));
    case Kind::Add:
      return s_add(diff_node(n->lhs), diff_node(n->rhs));
    case Kind::Sub:
      return s_sub(diff_node(n->lhs), diff_node(n->rhs));
    case Kind::Mul:
      return s_add(s_mul(diff_node(n->lhs), n->rhs), s_mul(n->lhs, diff_node(n->rhs)));
    case Kind::Div:
      return s_div(s_sub(s_mul(diff_node(n->lhs), n->rhs), s_mul(n->lhs, diff_node(n->rhs))),
                   make_binary(Kind::Pow, n->rhs, make_const(2.0)));
    case Kind::Pow: {
      if (n->rhs->kind == Kind::Const) {
        double c = n->rhs->value;
        NodePtr base_pow = make_binary(Kind::Pow, n->lhs, make_const(c - 1.0));
        return s_mul(s_mul(make_const(c), base_pow), diff_node(n->lhs));
      }
      // General rule: (b^e)' = b^e * (e' ln b + e b'/b).
      NodePtr term1 = s_mul(diff_node(n->rhs), make_call(Fn::Ln, n->lhs));
      NodePtr term2 = s_div(s_mul(n->rhs, diff_node(n->lhs)), n->lhs);
      return s_mul(n, s_add(term1, term2));
    }
    case Kind::Call:
      return diff_call(n);
  }
  throw DomainError("corrupt expression node");
}

int precedence(Kind k) {
  switch (k) {
    case Kind::Add:
    case Kind::Sub:
      return 1;
    case Kind::Mul:
    case Kind::Div:
      return 2;
    case Kind::Neg:
      return 3;
    case Kind::Pow:
      return 4;
    default:
      return 5;
  }
}

void print_node(const ExprNode& n, const std::string& var, int parent_prec, bool rhs_of_sub,
                std::string* out) {
  int prec = precedence(n.kind);
  bool need_parens = prec < parent_prec || (rhs_of_sub && prec == parent_prec);
  if (need_parens) out->push_back('(');
  switch (n.kind) {
    case Kind::Const: {
      char buf[40];
      if (n.value < 0.0) {
        std::snprintf(buf, sizeof(buf), "(%.17g)", n.value);
      } else {
        std::snprintf(buf, sizeof(buf), "%.17g", n.value);
      }
      *out += buf;
      break;
    }
    case Kind::Var:
      *out += var.empty() ? "u" : var;
      break;
    case Kind::Neg:
      *out += "-";
      print_node(*n.lhs, var, prec + 1, false, out);
      break;
    case Kind::Add:
      print_node(*n.lhs, var, prec, false, out);
      *out += "+";
      print_node(*n.rhs, var, prec, true, out);
      break;
    case Kind::Sub:
      print_node(*n.lhs, var, prec, false, out);
      *out += "-";
      print_node(*n.rhs, var, prec, true, out);
      break;
    case Kind::Mul:
      print_node(*n.lhs, var, prec, false, out);
      *out += "*";
      print_node(*n.rhs, var, prec, true, out);
      break;
    case Kind::Div:
      print_node(*n.lhs, var, prec, false, out);
      *out += "/";
      print_node(*n.rhs, var, prec, true, out);
      break;
    case Kind::Pow:
      print_node(*n.lhs, var, prec + 1, false, out);
      *out += "^";
      print_node(*n.rhs, var, prec, false, out);
      break;
    case Kind::Call:
      *out += fn_name(n.fn);
      *out += "(";
      print_node(*n.lhs, var, 0, false, out);
      *out += ")";
      break;
  }
  if (need_parens) out->push_back(')');
}

bool node_is_constant(const ExprNode& n) {
  switch (n.kind) {
    case Kind::Const:
      return true;
    case Kind::Var:
      return false;
    case Kind::Neg:
    case Kind::Call:
      return node_is_constant(*n.lhs);
    default:
      return node_is_constant(*n.lhs) && node_is_constant(*n.rhs);
  }
}

}  // namespace
}  // namespace detail

// Expr stores the root node plus the variable name inside a shared wrapper.
namespace {
struct Wrapper : detail::ExprNode {
  std::string var;
};

std::shared_ptr<const detail::ExprNode> wrap(detail::NodePtr root, std::string var) {
  auto w = std::make_shared<Wrapper>();
  static_cast<detail::ExprNode&>(*w) = *root;
  // Keep children alive; the copied node shares lhs/rhs pointers.
  w->var = std::move(var);
  return w;
}

const Wrapper& as_wrapper(const detail::ExprNode& n) { return static_cast<const Wrapper&>(n); }

const std::string& empty_string() {
  static const std::string s;
  return s;
}
}  // namespace

Expr::Expr(std::shared_ptr<const detail::ExprNode> node) : node_(std::move(node)) {}

Expr Expr::parse(const std::string& text) {
  detail::Parser p(text);
  std::string var;
  detail::NodePtr root = p.run(&var);
  return Expr(wrap(root, var));
}

Expr Expr::constant(double value) { return Expr(wrap(detail::make_const(value), "")); }

double Expr::eval(double t) const {
  if (!node_) throw DomainError("empty expression");
  return detail::eval_node(*node_, t);
}

Expr Expr::differentiate() const {
  if (!node_) throw DomainError("empty expression");
  // diff_node only follows lhs/rhs, so differentiating the wrapper in place is fine.
  auto self = std::make_shared<detail::ExprNode>(*node_);
  return Expr(wrap(detail::diff_node(self), as_wrapper(*node_).var));
}

std::string Expr::to_string() const {
  if (!node_) return "";
  std::string out;
  detail::print_node(*node_, as_wrapper(*node_).var, 0, false, &out);
  return out;
}

const std::string& Expr::variable() const {
  if (!node_) return empty_string();
  return as_wrapper(*node_).var;
}

bool Expr::is_constant() const { return node_ && detail::node_is_constant(*node_); }

namespace {
void check_same_var(const Expr& a, const Expr& b) {
  const std::string& va = a.variable();
  const std::string& vb = b.variable();
  if (!va.empty() && !vb.empty() && va != vb) {
    throw DomainError("cannot combine expressions in different variables");
  }
}
}  // namespace

// Composition goes through canonical printing; %.17g round-trips doubles, so
// no precision is lost and the helpers stay tiny.

Expr operator*(const Expr& a, const Expr& b) {
  check_same_var(a, b);
  return Expr::parse("(" + a.to_string() + ")*(" + b.to_string() + ")");
}

Expr operator+(const Expr& a, const Expr& b) {
  check_same_var(a, b);
  return Expr::parse("(" + a.to_string() + ")+(" + b.to_string() + ")");
}

Expr operator-(const Expr& a, const Expr& b) {
  check_same_var(a, b);
  return Expr::parse("(" + a.to_string() + ")-(" + b.to_string() + ")");
}

Expr operator/(const Expr& a, const Expr& b) {
  check_same_var(a, b);
  return Expr::parse("(" + a.to_string() + ")/(" + b.to_string() + ")");
}

Expr Expr::sqrt(const Expr& a) { return Expr::parse("sqrt(" + a.to_string() + ")"); }

Expr Expr::negate(const Expr& a) { return Expr::parse("-(" + a.to_string() + ")"); }

}  // namespace lw

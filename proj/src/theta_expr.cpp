#include "cmrp/theta_expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <vector>

#include "cmrp/errors.hpp"

namespace cmrp {

std::string to_string(const Theta& t) {
  std::ostringstream os;
  if (t.dim == 1) {
    os << t.x1;
  } else {
    os << "(" << t.x1 << ", " << t.x2 << ")";
  }
  return os.str();
}

enum class OpKind { constant, var1, var2, add, sub, mul, div, pow, neg, exp_fn, log_fn, sqrt_fn };

struct Expr::Node {
  OpKind kind;
  double value = 0.0;
  std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

NodePtr make(OpKind k, NodePtr l = nullptr, NodePtr r = nullptr, double v = 0.0) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = k;
  n->value = v;
  n->lhs = std::move(l);
  n->rhs = std::move(r);
  return n;
}

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  NodePtr run() {
    NodePtr e = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError("expression \"" + s_ + "\": " + msg + " at position " +
                      std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool consume(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (consume('+')) {
        lhs = make(OpKind::add, lhs, term());
      } else if (consume('-')) {
        lhs = make(OpKind::sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (consume('*')) {
        lhs = make(OpKind::mul, lhs, unary());
      } else if (consume('/')) {
        lhs = make(OpKind::div, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    if (consume('-')) return make(OpKind::neg, unary());
    return power();
  }

  NodePtr power() {
    NodePtr base = atom();
    if (consume('^')) return make(OpKind::pow, base, unary());
    return base;
  }

  NodePtr atom() {
    skip_ws();
    if (pos_ >= s_.size()) fail("expected a value");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = expr();
      if (!consume(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = s_.c_str() + pos_;
      char* end = nullptr;
      double v = std::strtod(begin, &end);
      if (end == begin) fail("malformed number");
      pos_ += static_cast<std::size_t>(end - begin);
      return make(OpKind::constant, nullptr, nullptr, v);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
        ++pos_;
      }
      std::string word = s_.substr(start, pos_ - start);
      if (word == "theta" || word == "theta1") return make(OpKind::var1);
      if (word == "theta2") return make(OpKind::var2);
      if (word == "exp" || word == "ln" || word == "log" || word == "sqrt") {
        if (!consume('(')) fail("expected '(' after " + word);
        NodePtr arg = expr();
        if (!consume(')')) fail("expected ')'");
        OpKind k = word == "exp" ? OpKind::exp_fn
                                 : (word == "sqrt" ? OpKind::sqrt_fn : OpKind::log_fn);
        return make(k, arg);
      }
      pos_ = start;
      fail("unknown identifier \"" + word + "\"");
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

double eval_node(const Expr::Node& n, const Theta& t) {
  switch (n.kind) {
    case OpKind::constant:
      return n.value;
    case OpKind::var1:
      return t.x1;
    case OpKind::var2:
      if (t.dim < 2) throw DomainError("expression uses theta2 but the mixing is 1-d");
      return t.x2;
    case OpKind::add:
      return eval_node(*n.lhs, t) + eval_node(*n.rhs, t);
    case OpKind::sub:
      return eval_node(*n.lhs, t) - eval_node(*n.rhs, t);
    case OpKind::mul:
      return eval_node(*n.lhs, t) * eval_node(*n.rhs, t);
    case OpKind::div:
      return eval_node(*n.lhs, t) / eval_node(*n.rhs, t);
    case OpKind::pow:
      return std::pow(eval_node(*n.lhs, t), eval_node(*n.rhs, t));
    case OpKind::neg:
      return -eval_node(*n.lhs, t);
    case OpKind::exp_fn:
      return std::exp(eval_node(*n.lhs, t));
    case OpKind::log_fn:
      return std::log(eval_node(*n.lhs, t));
    case OpKind::sqrt_fn:
      return std::sqrt(eval_node(*n.lhs, t));
  }
  return 0.0;
}

}  // namespace

Expr Expr::parse(const std::string& text) {
  Expr e;
  e.root_ = Parser(text).run();
  e.text_ = text;
  return e;
}

Expr Expr::constant(double value) {
  Expr e;
  e.root_ = make(OpKind::constant, nullptr, nullptr, value);
  std::ostringstream os;
  os << value;
  e.text_ = os.str();
  return e;
}

double Expr::eval(const Theta& theta) const {
  if (!root_) throw ConfigError("evaluating an empty expression");
  return eval_node(*root_, theta);
}

}  // namespace cmrp

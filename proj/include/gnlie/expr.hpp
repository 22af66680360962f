#ifndef GNLIE_EXPR_HPP
#define GNLIE_EXPR_HPP

#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gnlie/errors.hpp"
#include "gnlie/number.hpp"

namespace gnlie {

enum class UnaryOp { neg, sin, cos, tan, sinh, cosh, exp, ln, sqrt };
enum class BinaryOp { add, sub, mul, div, pow };

inline const char* unary_name(UnaryOp op) {
  switch (op) {
    case UnaryOp::neg: return "-";
    case UnaryOp::sin: return "sin";
    case UnaryOp::cos: return "cos";
    case UnaryOp::tan: return "tan";
    case UnaryOp::sinh: return "sinh";
    case UnaryOp::cosh: return "cosh";
    case UnaryOp::exp: return "exp";
    case UnaryOp::ln: return "ln";
    case UnaryOp::sqrt: return "sqrt";
  }
  return "?";
}

/// Global symbol interner. Ids are stable for the lifetime of the process;
/// lookups in hot evaluation loops use the integer id only.
class SymbolTable {
 public:
  static int id_of(const std::string& name) {
    auto& t = instance();
    std::lock_guard<std::mutex> lock(t.mu_);
    auto it = t.ids_.find(name);
    if (it != t.ids_.end()) return it->second;
    int id = static_cast<int>(t.names_.size());
    t.names_.push_back(name);
    t.ids_.emplace(name, id);
    return id;
  }

  static std::string name_of(int id) {
    auto& t = instance();
    std::lock_guard<std::mutex> lock(t.mu_);
    return t.names_.at(static_cast<std::size_t>(id));
  }

 private:
  static SymbolTable& instance() {
    static SymbolTable t;
    return t;
  }
  std::mutex mu_;
  std::map<std::string, int> ids_;
  std::vector<std::string> names_;
};

struct ExprNode;

/// Immutable expression handle. Copies share structure; all operations on
/// expressions are pure, so concurrent use is safe.
class Expr {
 public:
  Expr() = default;

  static Expr number(const Number& n);
  static Expr integer(long long n) { return number(Number::integer(n)); }
  static Expr rational(long long num, long long den) { return number(Number::rational(num, den)); }
  static Expr real(double v) { return number(Number::real(v)); }
  static Expr symbol(const std::string& name);
  static Expr unary(UnaryOp op, Expr a);
  static Expr binary(BinaryOp op, Expr a, Expr b);

  bool valid() const { return node_ != nullptr; }
  const ExprNode& node() const { return *node_; }

 private:
  explicit Expr(std::shared_ptr<const ExprNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const ExprNode> node_;
};

struct ExprNode {
  enum class Kind { number, symbol, unary, binary };
  Kind kind;
  Number num;       // kind == number
  int sym = -1;     // kind == symbol
  UnaryOp uop{};    // kind == unary
  BinaryOp bop{};   // kind == binary
  Expr a, b;        // children
};

inline Expr Expr::number(const Number& n) {
  ExprNode node;
  node.kind = ExprNode::Kind::number;
  node.num = n;
  return Expr(std::make_shared<const ExprNode>(std::move(node)));
}

inline Expr Expr::symbol(const std::string& name) {
  ExprNode node;
  node.kind = ExprNode::Kind::symbol;
  node.sym = SymbolTable::id_of(name);
  return Expr(std::make_shared<const ExprNode>(std::move(node)));
}

inline Expr Expr::unary(UnaryOp op, Expr a) {
  ExprNode node;
  node.kind = ExprNode::Kind::unary;
  node.uop = op;
  node.a = std::move(a);
  return Expr(std::make_shared<const ExprNode>(std::move(node)));
}

inline Expr Expr::binary(BinaryOp op, Expr a, Expr b) {
  ExprNode node;
  node.kind = ExprNode::Kind::binary;
  node.bop = op;
  node.a = std::move(a);
  node.b = std::move(b);
  return Expr(std::make_shared<const ExprNode>(std::move(node)));
}

inline bool is_number(const Expr& e) { return e.node().kind == ExprNode::Kind::number; }
inline bool is_symbol(const Expr& e) { return e.node().kind == ExprNode::Kind::symbol; }
inline bool is_unary(const Expr& e, UnaryOp op) {
  return e.node().kind == ExprNode::Kind::unary && e.node().uop == op;
}
inline bool is_binary(const Expr& e, BinaryOp op) {
  return e.node().kind == ExprNode::Kind::binary && e.node().bop == op;
}
inline bool is_zero(const Expr& e) { return is_number(e) && e.node().num.is_zero(); }
inline bool is_one(const Expr& e) { return is_number(e) && e.node().num.is_one(); }

inline bool structurally_equal(const Expr& x, const Expr& y) {
  if (&x.node() == &y.node()) return true;
  const ExprNode& a = x.node();
  const ExprNode& b = y.node();
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case ExprNode::Kind::number: return a.num.same(b.num);
    case ExprNode::Kind::symbol: return a.sym == b.sym;
    case ExprNode::Kind::unary: return a.uop == b.uop && structurally_equal(a.a, b.a);
    case ExprNode::Kind::binary:
      return a.bop == b.bop && structurally_equal(a.a, b.a) && structurally_equal(a.b, b.b);
  }
  return false;
}

inline void collect_symbols(const Expr& e, std::set<int>* out) {
  const ExprNode& n = e.node();
  switch (n.kind) {
    case ExprNode::Kind::number: return;
    case ExprNode::Kind::symbol: out->insert(n.sym); return;
    case ExprNode::Kind::unary: collect_symbols(n.a, out); return;
    case ExprNode::Kind::binary:
      collect_symbols(n.a, out);
      collect_symbols(n.b, out);
      return;
  }
}

inline std::set<int> free_symbols(const Expr& e) {
  std::set<int> s;
  collect_symbols(e, &s);
  return s;
}

// ---------------------------------------------------------------------------
// Printing. Parenthesization tracks the parse grammar exactly, so that
// parse(print(e)) reproduces e (up to number normalization, handled by
// simplify).
// ---------------------------------------------------------------------------

namespace detail {

// Grammar levels, loosest to tightest. A node prints bare only in a context
// that admits its production; otherwise it gets parentheses.
enum class PrintCtx { sum, term, factor, pow_base, neg_arg };

inline void print_expr(const Expr& e, PrintCtx ctx, std::string* out);

inline void print_parens(const Expr& e, std::string* out) {
  out->push_back('(');
  print_expr(e, PrintCtx::sum, out);
  out->push_back(')');
}

inline void print_expr(const Expr& e, PrintCtx ctx, std::string* out) {
  const ExprNode& n = e.node();
  switch (n.kind) {
    case ExprNode::Kind::number: {
      std::string s = n.num.str();
      bool slash = s.find('/') != std::string::npos;
      bool minus = !s.empty() && s[0] == '-';
      bool parens = false;
      if (slash)  // prints as a division
        parens = ctx == PrintCtx::factor || ctx == PrintCtx::pow_base || ctx == PrintCtx::neg_arg;
      else if (minus)  // prints as a negation
        parens = ctx == PrintCtx::factor || ctx == PrintCtx::pow_base || ctx == PrintCtx::neg_arg;
      if (parens) {
        out->push_back('(');
        *out += s;
        out->push_back(')');
      } else {
        *out += s;
      }
      return;
    }
    case ExprNode::Kind::symbol:
      *out += SymbolTable::name_of(n.sym);
      return;
    case ExprNode::Kind::unary: {
      if (n.uop == UnaryOp::neg) {
        bool parens =
            ctx == PrintCtx::factor || ctx == PrintCtx::pow_base || ctx == PrintCtx::neg_arg;
        if (parens) out->push_back('(');
        out->push_back('-');
        print_expr(n.a, PrintCtx::neg_arg, out);
        if (parens) out->push_back(')');
        return;
      }
      *out += unary_name(n.uop);
      out->push_back('(');
      print_expr(n.a, PrintCtx::sum, out);
      out->push_back(')');
      return;
    }
    case ExprNode::Kind::binary: {
      switch (n.bop) {
        case BinaryOp::add:
        case BinaryOp::sub: {
          if (ctx != PrintCtx::sum) {
            print_parens(e, out);
            return;
          }
          print_expr(n.a, PrintCtx::sum, out);
          out->push_back(n.bop == BinaryOp::add ? '+' : '-');
          print_expr(n.b, PrintCtx::term, out);  // keep left associativity
          return;
        }
        case BinaryOp::mul:
        case BinaryOp::div: {
          if (ctx == PrintCtx::factor || ctx == PrintCtx::pow_base || ctx == PrintCtx::neg_arg) {
            print_parens(e, out);
            return;
          }
          print_expr(n.a, PrintCtx::term, out);
          out->push_back(n.bop == BinaryOp::mul ? '*' : '/');
          print_expr(n.b, PrintCtx::factor, out);
          return;
        }
        case BinaryOp::pow: {
          if (ctx == PrintCtx::pow_base || ctx == PrintCtx::neg_arg) {
            print_parens(e, out);
            return;
          }
          print_expr(n.a, PrintCtx::pow_base, out);
          out->push_back('^');
          print_expr(n.b, PrintCtx::factor, out);  // '^' is right-associative
          return;
        }
      }
    }
  }
}

}  // namespace detail

inline std::string to_string(const Expr& e) {
  std::string out;
  detail::print_expr(e, detail::PrintCtx::sum, &out);
  return out;
}

// ---------------------------------------------------------------------------
// Point bindings
// ---------------------------------------------------------------------------

/// Ordered map coordinate symbol -> value. Small and flat; evaluation does a
/// linear scan, which beats a hash map at chart dimensions.
class PointBinding {
 public:
  PointBinding() = default;

  void set(const std::string& name, double v) { set(SymbolTable::id_of(name), v); }

  void set(int id, double v) {
    for (auto& kv : vals_)
      if (kv.first == id) {
        kv.second = v;
        return;
      }
    vals_.emplace_back(id, v);
  }

  const double* find(int id) const {
    for (const auto& kv : vals_)
      if (kv.first == id) return &kv.second;
    return nullptr;
  }

  std::size_t size() const { return vals_.size(); }
  const std::vector<std::pair<int, double>>& entries() const { return vals_; }

 private:
  std::vector<std::pair<int, double>> vals_;
};

}  // namespace gnlie

#endif

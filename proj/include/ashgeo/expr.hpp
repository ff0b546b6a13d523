#pragma once

// Scalar expression trees over named real variables.
//
// Every metric, frame and vector field in the library is stored as an Expr
// so that the derivatives entering Christoffel symbols, curvature and the
// time derivative of a slice metric are exact. Expressions are immutable and
// share structure; copying an Expr is a reference-count bump.

#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ashgeo {

/// Interned variable name. Ids are process-wide and stable.
using VarId = std::uint32_t;

VarId intern(std::string_view name);
const std::string& var_name(VarId id);

/// Assignment of real values to variables.
class Binding {
 public:
  Binding() = default;
  Binding(std::initializer_list<std::pair<std::string_view, double>> values);

  Binding& set(std::string_view name, double value);
  Binding& set(VarId id, double value);

  bool has(VarId id) const noexcept {
    return id < bound_.size() && bound_[id] != 0;
  }
  /// Throws UnboundVariable.
  double get(VarId id) const;
  double get(std::string_view name) const { return get(intern(name)); }

 private:
  std::vector<double> values_;
  std::vector<char> bound_;
};

enum class Op : std::uint8_t {
  Const,
  Var,
  Neg,
  Sin,
  Cos,
  Exp,
  Sqrt,
  Ln,
  Add,
  Sub,
  Mul,
  Div,
  Pow,
};

class Expr {
 public:
  struct Node;

  /// The constant 0.
  Expr();
  Expr(double constant);  // NOLINT(google-explicit-constructor)

  static Expr var(std::string_view name);
  static Expr var(VarId id);

  Op op() const noexcept;
  /// Only meaningful for Op::Const.
  double constant() const noexcept;
  /// Only meaningful for Op::Var.
  VarId var_id() const noexcept;
  /// Operand of a unary node or left operand of a binary node.
  const Expr& lhs() const;
  const Expr& rhs() const;

  bool is_const() const noexcept { return op() == Op::Const; }
  bool is_zero() const noexcept { return is_const() && constant() == 0.0; }
  bool is_one() const noexcept { return is_const() && constant() == 1.0; }

  const Node* node() const noexcept { return node_.get(); }

  /// Infix text in the parser's grammar; parse(str()) reproduces the tree.
  std::string str() const;

  // Construction applies structural simplification only: constant folding,
  // 0 and 1 absorption, double negation.
  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);
  friend Expr pow(const Expr& base, const Expr& exponent);
  friend Expr sin(const Expr& a);
  friend Expr cos(const Expr& a);
  friend Expr exp(const Expr& a);
  friend Expr sqrt(const Expr& a);
  friend Expr ln(const Expr& a);

  Expr& operator+=(const Expr& o) { return *this = *this + o; }
  Expr& operator-=(const Expr& o) { return *this = *this - o; }
  Expr& operator*=(const Expr& o) { return *this = *this * o; }

 private:
  struct Empty {};
  explicit Expr(Empty) noexcept {}
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Expr make(Op op, Expr a, Expr b = Expr(Empty{}));

  std::shared_ptr<const Node> node_;
};

struct Expr::Node {
  Op op = Op::Const;
  double value = 0.0;
  VarId var = 0;
  Expr a{Empty{}};
  Expr b{Empty{}};
};

/// Variables every expression parser accepts unless told otherwise:
/// the time coordinate `t` and the slice coordinates `x1`, `x2`, `x3`.
std::span<const std::string> default_variables();

/// Parses infix text. Identifiers must be a declared variable, the constant
/// `pi`, or one of the functions sin, cos, exp, sqrt, ln.
/// Throws ParseError / UnknownIdentifier.
Expr parse(std::string_view text);
Expr parse(std::string_view text, std::span<const std::string> variables);

/// Throws UnboundVariable or DomainError.
double eval(const Expr& e, const Binding& b);

Expr diff(const Expr& e, VarId v);
inline Expr diff(const Expr& e, std::string_view v) { return diff(e, intern(v)); }

/// Differentiates several expressions with one shared memo, so subtrees
/// common to the inputs stay shared in the outputs.
std::vector<Expr> diff(std::span<const Expr> es, VarId v);

Expr substitute(const Expr& e, VarId v, const Expr& replacement);
inline Expr substitute(const Expr& e, std::string_view v, const Expr& r) {
  return substitute(e, intern(v), r);
}

bool depends_on(const Expr& e, VarId v);
std::vector<VarId> free_variables(const Expr& e);
bool structurally_equal(const Expr& a, const Expr& b);

/// Straight-line program evaluating a batch of expressions with common
/// subexpressions computed once. Immutable after construction; eval() is
/// safe to call concurrently.
class Tape {
 public:
  Tape() = default;
  explicit Tape(std::span<const Expr> outputs);

  std::size_t outputs() const noexcept { return outputs_.size(); }
  std::size_t instructions() const noexcept { return code_.size(); }

  void eval(const Binding& b, std::span<double> out) const;
  std::vector<double> eval(const Binding& b) const;

 private:
  struct Instr {
    Op op;
    std::uint32_t a;
    std::uint32_t b;
    double value;
    VarId var;
  };
  std::vector<Instr> code_;
  std::vector<std::uint32_t> outputs_;
};

}  // namespace ashgeo

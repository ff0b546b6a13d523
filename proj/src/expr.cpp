#include "ashgeo/expr.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <deque>
#include <mutex>
#include <numbers>
#include <unordered_map>
#include <unordered_set>

#include "ashgeo/error.hpp"

namespace ashgeo {

// ---------------------------------------------------------------------------
// Variable interning
// ---------------------------------------------------------------------------

namespace {

struct Registry {
  std::mutex mutex;
  std::deque<std::string> names;
  std::unordered_map<std::string, VarId> ids;
};

Registry& registry() {
  static Registry r;
  return r;
}

}  // namespace

VarId intern(std::string_view name) {
  auto& r = registry();
  std::lock_guard lock(r.mutex);
  std::string key(name);
  if (auto it = r.ids.find(key); it != r.ids.end()) return it->second;
  const auto id = static_cast<VarId>(r.names.size());
  r.names.push_back(key);
  r.ids.emplace(std::move(key), id);
  return id;
}

const std::string& var_name(VarId id) {
  auto& r = registry();
  std::lock_guard lock(r.mutex);
  if (id >= r.names.size()) throw InvalidArgument("unknown variable id");
  return r.names[id];
}

Binding::Binding(std::initializer_list<std::pair<std::string_view, double>> values) {
  for (const auto& [name, value] : values) set(name, value);
}

Binding& Binding::set(std::string_view name, double value) {
  return set(intern(name), value);
}

Binding& Binding::set(VarId id, double value) {
  if (id >= values_.size()) {
    values_.resize(id + 1, 0.0);
    bound_.resize(id + 1, 0);
  }
  values_[id] = value;
  bound_[id] = 1;
  return *this;
}

double Binding::get(VarId id) const {
  if (!has(id)) throw UnboundVariable(var_name(id));
  return values_[id];
}

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

namespace {

bool is_unary(Op op) {
  switch (op) {
    case Op::Neg:
    case Op::Sin:
    case Op::Cos:
    case Op::Exp:
    case Op::Sqrt:
    case Op::Ln:
      return true;
    default:
      return false;
  }
}

bool is_binary(Op op) { return op >= Op::Add; }

// Returns nullopt when the operation is outside its domain, so that the
// node is kept and evaluation reports the error with context.
std::optional<double> apply_unary(Op op, double x) {
  switch (op) {
    case Op::Neg: return -x;
    case Op::Sin: return std::sin(x);
    case Op::Cos: return std::cos(x);
    case Op::Exp: return std::exp(x);
    case Op::Sqrt:
      if (x < 0.0) return std::nullopt;
      return std::sqrt(x);
    case Op::Ln:
      if (x <= 0.0) return std::nullopt;
      return std::log(x);
    default: return std::nullopt;
  }
}

std::optional<double> apply_binary(Op op, double x, double y) {
  switch (op) {
    case Op::Add: return x + y;
    case Op::Sub: return x - y;
    case Op::Mul: return x * y;
    case Op::Div:
      if (y == 0.0) return std::nullopt;
      return x / y;
    case Op::Pow: {
      if (x == 0.0 && y < 0.0) return std::nullopt;
      if (x < 0.0 && std::nearbyint(y) != y) return std::nullopt;
      if (y == 2.0) return x * x;
      return std::pow(x, y);
    }
    default: return std::nullopt;
  }
}

const char* function_name(Op op) {
  switch (op) {
    case Op::Sin: return "sin";
    case Op::Cos: return "cos";
    case Op::Exp: return "exp";
    case Op::Sqrt: return "sqrt";
    case Op::Ln: return "ln";
    default: return nullptr;
  }
}

}  // namespace

Expr::Expr() : Expr(0.0) {}

Expr::Expr(double constant) {
  auto n = std::make_shared<Node>();
  n->op = Op::Const;
  n->value = constant;
  node_ = std::move(n);
}

Expr Expr::var(std::string_view name) { return var(intern(name)); }

Expr Expr::var(VarId id) {
  auto n = std::make_shared<Node>();
  n->op = Op::Var;
  n->var = id;
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Op Expr::op() const noexcept { return node_->op; }
double Expr::constant() const noexcept { return node_->value; }
VarId Expr::var_id() const noexcept { return node_->var; }
const Expr& Expr::lhs() const { return node_->a; }
const Expr& Expr::rhs() const { return node_->b; }

Expr Expr::make(Op op, Expr a, Expr b) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_const() && b.is_const()) return Expr(a.constant() + b.constant());
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  return Expr::make(Op::Add, a, b);
}

Expr operator-(const Expr& a, const Expr& b) {
  if (a.is_const() && b.is_const()) return Expr(a.constant() - b.constant());
  if (b.is_zero()) return a;
  if (a.is_zero()) return -b;
  return Expr::make(Op::Sub, a, b);
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_const() && b.is_const()) return Expr(a.constant() * b.constant());
  if (a.is_zero() || b.is_zero()) return Expr(0.0);
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  if (a.is_const() && a.constant() == -1.0) return -b;
  if (b.is_const() && b.constant() == -1.0) return -a;
  return Expr::make(Op::Mul, a, b);
}

Expr operator/(const Expr& a, const Expr& b) {
  if (a.is_const() && b.is_const()) {
    if (auto v = apply_binary(Op::Div, a.constant(), b.constant())) return Expr(*v);
    return Expr::make(Op::Div, a, b);
  }
  if (a.is_zero() && !b.is_zero()) return Expr(0.0);
  if (b.is_one()) return a;
  return Expr::make(Op::Div, a, b);
}

Expr operator-(const Expr& a) {
  if (a.is_const()) return Expr(-a.constant());
  if (a.op() == Op::Neg) return a.lhs();
  return Expr::make(Op::Neg, a);
}

Expr pow(const Expr& base, const Expr& exponent) {
  if (base.is_const() && exponent.is_const()) {
    if (auto v = apply_binary(Op::Pow, base.constant(), exponent.constant())) {
      if (std::isfinite(*v)) return Expr(*v);
    }
    return Expr::make(Op::Pow, base, exponent);
  }
  if (exponent.is_zero()) return Expr(1.0);
  if (exponent.is_one()) return base;
  return Expr::make(Op::Pow, base, exponent);
}

#define ASHGEO_UNARY(fn, OP)                                    \
  Expr fn(const Expr& a) {                                      \
    if (a.is_const()) {                                         \
      if (auto v = apply_unary(OP, a.constant())) return Expr(*v); \
    }                                                           \
    return Expr::make(OP, a);                                   \
  }

ASHGEO_UNARY(sin, Op::Sin)
ASHGEO_UNARY(cos, Op::Cos)
ASHGEO_UNARY(exp, Op::Exp)
ASHGEO_UNARY(sqrt, Op::Sqrt)
ASHGEO_UNARY(ln, Op::Ln)

#undef ASHGEO_UNARY

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace {

// Binding strength used to decide where parentheses are needed.
int precedence(const Expr& e) {
  switch (e.op()) {
    case Op::Const: return std::signbit(e.constant()) ? 3 : 5;
    case Op::Var: return 5;
    case Op::Add:
    case Op::Sub: return 1;
    case Op::Mul:
    case Op::Div: return 2;
    case Op::Neg: return 3;
    case Op::Pow: return 4;
    default: return 5;  // function call
  }
}

void format_number(double v, std::string& out) {
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  out.append(buf.data(), end);
}

void print(const Expr& e, std::string& out);

void print_wrapped(const Expr& e, bool parens, std::string& out) {
  if (parens) out += '(';
  print(e, out);
  if (parens) out += ')';
}

void print(const Expr& e, std::string& out) {
  switch (e.op()) {
    case Op::Const:
      format_number(e.constant(), out);
      return;
    case Op::Var:
      out += var_name(e.var_id());
      return;
    case Op::Neg:
      out += '-';
      print_wrapped(e.lhs(), precedence(e.lhs()) < 4, out);
      return;
    case Op::Pow:
      print_wrapped(e.lhs(), precedence(e.lhs()) <= 4, out);
      out += '^';
      print_wrapped(e.rhs(), precedence(e.rhs()) < 4, out);
      return;
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Div: {
      const int p = precedence(e);
      const char* sym = e.op() == Op::Add   ? " + "
                        : e.op() == Op::Sub ? " - "
                        : e.op() == Op::Mul ? "*"
                                            : "/";
      print_wrapped(e.lhs(), precedence(e.lhs()) < p, out);
      out += sym;
      const int pr = precedence(e.rhs());
      print_wrapped(e.rhs(), pr <= p || pr == 3, out);
      return;
    }
    default:
      out += function_name(e.op());
      print_wrapped(e.lhs(), true, out);
      return;
  }
}

}  // namespace

std::string Expr::str() const {
  std::string out;
  print(*this, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' unary)?
//   primary := number | name | func '(' expr ')' | '(' expr ')'

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::span<const std::string> variables)
      : text_(text), variables_(variables) {}

  Expr run() {
    Expr e = expression();
    skip_ws();
    if (pos_ != text_.size()) {
      throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    }
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= text_.size()) {
        throw ParseError(std::string("expected '") + c + "' but input ended", pos_);
      }
      throw ParseError(std::string("expected '") + c + "'", pos_);
    }
  }

  Expr expression() {
    Expr lhs = term();
    while (true) {
      if (accept('+')) {
        lhs = lhs + term();
      } else if (accept('-')) {
        lhs = lhs - term();
      } else {
        return lhs;
      }
    }
  }

  Expr term() {
    Expr lhs = unary();
    while (true) {
      if (accept('*')) {
        lhs = lhs * unary();
      } else if (accept('/')) {
        lhs = lhs / unary();
      } else {
        return lhs;
      }
    }
  }

  Expr unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (accept('^')) return pow(base, unary());
    return base;
  }

  Expr primary() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = expression();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return name();
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  Expr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    };
    digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      digits();
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t save = pos_++;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        digits();
      } else {
        pos_ = save;  // an 'e' that starts an identifier, e.g. "2exp"
      }
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
    if (ec != std::errc{} || ptr != text_.data() + pos_) {
      throw ParseError("malformed number", start);
    }
    return Expr(v);
  }

  Expr name() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string id(text_.substr(start, pos_ - start));

    static constexpr std::pair<const char*, Expr (*)(const Expr&)> functions[] = {
        {"sin", [](const Expr& a) { return sin(a); }},
        {"cos", [](const Expr& a) { return cos(a); }},
        {"exp", [](const Expr& a) { return exp(a); }},
        {"sqrt", [](const Expr& a) { return sqrt(a); }},
        {"ln", [](const Expr& a) { return ln(a); }},
    };
    for (const auto& [fname, fn] : functions) {
      if (id == fname) {
        expect('(');
        Expr arg = expression();
        expect(')');
        return fn(arg);
      }
    }
    if (id == "pi") return Expr(std::numbers::pi);
    for (const auto& v : variables_) {
      if (v == id) return Expr::var(id);
    }
    throw UnknownIdentifier(id, start);
  }

  std::string_view text_;
  std::span<const std::string> variables_;
  std::size_t pos_ = 0;
};

}  // namespace

std::span<const std::string> default_variables() {
  static const std::array<std::string, 4> names{"t", "x1", "x2", "x3"};
  return names;
}

Expr parse(std::string_view text) { return parse(text, default_variables()); }

Expr parse(std::string_view text, std::span<const std::string> variables) {
  return Parser(text, variables).run();
}

// ---------------------------------------------------------------------------
// Tape
// ---------------------------------------------------------------------------

namespace {

struct InstrKey {
  Op op;
  std::uint32_t a;
  std::uint32_t b;
  std::uint64_t bits;
  VarId var;
  bool operator==(const InstrKey&) const = default;
};

struct InstrKeyHash {
  std::size_t operator()(const InstrKey& k) const noexcept {
    std::uint64_t h = static_cast<std::uint64_t>(k.op);
    auto mix = [&h](std::uint64_t v) {
      h ^= v + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    };
    mix(k.a);
    mix(k.b);
    mix(k.bits);
    mix(k.var);
    return static_cast<std::size_t>(h);
  }
};

}  // namespace

Tape::Tape(std::span<const Expr> outputs) {
  std::unordered_map<const Expr::Node*, std::uint32_t> seen;
  std::unordered_map<InstrKey, std::uint32_t, InstrKeyHash> cse;

  // Iterative post-order walk; expression DAGs produced by repeated
  // differentiation can be deep.
  auto compile = [&](const Expr& root) -> std::uint32_t {
    struct Frame {
      const Expr* e;
      bool expanded;
    };
    std::vector<Frame> stack{{&root, false}};
    while (!stack.empty()) {
      Frame& f = stack.back();
      const Expr::Node* n = f.e->node();
      if (seen.count(n)) {
        stack.pop_back();
        continue;
      }
      if (!f.expanded) {
        f.expanded = true;
        const Expr* e = f.e;
        if (is_binary(e->op())) {
          stack.push_back({&e->rhs(), false});
          stack.push_back({&e->lhs(), false});
        } else if (is_unary(e->op())) {
          stack.push_back({&e->lhs(), false});
        }
        continue;
      }
      InstrKey key{n->op, 0, 0, 0, 0};
      if (n->op == Op::Const) {
        key.bits = std::bit_cast<std::uint64_t>(n->value);
      } else if (n->op == Op::Var) {
        key.var = n->var;
      } else {
        key.a = seen.at(n->a.node());
        if (is_binary(n->op)) key.b = seen.at(n->b.node());
      }
      auto [it, inserted] = cse.emplace(key, static_cast<std::uint32_t>(code_.size()));
      if (inserted) code_.push_back({n->op, key.a, key.b, n->value, n->var});
      seen.emplace(n, it->second);
      stack.pop_back();
    }
    return seen.at(root.node());
  };

  outputs_.reserve(outputs.size());
  for (const auto& e : outputs) outputs_.push_back(compile(e));
}

void Tape::eval(const Binding& b, std::span<double> out) const {
  if (out.size() != outputs_.size()) throw InvalidArgument("Tape::eval: output size mismatch");
  std::vector<double> r(code_.size());
  for (std::size_t i = 0; i < code_.size(); ++i) {
    const Instr& in = code_[i];
    switch (in.op) {
      case Op::Const:
        r[i] = in.value;
        break;
      case Op::Var:
        r[i] = b.get(in.var);
        break;
      case Op::Neg:
        r[i] = -r[in.a];
        break;
      case Op::Sin:
        r[i] = std::sin(r[in.a]);
        break;
      case Op::Cos:
        r[i] = std::cos(r[in.a]);
        break;
      case Op::Exp:
        r[i] = std::exp(r[in.a]);
        break;
      case Op::Sqrt:
        if (r[in.a] < 0.0) throw DomainError("sqrt of negative value");
        r[i] = std::sqrt(r[in.a]);
        break;
      case Op::Ln:
        if (r[in.a] <= 0.0) throw DomainError("ln of non-positive value");
        r[i] = std::log(r[in.a]);
        break;
      case Op::Add:
        r[i] = r[in.a] + r[in.b];
        break;
      case Op::Sub:
        r[i] = r[in.a] - r[in.b];
        break;
      case Op::Mul:
        r[i] = r[in.a] * r[in.b];
        break;
      case Op::Div:
        if (r[in.b] == 0.0) throw DomainError("division by zero");
        r[i] = r[in.a] / r[in.b];
        break;
      case Op::Pow: {
        const double x = r[in.a];
        const double y = r[in.b];
        if (x == 0.0 && y < 0.0) throw DomainError("division by zero in power");
        if (x < 0.0 && std::nearbyint(y) != y) {
          throw DomainError("negative base with non-integer exponent");
        }
        r[i] = y == 2.0 ? x * x : std::pow(x, y);
        break;
      }
    }
  }
  for (std::size_t k = 0; k < outputs_.size(); ++k) out[k] = r[outputs_[k]];
}

std::vector<double> Tape::eval(const Binding& b) const {
  std::vector<double> out(outputs_.size());
  eval(b, out);
  return out;
}

double eval(const Expr& e, const Binding& b) {
  // Fast paths for the leaves; everything else goes through a tape so that
  // shared subexpressions are evaluated once.
  if (e.is_const()) return e.constant();
  if (e.op() == Op::Var) return b.get(e.var_id());
  return Tape(std::span<const Expr>(&e, 1)).eval(b)[0];
}

// ---------------------------------------------------------------------------
// Differentiation and substitution
// ---------------------------------------------------------------------------

namespace {

class Differentiator {
 public:
  explicit Differentiator(VarId v) : v_(v) {}

  Expr operator()(const Expr& e) {
    if (auto it = memo_.find(e.node()); it != memo_.end()) return it->second;
    Expr d = rule(e);
    memo_.emplace(e.node(), d);
    return d;
  }

 private:
  Expr rule(const Expr& e) {
    switch (e.op()) {
      case Op::Const: return Expr(0.0);
      case Op::Var: return Expr(e.var_id() == v_ ? 1.0 : 0.0);
      case Op::Neg: return -(*this)(e.lhs());
      case Op::Sin: return cos(e.lhs()) * (*this)(e.lhs());
      case Op::Cos: return -(sin(e.lhs()) * (*this)(e.lhs()));
      case Op::Exp: return e * (*this)(e.lhs());
      case Op::Sqrt: {
        Expr da = (*this)(e.lhs());
        if (da.is_zero()) return da;
        return da / (Expr(2.0) * e);
      }
      case Op::Ln: {
        Expr da = (*this)(e.lhs());
        if (da.is_zero()) return da;
        return da / e.lhs();
      }
      case Op::Add: return (*this)(e.lhs()) + (*this)(e.rhs());
      case Op::Sub: return (*this)(e.lhs()) - (*this)(e.rhs());
      case Op::Mul: return (*this)(e.lhs()) * e.rhs() + e.lhs() * (*this)(e.rhs());
      case Op::Div: {
        // d(a/b) = (da - (a/b) db) / b
        Expr da = (*this)(e.lhs());
        Expr db = (*this)(e.rhs());
        return (da - e * db) / e.rhs();
      }
      case Op::Pow: {
        const Expr& base = e.lhs();
        const Expr& expo = e.rhs();
        Expr da = (*this)(base);
        if (expo.is_const()) {
          if (da.is_zero()) return Expr(0.0);
          return expo * pow(base, Expr(expo.constant() - 1.0)) * da;
        }
        Expr db = (*this)(expo);
        if (da.is_zero() && db.is_zero()) return Expr(0.0);
        return e * (db * ln(base) + expo * da / base);
      }
    }
    return Expr(0.0);
  }

  VarId v_;
  std::unordered_map<const Expr::Node*, Expr> memo_;
};

class Substituter {
 public:
  Substituter(VarId v, Expr r) : v_(v), r_(std::move(r)) {}

  Expr operator()(const Expr& e) {
    if (auto it = memo_.find(e.node()); it != memo_.end()) return it->second;
    Expr s = rule(e);
    memo_.emplace(e.node(), s);
    return s;
  }

 private:
  Expr rule(const Expr& e) {
    switch (e.op()) {
      case Op::Const: return e;
      case Op::Var: return e.var_id() == v_ ? r_ : e;
      case Op::Neg: return -(*this)(e.lhs());
      case Op::Sin: return sin((*this)(e.lhs()));
      case Op::Cos: return cos((*this)(e.lhs()));
      case Op::Exp: return exp((*this)(e.lhs()));
      case Op::Sqrt: return sqrt((*this)(e.lhs()));
      case Op::Ln: return ln((*this)(e.lhs()));
      case Op::Add: return (*this)(e.lhs()) + (*this)(e.rhs());
      case Op::Sub: return (*this)(e.lhs()) - (*this)(e.rhs());
      case Op::Mul: return (*this)(e.lhs()) * (*this)(e.rhs());
      case Op::Div: return (*this)(e.lhs()) / (*this)(e.rhs());
      case Op::Pow: return pow((*this)(e.lhs()), (*this)(e.rhs()));
    }
    return e;
  }

  VarId v_;
  Expr r_;
  std::unordered_map<const Expr::Node*, Expr> memo_;
};

template <typename Visit>
void walk(const Expr& root, Visit&& visit) {
  std::unordered_set<const Expr::Node*> seen;
  std::vector<const Expr*> stack{&root};
  while (!stack.empty()) {
    const Expr* e = stack.back();
    stack.pop_back();
    if (!seen.insert(e->node()).second) continue;
    visit(*e);
    if (is_binary(e->op())) stack.push_back(&e->rhs());
    if (is_binary(e->op()) || is_unary(e->op())) stack.push_back(&e->lhs());
  }
}

}  // namespace

Expr diff(const Expr& e, VarId v) { return Differentiator(v)(e); }

std::vector<Expr> diff(std::span<const Expr> es, VarId v) {
  Differentiator d(v);
  std::vector<Expr> out;
  out.reserve(es.size());
  for (const auto& e : es) out.push_back(d(e));
  return out;
}

Expr substitute(const Expr& e, VarId v, const Expr& replacement) {
  return Substituter(v, replacement)(e);
}

bool depends_on(const Expr& e, VarId v) {
  bool found = false;
  walk(e, [&](const Expr& n) {
    if (n.op() == Op::Var && n.var_id() == v) found = true;
  });
  return found;
}

std::vector<VarId> free_variables(const Expr& e) {
  std::vector<VarId> vars;
  walk(e, [&](const Expr& n) {
    if (n.op() == Op::Var) vars.push_back(n.var_id());
  });
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.node() == b.node()) return true;
  if (a.op() != b.op()) return false;
  switch (a.op()) {
    case Op::Const:
      return std::bit_cast<std::uint64_t>(a.constant()) ==
             std::bit_cast<std::uint64_t>(b.constant());
    case Op::Var: return a.var_id() == b.var_id();
    default:
      if (!structurally_equal(a.lhs(), b.lhs())) return false;
      return !is_binary(a.op()) || structurally_equal(a.rhs(), b.rhs());
  }
}

}  // namespace ashgeo

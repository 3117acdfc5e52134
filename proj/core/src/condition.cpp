#include "mpdc/condition.hpp"

#include <cctype>
#include <cmath>
#include <optional>
#include <sstream>

namespace mpdc {
namespace {

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == ':';
}

// Recursive-descent parser over the condition grammar:
//   expr    := or_expr
//   or_expr := and_expr ("or" and_expr)*
//   and_expr:= unary ("and" unary)*
//   unary   := "not" unary | atom
//   atom    := operand cmp operand | "(" expr ")"
//   operand := ref | number | quoted-string | "true" | "false"
//   ref     := ("A." | "T.") ident | ident            (bare only for activation)
class ConditionParser {
 public:
  ConditionParser(const std::string& text, SidePolicy policy)
      : text_(text), policy_(policy) {}

  ConditionPtr parse() {
    ConditionPtr expr = parse_or();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return expr;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("condition: " + msg, 1, pos_);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool try_keyword(const std::string& kw) {
    skip_ws();
    if (text_.compare(pos_, kw.size(), kw) != 0) return false;
    std::size_t end = pos_ + kw.size();
    if (end < text_.size() && is_ident_char(text_[end])) return false;
    pos_ = end;
    return true;
  }

  ConditionPtr parse_or() {
    std::vector<ConditionPtr> terms{parse_and()};
    while (try_keyword("or")) terms.push_back(parse_and());
    if (terms.size() == 1) return terms.front();
    return std::make_shared<ConditionExpr>(ConditionExpr::Or{std::move(terms)});
  }

  ConditionPtr parse_and() {
    std::vector<ConditionPtr> terms{parse_unary()};
    while (try_keyword("and")) terms.push_back(parse_unary());
    if (terms.size() == 1) return terms.front();
    return std::make_shared<ConditionExpr>(ConditionExpr::And{std::move(terms)});
  }

  ConditionPtr parse_unary() {
    if (try_keyword("not"))
      return std::make_shared<ConditionExpr>(ConditionExpr::Not{parse_unary()});
    return parse_atom();
  }

  ConditionPtr parse_atom() {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      ++pos_;
      ConditionPtr inner = parse_or();
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    Operand lhs = parse_operand();
    CmpOp op = parse_cmp_op();
    Operand rhs = parse_operand();
    check_literal_ordering(lhs, op, rhs);
    return std::make_shared<ConditionExpr>(ConditionExpr::Comparison{std::move(lhs), op, std::move(rhs)});
  }

  // Ordered comparison of two non-numeric literals can never hold; reject
  // it at parse time when both operands are literals.
  void check_literal_ordering(const Operand& lhs, CmpOp op, const Operand& rhs) const {
    if (op == CmpOp::Eq || op == CmpOp::Ne) return;
    const auto* ll = std::get_if<Literal>(&lhs);
    const auto* rl = std::get_if<Literal>(&rhs);
    if (!ll || !rl) return;
    auto numeric = [](const Literal& l) {
      return std::holds_alternative<std::int64_t>(l) || std::holds_alternative<double>(l);
    };
    if (!numeric(*ll) || !numeric(*rl))
      fail("ordered comparison of non-numeric literals");
  }

  CmpOp parse_cmp_op() {
    skip_ws();
    auto two = text_.substr(pos_, 2);
    if (two == "==") { pos_ += 2; return CmpOp::Eq; }
    if (two == "!=") { pos_ += 2; return CmpOp::Ne; }
    if (two == "<=") { pos_ += 2; return CmpOp::Le; }
    if (two == ">=") { pos_ += 2; return CmpOp::Ge; }
    if (pos_ < text_.size() && text_[pos_] == '<') { ++pos_; return CmpOp::Lt; }
    if (pos_ < text_.size() && text_[pos_] == '>') { ++pos_; return CmpOp::Gt; }
    fail("expected comparison operator");
  }

  Operand parse_operand() {
    skip_ws();
    if (pos_ >= text_.size()) fail("expected operand");
    char c = text_[pos_];
    if (c == '\'' || c == '"') return Literal{parse_quoted(c)};
    if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) return parse_number();
    if (try_keyword("true")) return Literal{true};
    if (try_keyword("false")) return Literal{false};
    return parse_ref();
  }

  std::string parse_quoted(char quote) {
    ++pos_;  // opening quote
    std::string out;
    while (pos_ < text_.size() && text_[pos_] != quote) out.push_back(text_[pos_++]);
    if (pos_ >= text_.size()) fail("unterminated string literal");
    ++pos_;
    return out;
  }

  Operand parse_number() {
    std::size_t start = pos_;
    if (text_[pos_] == '-') ++pos_;
    bool is_real = false;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
      if (text_[pos_] == '.') is_real = true;
      ++pos_;
    }
    std::string tok = text_.substr(start, pos_ - start);
    if (tok == "-" || tok.empty()) fail("malformed number");
    if (is_real) return Literal{std::stod(tok)};
    return Literal{static_cast<std::int64_t>(std::stoll(tok))};
  }

  Operand parse_ref() {
    RefSide side = RefSide::Activation;
    bool prefixed = false;
    if (text_.compare(pos_, 2, "A.") == 0) { side = RefSide::Activation; prefixed = true; pos_ += 2; }
    else if (text_.compare(pos_, 2, "T.") == 0) { side = RefSide::Target; prefixed = true; pos_ += 2; }
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    if (pos_ == start) fail("expected attribute reference");
    std::string name = text_.substr(start, pos_ - start);
    if (!prefixed && policy_ == SidePolicy::Correlation)
      fail("bare attribute name '" + name + "' requires an A. or T. prefix in a correlation condition");
    if (side == RefSide::Target && policy_ == SidePolicy::Activation)
      fail("T-side reference '" + name + "' not allowed in an activation condition");
    return AttrRef{side, std::move(name)};
  }

  const std::string& text_;
  SidePolicy policy_;
  std::size_t pos_ = 0;
};

// Value kinds for comparison purposes. Integer and real share the
// numeric class; everything else only compares within its own kind.
enum class Kind { Numeric, Text, Boolean, Time };

Kind kind_of(const AttributeValue& v) {
  if (std::holds_alternative<std::string>(v)) return Kind::Text;
  if (std::holds_alternative<bool>(v)) return Kind::Boolean;
  if (std::holds_alternative<Timestamp>(v)) return Kind::Time;
  return Kind::Numeric;
}

double as_double(const AttributeValue& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
  return std::get<double>(v);
}

AttributeValue from_literal(const Literal& lit) {
  return std::visit([](const auto& x) { return AttributeValue{x}; }, lit);
}

bool compare_values(const AttributeValue& lhs, CmpOp op, const AttributeValue& rhs) {
  Kind lk = kind_of(lhs), rk = kind_of(rhs);
  if (lk != rk) return false;  // cross-kind comparison is false
  if (lk == Kind::Numeric) {
    double a = as_double(lhs), b = as_double(rhs);
    switch (op) {
      case CmpOp::Eq: return a == b;
      case CmpOp::Ne: return a != b;
      case CmpOp::Lt: return a < b;
      case CmpOp::Le: return a <= b;
      case CmpOp::Gt: return a > b;
      case CmpOp::Ge: return a >= b;
    }
  }
  // Non-numeric kinds: equality only; ordered comparison yields false.
  switch (op) {
    case CmpOp::Eq: return lhs == rhs;
    case CmpOp::Ne: return lhs != rhs;
    default: return false;
  }
}

struct EvalContext {
  const PayloadSnapshot* activation = nullptr;
  const PayloadSnapshot* target = nullptr;
};

std::optional<AttributeValue> resolve(const Operand& op, const EvalContext& ctx) {
  if (const auto* lit = std::get_if<Literal>(&op)) return from_literal(*lit);
  const auto& ref = std::get<AttrRef>(op);
  const PayloadSnapshot* payload =
      ref.side == RefSide::Activation ? ctx.activation : ctx.target;
  if (!payload) return std::nullopt;
  const AttributeValue* v = payload->find(ref.name);
  if (!v) return std::nullopt;
  return *v;
}

bool eval(const ConditionExpr& cond, const EvalContext& ctx) {
  return std::visit(
      [&](const auto& node) -> bool {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, ConditionExpr::True>) {
          return true;
        } else if constexpr (std::is_same_v<T, ConditionExpr::Comparison>) {
          auto lhs = resolve(node.lhs, ctx);
          auto rhs = resolve(node.rhs, ctx);
          if (!lhs || !rhs) return false;  // absent attribute
          return compare_values(*lhs, node.op, *rhs);
        } else if constexpr (std::is_same_v<T, ConditionExpr::And>) {
          for (const auto& t : node.terms)
            if (!eval(*t, ctx)) return false;
          return true;
        } else if constexpr (std::is_same_v<T, ConditionExpr::Or>) {
          for (const auto& t : node.terms)
            if (eval(*t, ctx)) return true;
          return false;
        } else {
          static_assert(std::is_same_v<T, ConditionExpr::Not>);
          return !eval(*node.term, ctx);
        }
      },
      cond.node());
}

const char* cmp_op_text(CmpOp op) {
  switch (op) {
    case CmpOp::Eq: return "==";
    case CmpOp::Ne: return "!=";
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Gt: return ">";
    case CmpOp::Ge: return ">=";
  }
  return "==";
}

void render_operand(std::ostream& os, const Operand& op) {
  if (const auto* ref = std::get_if<AttrRef>(&op)) {
    os << (ref->side == RefSide::Activation ? "A." : "T.") << ref->name;
    return;
  }
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::string>) os << '\'' << x << '\'';
        else if constexpr (std::is_same_v<T, bool>) os << (x ? "true" : "false");
        else os << x;
      },
      std::get<Literal>(op));
}

void render_node(std::ostream& os, const ConditionExpr& cond, bool parenthesize_compound) {
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, ConditionExpr::True>) {
          os << "-";
        } else if constexpr (std::is_same_v<T, ConditionExpr::Comparison>) {
          render_operand(os, node.lhs);
          os << ' ' << cmp_op_text(node.op) << ' ';
          render_operand(os, node.rhs);
        } else if constexpr (std::is_same_v<T, ConditionExpr::And>) {
          if (parenthesize_compound) os << '(';
          for (std::size_t i = 0; i < node.terms.size(); ++i) {
            if (i) os << " and ";
            render_node(os, *node.terms[i], true);
          }
          if (parenthesize_compound) os << ')';
        } else if constexpr (std::is_same_v<T, ConditionExpr::Or>) {
          if (parenthesize_compound) os << '(';
          for (std::size_t i = 0; i < node.terms.size(); ++i) {
            if (i) os << " or ";
            render_node(os, *node.terms[i], true);
          }
          if (parenthesize_compound) os << ')';
        } else {
          static_assert(std::is_same_v<T, ConditionExpr::Not>);
          os << "not ";
          bool compound = !std::holds_alternative<ConditionExpr::Comparison>(node.term->node());
          render_node(os, *node.term, compound);
        }
      },
      cond.node());
}

void collect_refs(const ConditionExpr& cond, std::vector<std::string>& out) {
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, ConditionExpr::Comparison>) {
          for (const Operand* op : {&node.lhs, &node.rhs})
            if (const auto* ref = std::get_if<AttrRef>(op)) out.push_back(ref->name);
        } else if constexpr (std::is_same_v<T, ConditionExpr::And> ||
                             std::is_same_v<T, ConditionExpr::Or>) {
          for (const auto& t : node.terms) collect_refs(*t, out);
        } else if constexpr (std::is_same_v<T, ConditionExpr::Not>) {
          collect_refs(*node.term, out);
        }
      },
      cond.node());
}

}  // namespace

bool structurally_equal(const ConditionExpr& a, const ConditionExpr& b) {
  if (a.node().index() != b.node().index()) return false;
  return std::visit(
      [&](const auto& na) -> bool {
        using T = std::decay_t<decltype(na)>;
        const auto& nb = std::get<T>(b.node());
        if constexpr (std::is_same_v<T, ConditionExpr::True>) {
          return true;
        } else if constexpr (std::is_same_v<T, ConditionExpr::Comparison>) {
          return na.op == nb.op && na.lhs == nb.lhs && na.rhs == nb.rhs;
        } else if constexpr (std::is_same_v<T, ConditionExpr::And> ||
                             std::is_same_v<T, ConditionExpr::Or>) {
          if (na.terms.size() != nb.terms.size()) return false;
          for (std::size_t i = 0; i < na.terms.size(); ++i)
            if (!structurally_equal(*na.terms[i], *nb.terms[i])) return false;
          return true;
        } else {
          static_assert(std::is_same_v<T, ConditionExpr::Not>);
          return structurally_equal(*na.term, *nb.term);
        }
      },
      a.node());
}

ConditionPtr parse_condition(const std::string& text, SidePolicy policy) {
  std::size_t begin = text.find_first_not_of(" \t");
  std::size_t end = text.find_last_not_of(" \t");
  std::string trimmed = begin == std::string::npos ? "" : text.substr(begin, end - begin + 1);
  if (trimmed.empty() || trimmed == "-")
    return std::make_shared<ConditionExpr>(ConditionExpr::True{});
  return ConditionParser(trimmed, policy).parse();
}

std::string render_condition(const ConditionExpr& cond) {
  std::ostringstream os;
  render_node(os, cond, false);
  return os.str();
}

bool verify_activation(const ConditionExpr& cond, const PayloadSnapshot& activation) {
  EvalContext ctx;
  ctx.activation = &activation;
  return eval(cond, ctx);
}

bool verify_correlation(const ConditionExpr& cond, const PayloadSnapshot& activation,
                        const PayloadSnapshot& target) {
  EvalContext ctx;
  ctx.activation = &activation;
  ctx.target = &target;
  return eval(cond, ctx);
}

TimeWindow parse_time_window(const std::string& text) {
  std::size_t begin = text.find_first_not_of(" \t");
  std::size_t end = text.find_last_not_of(" \t");
  std::string trimmed = begin == std::string::npos ? "" : text.substr(begin, end - begin + 1);
  if (trimmed.empty() || trimmed == "-") return TimeWindow{};

  std::size_t c1 = trimmed.find(',');
  std::size_t c2 = trimmed.find(',', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw ParseError("time window: expected 'lower,upper,unit', got '" + trimmed + "'");

  std::string lower_s = trimmed.substr(0, c1);
  std::string upper_s = trimmed.substr(c1 + 1, c2 - c1 - 1);
  std::string unit_s = trimmed.substr(c2 + 1);
  if (unit_s.size() != 1 || std::string("smhd").find(unit_s[0]) == std::string::npos)
    throw ParseError("time window: unknown unit '" + unit_s + "'");

  std::int64_t factor = 0;
  switch (unit_s[0]) {
    case 's': factor = 1000; break;
    case 'm': factor = 60'000; break;
    case 'h': factor = 3'600'000; break;
    case 'd': factor = 86'400'000; break;
  }

  auto parse_bound = [&](const std::string& s) -> std::int64_t {
    try {
      std::size_t used = 0;
      std::int64_t v = std::stoll(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw ParseError("time window: malformed bound '" + s + "'");
    }
  };

  TimeWindow w;
  w.declared_unit = unit_s[0];
  std::int64_t lower = parse_bound(lower_s);
  if (lower < 0) throw ParseError("time window: negative lower bound");
  w.lower = lower * factor;
  if (upper_s == "*") {
    w.upper = TimeWindow::kUnbounded;
  } else {
    std::int64_t upper = parse_bound(upper_s);
    if (upper < 0) throw ParseError("time window: negative upper bound");
    w.upper = upper * factor;
    if (w.lower >= w.upper)
      throw ParseError("time window: lower bound must be below upper bound in '" + trimmed + "'");
  }
  return w;
}

std::string render_time_window(const TimeWindow& window) {
  if (window.is_unconstrained()) return "-";
  std::int64_t factor = 0;
  switch (window.declared_unit) {
    case 's': factor = 1000; break;
    case 'm': factor = 60'000; break;
    case 'h': factor = 3'600'000; break;
    case 'd': factor = 86'400'000; break;
    default: factor = 1000; break;
  }
  std::ostringstream os;
  os << window.lower / factor << ',';
  if (window.upper == TimeWindow::kUnbounded) os << '*';
  else os << window.upper / factor;
  os << ',' << window.declared_unit;
  return os.str();
}

bool verify_time(const TimeWindow& window, std::int64_t earlier_ts, std::int64_t later_ts) {
  if (earlier_ts > later_ts)
    throw std::logic_error("verify_time: earlier_ts > later_ts (caller passed a misoriented pair)");
  return window.contains(later_ts - earlier_ts);
}

std::vector<std::string> referenced_attributes(const ConditionExpr& cond) {
  std::vector<std::string> out;
  collect_refs(cond, out);
  return out;
}

}  // namespace mpdc

#ifndef MPDC_CONDITION_HPP
#define MPDC_CONDITION_HPP

#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "mpdc/event_log.hpp"

namespace mpdc {

enum class CmpOp { Eq, Ne, Lt, Le, Gt, Ge };

enum class RefSide { Activation, Target };

struct AttrRef {
  RefSide side = RefSide::Activation;
  std::string name;
  friend bool operator==(const AttrRef&, const AttrRef&) = default;
};

using Literal = std::variant<std::int64_t, double, std::string, bool>;
using Operand = std::variant<AttrRef, Literal>;

class ConditionExpr;
using ConditionPtr = std::shared_ptr<const ConditionExpr>;

/// Data-condition AST. Immutable after parse; evaluation is re-entrant.
class ConditionExpr {
 public:
  struct True {};
  struct Comparison {
    Operand lhs;
    CmpOp op = CmpOp::Eq;
    Operand rhs;
  };
  struct And {
    std::vector<ConditionPtr> terms;
  };
  struct Or {
    std::vector<ConditionPtr> terms;
  };
  struct Not {
    ConditionPtr term;
  };

  using Node = std::variant<True, Comparison, And, Or, Not>;

  explicit ConditionExpr(Node node) : node_(std::move(node)) {}
  const Node& node() const { return node_; }

  bool is_constant_true() const { return std::holds_alternative<True>(node_); }

 private:
  Node node_;
};

bool structurally_equal(const ConditionExpr& a, const ConditionExpr& b);

enum class SidePolicy { Activation, Correlation };

/// Parses a condition. "-" yields constant-true. Under the activation
/// policy T-side references are rejected and bare attribute names read
/// as A-side.
ConditionPtr parse_condition(const std::string& text, SidePolicy policy);

std::string render_condition(const ConditionExpr& cond);

/// Evaluates an activation condition against the activation payload.
/// Total: any comparison touching an absent attribute is false.
bool verify_activation(const ConditionExpr& cond, const PayloadSnapshot& activation);

/// Evaluates a correlation condition; A-side refs resolve in the
/// activation payload, T-side refs in the target payload.
bool verify_correlation(const ConditionExpr& cond, const PayloadSnapshot& activation,
                        const PayloadSnapshot& target);

/// Metric interval [lower, upper) in milliseconds.
struct TimeWindow {
  static constexpr std::int64_t kUnbounded = std::numeric_limits<std::int64_t>::max();

  std::int64_t lower = 0;
  std::int64_t upper = kUnbounded;  // exclusive
  char declared_unit = 's';         // one of s, m, h, d

  bool contains(std::int64_t delta) const { return delta >= lower && delta < upper; }
  bool is_unconstrained() const { return lower == 0 && upper == kUnbounded; }

  friend bool operator==(const TimeWindow&, const TimeWindow&) = default;
};

/// Parses "lower,upper,unit" with unit in {s,m,h,d} and "*" for an
/// unbounded upper. "-" yields [0, +inf).
TimeWindow parse_time_window(const std::string& text);

std::string render_time_window(const TimeWindow& window);

/// True iff later_ts - earlier_ts falls in the window. Callers orient
/// the pair per template direction; earlier_ts > later_ts signals an
/// engine bug and throws.
bool verify_time(const TimeWindow& window, std::int64_t earlier_ts, std::int64_t later_ts);

/// Names of every attribute referenced by the condition.
std::vector<std::string> referenced_attributes(const ConditionExpr& cond);

}  // namespace mpdc

#endif

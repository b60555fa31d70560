#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace cpfcert {

/// First-order term over a free signature: a variable or a function
/// application. Value type; equality and ordering are structural.
/// Variables and function symbols live in separate namespaces, a 0-ary
/// application is a constant.
class Term {
public:
  static Term var(std::string name);
  static Term app(std::string fun, std::vector<Term> args = {});

  bool is_var() const { return is_var_; }
  bool is_app() const { return !is_var_; }

  /// Variable name, or function symbol for an application.
  const std::string& name() const { return name_; }
  const std::vector<Term>& args() const { return args_; }
  std::size_t arity() const { return args_.size(); }

  bool operator==(const Term& other) const;
  std::strong_ordering operator<=>(const Term& other) const;

  /// "x" for variables, "f" / "f(a,b)" for applications.
  std::string to_string() const;

private:
  Term() = default;

  bool is_var_ = true;
  std::string name_;
  std::vector<Term> args_;
};

/// Path from the root of a term: 1-based child indices, empty = root.
class Position {
public:
  Position() = default;
  explicit Position(std::vector<std::size_t> indices);

  static Position root() { return Position(); }

  bool is_root() const { return indices_.empty(); }
  const std::vector<std::size_t>& indices() const { return indices_; }

  /// This position extended by one child step (1-based).
  Position child(std::size_t index) const;

  bool operator==(const Position&) const = default;
  /// Lexicographic; shorter prefixes order first. Used for the
  /// deterministic enumeration orders.
  auto operator<=>(const Position&) const = default;

  /// "1.2" style; the root prints as "root".
  std::string to_string() const;

private:
  std::vector<std::size_t> indices_;
};

/// Subterm of t at p, or nullopt if p does not address a node of t.
std::optional<Term> subterm_at(const Term& t, const Position& p);

/// t with the subterm at p replaced; nullopt if p is not a position of t.
std::optional<Term> replace_at(const Term& t, const Position& p, const Term& replacement);

/// All positions of t, in lexicographic (outside-in, left-to-right) order.
std::vector<Position> positions_of(const Term& t);

/// Variable names occurring in t, in first-occurrence order.
std::vector<std::string> variables_of(const Term& t);

/// Finite map from variable names to terms. Identity bindings are
/// normalized away, so the stored domain mentions only moved variables.
class Substitution {
public:
  Substitution() = default;
  explicit Substitution(std::map<std::string, Term> bindings);

  bool empty() const { return bindings_.empty(); }
  const std::map<std::string, Term>& bindings() const { return bindings_; }

  /// Adds or overwrites one binding (identity bindings are dropped).
  void bind(const std::string& var, Term t);

  /// Bound term for var, or nullptr if var is unbound.
  const Term* lookup(const std::string& var) const;

  /// Applies the substitution homomorphically; unbound variables stay.
  Term apply(const Term& t) const;

  bool operator==(const Substitution&) const = default;
  auto operator<=>(const Substitution&) const = default;

  std::string to_string() const;

private:
  std::map<std::string, Term> bindings_;
};

/// first followed by second: x |-> second(first(x)).
Substitution compose(const Substitution& first, const Substitution& second);

/// Directed rewrite rule lhs -> rhs. Plain data; shape requirements
/// (lhs not a variable, vars(rhs) within vars(lhs)) are enforced by
/// rule_defect / Trs::make / validate_structure, not the constructor,
/// so certificates can be represented before being judged.
struct Rule {
  Term lhs;
  Term rhs;

  bool operator==(const Rule&) const = default;
  auto operator<=>(const Rule&) const = default;

  std::string to_string() const;
};

/// Why r is not a well-formed rewrite rule, or nullopt if it is.
std::optional<std::string> rule_defect(const Rule& r);

/// Unordered equation lhs = rhs (either side may be rewritten with).
struct Equation {
  Term lhs;
  Term rhs;

  bool operator==(const Equation&) const = default;

  std::string to_string() const;
};

/// Function symbol -> arity, as induced by a set of terms.
using Signature = std::map<std::string, std::size_t>;

/// Folds t's function symbols into sig. Returns a description of the
/// first conflict (same name, two arities, or a name already used as a
/// variable) and leaves sig partially extended, or nullopt on success.
std::optional<std::string> extend_signature(Signature& sig, std::set<std::string>& var_names,
                                            const Term& t);

/// Ordered list of rewrite rules. Indexing is 0-based internally.
struct Trs {
  std::vector<Rule> rules;

  bool operator==(const Trs&) const = default;

  /// Validating constructor: every rule well-formed, one arity per
  /// symbol, variable and function namespaces disjoint.
  static std::optional<Trs> make(std::vector<Rule> rules, std::string* error = nullptr);

  /// Defects of the raw rule list, for certificate validation. Empty
  /// means Trs::make would accept.
  std::vector<std::string> defects() const;

  /// Signature induced by the rules; nullopt on arity conflict.
  std::optional<Signature> signature(std::string* error = nullptr) const;
};

/// Ordered list of equations.
struct EquationalSystem {
  std::vector<Equation> equations;

  bool operator==(const EquationalSystem&) const = default;

  static std::optional<EquationalSystem> make(std::vector<Equation> equations,
                                              std::string* error = nullptr);

  std::vector<std::string> defects() const;

  std::optional<Signature> signature(std::string* error = nullptr) const;
};

}  // namespace cpfcert

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cpfcert/term.hpp"

namespace cpfcert {

/// Three-valued comparison result of a reduction order: strict
/// decrease, weak decrease, or neither.
enum class OrderDecision { GT, GE, NGE };

std::string to_string(OrderDecision d);

/// Thrown when 64-bit arithmetic would overflow or a polynomial grows
/// past the size guard. Adversarial certificates can provoke this; the
/// checker maps it to a rejection.
class ArithmeticOverflow : public std::overflow_error {
public:
  using std::overflow_error::overflow_error;
};

/// Strict partial order on function symbols, given as (greater,
/// smaller) pairs and queried through the transitive closure. Symbols
/// not mentioned in any pair rank below every mentioned symbol and are
/// mutually incomparable.
class Precedence {
public:
  Precedence() = default;  // the empty precedence

  /// Rejects inputs whose transitive closure would be reflexive.
  static std::optional<Precedence> make(std::vector<std::pair<std::string, std::string>> pairs,
                                        std::string* error = nullptr);

  bool greater(const std::string& f, const std::string& g) const;
  bool mentions(const std::string& f) const;

  /// The pairs as given to make(), for serialization.
  const std::vector<std::pair<std::string, std::string>>& pairs() const { return pairs_; }

private:
  std::vector<std::pair<std::string, std::string>> pairs_;
  std::map<std::string, std::set<std::string>> above_;  // transitive closure
  std::set<std::string> mentioned_;
};

/// Knuth-Bendix order parameters. Symbols without an explicit weight
/// default to w0. Construction enforces admissibility against the
/// symbols' arities: constants weigh at least w0, and a weight-0 unary
/// symbol must be precedence-greater than every other symbol.
class KboParams {
public:
  /// arities: name -> arity for every symbol the order must cover
  /// (typically the TRS signature). Weight entries may add symbols of
  /// their own via declared_arities; a conflict between the two maps
  /// is an error.
  static std::optional<KboParams> make(std::int64_t w0,
                                       std::map<std::string, std::int64_t> weights,
                                       std::map<std::string, std::size_t> declared_arities,
                                       Precedence precedence, const Signature& arities,
                                       std::string* error = nullptr);

  std::int64_t w0() const { return w0_; }
  std::int64_t weight(const std::string& symbol) const;
  const std::map<std::string, std::int64_t>& weights() const { return weights_; }
  const Precedence& precedence() const { return precedence_; }

private:
  KboParams() = default;

  std::int64_t w0_ = 1;
  std::map<std::string, std::int64_t> weights_;
  Precedence precedence_;
};

/// Standard KBO comparison: variable-count condition, then weight,
/// then precedence, then left-to-right lexicographic recursion; the
/// weight-tie case of a unary spine over the compared variable counts
/// as strict. GE means GT or syntactic equality. Throws
/// ArithmeticOverflow if weights overflow 64 bits.
OrderDecision kbo_compare(const KboParams& p, const Term& s, const Term& t);

/// Power product of variables: variable name -> exponent (>= 1, zero
/// exponents are not stored). The default-constructed monomial is the
/// constant 1. Ordering is lexicographic in the (name, exponent)
/// sequence and is the deterministic processing order for absorption.
class Monomial {
public:
  Monomial() = default;

  static Monomial variable(std::string name);
  static Monomial power(std::string name, std::int64_t exponent);

  const std::map<std::string, std::int64_t>& exponents() const { return exps_; }
  bool is_constant() const { return exps_.empty(); }
  std::int64_t total_degree() const;
  std::set<std::string> support() const;

  Monomial times(const Monomial& other) const;

  /// Whether this monomial may donate to the deficit monomial: deficit
  /// <= this componentwise and both have the same support. Under that
  /// condition the pointwise inequality this >= deficit holds over the
  /// naturals, zero assignments included.
  bool can_absorb(const Monomial& deficit) const;

  bool operator==(const Monomial&) const = default;
  auto operator<=>(const Monomial&) const = default;

  std::string to_string() const;

private:
  std::map<std::string, std::int64_t> exps_;
};

/// Multivariate polynomial with 64-bit integer coefficients; zero
/// coefficients are not stored. All arithmetic is overflow-checked and
/// size-guarded (throws ArithmeticOverflow).
class Polynomial {
public:
  Polynomial() = default;  // zero

  static Polynomial constant(std::int64_t value);
  static Polynomial variable(std::string name);
  static Polynomial monomial(Monomial m, std::int64_t coefficient);

  const std::map<Monomial, std::int64_t>& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  bool nonnegative() const;

  Polynomial plus(const Polynomial& other) const;
  Polynomial minus(const Polynomial& other) const;
  Polynomial times(const Polynomial& other) const;
  Polynomial pow(std::int64_t exponent) const;

  /// Evaluates at the point; variables missing from it count as 0.
  std::int64_t eval(const std::map<std::string, std::int64_t>& point) const;

  bool operator==(const Polynomial&) const = default;

  std::string to_string() const;

private:
  void add_term(const Monomial& m, std::int64_t coefficient);

  std::map<Monomial, std::int64_t> coeffs_;
};

/// One donation taken by absorb, for auditing.
struct AbsorbMove {
  Monomial deficit;
  Monomial donor;
  std::int64_t amount;
};

/// Monomial-absorption closure: negative-coefficient monomials are
/// paid for from surplus monomials that dominate them componentwise
/// with equal support. Deficits are processed in monomial order,
/// donors in decreasing total degree. Each donation is a pointwise
/// lower bound over the naturals, so a coefficientwise nonnegative
/// result proves the input nonnegative on every assignment.
Polynomial absorb(Polynomial p, std::vector<AbsorbMove>* moves = nullptr);

/// GT iff absorb(pl - pr - 1) is coefficientwise nonnegative, GE iff
/// absorb(pl - pr) is, NGE otherwise.
OrderDecision poly_compare(const Polynomial& pl, const Polynomial& pr);

/// Formal argument name of argument i (1-based): "x1", "x2", ...
std::string formal_arg_name(std::size_t i);

/// Index i of a formal argument name "xi" (1-based, at most 1000000),
/// or 0 if the name is not one.
std::size_t formal_arg_index(const std::string& name);

/// Polynomial interpretation over the naturals: one polynomial in
/// x1..x_arity per function symbol. Construction enforces nonnegative
/// coefficients, variables within the arity, one entry per symbol, and
/// strict monotonicity in every argument (a positive pure power of
/// each xi), which keeps strict decreases closed under contexts.
class PolyInterpretation {
public:
  struct Entry {
    std::string symbol;
    std::size_t arity;
    Polynomial polynomial;

    bool operator==(const Entry&) const = default;
  };

  static std::optional<PolyInterpretation> make(std::vector<Entry> entries,
                                                std::string* error = nullptr);

  const Polynomial* lookup(const std::string& symbol, std::size_t arity) const;
  const std::vector<Entry>& entries() const { return entries_; }

private:
  PolyInterpretation() = default;

  std::vector<Entry> entries_;
  std::map<std::pair<std::string, std::size_t>, std::size_t> index_;
};

/// Homomorphic evaluation of t: variables become themselves, an
/// application becomes its symbol's polynomial with the argument
/// polynomials substituted for x1..xn. On a symbol without an
/// interpretation returns nullopt and reports the symbol via error.
std::optional<Polynomial> poly_of_term(const PolyInterpretation& interp, const Term& t,
                                       std::string* error = nullptr);

/// A reduction order ready for comparisons.
using ReductionOrder = std::variant<KboParams, PolyInterpretation>;

/// Dispatches to kbo_compare or poly_compare over poly_of_term. A
/// polynomial-side evaluation error yields NGE with error set.
OrderDecision order_compare(const ReductionOrder& order, const Term& s, const Term& t,
                            std::string* error = nullptr);

}  // namespace cpfcert

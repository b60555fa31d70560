#include "cpfcert/term.hpp"

#include <algorithm>
#include <type_traits>
#include <utility>

namespace cpfcert {

bool Term::operator==(const Term& other) const {
  return is_var_ == other.is_var_ && name_ == other.name_ && args_ == other.args_;
}

std::strong_ordering Term::operator<=>(const Term& other) const {
  if (auto cmp = is_var_ <=> other.is_var_; cmp != 0) return cmp;
  if (auto cmp = name_ <=> other.name_; cmp != 0) return cmp;
  return std::lexicographical_compare_three_way(args_.begin(), args_.end(), other.args_.begin(),
                                                other.args_.end());
}

Term Term::var(std::string name) {
  Term t;
  t.is_var_ = true;
  t.name_ = std::move(name);
  return t;
}

Term Term::app(std::string fun, std::vector<Term> args) {
  Term t;
  t.is_var_ = false;
  t.name_ = std::move(fun);
  t.args_ = std::move(args);
  return t;
}

std::string Term::to_string() const {
  if (is_var_ || args_.empty()) return name_;
  std::string out = name_;
  out += '(';
  for (std::size_t i = 0; i < args_.size(); ++i) {
    if (i > 0) out += ',';
    out += args_[i].to_string();
  }
  out += ')';
  return out;
}

Position::Position(std::vector<std::size_t> indices) : indices_(std::move(indices)) {}

Position Position::child(std::size_t index) const {
  std::vector<std::size_t> next = indices_;
  next.push_back(index);
  return Position(std::move(next));
}

std::string Position::to_string() const {
  if (indices_.empty()) return "root";
  std::string out;
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (i > 0) out += '.';
    out += std::to_string(indices_[i]);
  }
  return out;
}

std::optional<Term> subterm_at(const Term& t, const Position& p) {
  const Term* cur = &t;
  for (std::size_t index : p.indices()) {
    if (index == 0 || index > cur->args().size()) return std::nullopt;
    cur = &cur->args()[index - 1];
  }
  return *cur;
}

std::optional<Term> replace_at(const Term& t, const Position& p, const Term& replacement) {
  if (p.is_root()) return replacement;
  std::size_t index = p.indices().front();
  if (t.is_var() || index == 0 || index > t.args().size()) return std::nullopt;
  std::vector<std::size_t> rest(p.indices().begin() + 1, p.indices().end());
  auto inner = replace_at(t.args()[index - 1], Position(std::move(rest)), replacement);
  if (!inner) return std::nullopt;
  std::vector<Term> args = t.args();
  args[index - 1] = std::move(*inner);
  return Term::app(t.name(), std::move(args));
}

namespace {

void collect_positions(const Term& t, Position here, std::vector<Position>& out) {
  out.push_back(here);
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    collect_positions(t.args()[i], here.child(i + 1), out);
  }
}

void collect_variables(const Term& t, std::vector<std::string>& out, std::set<std::string>& seen) {
  if (t.is_var()) {
    if (seen.insert(t.name()).second) out.push_back(t.name());
    return;
  }
  for (const Term& arg : t.args()) collect_variables(arg, out, seen);
}

}  // namespace

std::vector<Position> positions_of(const Term& t) {
  std::vector<Position> out;
  collect_positions(t, Position::root(), out);
  return out;
}

std::vector<std::string> variables_of(const Term& t) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  collect_variables(t, out, seen);
  return out;
}

Substitution::Substitution(std::map<std::string, Term> bindings) {
  for (auto& [var, term] : bindings) {
    if (term.is_var() && term.name() == var) continue;
    bindings_.emplace(var, std::move(term));
  }
}

void Substitution::bind(const std::string& var, Term t) {
  if (t.is_var() && t.name() == var) {
    bindings_.erase(var);
    return;
  }
  bindings_.insert_or_assign(var, std::move(t));
}

const Term* Substitution::lookup(const std::string& var) const {
  auto it = bindings_.find(var);
  return it == bindings_.end() ? nullptr : &it->second;
}

Term Substitution::apply(const Term& t) const {
  if (t.is_var()) {
    const Term* bound = lookup(t.name());
    return bound ? *bound : t;
  }
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& arg : t.args()) args.push_back(apply(arg));
  return Term::app(t.name(), std::move(args));
}

std::string Substitution::to_string() const {
  std::string out = "{";
  bool first = true;
  for (const auto& [var, term] : bindings_) {
    if (!first) out += ", ";
    first = false;
    out += var;
    out += " -> ";
    out += term.to_string();
  }
  out += '}';
  return out;
}

Substitution compose(const Substitution& first, const Substitution& second) {
  Substitution out;
  for (const auto& [var, term] : first.bindings()) out.bind(var, second.apply(term));
  for (const auto& [var, term] : second.bindings()) {
    if (!first.lookup(var)) out.bind(var, term);
  }
  return out;
}

std::string Rule::to_string() const { return lhs.to_string() + " -> " + rhs.to_string(); }

std::optional<std::string> rule_defect(const Rule& r) {
  if (r.lhs.is_var()) return "lhs is a variable: " + r.to_string();
  std::set<std::string> lhs_vars;
  for (const std::string& v : variables_of(r.lhs)) lhs_vars.insert(v);
  for (const std::string& v : variables_of(r.rhs)) {
    if (!lhs_vars.contains(v)) return "rhs variable not in lhs: " + v + " in " + r.to_string();
  }
  return std::nullopt;
}

std::string Equation::to_string() const { return lhs.to_string() + " = " + rhs.to_string(); }

std::optional<std::string> extend_signature(Signature& sig, std::set<std::string>& var_names,
                                            const Term& t) {
  if (t.is_var()) {
    if (sig.contains(t.name()))
      return "name used as both variable and function symbol: " + t.name();
    var_names.insert(t.name());
    return std::nullopt;
  }
  if (var_names.contains(t.name()))
    return "name used as both variable and function symbol: " + t.name();
  auto [it, inserted] = sig.emplace(t.name(), t.arity());
  if (!inserted && it->second != t.arity())
    return "symbol " + t.name() + " used with arities " + std::to_string(it->second) + " and " +
           std::to_string(t.arity());
  for (const Term& arg : t.args()) {
    if (auto err = extend_signature(sig, var_names, arg)) return err;
  }
  return std::nullopt;
}

namespace {

template <typename Pair>
std::vector<std::string> collect_defects(const std::vector<Pair>& pairs, bool as_rules) {
  std::vector<std::string> out;
  Signature sig;
  std::set<std::string> vars;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if constexpr (std::is_same_v<Pair, Rule>) {
      if (as_rules) {
        if (auto defect = rule_defect(pairs[i]))
          out.push_back("rule " + std::to_string(i + 1) + ": " + *defect);
      }
    }
    for (const Term* side : {&pairs[i].lhs, &pairs[i].rhs}) {
      if (auto err = extend_signature(sig, vars, *side))
        out.push_back((as_rules ? "rule " : "equation ") + std::to_string(i + 1) + ": " + *err);
    }
  }
  return out;
}

}  // namespace

std::optional<Trs> Trs::make(std::vector<Rule> rules, std::string* error) {
  Trs trs{std::move(rules)};
  std::vector<std::string> defects = trs.defects();
  if (!defects.empty()) {
    if (error) *error = defects.front();
    return std::nullopt;
  }
  return trs;
}

std::vector<std::string> Trs::defects() const { return collect_defects(rules, true); }

std::optional<Signature> Trs::signature(std::string* error) const {
  Signature sig;
  std::set<std::string> vars;
  for (const Rule& r : rules) {
    for (const Term* side : {&r.lhs, &r.rhs}) {
      if (auto err = extend_signature(sig, vars, *side)) {
        if (error) *error = *err;
        return std::nullopt;
      }
    }
  }
  return sig;
}

std::optional<EquationalSystem> EquationalSystem::make(std::vector<Equation> equations,
                                                       std::string* error) {
  EquationalSystem es{std::move(equations)};
  std::vector<std::string> defects = es.defects();
  if (!defects.empty()) {
    if (error) *error = defects.front();
    return std::nullopt;
  }
  return es;
}

std::vector<std::string> EquationalSystem::defects() const {
  return collect_defects(equations, false);
}

std::optional<Signature> EquationalSystem::signature(std::string* error) const {
  Signature sig;
  std::set<std::string> vars;
  for (const Equation& e : equations) {
    for (const Term* side : {&e.lhs, &e.rhs}) {
      if (auto err = extend_signature(sig, vars, *side)) {
        if (error) *error = *err;
        return std::nullopt;
      }
    }
  }
  return sig;
}

}  // namespace cpfcert

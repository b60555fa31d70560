#include "cpfcert/rewriting.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

namespace cpfcert {

namespace {

// Raw map, not Substitution: matching must distinguish "unbound" from
// "bound to itself" to reject nonlinear patterns like f(x,x) on f(x,y).
bool match_into(const Term& pattern, const Term& subject, std::map<std::string, Term>& bindings) {
  if (pattern.is_var()) {
    auto [it, inserted] = bindings.emplace(pattern.name(), subject);
    return inserted || it->second == subject;
  }
  if (subject.is_var() || pattern.name() != subject.name() ||
      pattern.arity() != subject.arity()) {
    return false;
  }
  for (std::size_t i = 0; i < pattern.arity(); ++i) {
    if (!match_into(pattern.args()[i], subject.args()[i], bindings)) return false;
  }
  return true;
}

bool occurs(const std::string& var, const Term& t) {
  if (t.is_var()) return t.name() == var;
  return std::any_of(t.args().begin(), t.args().end(),
                     [&](const Term& arg) { return occurs(var, arg); });
}

}  // namespace

std::optional<Substitution> match(const Term& pattern, const Term& subject) {
  std::map<std::string, Term> bindings;
  if (!match_into(pattern, subject, bindings)) return std::nullopt;
  return Substitution(std::move(bindings));
}

std::optional<Substitution> unify(const Term& s, const Term& t) {
  Substitution sigma;
  std::vector<std::pair<Term, Term>> work = {{s, t}};
  while (!work.empty()) {
    Term a = sigma.apply(work.back().first);
    Term b = sigma.apply(work.back().second);
    work.pop_back();
    if (a == b) continue;
    if (!a.is_var() && b.is_var()) std::swap(a, b);
    if (a.is_var()) {
      if (occurs(a.name(), b)) return std::nullopt;
      Substitution binding;
      binding.bind(a.name(), b);
      sigma = compose(sigma, binding);
      continue;
    }
    if (a.name() != b.name() || a.arity() != b.arity()) return std::nullopt;
    for (std::size_t i = a.arity(); i > 0; --i) {
      work.emplace_back(a.args()[i - 1], b.args()[i - 1]);
    }
  }
  return sigma;
}

std::vector<RewriteStep> rewrite_steps(const Trs& trs, const Term& t) {
  std::vector<RewriteStep> out;
  for (const Position& p : positions_of(t)) {
    Term sub = *subterm_at(t, p);
    for (std::size_t i = 0; i < trs.rules.size(); ++i) {
      auto sigma = match(trs.rules[i].lhs, sub);
      if (!sigma) continue;
      out.push_back(RewriteStep{*replace_at(t, p, sigma->apply(trs.rules[i].rhs)), i, p});
    }
  }
  return out;
}

namespace {

// Contracts the leftmost-innermost redex, lowest rule index first.
std::optional<Term> innermost_step(const Trs& trs, const Term& t) {
  if (t.is_var()) return std::nullopt;
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    if (auto stepped = innermost_step(trs, t.args()[i])) {
      std::vector<Term> args = t.args();
      args[i] = std::move(*stepped);
      return Term::app(t.name(), std::move(args));
    }
  }
  for (const Rule& rule : trs.rules) {
    if (auto sigma = match(rule.lhs, t)) return sigma->apply(rule.rhs);
  }
  return std::nullopt;
}

}  // namespace

std::optional<Term> normal_form(const Trs& trs, Term t, std::uint64_t fuel) {
  for (std::uint64_t used = 0; used < fuel; ++used) {
    auto next = innermost_step(trs, t);
    if (!next) return t;
    t = std::move(*next);
  }
  if (innermost_step(trs, t)) return std::nullopt;
  return t;
}

namespace {

std::size_t trailing_primes(const std::string& name) {
  std::size_t n = 0;
  while (n < name.size() && name[name.size() - 1 - n] == '\'') ++n;
  return n;
}

Term prime_variables(const Term& t, std::size_t count) {
  if (t.is_var()) return Term::var(t.name() + std::string(count, '\''));
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& arg : t.args()) args.push_back(prime_variables(arg, count));
  return Term::app(t.name(), std::move(args));
}

}  // namespace

std::vector<CriticalPair> critical_pairs(const Trs& trs) {
  std::vector<CriticalPair> out;
  for (std::size_t o = 0; o < trs.rules.size(); ++o) {
    const Rule& outer = trs.rules[o];
    std::size_t primes = 0;
    for (const Term* side : {&outer.lhs, &outer.rhs}) {
      for (const std::string& v : variables_of(*side)) {
        primes = std::max(primes, trailing_primes(v));
      }
    }
    for (std::size_t i = 0; i < trs.rules.size(); ++i) {
      Rule inner{prime_variables(trs.rules[i].lhs, primes + 1),
                 prime_variables(trs.rules[i].rhs, primes + 1)};
      for (const Position& p : positions_of(outer.lhs)) {
        Term sub = *subterm_at(outer.lhs, p);
        if (sub.is_var()) continue;
        if (p.is_root() && i == o) continue;
        auto sigma = unify(sub, inner.lhs);
        if (!sigma) continue;
        Term peak = sigma->apply(outer.lhs);
        Term left = sigma->apply(*replace_at(outer.lhs, p, inner.rhs));
        Term right = sigma->apply(outer.rhs);
        out.push_back(CriticalPair{std::move(peak), std::move(left), std::move(right), o, i, p});
      }
    }
  }
  return out;
}

bool critical_pair_replays(const Trs& trs, const CriticalPair& cp) {
  if (cp.outer_rule >= trs.rules.size() || cp.inner_rule >= trs.rules.size()) return false;
  auto sub = subterm_at(cp.peak, cp.position);
  if (!sub) return false;
  auto outer_sigma = match(trs.rules[cp.outer_rule].lhs, cp.peak);
  if (!outer_sigma || outer_sigma->apply(trs.rules[cp.outer_rule].rhs) != cp.right) return false;
  // The inner rule appears in the pair renamed apart; match modulo renaming.
  Rule inner = canonical_rule(trs.rules[cp.inner_rule]);
  auto inner_sigma = match(inner.lhs, *sub);
  if (!inner_sigma) return false;
  auto replaced = replace_at(cp.peak, cp.position, inner_sigma->apply(inner.rhs));
  return replaced && *replaced == cp.left;
}

namespace {

Term rename_by(const Term& t, const std::map<std::string, std::string>& renaming) {
  if (t.is_var()) return Term::var(renaming.at(t.name()));
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& arg : t.args()) args.push_back(rename_by(arg, renaming));
  return Term::app(t.name(), std::move(args));
}

}  // namespace

Rule canonical_rule(const Rule& a) {
  std::map<std::string, std::string> renaming;
  for (const Term* side : {&a.lhs, &a.rhs}) {
    for (const std::string& v : variables_of(*side)) {
      if (!renaming.contains(v)) renaming.emplace(v, "v" + std::to_string(renaming.size()));
    }
  }
  return Rule{rename_by(a.lhs, renaming), rename_by(a.rhs, renaming)};
}

bool alpha_equal(const Rule& a, const Rule& b) { return canonical_rule(a) == canonical_rule(b); }

}  // namespace cpfcert

#include "cpfcert/orders.hpp"

#include <algorithm>
#include <cstdlib>

namespace cpfcert {

std::string to_string(OrderDecision d) {
  switch (d) {
    case OrderDecision::GT:
      return "GT";
    case OrderDecision::GE:
      return "GE";
    default:
      return "NGE";
  }
}

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw ArithmeticOverflow("64-bit overflow in order arithmetic");
  }
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw ArithmeticOverflow("64-bit overflow in order arithmetic");
  }
  return r;
}

// Keeps adversarial certificates from blowing up memory.
constexpr std::size_t kMaxMonomials = 200000;

}  // namespace

std::optional<Precedence> Precedence::make(std::vector<std::pair<std::string, std::string>> pairs,
                                           std::string* error) {
  Precedence p;
  p.pairs_ = std::move(pairs);
  std::map<std::string, std::set<std::string>> direct;
  for (const auto& [greater, smaller] : p.pairs_) {
    direct[greater].insert(smaller);
    p.mentioned_.insert(greater);
    p.mentioned_.insert(smaller);
  }
  for (const std::string& start : p.mentioned_) {
    std::set<std::string>& reach = p.above_[start];
    std::vector<std::string> stack(direct[start].begin(), direct[start].end());
    while (!stack.empty()) {
      std::string cur = std::move(stack.back());
      stack.pop_back();
      if (!reach.insert(cur).second) continue;
      for (const std::string& next : direct[cur]) {
        if (!reach.contains(next)) stack.push_back(next);
      }
    }
    if (reach.contains(start)) {
      if (error) *error = "precedence contains a cycle through " + start;
      return std::nullopt;
    }
  }
  return p;
}

bool Precedence::greater(const std::string& f, const std::string& g) const {
  auto it = above_.find(f);
  if (it != above_.end() && it->second.contains(g)) return true;
  return mentioned_.contains(f) && !mentioned_.contains(g);
}

bool Precedence::mentions(const std::string& f) const { return mentioned_.contains(f); }

std::optional<KboParams> KboParams::make(std::int64_t w0,
                                         std::map<std::string, std::int64_t> weights,
                                         std::map<std::string, std::size_t> declared_arities,
                                         Precedence precedence, const Signature& arities,
                                         std::string* error) {
  auto fail = [&](std::string why) {
    if (error) *error = std::move(why);
    return std::optional<KboParams>();
  };
  if (w0 < 1) return fail("w0 must be positive");
  for (const auto& [name, w] : weights) {
    if (w < 0) return fail("negative weight for symbol " + name);
  }
  std::map<std::string, std::size_t> combined(arities.begin(), arities.end());
  for (const auto& [name, arity] : declared_arities) {
    auto [it, inserted] = combined.emplace(name, arity);
    if (!inserted && it->second != arity) {
      return fail("symbol " + name + " declared with arity " + std::to_string(arity) +
                  " but used with arity " + std::to_string(it->second));
    }
  }
  KboParams p;
  p.w0_ = w0;
  p.weights_ = std::move(weights);
  p.precedence_ = std::move(precedence);
  for (const auto& [name, arity] : combined) {
    if (arity == 0 && p.weight(name) < w0) {
      return fail("constant " + name + " has weight " + std::to_string(p.weight(name)) +
                  " below w0 = " + std::to_string(w0));
    }
    if (arity == 1 && p.weight(name) == 0) {
      for (const auto& [other, other_arity] : combined) {
        (void)other_arity;
        if (other != name && !p.precedence_.greater(name, other)) {
          return fail("unary symbol " + name +
                      " has weight 0 but is not precedence-greater than " + other);
        }
      }
    }
  }
  return p;
}

std::int64_t KboParams::weight(const std::string& symbol) const {
  auto it = weights_.find(symbol);
  return it == weights_.end() ? w0_ : it->second;
}

namespace {

void count_vars(const Term& t, std::map<std::string, std::size_t>& counts) {
  if (t.is_var()) {
    ++counts[t.name()];
    return;
  }
  for (const Term& arg : t.args()) count_vars(arg, counts);
}

std::int64_t kbo_weight(const KboParams& p, const Term& t) {
  if (t.is_var()) return p.w0();
  std::int64_t w = p.weight(t.name());
  for (const Term& arg : t.args()) w = checked_add(w, kbo_weight(p, arg));
  return w;
}

}  // namespace

OrderDecision kbo_compare(const KboParams& p, const Term& s, const Term& t) {
  if (s == t) return OrderDecision::GE;
  std::map<std::string, std::size_t> s_counts, t_counts;
  count_vars(s, s_counts);
  count_vars(t, t_counts);
  for (const auto& [v, n] : t_counts) {
    auto it = s_counts.find(v);
    if (it == s_counts.end() || it->second < n) return OrderDecision::NGE;
  }
  std::int64_t ws = kbo_weight(p, s);
  std::int64_t wt = kbo_weight(p, t);
  if (ws > wt) return OrderDecision::GT;
  if (ws < wt) return OrderDecision::NGE;
  if (s.is_var()) return OrderDecision::NGE;
  if (t.is_var()) {
    // Weight tie against a variable: only a unary spine ending in that
    // variable is strictly greater (the spine symbols necessarily have
    // weight 0, hence are precedence-maximal by admissibility).
    const Term* cur = &s;
    while (cur->is_app() && cur->arity() == 1) cur = &cur->args()[0];
    return *cur == t ? OrderDecision::GT : OrderDecision::NGE;
  }
  if (s.name() != t.name()) {
    return p.precedence().greater(s.name(), t.name()) ? OrderDecision::GT : OrderDecision::NGE;
  }
  std::size_t n = std::min(s.arity(), t.arity());
  for (std::size_t i = 0; i < n; ++i) {
    if (s.args()[i] == t.args()[i]) continue;
    return kbo_compare(p, s.args()[i], t.args()[i]) == OrderDecision::GT ? OrderDecision::GT
                                                                         : OrderDecision::NGE;
  }
  return OrderDecision::NGE;
}

Monomial Monomial::variable(std::string name) { return power(std::move(name), 1); }

Monomial Monomial::power(std::string name, std::int64_t exponent) {
  Monomial m;
  if (exponent > 0) m.exps_.emplace(std::move(name), exponent);
  return m;
}

std::int64_t Monomial::total_degree() const {
  std::int64_t d = 0;
  for (const auto& [name, e] : exps_) {
    (void)name;
    d = checked_add(d, e);
  }
  return d;
}

std::set<std::string> Monomial::support() const {
  std::set<std::string> vars;
  for (const auto& [name, e] : exps_) {
    (void)e;
    vars.insert(name);
  }
  return vars;
}

Monomial Monomial::times(const Monomial& other) const {
  Monomial out = *this;
  for (const auto& [name, e] : other.exps_) {
    auto [it, inserted] = out.exps_.emplace(name, e);
    if (!inserted) it->second = checked_add(it->second, e);
  }
  return out;
}

bool Monomial::can_absorb(const Monomial& deficit) const {
  if (exps_.size() != deficit.exps_.size()) return false;
  for (const auto& [name, e] : deficit.exps_) {
    auto it = exps_.find(name);
    if (it == exps_.end() || it->second < e) return false;
  }
  return true;
}

std::string Monomial::to_string() const {
  if (exps_.empty()) return "1";
  std::string out;
  for (const auto& [name, e] : exps_) {
    if (!out.empty()) out += '*';
    out += name;
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

Polynomial Polynomial::constant(std::int64_t value) { return monomial(Monomial(), value); }

Polynomial Polynomial::variable(std::string name) {
  return monomial(Monomial::variable(std::move(name)), 1);
}

Polynomial Polynomial::monomial(Monomial m, std::int64_t coefficient) {
  Polynomial p;
  if (coefficient != 0) p.coeffs_.emplace(std::move(m), coefficient);
  return p;
}

bool Polynomial::nonnegative() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const auto& entry) { return entry.second >= 0; });
}

void Polynomial::add_term(const Monomial& m, std::int64_t coefficient) {
  if (coefficient == 0) return;
  auto [it, inserted] = coeffs_.emplace(m, coefficient);
  if (!inserted) {
    it->second = checked_add(it->second, coefficient);
    if (it->second == 0) coeffs_.erase(it);
  }
  if (coeffs_.size() > kMaxMonomials) throw ArithmeticOverflow("polynomial exceeds size guard");
}

Polynomial Polynomial::plus(const Polynomial& other) const {
  Polynomial out = *this;
  for (const auto& [m, c] : other.coeffs_) out.add_term(m, c);
  return out;
}

Polynomial Polynomial::minus(const Polynomial& other) const {
  Polynomial out = *this;
  for (const auto& [m, c] : other.coeffs_) out.add_term(m, checked_mul(c, -1));
  return out;
}

Polynomial Polynomial::times(const Polynomial& other) const {
  if (!coeffs_.empty() && other.coeffs_.size() > kMaxMonomials / coeffs_.size()) {
    throw ArithmeticOverflow("polynomial product exceeds size guard");
  }
  Polynomial out;
  for (const auto& [m1, c1] : coeffs_) {
    for (const auto& [m2, c2] : other.coeffs_) {
      out.add_term(m1.times(m2), checked_mul(c1, c2));
    }
  }
  return out;
}

Polynomial Polynomial::pow(std::int64_t exponent) const {
  if (exponent < 0) throw ArithmeticOverflow("negative polynomial exponent");
  Polynomial result = Polynomial::constant(1);
  Polynomial base = *this;
  while (exponent > 0) {
    if (exponent & 1) result = result.times(base);
    exponent >>= 1;
    if (exponent > 0) base = base.times(base);
  }
  return result;
}

namespace {

std::int64_t checked_ipow(std::int64_t base, std::int64_t exponent) {
  std::int64_t r = 1;
  for (std::int64_t i = 0; i < exponent; ++i) {
    r = checked_mul(r, base);
    if (r == 0) break;
  }
  return r;
}

}  // namespace

std::int64_t Polynomial::eval(const std::map<std::string, std::int64_t>& point) const {
  std::int64_t sum = 0;
  for (const auto& [m, c] : coeffs_) {
    std::int64_t term = c;
    for (const auto& [name, e] : m.exponents()) {
      auto it = point.find(name);
      std::int64_t value = it == point.end() ? 0 : it->second;
      term = checked_mul(term, checked_ipow(value, e));
    }
    sum = checked_add(sum, term);
  }
  return sum;
}

std::string Polynomial::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : coeffs_) {
    if (!out.empty()) out += " + ";
    if (m.is_constant()) {
      out += std::to_string(c);
    } else if (c == 1) {
      out += m.to_string();
    } else {
      out += std::to_string(c) + "*" + m.to_string();
    }
  }
  return out;
}

Polynomial absorb(Polynomial p, std::vector<AbsorbMove>* moves) {
  std::map<Monomial, std::int64_t> coeffs = p.coefficients();
  std::vector<Monomial> deficits;
  for (const auto& [m, c] : coeffs) {
    if (c < 0) deficits.push_back(m);
  }
  for (const Monomial& deficit : deficits) {
    std::int64_t& need = coeffs.at(deficit);
    // Donors with surplus, largest total degree first; ties in monomial order.
    std::vector<Monomial> donors;
    for (const auto& [m, c] : coeffs) {
      if (c > 0 && m.can_absorb(deficit)) donors.push_back(m);
    }
    std::sort(donors.begin(), donors.end(), [](const Monomial& a, const Monomial& b) {
      std::int64_t da = a.total_degree();
      std::int64_t db = b.total_degree();
      return da != db ? da > db : a < b;
    });
    for (const Monomial& donor : donors) {
      if (need >= 0) break;
      std::int64_t& have = coeffs.at(donor);
      std::int64_t amount = std::min(have, checked_mul(need, -1));
      have -= amount;
      need += amount;
      if (moves && amount > 0) moves->push_back(AbsorbMove{deficit, donor, amount});
    }
  }
  Polynomial out;
  for (const auto& [m, c] : coeffs) out = out.plus(Polynomial::monomial(m, c));
  return out;
}

OrderDecision poly_compare(const Polynomial& pl, const Polynomial& pr) {
  Polynomial diff = pl.minus(pr);
  if (absorb(diff.minus(Polynomial::constant(1))).nonnegative()) return OrderDecision::GT;
  if (absorb(diff).nonnegative()) return OrderDecision::GE;
  return OrderDecision::NGE;
}

std::string formal_arg_name(std::size_t i) { return "x" + std::to_string(i); }

std::size_t formal_arg_index(const std::string& name) {
  if (name.size() < 2 || name[0] != 'x' || name[1] == '0') return 0;
  std::size_t value = 0;
  for (std::size_t i = 1; i < name.size(); ++i) {
    if (name[i] < '0' || name[i] > '9') return 0;
    value = value * 10 + static_cast<std::size_t>(name[i] - '0');
    if (value > 1000000) return 0;
  }
  return value;
}

std::optional<PolyInterpretation> PolyInterpretation::make(std::vector<Entry> entries,
                                                           std::string* error) {
  auto fail = [&](std::string why) {
    if (error) *error = std::move(why);
    return std::optional<PolyInterpretation>();
  };
  PolyInterpretation interp;
  interp.entries_ = std::move(entries);
  for (std::size_t i = 0; i < interp.entries_.size(); ++i) {
    const Entry& entry = interp.entries_[i];
    std::string described = entry.symbol + "/" + std::to_string(entry.arity);
    auto [it, inserted] = interp.index_.emplace(std::make_pair(entry.symbol, entry.arity), i);
    if (!inserted) return fail("duplicate interpretation for " + described);
    for (const auto& [m, c] : entry.polynomial.coefficients()) {
      if (c < 0) return fail("negative coefficient in interpretation of " + described);
      for (const auto& [name, e] : m.exponents()) {
        (void)e;
        std::size_t index = formal_arg_index(name);
        if (index == 0 || index > entry.arity) {
          return fail("interpretation of " + described + " mentions " + name +
                      ", outside x1..x" + std::to_string(entry.arity));
        }
      }
    }
    // Strict monotonicity in every argument: some positive pure power
    // of each xi. Without it, strict decreases are not closed under
    // contexts and rule removal would be unsound.
    for (std::size_t arg = 1; arg <= entry.arity; ++arg) {
      std::string formal = formal_arg_name(arg);
      bool monotone = false;
      for (const auto& [m, c] : entry.polynomial.coefficients()) {
        if (c > 0 && m.exponents().size() == 1 && m.exponents().contains(formal)) {
          monotone = true;
          break;
        }
      }
      if (!monotone) {
        return fail("interpretation of " + described + " is not strictly monotone in " + formal);
      }
    }
  }
  return interp;
}

const Polynomial* PolyInterpretation::lookup(const std::string& symbol, std::size_t arity) const {
  auto it = index_.find(std::make_pair(symbol, arity));
  return it == index_.end() ? nullptr : &entries_[it->second].polynomial;
}

std::optional<Polynomial> poly_of_term(const PolyInterpretation& interp, const Term& t,
                                       std::string* error) {
  if (t.is_var()) return Polynomial::variable(t.name());
  const Polynomial* form = interp.lookup(t.name(), t.arity());
  if (!form) {
    if (error) {
      *error = "no interpretation for symbol " + t.name() + "/" + std::to_string(t.arity());
    }
    return std::nullopt;
  }
  std::vector<Polynomial> arg_polys;
  arg_polys.reserve(t.args().size());
  for (const Term& arg : t.args()) {
    auto p = poly_of_term(interp, arg, error);
    if (!p) return std::nullopt;
    arg_polys.push_back(std::move(*p));
  }
  Polynomial result;
  for (const auto& [m, c] : form->coefficients()) {
    Polynomial term = Polynomial::constant(c);
    for (const auto& [name, e] : m.exponents()) {
      std::size_t index = formal_arg_index(name);
      term = term.times(arg_polys[index - 1].pow(e));
    }
    result = result.plus(term);
  }
  return result;
}

OrderDecision order_compare(const ReductionOrder& order, const Term& s, const Term& t,
                            std::string* error) {
  if (const KboParams* kbo = std::get_if<KboParams>(&order)) {
    return kbo_compare(*kbo, s, t);
  }
  const PolyInterpretation& interp = std::get<PolyInterpretation>(order);
  auto ps = poly_of_term(interp, s, error);
  if (!ps) return OrderDecision::NGE;
  auto pt = poly_of_term(interp, t, error);
  if (!pt) return OrderDecision::NGE;
  return poly_compare(*ps, *pt);
}

}  // namespace cpfcert

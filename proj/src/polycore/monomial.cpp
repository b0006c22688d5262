#include "singtraj/polycore/monomial.hpp"

#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "singtraj/polycore/errors.hpp"

namespace singtraj {

void Monomial::set(std::size_t i, unsigned e) {
  if (e > 0xFFFFu) throw std::overflow_error("monomial exponent overflow");
  exps_[i] = static_cast<Exponent>(e);
}

unsigned Monomial::total_degree() const {
  unsigned d = 0;
  for (auto e : exps_) d += e;
  return d;
}

bool Monomial::is_one() const {
  for (auto e : exps_) {
    if (e != 0) return false;
  }
  return true;
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    if (exps_[i] > other.exps_[i]) return false;
  }
  return true;
}

bool Monomial::coprime(const Monomial& other) const {
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    if (exps_[i] != 0 && other.exps_[i] != 0) return false;
  }
  return true;
}

Monomial Monomial::quotient_of(const Monomial& other) const {
  Monomial q;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    q.exps_[i] = static_cast<Exponent>(other.exps_[i] - exps_[i]);
  }
  return q;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    unsigned e = unsigned{a.exps_[i]} + b.exps_[i];
    if (e > 0xFFFFu) throw std::overflow_error("monomial exponent overflow");
    r.exps_[i] = static_cast<Monomial::Exponent>(e);
  }
  return r;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    r.exps_[i] = std::max(a.exps_[i], b.exps_[i]);
  }
  return r;
}

MonomialOrder::MonomialOrder(std::vector<std::size_t> block_sizes)
    : blocks_(std::move(block_sizes)) {
  for (auto b : blocks_) {
    if (b == 0) throw StructuralError("empty block in monomial order");
  }
  if (size() > kMaxVars) throw StructuralError("too many variables");
}

MonomialOrder MonomialOrder::lex(std::size_t nvars) {
  return MonomialOrder(std::vector<std::size_t>(nvars, 1));
}

MonomialOrder MonomialOrder::grevlex(std::size_t nvars) {
  return nvars == 0 ? MonomialOrder() : MonomialOrder({nvars});
}

std::size_t MonomialOrder::size() const {
  return std::accumulate(blocks_.begin(), blocks_.end(), std::size_t{0});
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  std::size_t start = 0;
  for (std::size_t len : blocks_) {
    const std::size_t end = start + len;
    unsigned da = 0;
    unsigned db = 0;
    for (std::size_t i = start; i < end; ++i) {
      da += a[i];
      db += b[i];
    }
    if (da != db) return da < db ? -1 : 1;
    for (std::size_t i = end; i-- > start;) {
      if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
    }
    start = end;
  }
  return 0;
}

VarSet::VarSet(std::vector<std::string> names, std::vector<std::size_t> block_sizes)
    : names_(std::move(names)) {
  if (names_.size() > kMaxVars) {
    throw StructuralError("at most " + std::to_string(kMaxVars) + " variables supported");
  }
  std::unordered_set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw StructuralError("empty variable name");
    if (!seen.insert(n).second) throw StructuralError("duplicate variable " + n);
  }
  if (block_sizes.empty() && !names_.empty()) block_sizes = {names_.size()};
  order_ = MonomialOrder(std::move(block_sizes));
  if (order_.size() != names_.size()) {
    throw StructuralError("block sizes do not cover the variables");
  }
}

std::shared_ptr<const VarSet> VarSet::make(std::vector<std::string> names,
                                           std::vector<std::size_t> block_sizes) {
  return std::make_shared<const VarSet>(std::move(names), std::move(block_sizes));
}

std::optional<std::size_t> VarSet::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

std::size_t VarSet::index(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw StructuralError("unknown variable " + std::string(name));
}

bool same_varset(const VarSetPtr& a, const VarSetPtr& b) {
  return a == b || (a && b && *a == *b);
}

}  // namespace singtraj

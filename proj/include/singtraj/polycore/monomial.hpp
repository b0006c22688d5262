#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace singtraj {

inline constexpr std::size_t kMaxVars = 16;

/// Exponent vector. Slots past the owning VarSet's size stay zero.
class Monomial {
 public:
  using Exponent = std::uint16_t;

  Monomial() = default;

  Exponent operator[](std::size_t i) const { return exps_[i]; }
  void set(std::size_t i, unsigned e);

  unsigned total_degree() const;
  bool is_one() const;

  /// True when this monomial divides `other`.
  bool divides(const Monomial& other) const;
  bool coprime(const Monomial& other) const;

  /// other / *this; requires divides(other).
  Monomial quotient_of(const Monomial& other) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend Monomial lcm(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) = default;

 private:
  std::array<Exponent, kMaxVars> exps_{};
};

/// Block order: lex between consecutive blocks, grevlex inside each block.
/// A single block is grevlex; all blocks of size one is lex.
class MonomialOrder {
 public:
  MonomialOrder() = default;
  explicit MonomialOrder(std::vector<std::size_t> block_sizes);

  static MonomialOrder lex(std::size_t nvars);
  static MonomialOrder grevlex(std::size_t nvars);

  /// -1, 0, 1 as a <, ==, > b.
  int compare(const Monomial& a, const Monomial& b) const;
  bool less(const Monomial& a, const Monomial& b) const {
    return compare(a, b) < 0;
  }

  const std::vector<std::size_t>& blocks() const { return blocks_; }
  std::size_t size() const;

  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

 private:
  std::vector<std::size_t> blocks_;
};

/// Ordered variable names with an elimination block partition.
class VarSet {
 public:
  /// Empty `block_sizes` means one block holding every variable.
  explicit VarSet(std::vector<std::string> names,
                  std::vector<std::size_t> block_sizes = {});

  static std::shared_ptr<const VarSet> make(
      std::vector<std::string> names, std::vector<std::size_t> block_sizes = {});

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> find(std::string_view name) const;
  /// Throws StructuralError for an unknown name.
  std::size_t index(std::string_view name) const;

  const MonomialOrder& order() const { return order_; }

  friend bool operator==(const VarSet& a, const VarSet& b) {
    return a.names_ == b.names_ && a.order_ == b.order_;
  }

 private:
  std::vector<std::string> names_;
  MonomialOrder order_;
};

using VarSetPtr = std::shared_ptr<const VarSet>;

bool same_varset(const VarSetPtr& a, const VarSetPtr& b);

}  // namespace singtraj

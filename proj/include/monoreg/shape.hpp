#pragma once

// Consistent (monotone, nondegenerate, sign-respecting) regulatory functions
// represented by their sign-free clause structure: an antichain cover of the
// regulator indices {1..p}.
//
// Indices are 1-based wherever they cross the public surface (clause member
// lists, printed shapes). Internally regulator k lives in bit k-1 of a Mask.

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "monoreg/error.hpp"

namespace monoreg {

using Mask = std::uint32_t;

inline constexpr int kMaxArity = 16;
static_assert(kMaxArity <= 31, "local input masks must fit a 32-bit word with room for 2^p");

constexpr Mask full_mask(int p) { return p >= 32 ? ~Mask{0} : (Mask{1} << p) - 1; }
constexpr Mask bit_of(int index1) { return Mask{1} << (index1 - 1); }

/// Conjunction of regulator literals, stored as the set of participating
/// regulator indices.
class Clause {
 public:
  constexpr Clause() = default;
  constexpr explicit Clause(Mask members) : members_(members) {}
  static Clause of(std::initializer_list<int> indices);
  static Clause of(std::span<const int> indices);

  constexpr Mask mask() const { return members_; }
  constexpr int size() const { return std::popcount(members_); }
  constexpr bool empty() const { return members_ == 0; }
  constexpr bool contains(int index1) const { return (members_ & bit_of(index1)) != 0; }
  constexpr bool subset_of(Clause other) const { return (members_ & ~other.members_) == 0; }
  constexpr bool proper_subset_of(Clause other) const {
    return subset_of(other) && members_ != other.members_;
  }
  constexpr bool comparable(Clause other) const {
    return subset_of(other) || other.subset_of(*this);
  }
  /// True when every clause literal holds, given the operative-literal mask.
  constexpr bool satisfied_by(Mask operative) const { return (members_ & ~operative) == 0; }

  std::vector<int> indices() const;

  constexpr bool operator==(const Clause&) const = default;

  /// Canonical order: smaller clauses first, then lexicographic on the sorted
  /// index list.
  friend constexpr std::strong_ordering operator<=>(Clause a, Clause b) {
    if (a.size() != b.size()) return a.size() <=> b.size();
    if (a.members_ == b.members_) return std::strong_ordering::equal;
    const Mask lowest = (a.members_ ^ b.members_) & (~(a.members_ ^ b.members_) + 1);
    return (a.members_ & lowest) ? std::strong_ordering::less : std::strong_ordering::greater;
  }

 private:
  Mask members_ = 0;
};

enum class Sign : std::uint8_t { Positive, Negative };

/// Signs of the regulators of one component, plus where (if anywhere) the
/// component itself sits among them.
class RegulatorContext {
 public:
  RegulatorContext(std::vector<Sign> signs, std::optional<int> self_index1 = std::nullopt);
  static RegulatorContext all_positive(int p, std::optional<int> self_index1 = std::nullopt);

  int arity() const { return static_cast<int>(signs_.size()); }
  Sign sign(int index1) const { return signs_.at(index1 - 1); }
  const std::vector<Sign>& signs() const { return signs_; }
  std::optional<int> self_index() const { return self_; }
  std::optional<Sign> self_sign() const;
  Mask negative_mask() const { return negative_; }
  Mask positive_mask() const { return full_mask(arity()) & ~negative_; }

  /// Operative-literal mask for a regulator input: bit k-1 set iff the literal
  /// of regulator k is satisfied (activator present or inhibitor absent).
  Mask operative(Mask input) const { return input ^ negative_; }

  bool operator==(const RegulatorContext&) const = default;

 private:
  std::vector<Sign> signs_;
  std::optional<int> self_;
  Mask negative_ = 0;
};

/// Sign-free set-representation of a consistent function: a non-empty
/// antichain of clauses whose union is {1..p}. Always canonically ordered.
class FunctionShape {
 public:
  /// Validates antichain and cover; throws EmptyClauseSet, NotAntichain,
  /// NotCover, ArityTooLarge or IndexOutOfRange.
  FunctionShape(int arity, std::vector<Clause> clauses);

  int arity() const { return arity_; }
  const std::vector<Clause>& clauses() const { return clauses_; }
  std::size_t size() const { return clauses_.size(); }

  /// Membership of a sign-free (operative) point in the generated upset.
  bool accepts(Mask operative) const;

  std::string to_string() const;  // e.g. {{1},{2,3}}

  bool operator==(const FunctionShape&) const = default;
  auto operator<=>(const FunctionShape& other) const {
    if (auto c = arity_ <=> other.arity_; c != 0) return c;
    return clauses_ <=> other.clauses_;
  }

 private:
  int arity_;
  std::vector<Clause> clauses_;
};

struct ShapeHash {
  std::size_t operator()(const FunctionShape& s) const noexcept;
};

/// Builds a shape from 1-based index lists.
FunctionShape make_shape(const std::vector<std::vector<int>>& clauses, int p);

/// Removes absorbed clauses (any clause that is a superset of another).
std::vector<Clause> minimize(std::span<const Clause> clauses);
std::vector<std::vector<int>> minimize(const std::vector<std::vector<int>>& clauses);

/// Dense set over B^k, indexed by the bit-packed state.
class StateSet {
 public:
  explicit StateSet(int dimension);
  int dimension() const { return dimension_; }
  std::uint64_t universe_size() const { return std::uint64_t{1} << dimension_; }
  bool contains(std::uint64_t s) const { return (words_[s >> 6] >> (s & 63)) & 1u; }
  void insert(std::uint64_t s) { words_[s >> 6] |= std::uint64_t{1} << (s & 63); }
  std::uint64_t count() const;
  bool subset_of(const StateSet& other) const;
  std::vector<std::uint64_t> members() const;
  bool operator==(const StateSet&) const = default;

 private:
  int dimension_;
  std::vector<std::uint64_t> words_;
};

bool evaluate(const FunctionShape& shape, const RegulatorContext& ctx, Mask input);
StateSet true_states(const FunctionShape& shape, const RegulatorContext& ctx);

enum class SignatureSymbol : std::uint8_t { Operative, NonOperative, Free };

class Signature {
 public:
  explicit Signature(std::vector<SignatureSymbol> symbols) : symbols_(std::move(symbols)) {}
  const std::vector<SignatureSymbol>& symbols() const { return symbols_; }
  /// All concrete inputs matching the pattern under the given signs.
  std::vector<Mask> expand(const RegulatorContext& ctx) const;
  /// Renders with `o`, `ō`-style tokens; the token used for an operative
  /// inhibitor is display-only.
  std::string to_string(const RegulatorContext& ctx, bool mark_inhibitors = false) const;
  bool operator==(const Signature&) const = default;

 private:
  std::vector<SignatureSymbol> symbols_;
};

std::vector<Signature> signatures(const FunctionShape& shape, const RegulatorContext& ctx);

/// a ⪯ b: every clause of a contains some clause of b.
bool shape_leq(const FunctionShape& a, const FunctionShape& b);

struct ConsistencyResult {
  bool consistent = false;
  std::optional<FunctionShape> shape;
};

/// truth_table[x] is the value on regulator input x (bit k-1 = regulator k).
ConsistencyResult is_consistent(const std::vector<bool>& truth_table, const RegulatorContext& ctx);

struct Level {
  std::vector<int> dims;  // non-increasing
  bool operator==(const Level&) const = default;
  std::string to_string() const;
};

Level level(const FunctionShape& shape);
bool level_leq(const Level& a, const Level& b);

FunctionShape sup_shape(int p);
FunctionShape inf_shape(int p);
FunctionShape majority_rule(int p, int r);
FunctionShape no_inhibitors(const RegulatorContext& ctx);

/// Renders a shape as a signed DNF, e.g. `s1 | (s2 & !s3)`. Names default to
/// s1..sp.
std::string to_expression(const FunctionShape& shape, const RegulatorContext& ctx,
                          const std::vector<std::string>& names = {});

/// Parses the `{{1},{2,3}}` notation.
FunctionShape parse_shape(std::string_view text, int p);

}  // namespace monoreg

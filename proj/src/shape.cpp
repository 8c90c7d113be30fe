#include "monoreg/shape.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace monoreg {

namespace {

void check_index(int index1, int p) {
  if (index1 < 1 || index1 > p) {
    throw Error(ErrorCode::IndexOutOfRange,
                "index " + std::to_string(index1) + " outside {1.." + std::to_string(p) + "}");
  }
}

void check_arity(int p) {
  if (p < 1 || p > kMaxArity) {
    throw Error(ErrorCode::ArityTooLarge,
                "arity " + std::to_string(p) + " outside [1, " + std::to_string(kMaxArity) + "]");
  }
}

std::string clause_text(Clause c) {
  std::string out = "{";
  bool first = true;
  for (int k : c.indices()) {
    if (!first) out += ',';
    out += std::to_string(k);
    first = false;
  }
  return out + "}";
}

}  // namespace

Clause Clause::of(std::initializer_list<int> indices) {
  return of(std::span<const int>(indices.begin(), indices.size()));
}

Clause Clause::of(std::span<const int> indices) {
  Mask m = 0;
  for (int k : indices) {
    if (k < 1 || k > kMaxArity) throw Error(ErrorCode::IndexOutOfRange, std::to_string(k));
    m |= bit_of(k);
  }
  return Clause(m);
}

std::vector<int> Clause::indices() const {
  std::vector<int> out;
  for (Mask m = members_; m; m &= m - 1) out.push_back(std::countr_zero(m) + 1);
  return out;
}

RegulatorContext::RegulatorContext(std::vector<Sign> signs, std::optional<int> self_index1)
    : signs_(std::move(signs)), self_(self_index1) {
  check_arity(arity());
  if (self_) check_index(*self_, arity());
  for (int k = 0; k < arity(); ++k) {
    if (signs_[k] == Sign::Negative) negative_ |= Mask{1} << k;
  }
}

RegulatorContext RegulatorContext::all_positive(int p, std::optional<int> self_index1) {
  return RegulatorContext(std::vector<Sign>(p, Sign::Positive), self_index1);
}

std::optional<Sign> RegulatorContext::self_sign() const {
  if (!self_) return std::nullopt;
  return sign(*self_);
}

FunctionShape::FunctionShape(int arity, std::vector<Clause> clauses)
    : arity_(arity), clauses_(std::move(clauses)) {
  check_arity(arity_);
  if (clauses_.empty()) throw Error(ErrorCode::EmptyClauseSet, "a shape needs at least one clause");
  Mask cover = 0;
  for (Clause c : clauses_) {
    if (c.empty()) throw Error(ErrorCode::EmptyClauseSet, "empty clause");
    if (c.mask() & ~full_mask(arity_)) {
      throw Error(ErrorCode::IndexOutOfRange, clause_text(c) + " exceeds arity " + std::to_string(arity_));
    }
    cover |= c.mask();
  }
  std::sort(clauses_.begin(), clauses_.end());
  clauses_.erase(std::unique(clauses_.begin(), clauses_.end()), clauses_.end());
  for (std::size_t i = 0; i < clauses_.size(); ++i) {
    for (std::size_t j = 0; j < clauses_.size(); ++j) {
      if (i != j && clauses_[i].subset_of(clauses_[j])) {
        throw Error(ErrorCode::NotAntichain,
                    clause_text(clauses_[i]) + " absorbs " + clause_text(clauses_[j]));
      }
    }
  }
  if (cover != full_mask(arity_)) {
    const int missing = std::countr_zero(~cover & full_mask(arity_)) + 1;
    throw Error(ErrorCode::NotCover, "index " + std::to_string(missing) + " is in no clause");
  }
}

bool FunctionShape::accepts(Mask operative) const {
  return std::any_of(clauses_.begin(), clauses_.end(),
                     [&](Clause c) { return c.satisfied_by(operative); });
}

std::string FunctionShape::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < clauses_.size(); ++i) {
    if (i) out += ',';
    out += clause_text(clauses_[i]);
  }
  return out + "}";
}

std::size_t ShapeHash::operator()(const FunctionShape& s) const noexcept {
  std::size_t h = std::hash<int>{}(s.arity());
  for (Clause c : s.clauses()) h = h * 1000003u ^ std::hash<Mask>{}(c.mask());
  return h;
}

FunctionShape make_shape(const std::vector<std::vector<int>>& clauses, int p) {
  check_arity(p);
  std::vector<Clause> out;
  out.reserve(clauses.size());
  for (const auto& members : clauses) {
    for (int k : members) check_index(k, p);
    out.push_back(Clause::of(members));
  }
  return FunctionShape(p, std::move(out));
}

std::vector<Clause> minimize(std::span<const Clause> clauses) {
  if (clauses.empty()) throw Error(ErrorCode::EmptyClauseSet, "nothing to minimize");
  std::vector<Clause> sorted(clauses.begin(), clauses.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  // Sorted by size, so any absorbing clause precedes what it absorbs.
  std::vector<Clause> kept;
  for (Clause c : sorted) {
    const bool absorbed =
        std::any_of(kept.begin(), kept.end(), [&](Clause k) { return k.subset_of(c); });
    if (!absorbed) kept.push_back(c);
  }
  return kept;
}

std::vector<std::vector<int>> minimize(const std::vector<std::vector<int>>& clauses) {
  std::vector<Clause> in;
  for (const auto& members : clauses) in.push_back(Clause::of(members));
  std::vector<std::vector<int>> out;
  for (Clause c : minimize(std::span<const Clause>(in))) out.push_back(c.indices());
  return out;
}

StateSet::StateSet(int dimension)
    : dimension_(dimension), words_(((std::uint64_t{1} << dimension) + 63) / 64, 0) {}

std::uint64_t StateSet::count() const {
  std::uint64_t n = 0;
  for (auto w : words_) n += std::popcount(w);
  return n;
}

bool StateSet::subset_of(const StateSet& other) const {
  if (dimension_ != other.dimension_) throw Error(ErrorCode::ArityMismatch, "state set dimensions differ");
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & ~other.words_[i]) return false;
  }
  return true;
}

std::vector<std::uint64_t> StateSet::members() const {
  std::vector<std::uint64_t> out;
  for (std::uint64_t s = 0; s < universe_size(); ++s) {
    if (contains(s)) out.push_back(s);
  }
  return out;
}

bool evaluate(const FunctionShape& shape, const RegulatorContext& ctx, Mask input) {
  if (shape.arity() != ctx.arity()) throw Error(ErrorCode::ArityMismatch, "shape and context arity differ");
  return shape.accepts(ctx.operative(input & full_mask(ctx.arity())));
}

StateSet true_states(const FunctionShape& shape, const RegulatorContext& ctx) {
  if (shape.arity() != ctx.arity()) throw Error(ErrorCode::ArityMismatch, "shape and context arity differ");
  StateSet out(shape.arity());
  for (Mask x = 0; x <= full_mask(shape.arity()); ++x) {
    if (shape.accepts(ctx.operative(x))) out.insert(x);
  }
  return out;
}

std::vector<Mask> Signature::expand(const RegulatorContext& ctx) const {
  if (static_cast<int>(symbols_.size()) != ctx.arity()) {
    throw Error(ErrorCode::ArityMismatch, "signature and context arity differ");
  }
  // Enumerate operative patterns over the free positions, then map back to
  // concrete inputs through the signs.
  Mask fixed_operative = 0;
  Mask free = 0;
  for (int k = 0; k < ctx.arity(); ++k) {
    if (symbols_[k] == SignatureSymbol::Operative) fixed_operative |= Mask{1} << k;
    if (symbols_[k] == SignatureSymbol::Free) free |= Mask{1} << k;
  }
  std::vector<Mask> out;
  Mask sub = 0;
  do {
    out.push_back(ctx.operative(fixed_operative | sub));
    sub = (sub - free) & free;
  } while (sub != 0);
  std::sort(out.begin(), out.end());
  return out;
}

std::string Signature::to_string(const RegulatorContext& ctx, bool mark_inhibitors) const {
  std::string out = "(";
  for (std::size_t k = 0; k < symbols_.size(); ++k) {
    if (k) out += ',';
    switch (symbols_[k]) {
      case SignatureSymbol::Operative:
        out += (mark_inhibitors && ctx.sign(static_cast<int>(k) + 1) == Sign::Negative) ? "o'" : "o";
        break;
      case SignatureSymbol::NonOperative: out += "~o"; break;
      case SignatureSymbol::Free: out += "*"; break;
    }
  }
  return out + ")";
}

std::vector<Signature> signatures(const FunctionShape& shape, const RegulatorContext& ctx) {
  if (shape.arity() != ctx.arity()) throw Error(ErrorCode::ArityMismatch, "shape and context arity differ");
  std::vector<Signature> out;
  for (Clause c : shape.clauses()) {
    std::vector<SignatureSymbol> symbols(shape.arity(), SignatureSymbol::Free);
    for (int k : c.indices()) symbols[k - 1] = SignatureSymbol::Operative;
    out.emplace_back(std::move(symbols));
  }
  return out;
}

bool shape_leq(const FunctionShape& a, const FunctionShape& b) {
  if (a.arity() != b.arity()) throw Error(ErrorCode::ArityMismatch, "shapes of different arity");
  return std::all_of(a.clauses().begin(), a.clauses().end(), [&](Clause ca) {
    return std::any_of(b.clauses().begin(), b.clauses().end(),
                       [&](Clause cb) { return cb.subset_of(ca); });
  });
}

ConsistencyResult is_consistent(const std::vector<bool>& truth_table, const RegulatorContext& ctx) {
  const int p = ctx.arity();
  const Mask top = full_mask(p);
  if (truth_table.size() != (std::size_t{1} << p)) return {};
  // Work in operative coordinates, where a consistent function is an
  // increasing function of every variable.
  auto value = [&](Mask operative) { return static_cast<bool>(truth_table[ctx.operative(operative)]); };
  for (int k = 0; k < p; ++k) {
    const Mask b = Mask{1} << k;
    bool essential = false;
    for (Mask x = 0; x <= top; ++x) {
      if (x & b) continue;
      const bool lo = value(x);
      const bool hi = value(x | b);
      if (lo && !hi) return {};
      if (lo != hi) essential = true;
    }
    if (!essential) return {};
  }
  std::vector<Clause> minimal;
  for (Mask x = 0; x <= top; ++x) {
    if (!value(x)) continue;
    bool is_min = true;
    for (Mask m = x; m && is_min; m &= m - 1) {
      if (value(x & ~(m & (~m + 1)))) is_min = false;
    }
    if (is_min) minimal.emplace_back(x);
  }
  return {true, FunctionShape(p, std::move(minimal))};
}

std::string Level::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(dims[i]);
  }
  return out + ")";
}

Level level(const FunctionShape& shape) {
  Level l;
  for (Clause c : shape.clauses()) l.dims.push_back(shape.arity() - c.size());
  std::sort(l.dims.begin(), l.dims.end(), std::greater<>());
  return l;
}

bool level_leq(const Level& a, const Level& b) {
  // First differing entry decides; a proper prefix sits below its extensions.
  const std::size_t common = std::min(a.dims.size(), b.dims.size());
  for (std::size_t k = 0; k < common; ++k) {
    if (a.dims[k] != b.dims[k]) return a.dims[k] < b.dims[k];
  }
  return a.dims.size() <= b.dims.size();
}

FunctionShape sup_shape(int p) {
  check_arity(p);
  std::vector<Clause> clauses;
  for (int k = 1; k <= p; ++k) clauses.emplace_back(bit_of(k));
  return FunctionShape(p, std::move(clauses));
}

FunctionShape inf_shape(int p) {
  check_arity(p);
  return FunctionShape(p, {Clause(full_mask(p))});
}

FunctionShape majority_rule(int p, int r) {
  check_arity(p);
  if (r < 1 || r > p) {
    throw Error(ErrorCode::ThresholdOutOfRange,
                "threshold " + std::to_string(r) + " outside [1, " + std::to_string(p) + "]");
  }
  std::vector<Clause> clauses;
  for (Mask x = 1; x <= full_mask(p); ++x) {
    if (std::popcount(x) == r) clauses.emplace_back(x);
  }
  return FunctionShape(p, std::move(clauses));
}

FunctionShape no_inhibitors(const RegulatorContext& ctx) {
  const Mask activators = ctx.positive_mask();
  if (activators == 0) throw Error(ErrorCode::NoActivators, "context has no positive regulator");
  std::vector<Clause> clauses;
  for (Mask m = activators; m; m &= m - 1) {
    clauses.emplace_back((m & (~m + 1)) | ctx.negative_mask());
  }
  return FunctionShape(ctx.arity(), std::move(clauses));
}

std::string to_expression(const FunctionShape& shape, const RegulatorContext& ctx,
                          const std::vector<std::string>& names) {
  if (shape.arity() != ctx.arity()) throw Error(ErrorCode::ArityMismatch, "shape and context arity differ");
  auto name = [&](int k) { return names.empty() ? "s" + std::to_string(k) : names.at(k - 1); };
  const bool several = shape.size() > 1;
  std::string out;
  for (std::size_t j = 0; j < shape.size(); ++j) {
    if (j) out += " | ";
    const Clause c = shape.clauses()[j];
    const bool wrap = several && c.size() > 1;
    if (wrap) out += '(';
    bool first = true;
    for (int k : c.indices()) {
      if (!first) out += " & ";
      if (ctx.sign(k) == Sign::Negative) out += '!';
      out += name(k);
      first = false;
    }
    if (wrap) out += ')';
  }
  return out;
}

FunctionShape parse_shape(std::string_view text, int p) {
  std::vector<std::vector<int>> clauses;
  std::vector<int>* current = nullptr;
  int depth = 0;
  int max_index = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == ',') continue;
    if (ch == '{') {
      if (++depth == 2) current = &clauses.emplace_back();
      if (depth > 2) throw Error(ErrorCode::SyntaxError, "shape nesting too deep");
    } else if (ch == '}') {
      if (--depth < 0) throw Error(ErrorCode::SyntaxError, "unbalanced '}'");
      current = nullptr;
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      if (!current) throw Error(ErrorCode::SyntaxError, "index outside a clause");
      int value = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        value = value * 10 + (text[i] - '0');
        ++i;
      }
      --i;
      current->push_back(value);
      max_index = std::max(max_index, value);
    } else {
      throw Error(ErrorCode::SyntaxError, std::string("unexpected '") + ch + "' in shape");
    }
  }
  if (depth != 0) throw Error(ErrorCode::SyntaxError, "unbalanced '{'");
  return make_shape(clauses, p > 0 ? p : max_index);
}

}  // namespace monoreg

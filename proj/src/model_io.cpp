#include "monoreg/model_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "monoreg/error.hpp"

namespace monoreg {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.'; }

bool is_identifier(std::string_view s) {
  return !s.empty() && ident_start(s.front()) && std::all_of(s.begin(), s.end(), ident_char);
}

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  Expr parse() {
    Expr e = parse_or();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  enum class Tok { Or, And, Not, LParen, RParen, Ident, End };

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::SyntaxError, what + " at column " + std::to_string(pos_ + 1) + " in '" +
                                            std::string(text_) + "'");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  // Classifies the next token without consuming it; `len` receives its width.
  Tok peek(std::size_t& len) {
    skip_space();
    if (pos_ >= text_.size()) {
      len = 0;
      return Tok::End;
    }
    len = 1;
    switch (text_[pos_]) {
      case '|': return Tok::Or;
      case '&': return Tok::And;
      case '!': return Tok::Not;
      case '(': return Tok::LParen;
      case ')': return Tok::RParen;
      default: break;
    }
    if (!ident_start(text_[pos_])) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    std::size_t end = pos_;
    while (end < text_.size() && ident_char(text_[end])) ++end;
    len = end - pos_;
    const std::string word = lower(text_.substr(pos_, len));
    if (word == "or") return Tok::Or;
    if (word == "and") return Tok::And;
    if (word == "not") return Tok::Not;
    return Tok::Ident;
  }

  Expr parse_or() {
    Expr first = parse_and();
    std::size_t len;
    if (peek(len) != Tok::Or) return first;
    Expr e{Expr::Kind::Or, {}, false, {}};
    e.operands.push_back(std::move(first));
    while (peek(len) == Tok::Or) {
      pos_ += len;
      e.operands.push_back(parse_and());
    }
    return e;
  }

  Expr parse_and() {
    Expr first = parse_factor();
    std::size_t len;
    if (peek(len) != Tok::And) return first;
    Expr e{Expr::Kind::And, {}, false, {}};
    e.operands.push_back(std::move(first));
    while (peek(len) == Tok::And) {
      pos_ += len;
      e.operands.push_back(parse_factor());
    }
    return e;
  }

  Expr parse_factor() {
    std::size_t len;
    switch (peek(len)) {
      case Tok::Not: {
        pos_ += len;
        Expr e{Expr::Kind::Not, {}, false, {}};
        e.operands.push_back(parse_factor());
        return e;
      }
      case Tok::LParen: {
        pos_ += len;
        Expr e = parse_or();
        if (peek(len) != Tok::RParen) fail("expected ')'");
        pos_ += len;
        return e;
      }
      case Tok::Ident: {
        std::string name(text_.substr(pos_, len));
        pos_ += len;
        const std::string word = lower(name);
        if (word == "true" || word == "false") return Expr{Expr::Kind::Const, {}, word == "true", {}};
        return Expr{Expr::Kind::Var, std::move(name), false, {}};
      }
      case Tok::End: fail("unexpected end of expression");
      default: fail("expected a variable, '!' or '('");
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

struct Literal {
  std::string name;
  bool negated;
};
using Term = std::vector<Literal>;

constexpr std::size_t kMaxTerms = 1u << 16;

[[noreturn]] void constant_inside() {
  throw Error(ErrorCode::SyntaxError, "true/false may only stand alone as an input value");
}

std::vector<Term> product(const std::vector<std::vector<Term>>& factors) {
  std::vector<Term> acc{Term{}};
  for (const auto& f : factors) {
    if (acc.size() * f.size() > kMaxTerms) {
      throw Error(ErrorCode::InvalidArgument, "normalized expression exceeds " + std::to_string(kMaxTerms) + " terms");
    }
    std::vector<Term> next;
    for (const Term& a : acc) {
      for (const Term& b : f) {
        Term t = a;
        t.insert(t.end(), b.begin(), b.end());
        next.push_back(std::move(t));
      }
    }
    acc = std::move(next);
  }
  return acc;
}

std::vector<Term> strict_terms(const Expr& e);

Term strict_conjunction(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Var: return {{e.name, false}};
    case Expr::Kind::Not:
      if (e.operands[0].kind != Expr::Kind::Var) {
        throw Error(ErrorCode::NotDNF, "negation applies to a compound expression (use --normalize)");
      }
      return {{e.operands[0].name, true}};
    case Expr::Kind::And: {
      Term t;
      for (const Expr& op : e.operands) {
        Term sub = strict_conjunction(op);
        t.insert(t.end(), sub.begin(), sub.end());
      }
      return t;
    }
    case Expr::Kind::Or:
      throw Error(ErrorCode::NotDNF, "disjunction nested inside a conjunction (use --normalize)");
    case Expr::Kind::Const: constant_inside();
  }
  return {};
}

std::vector<Term> strict_terms(const Expr& e) {
  if (e.kind != Expr::Kind::Or) return {strict_conjunction(e)};
  std::vector<Term> out;
  for (const Expr& op : e.operands) {
    auto sub = strict_terms(op);
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

std::vector<Term> normal_terms(const Expr& e, bool negate) {
  switch (e.kind) {
    case Expr::Kind::Var: return {{{e.name, negate}}};
    case Expr::Kind::Not: return normal_terms(e.operands[0], !negate);
    case Expr::Kind::Const: constant_inside();
    case Expr::Kind::Or:
    case Expr::Kind::And: {
      const bool disjunction = (e.kind == Expr::Kind::Or) != negate;
      std::vector<std::vector<Term>> parts;
      for (const Expr& op : e.operands) parts.push_back(normal_terms(op, negate));
      if (!disjunction) return product(parts);
      std::vector<Term> out;
      for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
      return out;
    }
  }
  return {};
}

// Reorders regulator indices: regulator k becomes perm[k-1] + 1.
FunctionShape permute(const FunctionShape& s, const std::vector<int>& perm) {
  std::vector<Clause> clauses;
  for (Clause c : s.clauses()) {
    Mask m = 0;
    for (int k : c.indices()) m |= bit_of(perm[k - 1] + 1);
    clauses.emplace_back(m);
  }
  return FunctionShape(s.arity(), std::move(clauses));
}

bool constant_text(std::string_view text, bool& value) {
  const std::string t = lower(trim(text));
  if (t == "true" || t == "1") {
    value = true;
    return true;
  }
  if (t == "false" || t == "0") {
    value = false;
    return true;
  }
  return false;
}

[[noreturn]] void rethrow_at(const Error& e, int line) {
  throw Error(e.code(), "line " + std::to_string(line) + ": " + e.detail());
}

struct ResolvedFunction {
  std::vector<int> regulators;  // declaration order
  std::vector<Sign> signs;
  FunctionShape shape;
};

ResolvedFunction resolve(std::string_view text, const std::map<std::string, int>& index, ParseMode mode) {
  ParsedFunction f = parse_expression(text, mode);
  std::vector<std::pair<int, int>> order;  // (component, first-appearance position)
  for (std::size_t k = 0; k < f.names.size(); ++k) {
    auto it = index.find(f.names[k]);
    if (it == index.end()) throw Error(ErrorCode::UnknownVariable, "'" + f.names[k] + "' is not a declared component");
    order.emplace_back(it->second, static_cast<int>(k));
  }
  std::sort(order.begin(), order.end());
  std::vector<int> perm(order.size());
  ResolvedFunction r{{}, {}, f.shape};
  for (std::size_t j = 0; j < order.size(); ++j) {
    perm[order[j].second] = static_cast<int>(j);
    r.regulators.push_back(order[j].first);
    r.signs.push_back(f.context.sign(order[j].second + 1));
  }
  r.shape = permute(f.shape, perm);
  return r;
}

std::vector<std::string> regulator_names(const BooleanNetwork& bn, int i) {
  std::vector<std::string> names;
  for (int r : bn.component(i).regulators) names.push_back(bn.component(r).name);
  return names;
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

Expr parse_expression_ast(std::string_view text) { return ExprParser(text).parse(); }

ParsedFunction parse_expression(std::string_view text, ParseMode mode) {
  const Expr ast = parse_expression_ast(text);
  if (ast.kind == Expr::Kind::Const) {
    throw Error(ErrorCode::SyntaxError, "a constant has no regulators; declare it as an input component");
  }
  const std::vector<Term> terms = mode == ParseMode::Strict ? strict_terms(ast) : normal_terms(ast, false);

  std::vector<std::string> names;
  std::vector<Sign> signs;
  std::map<std::string, int> index;
  for (const Term& t : terms) {
    for (const Literal& lit : t) {
      const Sign sign = lit.negated ? Sign::Negative : Sign::Positive;
      auto [it, fresh] = index.emplace(lit.name, static_cast<int>(names.size()));
      if (fresh) {
        names.push_back(lit.name);
        signs.push_back(sign);
      } else if (signs[it->second] != sign) {
        throw Error(ErrorCode::DualRegulation, "'" + lit.name + "' appears both plain and negated");
      }
    }
  }
  if (static_cast<int>(names.size()) > kMaxArity) {
    throw Error(ErrorCode::ArityTooLarge, std::to_string(names.size()) + " regulators exceed " +
                                              std::to_string(kMaxArity));
  }
  std::vector<Clause> clauses;
  for (const Term& t : terms) {
    Mask m = 0;
    for (const Literal& lit : t) m |= bit_of(index[lit.name] + 1);
    clauses.emplace_back(m);
  }
  const std::vector<Clause> minimal = minimize(std::span<const Clause>(clauses));
  Mask used = 0;
  for (Clause c : minimal) used |= c.mask();
  const int p = static_cast<int>(names.size());
  if (used != full_mask(p)) {
    std::string missing;
    for (int k = 1; k <= p; ++k) {
      if (!(used & bit_of(k))) missing += (missing.empty() ? "" : ", ") + names[k - 1];
    }
    throw Error(ErrorCode::NonEssentialRegulator, missing + " has no effect after absorption");
  }
  return {FunctionShape(p, minimal), RegulatorContext(std::move(signs)), std::move(names)};
}

ModelDocument parse_model_document(std::string_view text) {
  ModelDocument doc;
  std::map<std::string, std::size_t> seen;
  bool header = false;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    std::vector<std::string_view> fields;
    for (std::size_t a = 0;;) {
      const std::size_t b = line.find(',', a);
      fields.push_back(trim(line.substr(a, b == std::string_view::npos ? std::string_view::npos : b - a)));
      if (b == std::string_view::npos) break;
      a = b + 1;
    }
    if (!header) {
      const bool two = fields.size() == 2;
      const bool three = fields.size() == 3 && lower(fields[2]) == "probabilities";
      if (!(two || three) || lower(fields[0]) != "targets" || lower(fields[1]) != "factors") {
        throw Error(ErrorCode::SyntaxError, "line " + std::to_string(line_no) +
                                                ": expected header 'targets, factors[, probabilities]'");
      }
      doc.has_probabilities = three;
      header = true;
      continue;
    }
    const std::size_t want = doc.has_probabilities ? 3 : 2;
    if (fields.size() != want) {
      throw Error(ErrorCode::SyntaxError, "line " + std::to_string(line_no) + ": expected " +
                                              std::to_string(want) + " comma-separated fields");
    }
    const std::string name(fields[0]);
    if (!is_identifier(name)) {
      throw Error(ErrorCode::SyntaxError, "line " + std::to_string(line_no) + ": bad component name '" + name + "'");
    }
    double prob = 1.0;
    if (doc.has_probabilities) {
      const std::string_view f = fields[2];
      auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), prob);
      if (ec != std::errc() || ptr != f.data() + f.size()) {
        throw Error(ErrorCode::SyntaxError, "line " + std::to_string(line_no) + ": bad probability '" +
                                                std::string(f) + "'");
      }
    }
    auto it = seen.find(name);
    if (it == seen.end()) {
      seen.emplace(name, doc.components.size());
      doc.components.push_back({name, line_no, {{std::string(fields[1]), prob}}});
    } else if (doc.has_probabilities) {
      doc.components[it->second].alternatives.emplace_back(std::string(fields[1]), prob);
    } else {
      throw Error(ErrorCode::DuplicateComponent, "line " + std::to_string(line_no) + ": '" + name +
                                                     "' declared twice");
    }
  }
  if (!header) throw Error(ErrorCode::SyntaxError, "empty model: missing 'targets, factors' header");
  return doc;
}

BooleanNetwork build_network(const ModelDocument& doc, ParseMode mode) {
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < doc.components.size(); ++i) index.emplace(doc.components[i].name, static_cast<int>(i));
  std::vector<Component> comps;
  for (std::size_t i = 0; i < doc.components.size(); ++i) {
    const ComponentDecl& d = doc.components[i];
    const std::string& text = d.alternatives.front().first;
    bool value;
    if (constant_text(text, value)) {
      comps.push_back(Component::input(d.name, value));
      continue;
    }
    try {
      ResolvedFunction r = resolve(text, index, mode);
      comps.push_back(Component::regulated(d.name, static_cast<int>(i), std::move(r.regulators), std::move(r.signs),
                                           std::move(r.shape)));
    } catch (const Error& e) {
      rethrow_at(e, d.line);
    }
  }
  return BooleanNetwork(std::move(comps));
}

ProbabilisticNetwork build_probabilistic(const ModelDocument& doc, ParseMode mode) {
  ProbabilisticNetwork net(build_network(doc, mode));
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < doc.components.size(); ++i) index.emplace(doc.components[i].name, static_cast<int>(i));
  for (std::size_t i = 0; i < doc.components.size(); ++i) {
    const ComponentDecl& d = doc.components[i];
    const Component& c = net.base().component(static_cast<int>(i));
    if (c.is_input()) {
      if (d.alternatives.size() > 1) {
        throw Error(ErrorCode::InvalidArgument, "line " + std::to_string(d.line) + ": input '" + d.name +
                                                    "' cannot carry alternatives");
      }
      continue;
    }
    try {
      std::vector<EnsembleEntry> entries;
      for (const auto& [text, prob] : d.alternatives) {
        ResolvedFunction r = resolve(text, index, mode);
        if (r.regulators != c.regulators || r.signs != c.context->signs()) {
          throw Error(ErrorCode::ArityMismatch, "alternative '" + text + "' for " + d.name +
                                                    " uses different regulators or signs");
        }
        entries.push_back({std::move(r.shape), prob});
      }
      net.set_ensemble(FunctionEnsemble(static_cast<int>(i), *c.context, std::move(entries)));
    } catch (const Error& e) {
      rethrow_at(e, d.line);
    }
  }
  return net;
}

BooleanNetwork parse_model(std::string_view text, ParseMode mode) {
  return build_network(parse_model_document(text), mode);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string function_text(const BooleanNetwork& bn, int i, const FunctionShape& shape) {
  const Component& c = bn.component(i);
  if (c.is_input()) return c.input_value ? "true" : "false";
  return to_expression(shape, *c.context, regulator_names(bn, i));
}

std::string function_text(const BooleanNetwork& bn, int i) {
  const Component& c = bn.component(i);
  return c.is_input() ? function_text(bn, i, sup_shape(1)) : function_text(bn, i, *c.shape);
}

std::string render_model(const BooleanNetwork& bn) {
  std::string out = "targets, factors\n";
  for (int i = 0; i < bn.size(); ++i) out += bn.component(i).name + ", " + function_text(bn, i) + "\n";
  return out;
}

std::string render_model(const ProbabilisticNetwork& net) {
  const BooleanNetwork& bn = net.base();
  std::ostringstream out;
  out.precision(17);
  out << "targets, factors, probabilities\n";
  for (int i = 0; i < bn.size(); ++i) {
    const auto& ens = net.ensemble(i);
    if (!ens) {
      out << bn.component(i).name << ", " << function_text(bn, i) << ", 1\n";
      continue;
    }
    for (const auto& e : ens->entries()) {
      out << bn.component(i).name << ", " << function_text(bn, i, e.shape) << ", " << e.probability << "\n";
    }
  }
  return out.str();
}

std::string export_dot(const StateGraph& graph, const BooleanNetwork* bn) {
  const int n = graph.dimension();
  auto label = [&](StateBits s) { return quoted(bn ? bn->format_state(s) : format_state(s, n)); };
  std::ostringstream out;
  out << "digraph stg {\n";
  if (bn && bn->size() > 0) {
    out << "  label=";
    std::string order;
    for (const auto& c : bn->components()) order += (order.empty() ? "" : " ") + c.name;
    out << quoted(order) << ";\n";
  }
  out << "  node [shape=box];\n";
  for (std::uint64_t s = 0; s < graph.state_count(); ++s) {
    const auto st = static_cast<StateBits>(s);
    out << "  " << label(st);
    if (graph.is_stable(st)) out << " [style=filled, fillcolor=\"#e06666\", stable=true]";
    out << ";\n";
  }
  for (std::uint64_t s = 0; s < graph.state_count(); ++s) {
    const auto st = static_cast<StateBits>(s);
    for (StateBits t : graph.successors(st)) out << "  " << label(st) << " -> " << label(t) << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::string export_dot(const HasseSlice& slice, const RegulatorContext* ctx, const std::vector<std::string>* names) {
  auto label = [&](const FunctionShape& s) {
    if (ctx && names) return quoted(to_expression(s, *ctx, *names));
    return quoted(s.to_string());
  };
  std::ostringstream out;
  out << "digraph hasse {\n  rankdir=BT;\n  node [shape=box];\n";
  out << "  " << label(slice.center) << " [style=bold];\n";
  for (const auto& p : slice.parents) {
    out << "  " << label(slice.center) << " -> " << label(p.target) << " [label=\"" << to_string(p.kind) << " +"
        << p.delta_true_states << "\"];\n";
  }
  for (const auto& c : slice.children) {
    out << "  " << label(c.target) << " -> " << label(slice.center) << " [label=\"" << to_string(c.relating_rule)
        << " +" << c.delta_true_states << "\"];\n";
  }
  for (const auto& s : slice.siblings) out << "  " << label(s) << " [style=dashed];\n";
  out << "}\n";
  return out.str();
}

std::string export_json(const BooleanNetwork& bn) {
  nlohmann::ordered_json comps = nlohmann::ordered_json::array();
  for (int i = 0; i < bn.size(); ++i) {
    const Component& c = bn.component(i);
    nlohmann::ordered_json regs = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < c.regulators.size(); ++k) {
      const bool pos = c.context->sign(static_cast<int>(k) + 1) == Sign::Positive;
      regs.push_back({{"name", bn.component(c.regulators[k]).name}, {"sign", pos ? "+" : "-"}});
    }
    nlohmann::ordered_json entry{{"name", c.name}, {"regulators", regs}, {"function", function_text(bn, i)}};
    if (c.is_input()) entry["input"] = true;
    comps.push_back(std::move(entry));
  }
  return nlohmann::ordered_json{{"components", comps}}.dump(2) + "\n";
}

std::string ledger_csv(const SimulationResult& result, const BooleanNetwork& bn) {
  std::string out = "seed,steps,final_state,phenotype\n";
  for (const auto& r : result.runs) {
    out += std::to_string(r.seed) + "," + std::to_string(r.steps) + "," + bn.format_state(r.final_state) + "," +
           std::string(to_string(r.phenotype)) + "\n";
  }
  return out;
}

std::string aggregate_json(const SimulationResult& result) {
  nlohmann::ordered_json j;
  for (Phenotype p : kPhenotypes) j[std::string(to_string(p))] = result.proportion(p);
  return j.dump(2) + "\n";
}

}  // namespace monoreg

#pragma once

// Text formats: signed Boolean expressions, the `targets, factors` model
// format, DOT and JSON exports, and simulation ledgers.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "monoreg/dynamics.hpp"
#include "monoreg/neighborhood.hpp"
#include "monoreg/pbn.hpp"

namespace monoreg {

struct Expr {
  enum class Kind : std::uint8_t { Or, And, Not, Var, Const };
  Kind kind = Kind::Const;
  std::string name;  // Var
  bool value = false;  // Const
  std::vector<Expr> operands;
};

/// Grammar: EXPR := TERM ('|' TERM)*, TERM := FACTOR ('&' FACTOR)*,
/// FACTOR := '!' FACTOR | IDENT | '(' EXPR ')'. OR/AND/NOT keywords are
/// accepted in any case; `true`/`false` are constants.
Expr parse_expression_ast(std::string_view text);

enum class ParseMode : std::uint8_t {
  /// Input must already be a disjunction of literal conjunctions.
  Strict,
  /// Push negations to the literals and distribute conjunctions first.
  Normalize,
};

struct ParsedFunction {
  FunctionShape shape;
  RegulatorContext context;
  /// Regulator names in index order (first appearance).
  std::vector<std::string> names;
};

/// Throws SyntaxError, NotDNF, DualRegulation (a variable used with both
/// polarities) or NonEssentialRegulator (a variable absorbed away).
ParsedFunction parse_expression(std::string_view text, ParseMode mode = ParseMode::Strict);

struct ComponentDecl {
  std::string name;
  int line = 0;
  /// Expression text and weight; the first entry is the reference.
  std::vector<std::pair<std::string, double>> alternatives;
};

struct ModelDocument {
  std::vector<ComponentDecl> components;
  bool has_probabilities = false;
};

/// Header `targets, factors` (optionally `, probabilities`), then one
/// `NAME, EXPRESSION[, PROBABILITY]` line per function. Repeated targets are
/// only allowed with probabilities.
ModelDocument parse_model_document(std::string_view text);

/// Regulators of each component are ordered by declaration order, so a
/// rendered model parses back to the same network.
BooleanNetwork build_network(const ModelDocument& doc, ParseMode mode = ParseMode::Strict);
ProbabilisticNetwork build_probabilistic(const ModelDocument& doc, ParseMode mode = ParseMode::Strict);
BooleanNetwork parse_model(std::string_view text, ParseMode mode = ParseMode::Strict);

std::string read_file(const std::string& path);

std::string function_text(const BooleanNetwork& bn, int i);
std::string function_text(const BooleanNetwork& bn, int i, const FunctionShape& shape);
std::string render_model(const BooleanNetwork& bn);
std::string render_model(const ProbabilisticNetwork& net);

std::string export_dot(const StateGraph& graph, const BooleanNetwork* bn = nullptr);
std::string export_dot(const HasseSlice& slice, const RegulatorContext* ctx = nullptr,
                       const std::vector<std::string>* names = nullptr);

/// {components:[{name, regulators:[{name,sign}], function}]}
std::string export_json(const BooleanNetwork& bn);

/// Columns seed, steps, final_state, phenotype.
std::string ledger_csv(const SimulationResult& result, const BooleanNetwork& bn);
/// Phenotype label to proportion.
std::string aggregate_json(const SimulationResult& result);

}  // namespace monoreg

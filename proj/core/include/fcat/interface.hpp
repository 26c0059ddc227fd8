#pragma once

// The .fcat text format, a workspace of named objects, and the command
// runner behind the CLI: JSON reports and DOT export.

#include <cstdint>
#include <map>
#include <string_view>

#include "fcat/corpus.hpp"

namespace fcat {

class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& message, Report report = {});
  int line() const { return line_; }
  int column() const { return column_; }
  const Report& report() const { return report_; }

 private:
  int line_, column_;
  Report report_;
};

enum class DeclKind { Category, Model, Functor, Adjunction, ModCat, Fibration };

struct ModelDecl {
  std::string category;
  PreModel pm;
  AxiomReport axioms;
  ModelPtr model;  // null when the axioms fail
  bool explicit_factorizations = false;
};

struct FunctorDecl {
  std::string source, target;
  FinFunctor functor;
};

struct AdjunctionDecl {
  std::string left, right;
  Adjunction adjunction;
};

struct ModCatDecl {
  std::string base;
  std::vector<std::string> fiber;     // model name per base object
  std::map<MorId, std::string> arrow;  // adjunction name per base morphism; absent means identity
  ModCatFunctor functor;
};

struct FibrationDecl {
  std::string pi, upstairs, downstairs;
  FibrationCandidate candidate;
};

/// Every name lives in one namespace; `order` is declaration order.
struct Workspace {
  std::vector<std::pair<DeclKind, std::string>> order;
  std::map<std::string, CatPtr, std::less<>> categories;
  std::map<std::string, ModelDecl, std::less<>> models;
  std::map<std::string, FunctorDecl, std::less<>> functors;
  std::map<std::string, AdjunctionDecl, std::less<>> adjunctions;
  std::map<std::string, ModCatDecl, std::less<>> modcats;
  std::map<std::string, FibrationDecl, std::less<>> fibrations;

  bool contains(std::string_view name) const;
  const CatPtr& category(std::string_view name) const;
  const ModelDecl& model(std::string_view name) const;
  const FunctorDecl& functor(std::string_view name) const;
  const AdjunctionDecl& adjunction(std::string_view name) const;
  const ModCatDecl& modcat(std::string_view name) const;
  const FibrationDecl& fibration(std::string_view name) const;

  void add_category(const std::string& name, CatPtr c);
  void add_model(const std::string& name, ModelDecl d);
  void add_functor(const std::string& name, FunctorDecl d);
  void add_adjunction(const std::string& name, AdjunctionDecl d);
  void add_modcat(const std::string& name, ModCatDecl d);
  void add_fibration(const std::string& name, FibrationDecl d);
};

/// Parses and validates every definition eagerly. A model whose classes are
/// subcategories loads even when the axioms fail; its `model` is then null.
Workspace parse_spec(std::string_view text);
Workspace load_spec_file(const std::string& path);

/// Text that parse_spec turns back into the same objects, identifier for
/// identifier, in declaration order.
std::string print_workspace(const Workspace& ws);
/// `s` as a bare identifier when it lexes as one, otherwise double-quoted.
std::string quote_name(const std::string& s);
std::string print_category(const std::string& name, const FinCat& c);
std::string print_model(const std::string& name, const std::string& category, const ModelDecl& d);
std::string print_functor(const std::string& name, const FunctorDecl& d);

/// Objects as nodes, one edge per non-identity morphism; with a model the
/// edges carry weq/cof/fib attributes.
std::string to_dot(const FinCat& c, const PreModel* classes = nullptr);

struct CheckResult {
  std::string name;
  std::string anchor;
  std::string status;  // "pass", "fail", "info" or "error"
  std::string witness;
};

struct CommandReport {
  std::vector<CheckResult> checks;
  int categories = 0;
  int morphisms = 0;
  std::int64_t elapsed_ms = 0;
  std::string output;  // DOT or emitted text for verbs that produce one
  int exit_code = 0;

  void pass(const std::string& name, const std::string& anchor, const std::string& witness = {});
  void fail(const std::string& name, const std::string& anchor, const std::string& witness);
  void info(const std::string& name, const std::string& anchor, const std::string& witness);
  /// One check per issue of `r`, or a single pass named `name`.
  void record(const std::string& name, const std::string& anchor, const Report& r);
  void touch(const FinCat& c);
  bool ok() const;
};

struct Command {
  std::string verb;     // e.g. "verify-theorem"
  std::string theorem;  // for verify-theorem
  std::map<std::string, std::string> options;  // --functor F becomes {"functor", "F"}
  bool force = false;
  bool timing = false;
  int shape_bound = 12;
};

/// Throws Error for unknown verbs, names or option combinations; the CLI
/// maps that to exit code 2. exit_code is 0 iff every check passed.
CommandReport run_command(const Workspace& ws, const Command& cmd);

/// Stable key order and indentation, so equal reports are equal bytes.
std::string to_json(const CommandReport& r);
std::string to_text(const CommandReport& r);

}  // namespace fcat

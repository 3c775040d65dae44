#pragma once

// TPTP FOF (and lifted CNF) problems: parsing, rendering, signature analysis.

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "proofscope/logic.hpp"

namespace proofscope {

enum class Role : std::uint8_t {
  Axiom,
  Hypothesis,
  Definition,
  Lemma,
  Theorem,
  Conjecture,
  NegatedConjecture,
};

std::string_view role_name(Role role);
std::optional<Role> parse_role(std::string_view token);

struct SourceLocation {
  std::string file = "<memory>";
  int line = 0;
  int column = 0;
};

/// Error raised for malformed input. Carries the position of the offending token.
class TptpError : public std::runtime_error {
 public:
  TptpError(const std::string& message, SourceLocation where);

  const SourceLocation& where() const { return where_; }
  const std::string& message() const { return message_; }

 private:
  std::string message_;
  SourceLocation where_;
};

struct AnnotatedFormula {
  std::string name;
  Role role = Role::Axiom;
  Formula formula = Formula::truth(true);
  SourceLocation source;
};

/// Ordered, named premises plus at most one conjecture.
class Theory {
 public:
  Theory() = default;
  explicit Theory(std::vector<AnnotatedFormula> formulas, std::string origin = "<memory>");

  /// Appends a formula; throws TptpError on a duplicate name or second conjecture.
  void add(AnnotatedFormula f);

  const std::vector<AnnotatedFormula>& formulas() const { return formulas_; }
  const std::string& origin() const { return origin_; }
  std::size_t size() const { return formulas_.size(); }

  const AnnotatedFormula* find(std::string_view name) const;
  const AnnotatedFormula* conjecture() const;
  bool has_conjecture() const { return conjecture() != nullptr; }

  /// Everything except the conjecture, in declaration order.
  std::vector<const AnnotatedFormula*> premises() const;
  std::vector<std::string> premise_names() const;

  /// Structural equality: names, roles and formulas in order. Ignores provenance.
  friend bool operator==(const Theory& a, const Theory& b);

 private:
  std::vector<AnnotatedFormula> formulas_;
  std::string origin_ = "<memory>";
};

/// Parses TPTP text. Include directives are resolved against `include_dirs`,
/// then the directory of `origin` (when it names a file), then $TPTP.
Theory parse_problem(std::string_view source, const std::vector<std::filesystem::path>& include_dirs = {},
                     const std::string& origin = "<memory>");

Theory parse_file(const std::filesystem::path& path,
                  const std::vector<std::filesystem::path>& include_dirs = {});

std::string render_term(const Term& t);
std::string render_formula(const Formula& f);
std::string render_annotated(const AnnotatedFormula& f);
std::string render_theory(const Theory& t);

struct SignatureEntry {
  enum class Kind : std::uint8_t { Predicate, Function, Constant };

  std::string symbol;
  Kind kind = Kind::Predicate;
  int arity = 0;
  int occurrence_count = 0;
  std::vector<std::string> occurring_in;

  friend bool operator==(const SignatureEntry&, const SignatureEntry&) = default;
};

std::string_view kind_name(SignatureEntry::Kind kind);

/// One entry per non-variable symbol, sorted by symbol name.
std::vector<SignatureEntry> signature_of(const Theory& t);

/// Signature entries occurring exactly once.
std::vector<SignatureEntry> hapax_legomena(const Theory& t);

}  // namespace proofscope

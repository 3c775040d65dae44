#pragma once

// Uniform engine interface over the built-in reasoners and external SZS provers.

#include <filesystem>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "proofscope/model_finder.hpp"
#include "proofscope/prover.hpp"
#include "proofscope/tptp.hpp"
#include "proofscope/verdict.hpp"

namespace proofscope {

struct EngineVerdict {
  std::string engine_id;
  SzsStatus status = SzsStatus::Unknown;
  PremiseSet used_premises;
  /// True when used_premises carries trimming information (a derivation was seen).
  bool premise_info = false;
  std::string raw_output_digest;  // FNV-1a 64, hex
  double elapsed = 0.0;
  std::optional<ModelOutcome> model;  // built-in model finder only
};

/// A theory with a conjecture asks "premises |- conjecture"; a theory without
/// one asks whether the formulas are unsatisfiable.
class Engine {
 public:
  virtual ~Engine() = default;
  virtual const std::string& id() const = 0;
  virtual bool proves() const = 0;
  virtual bool finds_models() const = 0;
  virtual EngineVerdict run(const Theory& t, double budget) const = 0;
};

inline constexpr const char* kBuiltinProverId = "builtin-prover";
inline constexpr const char* kBuiltinModelFinderId = "builtin-model-finder";

class BuiltinProverEngine final : public Engine {
 public:
  explicit BuiltinProverEngine(std::size_t max_clause_count = 200000) : max_clause_count_(max_clause_count) {}
  const std::string& id() const override { return id_; }
  bool proves() const override { return true; }
  bool finds_models() const override { return false; }
  EngineVerdict run(const Theory& t, double budget) const override;

 private:
  std::string id_ = kBuiltinProverId;
  std::size_t max_clause_count_;
};

class BuiltinModelFinderEngine final : public Engine {
 public:
  explicit BuiltinModelFinderEngine(int max_domain_size = 4) : max_domain_size_(max_domain_size) {}
  const std::string& id() const override { return id_; }
  bool proves() const override { return false; }
  bool finds_models() const override { return true; }
  EngineVerdict run(const Theory& t, double budget) const override;

 private:
  std::string id_ = kBuiltinModelFinderId;
  int max_domain_size_;
};

/// Raised for configuration problems (bad template, missing executable), as
/// opposed to engine failures, which map to statuses.
class EngineConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EngineSpec {
  std::string id;
  std::string executable;
  /// Tokens; "{problem}" and "{timeout}" are substituted inside tokens.
  std::vector<std::string> argument_template;
  bool proves = true;
  bool finds_models = false;
  bool szs_expected = true;

  /// Throws EngineConfigError unless {problem} occurs exactly once.
  void validate() const;
};

/// Grace period granted on top of the budget before the process group is killed.
inline constexpr double kTerminationGrace = 2.0;

class ExternalEngine final : public Engine {
 public:
  explicit ExternalEngine(EngineSpec spec);
  const std::string& id() const override { return spec_.id; }
  bool proves() const override { return spec_.proves; }
  bool finds_models() const override { return spec_.finds_models; }
  const EngineSpec& spec() const { return spec_; }
  /// Throws EngineConfigError when the executable cannot be found.
  void check_available() const;

  /// Throws EngineConfigError when the executable cannot be found.
  EngineVerdict run(const Theory& t, double budget) const override;

 private:
  EngineSpec spec_;
};

/// Status named by the first line containing "SZS status <Name>".
SzsStatus parse_szs(std::string_view output);

/// Names cited as file(_, name) sources between "SZS output start" and
/// "SZS output end" (whole output if absent), restricted to t's premises.
PremiseSet extract_used_premises(std::string_view output, const Theory& t);

/// True when the output contains a derivation region or any file(...) source.
bool has_derivation(std::string_view output);

std::string fnv1a_hex(std::string_view data);

/// Reads {"engines": [{"id", "executable", "arguments", "capabilities", "szs"}]}.
std::vector<EngineSpec> load_engine_config(const std::filesystem::path& path);
std::vector<EngineSpec> parse_engine_config(std::string_view json_text);

}  // namespace proofscope

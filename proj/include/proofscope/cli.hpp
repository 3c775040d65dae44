#pragma once

// Command-line front end. Reports are built as JSON; text output is rendered from it.

#include <iosfwd>

#include "json.hpp"

namespace proofscope::cli {

enum ExitCode : int {
  kOk = 0,
  kFinding = 1,       // hapax found, axioms dependent
  kInputError = 2,    // parse, include, configuration errors
  kUnconfirmed = 3,   // the conjecture was not confirmed
  kInconclusive = 4,
  kConflict = 5,      // engines contradicted each other
};

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

std::string render_text(const nlohmann::ordered_json& report);

}  // namespace proofscope::cli

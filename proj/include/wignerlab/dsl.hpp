#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wignerlab/scenario.hpp"

namespace wignerlab {

struct SourceSpan {
  std::size_t line = 1;    // 1-based
  std::size_t column = 1;  // 1-based
  std::size_t length = 0;
};

enum class Severity { Error, Warning };

struct ParseDiagnostic {
  SourceSpan span;
  Severity severity = Severity::Error;
  std::string message;
  std::string hint;  // expected-token hint, may be empty
};

struct ParseResult {
  std::optional<Scenario> scenario;  // present iff no error diagnostics
  std::vector<ParseDiagnostic> diagnostics;

  bool ok() const { return scenario.has_value(); }
};

// Parses the line-oriented .scn format. Never throws on malformed input;
// every problem becomes a diagnostic and the parser resynchronizes at the
// next line, so independent bad lines each get reported.
ParseResult parse_scenario(const std::string& text);

// Canonical text: one statement per line in declaration order, amplitudes
// with 17 significant digits. parse(serialize(s)) is structurally equal to s.
// Errors: InvalidScenario when validate_scenario rejects the input.
std::string serialize_scenario(const Scenario& scenario);

// "path:line:col: message" lines for CLI output.
std::string format_diagnostic(const std::string& path, const ParseDiagnostic& diagnostic);

}  // namespace wignerlab

#include "wignerlab/dsl.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "wignerlab/dsl_format.hpp"
#include "wignerlab/errors.hpp"

namespace wignerlab {

namespace {

struct Token {
  std::string text;
  std::size_t column = 1;
};

// Whitespace-separated tokens; a '[' opens a bracketed matrix literal that
// runs to the matching ']' regardless of spaces.
std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (line[i] == '[') {
      while (i < line.size() && line[i] != ']') ++i;
      if (i < line.size()) ++i;  // include ']'
    } else {
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    }
    tokens.push_back({line.substr(start, i - start), start + 1});
  }
  return tokens;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t pos = text.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(text.substr(start));
      break;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
  return parts;
}

// Split on `sep` at parenthesis depth zero.
std::vector<std::string> split_depth0(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string current;
  int depth = 0;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      parts.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  parts.push_back(current);
  return parts;
}

bool parse_double(const std::string& text, double& out) {
  if (text.empty()) return false;
  const char* begin = text.c_str();
  char* end = nullptr;
  out = std::strtod(begin, &end);
  return end == begin + text.size();
}

// Complex literal: "(re+imi)" / "(re-imi)" or a bare real.
bool parse_complex(const std::string& text, Complex& out) {
  if (text.size() >= 2 && text.front() == '(' && text.back() == ')') {
    std::string inner = text.substr(1, text.size() - 2);
    if (inner.empty() || inner.back() != 'i') return false;
    inner.pop_back();
    // The sign splitting real from imaginary: last '+' or '-' that is not
    // an exponent sign and not the leading sign.
    std::size_t pos = std::string::npos;
    for (std::size_t i = inner.size(); i-- > 1;) {
      if ((inner[i] == '+' || inner[i] == '-') && inner[i - 1] != 'e' && inner[i - 1] != 'E') {
        pos = i;
        break;
      }
    }
    if (pos == std::string::npos) return false;
    double re = 0.0, im = 0.0;
    if (!parse_double(inner.substr(0, pos), re)) return false;
    std::string imag_text = inner.substr(pos);
    if (imag_text == "+") imag_text = "1";
    if (imag_text == "-") imag_text = "-1";
    if (!parse_double(imag_text, im)) return false;
    out = Complex(re, im);
    return true;
  }
  double re = 0.0;
  if (!parse_double(text, re)) return false;
  out = Complex(re, 0.0);
  return true;
}

bool parse_matrix_literal(const std::string& text, Matrix& out) {
  if (text.size() < 2 || text.front() != '[' || text.back() != ']') return false;
  const std::string inner = text.substr(1, text.size() - 2);
  const std::vector<std::string> rows = split_depth0(inner, ';');
  std::vector<std::vector<Complex>> values;
  for (const auto& row : rows) {
    std::vector<Complex> entries;
    for (const auto& cell : split_depth0(row, ',')) {
      Complex value;
      if (!parse_complex(cell, value)) return false;
      entries.push_back(value);
    }
    if (!values.empty() && entries.size() != values.front().size()) return false;
    values.push_back(std::move(entries));
  }
  if (values.empty() || values.size() != values.front().size()) return false;
  out.resize(static_cast<Eigen::Index>(values.size()), static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = 0; j < values.size(); ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = values[i][j];
    }
  }
  return true;
}

bool parse_basis_spec(const std::string& text, BasisSpec& out) {
  if (text == "computational") {
    out = BasisSpec::computational();
    return true;
  }
  if (text == "bell") {
    out = BasisSpec::bell();
    return true;
  }
  if (text == "ghz") {
    out = BasisSpec::ghz();
    return true;
  }
  const std::string prefix = "spin:";
  if (text.rfind(prefix, 0) == 0) {
    double angle = 0.0;
    if (!parse_double(text.substr(prefix.size()), angle)) return false;
    out = BasisSpec::spin(angle);
    return true;
  }
  return false;
}

struct LineParser {
  std::size_t line_number;
  std::vector<Token> tokens;
  std::vector<ParseDiagnostic>* diagnostics;
  bool failed = false;

  void error(const Token& token, const std::string& message, const std::string& hint = "") {
    diagnostics->push_back(
        {{line_number, token.column, token.text.size()}, Severity::Error, message, hint});
    failed = true;
  }

  void error_at_end(const std::string& message, const std::string& hint = "") {
    const std::size_t column =
        tokens.empty() ? 1 : tokens.back().column + tokens.back().text.size();
    diagnostics->push_back({{line_number, column, 1}, Severity::Error, message, hint});
    failed = true;
  }

  // Value of a key=value token at position `index`.
  std::optional<std::string> key_value(std::size_t index, const std::string& key) {
    if (index >= tokens.size()) {
      error_at_end("missing '" + key + "=...' field", key + "=...");
      return std::nullopt;
    }
    const std::string prefix = key + "=";
    if (tokens[index].text.rfind(prefix, 0) != 0) {
      error(tokens[index], "expected '" + key + "=...', got '" + tokens[index].text + "'",
            key + "=...");
      return std::nullopt;
    }
    return tokens[index].text.substr(prefix.size());
  }
};

struct PendingScenario {
  Scenario scenario;
  std::vector<int> event_lines;
  std::vector<int> check_lines;
  bool saw_header = false;
};

// Parses the amplitude-ket expression tokens of a STATE line.
bool parse_state_expression(LineParser& parser, std::size_t first_token,
                            const std::vector<std::size_t>& dims, Vector& out) {
  std::size_t group_dim = 1;
  for (auto d : dims) group_dim *= d;
  out = Vector::Zero(static_cast<Eigen::Index>(group_dim));

  double sign = 1.0;
  bool expect_term = true;
  bool any = false;
  for (std::size_t i = first_token; i < parser.tokens.size(); ++i) {
    const Token& token = parser.tokens[i];
    if (!expect_term) {
      if (token.text == "+") {
        sign = 1.0;
      } else if (token.text == "-") {
        sign = -1.0;
      } else {
        parser.error(token, "expected '+' or '-' between state terms", "+");
        return false;
      }
      expect_term = true;
      continue;
    }

    const std::size_t bar = token.text.find('|');
    if (bar == std::string::npos || token.text.back() != '>') {
      parser.error(token, "expected an amplitude-ket term like 0.5|01>", "amp|ket>");
      return false;
    }
    Complex amp(1.0, 0.0);
    const std::string amp_text = token.text.substr(0, bar);
    if (!amp_text.empty() && !parse_complex(amp_text, amp)) {
      parser.error(token, "bad amplitude '" + amp_text + "'");
      return false;
    }
    const std::string ket = token.text.substr(bar + 1, token.text.size() - bar - 2);
    std::vector<std::size_t> digits;
    if (ket.find(',') != std::string::npos) {
      for (const auto& part : split(ket, ',')) {
        char* end = nullptr;
        digits.push_back(std::strtoul(part.c_str(), &end, 10));
        if (part.empty() || end != part.c_str() + part.size()) {
          parser.error(token, "bad ket '" + ket + "'");
          return false;
        }
      }
    } else {
      for (char c : ket) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
          parser.error(token, "bad ket '" + ket + "'");
          return false;
        }
        digits.push_back(static_cast<std::size_t>(c - '0'));
      }
    }
    if (digits.size() != dims.size()) {
      parser.error(token, "ket '" + ket + "' has " + std::to_string(digits.size()) +
                              " digits, group has " + std::to_string(dims.size()) +
                              " subsystems");
      return false;
    }
    std::size_t index = 0;
    for (std::size_t k = 0; k < digits.size(); ++k) {
      if (digits[k] >= dims[k]) {
        parser.error(token, "ket digit " + std::to_string(digits[k]) +
                                " out of range for dim " + std::to_string(dims[k]));
        return false;
      }
      index = index * dims[k] + digits[k];
    }
    out[static_cast<Eigen::Index>(index)] += sign * amp;
    sign = 1.0;
    expect_term = false;
    any = true;
  }
  if (!any || expect_term) {
    parser.error_at_end("state expression ends without a term");
    return false;
  }
  return true;
}

void parse_statement(LineParser& parser, PendingScenario& pending) {
  const std::vector<Token>& tokens = parser.tokens;
  const std::string& keyword = tokens[0].text;

  if (keyword == "SCENARIO") {
    if (pending.saw_header) {
      parser.error(tokens[0], "duplicate SCENARIO header");
      return;
    }
    if (tokens.size() != 2) {
      parser.error(tokens[0], "SCENARIO takes exactly one name", "SCENARIO name");
      return;
    }
    pending.scenario.name = tokens[1].text;
    pending.saw_header = true;
    return;
  }
  if (!pending.saw_header) {
    parser.error(tokens[0], "missing SCENARIO header before '" + keyword + "'", "SCENARIO name");
    return;
  }

  if (keyword == "SYSTEM") {
    if (tokens.size() != 3) {
      parser.error(tokens[0], "SYSTEM takes a label and dim=N", "SYSTEM label dim=N");
      return;
    }
    auto dim_text = parser.key_value(2, "dim");
    if (!dim_text) return;
    char* end = nullptr;
    const unsigned long dim = std::strtoul(dim_text->c_str(), &end, 10);
    if (dim_text->empty() || end != dim_text->c_str() + dim_text->size() || dim < 2) {
      parser.error(tokens[2], "dim must be an integer >= 2");
      return;
    }
    for (const auto& sub : pending.scenario.reg.subsystems()) {
      if (sub.label == tokens[1].text) {
        parser.error(tokens[1], "duplicate subsystem '" + tokens[1].text + "'");
        return;
      }
    }
    std::vector<Subsystem> subs = pending.scenario.reg.subsystems();
    subs.push_back({tokens[1].text, dim});
    try {
      pending.scenario.reg = make_register(subs);
    } catch (const Error& e) {
      parser.error(tokens[1], e.what());
    }
    return;
  }

  if (keyword == "AGENT") {
    if (tokens.size() < 4 || tokens[2].text != "observes") {
      parser.error(tokens[0], "AGENT takes a name, 'observes' and labels",
                   "AGENT name observes L1 L2");
      return;
    }
    AgentDecl agent;
    agent.name = tokens[1].text;
    for (std::size_t i = 3; i < tokens.size(); ++i) agent.observes.push_back(tokens[i].text);
    pending.scenario.agents.push_back(std::move(agent));
    return;
  }

  if (keyword == "STATE") {
    if (tokens.size() < 3) {
      parser.error(tokens[0], "STATE takes labels and a state expression",
                   "STATE L amp|ket> + amp|ket>");
      return;
    }
    StateGroup group;
    group.labels = split(tokens[1].text, ',');
    std::vector<std::size_t> dims;
    for (const auto& label : group.labels) {
      auto idx = pending.scenario.reg.find(label);
      if (!idx) {
        parser.error(tokens[1], "unknown subsystem '" + label + "'");
        return;
      }
      dims.push_back(pending.scenario.reg.dim(*idx));
    }
    if (!parse_state_expression(parser, 2, dims, group.amps)) return;
    pending.scenario.initial_groups.push_back(std::move(group));
    return;
  }

  if (keyword == "EVENT") {
    if (tokens.size() < 2) {
      parser.error_at_end("EVENT needs a kind", "unitary|measure|signal|noop");
      return;
    }
    const std::string& kind = tokens[1].text;
    if (kind == "unitary") {
      if (tokens.size() < 4) {
        parser.error(tokens[1], "unitary event needs an operator and targets",
                     "EVENT unitary NAME T1 [T2 ...]");
        return;
      }
      UnitaryEvent event;
      if (tokens[2].text.front() == '[') {
        Matrix m;
        if (!parse_matrix_literal(tokens[2].text, m)) {
          parser.error(tokens[2], "bad matrix literal");
          return;
        }
        event.unitary = UnitarySpec::literal(std::move(m));
      } else {
        event.unitary = UnitarySpec::named(tokens[2].text);
      }
      for (std::size_t i = 3; i < tokens.size(); ++i) event.targets.push_back(tokens[i].text);
      pending.scenario.events.push_back(std::move(event));
      pending.event_lines.push_back(static_cast<int>(parser.line_number));
      return;
    }
    if (kind == "measure") {
      if (tokens.size() != 6) {
        parser.error(tokens[1], "measure event needs agent, basis=, targets=, record=",
                     "EVENT measure AGENT basis=KIND targets=T1,T2 record=NAME");
        return;
      }
      MeasureEvent event;
      event.agent = tokens[2].text;
      auto basis_text = parser.key_value(3, "basis");
      auto targets_text = parser.key_value(4, "targets");
      auto record_text = parser.key_value(5, "record");
      if (!basis_text || !targets_text || !record_text) return;
      if (!parse_basis_spec(*basis_text, event.basis)) {
        parser.error(tokens[3], "unknown basis '" + *basis_text + "'",
                     "computational|bell|ghz|spin:ANGLE");
        return;
      }
      event.targets = split(*targets_text, ',');
      event.record = *record_text;
      pending.scenario.events.push_back(std::move(event));
      pending.event_lines.push_back(static_cast<int>(parser.line_number));
      return;
    }
    if (kind == "signal") {
      // EVENT signal when REC==OUT apply NAME T1 [T2 ...]
      if (tokens.size() < 6 || tokens[2].text != "when" || tokens[4].text != "apply") {
        parser.error(tokens[1], "signal event needs 'when REC==OUT apply NAME targets'",
                     "EVENT signal when mW==PhiPlus apply FLIP C");
        return;
      }
      const std::size_t eq = tokens[3].text.find("==");
      if (eq == std::string::npos) {
        parser.error(tokens[3], "condition must look like record==outcome", "REC==OUT");
        return;
      }
      SignalEvent event;
      event.record = tokens[3].text.substr(0, eq);
      event.outcome = tokens[3].text.substr(eq + 2);
      if (tokens[5].text.front() == '[') {
        Matrix m;
        if (!parse_matrix_literal(tokens[5].text, m)) {
          parser.error(tokens[5], "bad matrix literal");
          return;
        }
        event.action = UnitarySpec::literal(std::move(m));
      } else {
        event.action = UnitarySpec::named(tokens[5].text);
      }
      for (std::size_t i = 6; i < tokens.size(); ++i) event.targets.push_back(tokens[i].text);
      if (event.targets.empty()) {
        parser.error_at_end("signal action needs targets");
        return;
      }
      pending.scenario.events.push_back(std::move(event));
      pending.event_lines.push_back(static_cast<int>(parser.line_number));
      return;
    }
    if (kind == "noop") {
      pending.scenario.events.push_back(NoopEvent{});
      pending.event_lines.push_back(static_cast<int>(parser.line_number));
      return;
    }
    parser.error(tokens[1], "unknown event kind '" + kind + "'",
                 "unitary|measure|signal|noop");
    return;
  }

  if (keyword == "CHECK") {
    if (tokens.size() < 3) {
      parser.error_at_end("CHECK needs a kind and fields",
                          "outcome|distribution|records|definability|witness");
      return;
    }
    Check check;
    const std::string& kind = tokens[1].text;
    std::size_t next = 2;
    if (kind == "outcome") {
      check.kind = CheckKind::Outcome;
      const std::size_t eq = tokens[2].text.find("==");
      if (eq == std::string::npos) {
        parser.error(tokens[2], "outcome check must look like TARGETS==OUTCOME", "C==1");
        return;
      }
      check.targets = split(tokens[2].text.substr(0, eq), ',');
      check.outcome = tokens[2].text.substr(eq + 2);
      next = 3;
    } else if (kind == "distribution" || kind == "witness") {
      check.kind = kind == "witness" ? CheckKind::Witness : CheckKind::Distribution;
      auto basis_text = parser.key_value(2, "basis");
      auto targets_text = parser.key_value(3, "targets");
      if (!basis_text || !targets_text) return;
      if (!parse_basis_spec(*basis_text, check.basis)) {
        parser.error(tokens[2], "unknown basis '" + *basis_text + "'",
                     "computational|bell|ghz|spin:ANGLE");
        return;
      }
      check.targets = split(*targets_text, ',');
      next = 4;
    } else if (kind == "records") {
      check.kind = CheckKind::Records;
      check.records = split(tokens[2].text, ',');
      next = 3;
    } else if (kind == "definability") {
      check.kind = CheckKind::Definability;
      auto observable_text = parser.key_value(2, "observable");
      auto targets_text = parser.key_value(3, "targets");
      if (!observable_text || !targets_text) return;
      check.observable = *observable_text;
      check.targets = split(*targets_text, ',');
      next = 4;
    } else {
      parser.error(tokens[1], "unknown check kind '" + kind + "'",
                   "outcome|distribution|records|definability|witness");
      return;
    }
    auto agents_text = parser.key_value(next, "agents");
    if (!agents_text) return;
    check.agents = split(*agents_text, ',');
    ++next;
    if (next < tokens.size()) {
      auto tol_text = parser.key_value(next, "tol");
      if (!tol_text) return;
      if (!parse_double(*tol_text, check.tolerance) || !(check.tolerance > 0.0)) {
        parser.error(tokens[next], "tol must be a positive number");
        return;
      }
      ++next;
    }
    if (next != tokens.size()) {
      parser.error(tokens[next], "unexpected trailing field '" + tokens[next].text + "'");
      return;
    }
    pending.scenario.checks.push_back(std::move(check));
    pending.check_lines.push_back(static_cast<int>(parser.line_number));
    return;
  }

  if (keyword == "POLICY") {
    if (tokens.size() != 2) {
      parser.error(tokens[0], "POLICY takes one policy token",
                   "unitary_only | collapse_at:A,B");
      return;
    }
    try {
      pending.scenario.policies.push_back(parse_policy(tokens[1].text));
    } catch (const Error& e) {
      parser.error(tokens[1], e.what());
    }
    return;
  }

  parser.error(tokens[0], "unknown statement '" + keyword + "'",
               "SCENARIO|SYSTEM|AGENT|STATE|EVENT|CHECK|POLICY");
}

}  // namespace

ParseResult parse_scenario(const std::string& text) {
  ParseResult result;
  PendingScenario pending;

  std::size_t line_number = 0;
  std::size_t position = 0;
  while (position <= text.size()) {
    const std::size_t newline = text.find('\n', position);
    std::string line = newline == std::string::npos ? text.substr(position)
                                                    : text.substr(position, newline - position);
    ++line_number;
    position = newline == std::string::npos ? text.size() + 1 : newline + 1;

    const std::size_t comment = line.find('#');
    if (comment != std::string::npos) line.erase(comment);
    if (!line.empty() && line.back() == '\r') line.pop_back();

    LineParser parser{line_number, tokenize(line), &result.diagnostics};
    if (parser.tokens.empty()) continue;
    parse_statement(parser, pending);
  }

  if (!pending.saw_header) {
    result.diagnostics.push_back(
        {{1, 1, 0}, Severity::Error, "missing SCENARIO header", "SCENARIO name"});
  }

  const bool parse_errors = std::any_of(
      result.diagnostics.begin(), result.diagnostics.end(),
      [](const ParseDiagnostic& d) { return d.severity == Severity::Error; });
  if (parse_errors) return result;

  // Structural validation; map event-indexed issues back to source lines.
  const auto issues = validate_scenario(pending.scenario);
  for (const auto& issue : issues) {
    std::size_t line = 1;
    if (issue.event_index >= 0 &&
        issue.event_index < static_cast<int>(pending.event_lines.size())) {
      line = static_cast<std::size_t>(pending.event_lines[issue.event_index]);
    } else if (issue.check_index >= 0 &&
               issue.check_index < static_cast<int>(pending.check_lines.size())) {
      line = static_cast<std::size_t>(pending.check_lines[issue.check_index]);
    }
    result.diagnostics.push_back({{line, 1, 0}, Severity::Error, issue.message, ""});
  }
  if (!issues.empty()) return result;

  result.scenario = std::move(pending.scenario);
  return result;
}

namespace {

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string text;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) text += sep;
    text += parts[i];
  }
  return text;
}

std::string serialize_matrix(const Matrix& m) {
  std::string text = "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (i > 0) text += ';';
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) text += ',';
      text += format_complex(m(i, j));
    }
  }
  return text + "]";
}

std::string serialize_unitary(const UnitarySpec& spec) {
  return spec.kind == UnitarySpec::Kind::Named ? spec.name : serialize_matrix(spec.matrix);
}

std::string serialize_ket(const std::vector<std::size_t>& dims, std::size_t flat) {
  const bool wide = std::any_of(dims.begin(), dims.end(), [](std::size_t d) { return d > 10; });
  std::vector<std::size_t> digits(dims.size());
  for (std::size_t k = dims.size(); k-- > 0;) {
    digits[k] = flat % dims[k];
    flat /= dims[k];
  }
  std::string text = "|";
  for (std::size_t k = 0; k < digits.size(); ++k) {
    if (wide && k > 0) text += ',';
    text += std::to_string(digits[k]);
  }
  return text + ">";
}

std::string serialize_group(const Scenario& scenario, const StateGroup& group) {
  std::vector<std::size_t> dims;
  for (const auto& label : group.labels) {
    dims.push_back(scenario.reg.dim(scenario.reg.index_of(label)));
  }
  std::vector<std::string> terms;
  for (Eigen::Index i = 0; i < group.amps.size(); ++i) {
    const Complex amp = group.amps[i];
    if (amp == Complex(0.0, 0.0)) continue;
    const std::string ket = serialize_ket(dims, static_cast<std::size_t>(i));
    terms.push_back(amp == Complex(1.0, 0.0) && group.amps.cwiseAbs().sum() == 1.0
                        ? ket
                        : format_complex(amp) + ket);
  }
  return join(terms, " + ");
}

}  // namespace

std::string serialize_scenario(const Scenario& scenario) {
  const auto issues = validate_scenario(scenario);
  if (!issues.empty()) {
    raise(ErrorCode::InvalidScenario, "cannot serialize invalid scenario: " + issues.front().message);
  }

  std::ostringstream out;
  out << "SCENARIO " << scenario.name << "\n";
  for (const auto& sub : scenario.reg.subsystems()) {
    out << "SYSTEM " << sub.label << " dim=" << sub.dim << "\n";
  }
  for (const auto& agent : scenario.agents) {
    out << "AGENT " << agent.name << " observes " << join(agent.observes, " ") << "\n";
  }
  for (const auto& group : scenario.initial_groups) {
    out << "STATE " << join(group.labels, ",") << " " << serialize_group(scenario, group) << "\n";
  }
  for (const auto& event : scenario.events) {
    if (const auto* unitary = std::get_if<UnitaryEvent>(&event)) {
      out << "EVENT unitary " << serialize_unitary(unitary->unitary) << " "
          << join(unitary->targets, " ") << "\n";
    } else if (const auto* measure = std::get_if<MeasureEvent>(&event)) {
      out << "EVENT measure " << measure->agent << " basis=" << to_string(measure->basis)
          << " targets=" << join(measure->targets, ",") << " record=" << measure->record << "\n";
    } else if (const auto* signal = std::get_if<SignalEvent>(&event)) {
      out << "EVENT signal when " << signal->record << "==" << signal->outcome << " apply "
          << serialize_unitary(signal->action) << " " << join(signal->targets, " ") << "\n";
    } else {
      out << "EVENT noop\n";
    }
  }
  for (const auto& check : scenario.checks) {
    out << "CHECK " << to_string(check.kind) << " ";
    switch (check.kind) {
      case CheckKind::Outcome:
        out << join(check.targets, ",") << "==" << check.outcome;
        break;
      case CheckKind::Distribution:
      case CheckKind::Witness:
        out << "basis=" << to_string(check.basis) << " targets=" << join(check.targets, ",");
        break;
      case CheckKind::Records:
        out << join(check.records, ",");
        break;
      case CheckKind::Definability:
        out << "observable=" << check.observable << " targets=" << join(check.targets, ",");
        break;
    }
    out << " agents=" << join(check.agents, ",") << " tol=" << format_shortest(check.tolerance)
        << "\n";
  }
  for (const auto& policy : scenario.policies) {
    out << "POLICY " << to_string(policy) << "\n";
  }
  return out.str();
}

std::string format_diagnostic(const std::string& path, const ParseDiagnostic& diagnostic) {
  std::string text = path + ":" + std::to_string(diagnostic.span.line) + ":" +
                     std::to_string(diagnostic.span.column) + ": " + diagnostic.message;
  if (!diagnostic.hint.empty()) text += " (expected " + diagnostic.hint + ")";
  return text;
}

}  // namespace wignerlab

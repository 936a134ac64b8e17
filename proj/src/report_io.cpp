#include "wignerlab/report_io.hpp"

#include <cstdio>
#include <sstream>

#include "wignerlab/dsl_format.hpp"

namespace wignerlab {

namespace {

// Minimal JSON writer with insertion-ordered keys and fixed float format.
class JsonWriter {
 public:
  std::string take() { return std::move(out_); }

  void begin_object() {
    separator();
    out_ += '{';
    fresh_ = true;
  }
  void end_object() {
    out_ += '}';
    fresh_ = false;
  }
  void begin_array() {
    separator();
    out_ += '[';
    fresh_ = true;
  }
  void end_array() {
    out_ += ']';
    fresh_ = false;
  }
  void key(const std::string& name) {
    separator();
    append_string(name);
    out_ += ':';
    fresh_ = true;
  }
  void value(const std::string& text) {
    separator();
    append_string(text);
  }
  void value(double number) {
    separator();
    out_ += format_amplitude(number);
  }
  void value(std::uint64_t number) {
    separator();
    out_ += std::to_string(number);
  }
  void value(bool flag) {
    separator();
    out_ += flag ? "true" : "false";
  }

 private:
  void separator() {
    if (!fresh_ && !out_.empty() && out_.back() != '{' && out_.back() != '[' &&
        out_.back() != ':') {
      out_ += ',';
    }
    fresh_ = false;
  }

  void append_string(const std::string& text) {
    out_ += '"';
    for (char c : text) {
      switch (c) {
        case '"': out_ += "\\\""; break;
        case '\\': out_ += "\\\\"; break;
        case '\n': out_ += "\\n"; break;
        case '\t': out_ += "\\t"; break;
        case '\r': out_ += "\\r"; break;
        default:
          if (static_cast<unsigned char>(c) < 0x20) {
            char buffer[8];
            std::snprintf(buffer, sizeof(buffer), "\\u%04x", c);
            out_ += buffer;
          } else {
            out_ += c;
          }
      }
    }
    out_ += '"';
  }

  std::string out_;
  bool fresh_ = true;
};

void write_distribution(JsonWriter& json, const OutcomeDistribution& dist) {
  json.begin_object();
  for (const auto& [label, p] : dist) {
    json.key(label);
    json.value(p);
  }
  json.end_object();
}

void write_check_value(JsonWriter& json, const CheckValue& value) {
  json.begin_object();
  switch (value.type) {
    case CheckValue::Type::Distribution:
      json.key("distribution");
      write_distribution(json, value.distribution);
      if (value.outcome_probability) {
        json.key("probability");
        json.value(*value.outcome_probability);
      }
      break;
    case CheckValue::Type::Definability:
      json.key("definability");
      json.value(std::string(value.definite ? "definite" : "undefined"));
      if (value.definite) {
        json.key("value");
        json.value(*value.definite);
      }
      break;
    case CheckValue::Type::Witness:
      json.key("witness");
      json.value(value.witness.value_or(0.0));
      break;
  }
  json.end_object();
}

}  // namespace

std::string report_to_json(const ConsistencyReport& report) {
  JsonWriter json;
  json.begin_object();
  json.key("scenario");
  json.value(report.scenario);
  json.key("policies");
  json.begin_array();
  for (const auto& policy : report.policies) json.value(to_string(policy));
  json.end_array();
  json.key("seed");
  json.value(report.seed);
  json.key("verdict");
  json.value(std::string(to_string(overall_verdict(report))));

  json.key("checks");
  json.begin_array();
  for (const auto& check : report.checks) {
    json.begin_object();
    json.key("name");
    json.value(check.name);
    json.key("kind");
    json.value(std::string(to_string(check.check.kind)));
    json.key("tolerance");
    json.value(check.tolerance);
    json.key("entries");
    json.begin_array();
    for (const auto& entry : check.entries) {
      json.begin_object();
      json.key("agent");
      json.value(entry.agent);
      json.key("policy");
      json.value(to_string(entry.policy));
      json.key("value");
      write_check_value(json, entry.value);
      if (entry.fictional) {
        json.key("fictional");
        json.begin_object();
        json.key("policy");
        json.value(to_string(*entry.fictional_policy));
        json.key("label");
        json.value(std::string("FICTIONAL"));
        json.key("value");
        write_check_value(json, *entry.fictional);
        json.end_object();
      }
      json.end_object();
    }
    json.end_array();
    json.key("pairs");
    json.begin_array();
    for (const auto& pair : check.pairs) {
      json.begin_object();
      json.key("a");
      json.value(to_string(pair.a));
      json.key("b");
      json.value(to_string(pair.b));
      json.key("gap");
      json.value(pair.gap);
      json.key("verdict");
      json.value(std::string(to_string(pair.verdict)));
      json.end_object();
    }
    json.end_array();
    json.key("max_gap");
    json.value(check.max_gap);
    json.key("verdict");
    json.value(std::string(to_string(check.verdict)));
    json.end_object();
  }
  json.end_array();

  if (report.monte_carlo) {
    const MonteCarloSection& mc = *report.monte_carlo;
    json.key("monte_carlo");
    json.begin_object();
    json.key("policy");
    json.value(to_string(mc.policy));
    json.key("runs");
    json.value(mc.runs);
    json.key("seed");
    json.value(mc.seed);
    json.key("flagged");
    json.value(mc.any_flagged);
    json.key("checks");
    json.begin_array();
    for (const auto& check : mc.checks) {
      json.begin_object();
      json.key("name");
      json.value(check.name);
      json.key("flagged");
      json.value(check.flagged);
      json.key("outcomes");
      json.begin_array();
      for (const auto& outcome : check.outcomes) {
        json.begin_object();
        json.key("label");
        json.value(outcome.label);
        json.key("analytic");
        json.value(outcome.analytic);
        json.key("count");
        json.value(outcome.count);
        json.key("frequency");
        json.value(outcome.frequency);
        if (outcome.sigma) {
          json.key("sigma");
          json.value(*outcome.sigma);
          json.key("flagged");
          json.value(outcome.flagged);
        }
        json.end_object();
      }
      json.end_array();
      json.end_object();
    }
    json.end_array();
    if (!mc.trajectories.empty()) {
      json.key("trajectories");
      json.begin_array();
      for (const auto& trajectory : mc.trajectories) {
        json.begin_object();
        json.key("run");
        json.value(trajectory.run);
        json.key("records");
        json.begin_object();
        for (const auto& [record, outcome] : trajectory.records) {
          json.key(record);
          json.value(outcome);
        }
        json.end_object();
        json.end_object();
      }
      json.end_array();
    }
    json.end_object();
  }

  json.end_object();
  std::string text = json.take();
  text += '\n';
  return text;
}

namespace {

std::string value_summary(const CheckValue& value) {
  std::ostringstream out;
  switch (value.type) {
    case CheckValue::Type::Distribution: {
      if (value.outcome_probability) {
        out << "P = " << format_shortest(*value.outcome_probability);
        break;
      }
      out << "{";
      bool first = true;
      for (const auto& [label, p] : value.distribution) {
        if (!first) out << ", ";
        first = false;
        out << label << ": " << format_shortest(p);
      }
      out << "}";
      break;
    }
    case CheckValue::Type::Definability:
      if (value.definite) {
        out << "Definite(" << format_shortest(*value.definite) << ")";
      } else {
        out << "Undefined";
      }
      break;
    case CheckValue::Type::Witness:
      out << "witness = " << format_shortest(value.witness.value_or(0.0));
      break;
  }
  return out.str();
}

}  // namespace

std::string report_to_text(const ConsistencyReport& report) {
  std::ostringstream out;
  out << "scenario: " << report.scenario << "\n";
  out << "policies:";
  for (const auto& policy : report.policies) out << " " << to_string(policy);
  out << "\n";

  for (const auto& check : report.checks) {
    out << "\ncheck " << check.name << " (tol " << format_shortest(check.tolerance) << ")\n";
    for (const auto& entry : check.entries) {
      out << "  " << to_string(entry.policy) << "  " << entry.agent << ": "
          << value_summary(entry.value) << "\n";
      if (entry.fictional) {
        out << "    FICTIONAL under " << to_string(*entry.fictional_policy) << ": "
            << value_summary(*entry.fictional) << "\n";
      }
    }
    for (const auto& pair : check.pairs) {
      out << "  " << to_string(pair.a) << " vs " << to_string(pair.b) << ": gap "
          << format_shortest(pair.gap) << " -> " << to_string(pair.verdict) << "\n";
    }
  }

  if (report.monte_carlo) {
    const MonteCarloSection& mc = *report.monte_carlo;
    out << "\nmonte carlo: policy " << to_string(mc.policy) << ", runs " << mc.runs << ", seed "
        << mc.seed << "\n";
    for (const auto& check : mc.checks) {
      out << "  " << check.name << (check.flagged ? "  [FLAGGED]" : "") << "\n";
      for (const auto& outcome : check.outcomes) {
        out << "    " << outcome.label << ": " << outcome.count << "/" << mc.runs << " = "
            << format_shortest(outcome.frequency)
            << " (analytic " << format_shortest(outcome.analytic);
        if (outcome.sigma) {
          out << ", sigma " << format_shortest(*outcome.sigma);
        }
        out << ")" << (outcome.flagged ? " [beyond 3 sigma]" : "") << "\n";
      }
    }
    if (!mc.trajectories.empty()) {
      out << "  trajectories:\n";
      for (const auto& trajectory : mc.trajectories) {
        out << "    run " << trajectory.run << ":";
        for (const auto& [record, outcome] : trajectory.records) {
          out << " " << record << "=" << outcome;
        }
        out << "\n";
      }
    }
  }

  out << "\nverdict: " << to_string(overall_verdict(report)) << "\n";
  return out.str();
}

}  // namespace wignerlab

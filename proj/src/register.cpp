#include "wignerlab/register.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "wignerlab/errors.hpp"

namespace wignerlab {

namespace {

bool valid_label(const std::string& label) {
  if (label.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(label[0])) || label[0] == '_')) return false;
  return std::all_of(label.begin(), label.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_';
  });
}

}  // namespace

std::optional<std::size_t> Register::find(const std::string& label) const {
  for (std::size_t i = 0; i < subs_.size(); ++i) {
    if (subs_[i].label == label) return i;
  }
  return std::nullopt;
}

std::size_t Register::index_of(const std::string& label) const {
  auto idx = find(label);
  if (!idx) raise(ErrorCode::UnknownTarget, "unknown subsystem label '" + label + "'");
  return *idx;
}

Register Register::keep(const std::vector<std::string>& labels) const {
  std::vector<Subsystem> kept;
  for (const auto& sub : subs_) {
    if (std::find(labels.begin(), labels.end(), sub.label) != labels.end()) {
      kept.push_back(sub);
    }
  }
  // Re-validates nothing beyond structure; labels come from an existing register.
  return make_register(kept);
}

Register make_register(const std::vector<Subsystem>& specs) {
  Register reg;
  std::set<std::string> seen;
  std::size_t total = 1;
  for (const auto& spec : specs) {
    if (!valid_label(spec.label)) {
      raise(ErrorCode::InvalidLabel, "subsystem label '" + spec.label + "' is not an identifier");
    }
    if (!seen.insert(spec.label).second) {
      raise(ErrorCode::DuplicateLabel, "duplicate subsystem label '" + spec.label + "'");
    }
    if (spec.dim < 2) {
      raise(ErrorCode::DimTooSmall,
            "subsystem '" + spec.label + "' has dim " + std::to_string(spec.dim) + " (< 2)");
    }
    if (total > kMaxTotalDim / spec.dim) {
      raise(ErrorCode::TooLarge, "total dimension exceeds " + std::to_string(kMaxTotalDim));
    }
    total *= spec.dim;
  }
  reg.subs_ = specs;
  reg.total_ = total;
  reg.strides_.assign(specs.size(), 1);
  // Row-major: first subsystem slowest-varying.
  for (std::size_t i = specs.size(); i-- > 1;) {
    reg.strides_[i - 1] = reg.strides_[i] * specs[i].dim;
  }
  return reg;
}

IndexSplit IndexSplit::make(const Register& reg, const std::vector<std::string>& targets) {
  std::vector<std::size_t> target_idx;
  std::set<std::size_t> used;
  for (const auto& label : targets) {
    std::size_t i = reg.index_of(label);
    if (!used.insert(i).second) {
      raise(ErrorCode::UnknownTarget, "repeated target label '" + label + "'");
    }
    target_idx.push_back(i);
  }
  std::vector<std::size_t> env_idx;
  for (std::size_t i = 0; i < reg.count(); ++i) {
    if (!used.count(i)) env_idx.push_back(i);
  }

  IndexSplit split;
  for (auto i : target_idx) split.target_dim *= reg.dim(i);
  for (auto i : env_idx) split.env_dim *= reg.dim(i);

  split.target_offset.assign(split.target_dim, 0);
  for (std::size_t t = 0; t < split.target_dim; ++t) {
    std::size_t rem = t;
    std::size_t offset = 0;
    for (std::size_t k = target_idx.size(); k-- > 0;) {
      const std::size_t d = reg.dim(target_idx[k]);
      offset += (rem % d) * reg.stride(target_idx[k]);
      rem /= d;
    }
    split.target_offset[t] = offset;
  }
  split.env_offset.assign(split.env_dim, 0);
  for (std::size_t e = 0; e < split.env_dim; ++e) {
    std::size_t rem = e;
    std::size_t offset = 0;
    for (std::size_t k = env_idx.size(); k-- > 0;) {
      const std::size_t d = reg.dim(env_idx[k]);
      offset += (rem % d) * reg.stride(env_idx[k]);
      rem /= d;
    }
    split.env_offset[e] = offset;
  }
  return split;
}

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateLabel: return "DuplicateLabel";
    case ErrorCode::InvalidLabel: return "InvalidLabel";
    case ErrorCode::DimTooSmall: return "DimTooSmall";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::LabelClash: return "LabelClash";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::UnknownTarget: return "UnknownTarget";
    case ErrorCode::NothingKept: return "NothingKept";
    case ErrorCode::NothingDiscarded: return "NothingDiscarded";
    case ErrorCode::ProbabilitySumInvalid: return "ProbabilitySumInvalid";
    case ErrorCode::RegisterMismatch: return "RegisterMismatch";
    case ErrorCode::BasisMismatch: return "BasisMismatch";
    case ErrorCode::PolicyHasNoOutcomes: return "PolicyHasNoOutcomes";
    case ErrorCode::InvalidScenario: return "InvalidScenario";
    case ErrorCode::MissingAgent: return "MissingAgent";
    case ErrorCode::IoError: return "IoError";
  }
  return "UnknownError";
}

}  // namespace wignerlab

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace wignerlab {

// Normalization / unitarity / hermiticity tolerance used across the library.
inline constexpr double kNormEpsilon = 1e-9;

// Dense desk-scale cap on joint dimensions.
inline constexpr std::size_t kMaxTotalDim = std::size_t{1} << 14;

struct Subsystem {
  std::string label;
  std::size_t dim = 0;

  bool operator==(const Subsystem&) const = default;
};

// Ordered list of named finite-dimensional subsystems. The order fixes the
// tensor index convention: row-major, first-declared subsystem slowest-varying.
class Register {
 public:
  Register() = default;

  const std::vector<Subsystem>& subsystems() const { return subs_; }
  std::size_t count() const { return subs_.size(); }
  std::size_t total_dim() const { return total_; }
  std::size_t dim(std::size_t i) const { return subs_[i].dim; }
  const std::string& label(std::size_t i) const { return subs_[i].label; }
  std::size_t stride(std::size_t i) const { return strides_[i]; }

  std::optional<std::size_t> find(const std::string& label) const;
  // Throws UnknownTarget when the label is absent.
  std::size_t index_of(const std::string& label) const;
  bool contains(const std::string& label) const { return find(label).has_value(); }

  // Sub-register of the given labels, kept in this register's declaration order.
  Register keep(const std::vector<std::string>& labels) const;

  bool operator==(const Register&) const = default;

 private:
  friend Register make_register(const std::vector<Subsystem>& specs);

  std::vector<Subsystem> subs_;
  std::vector<std::size_t> strides_;
  std::size_t total_ = 0;
};

// Errors: DuplicateLabel, InvalidLabel, DimTooSmall, TooLarge.
Register make_register(const std::vector<Subsystem>& specs);

// Flat-index bookkeeping for acting on a subset of subsystems: every joint
// index decomposes as target_offset[t] + env_offset[e], where t runs over the
// target group (in the order the targets were listed, row-major) and e over
// the remaining subsystems in register order.
struct IndexSplit {
  std::size_t target_dim = 1;
  std::size_t env_dim = 1;
  std::vector<std::size_t> target_offset;
  std::vector<std::size_t> env_offset;

  // Errors: UnknownTarget (unknown or repeated target label).
  static IndexSplit make(const Register& reg, const std::vector<std::string>& targets);
};

}  // namespace wignerlab

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vfdt/errors.hpp"

namespace vfdt {

enum class AttributeKind { kNominal, kNumeric };

struct AttributeDecl {
  std::string name;
  AttributeKind kind = AttributeKind::kNumeric;
  std::size_t arity = 0;  // nominal only, >= 2

  static AttributeDecl nominal(std::string name, std::size_t arity) {
    return {std::move(name), AttributeKind::kNominal, arity};
  }
  static AttributeDecl numeric(std::string name) {
    return {std::move(name), AttributeKind::kNumeric, 0};
  }

  bool is_nominal() const noexcept { return kind == AttributeKind::kNominal; }

  friend bool operator==(const AttributeDecl&, const AttributeDecl&) = default;
};

/// One labeled example. Nominal values are stored as their index, so every
/// attribute fits in one `double` slot; text only appears at the I/O boundary.
struct Instance {
  std::vector<double> values;
  std::size_t label = 0;

  std::size_t nominal(std::size_t attribute) const {
    return static_cast<std::size_t>(values[attribute]);
  }

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// Raised by Schema::parse. Each malformed-header condition has its own reason.
class SchemaParseError : public ParseError {
 public:
  enum class Reason { kMalformedToken, kDuplicateName, kArityTooSmall, kTooFewClasses };

  SchemaParseError(Reason reason, std::string token, const std::string& message);

  Reason reason() const noexcept { return reason_; }
  const std::string& token() const noexcept { return token_; }

 private:
  Reason reason_;
  std::string token_;
};

/// Attribute declarations plus the ordered class labels. Immutable once built.
///
/// Header grammar (one line, comma separated):
///   name:numeric | name:nominal(k)  ...  class{l1|l2|...}
/// The values of a nominal attribute `b` with arity k are spelled `b0`..`b{k-1}`
/// in CSV rows (plain integer indices are accepted too).
class Schema {
 public:
  Schema(std::vector<AttributeDecl> attributes, std::vector<std::string> class_labels);

  static Schema parse(std::string_view header);
  std::string to_header() const;

  const std::vector<AttributeDecl>& attributes() const noexcept { return attributes_; }
  const AttributeDecl& attribute(std::size_t i) const { return attributes_.at(i); }
  std::size_t attribute_count() const noexcept { return attributes_.size(); }

  const std::vector<std::string>& class_labels() const noexcept { return class_labels_; }
  std::size_t class_count() const noexcept { return class_labels_.size(); }

  /// A_f and A_i.
  std::size_t numeric_count() const noexcept { return numeric_count_; }
  std::size_t nominal_count() const noexcept { return attributes_.size() - numeric_count_; }

  std::optional<std::size_t> class_index(std::string_view label) const;
  std::optional<std::size_t> nominal_value_index(std::size_t attribute,
                                                 std::string_view token) const;
  std::string nominal_value_label(std::size_t attribute, std::size_t value) const;

  /// Throws SchemaError describing the first violation.
  void validate(const Instance& instance) const;
  bool conforms(const Instance& instance) const noexcept;

  friend bool operator==(const Schema& a, const Schema& b) {
    return a.attributes_ == b.attributes_ && a.class_labels_ == b.class_labels_;
  }

 private:
  std::vector<AttributeDecl> attributes_;
  std::vector<std::string> class_labels_;
  std::size_t numeric_count_ = 0;
};

}  // namespace vfdt

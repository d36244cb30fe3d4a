#include "vfdt/schema.hpp"

#include <cmath>
#include <set>

#include "text_util.hpp"

namespace vfdt {

namespace {

bool valid_name(std::string_view name) {
  if (name.empty()) return false;
  for (char ch : name) {
    if (ch == ',' || ch == ':' || ch == '{' || ch == '}' || ch == '|' || ch == '(' ||
        ch == ')' || ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r') {
      return false;
    }
  }
  return true;
}

using Reason = SchemaParseError::Reason;

[[noreturn]] void fail(Reason reason, std::string_view token, const std::string& what) {
  throw SchemaParseError(reason, std::string(token), what + ": '" + std::string(token) + "'");
}

}  // namespace

SchemaParseError::SchemaParseError(Reason reason, std::string token, const std::string& message)
    : ParseError(message), reason_(reason), token_(std::move(token)) {}

Schema::Schema(std::vector<AttributeDecl> attributes, std::vector<std::string> class_labels)
    : attributes_(std::move(attributes)), class_labels_(std::move(class_labels)) {
  if (attributes_.empty()) throw SchemaError("schema needs at least one attribute");
  if (class_labels_.size() < 2) throw SchemaError("schema needs at least two class labels");
  std::set<std::string_view> names;
  for (const auto& decl : attributes_) {
    if (!valid_name(decl.name)) throw SchemaError("invalid attribute name '" + decl.name + "'");
    if (!names.insert(decl.name).second) {
      throw SchemaError("duplicate attribute name '" + decl.name + "'");
    }
    if (decl.is_nominal() && decl.arity < 2) {
      throw SchemaError("nominal attribute '" + decl.name + "' needs arity >= 2");
    }
    if (!decl.is_nominal()) ++numeric_count_;
  }
  std::set<std::string_view> labels;
  for (const auto& label : class_labels_) {
    if (!valid_name(label)) throw SchemaError("invalid class label '" + label + "'");
    if (!labels.insert(label).second) throw SchemaError("duplicate class label '" + label + "'");
  }
}

Schema Schema::parse(std::string_view header) {
  header = detail::trim(header);
  auto tokens = detail::split(header, ',');
  if (tokens.size() < 2) {
    fail(Reason::kMalformedToken, header, "header needs attributes followed by class{...}");
  }

  std::vector<AttributeDecl> attributes;
  std::set<std::string, std::less<>> names;
  for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
    std::string_view token = detail::trim(tokens[i]);
    auto colon = token.find(':');
    if (colon == std::string_view::npos) fail(Reason::kMalformedToken, token, "missing ':'");
    std::string_view name = token.substr(0, colon);
    std::string_view type = token.substr(colon + 1);
    if (!valid_name(name)) fail(Reason::kMalformedToken, token, "invalid attribute name");
    if (names.count(name) != 0) fail(Reason::kDuplicateName, token, "duplicate attribute name");
    names.emplace(name);

    if (type == "numeric") {
      attributes.push_back(AttributeDecl::numeric(std::string(name)));
    } else if (type.starts_with("nominal(") && type.ends_with(")")) {
      auto arity = detail::parse_uint(type.substr(8, type.size() - 9));
      if (!arity) fail(Reason::kMalformedToken, token, "invalid nominal arity");
      if (*arity < 2) fail(Reason::kArityTooSmall, token, "nominal arity must be >= 2");
      attributes.push_back(AttributeDecl::nominal(std::string(name), *arity));
    } else {
      fail(Reason::kMalformedToken, token, "unknown attribute type");
    }
  }

  std::string_view class_token = detail::trim(tokens.back());
  if (!class_token.starts_with("class{") || !class_token.ends_with("}")) {
    fail(Reason::kMalformedToken, class_token, "last token must be class{l1|l2|...}");
  }
  std::vector<std::string> labels;
  std::set<std::string_view> seen;
  for (std::string_view label : detail::split(class_token.substr(6, class_token.size() - 7), '|')) {
    label = detail::trim(label);
    if (!valid_name(label)) fail(Reason::kMalformedToken, class_token, "invalid class label");
    if (!seen.insert(label).second) fail(Reason::kDuplicateName, class_token, "duplicate class label");
    labels.emplace_back(label);
  }
  if (labels.size() < 2) fail(Reason::kTooFewClasses, class_token, "need at least two class labels");

  return Schema(std::move(attributes), std::move(labels));
}

std::string Schema::to_header() const {
  std::string out;
  for (const auto& decl : attributes_) {
    out += decl.name;
    if (decl.is_nominal()) {
      out += ":nominal(" + std::to_string(decl.arity) + "),";
    } else {
      out += ":numeric,";
    }
  }
  out += "class{";
  for (std::size_t k = 0; k < class_labels_.size(); ++k) {
    if (k != 0) out += '|';
    out += class_labels_[k];
  }
  out += '}';
  return out;
}

std::optional<std::size_t> Schema::class_index(std::string_view label) const {
  for (std::size_t k = 0; k < class_labels_.size(); ++k) {
    if (class_labels_[k] == label) return k;
  }
  return std::nullopt;
}

std::optional<std::size_t> Schema::nominal_value_index(std::size_t attribute,
                                                       std::string_view token) const {
  const auto& decl = attributes_.at(attribute);
  if (!decl.is_nominal()) return std::nullopt;
  std::string_view digits = token;
  if (token.starts_with(decl.name)) digits = token.substr(decl.name.size());
  auto index = detail::parse_uint(digits);
  if (!index || *index >= decl.arity) return std::nullopt;
  return static_cast<std::size_t>(*index);
}

std::string Schema::nominal_value_label(std::size_t attribute, std::size_t value) const {
  return attributes_.at(attribute).name + std::to_string(value);
}

void Schema::validate(const Instance& instance) const {
  if (instance.values.size() != attributes_.size()) {
    throw SchemaError("instance has " + std::to_string(instance.values.size()) +
                      " values, schema declares " + std::to_string(attributes_.size()));
  }
  if (instance.label >= class_labels_.size()) {
    throw SchemaError("class index " + std::to_string(instance.label) + " out of range");
  }
  for (std::size_t i = 0; i < attributes_.size(); ++i) {
    double v = instance.values[i];
    if (!std::isfinite(v)) throw SchemaError("attribute '" + attributes_[i].name + "' is not finite");
    if (attributes_[i].is_nominal()) {
      if (v < 0 || v != std::floor(v) || v >= static_cast<double>(attributes_[i].arity)) {
        throw SchemaError("attribute '" + attributes_[i].name + "' has out-of-range nominal value");
      }
    }
  }
}

bool Schema::conforms(const Instance& instance) const noexcept {
  try {
    validate(instance);
    return true;
  } catch (const SchemaError&) {
    return false;
  }
}

}  // namespace vfdt

#include "vfdt/csv.hpp"

#include <cmath>

#include "text_util.hpp"

namespace vfdt {

VectorStream::VectorStream(Schema schema, std::vector<Instance> instances)
    : schema_(std::move(schema)), instances_(std::move(instances)) {
  for (const auto& instance : instances_) schema_.validate(instance);
}

std::optional<Instance> VectorStream::next() {
  if (position_ >= instances_.size()) return std::nullopt;
  return instances_[position_++];
}

std::vector<Instance> collect(InstanceStream& stream, std::size_t limit) {
  std::vector<Instance> out;
  while (out.size() < limit) {
    auto instance = stream.next();
    if (!instance) break;
    out.push_back(std::move(*instance));
  }
  return out;
}

Instance parse_csv_row(const Schema& schema, std::string_view row, std::size_t line) {
  auto fields = detail::split(detail::trim(row), ',');
  const std::size_t expected = schema.attribute_count() + 1;
  if (fields.size() != expected) {
    throw ParseError("expected " + std::to_string(expected) + " fields, found " +
                         std::to_string(fields.size()),
                     line);
  }

  Instance instance;
  instance.values.resize(schema.attribute_count());
  for (std::size_t i = 0; i < schema.attribute_count(); ++i) {
    std::string_view field = detail::trim(fields[i]);
    const auto& decl = schema.attribute(i);
    if (field.empty()) throw ParseError("missing value for '" + decl.name + "'", line);
    if (decl.is_nominal()) {
      auto index = schema.nominal_value_index(i, field);
      if (!index) {
        throw ParseError("unknown nominal value '" + std::string(field) + "' for '" + decl.name + "'",
                         line);
      }
      instance.values[i] = static_cast<double>(*index);
    } else {
      auto value = detail::parse_double(field);
      if (!value) {
        throw ParseError("invalid numeric value '" + std::string(field) + "' for '" + decl.name + "'",
                         line);
      }
      if (!std::isfinite(*value)) {
        throw ParseError("non-finite value for '" + decl.name + "'", line);
      }
      instance.values[i] = *value;
    }
  }

  std::string_view label = detail::trim(fields.back());
  auto cls = schema.class_index(label);
  if (!cls) throw ParseError("unknown class label '" + std::string(label) + "'", line);
  instance.label = *cls;
  return instance;
}

std::string format_csv_row(const Schema& schema, const Instance& instance) {
  std::string out;
  for (std::size_t i = 0; i < schema.attribute_count(); ++i) {
    if (schema.attribute(i).is_nominal()) {
      out += schema.nominal_value_label(i, instance.nominal(i));
    } else {
      out += detail::format_double(instance.values[i]);
    }
    out += ',';
  }
  out += schema.class_labels()[instance.label];
  return out;
}

CsvReader::CsvReader(const std::filesystem::path& path) : in_(path) {
  if (!in_) throw IoError("cannot open '" + path.string() + "'");
  if (!std::getline(in_, buffer_)) throw ParseError("missing schema header", 1);
  line_ = 1;
  schema_.emplace(Schema::parse(buffer_));
}

CsvReader::CsvReader(const std::filesystem::path& path, const Schema& expected)
    : CsvReader(path) {
  if (!(*schema_ == expected)) {
    throw SchemaError("'" + path.string() + "' declares schema '" + schema_->to_header() +
                      "', expected '" + expected.to_header() + "'");
  }
}

std::optional<Instance> CsvReader::next() {
  if (!std::getline(in_, buffer_)) {
    if (in_.bad()) throw IoError("read failure at line " + std::to_string(line_ + 1));
    return std::nullopt;
  }
  ++line_;
  return parse_csv_row(*schema_, buffer_, line_);
}

std::vector<Instance> read_csv(const std::filesystem::path& path, const Schema& schema) {
  CsvReader reader(path, schema);
  return collect(reader);
}

void write_csv(const std::filesystem::path& path, const Schema& schema,
               std::span<const Instance> instances) {
  for (const auto& instance : instances) schema.validate(instance);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << schema.to_header() << '\n';
  for (const auto& instance : instances) out << format_csv_row(schema, instance) << '\n';
  out.flush();
  if (!out) throw IoError("write failure on '" + path.string() + "'");
}

}  // namespace vfdt

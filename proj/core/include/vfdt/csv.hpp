#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vfdt/schema.hpp"
#include "vfdt/stream.hpp"

namespace vfdt {

/// Streams a CSV dataset. Line 1 is the schema header; every following line
/// holds one value per attribute and the class label last. Errors carry the
/// 1-based line number.
class CsvReader final : public InstanceStream {
 public:
  /// Takes the schema from the file header.
  explicit CsvReader(const std::filesystem::path& path);
  /// Rejects a file whose header declares a different schema.
  CsvReader(const std::filesystem::path& path, const Schema& expected);

  const Schema& schema() const override { return *schema_; }
  std::optional<Instance> next() override;

  std::size_t line_number() const noexcept { return line_; }

 private:
  std::ifstream in_;
  std::optional<Schema> schema_;
  std::size_t line_ = 0;
  std::string buffer_;
};

/// Parses one data row. `line` is only used for error messages.
Instance parse_csv_row(const Schema& schema, std::string_view row, std::size_t line = 0);
std::string format_csv_row(const Schema& schema, const Instance& instance);

std::vector<Instance> read_csv(const std::filesystem::path& path, const Schema& schema);

/// Every instance is validated before the file is opened, so a bad instance
/// leaves nothing on disk.
void write_csv(const std::filesystem::path& path, const Schema& schema,
               std::span<const Instance> instances);

}  // namespace vfdt

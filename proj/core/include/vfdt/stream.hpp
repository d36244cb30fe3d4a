#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "vfdt/schema.hpp"

namespace vfdt {

/// Pull-based source of labeled instances. `next()` returns nullopt once the
/// stream is exhausted; synthetic generators never run dry.
class InstanceStream {
 public:
  virtual ~InstanceStream() = default;

  virtual const Schema& schema() const = 0;
  virtual std::optional<Instance> next() = 0;
};

/// Replays an in-memory sequence. Instances are validated on construction.
class VectorStream final : public InstanceStream {
 public:
  VectorStream(Schema schema, std::vector<Instance> instances);

  const Schema& schema() const override { return schema_; }
  std::optional<Instance> next() override;

  void rewind() noexcept { position_ = 0; }
  std::size_t size() const noexcept { return instances_.size(); }

 private:
  Schema schema_;
  std::vector<Instance> instances_;
  std::size_t position_ = 0;
};

/// Caps an endless source at `limit` instances.
class TakeStream final : public InstanceStream {
 public:
  TakeStream(InstanceStream& source, std::size_t limit) : source_(source), remaining_(limit) {}

  const Schema& schema() const override { return source_.schema(); }
  std::optional<Instance> next() override {
    if (remaining_ == 0) return std::nullopt;
    --remaining_;
    return source_.next();
  }

 private:
  InstanceStream& source_;
  std::size_t remaining_;
};

/// Drains up to `limit` instances into a vector.
std::vector<Instance> collect(InstanceStream& stream,
                              std::size_t limit = static_cast<std::size_t>(-1));

}  // namespace vfdt

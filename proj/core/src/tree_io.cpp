#include <algorithm>
#include <optional>

#include "text_util.hpp"
#include "vfdt/hoeffding_tree.hpp"

namespace vfdt {

namespace {

constexpr std::string_view kMagic = "vfdt-tree v1";

std::string kind_name(SplitKind kind) { return kind == SplitKind::kNominal ? "nominal" : "numeric"; }

std::string join_counts(const std::vector<std::uint64_t>& counts) {
  std::string out;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (i != 0) out += ' ';
    out += std::to_string(counts[i]);
  }
  return out;
}

std::string index_list(const std::vector<bool>& mask) {
  std::string out;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (!mask[i]) continue;
    if (!out.empty()) out += ',';
    out += std::to_string(i);
  }
  return out.empty() ? "-" : out;
}

void write_node(const HoeffdingTree& tree, NodeId id, std::string& out) {
  const Node& node = tree.node(id);
  out += "node " + std::to_string(id) + " parent ";
  out += node.parent == kNoNode ? "-" : std::to_string(node.parent);
  out += " depth " + std::to_string(node.depth);

  if (!node.is_leaf()) {
    const InternalNode& in = node.internal();
    out += " internal attr " + std::to_string(in.attribute) + " kind " + kind_name(in.kind);
    out += " threshold " + detail::format_double(in.threshold);
    out += " children";
    for (NodeId c : in.children) out += ' ' + std::to_string(c);
    out += " dist " + join_counts(in.distribution) + '\n';
    for (NodeId c : in.children) write_node(tree, c, out);
    return;
  }

  const LeafNode& leaf = node.leaf();
  out += " leaf nmin " + std::to_string(leaf.nmin_threshold);
  out += " n " + std::to_string(leaf.stats.total());
  out += " disabled " + index_list(leaf.disabled);
  out += " removed " + index_list(leaf.removed);
  out += " classes " + join_counts(leaf.stats.class_counts()) + '\n';
  for (std::size_t a = 0; a < leaf.stats.attribute_count(); ++a) {
    if (leaf.stats.is_nominal(a)) {
      out += "  nom " + std::to_string(a) + ' ' + join_counts(leaf.stats.nominal(a).table()) + '\n';
    } else {
      const GaussianObserver& g = leaf.stats.numeric(a);
      out += "  num " + std::to_string(a) + ' ' + detail::format_double(g.min()) + ' ' +
             detail::format_double(g.max());
      for (std::size_t k = 0; k < g.class_count(); ++k) {
        const auto& s = g.summary(k);
        out += ' ' + std::to_string(s.count) + ' ' + detail::format_double(s.mean) + ' ' +
               detail::format_double(s.m2);
      }
      out += '\n';
    }
  }
}

/// Whitespace tokenizer over one line, with typed accessors that raise
/// ParseError carrying the line number.
class Tokens {
 public:
  Tokens(std::string_view line, std::size_t line_no) : line_no_(line_no) {
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && line[i] == ' ') ++i;
      std::size_t start = i;
      while (i < line.size() && line[i] != ' ') ++i;
      if (i > start) tokens_.push_back(line.substr(start, i - start));
    }
  }

  bool done() const { return pos_ >= tokens_.size(); }
  std::string_view word() {
    if (done()) throw ParseError("unexpected end of line", line_no_);
    return tokens_[pos_++];
  }
  void expect(std::string_view w) {
    auto got = word();
    if (got != w) {
      throw ParseError("expected '" + std::string(w) + "', found '" + std::string(got) + "'", line_no_);
    }
  }
  std::uint64_t u64() {
    auto w = word();
    auto v = detail::parse_uint(w);
    if (!v) throw ParseError("expected an integer, found '" + std::string(w) + "'", line_no_);
    return *v;
  }
  double real() {
    auto w = word();
    auto v = detail::parse_double(w);
    if (!v) throw ParseError("expected a number, found '" + std::string(w) + "'", line_no_);
    return *v;
  }
  std::vector<bool> mask(std::size_t size) {
    std::vector<bool> out(size, false);
    auto w = word();
    if (w == "-") return out;
    for (auto field : detail::split(w, ',')) {
      auto v = detail::parse_uint(field);
      if (!v || *v >= size) throw ParseError("bad attribute list '" + std::string(w) + "'", line_no_);
      out[*v] = true;
    }
    return out;
  }
  void finish() {
    if (!done()) throw ParseError("trailing tokens", line_no_);
  }

 private:
  std::vector<std::string_view> tokens_;
  std::size_t pos_ = 0;
  std::size_t line_no_;
};

class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  std::string_view next() {
    if (pos_ >= text_.size()) throw ParseError("truncated tree file", line_ + 1);
    auto end = text_.find('\n', pos_);
    if (end == std::string_view::npos) end = text_.size();
    auto line = text_.substr(pos_, end - pos_);
    pos_ = end + 1;
    ++line_;
    return line;
  }
  std::size_t line() const { return line_; }
  bool at_end() const { return pos_ >= text_.size(); }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 0;
};

}  // namespace

std::string serialize(const HoeffdingTree& tree) {
  const HoeffdingParams& p = tree.params();
  std::string out;
  out += kMagic;
  out += '\n';
  out += "schema " + tree.schema().to_header() + '\n';
  out += "params delta " + detail::format_double(p.delta) + " tau " + detail::format_double(p.tau) +
         " nmin_initial " + std::to_string(p.nmin_initial) + " adaptation " +
         (p.adaptation ? "1" : "0") + " thresholds_k " + std::to_string(p.thresholds_k) +
         " growth " + (p.growth ? "1" : "0") + '\n';
  out += "prior " + join_counts(tree.class_prior()) + '\n';
  out += "splits " + std::to_string(tree.splits_performed()) + '\n';
  out += "nodes " + std::to_string(tree.nodes().size()) + '\n';
  write_node(tree, 0, out);
  out += "end\n";
  return out;
}

HoeffdingTree deserialize(std::string_view text) {
  LineReader lines(text);
  if (lines.next() != kMagic) throw ParseError("not a tree file", 1);

  auto schema_line = lines.next();
  if (!schema_line.starts_with("schema ")) throw ParseError("expected schema line", lines.line());
  Schema schema = Schema::parse(schema_line.substr(7));
  const std::size_t classes = schema.class_count();
  const std::size_t attrs = schema.attribute_count();

  HoeffdingParams params;
  {
    Tokens t(lines.next(), lines.line());
    t.expect("params");
    t.expect("delta");
    params.delta = t.real();
    t.expect("tau");
    params.tau = t.real();
    t.expect("nmin_initial");
    params.nmin_initial = t.u64();
    t.expect("adaptation");
    params.adaptation = t.u64() != 0;
    t.expect("thresholds_k");
    params.thresholds_k = t.u64();
    t.expect("growth");
    params.growth = t.u64() != 0;
    t.finish();
  }
  try {
    params.validate();
  } catch (const Error& e) {
    throw ParseError(e.what(), lines.line());
  }

  HoeffdingTree tree(schema, params);
  {
    Tokens t(lines.next(), lines.line());
    t.expect("prior");
    for (std::size_t k = 0; k < classes; ++k) tree.prior_[k] = t.u64();
    t.finish();
  }
  {
    Tokens t(lines.next(), lines.line());
    t.expect("splits");
    tree.splits_ = t.u64();
    t.finish();
  }
  std::size_t count = 0;
  {
    Tokens t(lines.next(), lines.line());
    t.expect("nodes");
    count = t.u64();
    t.finish();
    if (count == 0 || count > text.size()) throw ParseError("bad node count", lines.line());
  }

  std::vector<std::optional<Node>> slots(count);
  for (std::size_t seen = 0; seen < count; ++seen) {
    const std::size_t node_line = lines.line() + 1;
    Tokens t(lines.next(), node_line);
    t.expect("node");
    std::uint64_t id = t.u64();
    if (id >= count || slots[id]) throw ParseError("bad or duplicate node id", node_line);
    Node node{kNoNode, 0, InternalNode{}};
    t.expect("parent");
    auto parent = t.word();
    if (parent != "-") {
      auto p = detail::parse_uint(parent);
      if (!p || *p >= count) throw ParseError("bad parent id", node_line);
      node.parent = *p;
    }
    t.expect("depth");
    node.depth = t.u64();

    auto type = t.word();
    if (type == "internal") {
      InternalNode in;
      t.expect("attr");
      in.attribute = t.u64();
      if (in.attribute >= attrs) throw ParseError("split attribute out of range", node_line);
      t.expect("kind");
      auto kind = t.word();
      if (kind == "nominal") in.kind = SplitKind::kNominal;
      else if (kind == "numeric") in.kind = SplitKind::kNumeric;
      else throw ParseError("bad split kind", node_line);
      if ((in.kind == SplitKind::kNominal) != schema.attribute(in.attribute).is_nominal()) {
        throw ParseError("split kind does not match attribute type", node_line);
      }
      t.expect("threshold");
      in.threshold = t.real();
      t.expect("children");
      std::size_t fanout = in.kind == SplitKind::kNominal ? schema.attribute(in.attribute).arity : 2;
      for (std::size_t j = 0; j < fanout; ++j) {
        auto c = t.u64();
        if (c >= count) throw ParseError("child id out of range", node_line);
        in.children.push_back(c);
      }
      t.expect("dist");
      for (std::size_t k = 0; k < classes; ++k) in.distribution.push_back(t.u64());
      t.finish();
      node.body = std::move(in);
    } else if (type == "leaf") {
      LeafNode leaf{LeafStats(schema), 0, {}, {}};
      t.expect("nmin");
      leaf.nmin_threshold = t.u64();
      t.expect("n");
      leaf.stats.set_total(t.u64());
      t.expect("disabled");
      leaf.disabled = t.mask(attrs);
      t.expect("removed");
      leaf.removed = t.mask(attrs);
      t.expect("classes");
      for (std::size_t k = 0; k < classes; ++k) leaf.stats.mutable_class_counts()[k] = t.u64();
      t.finish();

      for (std::size_t a = 0; a < attrs; ++a) {
        Tokens s(lines.next(), lines.line());
        if (schema.attribute(a).is_nominal()) {
          s.expect("nom");
          if (s.u64() != a) throw ParseError("attribute statistics out of order", lines.line());
          for (auto& cell : leaf.stats.mutable_nominal(a).mutable_table()) cell = s.u64();
        } else {
          s.expect("num");
          if (s.u64() != a) throw ParseError("attribute statistics out of order", lines.line());
          GaussianObserver& g = leaf.stats.mutable_numeric(a);
          double lo = s.real();
          double hi = s.real();
          g.set_range(lo, hi);
          for (std::size_t k = 0; k < classes; ++k) {
            auto& summary = g.mutable_summary(k);
            summary.count = s.u64();
            summary.mean = s.real();
            summary.m2 = s.real();
          }
        }
        s.finish();
      }
      node.body = std::move(leaf);
    } else {
      throw ParseError("bad node type '" + std::string(type) + "'", node_line);
    }
    slots[id] = std::move(node);
  }
  if (lines.next() != "end") throw ParseError("missing end marker", lines.line());
  while (!lines.at_end()) {
    if (!detail::trim(lines.next()).empty()) throw ParseError("content after end marker", lines.line());
  }

  std::vector<Node> nodes;
  nodes.reserve(count);
  for (auto& slot : slots) nodes.push_back(std::move(*slot));
  if (nodes[0].parent != kNoNode) throw ParseError("root has a parent");
  for (NodeId id = 0; id < count; ++id) {
    if (id != 0 && nodes[id].parent == kNoNode) throw ParseError("orphan node");
    if (nodes[id].is_leaf()) continue;
    for (NodeId c : nodes[id].internal().children) {
      if (c == 0 || nodes[c].parent != id || nodes[c].depth != nodes[id].depth + 1) {
        throw ParseError("inconsistent tree structure");
      }
    }
  }
  for (NodeId id = 1; id < count; ++id) {
    const Node& parent = nodes[nodes[id].parent];
    if (parent.is_leaf()) throw ParseError("node attached to a leaf");
    const auto& kids = parent.internal().children;
    if (std::find(kids.begin(), kids.end(), id) == kids.end()) {
      throw ParseError("inconsistent tree structure");
    }
  }
  tree.nodes_ = std::move(nodes);
  return tree;
}

HoeffdingTree deserialize(std::string_view text, const Schema& expected) {
  HoeffdingTree tree = deserialize(text);
  if (!(tree.schema() == expected)) {
    throw SchemaError("model schema '" + tree.schema().to_header() + "' does not match '" +
                      expected.to_header() + "'");
  }
  return tree;
}

}  // namespace vfdt

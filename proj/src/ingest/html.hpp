#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace tscdn::html {

struct Attribute {
  std::string name;         // lowercase ASCII
  std::string value;        // entity-decoded
  std::size_t value_offset = 0;  // byte span of the raw value in the source
  std::size_t value_length = 0;
  bool has_value = false;

  std::string_view raw(std::string_view source) const {
    return source.substr(value_offset, value_length);
  }
};

using NodeId = std::size_t;
inline constexpr NodeId kNoNode = static_cast<NodeId>(-1);

struct Node {
  enum class Kind { root, element, text };

  Kind kind = Kind::root;
  std::string tag;  // lowercase; empty for text and root
  std::vector<Attribute> attributes;
  std::string text;  // decoded character data for text nodes
  NodeId parent = kNoNode;
  std::vector<NodeId> children;
};

// Tolerant HTML tree. Never throws on malformed markup: unknown constructs
// degrade to text, unmatched end tags are dropped, unclosed elements are
// closed at end of input.
class Document {
 public:
  static Document parse(std::string_view source);

  NodeId root() const { return 0; }
  const Node& node(NodeId id) const { return nodes_[id]; }
  std::size_t size() const { return nodes_.size(); }

  const Attribute* attribute(NodeId id, std::string_view name) const;
  bool has_class(NodeId id, std::string_view cls) const;

  // Pre-order walk of the subtree below `id` (excluding `id`). Returning
  // false from the visitor skips that node's children.
  void walk(NodeId id, const std::function<bool(NodeId)>& visit) const;

  NodeId find_descendant(NodeId id, const std::function<bool(NodeId)>& pred) const;

  // Concatenated text with <br> as newline; script/style contents excluded.
  std::string text_content(NodeId id) const;

 private:
  std::vector<Node> nodes_;
};

std::string decode_entities(std::string_view text);

bool is_void_element(std::string_view tag);

}  // namespace tscdn::html

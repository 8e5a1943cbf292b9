#include "ingest/html.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <string>
#include <unordered_map>

#include "common/unicode.hpp"

namespace tscdn::html {

namespace {

char lower(char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); }

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f'; }

bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

bool iequals_at(std::string_view s, std::size_t pos, std::string_view word) {
  if (pos + word.size() > s.size()) return false;
  for (std::size_t i = 0; i < word.size(); ++i)
    if (lower(s[pos + i]) != word[i]) return false;
  return true;
}

const std::unordered_map<std::string_view, char32_t>& named_entities() {
  static const std::unordered_map<std::string_view, char32_t> table = {
      {"amp", U'&'},          {"lt", U'<'},           {"gt", U'>'},
      {"quot", U'"'},         {"apos", U'\''},        {"nbsp", U'\u00A0'},
      {"laquo", U'\u00AB'},   {"raquo", U'\u00BB'},   {"hellip", U'\u2026'},
      {"ndash", U'\u2013'},   {"mdash", U'\u2014'},   {"zwnj", U'\u200C'},
      {"zwj", U'\u200D'},     {"lrm", U'\u200E'},     {"rlm", U'\u200F'},
      {"copy", U'\u00A9'},
  };
  return table;
}

class TreeBuilder {
 public:
  explicit TreeBuilder(std::vector<Node>& nodes) : nodes_(nodes) {
    nodes_.push_back(Node{});
    stack_.push_back(0);
  }

  void text(std::string decoded) {
    if (decoded.empty()) return;
    NodeId parent = stack_.back();
    auto& siblings = nodes_[parent].children;
    if (!siblings.empty() && nodes_[siblings.back()].kind == Node::Kind::text) {
      nodes_[siblings.back()].text += decoded;
      return;
    }
    Node n;
    n.kind = Node::Kind::text;
    n.text = std::move(decoded);
    append(std::move(n));
  }

  void start(std::string tag, std::vector<Attribute> attrs, bool self_closing) {
    Node n;
    n.kind = Node::Kind::element;
    n.tag = std::move(tag);
    n.attributes = std::move(attrs);
    bool leaf = self_closing || is_void_element(n.tag);
    NodeId id = append(std::move(n));
    if (!leaf) stack_.push_back(id);
  }

  void end(std::string_view tag) {
    for (std::size_t i = stack_.size(); i-- > 1;) {
      if (nodes_[stack_[i]].tag == tag) {
        stack_.resize(i);
        return;
      }
    }
  }

 private:
  NodeId append(Node n) {
    NodeId id = nodes_.size();
    n.parent = stack_.back();
    nodes_.push_back(std::move(n));
    nodes_[nodes_[id].parent].children.push_back(id);
    return id;
  }

  std::vector<Node>& nodes_;
  std::vector<NodeId> stack_;
};

struct Tokenizer {
  Tokenizer(std::string_view source, TreeBuilder& builder) : src(source), tree(builder) {}

  std::string_view src;
  std::size_t pos = 0;
  TreeBuilder& tree;

  void run() {
    while (pos < src.size()) {
      if (src[pos] != '<') {
        ++pos;
        continue;
      }
      text_end_ = pos;
      if (!markup()) {
        ++pos;
        continue;
      }
      text_start_ = pos;
      if (!pending_raw_.empty()) {
        raw_text();
        text_start_ = pos;
      }
    }
    flush_text(text_start_, src.size());
  }

  // Text seen since the last tag; emitted just before the next tree event
  // so that it lands inside the element that is still open.
  std::size_t text_start_ = 0;
  std::size_t text_end_ = 0;
  // raw-text element whose closing tag ends the current run
  std::string pending_raw_;

  void flush_pending() {
    flush_text(text_start_, text_end_);
    text_start_ = text_end_;
  }

  void flush_text(std::size_t from, std::size_t to) {
    if (to > from) tree.text(decode_entities(src.substr(from, to - from)));
  }

  // Consumes a markup construct at `pos` ('<'). Returns false when the '<'
  // should be treated as literal text.
  bool markup() {
    std::size_t p = pos + 1;
    if (p >= src.size()) return false;
    if (src.compare(p, 3, "!--") == 0) {
      auto close = src.find("-->", p + 3);
      pos = close == std::string_view::npos ? src.size() : close + 3;
      return true;
    }
    if (src[p] == '!' || src[p] == '?') {
      auto close = src.find('>', p);
      pos = close == std::string_view::npos ? src.size() : close + 1;
      return true;
    }
    if (src[p] == '/') {
      ++p;
      if (p >= src.size() || !is_alpha(src[p])) return false;
      std::string name = read_name(p);
      auto close = src.find('>', p);
      pos = close == std::string_view::npos ? src.size() : close + 1;
      flush_pending();
      tree.end(name);
      return true;
    }
    if (!is_alpha(src[p])) return false;
    std::string name = read_name(p);
    std::vector<Attribute> attrs;
    bool self_closing = false;
    while (p < src.size()) {
      while (p < src.size() && is_space(src[p])) ++p;
      if (p >= src.size()) break;
      if (src[p] == '>') {
        ++p;
        break;
      }
      if (src[p] == '/') {
        ++p;
        if (p < src.size() && src[p] == '>') {
          self_closing = true;
          ++p;
          break;
        }
        continue;
      }
      attrs.push_back(read_attribute(p));
    }
    pos = p;
    if (name == "script" || name == "style" || name == "textarea" || name == "title") {
      if (!self_closing) pending_raw_ = name;
    }
    flush_pending();
    tree.start(std::move(name), std::move(attrs), self_closing);
    return true;
  }

  void raw_text() {
    std::string close = "</" + pending_raw_;
    std::size_t p = pos;
    std::size_t found = std::string_view::npos;
    while (p < src.size()) {
      auto lt = src.find('<', p);
      if (lt == std::string_view::npos) break;
      if (iequals_at(src, lt, close)) {
        found = lt;
        break;
      }
      p = lt + 1;
    }
    std::size_t end = found == std::string_view::npos ? src.size() : found;
    if (pending_raw_ == "title" || pending_raw_ == "textarea")
      tree.text(decode_entities(src.substr(pos, end - pos)));
    else
      tree.text(std::string{});  // script/style bodies are not document text
    pos = end;
    if (found != std::string_view::npos) {
      auto gt = src.find('>', found);
      pos = gt == std::string_view::npos ? src.size() : gt + 1;
      tree.end(pending_raw_);
    }
    pending_raw_.clear();
  }

  std::string read_name(std::size_t& p) {
    std::string name;
    while (p < src.size() && !is_space(src[p]) && src[p] != '>' && src[p] != '/') {
      name.push_back(lower(src[p]));
      ++p;
    }
    return name;
  }

  Attribute read_attribute(std::size_t& p) {
    Attribute a;
    while (p < src.size() && !is_space(src[p]) && src[p] != '>' && src[p] != '=' &&
           !(src[p] == '/' && p + 1 < src.size() && src[p + 1] == '>')) {
      a.name.push_back(lower(src[p]));
      ++p;
    }
    if (a.name.empty()) {
      // stray '=' or similar; consume one byte to guarantee progress
      ++p;
      return a;
    }
    std::size_t q = p;
    while (q < src.size() && is_space(src[q])) ++q;
    if (q >= src.size() || src[q] != '=') return a;
    p = q + 1;
    while (p < src.size() && is_space(src[p])) ++p;
    a.has_value = true;
    if (p < src.size() && (src[p] == '"' || src[p] == '\'')) {
      char quote = src[p++];
      auto close = src.find(quote, p);
      std::size_t end = close == std::string_view::npos ? src.size() : close;
      a.value_offset = p;
      a.value_length = end - p;
      p = close == std::string_view::npos ? src.size() : close + 1;
    } else {
      std::size_t start = p;
      while (p < src.size() && !is_space(src[p]) && src[p] != '>') ++p;
      a.value_offset = start;
      a.value_length = p - start;
    }
    a.value = decode_entities(src.substr(a.value_offset, a.value_length));
    return a;
  }
};

}  // namespace

bool is_void_element(std::string_view tag) {
  static constexpr std::string_view kVoid[] = {"area", "base", "br",   "col",   "embed",
                                               "hr",   "img",  "input", "link", "meta",
                                               "param", "source", "track", "wbr"};
  return std::find(std::begin(kVoid), std::end(kVoid), tag) != std::end(kVoid);
}

std::string decode_entities(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '&') {
      out.push_back(text[i++]);
      continue;
    }
    auto semi = text.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 32) {
      out.push_back(text[i++]);
      continue;
    }
    std::string_view body = text.substr(i + 1, semi - i - 1);
    char32_t cp = 0;
    bool ok = false;
    if (!body.empty() && body[0] == '#') {
      bool hex = body.size() > 1 && (body[1] == 'x' || body[1] == 'X');
      std::string_view digits = body.substr(hex ? 2 : 1);
      if (!digits.empty() && digits.size() <= 8) {
        ok = true;
        std::uint32_t v = 0;
        for (char c : digits) {
          int d;
          if (c >= '0' && c <= '9') d = c - '0';
          else if (hex && c >= 'a' && c <= 'f') d = c - 'a' + 10;
          else if (hex && c >= 'A' && c <= 'F') d = c - 'A' + 10;
          else {
            ok = false;
            break;
          }
          v = v * (hex ? 16 : 10) + static_cast<std::uint32_t>(d);
        }
        if (ok && (v == 0 || v > 0x10FFFF || (v >= 0xD800 && v <= 0xDFFF))) v = 0xFFFD;
        cp = v;
      }
    } else {
      auto it = named_entities().find(body);
      if (it != named_entities().end()) {
        cp = it->second;
        ok = true;
      }
    }
    if (!ok) {
      out.push_back(text[i++]);
      continue;
    }
    unicode::append_utf8(out, cp);
    i = semi + 1;
  }
  return out;
}

Document Document::parse(std::string_view source) {
  Document doc;
  TreeBuilder builder(doc.nodes_);
  Tokenizer tok(source, builder);
  tok.run();
  return doc;
}

const Attribute* Document::attribute(NodeId id, std::string_view name) const {
  for (const auto& a : nodes_[id].attributes)
    if (a.name == name) return &a;
  return nullptr;
}

bool Document::has_class(NodeId id, std::string_view cls) const {
  const Attribute* a = attribute(id, "class");
  if (!a) return false;
  std::string_view v = a->value;
  std::size_t i = 0;
  while (i < v.size()) {
    while (i < v.size() && is_space(v[i])) ++i;
    std::size_t start = i;
    while (i < v.size() && !is_space(v[i])) ++i;
    if (v.substr(start, i - start) == cls) return true;
  }
  return false;
}

void Document::walk(NodeId id, const std::function<bool(NodeId)>& visit) const {
  std::vector<NodeId> stack(nodes_[id].children.rbegin(), nodes_[id].children.rend());
  while (!stack.empty()) {
    NodeId n = stack.back();
    stack.pop_back();
    if (!visit(n)) continue;
    const auto& kids = nodes_[n].children;
    stack.insert(stack.end(), kids.rbegin(), kids.rend());
  }
}

NodeId Document::find_descendant(NodeId id, const std::function<bool(NodeId)>& pred) const {
  NodeId found = kNoNode;
  walk(id, [&](NodeId n) {
    if (found != kNoNode) return false;
    if (pred(n)) {
      found = n;
      return false;
    }
    return true;
  });
  return found;
}

std::string Document::text_content(NodeId id) const {
  std::string out;
  walk(id, [&](NodeId n) {
    const Node& node = nodes_[n];
    if (node.kind == Node::Kind::text) {
      out += node.text;
      return false;
    }
    if (node.tag == "br") out.push_back('\n');
    return node.tag != "script" && node.tag != "style";
  });
  return out;
}

}  // namespace tscdn::html

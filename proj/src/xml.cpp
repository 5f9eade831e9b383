#include "disco/xml.hpp"

#include <algorithm>
#include <cctype>

namespace disco::xml {

namespace {

bool is_ws(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

bool is_name_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == ':';
}

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == ':' ||
         c == '-' || c == '.';
}

std::string_view trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && is_ws(s[b])) ++b;
  while (e > b && is_ws(s[e - 1])) --e;
  return s.substr(b, e - b);
}

class Parser {
 public:
  explicit Parser(std::string_view in) : in_(in) {}

  Element run() {
    skip_bom();
    skip_misc();
    if (eof()) fail("empty document");
    Element root = parse_element();
    skip_misc();
    if (!eof()) fail("trailing content after root element");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  bool eof() const { return pos_ >= in_.size(); }
  char peek() const { return in_[pos_]; }
  char take() {
    if (eof()) fail("unexpected end of document");
    return in_[pos_++];
  }
  bool looking_at(std::string_view s) const { return in_.substr(pos_, s.size()) == s; }

  void expect(std::string_view s) {
    if (!looking_at(s)) fail("expected '" + std::string(s) + "'");
    pos_ += s.size();
  }

  void skip_ws() {
    while (!eof() && is_ws(peek())) ++pos_;
  }

  void skip_bom() {
    if (in_.substr(0, 3) == "\xEF\xBB\xBF") pos_ = 3;
  }

  // Whitespace, comments and the optional <?xml?> prolog around the root.
  void skip_misc() {
    for (;;) {
      skip_ws();
      if (looking_at("<!--")) {
        skip_comment();
      } else if (looking_at("<?")) {
        skip_pi();
      } else if (looking_at("<!DOCTYPE")) {
        fail("DTDs are not supported");
      } else {
        return;
      }
    }
  }

  void skip_comment() {
    expect("<!--");
    size_t end = in_.find("-->", pos_);
    if (end == std::string_view::npos) fail("unterminated comment");
    pos_ = end + 3;
  }

  void skip_pi() {
    expect("<?");
    size_t end = in_.find("?>", pos_);
    if (end == std::string_view::npos) fail("unterminated processing instruction");
    pos_ = end + 2;
  }

  std::string parse_name() {
    if (eof() || !is_name_start(peek())) fail("expected a name");
    size_t start = pos_;
    ++pos_;
    while (!eof() && is_name_char(peek())) ++pos_;
    return std::string(in_.substr(start, pos_ - start));
  }

  std::string decode_entity() {
    expect("&");
    size_t semi = in_.find(';', pos_);
    if (semi == std::string_view::npos || semi - pos_ > 10) fail("unterminated entity");
    std::string_view ent = in_.substr(pos_, semi - pos_);
    pos_ = semi + 1;
    if (ent == "lt") return "<";
    if (ent == "gt") return ">";
    if (ent == "amp") return "&";
    if (ent == "apos") return "'";
    if (ent == "quot") return "\"";
    if (!ent.empty() && ent[0] == '#') {
      long code = -1;
      try {
        code = (ent.size() > 1 && (ent[1] == 'x' || ent[1] == 'X'))
                   ? std::stol(std::string(ent.substr(2)), nullptr, 16)
                   : std::stol(std::string(ent.substr(1)), nullptr, 10);
      } catch (...) {
        fail("bad character reference");
      }
      if (code < 0 || code > 0x10FFFF) fail("character reference out of range");
      // UTF-8 encode.
      std::string out;
      auto c = static_cast<unsigned long>(code);
      if (c < 0x80) {
        out.push_back(static_cast<char>(c));
      } else if (c < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (c >> 6)));
        out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
      } else if (c < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (c >> 12)));
        out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
      } else {
        out.push_back(static_cast<char>(0xF0 | (c >> 18)));
        out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
      }
      return out;
    }
    fail("unknown entity '&" + std::string(ent) + ";'");
  }

  std::string parse_attr_value() {
    char quote = take();
    if (quote != '"' && quote != '\'') fail("attribute value must be quoted");
    std::string out;
    for (;;) {
      if (eof()) fail("unterminated attribute value");
      char c = peek();
      if (c == quote) {
        ++pos_;
        return out;
      }
      if (c == '<') fail("'<' in attribute value");
      if (c == '&') {
        out += decode_entity();
      } else {
        out.push_back(take());
      }
    }
  }

  Element parse_element() {
    expect("<");
    Element el;
    el.name = parse_name();
    for (;;) {
      skip_ws();
      if (eof()) fail("unterminated start tag");
      if (looking_at("/>")) {
        pos_ += 2;
        return el;
      }
      if (peek() == '>') {
        ++pos_;
        parse_content(el);
        return el;
      }
      std::string aname = parse_name();
      skip_ws();
      expect("=");
      skip_ws();
      std::string aval = parse_attr_value();
      for (const auto& [k, v] : el.attrs)
        if (k == aname) fail("duplicate attribute '" + aname + "'");
      el.attrs.emplace_back(std::move(aname), std::move(aval));
    }
  }

  void parse_content(Element& el) {
    for (;;) {
      if (eof()) fail("unterminated element <" + el.name + ">");
      char c = peek();
      if (c == '<') {
        if (looking_at("</")) {
          pos_ += 2;
          std::string end = parse_name();
          if (end != el.name)
            fail("mismatched end tag </" + end + "> for <" + el.name + ">");
          skip_ws();
          expect(">");
          return;
        }
        if (looking_at("<!--")) {
          skip_comment();
          continue;
        }
        if (looking_at("<?") || looking_at("<![CDATA[") || looking_at("<!"))
          fail("unsupported markup inside <" + el.name + ">");
        el.children.push_back(parse_element());
      } else if (c == '&') {
        el.text += decode_entity();
      } else {
        el.text.push_back(take());
      }
    }
  }

  std::string_view in_;
  size_t pos_ = 0;
};

void serialize_into(const Element& el, std::string& out) {
  out.push_back('<');
  out += el.name;
  for (const auto& [k, v] : el.attrs) {
    out.push_back(' ');
    out += k;
    out += "=\"";
    out += escape_attr(v);
    out.push_back('"');
  }
  if (el.text.empty() && el.children.empty()) {
    out += "/>";
    return;
  }
  out.push_back('>');
  out += escape_text(el.text);
  for (const Element& c : el.children) serialize_into(c, out);
  out += "</";
  out += el.name;
  out.push_back('>');
}

void canonical_into(const Element& el, std::string& out) {
  out.push_back('<');
  out += el.name;
  auto attrs = el.attrs;
  std::sort(attrs.begin(), attrs.end());
  for (const auto& [k, v] : attrs) {
    out.push_back(' ');
    out += k;
    out += "=\"";
    out += escape_attr(v);
    out.push_back('"');
  }
  std::string_view text = trim(el.text);
  if (text.empty() && el.children.empty()) {
    out += "/>";
    return;
  }
  out.push_back('>');
  out += escape_text(text);
  for (const Element& c : el.children) canonical_into(c, out);
  out += "</";
  out += el.name;
  out.push_back('>');
}

}  // namespace

const std::string* Element::attr(std::string_view name) const {
  for (const auto& [k, v] : attrs)
    if (k == name) return &v;
  return nullptr;
}

const Element* Element::child(std::string_view name) const {
  for (const Element& c : children)
    if (c.name == name) return &c;
  return nullptr;
}

std::vector<const Element*> Element::children_named(std::string_view name) const {
  std::vector<const Element*> out;
  for (const Element& c : children)
    if (c.name == name) out.push_back(&c);
  return out;
}

Element& Element::add_child(std::string name) {
  children.push_back(Element{std::move(name), {}, {}, {}});
  return children.back();
}

Element& Element::set_attr(std::string name, std::string value) {
  attrs.emplace_back(std::move(name), std::move(value));
  return *this;
}

Element& Element::set_text(std::string t) {
  text = std::move(t);
  return *this;
}

Element parse(std::string_view input) { return Parser(input).run(); }

std::string serialize(const Element& root) {
  std::string out;
  serialize_into(root, out);
  return out;
}

std::string canonical(const Element& root) {
  std::string out;
  canonical_into(root, out);
  return out;
}

bool tree_equal(const Element& a, const Element& b) {
  return canonical(a) == canonical(b);
}

std::string escape_text(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string escape_attr(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace disco::xml

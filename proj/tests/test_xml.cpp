#include <doctest.h>

#include <random>

#include "disco/xml.hpp"

using namespace disco;

TEST_CASE("parse a simple element tree") {
  auto root = xml::parse("<a x=\"1\"><b>hi</b><c/></a>");
  CHECK(root.name == "a");
  REQUIRE(root.attr("x") != nullptr);
  CHECK(*root.attr("x") == "1");
  REQUIRE(root.children.size() == 2);
  CHECK(root.children[0].name == "b");
  CHECK(root.children[0].text == "hi");
  CHECK(root.children[1].name == "c");
}

TEST_CASE("whitespace between elements is kept out of canonical form") {
  auto a = xml::parse("<a>\n  <b>text</b>\n</a>");
  auto b = xml::parse("<a><b>text</b></a>");
  CHECK(xml::tree_equal(a, b));
  CHECK(xml::canonical(a) == xml::canonical(b));
}

TEST_CASE("attribute order does not affect canonical form") {
  auto a = xml::parse("<a x=\"1\" y=\"2\"/>");
  auto b = xml::parse("<a y=\"2\" x=\"1\"/>");
  CHECK(xml::tree_equal(a, b));
  CHECK_FALSE(xml::serialize(a) == xml::serialize(b));  // raw form differs
}

TEST_CASE("text is escaped on output and decoded on input") {
  xml::Element el;
  el.name = "name";
  el.set_text("a <b> & c");
  std::string bytes = xml::serialize(el);
  CHECK(bytes == "<name>a &lt;b&gt; &amp; c</name>");
  CHECK(xml::parse(bytes).text == "a <b> & c");
}

TEST_CASE("attribute values are escaped including quotes") {
  xml::Element el;
  el.name = "e";
  el.set_attr("v", "say \"hi\" & <go>");
  std::string bytes = xml::serialize(el);
  auto parsed = xml::parse(bytes);
  CHECK(*parsed.attr("v") == "say \"hi\" & <go>");
}

TEST_CASE("numeric character references decode") {
  CHECK(xml::parse("<a>&#65;&#x42;</a>").text == "AB");
  CHECK(xml::parse("<a>&#233;</a>").text == "\xC3\xA9");  // é in UTF-8
}

TEST_CASE("comments and prolog are skipped") {
  auto root = xml::parse(
      "<?xml version=\"1.0\"?><!-- hello --><a><!-- inner -->ok</a><!-- bye -->");
  CHECK(root.name == "a");
  CHECK(root.text == "ok");
}

TEST_CASE("malformed documents raise parse errors") {
  CHECK_THROWS_AS(xml::parse(""), xml::ParseError);
  CHECK_THROWS_AS(xml::parse("<a><b></a>"), xml::ParseError);   // mismatched tags
  CHECK_THROWS_AS(xml::parse("<a>"), xml::ParseError);          // truncated
  CHECK_THROWS_AS(xml::parse("<a x=1/>"), xml::ParseError);     // unquoted attr
  CHECK_THROWS_AS(xml::parse("<a/><b/>"), xml::ParseError);     // two roots
  CHECK_THROWS_AS(xml::parse("plain text"), xml::ParseError);
  CHECK_THROWS_AS(xml::parse("<a>&bogus;</a>"), xml::ParseError);
  CHECK_THROWS_AS(xml::parse("<a x=\"1\" x=\"2\"/>"), xml::ParseError);
  CHECK_THROWS_AS(xml::parse("<!DOCTYPE a><a/>"), xml::ParseError);
}

namespace {

std::string random_text(std::mt19937& rng, size_t len) {
  static const std::string chars =
      "abcdefghijklmnopqrstuvwxyz <>&\"'\t0123456789ABC!@#$%^*()_-+=;:";
  std::uniform_int_distribution<size_t> p(0, chars.size() - 1);
  std::string out;
  for (size_t i = 0; i < len; ++i) out.push_back(chars[p(rng)]);
  return out;
}

// Random trees exercise the serialize/parse round trip.
xml::Element random_element(std::mt19937& rng, int depth) {
  static const char* names[] = {"alpha", "beta", "gamma", "x:y", "_under"};
  std::uniform_int_distribution<int> pick(0, 4);
  std::uniform_int_distribution<int> count(0, 3);

  xml::Element el;
  el.name = names[pick(rng)];
  for (int i = 0, n = count(rng); i < n; ++i)
    el.set_attr("a" + std::to_string(i), random_text(rng, 6));
  if (depth > 0 && count(rng) > 1) {
    for (int i = 0, n = count(rng); i < n; ++i)
      el.children.push_back(random_element(rng, depth - 1));
  } else {
    el.set_text(random_text(rng, 10));
  }
  return el;
}

}  // namespace

TEST_CASE("serialize/parse round trip on random trees") {
  std::mt19937 rng(20240817);
  for (int i = 0; i < 200; ++i) {
    xml::Element tree = random_element(rng, 3);
    xml::Element back = xml::parse(xml::serialize(tree));
    CHECK(xml::canonical(back) == xml::canonical(tree));
  }
}

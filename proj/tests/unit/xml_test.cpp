#include "xmv/xml.hpp"

#include "xmv/errors.hpp"

#include <doctest.h>

#include <random>
#include <string>

using namespace xmv;

TEST_CASE("parses elements, attributes and text")
{
    const XmlElement root = xml_parse(R"(<?xml version="1.0"?>
<root kind="test">
  <!-- a comment -->
  <child a='1' b="two"/>
  <value> 10.5 </value>
</root>)");

    CHECK(root.name == "root");
    CHECK(root.require_attribute("kind") == "test");
    REQUIRE(root.children.size() == 2);
    CHECK(root.children[0].name == "child");
    CHECK(*root.children[0].find_attribute("a") == "1");
    CHECK(*root.children[0].find_attribute("b") == "two");
    CHECK(root.children[1].text == " 10.5 ");
    CHECK(root.text.empty());  // inter-element whitespace is dropped
}

TEST_CASE("decodes entities and character references")
{
    const XmlElement root = xml_parse("<a v='&lt;x&gt; &amp; &quot;y&quot; &apos;z&apos; &#65;&#x42;'>a&amp;b</a>");
    CHECK(root.require_attribute("v") == "<x> & \"y\" 'z' AB");
    CHECK(root.text == "a&b");
}

TEST_CASE("reports positions for malformed documents")
{
    try {
        xml_parse("<root>\n  <child>\n</root>");
        FAIL("expected ParseError");
    } catch (const ParseError &error) {
        CHECK(error.line() == 3);
        CHECK(std::string(error.what()).find("mismatched closing tag") != std::string::npos);
    }

    CHECK_THROWS_AS(xml_parse("<a foo='1' foo='2'/>"), ParseError);
    CHECK_THROWS_AS(xml_parse("<a>&bogus;</a>"), ParseError);
    CHECK_THROWS_AS(xml_parse("<a><b/></a><c/>"), ParseError);
    CHECK_THROWS_AS(xml_parse(""), ParseError);
}

TEST_CASE("serialization escapes markup characters")
{
    XmlElement root;
    root.name = "m";
    root.set_attribute("v", "a<b>&\"c'");
    root.add_child("t").text = "1 < 2 & 3";

    const std::string text = xml_serialize(root);
    CHECK(text.find("a&lt;b&gt;&amp;&quot;c&apos;") != std::string::npos);
    CHECK(text.find("1 &lt; 2 &amp; 3") != std::string::npos);

    const XmlElement parsed = xml_parse(text);
    CHECK(parsed.require_attribute("v") == "a<b>&\"c'");
    CHECK(parsed.children[0].text == "1 < 2 & 3");
}

TEST_CASE("truncated documents fail with ParseError, never crash")
{
    XmlElement root;
    root.name = "r";
    root.set_attribute("k", "v&<>");
    root.add_child("c").set_attribute("x", "1");
    root.add_child("t").text = "text &amp; more";
    const std::string full = xml_serialize(root);

    for (std::size_t cut = 0; cut < full.size(); cut += 3) {
        try {
            (void)xml_parse(full.substr(0, cut));
        } catch (const ParseError &) {
            // expected for almost every prefix
        }
    }
    CHECK(xml_parse(full).name == "r");

    CHECK_THROWS_AS(xml_parse("<!DOCTYPE r><r/>"), ParseError);
    CHECK_THROWS_AS(xml_parse("<r a='unterminated/>"), ParseError);
    CHECK_THROWS_AS(xml_parse("<r>&#xZZ;</r>"), ParseError);
    CHECK_THROWS_AS(xml_parse("<r>&#1114112;</r>"), ParseError);  // beyond U+10FFFF
    CHECK_THROWS_AS(xml_parse("<r><![CDATA[x]]></r>"), ParseError);
}

TEST_CASE("serialize/parse round-trips random attribute values")
{
    std::mt19937_64 rng(20260810);
    const std::string alphabet = "ab<>&\"'#; \tzé";
    for (int i = 0; i != 200; ++i) {
        std::string value;
        const auto length = rng() % 12;
        for (std::uint64_t k = 0; k != length; ++k)
            value.push_back(alphabet[rng() % alphabet.size()]);

        XmlElement root;
        root.name = "e";
        root.set_attribute("v", value);
        const XmlElement parsed = xml_parse(xml_serialize(root));
        CHECK(parsed.require_attribute("v") == value);
    }
}

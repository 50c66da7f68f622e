#include "xmv/xml.hpp"

#include "xmv/errors.hpp"

#include <algorithm>
#include <cctype>

namespace xmv {

namespace {

bool is_name_start(char c)
{
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == ':';
}

bool is_name_char(char c)
{
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == ':' || c == '-' || c == '.';
}

bool all_whitespace(std::string_view text)
{
    return std::all_of(text.begin(), text.end(),
                       [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

class Cursor
{
public:
    explicit Cursor(std::string_view input) : input_(input) {}

    bool eof() const { return pos_ >= input_.size(); }
    char peek() const { return input_[pos_]; }

    bool starts_with(std::string_view prefix) const { return input_.substr(pos_).starts_with(prefix); }

    char take()
    {
        const char c = input_[pos_++];
        if (c == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        return c;
    }

    void skip(std::size_t n)
    {
        for (std::size_t i = 0; i != n && !eof(); ++i)
            take();
    }

    void skip_whitespace()
    {
        while (!eof() && std::isspace(static_cast<unsigned char>(peek())))
            take();
    }

    void expect(char c, const char *what)
    {
        if (eof() || peek() != c)
            fail(std::string("expected ") + what);
        take();
    }

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

    [[noreturn]] void fail(const std::string &message) const { throw ParseError(message, line_, column_); }

private:
    std::string_view input_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

class Parser
{
public:
    explicit Parser(std::string_view input) : cur_(input) {}

    XmlElement parse_document()
    {
        skip_misc();
        if (cur_.eof())
            cur_.fail("document has no root element");
        if (cur_.peek() != '<')
            cur_.fail("expected '<' before root element");
        XmlElement root = parse_element();
        skip_misc();
        if (!cur_.eof())
            cur_.fail("content after the root element");
        return root;
    }

private:
    // Whitespace, comments, the XML declaration and processing instructions.
    void skip_misc()
    {
        for (;;) {
            cur_.skip_whitespace();
            if (cur_.starts_with("<!--")) {
                skip_comment();
            } else if (cur_.starts_with("<?")) {
                skip_pi();
            } else if (cur_.starts_with("<!")) {
                cur_.fail("DTD sections are not supported");
            } else {
                return;
            }
        }
    }

    void skip_comment()
    {
        cur_.skip(4);
        while (!cur_.starts_with("-->")) {
            if (cur_.eof())
                cur_.fail("unterminated comment");
            cur_.take();
        }
        cur_.skip(3);
    }

    void skip_pi()
    {
        cur_.skip(2);
        while (!cur_.starts_with("?>")) {
            if (cur_.eof())
                cur_.fail("unterminated processing instruction");
            cur_.take();
        }
        cur_.skip(2);
    }

    std::string parse_name()
    {
        if (cur_.eof() || !is_name_start(cur_.peek()))
            cur_.fail("expected a name");
        std::string name;
        while (!cur_.eof() && is_name_char(cur_.peek()))
            name.push_back(cur_.take());
        return name;
    }

    std::string parse_attribute_value()
    {
        if (cur_.eof() || (cur_.peek() != '"' && cur_.peek() != '\''))
            cur_.fail("expected a quoted attribute value");
        const char quote = cur_.take();
        std::string value;
        for (;;) {
            if (cur_.eof())
                cur_.fail("unterminated attribute value");
            const char c = cur_.peek();
            if (c == quote) {
                cur_.take();
                return value;
            }
            if (c == '<')
                cur_.fail("'<' is not allowed in attribute values");
            if (c == '&') {
                value += parse_entity();
            } else {
                value.push_back(cur_.take());
            }
        }
    }

    std::string parse_entity()
    {
        cur_.take(); // '&'
        std::string entity;
        while (!cur_.eof() && cur_.peek() != ';') {
            entity.push_back(cur_.take());
            if (entity.size() > 8)
                cur_.fail("malformed entity reference");
        }
        if (cur_.eof())
            cur_.fail("unterminated entity reference");
        cur_.take(); // ';'
        if (entity == "amp")
            return "&";
        if (entity == "lt")
            return "<";
        if (entity == "gt")
            return ">";
        if (entity == "quot")
            return "\"";
        if (entity == "apos")
            return "'";
        if (entity.size() > 1 && entity[0] == '#') {
            unsigned long code = 0;
            try {
                code = (entity[1] == 'x' || entity[1] == 'X') ? std::stoul(entity.substr(2), nullptr, 16)
                                                              : std::stoul(entity.substr(1), nullptr, 10);
            } catch (const std::exception &) {
                cur_.fail("malformed character reference '&" + entity + ";'");
            }
            if (code == 0 || code > 0x10FFFF)
                cur_.fail("character reference out of range");
            return encode_utf8(static_cast<char32_t>(code));
        }
        cur_.fail("unknown entity '&" + entity + ";'");
    }

    static std::string encode_utf8(char32_t code)
    {
        std::string out;
        if (code < 0x80) {
            out.push_back(static_cast<char>(code));
        } else if (code < 0x800) {
            out.push_back(static_cast<char>(0xC0 | (code >> 6)));
            out.push_back(static_cast<char>(0x80 | (code & 0x3F)));
        } else if (code < 0x10000) {
            out.push_back(static_cast<char>(0xE0 | (code >> 12)));
            out.push_back(static_cast<char>(0x80 | ((code >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (code & 0x3F)));
        } else {
            out.push_back(static_cast<char>(0xF0 | (code >> 18)));
            out.push_back(static_cast<char>(0x80 | ((code >> 12) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | ((code >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (code & 0x3F)));
        }
        return out;
    }

    XmlElement parse_element()
    {
        XmlElement element;
        element.line = cur_.line();
        element.column = cur_.column();
        cur_.expect('<', "'<'");
        element.name = parse_name();

        for (;;) {
            cur_.skip_whitespace();
            if (cur_.eof())
                cur_.fail("unterminated start tag <" + element.name + ">");
            if (cur_.peek() == '>') {
                cur_.take();
                parse_content(element);
                return element;
            }
            if (cur_.starts_with("/>")) {
                cur_.skip(2);
                return element;
            }
            std::string attribute_name = parse_name();
            cur_.skip_whitespace();
            cur_.expect('=', "'=' after attribute name");
            cur_.skip_whitespace();
            std::string value = parse_attribute_value();
            if (element.find_attribute(attribute_name) != nullptr)
                cur_.fail("duplicate attribute '" + attribute_name + "' on <" + element.name + ">");
            element.attributes.emplace_back(std::move(attribute_name), std::move(value));
        }
    }

    void parse_content(XmlElement &element)
    {
        std::string text;
        for (;;) {
            if (cur_.eof())
                cur_.fail("missing closing tag </" + element.name + ">");
            const char c = cur_.peek();
            if (c == '<') {
                if (cur_.starts_with("</")) {
                    cur_.skip(2);
                    const std::string closing = parse_name();
                    if (closing != element.name)
                        cur_.fail("mismatched closing tag </" + closing + "> for <" + element.name + ">");
                    cur_.skip_whitespace();
                    cur_.expect('>', "'>'");
                    if (!all_whitespace(text))
                        element.text = std::move(text);
                    return;
                }
                if (cur_.starts_with("<!--")) {
                    skip_comment();
                } else if (cur_.starts_with("<?")) {
                    skip_pi();
                } else if (cur_.starts_with("<![CDATA[")) {
                    cur_.fail("CDATA sections are not supported");
                } else if (cur_.starts_with("<!")) {
                    cur_.fail("DTD sections are not supported");
                } else {
                    element.children.push_back(parse_element());
                }
            } else if (c == '&') {
                text += parse_entity();
            } else {
                text.push_back(cur_.take());
            }
        }
    }

    Cursor cur_;
};

void append_escaped(std::string &out, std::string_view value, bool in_attribute)
{
    for (const char c : value) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"':
                if (in_attribute)
                    out += "&quot;";
                else
                    out.push_back(c);
                break;
            case '\'':
                if (in_attribute)
                    out += "&apos;";
                else
                    out.push_back(c);
                break;
            default: out.push_back(c);
        }
    }
}

void write_element(const XmlElement &element, std::string &out, unsigned depth)
{
    out.append(2 * depth, ' ');
    out.push_back('<');
    out += element.name;
    for (const auto &[name, value] : element.attributes) {
        out.push_back(' ');
        out += name;
        out += "=\"";
        append_escaped(out, value, true);
        out.push_back('"');
    }
    if (element.children.empty() && element.text.empty()) {
        out += "/>\n";
        return;
    }
    out.push_back('>');
    if (element.children.empty()) {
        append_escaped(out, element.text, false);
        out += "</";
        out += element.name;
        out += ">\n";
        return;
    }
    if (!element.text.empty())
        append_escaped(out, element.text, false);
    out.push_back('\n');
    for (const XmlElement &child : element.children)
        write_element(child, out, depth + 1);
    out.append(2 * depth, ' ');
    out += "</";
    out += element.name;
    out += ">\n";
}

} // namespace

const std::string *XmlElement::find_attribute(std::string_view attribute_name) const
{
    for (const auto &[name, value] : attributes)
        if (name == attribute_name)
            return &value;
    return nullptr;
}

const std::string &XmlElement::require_attribute(std::string_view attribute_name) const
{
    if (const std::string *value = find_attribute(attribute_name))
        return *value;
    throw ValidationError("<" + name + "> is missing required attribute '" + std::string(attribute_name) + "'");
}

XmlElement &XmlElement::add_child(std::string child_name)
{
    XmlElement child;
    child.name = std::move(child_name);
    children.push_back(std::move(child));
    return children.back();
}

XmlElement &XmlElement::set_attribute(std::string attribute_name, std::string value)
{
    attributes.emplace_back(std::move(attribute_name), std::move(value));
    return *this;
}

XmlElement xml_parse(std::string_view text)
{
    if (text.starts_with("\xEF\xBB\xBF"))
        text.remove_prefix(3);
    return Parser(text).parse_document();
}

std::string xml_serialize(const XmlElement &root)
{
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    write_element(root, out, 0);
    return out;
}

std::string xml_escape_text(std::string_view value)
{
    std::string out;
    append_escaped(out, value, false);
    return out;
}

std::string xml_escape_attribute(std::string_view value)
{
    std::string out;
    append_escaped(out, value, true);
    return out;
}

} // namespace xmv

#include "xml_mini.hpp"

#include <cctype>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace am::xml {

const Element* Element::first(const std::string& child_name) const {
    for (const auto& c : children)
        if (c->name == child_name) return c.get();
    return nullptr;
}

std::vector<const Element*> Element::all(const std::string& child_name) const {
    std::vector<const Element*> out;
    for (const auto& c : children)
        if (c->name == child_name) out.push_back(c.get());
    return out;
}

std::string Element::attribute(const std::string& key, const std::string& fallback) const {
    auto it = attributes.find(key);
    return it == attributes.end() ? fallback : it->second;
}

namespace {

class Parser {
public:
    explicit Parser(const std::string& text) : text_(text) {}

    std::unique_ptr<Element> run() {
        skip_misc();
        auto root = parse_element();
        skip_misc();
        if (pos_ != text_.size()) fail("trailing content after root element");
        return root;
    }

private:
    const std::string& text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& message) const {
        throw std::runtime_error("malformed XML at byte " + std::to_string(pos_) + ": " + message);
    }

    bool starts_with(const char* s) const { return text_.compare(pos_, std::strlen(s), s) == 0; }
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void skip_whitespace() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    void skip_until(const char* terminator) {
        std::size_t at = text_.find(terminator, pos_);
        if (at == std::string::npos) fail(std::string("unterminated construct, expected ") + terminator);
        pos_ = at + std::strlen(terminator);
    }

    // Whitespace, comments, processing instructions, DOCTYPE.
    void skip_misc() {
        while (true) {
            skip_whitespace();
            if (starts_with("<!--")) {
                pos_ += 4;
                skip_until("-->");
            } else if (starts_with("<?")) {
                pos_ += 2;
                skip_until("?>");
            } else if (starts_with("<!DOCTYPE")) {
                pos_ += 9;
                skip_until(">");
            } else {
                return;
            }
        }
    }

    std::string parse_name() {
        std::size_t start = pos_;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == ':' || c == '_' || c == '-' || c == '.')
                ++pos_;
            else
                break;
        }
        if (pos_ == start) fail("expected a name");
        return text_.substr(start, pos_ - start);
    }

    std::string decode_entities(const std::string& raw) {
        std::string out;
        out.reserve(raw.size());
        for (std::size_t i = 0; i < raw.size(); ++i) {
            if (raw[i] != '&') {
                out.push_back(raw[i]);
                continue;
            }
            std::size_t end = raw.find(';', i);
            if (end == std::string::npos) fail("unterminated entity reference");
            std::string entity = raw.substr(i + 1, end - i - 1);
            if (entity == "amp") out.push_back('&');
            else if (entity == "lt") out.push_back('<');
            else if (entity == "gt") out.push_back('>');
            else if (entity == "quot") out.push_back('"');
            else if (entity == "apos") out.push_back('\'');
            else if (!entity.empty() && entity[0] == '#') {
                int base = 10;
                std::string digits = entity.substr(1);
                if (!digits.empty() && (digits[0] == 'x' || digits[0] == 'X')) {
                    base = 16;
                    digits = digits.substr(1);
                }
                unsigned long code = std::stoul(digits, nullptr, base);
                if (code > 0x10FFFF) fail("character reference out of range");
                append_utf8(out, static_cast<unsigned long>(code));
            } else {
                fail("unknown entity: &" + entity + ";");
            }
            i = end;
        }
        return out;
    }

    static void append_utf8(std::string& out, unsigned long code) {
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
    }

    std::unique_ptr<Element> parse_element() {
        if (peek() != '<') fail("expected element start");
        ++pos_;
        auto element = std::make_unique<Element>();
        element->name = parse_name();
        while (true) {
            skip_whitespace();
            if (starts_with("/>")) {
                pos_ += 2;
                return element;
            }
            if (peek() == '>') {
                ++pos_;
                break;
            }
            std::string key = parse_name();
            skip_whitespace();
            if (peek() != '=') fail("expected '=' after attribute name");
            ++pos_;
            skip_whitespace();
            char quote = peek();
            if (quote != '"' && quote != '\'') fail("expected quoted attribute value");
            ++pos_;
            std::size_t end = text_.find(quote, pos_);
            if (end == std::string::npos) fail("unterminated attribute value");
            element->attributes[key] = decode_entities(text_.substr(pos_, end - pos_));
            pos_ = end + 1;
        }
        // Content until the matching close tag.
        while (true) {
            if (pos_ >= text_.size()) fail("unexpected end inside element " + element->name);
            if (starts_with("<!--")) {
                pos_ += 4;
                skip_until("-->");
            } else if (starts_with("</")) {
                pos_ += 2;
                std::string closing = parse_name();
                if (closing != element->name)
                    fail("mismatched close tag: " + closing + " for " + element->name);
                skip_whitespace();
                if (peek() != '>') fail("expected '>' in close tag");
                ++pos_;
                return element;
            } else if (peek() == '<') {
                element->children.push_back(parse_element());
            } else {
                std::size_t end = text_.find('<', pos_);
                if (end == std::string::npos) fail("unexpected end in character data");
                element->text += decode_entities(text_.substr(pos_, end - pos_));
                pos_ = end;
            }
        }
    }
};

}  // namespace

std::unique_ptr<Element> parse(const std::string& text) { return Parser(text).run(); }

std::unique_ptr<Element> parse_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse(buffer.str());
}

std::string escape(const std::string& raw) {
    std::string out;
    out.reserve(raw.size());
    for (char c : raw) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

}  // namespace am::xml

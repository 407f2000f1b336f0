#pragma once

// Minimal XML reader covering the subset used by XES logs and PNML files:
// elements, attributes, character data, comments, processing instructions,
// DOCTYPE declarations, and the five predefined entities plus numeric
// character references. Not a general-purpose XML parser.

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace am::xml {

struct Element {
    std::string name;
    std::map<std::string, std::string> attributes;
    std::vector<std::unique_ptr<Element>> children;
    std::string text;  // concatenated character data directly inside this element

    const Element* first(const std::string& child_name) const;
    std::vector<const Element*> all(const std::string& child_name) const;
    std::string attribute(const std::string& key, const std::string& fallback = {}) const;
};

/// Parses a document and returns its root element. Throws std::runtime_error
/// with a byte offset on malformed input.
std::unique_ptr<Element> parse(const std::string& text);

/// Reads and parses a whole file.
std::unique_ptr<Element> parse_file(const std::string& path);

/// Escapes &, <, >, " and ' for use in text nodes and attribute values.
std::string escape(const std::string& raw);

}  // namespace am::xml

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Minimal XML-subset reader for the module document dialect. Supports an
// optional prolog, comments, elements with quoted attributes, character
// data with the five predefined entities, and per-node line/column
// positions. No CDATA, DTD, processing instructions or namespaces.

namespace fomforge::xml {

struct Position {
    int line = 1;
    int column = 1;
};

struct Attribute {
    std::string name;
    std::string value;
    Position pos;
};

struct Element {
    std::string name;
    std::vector<Attribute> attributes;
    std::vector<Element> children;
    std::string text;        // concatenated character data
    bool has_text = false;   // true when non-whitespace character data appeared
    Position pos;            // position of '<' of the start tag
    Position text_pos;       // position of the first non-whitespace character datum

    const Attribute* find_attribute(std::string_view name) const;
};

struct ReadError {
    Position pos;
    std::string message;
};

struct ReadResult {
    std::optional<Element> root;
    std::optional<ReadError> error;
};

ReadResult read_document(std::string_view input);

// Escapes &, <, >, " and ' for attribute values; &, < and > for text.
std::string escape_attribute(std::string_view raw);
std::string escape_text(std::string_view raw);

}  // namespace fomforge::xml

#include "xml_reader.hpp"

#include <cctype>

namespace fomforge::xml {

const Attribute* Element::find_attribute(std::string_view name) const {
    for (const auto& attr : attributes) {
        if (attr.name == name) return &attr;
    }
    return nullptr;
}

namespace {

bool is_name_start(char c) {
    const unsigned char u = static_cast<unsigned char>(c);
    return std::isalpha(u) || c == '_';
}

bool is_name_char(char c) {
    const unsigned char u = static_cast<unsigned char>(c);
    return std::isalnum(u) || c == '_' || c == '-' || c == '.' || c == ':';
}

class Reader {
public:
    explicit Reader(std::string_view input) : in_(input) {}

    ReadResult run() {
        skip_misc(true);
        if (failed_) return result();
        if (eof()) {
            fail(pos(), "document contains no root element");
            return result();
        }
        auto root = read_element();
        if (failed_) return result();
        skip_misc(false);
        if (!failed_ && !eof()) {
            fail(pos(), "unexpected content after the root element");
            return result();
        }
        ReadResult out;
        out.root = std::move(root);
        return out;
    }

private:
    ReadResult result() {
        ReadResult out;
        out.error = error_;
        return out;
    }

    bool eof() const { return i_ >= in_.size(); }
    char peek() const { return in_[i_]; }
    bool has(std::size_t n) const { return i_ + n <= in_.size(); }

    bool starts_with(std::string_view s) const {
        return in_.compare(i_, s.size(), s) == 0;
    }

    Position pos() const { return {line_, column_}; }

    void advance() {
        if (in_[i_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++i_;
    }

    void advance_n(std::size_t n) {
        for (std::size_t k = 0; k < n && !eof(); ++k) advance();
    }

    void fail(Position p, std::string message) {
        if (failed_) return;
        failed_ = true;
        error_ = ReadError{p, std::move(message)};
    }

    void skip_whitespace() {
        while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) advance();
    }

    // Whitespace, comments and (when allowed) the XML prolog.
    void skip_misc(bool allow_prolog) {
        for (;;) {
            skip_whitespace();
            if (eof()) return;
            if (starts_with("<?")) {
                if (!allow_prolog) {
                    fail(pos(), "processing instructions are not supported here");
                    return;
                }
                const Position p = pos();
                while (!eof() && !starts_with("?>")) advance();
                if (eof()) {
                    fail(p, "unterminated prolog");
                    return;
                }
                advance_n(2);
                allow_prolog = false;
                continue;
            }
            if (starts_with("<!--")) {
                if (!skip_comment()) return;
                continue;
            }
            if (starts_with("<!")) {
                fail(pos(), "DTD and CDATA sections are not supported");
                return;
            }
            return;
        }
    }

    bool skip_comment() {
        const Position p = pos();
        advance_n(4);
        while (!eof() && !starts_with("-->")) advance();
        if (eof()) {
            fail(p, "unterminated comment");
            return false;
        }
        advance_n(3);
        return true;
    }

    std::string read_name() {
        if (eof() || !is_name_start(peek())) return {};
        std::string name;
        while (!eof() && is_name_char(peek())) {
            name.push_back(peek());
            advance();
        }
        return name;
    }

    // At '&'; returns the decoded character(s) or fails.
    std::string read_entity() {
        const Position p = pos();
        advance();  // '&'
        std::string entity;
        while (!eof() && peek() != ';' && entity.size() < 8) {
            entity.push_back(peek());
            advance();
        }
        if (eof() || peek() != ';') {
            fail(p, "unterminated entity reference");
            return {};
        }
        advance();  // ';'
        if (entity == "lt") return "<";
        if (entity == "gt") return ">";
        if (entity == "amp") return "&";
        if (entity == "quot") return "\"";
        if (entity == "apos") return "'";
        fail(p, "unknown entity '&" + entity + ";'");
        return {};
    }

    std::optional<Element> read_element() {
        Element element;
        element.pos = pos();
        advance();  // '<'
        element.name = read_name();
        if (element.name.empty()) {
            fail(element.pos, "expected an element name after '<'");
            return std::nullopt;
        }

        // Attributes.
        for (;;) {
            skip_whitespace();
            if (eof()) {
                fail(element.pos, "unterminated start tag <" + element.name + ">");
                return std::nullopt;
            }
            if (peek() == '/') {
                advance();
                if (eof() || peek() != '>') {
                    fail(pos(), "expected '>' after '/'");
                    return std::nullopt;
                }
                advance();
                return element;
            }
            if (peek() == '>') {
                advance();
                break;
            }
            Attribute attr;
            attr.pos = pos();
            attr.name = read_name();
            if (attr.name.empty()) {
                fail(attr.pos, "expected an attribute name in <" + element.name + ">");
                return std::nullopt;
            }
            skip_whitespace();
            if (eof() || peek() != '=') {
                fail(attr.pos, "attribute '" + attr.name + "' is missing '='");
                return std::nullopt;
            }
            advance();
            skip_whitespace();
            if (eof() || (peek() != '"' && peek() != '\'')) {
                fail(attr.pos, "attribute '" + attr.name + "' value must be quoted");
                return std::nullopt;
            }
            const char quote = peek();
            advance();
            while (!eof() && peek() != quote) {
                if (peek() == '<') {
                    fail(pos(), "'<' is not allowed inside an attribute value");
                    return std::nullopt;
                }
                if (peek() == '&') {
                    attr.value += read_entity();
                    if (failed_) return std::nullopt;
                } else {
                    attr.value.push_back(peek());
                    advance();
                }
            }
            if (eof()) {
                fail(attr.pos, "unterminated attribute value");
                return std::nullopt;
            }
            advance();  // closing quote
            if (element.find_attribute(attr.name)) {
                fail(attr.pos, "duplicate attribute '" + attr.name + "'");
                return std::nullopt;
            }
            element.attributes.push_back(std::move(attr));
        }

        // Content until the matching end tag.
        for (;;) {
            if (eof()) {
                fail(element.pos, "missing end tag </" + element.name + ">");
                return std::nullopt;
            }
            if (starts_with("</")) {
                const Position close_pos = pos();
                advance_n(2);
                const std::string close_name = read_name();
                skip_whitespace();
                if (close_name != element.name) {
                    fail(close_pos, "end tag </" + close_name + "> does not match <" +
                                        element.name + ">");
                    return std::nullopt;
                }
                if (eof() || peek() != '>') {
                    fail(close_pos, "malformed end tag </" + close_name + ">");
                    return std::nullopt;
                }
                advance();
                return element;
            }
            if (starts_with("<!--")) {
                if (!skip_comment()) return std::nullopt;
                continue;
            }
            if (starts_with("<!") || starts_with("<?")) {
                fail(pos(), "unsupported markup inside <" + element.name + ">");
                return std::nullopt;
            }
            if (peek() == '<') {
                auto child = read_element();
                if (failed_) return std::nullopt;
                element.children.push_back(std::move(*child));
                continue;
            }
            // Character data.
            const Position text_pos = pos();
            while (!eof() && peek() != '<') {
                if (peek() == '&') {
                    const Position p = pos();
                    const std::string decoded = read_entity();
                    if (failed_) return std::nullopt;
                    if (!element.has_text) {
                        element.has_text = true;
                        element.text_pos = p;
                    }
                    element.text += decoded;
                } else {
                    if (!std::isspace(static_cast<unsigned char>(peek())) && !element.has_text) {
                        element.has_text = true;
                        element.text_pos = pos();
                    }
                    element.text.push_back(peek());
                    advance();
                }
            }
            (void)text_pos;
        }
    }

    std::string_view in_;
    std::size_t i_ = 0;
    int line_ = 1;
    int column_ = 1;
    bool failed_ = false;
    std::optional<ReadError> error_;
};

}  // namespace

ReadResult read_document(std::string_view input) {
    return Reader(input).run();
}

std::string escape_attribute(std::string_view raw) {
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

std::string escape_text(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    for (char c : raw) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

}  // namespace fomforge::xml

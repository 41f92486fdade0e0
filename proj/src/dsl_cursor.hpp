#pragma once

// Character-level cursor shared by the document parser and the workspace
// manifest parser. Internal to src/.

#include <cctype>
#include <charconv>
#include <optional>
#include <string>
#include <string_view>

#include "arceval/scenario.hpp"

namespace arceval::dsl {

struct Cursor {
    std::string_view src;
    std::string file;
    std::size_t pos = 0;
    std::size_t line = 1;
    std::size_t col = 1;

    explicit Cursor(std::string_view text, std::string filename)
        : src(text), file(std::move(filename)) {}

    bool eof() const { return pos >= src.size(); }
    char peek() const { return eof() ? '\0' : src[pos]; }

    SourceSpan here() const { return {file, line, col}; }

    void advance() {
        if (eof()) return;
        if (src[pos] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++pos;
    }

    // Spaces, tabs, carriage returns and comments; stops at newline.
    void skip_inline() {
        while (!eof()) {
            const char c = peek();
            if (c == ' ' || c == '\t' || c == '\r') {
                advance();
            } else if (c == '#') {
                while (!eof() && peek() != '\n') advance();
            } else {
                break;
            }
        }
    }

    // Also crosses newlines.
    void skip_all() {
        while (!eof()) {
            skip_inline();
            if (peek() == '\n') advance(); else break;
        }
    }

    bool accept(char c) {
        skip_inline();
        if (peek() == c) {
            advance();
            return true;
        }
        return false;
    }

    bool accept_crossing_newlines(char c) {
        skip_all();
        if (peek() == c) {
            advance();
            return true;
        }
        return false;
    }

    static bool is_label_start(char c) { return c >= 'a' && c <= 'z'; }
    static bool is_label_char(char c) {
        return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-' || c == '_';
    }

    bool at_label() {
        skip_inline();
        return is_label_start(peek());
    }

    std::string read_label() {
        skip_inline();
        std::string out;
        while (!eof() && is_label_char(peek())) {
            out += peek();
            advance();
        }
        return out;
    }

    bool at_number() {
        skip_inline();
        const char c = peek();
        return std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+';
    }

    bool at_string() {
        skip_inline();
        return peek() == '"';
    }

    // Reads a quoted string. Returns nullopt with `error` set on a lexical
    // problem (unterminated string, bad escape, raw newline).
    std::optional<std::string> read_string(std::string& error) {
        skip_inline();
        if (peek() != '"') {
            error = "expected a string";
            return std::nullopt;
        }
        advance();
        std::string out;
        while (true) {
            if (eof() || peek() == '\n') {
                error = "unterminated string";
                return std::nullopt;
            }
            const char c = peek();
            advance();
            if (c == '"') return out;
            if (c == '\\') {
                if (eof()) {
                    error = "unterminated string";
                    return std::nullopt;
                }
                const char esc = peek();
                advance();
                if (esc == '"') out += '"';
                else if (esc == '\\') out += '\\';
                else if (esc == 'n') out += '\n';
                else {
                    error = std::string("invalid escape \\") + esc;
                    return std::nullopt;
                }
            } else {
                out += c;
            }
        }
    }

    std::optional<double> read_number(std::string& error) {
        skip_inline();
        std::string text;
        if (peek() == '-' || peek() == '+') {
            text += peek();
            advance();
        }
        bool digits = false;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            text += peek();
            advance();
            digits = true;
        }
        if (peek() == '.') {
            text += peek();
            advance();
            while (std::isdigit(static_cast<unsigned char>(peek()))) {
                text += peek();
                advance();
                digits = true;
            }
        }
        if (!digits) {
            error = "expected a number";
            return std::nullopt;
        }
        double value = 0;
        auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc{} || p != text.data() + text.size()) {
            error = "number out of range";
            return std::nullopt;
        }
        return value;
    }
};

}  // namespace arceval::dsl

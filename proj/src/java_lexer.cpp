#include "ehaudit/java_lexer.hpp"

#include <array>
#include <cctype>

namespace ehaudit {

namespace {

bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$' ||
           static_cast<unsigned char>(c) >= 0x80; // UTF-8 continuation treated as ident
}

bool ident_part(char c) {
    return ident_start(c) || std::isdigit(static_cast<unsigned char>(c));
}

} // namespace

bool is_java_keyword(std::string_view word) {
    static const std::array<std::string_view, 53> kw = {
        "abstract", "assert",   "boolean",  "break",      "byte",    "case",
        "catch",    "char",     "class",    "const",      "continue", "default",
        "do",       "double",   "else",     "enum",       "extends", "final",
        "finally",  "float",    "for",      "goto",       "if",      "implements",
        "import",   "instanceof", "int",    "interface",  "long",    "native",
        "new",      "package",  "private",  "protected",  "public",  "return",
        "short",    "static",   "strictfp", "super",      "switch",  "synchronized",
        "this",     "throw",    "throws",   "transient",  "try",     "void",
        "volatile", "while",    "true",     "false",      "null",
    };
    for (auto k : kw)
        if (k == word) return true;
    return false;
}

std::vector<Token> lex_java(std::string_view src, const std::string& file_id) {
    std::vector<Token> out;
    std::size_t i = 0;
    const std::size_t n = src.size();
    int line = 1, col = 1;

    auto advance = [&](std::size_t count) {
        for (std::size_t k = 0; k < count && i < n; ++k, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };

    auto push = [&](TokKind kind, std::size_t begin, std::size_t end, int ln, int cl) {
        out.push_back(Token{kind, src.substr(begin, end - begin), ln, cl, begin, end});
    };

    while (i < n) {
        char c = src[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f') {
            advance(1);
            continue;
        }
        if (c == '/' && i + 1 < n && src[i + 1] == '/') {
            while (i < n && src[i] != '\n') advance(1);
            continue;
        }
        if (c == '/' && i + 1 < n && src[i + 1] == '*') {
            int start_line = line;
            advance(2);
            bool closed = false;
            while (i < n) {
                if (src[i] == '*' && i + 1 < n && src[i + 1] == '/') {
                    advance(2);
                    closed = true;
                    break;
                }
                advance(1);
            }
            if (!closed) throw ParseError(file_id, start_line, "unterminated block comment");
            continue;
        }
        if (c == '"') {
            int ln = line, cl = col;
            std::size_t begin = i;
            // text block
            if (i + 2 < n && src[i + 1] == '"' && src[i + 2] == '"') {
                advance(3);
                bool closed = false;
                while (i < n) {
                    if (src[i] == '\\') {
                        advance(2);
                        continue;
                    }
                    if (src[i] == '"' && i + 2 < n && src[i + 1] == '"' && src[i + 2] == '"') {
                        advance(3);
                        closed = true;
                        break;
                    }
                    advance(1);
                }
                if (!closed) throw ParseError(file_id, ln, "unterminated text block");
                push(TokKind::String, begin, i, ln, cl);
                continue;
            }
            advance(1);
            bool closed = false;
            while (i < n) {
                if (src[i] == '\\') {
                    advance(2);
                    continue;
                }
                if (src[i] == '"') {
                    advance(1);
                    closed = true;
                    break;
                }
                if (src[i] == '\n') break;
                advance(1);
            }
            if (!closed) throw ParseError(file_id, ln, "unterminated string literal");
            push(TokKind::String, begin, i, ln, cl);
            continue;
        }
        if (c == '\'') {
            int ln = line, cl = col;
            std::size_t begin = i;
            advance(1);
            bool closed = false;
            while (i < n) {
                if (src[i] == '\\') {
                    advance(2);
                    continue;
                }
                if (src[i] == '\'') {
                    advance(1);
                    closed = true;
                    break;
                }
                if (src[i] == '\n') break;
                advance(1);
            }
            if (!closed) throw ParseError(file_id, ln, "unterminated char literal");
            push(TokKind::Char, begin, i, ln, cl);
            continue;
        }
        if (ident_start(c)) {
            int ln = line, cl = col;
            std::size_t begin = i;
            while (i < n && ident_part(src[i])) advance(1);
            push(TokKind::Identifier, begin, i, ln, cl);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            int ln = line, cl = col;
            std::size_t begin = i;
            // Good enough for span tracking: digits, hex, exponents, suffixes,
            // underscores and the dot of floating literals.
            while (i < n && (ident_part(src[i]) || src[i] == '.')) {
                if (src[i] == '.' && i + 1 < n && !std::isdigit(static_cast<unsigned char>(src[i + 1])) &&
                    src[i + 1] != 'e' && src[i + 1] != 'E' && src[i + 1] != 'f' && src[i + 1] != 'F' &&
                    src[i + 1] != 'd' && src[i + 1] != 'D')
                    break;
                advance(1);
            }
            push(TokKind::Number, begin, i, ln, cl);
            continue;
        }
        // operators and punctuation; multi-char sequences kept together only
        // where the scanner cares (::, ->, compound assignment)
        {
            int ln = line, cl = col;
            std::size_t begin = i;
            auto two = (i + 1 < n) ? src.substr(i, 2) : std::string_view{};
            if (two == "->" || two == "::" || two == "==" || two == "!=" || two == "<=" ||
                two == ">=" || two == "&&" || two == "||" || two == "+=" || two == "-=" ||
                two == "*=" || two == "/=" || two == "%=" || two == "&=" || two == "|=" ||
                two == "^=" || two == "++" || two == "--" || two == "<<" ) {
                advance(2);
                if ((two == "<<") && i < n && src[i] == '=') advance(1);
            } else {
                advance(1);
            }
            push(TokKind::Punct, begin, i, ln, cl);
            continue;
        }
    }
    out.push_back(Token{TokKind::End, {}, line, col, n, n});
    return out;
}

} // namespace ehaudit

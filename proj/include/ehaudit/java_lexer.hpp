#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ehaudit {

struct ParseError : std::runtime_error {
    std::string file;
    int line;
    ParseError(std::string file_, int line_, const std::string& msg)
        : std::runtime_error(file_ + ":" + std::to_string(line_) + ": " + msg),
          file(std::move(file_)),
          line(line_) {}
};

enum class TokKind {
    Identifier, // includes keywords; is_keyword() distinguishes
    Number,
    String,     // "..." and text blocks
    Char,
    Punct,      // single punctuation or operator chunk
    End,
};

struct Token {
    TokKind kind = TokKind::End;
    std::string_view text;
    int line = 0;
    int col = 0;
    std::size_t offset = 0;     // byte offset of first char
    std::size_t end_offset = 0; // one past last char

    bool is(std::string_view s) const { return text == s; }
};

/// Tokenizes Java source, dropping comments and whitespace. Line/column
/// bookkeeping survives strings, chars, text blocks and all comment forms,
/// which is all the region extractor needs; numeric literal subtleties are
/// not modelled beyond "a run of literal characters".
std::vector<Token> lex_java(std::string_view source, const std::string& file_id);

bool is_java_keyword(std::string_view word);

} // namespace ehaudit

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "psr2/source_loc.hpp"

namespace psr2 {

enum class TokenKind {
    Keyword,
    Identifier,
    Number,
    HexNumber,
    String,
    Punct,
    PragmaText,
    Eof,
};

const char* to_string(TokenKind kind);

struct Token {
    TokenKind kind;
    std::string text;
    SourceLoc loc;

    bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
    bool is_punct(std::string_view t) const { return is(TokenKind::Punct, t); }
    bool is_keyword(std::string_view t) const { return is(TokenKind::Keyword, t); }
};

// Elementary type names (uint256, bytes32, address, ...) lex as keywords.
bool is_elementary_type(std::string_view word);

// Comments and whitespace are dropped. The returned list never contains the
// trailing Eof token; the parser appends its own sentinel.
std::vector<Token> tokenize(std::string_view source, const std::string& file = "<input>");

}  // namespace psr2

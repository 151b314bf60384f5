#include "psr2/lexer.hpp"

#include <array>
#include <cctype>
#include <unordered_set>

namespace psr2 {

namespace {

const std::unordered_set<std::string_view> kKeywords = {
    "abstract", "anonymous", "assembly", "break",     "calldata",  "catch",    "constant",
    "constructor", "continue", "contract", "delete",  "do",        "else",     "emit",
    "enum",     "error",     "event",    "external",  "false",     "for",      "function",
    "if",       "immutable", "import",   "indexed",   "interface", "internal", "library",
    "mapping",  "memory",    "modifier", "new",       "override",  "payable",  "pragma",
    "private",  "public",    "pure",     "return",    "returns",   "storage",  "struct",
    "true",     "try",       "unchecked", "using",    "view",      "virtual",  "while",
    "wei",      "gwei",      "ether",    "seconds",   "minutes",   "hours",    "days",
    "weeks",
};

// Longest match first.
constexpr std::array<std::string_view, 44> kPuncts = {
    "<<=", ">>=", "**", "=>", "==", "!=", "<=", ">=", "&&", "||", "++",
    "--",  "+=",  "-=", "*=", "/=", "%=", "|=", "&=", "^=", "<<", ">>",
    "(",   ")",   "{",  "}",  "[",  "]",  ";",  ",",  ".",  ":",  "?",
    "=",   "+",   "-",  "*",  "/",  "%",  "!",  "~",  "<",  ">",  "&",
};

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

class Lexer {
public:
    Lexer(std::string_view src, const std::string& file) : src_(src), file_(file) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_trivia();
            if (pos_ >= src_.size()) break;
            out.push_back(next());
            if (out.back().is_keyword("pragma")) {
                skip_trivia();
                out.push_back(pragma_text());
            }
        }
        return out;
    }

private:
    SourceLoc here() const { return SourceLoc{file_, line_, col_, pos_, 0}; }

    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }

    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_trivia() {
        while (pos_ < src_.size()) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '/' && peek(1) == '/') {
                while (pos_ < src_.size() && peek() != '\n') advance();
            } else if (c == '/' && peek(1) == '*') {
                SourceLoc start = here();
                advance();
                advance();
                while (!(peek() == '*' && peek(1) == '/')) {
                    if (pos_ >= src_.size()) throw LexError(start, "unterminated block comment");
                    advance();
                }
                advance();
                advance();
            } else {
                break;
            }
        }
    }

    Token finish(TokenKind kind, SourceLoc start) {
        start.length = pos_ - start.byte_offset;
        return Token{kind, std::string(src_.substr(start.byte_offset, start.length)), start};
    }

    Token pragma_text() {
        SourceLoc start = here();
        while (pos_ < src_.size() && peek() != ';') advance();
        if (pos_ >= src_.size()) throw LexError(start, "unterminated pragma directive");
        Token tok = finish(TokenKind::PragmaText, start);
        while (!tok.text.empty() && std::isspace(static_cast<unsigned char>(tok.text.back())))
            tok.text.pop_back();
        return tok;
    }

    Token string_literal(SourceLoc start) {
        char quote = peek();
        advance();
        while (peek() != quote) {
            if (pos_ >= src_.size() || peek() == '\n')
                throw LexError(start, "unterminated string literal");
            if (peek() == '\\') advance();
            if (pos_ >= src_.size()) throw LexError(start, "unterminated string literal");
            advance();
        }
        advance();
        return finish(TokenKind::String, start);
    }

    Token next() {
        SourceLoc start = here();
        char c = peek();
        auto uc = static_cast<unsigned char>(c);

        if (c == '"' || c == '\'') return string_literal(start);

        if (std::isalpha(uc) || c == '_' || c == '$') {
            while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '$')
                advance();
            std::string_view word = src_.substr(start.byte_offset, pos_ - start.byte_offset);
            if ((word == "hex" || word == "unicode") && (peek() == '"' || peek() == '\'')) {
                Token tok = string_literal(here());
                tok.loc = start;
                tok.loc.length = pos_ - start.byte_offset;
                tok.text = std::string(src_.substr(start.byte_offset, tok.loc.length));
                return tok;
            }
            bool kw = kKeywords.count(word) > 0 || is_elementary_type(word);
            return finish(kw ? TokenKind::Keyword : TokenKind::Identifier, start);
        }

        if (std::isdigit(uc)) {
            if (c == '0' && (peek(1) == 'x' || peek(1) == 'X')) {
                advance();
                advance();
                if (!std::isxdigit(static_cast<unsigned char>(peek())))
                    throw LexError(start, "malformed hex literal");
                while (std::isxdigit(static_cast<unsigned char>(peek())) || peek() == '_') advance();
                return finish(TokenKind::HexNumber, start);
            }
            while (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '_') advance();
            if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
                advance();
                while (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '_') advance();
            }
            if ((peek() == 'e' || peek() == 'E') &&
                (std::isdigit(static_cast<unsigned char>(peek(1))) || peek(1) == '-')) {
                advance();
                if (peek() == '-') advance();
                while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
            }
            if (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_')
                throw LexError(here(), "invalid character in number literal");
            return finish(TokenKind::Number, start);
        }

        for (std::string_view p : kPuncts) {
            if (src_.substr(pos_, p.size()) == p) {
                for (std::size_t i = 0; i < p.size(); ++i) advance();
                return finish(TokenKind::Punct, start);
            }
        }
        if (c == '|' || c == '^') {
            advance();
            return finish(TokenKind::Punct, start);
        }

        if (uc >= 0x80) throw LexError(start, "non-ASCII character outside string or comment");
        throw LexError(start, std::string("illegal character '") + c + "'");
    }

    std::string_view src_;
    const std::string& file_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

}  // namespace

const char* to_string(TokenKind kind) {
    switch (kind) {
        case TokenKind::Keyword: return "keyword";
        case TokenKind::Identifier: return "identifier";
        case TokenKind::Number: return "number";
        case TokenKind::HexNumber: return "hex number";
        case TokenKind::String: return "string";
        case TokenKind::Punct: return "punctuation";
        case TokenKind::PragmaText: return "pragma text";
        case TokenKind::Eof: return "end of input";
    }
    return "?";
}

bool is_elementary_type(std::string_view w) {
    if (w == "bool" || w == "address" || w == "string" || w == "bytes" || w == "uint" ||
        w == "int" || w == "byte")
        return true;
    auto sized = [&](std::string_view prefix) {
        return w.size() > prefix.size() && w.substr(0, prefix.size()) == prefix &&
               all_digits(w.substr(prefix.size()));
    };
    return sized("uint") || sized("int") || sized("bytes");
}

std::vector<Token> tokenize(std::string_view source, const std::string& file) {
    return Lexer(source, file).run();
}

}  // namespace psr2

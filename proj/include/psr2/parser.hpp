#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "psr2/ast.hpp"
#include "psr2/lexer.hpp"

namespace psr2 {

// Recursive-descent parser for the supported Solidity subset (docs/grammar.md).
// Throws ParseError at the first construct outside the subset.
SourceUnit parse(const std::vector<Token>& tokens, const std::string& file = "<input>");

// tokenize + parse.
SourceUnit parse_source(std::string_view source, const std::string& file = "<input>");

// Reads a file and parses it; I/O failures throw std::runtime_error.
SourceUnit parse_file(const std::string& path);

}  // namespace psr2

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace psr2 {

enum class Role { OracleUpdate, PriceRead, Withdraw, Transfer, Mint, Generic };

const char* to_string(Role role);

// Role keyword set. Groups are held in matching priority order:
// oracle_update > price_read > withdraw > transfer > mint.
struct KeywordSet {
    struct Group {
        Role role;
        std::vector<std::string> substrings;   // lowercase
    };
    std::vector<Group> groups;

    static KeywordSet defaults();
};

// Parses `role = ["a", "b"]` lines; `#` starts a comment. Roles missing from
// the text get no keywords. Throws std::runtime_error on malformed input.
KeywordSet parse_keywords(std::string_view text);
KeywordSet load_keywords(const std::string& path);

// Case-insensitive substring match of the function name (the part of the
// signature before '(') against each group in priority order.
Role assign_role(std::string_view signature, const KeywordSet& keywords);

}  // namespace psr2

#include "psr2/keywords.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace psr2 {

namespace {

constexpr Role kPriority[] = {Role::OracleUpdate, Role::PriceRead, Role::Withdraw, Role::Transfer, Role::Mint};

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

}  // namespace

const char* to_string(Role role) {
    switch (role) {
        case Role::OracleUpdate: return "oracle_update";
        case Role::PriceRead: return "price_read";
        case Role::Withdraw: return "withdraw";
        case Role::Transfer: return "transfer";
        case Role::Mint: return "mint";
        case Role::Generic: return "generic";
    }
    return "generic";
}

KeywordSet KeywordSet::defaults() {
    return KeywordSet{{
        {Role::OracleUpdate, {"update", "set", "push", "feed"}},
        {Role::PriceRead, {"price", "rate", "answer", "quote"}},
        {Role::Withdraw, {"withdraw", "claim", "redeem"}},
        {Role::Transfer, {"transfer", "send"}},
        {Role::Mint, {"mint"}},
    }};
}

KeywordSet parse_keywords(std::string_view text) {
    std::map<std::string, std::vector<std::string>> parsed;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string body = trim(line.substr(0, line.find('#')));
        if (body.empty()) continue;
        auto eq = body.find('=');
        auto open = body.find('[');
        auto close = body.rfind(']');
        if (eq == std::string::npos || open == std::string::npos || close == std::string::npos || open < eq ||
            close < open)
            throw std::runtime_error("keywords:" + std::to_string(lineno) + ": expected `role = [\"...\"]`");
        std::string key = trim(body.substr(0, eq));
        std::vector<std::string> values;
        std::string list = body.substr(open + 1, close - open - 1);
        std::size_t pos = 0;
        while ((pos = list.find('"', pos)) != std::string::npos) {
            auto end = list.find('"', pos + 1);
            if (end == std::string::npos)
                throw std::runtime_error("keywords:" + std::to_string(lineno) + ": unterminated string");
            values.push_back(lower(list.substr(pos + 1, end - pos - 1)));
            pos = end + 1;
        }
        parsed[key] = std::move(values);
    }

    KeywordSet set;
    for (Role r : kPriority) {
        auto it = parsed.find(to_string(r));
        set.groups.push_back({r, it == parsed.end() ? std::vector<std::string>{} : it->second});
        if (it != parsed.end()) parsed.erase(it);
    }
    if (!parsed.empty()) throw std::runtime_error("keywords: unknown role '" + parsed.begin()->first + "'");
    return set;
}

KeywordSet load_keywords(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": error: cannot open keyword file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_keywords(buf.str());
}

Role assign_role(std::string_view signature, const KeywordSet& keywords) {
    std::string name = lower(signature.substr(0, signature.find('(')));
    for (Role r : kPriority) {
        for (const auto& g : keywords.groups) {
            if (g.role != r) continue;
            for (const auto& kw : g.substrings)
                if (!kw.empty() && name.find(kw) != std::string::npos) return r;
        }
    }
    return Role::Generic;
}

}  // namespace psr2

#pragma once

#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include "psr2/parser.hpp"
#include "psr2/pipeline.hpp"

namespace testing {

inline std::string source_dir() { return PSR2_SOURCE_DIR; }

inline std::string corpus_path(const std::string& name) { return source_dir() + "/corpus/" + name; }
inline std::string fixture_path(const std::string& name) { return source_dir() + "/tests/fixtures/" + name; }

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline std::unique_ptr<psr2::Analysis> analysis_of(const std::string& source,
                                                   const psr2::KeywordSet& kw = psr2::KeywordSet::defaults()) {
    auto a = std::make_unique<psr2::Analysis>();
    a->file = "test.sol";
    a->table = psr2::resolve_symbols(psr2::parse_source(source, "test.sol"));
    a->repo = psr2::build_repository(a->table, kw);
    return a;
}

inline std::unique_ptr<psr2::Analysis> analysis_of_file(const std::string& path) {
    return psr2::load_analysis(path, psr2::KeywordSet::defaults());
}

inline int function_named(const psr2::SemanticRepository& repo, const std::string& name) {
    for (const auto& f : repo.functions)
        if (f.short_name == name) return f.id;
    return -1;
}

inline int variable_named(const psr2::SemanticRepository& repo, const std::string& name) {
    for (const auto& v : repo.variables)
        if (v.name == name) return v.id;
    return -1;
}

// Wraps statements in a one-function contract with a few state variables.
inline std::string in_contract(const std::string& body, const std::string& extra = "") {
    return "contract T {\n"
           "    uint256 x;\n"
           "    uint256 total;\n"
           "    mapping(address => uint256) balances;\n" +
           extra + "    function f(address payable t, uint256 a) public {\n" + body + "\n    }\n}\n";
}

}  // namespace testing

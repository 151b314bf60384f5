#pragma once

#include <string>
#include <vector>

#include "psr2/pipeline.hpp"
#include <json.hpp>

namespace psr2 {

// One block per finding, then a "<n> findings" summary line.
std::string render_text(const std::vector<FileResult>& results, bool verbose = false);

nlohmann::json file_json(const FileResult& result, bool verbose = false);
// One file: an object; several: an array in input order. Keys are sorted.
std::string render_json(const std::vector<FileResult>& results, bool verbose = false);

nlohmann::json repository_json(const Analysis& analysis);

}  // namespace psr2

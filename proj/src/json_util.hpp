#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

namespace optidep::detail {

using nlohmann::json;

/// Parses JSON, rejecting syntax errors and duplicate object keys with LoadError.
json parse_document(std::string_view text);

/// "/a/b" style path segment, escaped per JSON pointer.
std::string path_join(const std::string& base, std::string_view key);
std::string path_join(const std::string& base, std::size_t index);

const json& require(const json& obj, std::string_view key, const std::string& path);
const std::string& require_string(const json& value, const std::string& path);

}  // namespace optidep::detail

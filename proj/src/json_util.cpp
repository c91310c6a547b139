#include "json_util.hpp"

#include <set>
#include <vector>

#include "optidep/errors.hpp"

namespace optidep::detail {

json parse_document(std::string_view text) {
  // One key set per open object; `last_key` is the key whose value is being parsed.
  struct OpenObject {
    std::set<std::string> keys;
    std::string path;
  };
  std::vector<OpenObject> open_objects;
  std::string last_key;
  auto reject_duplicates = [&](int /*depth*/, json::parse_event_t event, json& parsed) {
    switch (event) {
      case json::parse_event_t::object_start: {
        std::string path = open_objects.empty() ? "" : path_join(open_objects.back().path, last_key);
        open_objects.push_back({{}, std::move(path)});
        break;
      }
      case json::parse_event_t::object_end:
        open_objects.pop_back();
        break;
      case json::parse_event_t::key: {
        last_key = parsed.get<std::string>();
        if (!open_objects.empty() && !open_objects.back().keys.insert(last_key).second)
          throw LoadError(path_join(open_objects.back().path, last_key),
                          "duplicate key '" + last_key + "'");
        break;
      }
      default:
        break;
    }
    return true;
  };
  try {
    return json::parse(text.begin(), text.end(), reject_duplicates);
  } catch (const json::parse_error& e) {
    throw LoadError("", std::string("malformed JSON: ") + e.what());
  }
}

std::string path_join(const std::string& base, std::string_view key) {
  std::string out = base + "/";
  for (char c : key) {
    if (c == '~')
      out += "~0";
    else if (c == '/')
      out += "~1";
    else
      out += c;
  }
  return out;
}

std::string path_join(const std::string& base, std::size_t index) {
  return base + "/" + std::to_string(index);
}

const json& require(const json& obj, std::string_view key, const std::string& path) {
  if (!obj.is_object()) throw LoadError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw LoadError(path, "missing key '" + std::string(key) + "'");
  return *it;
}

const std::string& require_string(const json& value, const std::string& path) {
  if (!value.is_string()) throw LoadError(path, "expected a string");
  return value.get_ref<const std::string&>();
}

}  // namespace optidep::detail

#include "optidep/version.hpp"

#include <algorithm>
#include <charconv>

#include "optidep/errors.hpp"

namespace optidep {
namespace detail {
namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ident_char(char c) {
  return is_digit(c) || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '-';
}

[[noreturn]] void fail(std::string_view whole, std::string_view token, std::size_t offset,
                       const std::string& why) {
  throw ParseError("invalid version '" + std::string(whole) + "': " + why + " at '" +
                       std::string(token) + "'",
                   std::string(token), offset);
}

}  // namespace

std::uint64_t parse_numeric(std::string_view digits, std::string_view whole, std::size_t offset) {
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), is_digit))
    fail(whole, digits, offset, "expected a number");
  if (digits.size() > 1 && digits.front() == '0') fail(whole, digits, offset, "leading zero");
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc()) fail(whole, digits, offset, "number out of range");
  return value;
}

std::vector<PrereleaseId> parse_prerelease(std::string_view text, std::string_view whole,
                                           std::size_t offset) {
  std::vector<PrereleaseId> ids;
  std::size_t start = 0;
  while (true) {
    std::size_t dot = text.find('.', start);
    std::string_view id = text.substr(start, dot == std::string_view::npos ? dot : dot - start);
    if (id.empty() || !std::all_of(id.begin(), id.end(), is_ident_char))
      fail(whole, id, offset + start, "bad prerelease identifier");
    if (std::all_of(id.begin(), id.end(), is_digit))
      ids.emplace_back(parse_numeric(id, whole, offset + start));
    else
      ids.emplace_back(std::string(id));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return ids;
}

void check_build(std::string_view text, std::string_view whole, std::size_t offset) {
  std::size_t start = 0;
  while (true) {
    std::size_t dot = text.find('.', start);
    std::string_view id = text.substr(start, dot == std::string_view::npos ? dot : dot - start);
    if (id.empty() || !std::all_of(id.begin(), id.end(), is_ident_char))
      fail(whole, id, offset + start, "bad build identifier");
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
}

}  // namespace detail

Version::Version(std::uint64_t major, std::uint64_t minor, std::uint64_t patch,
                 std::vector<PrereleaseId> prerelease, std::string build)
    : major_(major),
      minor_(minor),
      patch_(patch),
      prerelease_(std::move(prerelease)),
      build_(std::move(build)) {}

Version Version::parse(std::string_view text) {
  if (text.empty()) throw ParseError("empty version", "", 0);

  std::string_view core = text;
  std::string build;
  if (auto plus = core.find('+'); plus != std::string_view::npos) {
    detail::check_build(core.substr(plus + 1), text, plus + 1);
    build = std::string(core.substr(plus + 1));
    core = core.substr(0, plus);
  }
  std::vector<PrereleaseId> pre;
  if (auto dash = core.find('-'); dash != std::string_view::npos) {
    pre = detail::parse_prerelease(core.substr(dash + 1), text, dash + 1);
    core = core.substr(0, dash);
  }

  std::uint64_t parts[3];
  std::size_t start = 0;
  for (int i = 0; i < 3; ++i) {
    std::size_t dot = core.find('.', start);
    bool last = i == 2;
    if (last != (dot == std::string_view::npos))
      throw ParseError("invalid version '" + std::string(text) + "': expected MAJOR.MINOR.PATCH",
                       std::string(core), 0);
    std::string_view field = core.substr(start, last ? std::string_view::npos : dot - start);
    parts[i] = detail::parse_numeric(field, text, start);
    start = dot + 1;
  }
  return Version(parts[0], parts[1], parts[2], std::move(pre), std::move(build));
}

std::string Version::str() const {
  std::string out = std::to_string(major_) + "." + std::to_string(minor_) + "." +
                    std::to_string(patch_);
  for (std::size_t i = 0; i < prerelease_.size(); ++i) {
    out += i == 0 ? '-' : '.';
    if (auto* n = std::get_if<std::uint64_t>(&prerelease_[i]))
      out += std::to_string(*n);
    else
      out += std::get<std::string>(prerelease_[i]);
  }
  if (!build_.empty()) out += "+" + build_;
  return out;
}

std::strong_ordering operator<=>(const Version& a, const Version& b) {
  if (auto c = a.major_ <=> b.major_; c != 0) return c;
  if (auto c = a.minor_ <=> b.minor_; c != 0) return c;
  if (auto c = a.patch_ <=> b.patch_; c != 0) return c;

  // A release outranks every prerelease of the same triple.
  if (a.prerelease_.empty() != b.prerelease_.empty())
    return a.prerelease_.empty() ? std::strong_ordering::greater : std::strong_ordering::less;

  std::size_t n = std::min(a.prerelease_.size(), b.prerelease_.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& x = a.prerelease_[i];
    const auto& y = b.prerelease_[i];
    // Numeric identifiers sort below alphanumeric ones; variant index 0 is numeric.
    if (auto c = x <=> y; c != 0) return c;
  }
  return a.prerelease_.size() <=> b.prerelease_.size();
}

}  // namespace optidep

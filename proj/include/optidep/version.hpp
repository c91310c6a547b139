#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace optidep {

/// One dot-separated prerelease identifier: numeric or alphanumeric.
using PrereleaseId = std::variant<std::uint64_t, std::string>;

/// NPM-style semantic version. Ordering and equality follow semver
/// precedence, so build metadata is carried for printing only.
class Version {
 public:
  Version() = default;
  Version(std::uint64_t major, std::uint64_t minor, std::uint64_t patch,
          std::vector<PrereleaseId> prerelease = {}, std::string build = {});

  static Version parse(std::string_view text);

  std::uint64_t major() const noexcept { return major_; }
  std::uint64_t minor() const noexcept { return minor_; }
  std::uint64_t patch() const noexcept { return patch_; }
  const std::vector<PrereleaseId>& prerelease() const noexcept { return prerelease_; }
  const std::string& build() const noexcept { return build_; }

  bool is_prerelease() const noexcept { return !prerelease_.empty(); }
  bool same_triple(const Version& other) const noexcept {
    return major_ == other.major_ && minor_ == other.minor_ && patch_ == other.patch_;
  }

  std::string str() const;

  friend std::strong_ordering operator<=>(const Version& a, const Version& b);
  friend bool operator==(const Version& a, const Version& b) {
    return (a <=> b) == std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Version& v) { return os << v.str(); }

 private:
  std::uint64_t major_ = 0;
  std::uint64_t minor_ = 0;
  std::uint64_t patch_ = 0;
  std::vector<PrereleaseId> prerelease_;
  std::string build_;
};

inline std::strong_ordering compare_versions(const Version& a, const Version& b) { return a <=> b; }

namespace detail {

// Shared by the version and range parsers.
std::uint64_t parse_numeric(std::string_view digits, std::string_view whole, std::size_t offset);
std::vector<PrereleaseId> parse_prerelease(std::string_view text, std::string_view whole,
                                           std::size_t offset);
void check_build(std::string_view text, std::string_view whole, std::size_t offset);

}  // namespace detail
}  // namespace optidep

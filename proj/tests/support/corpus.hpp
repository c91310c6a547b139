#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace optidep::testing {

struct CorpusRow {
  std::string range;
  std::string version;
  bool expected;
};

/// Reads a frozen `range<TAB>version<TAB>0|1` table.
inline std::vector<CorpusRow> read_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<CorpusRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    CorpusRow row;
    std::string flag;
    std::getline(fields, row.range, '\t');
    std::getline(fields, row.version, '\t');
    std::getline(fields, flag, '\t');
    row.expected = flag == "1";
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace optidep::testing

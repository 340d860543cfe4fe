#include "rankgap/parse.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <sstream>
#include <vector>

#include "json.hpp"

#include "rankgap/errors.hpp"

namespace rankgap {
namespace {

bool integer_token(const std::string& s) {
  if (s.empty()) return false;
  const std::size_t start = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (start == s.size()) return false;
  return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(start), s.end(),
                     [](unsigned char c) { return std::isdigit(c) != 0; });
}

IntMat from_rows(const std::vector<std::vector<Int>>& rows) {
  if (rows.empty()) throw ParseError("matrix literal has no rows");
  const std::size_t cols = rows.front().size();
  if (cols == 0) throw ParseError("matrix literal has an empty row");
  for (const auto& row : rows)
    if (row.size() != cols) throw ParseError("matrix rows have unequal lengths");
  if (rows.size() != cols)
    throw ParseError("matrix must be square (" + std::to_string(rows.size()) + "x" +
                     std::to_string(cols) + " given)");
  IntMat m(static_cast<Index>(rows.size()), static_cast<Index>(cols));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j)
      m(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
  return m;
}

Int entry_from_json(const nlohmann::json& v) {
  if (v.is_number_unsigned()) return Int(static_cast<unsigned long>(v.get<std::uint64_t>()));
  if (v.is_number_integer()) return Int(static_cast<long>(v.get<std::int64_t>()));
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (!integer_token(s)) throw ParseError("matrix entry is not an integer: \"" + s + "\"");
    return Int(s);
  }
  throw ParseError("matrix entries must be integers, got " + v.dump());
}

}  // namespace

IntMat parse_matrix(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw ParseError("empty matrix literal");

  if (text[first] == '[') {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("bad matrix JSON: ") + e.what());
    }
    if (!doc.is_array() || doc.empty())
      throw ParseError("matrix literal must be a non-empty JSON array");
    std::vector<std::vector<Int>> rows;
    if (doc.front().is_array()) {
      for (const auto& row : doc) {
        if (!row.is_array()) throw ParseError("matrix rows must be arrays");
        std::vector<Int> entries;
        for (const auto& v : row) entries.push_back(entry_from_json(v));
        rows.push_back(std::move(entries));
      }
    } else {
      std::vector<Int> entries;
      for (const auto& v : doc) entries.push_back(entry_from_json(v));
      rows.push_back(std::move(entries));
    }
    return from_rows(rows);
  }

  // "r11 r12; r21 r22" text form
  std::vector<std::vector<Int>> rows;
  std::stringstream lines(text);
  std::string row_text;
  while (std::getline(lines, row_text, ';')) {
    std::vector<Int> row;
    std::stringstream fields(row_text);
    std::string tok;
    while (fields >> tok) {
      if (!integer_token(tok)) throw ParseError("bad matrix entry: \"" + tok + "\"");
      row.emplace_back(tok);
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  return from_rows(rows);
}

std::string format_matrix(const IntMat& a) {
  std::string out = "[";
  for (Index i = 0; i < a.rows(); ++i) {
    out += (i == 0) ? "[" : ",[";
    for (Index j = 0; j < a.cols(); ++j) {
      if (j != 0) out += ',';
      out += a(i, j).get_str();
    }
    out += ']';
  }
  out += ']';
  return out;
}

}  // namespace rankgap

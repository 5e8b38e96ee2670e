#pragma once

// Reading and writing function descriptions.
//
// Truth-table format (auto-detected by a leading "n="):
//   n=<vars>
//   <hex digits, most significant first, bit index 0 = LSB of the last digit>
//
// Anything else parses as ANF text ("x1*x2 + x3 + 1"); variable indices
// define n as the largest index mentioned.

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include "qsep/anf.hpp"
#include "qsep/errors.hpp"
#include "qsep/truth_table.hpp"

namespace qsep {

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream body;
  body << in.rdbuf();
  return std::move(body).str();
}

inline void write_text_file(const std::string& path,
                            const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open file for writing: " + path);
  out << content;
  if (!out.flush())
    throw std::runtime_error("failed writing file: " + path);
}

inline std::string format_tt_text(const TruthTable& f) {
  return "n=" + std::to_string(f.n()) + "\n" + f.to_hex() + "\n";
}

namespace detail {

inline std::string_view trimmed(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' ||
                        s.front() == '\r' || s.front() == '\n'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\r' || s.back() == '\n'))
    s.remove_suffix(1);
  return s;
}

}  // namespace detail

inline TruthTable parse_tt_text(std::string_view text) {
  std::string_view body = detail::trimmed(text);
  if (body.substr(0, 2) != "n=")
    throw parse_error("truth-table text must start with \"n=\" (line 1)");
  size_t eol = body.find('\n');
  if (eol == std::string_view::npos)
    throw parse_error("truth-table text is missing the hex line (line 2)");
  std::string_view header = detail::trimmed(body.substr(2, eol - 2));
  int n = 0;
  for (char c : header) {
    if (c < '0' || c > '9')
      throw parse_error("bad variable count in truth-table header (line 1)");
    n = n * 10 + (c - '0');
    if (n > 1000) break;
  }
  if (n < 1) throw parse_error("bad variable count in truth-table header (line 1)");
  std::string_view hex = detail::trimmed(body.substr(eol + 1));
  if (hex.find_first_of(" \t\r\n") != std::string_view::npos)
    throw parse_error("unexpected content after the hex digits (line 2)");
  return TruthTable::from_hex(n, hex);
}

// Auto-detecting parser: truth-table format when the text leads with "n=",
// ANF text otherwise.
inline TruthTable parse_function_text(std::string_view text) {
  std::string_view body = detail::trimmed(text);
  if (body.substr(0, 2) == "n=") return parse_tt_text(body);
  Anf a = anf_from_text(std::string(body));
  return tt_from_anf(a);
}

inline TruthTable parse_function_file(const std::string& path) {
  return parse_function_text(read_text_file(path));
}

}  // namespace qsep

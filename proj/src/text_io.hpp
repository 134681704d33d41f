#pragma once

// Line-oriented tokenizer shared by the text file readers.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "msvc/error.hpp"

namespace msvc::detail {

class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  /// Next line split on blanks. Throws ParseError at end of input.
  std::vector<std::string_view> tokens(std::string_view what) {
    if (pos_ >= text_.size()) throw ParseError(line_ + 1, "unexpected end of input, expected " + std::string(what));
    std::size_t end = text_.find('\n', pos_);
    if (end == std::string_view::npos) end = text_.size();
    std::string_view line = text_.substr(pos_, end - pos_);
    pos_ = end + 1;
    ++line_;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
      if (j > i) out.push_back(line.substr(i, j - i));
      i = j;
    }
    return out;
  }

  std::vector<std::string_view> tokens_exact(std::size_t count, std::string_view what) {
    auto t = tokens(what);
    if (t.size() != count) {
      fail("expected " + std::string(what) + " (" + std::to_string(count) + " fields), got " +
           std::to_string(t.size()) + " fields");
    }
    return t;
  }

  /// Only blank lines may follow.
  void expect_end() {
    while (pos_ < text_.size()) {
      auto t = tokens("end of input");
      if (!t.empty()) fail("trailing content after the declared records");
    }
  }

  std::size_t line() const noexcept { return line_; }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_, what); }

  template <class Int>
  Int integer(std::string_view tok, std::string_view what) const {
    Int value{};
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || p != tok.data() + tok.size()) {
      fail("malformed " + std::string(what) + " '" + std::string(tok) + "'");
    }
    return value;
  }

  double real(std::string_view tok, std::string_view what) const {
    double value{};
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || p != tok.data() + tok.size()) {
      fail("malformed " + std::string(what) + " '" + std::string(tok) + "'");
    }
    return value;
  }

  void expect_header(std::string_view magic) {
    auto t = tokens("header");
    if (t.size() != 2 || t[0] != magic || t[1] != "1") {
      fail("malformed header, expected '" + std::string(magic) + " 1'");
    }
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 0;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << content;
}

}  // namespace msvc::detail

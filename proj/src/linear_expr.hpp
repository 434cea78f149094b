#pragma once

// Parser for short signed sums such as "-X2 + X3 - w1 + m12".

#include <cctype>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rxtx::detail {

struct Term {
  std::string symbol;  // alphabetic prefix, e.g. "X", "w", "m"
  std::size_t index;   // numeric suffix as written (1-based)
  int sign;
};

inline std::vector<Term> parse_terms(std::string_view text) {
  std::vector<Term> out;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  int sign = 1;
  bool expect_term = true;
  while (true) {
    skip_ws();
    if (i >= text.size()) break;
    const char c = text[i];
    if (c == '+' || c == '-') {
      if (c == '-') sign = -sign;
      expect_term = true;
      ++i;
      continue;
    }
    if (!expect_term) throw std::invalid_argument("missing operator in '" + std::string(text) + "'");
    std::string sym;
    while (i < text.size() && std::isalpha(static_cast<unsigned char>(text[i]))) sym += text[i++];
    std::size_t idx = 0;
    bool digits = false;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      idx = idx * 10 + static_cast<std::size_t>(text[i++] - '0');
      digits = true;
    }
    if (sym.empty() || !digits) throw std::invalid_argument("bad term in '" + std::string(text) + "'");
    out.push_back({sym, idx, sign});
    sign = 1;
    expect_term = false;
  }
  if (expect_term && !out.empty()) throw std::invalid_argument("dangling operator in '" + std::string(text) + "'");
  return out;
}

}  // namespace rxtx::detail

#include "rxtx/scheme.hpp"

#include <fstream>
#include <sstream>
#include <string_view>
#include <utility>

#include "linear_expr.hpp"
#include "rxtx/matrix.hpp"

namespace rxtx {

namespace {

// Dense coefficient vector over `dim` symbols named prefix1..prefixN.
std::vector<int> coeffs(std::string_view expr, std::string_view prefix, std::size_t dim) {
  std::vector<int> v(dim, 0);
  for (const auto& t : detail::parse_terms(expr)) {
    if (t.symbol != prefix || t.index == 0 || t.index > dim)
      throw MalformedScheme("unexpected term " + t.symbol + std::to_string(t.index) + " in '" + std::string(expr) + "'");
    v[t.index - 1] += t.sign;
  }
  return v;
}

struct OutputExpr {
  std::size_t row, col;
  std::string_view expr;  // over m* and s*
};

SchemeOutput make_output(const OutputExpr& e, std::size_t products, std::size_t calls) {
  SchemeOutput o{e.row, e.col, std::vector<int>(products, 0), std::vector<int>(calls, 0)};
  for (const auto& t : detail::parse_terms(e.expr)) {
    auto& dst = t.symbol == "m" ? o.products : o.calls;
    if ((t.symbol != "m" && t.symbol != "s") || t.index == 0 || t.index > dst.size())
      throw MalformedScheme("bad output term in '" + std::string(e.expr) + "'");
    dst[t.index - 1] += t.sign;
  }
  return o;
}

BilinearScheme build_rxtx() {
  // (left factor, right factor) of m1..m26
  static constexpr std::pair<std::string_view, std::string_view> kProducts[] = {
      {"-X2 + X3 - X4 + X8", "X8 + X11"},
      {"X1 - X5 - X6 + X7", "X15 + X5"},
      {"-X2 + X12", "-X10 + X16 + X12"},
      {"X9 - X6", "X13 + X9 - X14"},
      {"X2 + X11", "-X6 + X15 - X7"},
      {"X6 + X11", "X6 + X7 - X11"},
      {"X11", "X6 + X7"},
      {"X2", "-X14 - X10 + X6 - X15 + X7 + X16 + X12"},
      {"X6", "X13 + X9 - X14 - X10 + X6 + X7 - X11"},
      {"X2 - X3 + X7 + X11 + X4 - X8", "X11"},
      {"X5 + X6 - X7", "X5"},
      {"X2 - X3 + X4", "X8"},
      {"-X1 + X5 + X6 + X3 - X7 + X11", "X15"},
      {"-X1 + X5 + X6", "X13 + X9 + X15"},
      {"X2 + X4 - X8", "X11 + X16 + X12"},
      {"X1 - X8", "X9 - X16"},
      {"X12", "X10 - X12"},
      {"X9", "X13 - X14"},
      {"-X2 + X3", "-X15 + X7 + X8"},
      {"X5 + X9 - X8", "X9"},
      {"X8", "X9 - X8 + X12"},
      {"-X6 + X7", "X5 + X7 - X11"},
      {"X1", "X13 - X5 + X16"},
      {"-X1 + X4 + X12", "X16"},
      {"X9 + X2 + X10", "X14"},
      {"X6 + X10 + X12", "X10"},
  };
  static constexpr OutputExpr kOutputs[] = {
      {0, 0, "s1 + s2 + s3 + s4"},
      {0, 1, "m2 - m5 - m7 + m11 + m12 + m13 + m19"},
      {0, 2, "m1 + m3 + m12 + m15 + m16 + m17 + m21 - m24"},
      {0, 3, "m2 - m3 - m5 - m7 - m8 + m11 + m13 - m17 + m23 + m24"},
      {1, 1, "m1 + m6 - m7 + m10 + m11 + m12 + m22"},
      {1, 2, "m1 - m4 + m6 - m7 - m9 + m10 + m12 + m18 + m20 + m21"},
      {1, 3, "m2 + m4 + m11 + m14 + m16 - m18 - m20 + m23"},
      {2, 2, "m4 - m6 + m7 + m9 - m17 - m18 + m26"},
      {2, 3, "m3 + m5 + m7 + m8 + m17 + m18 + m25"},
      {3, 3, "s5 + s6 + s7 + s8"},
  };

  BilinearScheme s;
  s.name = "rxtx";
  s.grid = 4;
  for (const auto& [l, r] : kProducts) s.products.push_back({coeffs(l, "X", 16), coeffs(r, "X", 16)});
  // s1..s8 act on X1, X2, X3, X4, X13, X14, X15, X16
  s.recursive_calls = {0, 1, 2, 3, 12, 13, 14, 15};
  for (const auto& o : kOutputs) s.outputs.push_back(make_output(o, s.products.size(), s.recursive_calls.size()));
  s.validate();
  return s;
}

BilinearScheme build_strassen_xxt() {
  // blocks: A = X1, B = X2, C = X3, D = X4
  BilinearScheme s;
  s.name = "strassen-xxt";
  s.grid = 2;
  s.products = {{coeffs("X1", "X", 4), coeffs("X3", "X", 4)}, {coeffs("X2", "X", 4), coeffs("X4", "X", 4)}};
  s.recursive_calls = {0, 1, 2, 3};
  static constexpr OutputExpr kOutputs[] = {
      {0, 0, "s1 + s2"},
      {0, 1, "m1 + m2"},
      {1, 1, "s3 + s4"},
  };
  for (const auto& o : kOutputs) s.outputs.push_back(make_output(o, 2, 4));
  s.validate();
  return s;
}

std::string join_ints(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(v[i]);
  }
  return out;
}

}  // namespace

void BilinearScheme::validate() const {
  if (grid == 0) throw MalformedScheme("scheme '" + name + "': grid must be positive");
  const std::size_t nb = block_count();
  for (std::size_t k = 0; k < products.size(); ++k)
    if (products[k].left.size() != nb || products[k].right.size() != nb)
      throw MalformedScheme("scheme '" + name + "': product " + std::to_string(k + 1) +
                            " coefficient vector length != " + std::to_string(nb));
  for (auto b : recursive_calls)
    if (b >= nb) throw MalformedScheme("scheme '" + name + "': recursive call on nonexistent block");
  if (outputs.size() != upper_block_count(grid))
    throw MalformedScheme("scheme '" + name + "': expected " + std::to_string(upper_block_count(grid)) + " outputs");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < grid; ++i)
    for (std::size_t j = i; j < grid; ++j, ++idx) {
      const auto& o = outputs[idx];
      if (o.row != i || o.col != j)
        throw MalformedScheme("scheme '" + name + "': outputs must list the upper triangle row-major");
      if (o.products.size() != products.size() || o.calls.size() != recursive_calls.size())
        throw MalformedScheme("scheme '" + name + "': output " + output_name(i, j) + " has wrong coefficient count");
    }
}

bool operator==(const BilinearScheme& a, const BilinearScheme& b) {
  return a.grid == b.grid && a.products == b.products && a.recursive_calls == b.recursive_calls &&
         a.outputs == b.outputs;
}

const BilinearScheme& rxtx_scheme() {
  static const BilinearScheme s = build_rxtx();
  return s;
}

const BilinearScheme& strassen_xxt_scheme() {
  static const BilinearScheme s = build_strassen_xxt();
  return s;
}

SchemeMonomialMatrix target_monomials(std::size_t grid, std::size_t i, std::size_t j) {
  SchemeMonomialMatrix t(grid * grid);
  for (std::size_t k = 0; k < grid; ++k) t(i * grid + k, j * grid + k) += 1;
  return t;
}

SchemeMonomialMatrix expand_output(const BilinearScheme& s, std::size_t index) {
  const std::size_t nb = s.block_count();
  const auto& o = s.outputs.at(index);
  SchemeMonomialMatrix m(nb);
  for (std::size_t k = 0; k < s.products.size(); ++k) {
    const int g = o.products[k];
    if (g == 0) continue;
    const auto& p = s.products[k];
    for (std::size_t a = 0; a < nb; ++a) {
      if (p.left[a] == 0) continue;
      for (std::size_t b = 0; b < nb; ++b) m(a, b) += std::int64_t{g} * p.left[a] * p.right[b];
    }
  }
  for (std::size_t c = 0; c < s.recursive_calls.size(); ++c) {
    const std::size_t a = s.recursive_calls[c];
    m(a, a) += o.calls[c];
  }
  return m;
}

VerifyReport verify_scheme(const BilinearScheme& s) {
  s.validate();
  VerifyReport rep;
  const std::size_t nb = s.block_count();
  for (std::size_t idx = 0; idx < s.outputs.size(); ++idx) {
    const auto& o = s.outputs[idx];
    const auto got = expand_output(s, idx);
    const auto want = target_monomials(s.grid, o.row, o.col);
    ++rep.checked;
    if (got == want) continue;
    OutputMismatch mm{o.row, o.col, {}};
    for (std::size_t a = 0; a < nb; ++a)
      for (std::size_t b = 0; b < nb; ++b)
        if (got(a, b) != want(a, b)) mm.diffs.push_back({a, b, want(a, b), got(a, b)});
    rep.failures.push_back(std::move(mm));
  }
  return rep;
}

std::string output_name(std::size_t row, std::size_t col) {
  return "C" + std::to_string(row + 1) + std::to_string(col + 1);
}

std::string describe(const OutputMismatch& m) {
  std::ostringstream os;
  os << output_name(m.row, m.col) << ":";
  for (const auto& d : m.diffs)
    os << " X" << d.left_block + 1 << "*X" << d.right_block + 1 << "^t expected " << d.expected << " got " << d.actual
       << ";";
  return os.str();
}

void write_scheme(std::ostream& os, const BilinearScheme& s) {
  s.validate();
  if (!s.name.empty()) os << "# scheme " << s.name << "\n";
  os << "grid " << s.grid << "\n";
  os << "calls";
  for (auto b : s.recursive_calls) os << ' ' << b + 1;
  os << "\n";
  for (std::size_t k = 0; k < s.products.size(); ++k)
    os << k + 1 << " : " << join_ints(s.products[k].left) << " | " << join_ints(s.products[k].right) << "\n";
  for (const auto& o : s.outputs)
    os << output_name(o.row, o.col) << " : " << join_ints(o.products) << " | " << join_ints(o.calls) << "\n";
}

std::string to_text(const BilinearScheme& s) {
  std::ostringstream os;
  write_scheme(os, s);
  return os.str();
}

namespace {

std::vector<int> read_ints(const std::string& text, std::size_t line_no) {
  std::istringstream is(text);
  std::vector<int> v;
  std::string tok;
  while (is >> tok) {
    try {
      std::size_t pos = 0;
      v.push_back(std::stoi(tok, &pos));
      if (pos != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw MalformedScheme("line " + std::to_string(line_no) + ": not an integer: '" + tok + "'");
    }
  }
  return v;
}

std::pair<std::string, std::string> split_bar(const std::string& rhs, std::size_t line_no) {
  const auto bar = rhs.find('|');
  if (bar == std::string::npos || rhs.find('|', bar + 1) != std::string::npos)
    throw MalformedScheme("line " + std::to_string(line_no) + ": expected exactly one '|'");
  return {rhs.substr(0, bar), rhs.substr(bar + 1)};
}

}  // namespace

BilinearScheme parse_scheme(const std::string& text) {
  BilinearScheme s;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool have_calls = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      const auto comment = line.substr(hash);
      if (comment.rfind("# scheme ", 0) == 0 && s.name.empty()) s.name = comment.substr(9);
      line.erase(hash);
    }
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "grid") {
      const auto v = read_ints(line.substr(line.find("grid") + 4), line_no);
      if (v.size() != 1 || v[0] <= 0) throw MalformedScheme("line " + std::to_string(line_no) + ": bad grid");
      s.grid = static_cast<std::size_t>(v[0]);
      continue;
    }
    if (head == "calls") {
      for (int b : read_ints(line.substr(line.find("calls") + 5), line_no)) {
        if (b <= 0) throw MalformedScheme("line " + std::to_string(line_no) + ": block ids are 1-based");
        s.recursive_calls.push_back(static_cast<std::size_t>(b - 1));
      }
      have_calls = true;
      continue;
    }
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw MalformedScheme("line " + std::to_string(line_no) + ": expected ':'");
    if (s.grid == 0) throw MalformedScheme("line " + std::to_string(line_no) + ": 'grid' must come first");
    std::istringstream hs(line.substr(0, colon));
    std::string label;
    hs >> label;
    const auto [lhs, rhs] = split_bar(line.substr(colon + 1), line_no);
    if (!label.empty() && label[0] == 'C') {
      if (label.size() != 3 || !std::isdigit(static_cast<unsigned char>(label[1])) ||
          !std::isdigit(static_cast<unsigned char>(label[2])))
        throw MalformedScheme("line " + std::to_string(line_no) + ": bad output label '" + label + "'");
      SchemeOutput o;
      o.row = static_cast<std::size_t>(label[1] - '1');
      o.col = static_cast<std::size_t>(label[2] - '1');
      o.products = read_ints(lhs, line_no);
      o.calls = read_ints(rhs, line_no);
      s.outputs.push_back(std::move(o));
    } else {
      const auto k = read_ints(label, line_no);
      if (k.size() != 1 || k[0] != static_cast<int>(s.products.size()) + 1)
        throw MalformedScheme("line " + std::to_string(line_no) + ": products must be numbered 1, 2, ... in order");
      s.products.push_back({read_ints(lhs, line_no), read_ints(rhs, line_no)});
    }
  }
  if (!have_calls) throw MalformedScheme("missing 'calls' line");
  s.validate();
  return s;
}

BilinearScheme load_scheme(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open scheme file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_scheme(ss.str());
}

void save_scheme(const std::string& path, const BilinearScheme& s) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write scheme file '" + path + "'");
  write_scheme(f, s);
  if (!f) throw std::runtime_error("failed writing scheme file '" + path + "'");
}

}  // namespace rxtx

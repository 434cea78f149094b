#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace rxtx {

class MalformedScheme : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Product k computes (sum_a left[a] X_a) * (sum_b right[b] X_b)^t over the g*g blocks.
struct SchemeProduct {
  std::vector<int> left;
  std::vector<int> right;

  friend bool operator==(const SchemeProduct&, const SchemeProduct&) = default;
};

/// Integer combination producing the upper-triangle output block (row, col).
struct SchemeOutput {
  std::size_t row = 0;
  std::size_t col = 0;
  std::vector<int> products;  // one coefficient per product
  std::vector<int> calls;     // one coefficient per recursive call

  friend bool operator==(const SchemeOutput&, const SchemeOutput&) = default;
};

/// A block algorithm for X X^t stored as data. Blocks are 0-based, row-major on a grid x grid layout.
struct BilinearScheme {
  std::string name;
  std::size_t grid = 0;
  std::vector<SchemeProduct> products;
  std::vector<std::size_t> recursive_calls;  // block index whose Gram product each call computes
  std::vector<SchemeOutput> outputs;         // upper triangle, row-major order

  std::size_t block_count() const { return grid * grid; }

  /// Throws MalformedScheme on wrong vector lengths, missing or misordered outputs.
  void validate() const;
};

bool operator==(const BilinearScheme& a, const BilinearScheme& b);

/// The 4x4-block scheme with 26 general products and 8 recursive calls.
const BilinearScheme& rxtx_scheme();

/// The 2x2-block baseline: C11 = AA^t + BB^t, C12 = AC^t + BD^t, C22 = CC^t + DD^t.
const BilinearScheme& strassen_xxt_scheme();

/// Coefficients over the free monomials X_a X_b^t: entry (a, b) of a (g*g) x (g*g) matrix.
class SchemeMonomialMatrix {
 public:
  explicit SchemeMonomialMatrix(std::size_t blocks) : n_(blocks), c_(blocks * blocks, 0) {}

  std::size_t blocks() const { return n_; }
  std::int64_t& operator()(std::size_t a, std::size_t b) { return c_[a * n_ + b]; }
  std::int64_t operator()(std::size_t a, std::size_t b) const { return c_[a * n_ + b]; }

  friend bool operator==(const SchemeMonomialMatrix&, const SchemeMonomialMatrix&) = default;

 private:
  std::size_t n_;
  std::vector<std::int64_t> c_;
};

/// Expected monomials of output block (i, j): X_{i,k} X_{j,k}^t for every k.
SchemeMonomialMatrix target_monomials(std::size_t grid, std::size_t i, std::size_t j);

/// What the scheme actually computes for outputs[index].
SchemeMonomialMatrix expand_output(const BilinearScheme& s, std::size_t index);

struct MonomialDiff {
  std::size_t left_block = 0;   // a in X_a X_b^t
  std::size_t right_block = 0;  // b
  std::int64_t expected = 0;
  std::int64_t actual = 0;
};

struct OutputMismatch {
  std::size_t row = 0;
  std::size_t col = 0;
  std::vector<MonomialDiff> diffs;
};

struct VerifyReport {
  std::size_t checked = 0;
  std::vector<OutputMismatch> failures;

  bool ok() const { return failures.empty(); }
  std::size_t passed() const { return checked - failures.size(); }
};

/// Exact symbolic check of every output identity. The monomials X_a X_b^t are linearly
/// independent, so coefficient equality is both necessary and sufficient.
VerifyReport verify_scheme(const BilinearScheme& s);

std::string output_name(std::size_t row, std::size_t col);   // "C12" (1-based)
std::string describe(const OutputMismatch& m);

/// Plain-text table:
///   grid 4
///   calls 1 2 3 4 13 14 15 16
///   1 : alpha... | beta...
///   C11 : gamma... | sigma...
std::string to_text(const BilinearScheme& s);
void write_scheme(std::ostream& os, const BilinearScheme& s);
BilinearScheme parse_scheme(const std::string& text);
BilinearScheme load_scheme(const std::string& path);
void save_scheme(const std::string& path, const BilinearScheme& s);

}  // namespace rxtx

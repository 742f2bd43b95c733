#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fq/types.hpp"

namespace fq {

/// Dense row-major integer matrix. With modulus > 0 all entries are kept
/// reduced to {0..modulus-1}; modulus 0 means plain integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols, std::int64_t modulus = 0);
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<std::int64_t> data, std::int64_t modulus = 0);

  static IntMatrix identity(std::size_t n, std::int64_t modulus = 0);
  static IntMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows, std::int64_t modulus = 0);
  /// Columns given as vectors of equal length.
  static IntMatrix from_columns(const std::vector<std::vector<std::int64_t>>& cols, std::size_t rows, std::int64_t modulus = 0);

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] std::int64_t modulus() const { return modulus_; }
  [[nodiscard]] const std::vector<std::int64_t>& data() const { return data_; }

  std::int64_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::int64_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  [[nodiscard]] std::vector<std::int64_t> column(std::size_t c) const;
  [[nodiscard]] std::vector<std::int64_t> row(std::size_t r) const;
  [[nodiscard]] IntMatrix transpose() const;
  [[nodiscard]] bool is_zero() const;
  /// Stacks `below` under this matrix; column counts must agree.
  [[nodiscard]] IntMatrix stacked(const IntMatrix& below) const;

  /// Reduces into {0..m-1} (or keeps integers when m == 0).
  [[nodiscard]] std::int64_t reduce(std::int64_t v) const;

  bool operator==(const IntMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::int64_t modulus_ = 0;
  std::vector<std::int64_t> data_;
};

/// Product with overflow checks; the result uses a's modulus.
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
std::vector<std::int64_t> multiply(const IntMatrix& a, const std::vector<std::int64_t>& v);

bool is_prime(std::int64_t m);
std::int64_t mod_inverse(std::int64_t a, std::int64_t m);

/// Reduced row echelon form over the prime field Z_p.
struct RowEchelon {
  IntMatrix reduced;
  std::vector<std::size_t> pivot_columns;
  [[nodiscard]] std::size_t rank() const { return pivot_columns.size(); }
};
RowEchelon row_echelon_mod_p(const IntMatrix& m);
std::size_t rank_mod_p(const IntMatrix& m);
/// Basis of the null space over Z_p, one vector per free column.
std::vector<std::vector<std::int64_t>> kernel_basis_mod_p(const IntMatrix& m);
/// Indices of a maximal independent subset of the given vectors (greedy, in order).
std::vector<std::size_t> independent_subset_mod_p(const std::vector<std::vector<std::int64_t>>& vectors, std::int64_t p);

/// U * M * V = D with D diagonal and d_1 | d_2 | ... (by ideal inclusion when
/// working modulo m). V_inv is V^{-1}.
struct SmithForm {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
  IntMatrix V_inv;
  /// Diagonal of D, min(rows, cols) entries.
  std::vector<std::int64_t> diagonal;
};

/// Over Z: nonnegative diagonal. Throws SizeLimitError on int64 overflow.
SmithForm smith_normal_form(const IntMatrix& m);

/// Over Z_m (m >= 2): every diagonal entry is normalized to a divisor of m,
/// with 0 standing for m itself.
SmithForm smith_normal_form_mod(const IntMatrix& m);

/// Generators of {x : M x = 0} over Z_m with the order of each generator;
/// the kernel is the direct sum of the cyclic groups they generate.
struct ModKernel {
  std::vector<std::vector<std::int64_t>> generators;
  std::vector<std::int64_t> orders;
};
ModKernel kernel_mod(const IntMatrix& m);

/// Invariant factors (each > 1) of the quotient of (Z_{c_1} + ... + Z_{c_r})
/// by the span of the given relation columns, all over Z_m.
std::vector<std::int64_t> quotient_invariant_factors(const std::vector<std::int64_t>& cyclic_orders,
                                                     const std::vector<std::vector<std::int64_t>>& relations,
                                                     std::int64_t m);

}  // namespace fq

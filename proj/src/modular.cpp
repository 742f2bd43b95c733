#include "fq/modular.hpp"

#include <algorithm>
#include <numeric>

namespace fq {

namespace {

std::int64_t checked(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw SizeLimitError("integer overflow in matrix arithmetic");
  return static_cast<std::int64_t>(v);
}

std::int64_t reduce_mod(__int128 v, std::int64_t m) {
  if (m == 0) return checked(v);
  auto r = static_cast<std::int64_t>(v % m);
  return r < 0 ? r + m : r;
}

struct Bezout {
  std::int64_t g, s, t;
};

// s*a + t*b = g = gcd(a, b) >= 0.
Bezout extended_gcd(std::int64_t a, std::int64_t b) {
  std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const std::int64_t quo = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - quo * r);
    std::tie(old_s, s) = std::make_pair(s, checked(static_cast<__int128>(old_s) - static_cast<__int128>(quo) * s));
    std::tie(old_t, t) = std::make_pair(t, checked(static_cast<__int128>(old_t) - static_cast<__int128>(quo) * t));
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

// Like extended_gcd, but keeps the first operand when it already divides the
// second, so eliminating against a pivot never moves the pivot line.
Bezout elimination_gcd(std::int64_t a, std::int64_t b) {
  if (a != 0 && b % a == 0) return {a, 1, 0};
  return extended_gcd(a, b);
}

// Elimination engine shared by the integer and the Z_m variants.
class SmithEngine {
 public:
  SmithEngine(const IntMatrix& m, std::int64_t modulus)
      : mod_(modulus),
        D_(m.rows(), m.cols(), m.data(), modulus),
        U_(IntMatrix::identity(m.rows(), modulus)),
        V_(IntMatrix::identity(m.cols(), modulus)),
        Vinv_(IntMatrix::identity(m.cols(), modulus)) {}

  SmithForm run() {
    const std::size_t r = D_.rows(), c = D_.cols();
    const std::size_t k = std::min(r, c);
    for (std::size_t t = 0; t < k; ++t) {
      if (!choose_pivot(t)) break;
      if (mod_ == 0) {
        integer_pivot(t);
        normalize(t);
        continue;
      }
      while (true) {
        for (std::size_t i = t + 1; i < r; ++i)
          if (D_(i, t) != 0) row_bezout(t, i);
        bool row_clean = true;
        for (std::size_t j = t + 1; j < c; ++j)
          if (D_(t, j) != 0) {
            col_bezout(t, j);
            row_clean = false;
          }
        if (!row_clean) {
          bool col_clean = true;
          for (std::size_t i = t + 1; i < r; ++i) col_clean = col_clean && D_(i, t) == 0;
          if (!col_clean) continue;
        }
        auto bad = first_not_divisible(t);
        if (!bad) break;
        add_row(t, *bad);
      }
      normalize(t);
    }
    SmithForm out{U_, D_, V_, Vinv_, {}};
    for (std::size_t t = 0; t < k; ++t) out.diagonal.push_back(D_(t, t));
    return out;
  }

 private:
  std::int64_t norm(std::int64_t a) const {
    if (mod_ == 0) return a < 0 ? -a : a;
    return std::gcd(a, mod_);
  }
  bool divides(std::int64_t a, std::int64_t b) const { return b % norm(a) == 0; }
  std::int64_t red(__int128 v) const { return reduce_mod(v, mod_); }

  bool choose_pivot(std::size_t t) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    std::int64_t best_norm = 0;
    for (std::size_t i = t; i < D_.rows(); ++i)
      for (std::size_t j = t; j < D_.cols(); ++j)
        if (D_(i, j) != 0 && (!best || norm(D_(i, j)) < best_norm)) {
          best = {i, j};
          best_norm = norm(D_(i, j));
        }
    if (!best) return false;
    swap_rows(t, best->first);
    swap_cols(t, best->second);
    return true;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < D_.cols(); ++j) std::swap(D_(a, j), D_(b, j));
    for (std::size_t j = 0; j < U_.cols(); ++j) std::swap(U_(a, j), U_(b, j));
  }

  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < D_.rows(); ++i) std::swap(D_(i, a), D_(i, b));
    for (std::size_t i = 0; i < V_.rows(); ++i) std::swap(V_(i, a), V_(i, b));
    for (std::size_t j = 0; j < Vinv_.cols(); ++j) std::swap(Vinv_(a, j), Vinv_(b, j));
  }

  // Rows (t, i) <- [[s, u], [-b/g, a/g]] (rows t, i).
  static void mix_rows(IntMatrix& M, std::size_t t, std::size_t i, std::int64_t s, std::int64_t u, std::int64_t p,
                       std::int64_t q, std::int64_t mod) {
    for (std::size_t j = 0; j < M.cols(); ++j) {
      const __int128 x = M(t, j), y = M(i, j);
      M(t, j) = reduce_mod(s * x + u * y, mod);
      M(i, j) = reduce_mod(p * x + q * y, mod);
    }
  }

  static void mix_cols(IntMatrix& M, std::size_t t, std::size_t j, std::int64_t s, std::int64_t u, std::int64_t p,
                       std::int64_t q, std::int64_t mod) {
    for (std::size_t i = 0; i < M.rows(); ++i) {
      const __int128 x = M(i, t), y = M(i, j);
      M(i, t) = reduce_mod(s * x + u * y, mod);
      M(i, j) = reduce_mod(p * x + q * y, mod);
    }
  }

  void row_bezout(std::size_t t, std::size_t i) {
    const std::int64_t a = D_(t, t), b = D_(i, t);
    const auto [g, s, u] = elimination_gcd(a, b);
    mix_rows(D_, t, i, s, u, -b / g, a / g, mod_);
    mix_rows(U_, t, i, s, u, -b / g, a / g, mod_);
  }

  void col_bezout(std::size_t t, std::size_t j) {
    const std::int64_t a = D_(t, t), b = D_(t, j);
    const auto [g, s, u] = elimination_gcd(a, b);
    // New col_t = s col_t + u col_j, col_j = -(b/g) col_t + (a/g) col_j.
    mix_cols(D_, t, j, s, u, -b / g, a / g, mod_);
    mix_cols(V_, t, j, s, u, -b / g, a / g, mod_);
    // The inverse transform acts on the rows of V^{-1}.
    mix_rows(Vinv_, t, j, a / g, b / g, -u, s, mod_);
  }

  // b = q a + r with |r| <= |a| / 2.
  static std::int64_t nearest_quotient(std::int64_t b, std::int64_t a) {
    std::int64_t q = b / a;
    const std::int64_t r = b - q * a;
    const std::int64_t abs_a = a < 0 ? -a : a;
    if (2 * (r < 0 ? -r : r) > abs_a) q += ((r < 0) == (a < 0)) ? 1 : -1;
    return q;
  }

  // Over Z, Bezout steps let entries explode. Instead reduce row and column t
  // by truncated division and re-pick the smallest pivot until both clear.
  void integer_pivot(std::size_t t) {
    while (true) {
      bool clean = true;
      for (std::size_t i = t + 1; i < D_.rows(); ++i) {
        const std::int64_t q = nearest_quotient(D_(i, t), D_(t, t));
        if (q != 0) {
          mix_rows(D_, t, i, 1, 0, -q, 1, 0);
          mix_rows(U_, t, i, 1, 0, -q, 1, 0);
        }
        clean = clean && D_(i, t) == 0;
      }
      for (std::size_t j = t + 1; j < D_.cols(); ++j) {
        const std::int64_t q = nearest_quotient(D_(t, j), D_(t, t));
        if (q != 0) {
          mix_cols(D_, t, j, 1, 0, -q, 1, 0);
          mix_cols(V_, t, j, 1, 0, -q, 1, 0);
          mix_rows(Vinv_, t, j, 1, q, 0, 1, 0);
        }
        clean = clean && D_(t, j) == 0;
      }
      if (clean) {
        auto bad = first_not_divisible(t);
        if (!bad) return;
        add_row(t, *bad);
      }
      choose_pivot(t);
    }
  }

  std::optional<std::size_t> first_not_divisible(std::size_t t) const {
    for (std::size_t i = t + 1; i < D_.rows(); ++i)
      for (std::size_t j = t + 1; j < D_.cols(); ++j)
        if (D_(i, j) != 0 && !divides(D_(t, t), D_(i, j))) return i;
    return std::nullopt;
  }

  void add_row(std::size_t t, std::size_t i) {
    for (std::size_t j = 0; j < D_.cols(); ++j) D_(t, j) = red(static_cast<__int128>(D_(t, j)) + D_(i, j));
    for (std::size_t j = 0; j < U_.cols(); ++j) U_(t, j) = red(static_cast<__int128>(U_(t, j)) + U_(i, j));
  }

  void scale_row(std::size_t t, std::int64_t unit) {
    for (std::size_t j = 0; j < D_.cols(); ++j) D_(t, j) = red(static_cast<__int128>(D_(t, j)) * unit);
    for (std::size_t j = 0; j < U_.cols(); ++j) U_(t, j) = red(static_cast<__int128>(U_(t, j)) * unit);
  }

  void normalize(std::size_t t) {
    const std::int64_t a = D_(t, t);
    if (a == 0) return;
    if (mod_ == 0) {
      if (a < 0) scale_row(t, -1);
      return;
    }
    const std::int64_t g = std::gcd(a, mod_);
    for (std::int64_t u = 1; u < mod_; ++u) {
      if (std::gcd(u, mod_) == 1 && static_cast<__int128>(u) * a % mod_ == g) {
        scale_row(t, u);
        return;
      }
    }
  }

  std::int64_t mod_;
  IntMatrix D_, U_, V_, Vinv_;
};

}  // namespace

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::int64_t modulus)
    : rows_(rows), cols_(cols), modulus_(modulus), data_(rows * cols, 0) {
  if (modulus < 0) throw DimensionError("modulus must be nonnegative");
}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<std::int64_t> data, std::int64_t modulus)
    : rows_(rows), cols_(cols), modulus_(modulus), data_(std::move(data)) {
  if (modulus < 0) throw DimensionError("modulus must be nonnegative");
  if (data_.size() != rows * cols) throw DimensionError("matrix data size does not match its shape");
  for (auto& v : data_) v = reduce(v);
}

IntMatrix IntMatrix::identity(std::size_t n, std::int64_t modulus) {
  IntMatrix m(n, n, modulus);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = m.reduce(1);
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows, std::int64_t modulus) {
  const std::size_t c = rows.empty() ? 0 : rows[0].size();
  std::vector<std::int64_t> data;
  for (const auto& r : rows) {
    if (r.size() != c) throw DimensionError("ragged matrix rows");
    data.insert(data.end(), r.begin(), r.end());
  }
  return IntMatrix(rows.size(), c, std::move(data), modulus);
}

IntMatrix IntMatrix::from_columns(const std::vector<std::vector<std::int64_t>>& cols, std::size_t rows,
                                  std::int64_t modulus) {
  IntMatrix m(rows, cols.size(), modulus);
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw DimensionError("column length does not match row count");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = m.reduce(cols[j][i]);
  }
  return m;
}

std::int64_t IntMatrix::reduce(std::int64_t v) const { return reduce_mod(v, modulus_); }

std::vector<std::int64_t> IntMatrix::column(std::size_t c) const {
  std::vector<std::int64_t> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, c);
  return out;
}

std::vector<std::int64_t> IntMatrix::row(std::size_t r) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_), data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_, modulus_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](std::int64_t v) { return v == 0; });
}

IntMatrix IntMatrix::stacked(const IntMatrix& below) const {
  if (below.cols_ != cols_) throw DimensionError("stacked matrices need equal column counts");
  auto data = data_;
  data.insert(data.end(), below.data_.begin(), below.data_.end());
  return IntMatrix(rows_ + below.rows_, cols_, std::move(data), modulus_);
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix product shape mismatch");
  IntMatrix out(a.rows(), b.cols(), a.modulus());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const std::int64_t x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        out(i, j) = reduce_mod(static_cast<__int128>(out(i, j)) + static_cast<__int128>(x) * b(k, j), a.modulus());
    }
  return out;
}

std::vector<std::int64_t> multiply(const IntMatrix& a, const std::vector<std::int64_t>& v) {
  if (a.cols() != v.size()) throw DimensionError("matrix-vector shape mismatch");
  std::vector<std::int64_t> out(a.rows(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    __int128 acc = 0;
    for (std::size_t j = 0; j < a.cols(); ++j) {
      acc += static_cast<__int128>(a(i, j)) * v[j];
      if (a.modulus() != 0) acc %= a.modulus();
    }
    out[i] = reduce_mod(acc, a.modulus());
  }
  return out;
}

bool is_prime(std::int64_t m) {
  if (m < 2) return false;
  for (std::int64_t d = 2; d * d <= m; ++d)
    if (m % d == 0) return false;
  return true;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
  auto [g, s, t] = extended_gcd(reduce_mod(a, m), m);
  (void)t;
  if (g != 1) throw PreconditionError(std::to_string(a) + " is not invertible modulo " + std::to_string(m));
  return reduce_mod(s, m);
}

RowEchelon row_echelon_mod_p(const IntMatrix& m) {
  const std::int64_t p = m.modulus();
  if (!is_prime(p)) throw PreconditionError("row echelon form needs a prime modulus");
  IntMatrix r = m;
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < r.cols() && row < r.rows(); ++col) {
    std::size_t piv = row;
    while (piv < r.rows() && r(piv, col) == 0) ++piv;
    if (piv == r.rows()) continue;
    if (piv != row)
      for (std::size_t j = 0; j < r.cols(); ++j) std::swap(r(piv, j), r(row, j));
    const std::int64_t inv = mod_inverse(r(row, col), p);
    for (std::size_t j = col; j < r.cols(); ++j) r(row, j) = r(row, j) * inv % p;
    for (std::size_t i = 0; i < r.rows(); ++i) {
      if (i == row || r(i, col) == 0) continue;
      const std::int64_t factor = r(i, col);
      for (std::size_t j = col; j < r.cols(); ++j) r(i, j) = reduce_mod(r(i, j) - factor * r(row, j), p);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(r), std::move(pivots)};
}

std::size_t rank_mod_p(const IntMatrix& m) { return row_echelon_mod_p(m).rank(); }

std::vector<std::vector<std::int64_t>> kernel_basis_mod_p(const IntMatrix& m) {
  const auto ech = row_echelon_mod_p(m);
  const std::int64_t p = m.modulus();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : ech.pivot_columns) is_pivot[c] = true;
  std::vector<std::vector<std::int64_t>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<std::int64_t> v(m.cols(), 0);
    v[free] = 1;
    for (std::size_t k = 0; k < ech.pivot_columns.size(); ++k) v[ech.pivot_columns[k]] = reduce_mod(-ech.reduced(k, free), p);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<std::size_t> independent_subset_mod_p(const std::vector<std::vector<std::int64_t>>& vectors, std::int64_t p) {
  if (!is_prime(p)) throw PreconditionError("independence test needs a prime modulus");
  std::vector<std::size_t> chosen;
  if (vectors.empty()) return chosen;
  // Incremental elimination against a growing echelon basis.
  std::vector<std::vector<std::int64_t>> basis;
  std::vector<std::size_t> lead;
  for (std::size_t idx = 0; idx < vectors.size(); ++idx) {
    auto v = vectors[idx];
    for (auto& x : v) x = reduce_mod(x, p);
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const std::int64_t c = v[lead[b]];
      if (c == 0) continue;
      for (std::size_t j = 0; j < v.size(); ++j) v[j] = reduce_mod(v[j] - c * basis[b][j], p);
    }
    auto it = std::find_if(v.begin(), v.end(), [](std::int64_t x) { return x != 0; });
    if (it == v.end()) continue;
    const auto l = static_cast<std::size_t>(it - v.begin());
    const std::int64_t inv = mod_inverse(v[l], p);
    for (auto& x : v) x = x * inv % p;
    for (auto& bv : basis) {
      const std::int64_t c = bv[l];
      if (c == 0) continue;
      for (std::size_t j = 0; j < bv.size(); ++j) bv[j] = reduce_mod(bv[j] - c * v[j], p);
    }
    basis.push_back(std::move(v));
    lead.push_back(l);
    chosen.push_back(idx);
  }
  return chosen;
}

SmithForm smith_normal_form(const IntMatrix& m) {
  if (m.modulus() != 0) throw PreconditionError("integer Smith form needs an integer matrix (modulus 0)");
  return SmithEngine(m, 0).run();
}

SmithForm smith_normal_form_mod(const IntMatrix& m) {
  if (m.modulus() < 2) throw PreconditionError("modular Smith form needs modulus >= 2");
  return SmithEngine(m, m.modulus()).run();
}

ModKernel kernel_mod(const IntMatrix& m) {
  const std::int64_t mod = m.modulus();
  const auto snf = smith_normal_form_mod(m);
  ModKernel out;
  for (std::size_t i = 0; i < m.cols(); ++i) {
    const std::int64_t d = i < snf.diagonal.size() ? snf.diagonal[i] : 0;
    const std::int64_t order = std::gcd(d, mod);
    if (order == 1) continue;
    const std::int64_t e = mod / order;
    auto v = snf.V.column(i);
    for (auto& x : v) x = x * e % mod;
    out.generators.push_back(std::move(v));
    out.orders.push_back(order);
  }
  return out;
}

std::vector<std::int64_t> quotient_invariant_factors(const std::vector<std::int64_t>& cyclic_orders,
                                                     const std::vector<std::vector<std::int64_t>>& relations,
                                                     std::int64_t m) {
  const std::size_t r = cyclic_orders.size();
  if (r == 0) return {};
  std::vector<std::vector<std::int64_t>> cols;
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<std::int64_t> c(r, 0);
    c[i] = cyclic_orders[i] % m;
    cols.push_back(std::move(c));
  }
  for (const auto& rel : relations) cols.push_back(rel);
  const auto snf = smith_normal_form_mod(IntMatrix::from_columns(cols, r, m));
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < r; ++i) {
    const std::int64_t d = i < snf.diagonal.size() ? snf.diagonal[i] : 0;
    const std::int64_t f = std::gcd(d, m);
    if (f > 1) out.push_back(f);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace fq

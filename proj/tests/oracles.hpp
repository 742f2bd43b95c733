#pragma once

// Naive reference implementations used to cross-check the library. They
// deliberately share no code with src/ beyond the value types.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "fq/structure.hpp"

namespace oracle {

using fq::Element;

inline fq::FStructure tau12() {
  const std::vector<Element> op{0, 1, 2, 1, 0, 2, 2, 1, 0, 1, 0, 2, 0, 1, 2, 0, 2, 1, 2, 1, 0, 0, 2, 1, 0, 1, 2};
  return fq::FStructure::make(fq::CayleyOp(3, 3, op), fq::Endomap::identity(3), fq::Level::Quandle);
}

// Table lookup with x1 fastest, written out by hand.
inline Element eval(const fq::RawStructure& s, const std::vector<Element>& args) {
  std::size_t idx = 0, scale = 1;
  for (Element a : args) {
    idx += static_cast<std::size_t>(a) * scale;
    scale *= static_cast<std::size_t>(s.order());
  }
  return s.op.table()[idx];
}

// Calls fn on every tuple of {0..q-1}^len, first coordinate most significant.
template <class F>
bool each_tuple(int q, int len, F&& fn) {
  std::vector<Element> t(static_cast<std::size_t>(len), 0);
  while (true) {
    if (!fn(t)) return false;
    int i = len - 1;
    while (i >= 0 && ++t[static_cast<std::size_t>(i)] == q) t[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) return true;
  }
}

// (x_1..x_n, u_1..u_{n-1}) violating T(T(x), f(u)) = T(T(x_1,u), .., T(x_n,u)).
inline std::optional<std::vector<Element>> distributivity_failure(const fq::RawStructure& s) {
  const int n = s.arity();
  std::optional<std::vector<Element>> found;
  each_tuple(s.order(), 2 * n - 1, [&](const std::vector<Element>& v) {
    std::vector<Element> x(v.begin(), v.begin() + n);
    std::vector<Element> lhs{eval(s, x)};
    std::vector<Element> rhs;
    for (int j = n; j < 2 * n - 1; ++j) lhs.push_back(s.twist(v[static_cast<std::size_t>(j)]));
    for (int i = 0; i < n; ++i) {
      std::vector<Element> arg{x[static_cast<std::size_t>(i)]};
      arg.insert(arg.end(), v.begin() + n, v.end());
      rhs.push_back(eval(s, arg));
    }
    if (eval(s, lhs) != eval(s, rhs)) {
      found = v;
      return false;
    }
    return true;
  });
  return found;
}

inline std::vector<Element> first_distributivity_failure(const fq::RawStructure& s) {
  return distributivity_failure(s).value_or(std::vector<Element>{});
}
inline std::vector<Element> first_distributivity_failure(const fq::FStructure& s) {
  return first_distributivity_failure(s.raw());
}

inline bool translations_bijective(const fq::RawStructure& s) {
  return each_tuple(s.order(), s.arity() - 1, [&](const std::vector<Element>& tail) {
    std::vector<bool> hit(static_cast<std::size_t>(s.order()), false);
    for (Element x = 0; x < s.order(); ++x) {
      std::vector<Element> arg{x};
      arg.insert(arg.end(), tail.begin(), tail.end());
      hit[static_cast<std::size_t>(eval(s, arg))] = true;
    }
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
  });
}

inline bool diagonal_is_twist(const fq::RawStructure& s) {
  for (Element x = 0; x < s.order(); ++x)
    if (eval(s, std::vector<Element>(static_cast<std::size_t>(s.arity()), x)) != s.twist(x)) return false;
  return true;
}

inline bool satisfies(const fq::RawStructure& s, fq::Level level) {
  if (distributivity_failure(s)) return false;
  if (level == fq::Level::Shelf) return true;
  if (!translations_bijective(s)) return false;
  return level == fq::Level::Rack || diagonal_is_twist(s);
}

inline bool twist_commutes(const fq::RawStructure& s) {
  return each_tuple(s.order(), s.arity(), [&](const std::vector<Element>& x) {
    std::vector<Element> fx;
    for (Element e : x) fx.push_back(s.twist(e));
    return s.twist(eval(s, x)) == eval(s, fx);
  });
}

// Random table; one in four draws is built to be idempotent on the diagonal
// so that the quandle branch is exercised.
inline fq::RawStructure random_raw(std::mt19937& rng, int order, int arity) {
  std::uniform_int_distribution<int> pick(0, order - 1);
  std::size_t size = 1;
  for (int i = 0; i < arity; ++i) size *= static_cast<std::size_t>(order);
  std::vector<Element> table(size), twist(static_cast<std::size_t>(order));
  for (auto& t : table) t = pick(rng);
  for (auto& t : twist) t = pick(rng);
  if (rng() % 4 == 0) {
    for (Element x = 0; x < order; ++x) {
      std::size_t idx = 0, scale = 1;
      for (int i = 0; i < arity; ++i, scale *= static_cast<std::size_t>(order)) idx += static_cast<std::size_t>(x) * scale;
      table[idx] = twist[static_cast<std::size_t>(x)];
    }
  }
  return fq::RawStructure(fq::CayleyOp(arity, order, table), fq::Endomap(order, twist));
}

// Naive isomorphism test over all bijections.
inline bool isomorphic(const fq::RawStructure& a, const fq::RawStructure& b) {
  if (a.order() != b.order() || a.arity() != b.arity()) return false;
  std::vector<Element> phi(static_cast<std::size_t>(a.order()));
  std::iota(phi.begin(), phi.end(), 0);
  do {
    bool ok = true;
    for (Element x = 0; x < a.order() && ok; ++x) ok = phi[static_cast<std::size_t>(a.twist(x))] == b.twist(phi[static_cast<std::size_t>(x)]);
    ok = ok && each_tuple(a.order(), a.arity(), [&](const std::vector<Element>& x) {
      std::vector<Element> px;
      for (Element e : x) px.push_back(phi[static_cast<std::size_t>(e)]);
      return phi[static_cast<std::size_t>(eval(a, x))] == eval(b, px);
    });
    if (ok) return true;
  } while (std::next_permutation(phi.begin(), phi.end()));
  return false;
}

// Every ternary table and twist of the given order at quandle level whose
// twist is an endomorphism.
inline std::vector<fq::RawStructure> naive_ternary_quandles(int order, bool require_morphism) {
  std::vector<fq::RawStructure> out;
  const int cells = order * order * order;
  std::vector<Element> table(static_cast<std::size_t>(cells), 0);
  each_tuple(order, order, [&](const std::vector<Element>& twist) {
    each_tuple(order, cells, [&](const std::vector<Element>& t) {
      fq::RawStructure s(fq::CayleyOp(3, order, t), fq::Endomap(order, twist));
      if (satisfies(s, fq::Level::Quandle) && (!require_morphism || twist_commutes(s))) out.push_back(s);
      return true;
    });
    return true;
  });
  return out;
}

// Invariant factors over Z from determinantal divisors: d_k = g_k / g_{k-1}
// where g_k is the gcd of all k x k minors.
inline std::int64_t det(std::vector<std::vector<std::int64_t>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  std::int64_t total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<std::int64_t>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<std::int64_t> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(row);
    }
    total += (c % 2 == 0 ? 1 : -1) * m[0][c] * det(minor);
  }
  return total;
}

inline void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

inline std::vector<std::int64_t> invariant_factors_by_minors(const std::vector<std::vector<std::int64_t>>& m) {
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  std::vector<std::int64_t> out;
  std::int64_t prev = 1;
  for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    subsets(rows, k, 0, cur, rs);
    subsets(cols, k, 0, cur, cs);
    std::int64_t g = 0;
    for (const auto& r : rs)
      for (const auto& c : cs) {
        std::vector<std::vector<std::int64_t>> sub;
        for (auto i : r) {
          std::vector<std::int64_t> row;
          for (auto j : c) row.push_back(m[i][j]);
          sub.push_back(row);
        }
        g = std::gcd(g, det(sub));
      }
    if (g == 0) {
      out.push_back(0);
      prev = 0;
      continue;
    }
    out.push_back(prev == 0 ? 0 : g / prev);
    prev = g;
  }
  return out;
}

inline std::int64_t mod(std::int64_t v, std::int64_t m) { return ((v % m) + m) % m; }

// Ternary δ¹φ(x,y,z) = Pφ(x)+Qφ(y)+Rφ(z)−φ(T(x,y,z)).
inline std::vector<std::int64_t> delta1_ternary(const fq::RawStructure& s, std::int64_t m, std::int64_t p, std::int64_t q,
                                                std::int64_t r, const std::vector<std::int64_t>& phi) {
  const int n = s.order();
  std::vector<std::int64_t> out(static_cast<std::size_t>(n * n * n));
  for (int z = 0; z < n; ++z)
    for (int y = 0; y < n; ++y)
      for (int x = 0; x < n; ++x)
        out[static_cast<std::size_t>(x + n * y + n * n * z)] =
            mod(p * phi[x] + q * phi[y] + r * phi[z] - phi[eval(s, {x, y, z})], m);
  return out;
}

// Ternary δ²ψ with the five-argument formula displayed for the Alexander case.
inline std::vector<std::int64_t> delta2_ternary(const fq::RawStructure& s, std::int64_t m, std::int64_t p, std::int64_t q,
                                                std::int64_t r, const std::vector<std::int64_t>& psi) {
  const int n = s.order();
  auto at = [&](int a, int b, int c) { return psi[static_cast<std::size_t>(a + n * b + n * n * c)]; };
  auto T = [&](int a, int b, int c) { return eval(s, {a, b, c}); };
  std::vector<std::int64_t> out(static_cast<std::size_t>(n * n * n * n * n), 0);
  for (std::size_t idx = 0; idx < out.size(); ++idx) {
    int x[5];
    std::size_t rest = idx;
    for (int& e : x) {
      e = static_cast<int>(rest % static_cast<std::size_t>(n));
      rest /= static_cast<std::size_t>(n);
    }
    const auto f = [&](int e) { return s.twist(e); };
    const std::int64_t lhs = p * at(x[0], x[1], x[2]) + at(T(x[0], x[1], x[2]), f(x[3]), f(x[4]));
    const std::int64_t rhs = p * at(x[0], x[3], x[4]) + q * at(x[1], x[3], x[4]) + r * at(x[2], x[3], x[4]) +
                             at(T(x[0], x[3], x[4]), T(x[1], x[3], x[4]), T(x[2], x[3], x[4]));
    out[idx] = mod(lhs - rhs, m);
  }
  return out;
}

// Binary δ¹φ(x,y) = Tφ(x)+Sφ(y)−φ(x*y).
inline std::vector<std::int64_t> delta1_binary(const fq::RawStructure& s, std::int64_t m, std::int64_t t, std::int64_t sc,
                                               const std::vector<std::int64_t>& phi) {
  const int n = s.order();
  std::vector<std::int64_t> out(static_cast<std::size_t>(n * n));
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) out[static_cast<std::size_t>(x + n * y)] = mod(t * phi[x] + sc * phi[y] - phi[eval(s, {x, y})], m);
  return out;
}

// Binary δ²ψ = Tψ(x1,x2)+ψ(x1*x2,f x3)−Tψ(x1,x3)−Sψ(x2,x3)−ψ(x1*x3,x2*x3).
inline std::vector<std::int64_t> delta2_binary(const fq::RawStructure& s, std::int64_t m, std::int64_t t, std::int64_t sc,
                                               const std::vector<std::int64_t>& psi) {
  const int n = s.order();
  auto at = [&](int a, int b) { return psi[static_cast<std::size_t>(a + n * b)]; };
  auto op = [&](int a, int b) { return eval(s, {a, b}); };
  std::vector<std::int64_t> out(static_cast<std::size_t>(n * n * n));
  for (int x3 = 0; x3 < n; ++x3)
    for (int x2 = 0; x2 < n; ++x2)
      for (int x1 = 0; x1 < n; ++x1)
        out[static_cast<std::size_t>(x1 + n * x2 + n * n * x3)] =
            mod(t * at(x1, x2) + at(op(x1, x2), s.twist(x3)) - t * at(x1, x3) - sc * at(x2, x3) - at(op(x1, x3), op(x2, x3)), m);
  return out;
}

// Rank over Z_p by plain elimination on a copy.
inline std::size_t rank_mod(std::vector<std::vector<std::int64_t>> rows, std::int64_t p) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && mod(rows[piv][c], p) == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    std::int64_t inv = 1;
    while (mod(inv * rows[rank][c], p) != 1) ++inv;
    for (auto& v : rows[rank]) v = mod(v * inv, p);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank) continue;
      const std::int64_t k = mod(rows[r][c], p);
      for (std::size_t j = 0; j < cols; ++j) rows[r][j] = mod(rows[r][j] - k * rows[rank][j], p);
    }
    ++rank;
  }
  return rank;
}

}  // namespace oracle

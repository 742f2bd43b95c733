#include "fq/modules.hpp"

#include <functional>
#include <numeric>
#include <sstream>
#include <string>

namespace fq {

namespace {

std::int64_t reduce_mod(std::int64_t v, std::int64_t m) {
  if (m <= 1) return 0;
  v %= m;
  return v < 0 ? v + m : v;
}

std::string tag_for(int arity, const char* ternary, const std::string& general) {
  return arity == 3 ? std::string(ternary) : general;
}

std::string render(const CoeffGroup& a, const CoeffMap& m) {
  std::ostringstream os;
  if (a.rank() == 1) {
    os << reduce_mod(m(0, 0), a.moduli()[0]);
    return os.str();
  }
  os << "[";
  for (int i = 0; i < a.rank(); ++i) {
    if (i) os << "; ";
    for (int j = 0; j < a.rank(); ++j) os << (j ? " " : "") << reduce_mod(m(i, j), a.moduli()[static_cast<std::size_t>(i)]);
  }
  os << "]";
  return os.str();
}

std::string render(const CoeffElement& v) {
  std::ostringstream os;
  if (v.size() == 1) {
    os << v[0];
    return os.str();
  }
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

// Index data shared by every module and cocycle equation for one (x, u).
struct TupleFrame {
  std::size_t x;                   // flat index of x
  std::size_t lhs;                 // (T(x), f(u_1), ..., f(u_{n-1}))
  std::size_t rhs;                 // (T(x_1,u), ..., T(x_n,u))
  std::vector<std::size_t> slice;  // (x_i, u) for i = 1..n
};

// Visits (x_1..x_n, u_1..u_{n-1}) in lexicographic order until `visit`
// returns false; returns the tuple that stopped it.
std::optional<std::vector<Element>> for_each_frame(const FStructure& s,
                                                    const std::function<bool(const TupleFrame&)>& visit) {
  const int n = s.arity(), q = s.order();
  const auto& f = s.twist();
  std::vector<Element> args(static_cast<std::size_t>(n)), lhs(static_cast<std::size_t>(n)), rhs(static_cast<std::size_t>(n));
  TupleFrame frame;
  frame.slice.resize(static_cast<std::size_t>(n));
  for (TupleCounter it(q, static_cast<std::size_t>(2 * n - 1)); !it.done(); it.next()) {
    const auto v = it.value();
    const auto x = v.subspan(0, static_cast<std::size_t>(n));
    const auto u = v.subspan(static_cast<std::size_t>(n));
    frame.x = flat_index(q, x);
    lhs[0] = s(x);
    for (int i = 1; i < n; ++i) lhs[static_cast<std::size_t>(i)] = f(u[static_cast<std::size_t>(i - 1)]);
    frame.lhs = flat_index(q, lhs);
    for (int i = 0; i < n; ++i) {
      args[0] = x[static_cast<std::size_t>(i)];
      for (int j = 1; j < n; ++j) args[static_cast<std::size_t>(j)] = u[static_cast<std::size_t>(j - 1)];
      frame.slice[static_cast<std::size_t>(i)] = flat_index(q, args);
      rhs[static_cast<std::size_t>(i)] = s(args);
    }
    frame.rhs = flat_index(q, rhs);
    if (!visit(frame)) return std::vector<Element>(v.begin(), v.end());
  }
  return std::nullopt;
}

std::size_t diagonal_index(int order, int arity, Element w) {
  std::vector<Element> d(static_cast<std::size_t>(arity), w);
  return flat_index(order, d);
}

}  // namespace

CoeffGroup::CoeffGroup(std::vector<std::int64_t> moduli) : moduli_(std::move(moduli)) {
  if (moduli_.empty()) throw DimensionError("coefficient group needs at least one cyclic factor");
  for (auto m : moduli_)
    if (m < 1) throw PreconditionError("coefficient moduli must be >= 1");
}

int CoeffGroup::order() const {
  std::int64_t n = 1;
  for (auto m : moduli_) {
    n *= m;
    if (n > (std::int64_t{1} << 24)) throw SizeLimitError("coefficient group too large to enumerate");
  }
  return static_cast<int>(n);
}

CoeffElement CoeffGroup::reduce(CoeffElement v) const {
  if (v.size() != moduli_.size()) throw DimensionError("coefficient vector has wrong rank");
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = reduce_mod(v[i], moduli_[i]);
  return v;
}

CoeffElement CoeffGroup::add(const CoeffElement& a, const CoeffElement& b) const {
  CoeffElement out(moduli_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = reduce_mod(a[i] + b[i], moduli_[i]);
  return out;
}

CoeffElement CoeffGroup::element(int index) const {
  CoeffElement out(moduli_.size());
  std::int64_t rest = index;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = rest % moduli_[i];
    rest /= moduli_[i];
  }
  return out;
}

int CoeffGroup::index(const CoeffElement& v) const {
  std::int64_t idx = 0;
  for (std::size_t i = v.size(); i-- > 0;) idx = idx * moduli_[i] + reduce_mod(v[i], moduli_[i]);
  return static_cast<int>(idx);
}

CoeffMap::CoeffMap(const CoeffGroup& group, std::vector<std::int64_t> entries)
    : rank_(group.rank()), entries_(std::move(entries)) {
  if (entries_.size() != static_cast<std::size_t>(rank_ * rank_)) throw DimensionError("coefficient map must be k x k");
  const auto& m = group.moduli();
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) {
      auto& e = entries_[static_cast<std::size_t>(i * rank_ + j)];
      e = reduce_mod(e, m[static_cast<std::size_t>(i)]);
      if ((e * m[static_cast<std::size_t>(j)]) % m[static_cast<std::size_t>(i)] != 0)
        throw PreconditionError("coefficient map entry is not a homomorphism Z_" + std::to_string(m[static_cast<std::size_t>(j)]) +
                                " -> Z_" + std::to_string(m[static_cast<std::size_t>(i)]));
    }
}

CoeffMap CoeffMap::scalar(const CoeffGroup& group, std::int64_t c) {
  const int k = group.rank();
  std::vector<std::int64_t> e(static_cast<std::size_t>(k * k), 0);
  for (int i = 0; i < k; ++i) e[static_cast<std::size_t>(i * k + i)] = c;
  return CoeffMap(group, std::move(e));
}

CoeffElement CoeffMap::apply(const CoeffGroup& group, const CoeffElement& v) const {
  CoeffElement out(static_cast<std::size_t>(rank_), 0);
  for (int i = 0; i < rank_; ++i) {
    std::int64_t acc = 0;
    for (int j = 0; j < rank_; ++j) acc += (*this)(i, j) * v[static_cast<std::size_t>(j)];
    out[static_cast<std::size_t>(i)] = acc;
  }
  return group.reduce(std::move(out));
}

CoeffMap CoeffMap::after(const CoeffGroup& group, const CoeffMap& inner) const {
  std::vector<std::int64_t> e(entries_.size(), 0);
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) {
      std::int64_t acc = 0;
      for (int l = 0; l < rank_; ++l) acc += (*this)(i, l) * inner(l, j);
      e[static_cast<std::size_t>(i * rank_ + j)] = acc;
    }
  return CoeffMap(group, std::move(e));
}

CoeffMap CoeffMap::plus(const CoeffGroup& group, const CoeffMap& other) const {
  std::vector<std::int64_t> e(entries_.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = entries_[i] + other.entries_[i];
  return CoeffMap(group, std::move(e));
}

bool CoeffMap::same_map(const CoeffGroup& group, const CoeffMap& other) const {
  const auto& m = group.moduli();
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j)
      if (reduce_mod((*this)(i, j) - other(i, j), m[static_cast<std::size_t>(i)]) != 0) return false;
  return true;
}

bool CoeffMap::is_bijective(const CoeffGroup& group) const {
  const int n = group.order();
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int a = 0; a < n; ++a) {
    auto& s = seen[static_cast<std::size_t>(group.index(apply(group, group.element(a))))];
    if (s) return false;
    s = 1;
  }
  return true;
}

ModuleStructure ModuleStructure::scalar(const FStructure& base, std::int64_t modulus, std::int64_t eta,
                                        const std::vector<std::int64_t>& taus, std::int64_t g) {
  if (static_cast<int>(taus.size()) != base.arity() - 1)
    throw ArityError("scalar module needs arity - 1 = " + std::to_string(base.arity() - 1) + " tau coefficients");
  const CoeffGroup a = CoeffGroup::cyclic(modulus);
  const auto tuples = checked_pow(static_cast<std::size_t>(base.order()), static_cast<std::size_t>(base.arity()));
  ModuleStructure m{base, a, std::vector<CoeffMap>(tuples, CoeffMap::scalar(a, eta)), {}, CoeffMap::scalar(a, g)};
  for (auto t : taus) m.taus.emplace_back(tuples, CoeffMap::scalar(a, t));
  return m;
}

ModuleStructure ModuleStructure::alexander(const FStructure& base, std::int64_t modulus,
                                           const std::vector<std::int64_t>& coeffs) {
  if (static_cast<int>(coeffs.size()) != base.arity()) throw ArityError("Alexander module needs one coefficient per argument");
  const std::int64_t g = std::accumulate(coeffs.begin(), coeffs.end(), std::int64_t{0});
  return scalar(base, modulus, coeffs[0], {coeffs.begin() + 1, coeffs.end()}, g);
}

void ModuleStructure::validate_shape() const {
  const auto tuples = checked_pow(static_cast<std::size_t>(base.order()), static_cast<std::size_t>(base.arity()));
  if (eta.size() != tuples) throw DimensionError("eta must have one map per base tuple");
  if (static_cast<int>(taus.size()) != base.arity() - 1) throw DimensionError("module needs arity - 1 tau families");
  for (const auto& t : taus)
    if (t.size() != tuples) throw DimensionError("each tau family must have one map per base tuple");
  auto rank_ok = [&](const CoeffMap& m) { return m.rank() == coeff.rank(); };
  bool ok = rank_ok(g);
  for (const auto& e : eta) ok = ok && rank_ok(e);
  for (const auto& t : taus)
    for (const auto& e : t) ok = ok && rank_ok(e);
  if (!ok) throw DimensionError("coefficient map rank does not match the coefficient group");
}

AxiomReport check_module_structure(const ModuleStructure& m) {
  m.validate_shape();
  const FStructure& s = m.base;
  const CoeffGroup& a = m.coeff;
  const int n = s.arity(), q = s.order();
  const int taus = n - 1;

  for (std::size_t x = 0; x < m.eta.size(); ++x)
    if (!m.eta[x].is_bijective(a)) {
      std::vector<Element> w(static_cast<std::size_t>(n));
      unflatten(q, x, w);
      return AxiomReport::fail("automorphism", w, "eta is not invertible: " + render(a, m.eta[x]));
    }

  std::string detail;
  auto mismatch = [&](const CoeffMap& lhs, const CoeffMap& rhs) {
    if (lhs.same_map(a, rhs)) return false;
    detail = "lhs " + render(a, lhs) + " != rhs " + render(a, rhs);
    return true;
  };

  if (auto w = for_each_frame(s, [&](const TupleFrame& t) {
        return !mismatch(m.eta[t.lhs].after(a, m.eta[t.x]), m.eta[t.rhs].after(a, m.eta[t.slice[0]]));
      }))
    return AxiomReport::fail(tag_for(n, "E1", "E10"), *w, detail);

  for (int j = 1; j <= taus; ++j) {
    const auto& tau = m.taus[static_cast<std::size_t>(j - 1)];
    if (auto w = for_each_frame(s, [&](const TupleFrame& t) {
          return !mismatch(m.eta[t.lhs].after(a, tau[t.x]),
                           tau[t.rhs].after(a, m.eta[t.slice[static_cast<std::size_t>(j)]]));
        }))
      return AxiomReport::fail(tag_for(n, j == 1 ? "E2" : "E3", "E11." + std::to_string(j)), *w, detail);
  }

  for (int j = 1; j <= taus; ++j) {
    const auto& tau = m.taus[static_cast<std::size_t>(j - 1)];
    if (auto w = for_each_frame(s, [&](const TupleFrame& t) {
          CoeffMap rhs = m.eta[t.rhs].after(a, tau[t.slice[0]]);
          for (int k = 1; k <= taus; ++k)
            rhs = rhs.plus(a, m.taus[static_cast<std::size_t>(k - 1)][t.rhs].after(a, tau[t.slice[static_cast<std::size_t>(k)]]));
          return !mismatch(tau[t.lhs].after(a, m.g), rhs);
        }))
      return AxiomReport::fail(tag_for(n, j == 1 ? "E4" : "E5", "E12." + std::to_string(j)), *w, detail);
  }

  if (s.level() == Level::Quandle) {
    // Diagonal sums (η + Στ)_{w..w}.
    std::vector<CoeffMap> diag_sum;
    for (Element w = 0; w < q; ++w) {
      const auto d = diagonal_index(q, n, w);
      CoeffMap sum = m.eta[d];
      for (const auto& t : m.taus) sum = sum.plus(a, t[d]);
      diag_sum.push_back(sum);
    }
    const auto& f = s.twist();
    for (int j = 1; j <= taus; ++j) {
      const auto& tau = m.taus[static_cast<std::size_t>(j - 1)];
      std::vector<Element> args(static_cast<std::size_t>(n)), fargs(static_cast<std::size_t>(n));
      for (TupleCounter it(q, static_cast<std::size_t>(n)); !it.done(); it.next()) {
        const auto v = it.value();
        for (int i = 0; i < n; ++i) fargs[static_cast<std::size_t>(i)] = f(v[static_cast<std::size_t>(i)]);
        const Element w = s(v);
        if (mismatch(tau[flat_index(q, fargs)].after(a, m.g), diag_sum[static_cast<std::size_t>(w)].after(a, tau[flat_index(q, v)])))
          return AxiomReport::fail(tag_for(n, j == 1 ? "E14" : "E15", "E14." + std::to_string(j)), {v.begin(), v.end()},
                                   detail);
      }
    }
    if (f.is_identity() && m.g.same_map(a, CoeffMap::identity(a))) {
      for (Element w = 0; w < q; ++w)
        if (mismatch(diag_sum[static_cast<std::size_t>(w)], CoeffMap::identity(a)))
          return AxiomReport::fail("Eid", std::vector<Element>(static_cast<std::size_t>(n), w), detail);
    }
  }
  return AxiomReport::pass();
}

AxiomReport check_generalized_2cocycle(const TwoCocycle& c, bool quandle_variant) {
  const ModuleStructure& m = c.module;
  m.validate_shape();
  const FStructure& s = m.base;
  const CoeffGroup& a = m.coeff;
  const int n = s.arity(), q = s.order();
  if (c.kappa.size() != m.eta.size()) throw DimensionError("kappa must have one value per base tuple");
  std::vector<CoeffElement> kappa;
  kappa.reserve(c.kappa.size());
  for (const auto& k : c.kappa) kappa.push_back(a.reduce(k));

  if (quandle_variant) {
    for (Element w = 0; w < q; ++w) {
      const auto& k = kappa[diagonal_index(q, n, w)];
      if (k != a.zero())
        return AxiomReport::fail("diagonal", std::vector<Element>(static_cast<std::size_t>(n), w), "kappa = " + render(k));
    }
  }

  std::string detail;
  if (auto w = for_each_frame(s, [&](const TupleFrame& t) {
        const auto lhs = a.add(m.eta[t.lhs].apply(a, kappa[t.x]), kappa[t.lhs]);
        auto rhs = a.add(m.eta[t.rhs].apply(a, kappa[t.slice[0]]), kappa[t.rhs]);
        for (int j = 1; j < n; ++j)
          rhs = a.add(rhs, m.taus[static_cast<std::size_t>(j - 1)][t.rhs].apply(a, kappa[t.slice[static_cast<std::size_t>(j)]]));
        if (lhs == rhs) return true;
        detail = "lhs " + render(lhs) + " != rhs " + render(rhs);
        return false;
      }))
    return AxiomReport::fail("E13", *w, detail);
  return AxiomReport::pass();
}

}  // namespace fq

#include "fq/extensions.hpp"

#include <algorithm>
#include <sstream>

namespace fq {

namespace {

CocycleReport fail(int condition, std::span<const Element> base, std::span<const Element> fiber, std::string detail) {
  CocycleReport r;
  r.passed = false;
  r.condition = condition;
  r.base_witness.assign(base.begin(), base.end());
  r.fiber_witness.assign(fiber.begin(), fiber.end());
  r.detail = std::move(detail);
  return r;
}

// Flat indices of (T(x), f(u)..), (T(x_1,u), .., T(x_n,u)) and (x_i, u) for
// a base tuple v = (x_1..x_n, u_1..u_{n-1}).
struct Frame {
  std::size_t x = 0, lhs = 0, rhs = 0;
  std::vector<std::size_t> slice;

  Frame(const FStructure& s, std::span<const Element> v) {
    const int n = s.arity(), q = s.order();
    const auto x_args = v.subspan(0, static_cast<std::size_t>(n));
    const auto u = v.subspan(static_cast<std::size_t>(n));
    std::vector<Element> l(static_cast<std::size_t>(n)), r(static_cast<std::size_t>(n)), args(static_cast<std::size_t>(n));
    x = flat_index(q, x_args);
    l[0] = s(x_args);
    for (int i = 1; i < n; ++i) l[static_cast<std::size_t>(i)] = s.twist()(u[static_cast<std::size_t>(i - 1)]);
    lhs = flat_index(q, l);
    for (int i = 0; i < n; ++i) {
      args[0] = x_args[static_cast<std::size_t>(i)];
      for (int j = 1; j < n; ++j) args[static_cast<std::size_t>(j)] = u[static_cast<std::size_t>(j - 1)];
      slice.push_back(flat_index(q, args));
      r[static_cast<std::size_t>(i)] = s(args);
    }
    rhs = flat_index(q, r);
  }
};

}  // namespace

void DynamicalCocycle::validate_shape() const {
  if (fiber_order < 1) throw DimensionError("fiber must be non-empty");
  const auto tuples = checked_pow(static_cast<std::size_t>(base.order()), static_cast<std::size_t>(base.arity()));
  if (alpha.size() != tuples) throw DimensionError("alpha must have one fiber operation per base tuple");
  for (const auto& op : alpha)
    if (op.arity() != base.arity() || op.order() != fiber_order)
      throw DimensionError("fiber operations must match the base arity and the fiber order");
  if (g.order() != fiber_order) throw DimensionError("fiber twist must act on the fiber");
}

std::string describe(const CocycleReport& report) {
  if (report.passed) return "pass";
  std::ostringstream os;
  os << "fail: condition " << report.condition << " at base (" << join_elements(report.base_witness) << ")";
  if (!report.fiber_witness.empty()) os << " fiber (" << join_elements(report.fiber_witness) << ")";
  if (!report.detail.empty()) os << ": " << report.detail;
  return os.str();
}

CocycleReport check_dynamical_cocycle(const DynamicalCocycle& d) {
  d.validate_shape();
  const FStructure& s = d.base;
  const int n = s.arity(), q = s.order(), fa = d.fiber_order;
  const auto un = static_cast<std::size_t>(n);

  for (Element x = 0; x < q; ++x) {
    const std::vector<Element> diag(un, x);
    const auto& op = d.alpha[flat_index(q, diag)];
    for (Element a = 0; a < fa; ++a) {
      const std::vector<Element> fiber(un, a);
      const Element got = op(fiber);
      if (got != d.g(a)) {
        std::ostringstream os;
        os << "alpha = " << got << " but g(a) = " << d.g(a);
        return fail(1, diag, std::vector<Element>{a}, os.str());
      }
    }
  }

  std::vector<char> seen(static_cast<std::size_t>(fa));
  for (std::size_t x = 0; x < d.alpha.size(); ++x) {
    const auto& op = d.alpha[x];
    for (TupleCounter tail(fa, un - 1); !tail.done(); tail.next()) {
      std::fill(seen.begin(), seen.end(), 0);
      const auto offset = op.column_offset(tail.value());
      for (Element a = 0; a < fa; ++a) {
        auto& hit = seen[static_cast<std::size_t>(op.at(offset + static_cast<std::size_t>(a)))];
        if (hit) {
          std::vector<Element> base(un);
          unflatten(q, x, base);
          std::vector<Element> fiber{a};
          fiber.insert(fiber.end(), tail.value().begin(), tail.value().end());
          return fail(2, base, fiber, "first fiber slot is not a bijection");
        }
        hit = 1;
      }
    }
  }

  std::vector<Element> inner(un), outer(un);
  for (TupleCounter bt(q, 2 * un - 1); !bt.done(); bt.next()) {
    const Frame fr(s, bt.value());
    const auto& lhs_op = d.alpha[fr.lhs];
    const auto& rhs_op = d.alpha[fr.rhs];
    const auto& x_op = d.alpha[fr.x];
    for (TupleCounter ft(fa, 2 * un - 1); !ft.done(); ft.next()) {
      const auto v = ft.value();
      const auto a = v.subspan(0, un);
      const auto e = v.subspan(un);
      outer[0] = x_op(a);
      for (std::size_t j = 1; j < un; ++j) outer[j] = d.g(e[j - 1]);
      const Element lhs = lhs_op(outer);
      for (std::size_t i = 0; i < un; ++i) {
        inner[0] = a[i];
        for (std::size_t j = 1; j < un; ++j) inner[j] = e[j - 1];
        outer[i] = d.alpha[fr.slice[i]](inner);
      }
      const Element rhs = rhs_op(outer);
      if (lhs != rhs) {
        std::ostringstream os;
        os << "lhs " << lhs << " != rhs " << rhs;
        return fail(3, bt.value(), v, os.str());
      }
    }
  }
  return {};
}

ExtensionResult build_extension(const DynamicalCocycle& d) {
  d.validate_shape();
  const FStructure& s = d.base;
  const int n = s.arity(), q = s.order();
  const int order = q * d.fiber_order;
  const auto un = static_cast<std::size_t>(n);
  std::vector<Element> xs(un), as(un);
  auto op = CayleyOp::from_function(n, order, [&](std::span<const Element> args) {
    for (std::size_t i = 0; i < un; ++i) {
      xs[i] = args[i] % q;
      as[i] = args[i] / q;
    }
    return encode_pair(q, s(xs), d.alpha[flat_index(q, xs)](as));
  });
  std::vector<Element> twist(static_cast<std::size_t>(order));
  for (Element p = 0; p < order; ++p) twist[static_cast<std::size_t>(p)] = encode_pair(q, s.twist()(p % q), d.g(p / q));
  RawStructure raw(std::move(op), Endomap(order, std::move(twist)));
  auto level = highest_level(raw);
  return {std::move(raw), level};
}

CocycleReport check_constant_cocycle(const FStructure& base, const std::vector<Permutation>& lambda, bool quandle_variant) {
  const int n = base.arity(), q = base.order();
  const auto un = static_cast<std::size_t>(n);
  if (lambda.size() != checked_pow(static_cast<std::size_t>(q), un))
    throw DimensionError("lambda must have one permutation per base tuple");
  for (const auto& p : lambda)
    if (p.order() != lambda.front().order()) throw DimensionError("lambda permutations must act on one set");

  if (quandle_variant) {
    for (Element x = 0; x < q; ++x) {
      const std::vector<Element> diag(un, x);
      if (!lambda[flat_index(q, diag)].is_identity()) return fail(1, diag, {}, "lambda on the diagonal is not the identity");
    }
  }
  for (TupleCounter bt(q, 2 * un - 1); !bt.done(); bt.next()) {
    const Frame fr(base, bt.value());
    const auto lhs = lambda[fr.lhs].after(lambda[fr.x]);
    const auto rhs = lambda[fr.rhs].after(lambda[fr.slice[0]]);
    if (lhs != rhs) {
      const auto& li = lhs.image();
      const auto& ri = rhs.image();
      const auto at = static_cast<Element>(std::mismatch(li.begin(), li.end(), ri.begin()).first - li.begin());
      std::ostringstream os;
      os << "lhs sends " << at << " to " << lhs(at) << ", rhs to " << rhs(at);
      return fail(3, bt.value(), std::vector<Element>{at}, os.str());
    }
  }
  return {};
}

DynamicalCocycle constant_to_dynamical(const FStructure& base, const std::vector<Permutation>& lambda) {
  if (lambda.empty()) throw DimensionError("lambda is empty");
  const int fa = lambda.front().order();
  std::vector<CayleyOp> alpha;
  alpha.reserve(lambda.size());
  for (const auto& p : lambda)
    alpha.push_back(CayleyOp::from_function(base.arity(), fa, [&](std::span<const Element> a) { return p(a[0]); }));
  return {base, fa, std::move(alpha), Endomap::identity(fa)};
}

DynamicalCocycle affine_dynamical_cocycle(const TwoCocycle& c) {
  const ModuleStructure& m = c.module;
  m.validate_shape();
  if (c.kappa.size() != m.eta.size()) throw DimensionError("kappa must have one value per base tuple");
  const CoeffGroup& a = m.coeff;
  const int fa = a.order();
  const int n = m.arity();
  std::vector<CoeffElement> elems;
  for (int i = 0; i < fa; ++i) elems.push_back(a.element(i));

  std::vector<CayleyOp> alpha;
  alpha.reserve(m.eta.size());
  for (std::size_t x = 0; x < m.eta.size(); ++x) {
    alpha.push_back(CayleyOp::from_function(n, fa, [&](std::span<const Element> args) {
      CoeffElement v = a.add(m.eta[x].apply(a, elems[static_cast<std::size_t>(args[0])]), c.kappa[x]);
      for (int j = 1; j < n; ++j)
        v = a.add(v, m.taus[static_cast<std::size_t>(j - 1)][x].apply(a, elems[static_cast<std::size_t>(args[static_cast<std::size_t>(j)])]));
      return static_cast<Element>(a.index(v));
    }));
  }
  std::vector<Element> g(static_cast<std::size_t>(fa));
  for (int i = 0; i < fa; ++i) g[static_cast<std::size_t>(i)] = a.index(m.g.apply(a, elems[static_cast<std::size_t>(i)]));
  return {m.base, fa, std::move(alpha), Endomap(fa, std::move(g))};
}

DynamicalCocycle extension_from_2cocycle(const TwoCocycle& c) {
  if (auto r = check_module_structure(c.module); !r)
    throw PreconditionError("module structure fails: " + describe(r));
  if (auto r = check_generalized_2cocycle(c, c.module.base.level() == Level::Quandle); !r)
    throw PreconditionError("not a generalized 2-cocycle: " + describe(r));
  return affine_dynamical_cocycle(c);
}

}  // namespace fq

#include "fq/structure.hpp"

#include <sstream>

namespace fq {

RawStructure::RawStructure(CayleyOp o, Endomap t) : op(std::move(o)), twist(std::move(t)) {
  if (op.order() != twist.order()) throw DimensionError("operation and twist have different orders");
}

AxiomReport AxiomReport::fail(std::string axiom, std::vector<Element> witness, std::string detail) {
  AxiomReport r;
  r.passed = false;
  r.axiom = std::move(axiom);
  r.witness = std::move(witness);
  r.detail = std::move(detail);
  return r;
}

std::string describe(const AxiomReport& report) {
  if (report.passed) return "pass";
  std::ostringstream os;
  os << "fail: " << report.axiom << " at (" << join_elements(report.witness) << ")";
  if (!report.detail.empty()) os << ": " << report.detail;
  return os.str();
}

ValidationError::ValidationError(AxiomReport report)
    : Error("validation failed: " + describe(report)), report_(std::move(report)) {}

FStructure FStructure::make(RawStructure raw, Level level) {
  auto report = check_axioms(raw, level);
  if (!report) throw ValidationError(std::move(report));
  return FStructure(std::move(raw), level);
}

FStructure FStructure::make_highest(RawStructure raw) {
  auto level = highest_level(raw);
  if (!level) throw ValidationError(check_axioms(raw, Level::Shelf));
  return FStructure(std::move(raw), *level);
}

FStructure FStructure::unchecked(RawStructure raw, Level level) { return FStructure(std::move(raw), level); }

namespace {

AxiomReport check_distributivity(const RawStructure& s) {
  const int n = s.arity();
  const int q = s.order();
  const auto& T = s.op;
  const auto un = static_cast<std::size_t>(n);
  std::vector<Element> buf(un);
  for (TupleCounter t(q, 2 * un - 1); !t.done(); t.next()) {
    auto v = t.value();
    auto xs = v.subspan(0, un);
    auto us = v.subspan(un, un - 1);
    buf[0] = T(xs);
    for (std::size_t j = 0; j + 1 < un; ++j) buf[j + 1] = s.twist(us[j]);
    const Element lhs = T(buf);
    const auto col = T.column_offset(us);
    for (std::size_t i = 0; i < un; ++i) buf[i] = T.at(col + static_cast<std::size_t>(xs[i]));
    const Element rhs = T(buf);
    if (lhs != rhs) {
      std::ostringstream os;
      os << "lhs " << lhs << " != rhs " << rhs;
      return AxiomReport::fail("f-distributivity", {v.begin(), v.end()}, os.str());
    }
  }
  return AxiomReport::pass();
}

AxiomReport check_translations(const RawStructure& s) {
  const int q = s.order();
  const auto tail_len = static_cast<std::size_t>(s.arity() - 1);
  for (TupleCounter t(q, tail_len); !t.done(); t.next()) {
    auto result = right_translation(s, t.value());
    if (const auto* c = std::get_if<Collision>(&result)) {
      std::vector<Element> w(t.value().begin(), t.value().end());
      w.push_back(c->first);
      w.push_back(c->second);
      std::ostringstream os;
      os << "T(" << c->first << ", tail) = T(" << c->second << ", tail) = " << c->image;
      return AxiomReport::fail("right-translation-bijective", std::move(w), os.str());
    }
  }
  return AxiomReport::pass();
}

AxiomReport check_idempotence(const RawStructure& s) {
  std::vector<Element> diag(static_cast<std::size_t>(s.arity()));
  for (Element x = 0; x < s.order(); ++x) {
    std::fill(diag.begin(), diag.end(), x);
    if (s.op(diag) != s.twist(x)) {
      std::ostringstream os;
      os << "T(x,...,x) = " << s.op(diag) << " but twist(x) = " << s.twist(x);
      return AxiomReport::fail("idempotence", {x}, os.str());
    }
  }
  return AxiomReport::pass();
}

AxiomReport check_crossed(const RawStructure& s) {
  for (Element x = 0; x < s.order(); ++x) {
    for (Element y = 0; y < s.order(); ++y) {
      if (s.op({y, x}) == s.twist(y) && s.op({x, y}) != s.twist(x)) {
        return AxiomReport::fail("crossed-set", {x, y}, "y*x = f(y) but x*y != f(x)");
      }
    }
  }
  return AxiomReport::pass();
}

}  // namespace

AxiomReport check_axioms(const RawStructure& s, Level level) {
  if (level == Level::CrossedSet && s.arity() != 2) {
    throw UnsupportedError("crossed-set level requires a binary operation");
  }
  if (auto r = check_distributivity(s); !r) return r;
  if (level == Level::Shelf) return AxiomReport::pass();
  if (auto r = check_translations(s); !r) return r;
  if (level == Level::Rack) return AxiomReport::pass();
  if (auto r = check_idempotence(s); !r) return r;
  if (level == Level::Quandle) return AxiomReport::pass();
  return check_crossed(s);
}

std::optional<Level> highest_level(const RawStructure& s) {
  if (!check_distributivity(s)) return std::nullopt;
  if (!check_translations(s)) return Level::Shelf;
  if (!check_idempotence(s)) return Level::Rack;
  return Level::Quandle;
}

std::variant<Permutation, Collision> right_translation(const RawStructure& s, std::span<const Element> tail) {
  const int q = s.order();
  if (tail.size() != static_cast<std::size_t>(s.arity() - 1)) {
    throw ArityError("right translation tail must have arity-1 elements");
  }
  for (auto a : tail) {
    if (a < 0 || a >= q) throw DimensionError("right translation tail element out of range");
  }
  const auto col = s.op.column_offset(tail);
  std::vector<Element> image(static_cast<std::size_t>(q));
  std::vector<Element> preimage(static_cast<std::size_t>(q), -1);
  for (Element x = 0; x < q; ++x) {
    const Element y = s.op.at(col + static_cast<std::size_t>(x));
    if (preimage[static_cast<std::size_t>(y)] >= 0) return Collision{preimage[static_cast<std::size_t>(y)], x, y};
    preimage[static_cast<std::size_t>(y)] = x;
    image[static_cast<std::size_t>(x)] = y;
  }
  return Permutation(std::move(image));
}

AxiomReport is_medial(const RawStructure& s) {
  const auto n = static_cast<std::size_t>(s.arity());
  const auto& T = s.op;
  std::vector<Element> inner(n);
  std::vector<Element> outer(n);
  for (TupleCounter t(s.order(), n * n); !t.done(); t.next()) {
    auto m = t.value();
    for (std::size_t i = 0; i < n; ++i) outer[i] = T(m.subspan(i * n, n));
    const Element lhs = T(outer);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < n; ++i) inner[i] = m[i * n + j];
      outer[j] = T(inner);
    }
    const Element rhs = T(outer);
    if (lhs != rhs) {
      std::ostringstream os;
      os << "row-first " << lhs << " != column-first " << rhs;
      return AxiomReport::fail("mediality", {m.begin(), m.end()}, os.str());
    }
  }
  return AxiomReport::pass();
}

AxiomReport is_morphism(const CarrierMap& phi, const RawStructure& s1, const RawStructure& s2) {
  if (s1.arity() != s2.arity()) throw DimensionError("morphism between structures of different arity");
  if (phi.domain() != s1.order() || phi.codomain() != s2.order()) {
    throw DimensionError("map domain/codomain does not match the structures' carriers");
  }
  const auto n = static_cast<std::size_t>(s1.arity());
  std::vector<Element> mapped(n);
  for (TupleCounter t(s1.order(), n); !t.done(); t.next()) {
    auto xs = t.value();
    for (std::size_t i = 0; i < n; ++i) mapped[i] = phi(xs[i]);
    if (phi(s1.op(xs)) != s2.op(mapped)) {
      return AxiomReport::fail("operation-compatibility", {xs.begin(), xs.end()});
    }
  }
  for (Element x = 0; x < s1.order(); ++x) {
    if (phi(s1.twist(x)) != s2.twist(phi(x))) return AxiomReport::fail("twist-compatibility", {x});
  }
  return AxiomReport::pass();
}

AxiomReport is_isomorphism(const CarrierMap& phi, const RawStructure& s1, const RawStructure& s2) {
  auto r = is_morphism(phi, s1, s2);
  if (!r) return r;
  if (!phi.is_bijective()) {
    std::vector<int> hits(static_cast<std::size_t>(phi.codomain()), -1);
    for (Element x = 0; x < phi.domain(); ++x) {
      auto& h = hits[static_cast<std::size_t>(phi(x))];
      if (h >= 0) return AxiomReport::fail("bijectivity", {h, x}, "map is not injective");
      h = x;
    }
    return AxiomReport::fail("bijectivity", {}, "map is not surjective");
  }
  return AxiomReport::pass();
}

AxiomReport twist_is_endomorphism(const RawStructure& s) { return is_morphism(CarrierMap(s.twist), s, s); }

}  // namespace fq

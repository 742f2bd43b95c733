#include "fq/constructions.hpp"

#include <numeric>
#include <sstream>

namespace fq {

int mod_reduce(long long value, int modulus) {
  auto r = value % modulus;
  if (r < 0) r += modulus;
  return static_cast<int>(r);
}

int gcd_int(int a, int b) { return std::gcd(a, b); }

AffineParams::AffineParams(int m, std::vector<int> c) : modulus(m), coeffs(std::move(c)) {
  if (modulus < 1) throw DimensionError("affine modulus must be positive");
  if (coeffs.size() < 2) throw ArityError("affine structure needs at least two coefficients");
  for (auto& s : coeffs) s = mod_reduce(s, modulus);
}

int AffineParams::coefficient_sum() const {
  long long total = 0;
  for (auto s : coeffs) total += s;
  return mod_reduce(total, modulus);
}

FStructure trivial_f_quandle(int order, const Endomap& f, int arity, Level level) {
  if (f.order() != order) throw DimensionError("twist order does not match carrier");
  auto op = CayleyOp::from_function(arity, order, [&](std::span<const Element> x) { return f(x[0]); });
  return FStructure::make(std::move(op), f, level);
}

FStructure conjugation_f_quandle(const FiniteGroupTable& g, const Endomap& f) {
  if (!g.is_endomorphism(f)) throw PreconditionError("twist is not a group endomorphism");
  auto op = CayleyOp::from_function(2, g.order(), [&](std::span<const Element> a) {
    return g.mul(g.mul(g.inverse(a[1]), a[0]), f(a[1]));
  });
  return FStructure::make(std::move(op), f, Level::Quandle);
}

FStructure dihedral_f_quandle(int modulus, int a, int b) {
  if (modulus < 1) throw DimensionError("modulus must be positive");
  if (gcd_int(mod_reduce(a, modulus), modulus) != 1) {
    std::ostringstream os;
    os << a << " is not a unit modulo " << modulus;
    throw PreconditionError(os.str());
  }
  auto op = CayleyOp::from_function(2, modulus, [&](std::span<const Element> x) {
    return mod_reduce(2LL * a * x[1] - static_cast<long long>(a) * x[0] + b, modulus);
  });
  std::vector<Element> twist(static_cast<std::size_t>(modulus));
  for (Element x = 0; x < modulus; ++x) twist[static_cast<std::size_t>(x)] = mod_reduce(1LL * a * x + b, modulus);
  return FStructure::make(std::move(op), Endomap(modulus, std::move(twist)), Level::Quandle);
}

FStructure affine_structure(const AffineParams& p, const std::optional<Endomap>& twist_override) {
  const int m = p.modulus;
  auto op = CayleyOp::from_function(p.arity(), m, [&](std::span<const Element> x) {
    long long acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += 1LL * p.coeffs[i] * x[i];
    return mod_reduce(acc, m);
  });
  Endomap twist = twist_override.value_or([&] {
    std::vector<Element> t(static_cast<std::size_t>(m));
    for (Element x = 0; x < m; ++x) t[static_cast<std::size_t>(x)] = mod_reduce(1LL * p.coefficient_sum() * x, m);
    return Endomap(m, std::move(t));
  }());
  return FStructure::make_highest(RawStructure(std::move(op), std::move(twist)));
}

FStructure heap_f_quandle(const FiniteGroupTable& g, const Endomap& f) {
  if (!g.is_endomorphism(f)) throw PreconditionError("twist is not a group endomorphism");
  auto op = CayleyOp::from_function(3, g.order(), [&](std::span<const Element> a) {
    return f(g.mul(g.mul(a[0], g.inverse(a[1])), a[2]));
  });
  return FStructure::make(std::move(op), f, Level::Quandle);
}

FStructure induced_from_binary(const FStructure& binary, int target_arity) {
  if (binary.arity() != 2) throw ArityError("induced structure needs a binary input");
  if (target_arity < 2) throw ArityError("target arity must be at least 2");
  if (auto r = check_axioms(binary, Level::Quandle); !r) throw PreconditionError("input is not a binary f-quandle: " + describe(r));
  const int q = binary.order();
  const auto& f = binary.twist();
  std::vector<Endomap> powers{Endomap::identity(q)};
  for (int k = 1; k < target_arity; ++k) powers.push_back(f.after(powers.back()));

  auto op = CayleyOp::from_function(target_arity, q, [&](std::span<const Element> x) {
    Element acc = binary({x[0], x[1]});
    for (std::size_t i = 2; i < x.size(); ++i) acc = binary({acc, powers[i - 1](x[i])});
    return acc;
  });
  const auto& alpha = powers[static_cast<std::size_t>(target_arity - 1)];
  auto result = [&] {
    try {
      return FStructure::make(std::move(op), alpha, Level::Quandle);
    } catch (const ValidationError& e) {
      throw Error(std::string("internal consistency: induced structure failed validation: ") + e.what());
    }
  }();

  if (target_arity == 3) {
    // R_{a,b} = R_{f(b)} ∘ R_a; with f = id this is R_b ∘ R_a.
    for (Element a = 0; a < q; ++a)
      for (Element b = 0; b < q; ++b)
        for (Element x = 0; x < q; ++x)
          if (result({x, a, b}) != binary({binary({x, a}), f(b)})) {
            throw Error("internal consistency: R_{a,b} != R_{f(b)} o R_a");
          }
  }
  return result;
}

YauTwistResult yau_twist(const FStructure& s, const Endomap& beta) {
  if (beta.order() != s.order()) throw DimensionError("beta order does not match carrier");
  if (auto r = is_morphism(CarrierMap(beta), s, s); !r) {
    throw PreconditionError("beta is not a morphism of the structure: " + describe(r));
  }
  std::vector<Element> table(s.op().table().size());
  for (std::size_t i = 0; i < table.size(); ++i) table[i] = beta(s.op().at(i));
  RawStructure raw(CayleyOp(s.arity(), s.order(), std::move(table)), beta.after(s.twist()));

  const bool downgrade = s.level() != Level::Shelf && !beta.is_bijective();
  const Level target = downgrade ? Level::Shelf : s.level();
  try {
    return {FStructure::make(std::move(raw), target), downgrade};
  } catch (const ValidationError& e) {
    throw Error(std::string("internal consistency: twisted structure failed validation: ") + e.what());
  }
}

}  // namespace fq

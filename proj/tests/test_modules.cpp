#include <fstream>
#include <random>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "fq/cohomology.hpp"
#include "fq/constructions.hpp"
#include "fq/enumeration.hpp"
#include "fq/extensions.hpp"
#include "fq/fixtures.hpp"
#include "fq/format.hpp"
#include "fq/modules.hpp"
#include "oracles.hpp"

using namespace fq;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(FQ_DATA_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

FStructure alexander3() { return affine_structure(AffineParams(3, {2, 1, 1})); }

TwoCocycle with_kappa(const ModuleStructure& m, const std::vector<std::int64_t>& k) {
  std::vector<CoeffElement> kappa;
  for (auto v : k) kappa.push_back({v});
  return TwoCocycle{m, kappa};
}

DynamicalCocycle from_function(const FStructure& base, int fiber, const Endomap& g,
                               const std::function<Element(std::span<const Element>, std::span<const Element>)>& fn) {
  std::vector<CayleyOp> alpha;
  for (TupleCounter x(base.order(), static_cast<std::size_t>(base.arity())); !x.done(); x.next()) {
    std::vector<Element> xs(x.value().begin(), x.value().end());
    alpha.push_back(CayleyOp::from_function(base.arity(), fiber, [&](std::span<const Element> a) { return fn(xs, a); }));
  }
  // TupleCounter runs first coordinate most significant; reorder to flat index.
  std::vector<CayleyOp> flat(alpha.size(), alpha.front());
  std::size_t i = 0;
  for (TupleCounter x(base.order(), static_cast<std::size_t>(base.arity())); !x.done(); x.next(), ++i)
    flat[flat_index(base.order(), x.value())] = alpha[i];
  return DynamicalCocycle{base, fiber, flat, g};
}

}  // namespace

TEST_SUITE("modules") {
  TEST_CASE("coefficient groups and maps") {
    const CoeffGroup a({2, 4});
    CHECK(a.order() == 8);
    CHECK(a.element(5) == CoeffElement{1, 2});
    CHECK(a.index({1, 2}) == 5);
    CHECK(a.reduce({3, -1}) == CoeffElement{1, 3});
    const CoeffMap m(a, {1, 0, 2, 1});
    CHECK(m.apply(a, {1, 1}) == CoeffElement{1, 3});
    CHECK(m.is_bijective(a));
    CHECK_FALSE(CoeffMap::scalar(a, 2).is_bijective(a));
    // Z_4 -> Z_2 entry 1 is fine, Z_2 -> Z_4 entry 1 is not a homomorphism.
    CHECK_THROWS(CoeffMap(a, {1, 1, 1, 1}));
    CHECK(CoeffMap::scalar(a, 3).same_map(a, CoeffMap(a, {1, 0, 0, 3})));
  }

  TEST_CASE("Alexander module over the ternary Z3 base") {
    CHECK(check_module_structure(ModuleStructure::alexander(alexander3(), 3, {2, 1, 1})));
  }

  TEST_CASE("eta = tau, mu = 0 over the trivial base needs g = 2") {
    const auto base = trivial_f_quandle(3, Endomap::identity(3), 3);
    int passing = 0;
    for (int g = 0; g < 3; ++g) {
      const auto r = check_module_structure(ModuleStructure::scalar(base, 3, 1, {1, 0}, g));
      if (r) {
        ++passing;
        CHECK(g == 2);
      }
    }
    CHECK(passing == 1);
  }

  TEST_CASE("identity-only module degenerates") {
    for (const auto& base : {oracle::tau12(), alexander3()})
      CHECK(check_module_structure(ModuleStructure::scalar(base, 3, 1, {0, 0}, 1)));
  }

  TEST_CASE("module failures carry a tag") {
    const auto r = check_module_structure(ModuleStructure::scalar(alexander3(), 3, 0, {1, 1}, 2));
    REQUIRE_FALSE(r);
    CHECK(r.axiom == "automorphism");
    // tau g = (eta + tau + mu) tau reads 2 = 0.
    const auto e = check_module_structure(ModuleStructure::scalar(alexander3(), 3, 1, {1, 1}, 2));
    REQUIRE_FALSE(e);
    CHECK(e.axiom.rfind("E", 0) == 0);
  }

  TEST_CASE("zero and coboundary 2-cocycles pass") {
    const auto m = ModuleStructure::alexander(alexander3(), 3, {2, 1, 1});
    CHECK(check_generalized_2cocycle(with_kappa(m, std::vector<std::int64_t>(27, 0)), true));
    const auto params = ScalarModuleParams::ternary(3, 2, 1, 1);
    for (const std::vector<std::int64_t>& phi : {std::vector<std::int64_t>{1, 0, 0}, {0, 2, 1}}) {
      auto c = Cochain::zero(1, 3, 3, 3);
      c.values = phi;
      CHECK(check_generalized_2cocycle(with_kappa(m, coboundary_apply(alexander3(), params, c).values), false));
    }
  }

  TEST_CASE("2-cocycle condition agrees with delta^2 pointwise") {
    const auto s = alexander3();
    const auto m = ModuleStructure::alexander(s, 3, {2, 1, 1});
    std::mt19937 rng(31);
    std::uniform_int_distribution<std::int64_t> d(0, 2);
    const auto h2 = cohomology_group(s, ScalarModuleParams::ternary(3, 2, 1, 1), 2);
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<std::int64_t> k(27);
      if (trial % 2 == 0) {
        for (auto& v : k) v = d(rng);
      } else {
        for (const auto& b : h2.kernel_basis) {
          const auto c = d(rng);
          for (std::size_t i = 0; i < 27; ++i) k[i] = (k[i] + c * b[i]) % 3;
        }
      }
      bool zero = true;
      for (auto v : oracle::delta2_ternary(s.raw(), 3, 2, 1, 1, k)) zero = zero && v == 0;
      CHECK(static_cast<bool>(check_generalized_2cocycle(with_kappa(m, k), false)) == zero);
    }
  }

  TEST_CASE("diagonal condition in the quandle variant") {
    const auto m = ModuleStructure::alexander(alexander3(), 3, {2, 1, 1});
    std::vector<std::int64_t> k(27, 0);
    k[0] = 1;
    const auto r = check_generalized_2cocycle(with_kappa(m, k), true);
    REQUIRE_FALSE(r);
  }
}

TEST_SUITE("extensions") {
  TEST_CASE("projection cocycle gives the product") {
    const auto d = from_function(oracle::tau12(), 1, Endomap::identity(1), [](auto, auto a) { return a[0]; });
    CHECK(check_dynamical_cocycle(d));
    const auto ext = build_extension(d);
    CHECK(ext.level == Level::Quandle);
    CHECK(are_isomorphic(ext.raw, oracle::tau12().raw()));

    const auto p2 = from_function(oracle::tau12(), 2, Endomap::identity(2), [](auto, auto a) { return a[0]; });
    CHECK(check_dynamical_cocycle(p2));
    CHECK(build_extension(p2).level == Level::Quandle);
  }

  TEST_CASE("a + b violates the diagonal condition") {
    const auto base = trivial_f_quandle(1, Endomap::identity(1), 3);
    const auto d = from_function(base, 2, Endomap::identity(2), [](auto, auto a) { return (a[0] + a[1]) % 2; });
    const auto r = check_dynamical_cocycle(d);
    REQUIRE_FALSE(r);
    CHECK(r.condition == 1);
    REQUIRE_FALSE(r.fiber_witness.empty());
    CHECK(r.fiber_witness.front() == 1);
    CHECK(build_extension(d).level != Level::Quandle);
  }

  TEST_CASE("extension pairs are encoded base first") {
    CHECK(encode_pair(3, 2, 1) == 5);
    const auto m = ModuleStructure::alexander(alexander3(), 3, {2, 1, 1});
    const auto d = extension_from_2cocycle(with_kappa(m, std::vector<std::int64_t>(27, 0)));
    const auto ext = build_extension(d);
    CHECK(ext.raw.order() == 9);
    CHECK(ext.level == Level::Quandle);
    // Second coordinate is 2a + b + c.
    const Element e = ext.raw.op({encode_pair(3, 0, 1), encode_pair(3, 1, 1), encode_pair(3, 2, 2)});
    CHECK(e == encode_pair(3, alexander3()({0, 1, 2}), (2 + 1 + 2) % 3));
  }

  TEST_CASE("extensions from kernel cocycles are quandles, non-cocycles are refused") {
    const auto s = alexander3();
    const auto m = ModuleStructure::alexander(s, 3, {2, 1, 1});
    const auto basis = cohomology_group(s, ScalarModuleParams::ternary(3, 2, 1, 1), 2).kernel_basis;
    for (const auto& b : basis) {
      const auto d = extension_from_2cocycle(with_kappa(m, b));
      CHECK(check_dynamical_cocycle(d));
      CHECK(build_extension(d).level == Level::Quandle);
      CHECK(oracle::satisfies(build_extension(d).raw, Level::Quandle));
    }
    std::vector<std::int64_t> bad(27, 0);
    bad[5] = 1;
    CHECK_THROWS_AS(extension_from_2cocycle(with_kappa(m, bad)), PreconditionError);
    const auto d = affine_dynamical_cocycle(with_kappa(m, bad));
    CHECK(static_cast<bool>(check_dynamical_cocycle(d)) == (build_extension(d).level == Level::Quandle));
  }

  TEST_CASE("cohomologous cocycles give isomorphic extensions") {
    const auto s = alexander3();
    const auto m = ModuleStructure::alexander(s, 3, {2, 1, 1});
    const auto params = ScalarModuleParams::ternary(3, 2, 1, 1);
    const auto kappa = cohomology_group(s, params, 2).kernel_basis.front();
    auto phi = Cochain::zero(1, 3, 3, 3);
    phi.values = {1, 2, 0};
    const auto delta = coboundary_apply(s, params, phi).values;
    std::vector<std::int64_t> shifted(27);
    for (std::size_t i = 0; i < 27; ++i) shifted[i] = (kappa[i] + delta[i]) % 3;
    const auto a = build_extension(extension_from_2cocycle(with_kappa(m, kappa)));
    const auto b = build_extension(extension_from_2cocycle(with_kappa(m, shifted)));
    CHECK(are_isomorphic(a.raw, b.raw));
  }

  TEST_CASE("biconditional over small bases and sampled fibers") {
    SearchConfig cfg;
    cfg.order = 2;
    cfg.arity = 3;
    std::mt19937 rng(41);
    std::uniform_int_distribution<int> bit(0, 1);
    for (const auto& base : enumerate(cfg)) {
      for (int trial = 0; trial < 40; ++trial) {
        std::vector<CayleyOp> alpha;
        for (int x = 0; x < 8; ++x) {
          std::vector<Element> t(8);
          for (auto& v : t) v = bit(rng);
          alpha.emplace_back(3, 2, t);
        }
        const Endomap g(2, {bit(rng), bit(rng)});
        const DynamicalCocycle d{base, 2, alpha, g};
        CHECK(static_cast<bool>(check_dynamical_cocycle(d)) == (build_extension(d).level == Level::Quandle));
      }
    }
  }

  TEST_CASE("constant cocycles") {
    const auto tau = oracle::tau12();
    std::vector<Permutation> id(27, Permutation::identity(2));
    CHECK(check_constant_cocycle(tau, id, true));
    std::vector<Permutation> swap(27, Permutation({1, 0}));
    CHECK(check_constant_cocycle(tau, swap, false));
    const auto r = check_constant_cocycle(tau, swap, true);
    REQUIRE_FALSE(r);
    CHECK(r.condition == 1);

    const auto fixture = parse_constant_fixture(slurp("lambda_tau12.json"));
    bool nonconstant = false;
    for (const auto& p : fixture.lambda) nonconstant = nonconstant || !(p == fixture.lambda.front());
    CHECK(nonconstant);
    CHECK(check_constant_cocycle(fixture.base, fixture.lambda, true));
    const auto d = constant_to_dynamical(fixture.base, fixture.lambda);
    CHECK(check_dynamical_cocycle(d));
    CHECK(build_extension(d).level == Level::Quandle);
  }
}

TEST_SUITE("fixtures") {
  TEST_CASE("shipped 2-cocycle fixture") {
    const auto c = parse_cocycle_fixture(slurp("alexander_z3_cocycle.json"));
    CHECK(c.module.base.raw() == alexander3().raw());
    CHECK(check_module_structure(c.module));
    CHECK(check_generalized_2cocycle(c, true));
    const auto again = parse_cocycle_fixture(to_fixture_json(c));
    CHECK(again.kappa == c.kappa);
    CHECK(again.module.base == c.module.base);
  }

  TEST_CASE("fixture dispatch and errors") {
    CHECK(std::holds_alternative<ConstantCocycleFixture>(parse_any_fixture(slurp("lambda_tau12.json"))));
    CHECK(std::holds_alternative<TwoCocycle>(parse_any_fixture(slurp("alexander_z3_cocycle.json"))));
    CHECK_THROWS_AS(parse_any_fixture("{"), ParseError);
    CHECK_THROWS_AS(parse_cocycle_fixture("{\"base\": \"fq v1\"}"), ParseError);
    const nlohmann::json tau_mu{{"base", to_text(alexander3())}, {"coeff", {3}}, {"eta", 2}, {"tau", 1},
                                {"mu", 1},  {"g", 1},                        {"kappa", "zero"}};
    CHECK(check_module_structure(parse_cocycle_fixture(tau_mu.dump()).module));
  }
}

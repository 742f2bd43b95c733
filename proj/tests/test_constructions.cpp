#include <vector>

#include "doctest.h"
#include "fq/constructions.hpp"
#include "fq/enumeration.hpp"
#include "fq/format.hpp"
#include "oracles.hpp"

using namespace fq;

TEST_SUITE("constructions") {
  TEST_CASE("trivial f-quandles") {
    CHECK(trivial_f_quandle(3, Endomap::identity(3), 3).level() == Level::Quandle);
    const auto swap = trivial_f_quandle(2, Endomap(2, {1, 0}), 2);
    CHECK(swap({0, 1}) == 1);
    CHECK(oracle::satisfies(swap.raw(), Level::Quandle));
    CHECK_THROWS_AS(trivial_f_quandle(3, Endomap::constant(3, 0), 3), ValidationError);
    const auto shelf = trivial_f_quandle(3, Endomap::constant(3, 0), 3, Level::Shelf);
    CHECK(shelf.level() == Level::Shelf);
  }

  TEST_CASE("group examples") {
    const auto s3 = FiniteGroupTable::symmetric(3);
    CHECK(conjugation_f_quandle(s3, Endomap::identity(6)).level() == Level::Quandle);
    const auto z3 = conjugation_f_quandle(FiniteGroupTable::cyclic(3), Endomap::identity(3));
    CHECK(z3.raw() == trivial_f_quandle(3, Endomap::identity(3)).raw());
    // Conjugation by a transposition is a group automorphism.
    Element t = 1;
    CHECK(conjugation_f_quandle(s3, s3.conjugation_by(t)).level() == Level::Quandle);
    CHECK_THROWS_AS(conjugation_f_quandle(s3, Endomap(6, {1, 0, 2, 3, 4, 5})), PreconditionError);
    CHECK_THROWS(FiniteGroupTable(2, {0, 0, 0, 0}));
  }

  TEST_CASE("dihedral f-quandles") {
    const auto r3 = dihedral_f_quandle(3, 1, 0);
    CHECK(r3.twist().is_identity());
    CHECK(r3({1, 0}) == 2);
    const auto d5 = dihedral_f_quandle(5, 2, 1);
    CHECK(d5.twist().table() == std::vector<Element>{1, 3, 0, 2, 4});
    CHECK(oracle::satisfies(d5.raw(), Level::Quandle));
    CHECK_THROWS_AS(dihedral_f_quandle(4, 2, 0), PreconditionError);
  }

  TEST_CASE("affine structures") {
    const auto a = affine_structure(AffineParams(3, {2, 1, 1}));
    CHECK(a.level() == Level::Quandle);
    CHECK(a.twist().is_identity());
    const auto binary = affine_structure(AffineParams(3, {1, 2}), Endomap::constant(3, 0));
    CHECK(binary.twist().table() == std::vector<Element>{0, 0, 0});
    CHECK(oracle::satisfies(binary.raw(), binary.level()));
    const auto z2 = affine_structure(AffineParams(2, {1, 1, 1}));
    CHECK(z2({1, 1, 0}) == 0);
    CHECK(z2.twist().is_identity());
    // Rack level holds iff S_1 is a unit.
    for (int s1 = 0; s1 < 4; ++s1) {
      const auto s = affine_structure(AffineParams(4, {s1, 1, 1}));
      CHECK((s.level() != Level::Shelf) == (s1 % 2 == 1));
    }
  }

  TEST_CASE("heap f-quandles") {
    const auto z2 = heap_f_quandle(FiniteGroupTable::cyclic(2), Endomap::identity(2));
    CHECK(z2.raw() == affine_structure(AffineParams(2, {1, 1, 1})).raw());
    const auto z3 = heap_f_quandle(FiniteGroupTable::cyclic(3), Endomap::identity(3));
    CHECK(z3.level() == Level::Quandle);
    CHECK(z3({2, 1, 0}) == 1);
    const auto s3 = heap_f_quandle(FiniteGroupTable::symmetric(3), Endomap::identity(6));
    CHECK(s3.level() == Level::Quandle);
    CHECK_FALSE(is_medial(s3));
    for (Element x = 0; x < 6; ++x)
      for (Element y = 0; y < 6; ++y) {
        CHECK(s3({x, y, y}) == x);
        CHECK(s3({y, y, x}) == x);
      }
  }

  TEST_CASE("induced structures") {
    const auto r3 = dihedral_f_quandle(3, 1, 0);
    const auto t = induced_from_binary(r3, 3);
    for (TupleCounter c(3, 3); !c.done(); c.next()) CHECK(t(c.value()) == mod_reduce(2 * c[2] - 2 * c[1] + c[0], 3));
    // R_{a,b} = R_b ∘ R_a.
    for (Element a = 0; a < 3; ++a)
      for (Element b = 0; b < 3; ++b)
        for (Element x = 0; x < 3; ++x) CHECK(t({x, a, b}) == r3({r3({x, a}), b}));

    const auto d5 = dihedral_f_quandle(5, 2, 1);
    const auto t5 = induced_from_binary(d5, 3);
    for (Element x = 0; x < 5; ++x) CHECK(t5({x, x, x}) == d5.twist()(d5.twist()(x)));
    CHECK(induced_from_binary(d5, 4).twist() == d5.twist().power(3));

    const auto triv = trivial_f_quandle(3, Endomap::identity(3));
    CHECK(induced_from_binary(triv, 4).raw() == trivial_f_quandle(3, Endomap::identity(3), 4).raw());
  }

  TEST_CASE("induced binary Alexander agrees with the affine formula") {
    for (int m = 2; m <= 7; ++m)
      for (int t = 1; t < m; ++t) {
        if (gcd_int(t, m) != 1) continue;
        for (int s = 0; s < m; ++s) {
          const auto bin = affine_structure(AffineParams(m, {t, s}));
          if (bin.level() != Level::Quandle) continue;
          const auto induced = induced_from_binary(bin, 3);
          const int f = mod_reduce(t + s, m);
          const auto expected = affine_structure(AffineParams(m, {t * t % m, t * s % m, s * f % m}),
                                                 Endomap(m, [&] {
                                                   std::vector<Element> v;
                                                   for (int x = 0; x < m; ++x) v.push_back(mod_reduce(f * f * x, m));
                                                   return v;
                                                 }()));
          CHECK(induced.raw() == expected.raw());
        }
      }
  }

  TEST_CASE("Yau twist") {
    const auto a = affine_structure(AffineParams(3, {2, 1, 1}));
    CHECK(yau_twist(a, Endomap::identity(3)).structure.raw() == a.raw());
    const auto doubled = yau_twist(a, Endomap(3, {0, 2, 1}));
    CHECK(doubled.structure.level() == Level::Quandle);
    CHECK(doubled.structure.twist().table() == std::vector<Element>{0, 2, 1});
    CHECK_FALSE(doubled.downgraded);

    const auto collapse = yau_twist(a, Endomap::constant(3, 0));
    CHECK(collapse.downgraded);
    CHECK(collapse.structure.level() == Level::Shelf);

    for (const auto& beta : all_endomaps(3)) {
      if (is_morphism(beta, oracle::tau12(), oracle::tau12())) {
        CHECK(yau_twist(oracle::tau12(), beta).structure.level() == (beta.is_bijective() ? Level::Quandle : Level::Shelf));
      } else {
        CHECK_THROWS_AS(yau_twist(oracle::tau12(), beta), PreconditionError);
      }
    }
  }

  TEST_CASE("Yau twist of the classical ternary quandle from R3 by x+1") {
    const auto r3 = dihedral_f_quandle(3, 1, 0);
    const auto cls = induced_from_binary(r3, 3);
    const Endomap shift(3, {1, 2, 0});
    const bool morphism = static_cast<bool>(is_morphism(shift, cls, cls));
    CHECK(morphism);
    if (morphism) {
      CHECK(yau_twist(cls, shift).structure.level() == Level::Quandle);
    } else {
      CHECK_THROWS_AS(yau_twist(cls, shift), PreconditionError);
    }
    // A non-morphism is refused and the refusal agrees with is_morphism.
    const Endomap bad(3, {0, 0, 1});
    CHECK_FALSE(is_morphism(bad, cls, cls));
    CHECK_THROWS_AS(yau_twist(cls, bad), PreconditionError);
  }

  TEST_CASE("every construction round-trips through text") {
    std::vector<FStructure> all{
        trivial_f_quandle(3, Endomap::identity(3), 3),
        dihedral_f_quandle(5, 2, 1),
        affine_structure(AffineParams(3, {2, 1, 1})),
        heap_f_quandle(FiniteGroupTable::symmetric(3), Endomap::identity(6)),
        conjugation_f_quandle(FiniteGroupTable::symmetric(3), Endomap::identity(6)),
        induced_from_binary(dihedral_f_quandle(3, 1, 0), 4),
    };
    for (const auto& s : all) {
      CHECK(parse_text(to_text(s)) == s.raw());
      CHECK(parse_json(to_json(s)) == s.raw());
    }
  }
}

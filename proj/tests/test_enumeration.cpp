#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "fq/constructions.hpp"
#include "fq/enumeration.hpp"
#include "fq/format.hpp"
#include "fq/perm_columns.hpp"
#include "oracles.hpp"

using namespace fq;

namespace {

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);)
    if (!normalize_whitespace(line).empty()) out.push_back(line);
  return out;
}

SearchConfig ternary(int order, TwistPolicy twists = TwistPolicy::All) {
  SearchConfig cfg;
  cfg.order = order;
  cfg.arity = 3;
  cfg.twists = twists;
  cfg.workers = 4;
  return cfg;
}

}  // namespace

TEST_SUITE("enumeration") {
  TEST_CASE("order 1 has exactly one structure") {
    CHECK(enumerate(ternary(1)).size() == 1);
    auto cfg = ternary(1);
    cfg.arity = 2;
    CHECK(enumerate(cfg).size() == 1);
  }

  TEST_CASE("order 2 matches the naive filter exactly") {
    for (bool require : {true, false}) {
      auto cfg = ternary(2);
      cfg.morphism = require ? MorphismPolicy::Require : MorphismPolicy::None;
      std::set<std::pair<std::vector<Element>, std::vector<Element>>> pruned, naive;
      for (const auto& s : enumerate(cfg)) pruned.insert({s.twist().table(), s.op().table()});
      for (const auto& s : oracle::naive_ternary_quandles(2, require)) naive.insert({s.twist.table(), s.op.table()});
      CHECK(pruned == naive);
    }
  }

  TEST_CASE("binary order 3 matches a naive filter") {
    SearchConfig cfg;
    cfg.order = 3;
    cfg.arity = 2;
    cfg.morphism = MorphismPolicy::None;
    std::set<std::vector<Element>> pruned, naive;
    for (const auto& s : enumerate(cfg)) {
      auto key = s.twist().table();
      key.insert(key.end(), s.op().table().begin(), s.op().table().end());
      pruned.insert(key);
    }
    oracle::each_tuple(3, 3, [&](const std::vector<Element>& f) {
      oracle::each_tuple(3, 9, [&](const std::vector<Element>& t) {
        const RawStructure s(CayleyOp(2, 3, t), Endomap(3, f));
        if (oracle::satisfies(s, Level::Quandle)) {
          auto key = f;
          key.insert(key.end(), t.begin(), t.end());
          naive.insert(key);
        }
        return true;
      });
      return true;
    });
    CHECK(pruned == naive);
  }

  TEST_CASE("output is independent of the worker count and sorted") {
    auto cfg = ternary(3);
    cfg.workers = 1;
    const auto one = enumerate(cfg);
    cfg.workers = 7;
    const auto many = enumerate(cfg);
    CHECK(one == many);
    CHECK(std::is_sorted(one.begin(), one.end(), [](const FStructure& a, const FStructure& b) {
      return std::tie(a.twist().table(), a.op().table()) < std::tie(b.twist().table(), b.op().table());
    }));
  }

  TEST_CASE("every order 2 structure is re-validated independently") {
    for (const auto& s : enumerate(ternary(2))) CHECK(oracle::satisfies(s.raw(), Level::Quandle));
  }

  TEST_CASE("a sample of order 3 structures is re-validated independently") {
    const auto all = enumerate(ternary(3));
    for (std::size_t i = 0; i < all.size(); i += 37) {
      CHECK(oracle::satisfies(all[i].raw(), Level::Quandle));
      CHECK(oracle::twist_commutes(all[i].raw()));
    }
  }

  TEST_CASE("order 2 classifies into six classes") {
    const auto classes = classify(enumerate(ternary(2)));
    CHECK(classes.size() == 6);
    for (std::size_t i = 0; i < classes.size(); ++i)
      for (std::size_t j = i + 1; j < classes.size(); ++j)
        CHECK_FALSE(are_isomorphic(classes[i].representative, classes[j].representative));
  }

  TEST_CASE("order 3 classifies into 84 classes, 30 with identity twist") {
    const auto all = enumerate(ternary(3));
    const auto classes = classify(all);
    CHECK(classes.size() == 84);
    std::size_t id = 0, total = 0;
    for (const auto& c : classes) {
      id += c.twist_is_identity ? 1 : 0;
      total += c.class_size;
    }
    CHECK(id == 30);
    CHECK(total == all.size());
    CHECK(classify(enumerate(ternary(3, TwistPolicy::Identity))).size() == 30);
  }

  TEST_CASE("guardrail refuses large ternary orders") {
    auto cfg = ternary(5);
    CHECK_THROWS_AS(enumerate(cfg), GuardrailError);
    cfg.arity = 4;
    CHECK_THROWS_AS(enumerate(cfg), ArityError);
    CHECK(estimate_search_log10(ternary(9)) > 100);
  }

  TEST_CASE("canonical form") {
    const auto tau = oracle::tau12();
    const Permutation swap12({1, 0, 2});
    const auto relabeled = relabel(tau, swap12);
    CHECK(canonical_form(relabeled) == canonical_form(tau));
    CHECK(canonical_form(canonical_form(tau)) == canonical_form(tau));
    const auto witness = are_isomorphic(tau, relabeled);
    REQUIRE(witness);
    CHECK(is_isomorphism(*witness, tau, relabeled));
    CHECK(are_isomorphic(tau, tau));

    const auto x = affine_structure(AffineParams(2, {1, 0, 0}));
    const auto x1 = affine_structure(AffineParams(2, {1, 0, 0}), Endomap(2, {1, 0}));
    CHECK_FALSE(canonical_form(x) == canonical_form(x1));
  }

  TEST_CASE("canonical form equality matches a naive isomorphism test") {
    const auto classes = classify(enumerate(ternary(2)));
    std::vector<FStructure> sample;
    for (const auto& s : enumerate(ternary(2))) sample.push_back(s);
    for (const auto& a : sample)
      for (const auto& b : sample)
        CHECK((canonical_form(a) == canonical_form(b)) == oracle::isomorphic(a.raw(), b.raw()));
  }

  TEST_CASE("classify is invariant under shuffling and relabeling") {
    auto all = enumerate(ternary(3));
    const auto reference = classify(all);
    std::mt19937 rng(3);
    std::shuffle(all.begin(), all.end(), rng);
    const Permutation sigma({2, 0, 1});
    for (auto& s : all) s = relabel(s, sigma);
    const auto again = classify(all);
    REQUIRE(again.size() == reference.size());
    for (std::size_t i = 0; i < again.size(); ++i) {
      CHECK(again[i].representative == reference[i].representative);
      CHECK(again[i].class_size == reference[i].class_size);
    }
  }

  TEST_CASE("permutation columns") {
    CHECK(to_permutation_columns(oracle::tau12()) == "(1),(12),(13); (12),(1),(23); (13),(23),(1)");
    CHECK(to_permutation_columns(trivial_f_quandle(3, Endomap::identity(3), 3)) == "(1),(1),(1); (1),(1),(1); (1),(1),(1)");
    CHECK(render_cycles(Permutation({1, 2, 0}), CycleStyle::Spaced) == "(1 2 3)");
    CHECK(parse_cycles("(1 3)", 3).image() == std::vector<Element>{2, 1, 0});
    CHECK_THROWS_AS(parse_cycles("(1 4)", 3), ParseError);
    CHECK_THROWS_AS(parse_permutation_columns("(1),(12); (1)"), ParseError);
    for (const auto& s : enumerate(ternary(3)))
      CHECK(parse_permutation_columns(to_permutation_columns(s), s.twist()) == s.raw());
  }

  TEST_CASE("golden tables are quandles, pairwise distinct, and cover the 84 classes") {
    std::vector<RawStructure> rows;
    for (const char* file : {"table3.txt", "table4.txt"})
      for (const auto& line : read_lines(std::string(FQ_DATA_DIR) + "/" + file)) rows.push_back(parse_permutation_columns(line));
    REQUIRE(rows.size() == 84);
    std::set<RawStructure, decltype([](const RawStructure& a, const RawStructure& b) {
               return std::tie(a.twist.table(), a.op.table()) < std::tie(b.twist.table(), b.op.table());
             })>
        canon;
    for (const auto& r : rows) {
      CHECK(check_axioms(r, Level::Quandle));
      canon.insert(canonical_form(r));
    }
    CHECK(canon.size() == 84);
    std::size_t covered = 0;
    for (const auto& c : classify(enumerate(ternary(3)))) covered += canon.count(c.representative.raw());
    CHECK(covered == 84);
  }
}

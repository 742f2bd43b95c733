#include "fq/fixtures.hpp"

#include "fq/format.hpp"
#include "json.hpp"

namespace fq {

namespace {

using nlohmann::json;

json parse_document(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed fixture JSON: ") + e.what());
  }
}

FStructure parse_base(const json& j) {
  const auto& b = j.at("base");
  RawStructure raw = b.is_string() ? parse_any(b.get<std::string>()) : parse_any(b.dump());
  return FStructure::make_highest(std::move(raw));
}

CoeffMap parse_map(const CoeffGroup& a, const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s.rfind("scalar:", 0) != 0) throw ParseError("coefficient map must be \"scalar:<int>\" or a k*k list: " + s);
    try {
      return CoeffMap::scalar(a, std::stoll(s.substr(7)));
    } catch (const std::logic_error&) {
      throw ParseError("bad scalar coefficient: " + s);
    }
  }
  if (j.is_number_integer()) return CoeffMap::scalar(a, j.get<std::int64_t>());
  return CoeffMap(a, j.get<std::vector<std::int64_t>>());
}

std::vector<CoeffMap> parse_family(const CoeffGroup& a, const json& j, std::size_t tuples) {
  if (j.is_array() && !j.empty() && j.front().is_array()) {
    if (j.size() != tuples) throw ParseError("tuple-indexed family has " + std::to_string(j.size()) + " entries, expected " +
                                             std::to_string(tuples));
    std::vector<CoeffMap> out;
    for (const auto& e : j) out.push_back(parse_map(a, e));
    return out;
  }
  return std::vector<CoeffMap>(tuples, parse_map(a, j));
}

json map_json(const CoeffGroup& a, const CoeffMap& m) {
  if (a.rank() == 1) return "scalar:" + std::to_string(m(0, 0));
  return m.entries();
}

json family_json(const CoeffGroup& a, const std::vector<CoeffMap>& fam) {
  bool uniform = true;
  for (const auto& m : fam) uniform = uniform && m.same_map(a, fam.front());
  if (uniform && a.rank() == 1) return map_json(a, fam.front());
  json out = json::array();
  for (const auto& m : fam) out.push_back(m.entries());
  return out;
}

template <class F>
auto guarded(F&& body) {
  try {
    return body();
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed fixture: ") + e.what());
  }
}

}  // namespace

TwoCocycle parse_cocycle_fixture(std::string_view text) {
  const json j = parse_document(text);
  return guarded([&] {
    FStructure base = parse_base(j);
    const CoeffGroup a(j.at("coeff").get<std::vector<std::int64_t>>());
    const auto tuples = checked_pow(static_cast<std::size_t>(base.order()), static_cast<std::size_t>(base.arity()));
    auto eta = parse_family(a, j.at("eta"), tuples);
    std::vector<std::vector<CoeffMap>> taus;
    if (j.contains("taus")) {
      for (const auto& t : j.at("taus")) taus.push_back(parse_family(a, t, tuples));
    } else if (base.arity() == 3 && j.contains("tau") && j.contains("mu")) {
      taus.push_back(parse_family(a, j.at("tau"), tuples));
      taus.push_back(parse_family(a, j.at("mu"), tuples));
    } else {
      throw ParseError("fixture needs \"taus\" (or \"tau\" and \"mu\" for arity 3)");
    }
    CoeffMap g = parse_map(a, j.at("g"));
    std::vector<CoeffElement> kappa(tuples, a.zero());
    if (j.contains("kappa") && !(j.at("kappa").is_string() && j.at("kappa").get<std::string>() == "zero")) {
      const auto& k = j.at("kappa");
      if (k.size() != tuples) throw ParseError("kappa needs one value per base tuple");
      for (std::size_t i = 0; i < tuples; ++i)
        kappa[i] = a.reduce(k[i].is_array() ? k[i].get<CoeffElement>() : CoeffElement{k[i].get<std::int64_t>()});
    }
    ModuleStructure m{std::move(base), a, std::move(eta), std::move(taus), std::move(g)};
    m.validate_shape();
    return TwoCocycle{std::move(m), std::move(kappa)};
  });
}

std::string to_fixture_json(const TwoCocycle& c) {
  const auto& m = c.module;
  nlohmann::ordered_json j;
  j["base"] = to_text(m.base);
  j["coeff"] = m.coeff.moduli();
  j["eta"] = family_json(m.coeff, m.eta);
  json taus = json::array();
  for (const auto& t : m.taus) taus.push_back(family_json(m.coeff, t));
  j["taus"] = taus;
  j["g"] = map_json(m.coeff, m.g);
  bool zero = true;
  for (const auto& k : c.kappa) zero = zero && k == m.coeff.zero();
  if (zero) {
    j["kappa"] = "zero";
  } else {
    j["kappa"] = c.kappa;
  }
  return j.dump(1);
}

ConstantCocycleFixture parse_constant_fixture(std::string_view text) {
  const json j = parse_document(text);
  return guarded([&] {
    FStructure base = parse_base(j);
    std::vector<Permutation> lambda;
    for (const auto& p : j.at("lambda")) {
      try {
        lambda.emplace_back(p.get<std::vector<Element>>());
      } catch (const Error& e) {
        throw ParseError(std::string("lambda entry is not a permutation: ") + e.what());
      }
    }
    return ConstantCocycleFixture{std::move(base), std::move(lambda)};
  });
}

std::string to_fixture_json(const ConstantCocycleFixture& c) {
  nlohmann::ordered_json j;
  j["base"] = to_text(c.base);
  json lambda = json::array();
  for (const auto& p : c.lambda) lambda.push_back(p.image());
  j["lambda"] = lambda;
  return j.dump(1);
}

std::variant<TwoCocycle, ConstantCocycleFixture> parse_any_fixture(std::string_view text) {
  const json j = parse_document(text);
  if (j.is_object() && j.contains("lambda")) return parse_constant_fixture(text);
  return parse_cocycle_fixture(text);
}

}  // namespace fq

#include "fq/reproduce.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "fq/cohomology.hpp"
#include "fq/constructions.hpp"
#include "fq/enumeration.hpp"
#include "fq/extensions.hpp"
#include "fq/format.hpp"
#include "fq/modular.hpp"
#include "fq/modules.hpp"
#include "fq/perm_columns.hpp"

namespace fq {

namespace {

using Clock = std::chrono::steady_clock;
using Vec = std::vector<std::int64_t>;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt_seconds(double s) {
  std::ostringstream os;
  os.precision(3);
  os << s << "s";
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> nonempty_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") != std::string::npos) out.push_back(line);
  }
  return out;
}

bool in_span(const std::vector<Vec>& basis, const Vec& v, std::int64_t p) {
  auto with = basis;
  with.push_back(v);
  return independent_subset_mod_p(with, p).size() == independent_subset_mod_p(basis, p).size();
}

bool same_span(const std::vector<Vec>& a, const std::vector<Vec>& b, std::int64_t p) {
  for (const auto& v : b)
    if (!in_span(a, v, p)) return false;
  for (const auto& v : a)
    if (!in_span(b, v, p)) return false;
  return true;
}

SearchConfig ternary_config(int order, MorphismPolicy policy, int workers) {
  SearchConfig cfg;
  cfg.order = order;
  cfg.arity = 3;
  cfg.twists = TwistPolicy::All;
  cfg.morphism = policy;
  cfg.level = Level::Quandle;
  cfg.workers = workers;
  return cfg;
}

struct RawLess {
  bool operator()(const RawStructure& a, const RawStructure& b) const {
    if (a.twist.table() != b.twist.table()) return a.twist.table() < b.twist.table();
    return a.op.table() < b.op.table();
  }
};
using RawSet = std::set<RawStructure, RawLess>;

RawSet canonical_classes(const std::vector<IsoClassReport>& classes) {
  RawSet out;
  for (const auto& c : classes) out.insert(canonical_form(c.representative.raw()));
  return out;
}

FStructure z2_formula(const std::function<int(int, int, int)>& t) {
  auto op = CayleyOp::from_function(3, 2, [&](std::span<const Element> a) { return t(a[0], a[1], a[2]) % 2; });
  std::vector<Element> f{op({0, 0, 0}), op({1, 1, 1})};
  return FStructure::make(std::move(op), Endomap(2, std::move(f)), Level::Quandle);
}

CriterionResult c1() {
  CriterionResult r{"C1", "order-2 classification", false, {}, 0};
  const auto t0 = Clock::now();
  const auto classes = classify(enumerate(ternary_config(2, MorphismPolicy::Require, 1)));
  const auto reps = canonical_classes(classes);
  const std::vector<std::pair<std::string, std::function<int(int, int, int)>>> formulas{
      {"x", [](int x, int, int) { return x; }},
      {"x+1", [](int x, int, int) { return x + 1; }},
      {"x+y", [](int x, int y, int) { return x + y; }},
      {"x+z", [](int x, int, int z) { return x + z; }},
      {"x+y+z", [](int x, int y, int z) { return x + y + z; }},
      {"x+y+z+1", [](int x, int y, int z) { return x + y + z + 1; }},
  };
  RawSet hit;
  std::vector<std::string> missing;
  for (const auto& [name, fn] : formulas) {
    const auto canon = canonical_form(z2_formula(fn).raw());
    if (!reps.contains(canon)) missing.push_back(name);
    hit.insert(canon);
  }
  r.seconds = seconds_since(t0);
  r.passed = classes.size() == 6 && hit.size() == 6 && missing.empty() && r.seconds < 1.0;
  std::ostringstream os;
  os << classes.size() << " classes (expected 6); formulas hit " << hit.size() << " distinct classes";
  if (!missing.empty()) os << "; missing " << missing.size();
  os << "; " << fmt_seconds(r.seconds);
  r.detail = os.str();
  return r;
}

CriterionResult c2(const AcceptanceOptions& opt) {
  CriterionResult r{"C2", "order-3 classification", false, {}, 0};
  const auto t0 = Clock::now();
  auto t = Clock::now();
  const auto single = classify(enumerate(ternary_config(3, MorphismPolicy::Require, 1)));
  const double single_s = seconds_since(t);
  t = Clock::now();
  const auto parallel = classify(enumerate(ternary_config(3, MorphismPolicy::Require, opt.workers)));
  const double parallel_s = seconds_since(t);
  const auto unrestricted = classify(enumerate(ternary_config(3, MorphismPolicy::None, 1)));
  auto id_count = [](const std::vector<IsoClassReport>& cs) {
    std::size_t n = 0;
    for (const auto& c : cs) n += c.twist_is_identity ? 1 : 0;
    return n;
  };
  const bool deterministic = canonical_classes(single) == canonical_classes(parallel);
  r.seconds = seconds_since(t0);
  r.passed = single.size() == 84 && id_count(single) == 30 && deterministic && single_s < 300 && parallel_s < 60;
  std::ostringstream os;
  os << "require-morphism: " << single.size() << " classes, " << id_count(single) << " identity twist; no-morphism: "
     << unrestricted.size() << " classes, " << id_count(unrestricted) << " identity twist; 1 worker " << fmt_seconds(single_s)
     << ", " << opt.workers << " workers " << fmt_seconds(parallel_s) << (deterministic ? "" : "; worker counts disagree");
  r.detail = os.str();
  return r;
}

std::vector<RawStructure> load_table(const std::string& path) {
  std::vector<RawStructure> rows;
  for (const auto& line : nonempty_lines(read_file(path))) rows.push_back(parse_permutation_columns(line));
  return rows;
}

CriterionResult c3(const AcceptanceOptions& opt) {
  CriterionResult r{"C3", "table fidelity", false, {}, 0};
  const auto t0 = Clock::now();
  auto rows = load_table(opt.data_dir + "/table3.txt");
  const std::size_t n3 = rows.size();
  for (auto& row : load_table(opt.data_dir + "/table4.txt")) rows.push_back(std::move(row));

  std::size_t axiom_failures = 0;
  for (const auto& row : rows) axiom_failures += check_axioms(row, Level::Quandle) ? 0 : 1;
  std::size_t iso_pairs = 0;
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = i + 1; j < rows.size(); ++j) iso_pairs += are_isomorphic(rows[i], rows[j]) ? 1 : 0;
  RawSet table_set;
  for (const auto& row : rows) table_set.insert(canonical_form(row));
  const auto classes = canonical_classes(classify(enumerate(ternary_config(3, MorphismPolicy::Require, opt.workers))));
  const bool covers = table_set == classes;
  r.seconds = seconds_since(t0);
  r.passed = axiom_failures == 0 && iso_pairs == 0 && covers;
  std::ostringstream os;
  os << rows.size() << " rows (" << n3 << " + " << rows.size() - n3 << "); " << axiom_failures << " fail quandle axioms; "
     << iso_pairs << " isomorphic pairs; class set " << (covers ? "equal" : "differs") << " (" << table_set.size() << " vs "
     << classes.size() << ")";
  r.detail = os.str();
  return r;
}

CriterionResult c4(const AcceptanceOptions& opt) {
  CriterionResult r{"C4", "table 2 rendering", false, {}, 0};
  const auto t0 = Clock::now();
  const auto tau12 = parse_any(read_file(opt.data_dir + "/tau12.fq"));
  const std::string expected = "(1),(12),(13); (12),(1),(23); (13),(23),(1)";
  const std::string got = to_permutation_columns(tau12);
  r.seconds = seconds_since(t0);
  r.passed = normalize_whitespace(got) == normalize_whitespace(expected);
  r.detail = "rendered \"" + got + "\"";
  return r;
}

CriterionResult c5() {
  CriterionResult r{"C5", "ternary cohomology", false, {}, 0};
  const auto t0 = Clock::now();
  const auto s = affine_structure(AffineParams(3, {2, 1, 1}));
  const auto params = ScalarModuleParams::ternary(3, 2, 1, 1);
  const auto h1 = cohomology_group(s, params, 1);
  const auto h2 = cohomology_group(s, params, 2);
  const bool span_ok = same_span(h1.kernel_basis, {{2, 1, 0}, {2, 0, 1}}, 3);
  r.seconds = seconds_since(t0);
  r.passed = h1.h_dim == 2u && span_ok && h2.dim_im_prev == 1 && h2.dim_ker == 3 && h2.h_dim == 2u && r.seconds < 1.0;
  std::ostringstream os;
  os << "H1 " << *h1.h_dim << " (expected 2), span " << (span_ok ? "equal" : "differs") << "; im d1 " << h2.dim_im_prev
     << " (expected 1); ker d2 " << h2.dim_ker << " (expected 3); H2 " << *h2.h_dim << " (expected 2); " << fmt_seconds(r.seconds);
  r.detail = os.str();
  return r;
}

CriterionResult c6() {
  CriterionResult r{"C6", "binary cohomology", false, {}, 0};
  const auto t0 = Clock::now();
  const auto s = affine_structure(AffineParams(3, {1, 2}), Endomap::constant(3, 0));
  const auto params = ScalarModuleParams::binary(3, 1, 2);
  const auto h1 = cohomology_group(s, params, 1);
  const auto h2 = cohomology_group(s, params, 2);
  const bool h1_contains = in_span(h1.kernel_basis, {0, 1, 2}, 3);
  // χ_(1,2) − χ_(2,1); (x1, x2) sits at x1 + 3 x2.
  Vec psi(9, 0);
  psi[1 + 3 * 2] = 1;
  psi[2 + 3 * 1] = 2;
  const bool psi_cocycle = in_span(h2.kernel_basis, psi, 3);
  const bool psi_nontrivial = !in_span(h2.image_basis, psi, 3);
  r.seconds = seconds_since(t0);
  r.passed = h1.h_dim == 1u && h1_contains && h2.h_dim == 1u && psi_cocycle && psi_nontrivial && r.seconds < 1.0;
  std::ostringstream os;
  os << "H1 " << *h1.h_dim << " (expected 1), contains chi_1+2chi_2: " << (h1_contains ? "yes" : "no") << "; H2 " << *h2.h_dim
     << " (expected 1), ker d2 " << h2.dim_ker << ", im d1 " << h2.dim_im_prev;
  if (h2.unrestricted_difference) os << ", dim ker d2 - rank d1 = " << *h2.unrestricted_difference;
  os << "; chi_(1,2)-chi_(2,1) cocycle " << (psi_cocycle ? "yes" : "no") << ", nonzero class " << (psi_nontrivial ? "yes" : "no")
     << "; " << fmt_seconds(r.seconds);
  r.detail = os.str();
  return r;
}

CriterionResult c7(const AcceptanceOptions& opt) {
  CriterionResult r{"C7", "complex property", false, {}, 0};
  const auto t0 = Clock::now();
  const auto classes = classify(enumerate(ternary_config(3, MorphismPolicy::Require, opt.workers)));
  std::size_t cases = 0, failures = 0, full_failures = 0, module_valid = 0;
  for (const auto& c : classes) {
    for (std::int64_t p : {1, 2})
      for (std::int64_t q = 0; q < 3; ++q)
        for (std::int64_t rr = 0; rr < 3; ++rr) {
          const auto params = ScalarModuleParams::ternary(3, p, q, rr);
          ++cases;
          if (!verify_complex(c.representative, params, 3, {true})) ++failures;
          if (!verify_complex(c.representative, params, 3, {false})) ++full_failures;
          const auto m = ModuleStructure::scalar(c.representative, 3, p, {q, rr}, params.g_value());
          if (check_module_structure(m)) ++module_valid;
        }
  }
  r.seconds = seconds_since(t0);
  r.passed = failures == 0 && r.seconds < 120;
  std::ostringstream os;
  os << cases << " (structure, module) cases; d^{p+1}d^p != 0 on twist-compatible cochains: " << failures
     << "; on all cochains: " << full_failures << "; module equations hold for " << module_valid << "; "
     << fmt_seconds(r.seconds);
  r.detail = os.str();
  return r;
}

CriterionResult c8() {
  CriterionResult r{"C8", "Yau twist property", false, {}, 0};
  const auto t0 = Clock::now();
  std::size_t checked = 0, failures = 0, bijective_failures = 0;
  for (int order = 1; order <= 3; ++order) {
    for (const auto& s : enumerate(ternary_config(order, MorphismPolicy::Require, 1))) {
      for (const auto& beta : all_endomaps(order)) {
        if (!is_morphism(CarrierMap(beta), s, s)) continue;
        ++checked;
        const RawStructure twisted(
            CayleyOp::from_function(3, order, [&](std::span<const Element> a) { return beta(s(a)); }),
            beta.after(s.twist()));
        if (!check_axioms(twisted, Level::Quandle)) {
          ++failures;
          if (beta.is_bijective()) ++bijective_failures;
        }
      }
    }
  }
  r.seconds = seconds_since(t0);
  r.passed = failures == 0;
  std::ostringstream os;
  os << checked << " (structure, morphism) pairs; " << failures << " twisted structures fail quandle axioms, "
     << bijective_failures << " of them with bijective beta";
  r.detail = os.str();
  return r;
}

CriterionResult c9() {
  CriterionResult r{"C9", "extension biconditional", false, {}, 0};
  const auto t0 = Clock::now();
  const auto s = affine_structure(AffineParams(3, {2, 1, 1}));
  const auto module = ModuleStructure::alexander(s, 3, {2, 1, 1});
  const auto params = ScalarModuleParams::ternary(3, 2, 1, 1);
  const auto basis = cohomology_group(s, params, 2).kernel_basis;
  const CoeffGroup& a = module.coeff;

  auto to_kappa = [&](const Vec& v) {
    std::vector<CoeffElement> k;
    for (auto x : v) k.push_back({x});
    return TwoCocycle{module, std::move(k)};
  };

  std::size_t cocycles = 0, cocycle_failures = 0, mismatches = 0;
  const std::size_t combos = checked_pow(3, basis.size());
  for (std::size_t c = 0; c < combos; ++c) {
    Vec v(27, 0);
    std::size_t rest = c;
    for (const auto& b : basis) {
      const auto coef = static_cast<std::int64_t>(rest % 3);
      rest /= 3;
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = (v[i] + coef * b[i]) % 3;
    }
    ++cocycles;
    const auto cocycle = to_kappa(v);
    bool ok = static_cast<bool>(check_generalized_2cocycle(cocycle, true));
    if (ok) {
      const auto d = extension_from_2cocycle(cocycle);
      const bool dyn = static_cast<bool>(check_dynamical_cocycle(d));
      const bool quandle = build_extension(d).level == Level::Quandle;
      if (dyn != quandle) ++mismatches;
      ok = dyn && quandle;
    }
    if (!ok) ++cocycle_failures;
  }

  std::mt19937 rng(20240611);
  std::uniform_int_distribution<int> digit(0, a.moduli()[0] - 1);
  std::size_t random_total = 0, random_failures = 0;
  while (random_total < 100) {
    Vec v(27);
    for (auto& x : v) x = digit(rng);
    const auto cocycle = to_kappa(v);
    if (check_generalized_2cocycle(cocycle, false)) continue;
    ++random_total;
    const auto d = affine_dynamical_cocycle(cocycle);
    const bool dyn = static_cast<bool>(check_dynamical_cocycle(d));
    const bool quandle = build_extension(d).level == Level::Quandle;
    if (dyn != quandle) ++mismatches;
    if (dyn && quandle) ++random_failures;
  }
  r.seconds = seconds_since(t0);
  r.passed = cocycle_failures == 0 && random_failures == 0 && mismatches == 0;
  std::ostringstream os;
  os << cocycles << " cocycles in ker d2 (dim " << basis.size() << "): " << cocycle_failures << " fail to give a quandle; "
     << random_total << " random non-cocycles: " << random_failures << " still give a quandle; biconditional mismatches "
     << mismatches << "; " << fmt_seconds(r.seconds);
  r.detail = os.str();
  return r;
}

CriterionResult c10() {
  CriterionResult r{"C10", "oracle equivalence", false, {}, 0};
  const auto t0 = Clock::now();
  bool all = true;
  std::ostringstream os;
  for (auto policy : {MorphismPolicy::Require, MorphismPolicy::None}) {
    const auto cfg = ternary_config(2, policy, 1);
    const auto pruned = enumerate(cfg);
    const auto brute = enumerate_brute_force(cfg);
    RawSet a, b;
    for (const auto& s : pruned) a.insert(s.raw());
    for (const auto& s : brute) b.insert(s.raw());
    const bool eq = a == b && pruned.size() == a.size() && brute.size() == b.size();
    all = all && eq;
    os << to_string(policy) << ": pruned " << pruned.size() << ", brute force " << brute.size() << (eq ? " equal" : " differ")
       << "; ";
  }
  r.seconds = seconds_since(t0);
  r.passed = all;
  os << fmt_seconds(r.seconds);
  r.detail = os.str();
  return r;
}

}  // namespace

std::vector<std::string> criterion_ids() { return {"C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10"}; }

CriterionResult run_criterion(const std::string& id, const AcceptanceOptions& options) {
  const std::map<std::string, std::function<CriterionResult()>> table{
      {"C1", [] { return c1(); }},
      {"C2", [&] { return c2(options); }},
      {"C3", [&] { return c3(options); }},
      {"C4", [&] { return c4(options); }},
      {"C5", [] { return c5(); }},
      {"C6", [] { return c6(); }},
      {"C7", [&] { return c7(options); }},
      {"C8", [] { return c8(); }},
      {"C9", [] { return c9(); }},
      {"C10", [] { return c10(); }},
  };
  const auto it = table.find(id);
  if (it == table.end()) throw PreconditionError("unknown criterion " + id);
  try {
    return it->second();
  } catch (const std::exception& e) {
    return {id, "error", false, std::string("exception: ") + e.what(), 0};
  }
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
  std::vector<CriterionResult> out;
  for (const auto& id : options.only.empty() ? criterion_ids() : options.only) out.push_back(run_criterion(id, options));
  return out;
}

std::string format_results(const std::vector<CriterionResult>& results) {
  std::ostringstream os;
  for (const auto& r : results) os << (r.passed ? "PASS " : "FAIL ") << r.id << " " << r.title << ": " << r.detail << "\n";
  return os.str();
}

}  // namespace fq

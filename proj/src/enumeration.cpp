#include "fq/enumeration.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <sstream>
#include <thread>

#include "fq/perm_columns.hpp"

namespace fq {

std::string_view to_string(TwistPolicy p) {
  switch (p) {
    case TwistPolicy::All: return "all";
    case TwistPolicy::Identity: return "identity";
    case TwistPolicy::Bijective: return "bijective";
  }
  return "?";
}

std::string_view to_string(MorphismPolicy p) { return p == MorphismPolicy::Require ? "require" : "none"; }

std::optional<TwistPolicy> parse_twist_policy(std::string_view text) {
  if (text == "all") return TwistPolicy::All;
  if (text == "identity" || text == "id") return TwistPolicy::Identity;
  if (text == "bijective") return TwistPolicy::Bijective;
  return std::nullopt;
}

std::optional<MorphismPolicy> parse_morphism_policy(std::string_view text) {
  if (text == "require") return MorphismPolicy::Require;
  if (text == "none") return MorphismPolicy::None;
  return std::nullopt;
}

namespace {

std::vector<Endomap> twists_for(const SearchConfig& cfg) {
  std::vector<Endomap> out;
  for (auto& f : all_endomaps(cfg.order)) {
    if (cfg.twists == TwistPolicy::Identity && !f.is_identity()) continue;
    if (cfg.twists == TwistPolicy::Bijective && !f.is_bijective()) continue;
    out.push_back(std::move(f));
  }
  return out;
}

void validate_config(const SearchConfig& cfg) {
  if (cfg.order < 1) throw DimensionError("order must be at least 1");
  if (cfg.arity != 2 && cfg.arity != 3) throw ArityError("enumeration supports arity 2 and 3 only");
  if (cfg.level == Level::CrossedSet) throw UnsupportedError("enumeration levels are shelf, rack and quandle");
  if (cfg.arity == 3 && cfg.order > kTernaryOrderGuardrail && !cfg.force) {
    std::ostringstream os;
    os << "refusing to enumerate arity-3 order " << cfg.order << " (limit " << kTernaryOrderGuardrail
       << " without force); estimated search size ~10^" << static_cast<long long>(std::ceil(estimate_search_log10(cfg)))
       << " nodes";
    throw GuardrailError(os.str());
  }
}

// Backtracking over right-translation columns for one fixed twist.
class ColumnSearch {
 public:
  ColumnSearch(const SearchConfig& cfg, const Endomap& f) : cfg_(cfg), f_(f), q_(cfg.order), n_(cfg.arity) {
    columns_ = static_cast<int>(checked_pow(static_cast<std::size_t>(q_), static_cast<std::size_t>(n_ - 1)));
    tails_.resize(static_cast<std::size_t>(columns_));
    ftail_.resize(static_cast<std::size_t>(columns_));
    for (int c = 0; c < columns_; ++c) {
      auto& t = tails_[static_cast<std::size_t>(c)];
      t.resize(static_cast<std::size_t>(n_ - 1));
      unflatten(q_, static_cast<std::size_t>(c), t);
      std::vector<Element> ft(t.size());
      for (std::size_t i = 0; i < t.size(); ++i) ft[i] = f_(t[i]);
      ftail_[static_cast<std::size_t>(c)] = static_cast<int>(flat_index(q_, ft));
    }
    std::vector<std::vector<Element>> pool;
    if (cfg.level == Level::Shelf) {
      for (auto& e : all_endomaps(q_)) pool.push_back(e.table());
    } else {
      for (auto& p : all_permutations(q_)) pool.push_back(p.image());
    }
    candidates_.resize(static_cast<std::size_t>(columns_));
    for (int c = 0; c < columns_; ++c) {
      const auto& t = tails_[static_cast<std::size_t>(c)];
      const bool diagonal = cfg.level == Level::Quandle && std::all_of(t.begin(), t.end(), [&](Element v) { return v == t[0]; });
      for (const auto& cand : pool) {
        if (diagonal && cand[static_cast<std::size_t>(t[0])] != f_(t[0])) continue;
        candidates_[static_cast<std::size_t>(c)].push_back(cand);
      }
    }
    table_.assign(static_cast<std::size_t>(q_ * columns_), -1);
  }

  [[nodiscard]] std::size_t first_column_choices() const { return candidates_[0].size(); }

  /// Runs the subtree whose first column is candidate `first`.
  void run(std::size_t first, std::vector<FStructure>& out) {
    out_ = &out;
    std::fill(table_.begin(), table_.end(), -1);
    assign(0, candidates_[0][first]);
    if (consistent(0)) descend(1);
  }

 private:
  void assign(int c, const std::vector<Element>& col) {
    std::copy(col.begin(), col.end(), table_.begin() + static_cast<std::ptrdiff_t>(c * q_));
  }
  void clear(int c) {
    std::fill_n(table_.begin() + static_cast<std::ptrdiff_t>(c * q_), q_, -1);
  }

  void descend(int c) {
    if (c == columns_) {
      emit();
      return;
    }
    for (const auto& cand : candidates_[static_cast<std::size_t>(c)]) {
      assign(c, cand);
      if (consistent(c)) descend(c + 1);
    }
    clear(c);
  }

  // Checks every distributivity instance whose last-needed column is c.
  // Columns are filled in ascending order, so an instance touching only
  // columns below c was already checked at an earlier depth.
  bool consistent(int c) const {
    const int q = q_;
    std::vector<Element> x(static_cast<std::size_t>(n_));
    for (int u = 0; u <= c; ++u) {
      const int fu = ftail_[static_cast<std::size_t>(u)];
      if (fu > c) continue;
      const int ubase = q * u;
      for (int xt = 0; xt <= c; ++xt) {
        const auto& xtail = tails_[static_cast<std::size_t>(xt)];
        // B_k = T(x_k, u) for k >= 2 do not depend on x1.
        int rcol = 0;
        for (std::size_t k = xtail.size(); k-- > 0;) rcol = rcol * q + table_[static_cast<std::size_t>(ubase + xtail[k])];
        const bool touches = u == c || fu == c || xt == c || rcol == c;
        if (!touches || rcol > c) continue;
        for (int x1 = 0; x1 < q; ++x1) {
          const Element a = table_[static_cast<std::size_t>(x1 + q * xt)];
          const Element lhs = table_[static_cast<std::size_t>(a + q * fu)];
          const Element b1 = table_[static_cast<std::size_t>(ubase + x1)];
          const Element rhs = table_[static_cast<std::size_t>(b1 + q * rcol)];
          if (lhs != rhs) return false;
        }
      }
    }
    return true;
  }

  void emit() {
    RawStructure raw(CayleyOp(n_, q_, table_), f_);
    if (cfg_.morphism == MorphismPolicy::Require && !twist_is_endomorphism(raw)) return;
    out_->push_back(FStructure::unchecked(std::move(raw), cfg_.level));
  }

  const SearchConfig& cfg_;
  Endomap f_;
  int q_;
  int n_;
  int columns_ = 0;
  std::vector<std::vector<Element>> tails_;
  std::vector<int> ftail_;
  std::vector<std::vector<std::vector<Element>>> candidates_;
  std::vector<Element> table_;
  std::vector<FStructure>* out_ = nullptr;
};

}  // namespace

double estimate_search_log10(const SearchConfig& cfg) {
  const double q = cfg.order;
  const double columns = std::pow(q, cfg.arity - 1);
  double per_column = std::lgamma(q + 1) / std::log(10.0);
  if (cfg.level == Level::Shelf) per_column = q * std::log10(q);
  double twists = q * std::log10(q);
  if (cfg.twists == TwistPolicy::Identity) twists = 0;
  if (cfg.twists == TwistPolicy::Bijective) twists = std::lgamma(q + 1) / std::log(10.0);
  return twists + per_column * columns;
}

double estimate_search_cost(const SearchConfig& cfg) {
  const double q = cfg.order;
  const double columns = std::pow(q, cfg.arity - 1);
  double per_column = std::tgamma(q + 1);
  if (cfg.level == Level::Shelf) per_column = std::pow(q, q);
  double twists = std::pow(q, q);
  if (cfg.twists == TwistPolicy::Identity) twists = 1;
  if (cfg.twists == TwistPolicy::Bijective) twists = std::tgamma(q + 1);
  return twists * std::pow(per_column, columns);
}

std::vector<FStructure> enumerate(const SearchConfig& cfg) {
  validate_config(cfg);
  const auto twists = twists_for(cfg);

  struct Task {
    std::size_t twist;
    std::size_t first;
  };
  std::vector<Task> tasks;
  for (std::size_t t = 0; t < twists.size(); ++t) {
    ColumnSearch probe(cfg, twists[t]);
    for (std::size_t i = 0; i < probe.first_column_choices(); ++i) tasks.push_back({t, i});
  }

  std::vector<std::vector<FStructure>> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    std::optional<ColumnSearch> search;
    std::size_t current = static_cast<std::size_t>(-1);
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      if (tasks[i].twist != current) {
        search.emplace(cfg, twists[tasks[i].twist]);
        current = tasks[i].twist;
      }
      search->run(tasks[i].first, results[i]);
    }
  };
  const int workers = std::max(1, std::min<int>(cfg.workers, static_cast<int>(tasks.size())));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::vector<FStructure> out;
  for (auto& r : results)
    for (auto& s : r) out.push_back(std::move(s));
  return out;
}

std::vector<FStructure> enumerate_brute_force(const SearchConfig& cfg) {
  if (cfg.order < 1) throw DimensionError("order must be at least 1");
  const auto cells = checked_pow(static_cast<std::size_t>(cfg.order), static_cast<std::size_t>(cfg.arity));
  const double tables = std::pow(static_cast<double>(cfg.order), static_cast<double>(cells));
  if (tables > 1e7) throw GuardrailError("brute-force enumeration limited to 1e7 tables per twist");
  std::vector<FStructure> out;
  for (const auto& f : twists_for(cfg)) {
    TupleCounter tc(cfg.order, cells);
    for (; !tc.done(); tc.next()) {
      auto v = tc.value();
      RawStructure raw(CayleyOp(cfg.arity, cfg.order, std::vector<Element>(v.begin(), v.end())), f);
      if (!check_axioms(raw, cfg.level)) continue;
      if (cfg.morphism == MorphismPolicy::Require && !twist_is_endomorphism(raw)) continue;
      out.push_back(FStructure::unchecked(std::move(raw), cfg.level));
    }
  }
  return out;
}

RawStructure relabel(const RawStructure& s, const Permutation& sigma) {
  const int q = s.order();
  if (sigma.order() != q) throw DimensionError("relabeling order does not match carrier");
  const int n = s.arity();
  std::vector<Element> table(s.op.size());
  std::vector<Element> x(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < s.op.size(); ++i) {
    unflatten(q, i, x);
    const Element image = sigma(s.op.at(i));
    for (auto& v : x) v = sigma(v);
    table[flat_index(q, x)] = image;
  }
  std::vector<Element> twist(static_cast<std::size_t>(q));
  for (Element v = 0; v < q; ++v) twist[static_cast<std::size_t>(sigma(v))] = sigma(s.twist(v));
  return RawStructure(CayleyOp(n, q, std::move(table)), Endomap(q, std::move(twist)));
}

FStructure relabel(const FStructure& s, const Permutation& sigma) {
  return FStructure::unchecked(relabel(s.raw(), sigma), s.level());
}

RawStructure canonical_form(const RawStructure& s) {
  std::optional<RawStructure> best;
  for (const auto& sigma : all_permutations(s.order())) {
    auto r = relabel(s, sigma);
    if (!best || std::tie(r.twist.table(), r.op.table()) < std::tie(best->twist.table(), best->op.table())) {
      best = std::move(r);
    }
  }
  return *best;
}

FStructure canonical_form(const FStructure& s) { return FStructure::unchecked(canonical_form(s.raw()), s.level()); }

namespace {

class IsoSearch {
 public:
  IsoSearch(const RawStructure& a, const RawStructure& b) : a_(a), b_(b), q_(a.order()) {}

  std::optional<Permutation> run() {
    std::vector<Element> map(static_cast<std::size_t>(q_), -1);
    std::vector<bool> used(static_cast<std::size_t>(q_), false);
    if (search(map, used)) return Permutation(map);
    return std::nullopt;
  }

 private:
  bool set(std::vector<Element>& map, std::vector<bool>& used, Element from, Element to, bool& changed) const {
    auto& slot = map[static_cast<std::size_t>(from)];
    if (slot >= 0) return slot == to;
    if (used[static_cast<std::size_t>(to)]) return false;
    slot = to;
    used[static_cast<std::size_t>(to)] = true;
    changed = true;
    return true;
  }

  // Forces images implied by the already-mapped elements; false on conflict.
  bool propagate(std::vector<Element>& map, std::vector<bool>& used) const {
    const int n = a_.arity();
    std::vector<Element> x(static_cast<std::size_t>(n)), y(static_cast<std::size_t>(n));
    bool changed = true;
    while (changed) {
      changed = false;
      for (Element v = 0; v < q_; ++v) {
        const Element m = map[static_cast<std::size_t>(v)];
        if (m >= 0 && !set(map, used, a_.twist(v), b_.twist(m), changed)) return false;
      }
      for (std::size_t i = 0; i < a_.op.size(); ++i) {
        unflatten(q_, i, x);
        bool known = true;
        for (std::size_t k = 0; k < x.size() && known; ++k) {
          y[k] = map[static_cast<std::size_t>(x[k])];
          known = y[k] >= 0;
        }
        if (known && !set(map, used, a_.op.at(i), b_.op(y), changed)) return false;
      }
    }
    return true;
  }

  bool search(std::vector<Element>& map, std::vector<bool>& used) const {
    if (!propagate(map, used)) return false;
    auto it = std::find(map.begin(), map.end(), -1);
    if (it == map.end()) return true;
    const auto v = static_cast<std::size_t>(it - map.begin());
    for (Element t = 0; t < q_; ++t) {
      if (used[static_cast<std::size_t>(t)]) continue;
      auto m2 = map;
      auto u2 = used;
      m2[v] = t;
      u2[static_cast<std::size_t>(t)] = true;
      if (search(m2, u2)) {
        map = std::move(m2);
        return true;
      }
    }
    return false;
  }

  const RawStructure& a_;
  const RawStructure& b_;
  int q_;
};

}  // namespace

std::optional<Permutation> are_isomorphic(const RawStructure& s1, const RawStructure& s2) {
  if (s1.order() != s2.order() || s1.arity() != s2.arity()) {
    throw DimensionError("isomorphism test needs equal order and arity");
  }
  return IsoSearch(s1, s2).run();
}

std::vector<IsoClassReport> classify(const std::vector<FStructure>& structures) {
  using Key = std::pair<std::vector<Element>, std::vector<Element>>;
  std::map<Key, std::pair<std::optional<FStructure>, std::size_t>> classes;
  for (const auto& s : structures) {
    auto c = canonical_form(s);
    auto& slot = classes[{c.twist().table(), c.op().table()}];
    if (!slot.first) slot.first = std::move(c);
    ++slot.second;
  }
  std::vector<IsoClassReport> out;
  for (auto& [key, value] : classes) {
    IsoClassReport r{*value.first, value.second, {}, value.first->twist().is_identity()};
    if (r.representative.arity() == 3) {
      try {
        r.rendering = to_permutation_columns(r.representative);
      } catch (const PreconditionError&) {
        // Shelves may have non-bijective columns; they have no rendering.
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace fq

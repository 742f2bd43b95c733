#include "fq/cayley.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace fq {

std::string_view to_string(Level level) {
  switch (level) {
    case Level::Shelf: return "shelf";
    case Level::Rack: return "rack";
    case Level::Quandle: return "quandle";
    case Level::CrossedSet: return "crossed-set";
  }
  return "?";
}

std::optional<Level> parse_level(std::string_view text) {
  if (text == "shelf") return Level::Shelf;
  if (text == "rack") return Level::Rack;
  if (text == "quandle") return Level::Quandle;
  if (text == "crossed-set" || text == "crossed") return Level::CrossedSet;
  return std::nullopt;
}

std::size_t checked_pow(std::size_t base, std::size_t exp, std::size_t limit) {
  std::size_t result = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && result > limit / base) {
      std::ostringstream os;
      os << base << "^" << exp << " exceeds the size limit " << limit;
      throw SizeLimitError(os.str());
    }
    result *= base;
  }
  return result;
}

std::string join_elements(std::span<const Element> xs, std::string_view sep) {
  std::ostringstream os;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) os << sep;
    os << xs[i];
  }
  return os.str();
}

namespace {

void check_range(int order, std::span<const Element> values, const char* what) {
  for (auto v : values) {
    if (v < 0 || v >= order) {
      std::ostringstream os;
      os << what << ": entry " << v << " outside {0.." << order - 1 << "}";
      throw DimensionError(os.str());
    }
  }
}

}  // namespace

CayleyOp::CayleyOp(int arity, int order, std::vector<Element> table)
    : arity_(arity), order_(order), table_(std::move(table)) {
  if (arity < 2) throw ArityError("operation arity must be at least 2");
  if (order < 1) throw DimensionError("operation order must be at least 1");
  const auto expected = checked_pow(static_cast<std::size_t>(order), static_cast<std::size_t>(arity));
  if (table_.size() != expected) {
    std::ostringstream os;
    os << "Cayley table has " << table_.size() << " entries, expected " << expected;
    throw DimensionError(os.str());
  }
  check_range(order, table_, "Cayley table");
}

CayleyOp CayleyOp::from_function(int arity, int order,
                                 const std::function<Element(std::span<const Element>)>& fn) {
  if (arity < 2) throw ArityError("operation arity must be at least 2");
  const auto n = checked_pow(static_cast<std::size_t>(order), static_cast<std::size_t>(arity));
  std::vector<Element> table(n);
  std::vector<Element> args(static_cast<std::size_t>(arity));
  for (std::size_t i = 0; i < n; ++i) {
    unflatten(order, i, args);
    table[i] = fn(args);
  }
  return CayleyOp(arity, order, std::move(table));
}

std::size_t CayleyOp::index(std::span<const Element> args) const {
  if (args.size() != static_cast<std::size_t>(arity_)) {
    throw ArityError("argument count does not match operation arity");
  }
  return flat_index(order_, args);
}

Endomap::Endomap(int order, std::vector<Element> table) : table_(std::move(table)) {
  if (table_.size() != static_cast<std::size_t>(order)) {
    throw DimensionError("endomap table length does not match order");
  }
  check_range(order, table_, "endomap");
}

Endomap Endomap::identity(int order) {
  std::vector<Element> t(static_cast<std::size_t>(order));
  std::iota(t.begin(), t.end(), 0);
  return Endomap(order, std::move(t));
}

Endomap Endomap::constant(int order, Element value) {
  return Endomap(order, std::vector<Element>(static_cast<std::size_t>(order), value));
}

bool Endomap::is_bijective() const {
  std::vector<bool> seen(table_.size(), false);
  for (auto v : table_) {
    if (seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = true;
  }
  return true;
}

bool Endomap::is_identity() const {
  for (std::size_t i = 0; i < table_.size(); ++i) {
    if (table_[i] != static_cast<Element>(i)) return false;
  }
  return true;
}

Endomap Endomap::after(const Endomap& inner) const {
  if (inner.order() != order()) throw DimensionError("composing endomaps of different orders");
  std::vector<Element> t(table_.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = (*this)(inner(static_cast<Element>(i)));
  return Endomap(order(), std::move(t));
}

Endomap Endomap::power(int k) const {
  auto result = identity(order());
  for (int i = 0; i < k; ++i) result = after(result);
  return result;
}

Permutation::Permutation(std::vector<Element> image) : image_(std::move(image)) {
  const int q = static_cast<int>(image_.size());
  check_range(q, image_, "permutation");
  if (!Endomap(q, image_).is_bijective()) throw DimensionError("permutation image is not a bijection");
}

Permutation::Permutation(const Endomap& map) : Permutation(map.table()) {}

Permutation Permutation::identity(int order) { return Permutation(Endomap::identity(order).table()); }

Permutation Permutation::inverse() const {
  std::vector<Element> inv(image_.size());
  for (std::size_t i = 0; i < image_.size(); ++i) inv[static_cast<std::size_t>(image_[i])] = static_cast<Element>(i);
  return Permutation(std::move(inv));
}

Permutation Permutation::after(const Permutation& inner) const {
  if (inner.order() != order()) throw DimensionError("composing permutations of different orders");
  std::vector<Element> t(image_.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = (*this)(inner(static_cast<Element>(i)));
  return Permutation(std::move(t));
}

bool Permutation::is_identity() const { return Endomap(order(), image_).is_identity(); }

std::vector<std::vector<Element>> Permutation::cycles() const {
  std::vector<std::vector<Element>> out;
  std::vector<bool> seen(image_.size(), false);
  for (std::size_t start = 0; start < image_.size(); ++start) {
    if (seen[start] || image_[start] == static_cast<Element>(start)) continue;
    std::vector<Element> cycle;
    for (auto x = static_cast<Element>(start); !seen[static_cast<std::size_t>(x)]; x = (*this)(x)) {
      seen[static_cast<std::size_t>(x)] = true;
      cycle.push_back(x);
    }
    out.push_back(std::move(cycle));
  }
  return out;
}

CarrierMap::CarrierMap(int domain, int codomain, std::vector<Element> images)
    : domain_(domain), codomain_(codomain), images_(std::move(images)) {
  if (images_.size() != static_cast<std::size_t>(domain)) {
    throw DimensionError("map table length does not match its domain size");
  }
  check_range(codomain, images_, "map");
}

bool CarrierMap::is_bijective() const {
  return domain_ == codomain_ && Endomap(domain_, images_).is_bijective();
}

std::vector<Permutation> all_permutations(int order) {
  std::vector<Element> p(static_cast<std::size_t>(order));
  std::iota(p.begin(), p.end(), 0);
  std::vector<Permutation> out;
  do {
    out.emplace_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::vector<Endomap> all_endomaps(int order) {
  std::vector<Endomap> out;
  const auto q = static_cast<std::size_t>(order);
  for (TupleCounter t(order, q); !t.done(); t.next()) {
    out.emplace_back(order, std::vector<Element>(t.value().begin(), t.value().end()));
  }
  return out;
}

}  // namespace fq

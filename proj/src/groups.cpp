#include "fq/groups.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace fq {

FiniteGroupTable::FiniteGroupTable(int order, std::vector<Element> table)
    : order_(order), table_(std::move(table)), inverse_(static_cast<std::size_t>(order), -1) {
  // Range and size checks come from CayleyOp.
  CayleyOp(2, order, table_);
  for (Element x = 0; x < order; ++x)
    for (Element y = 0; y < order; ++y)
      for (Element z = 0; z < order; ++z)
        if (mul(mul(x, y), z) != mul(x, mul(y, z))) throw PreconditionError("group table is not associative");

  identity_ = -1;
  for (Element e = 0; e < order && identity_ < 0; ++e) {
    bool ok = true;
    for (Element x = 0; x < order && ok; ++x) ok = mul(e, x) == x && mul(x, e) == x;
    if (ok) identity_ = e;
  }
  if (identity_ < 0) throw PreconditionError("group table has no identity element");
  for (Element x = 0; x < order; ++x) {
    for (Element y = 0; y < order; ++y) {
      if (mul(x, y) == identity_ && mul(y, x) == identity_) {
        inverse_[static_cast<std::size_t>(x)] = y;
        break;
      }
    }
    if (inverse_[static_cast<std::size_t>(x)] < 0) throw PreconditionError("group element without inverse");
  }
}

FiniteGroupTable FiniteGroupTable::cyclic(int n) {
  std::vector<Element> t(static_cast<std::size_t>(n * n));
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) t[static_cast<std::size_t>(x + n * y)] = (x + y) % n;
  return FiniteGroupTable(n, std::move(t));
}

FiniteGroupTable FiniteGroupTable::symmetric(int n) {
  if (n < 1 || n > 5) throw UnsupportedError("symmetric group supported for 1 <= n <= 5");
  auto perms = all_permutations(n);
  std::map<std::vector<Element>, Element> index;
  for (std::size_t i = 0; i < perms.size(); ++i) index[perms[i].image()] = static_cast<Element>(i);
  const auto q = static_cast<int>(perms.size());
  std::vector<Element> t(static_cast<std::size_t>(q * q));
  for (int x = 0; x < q; ++x)
    for (int y = 0; y < q; ++y)
      t[static_cast<std::size_t>(x + q * y)] =
          index.at(perms[static_cast<std::size_t>(x)].after(perms[static_cast<std::size_t>(y)]).image());
  return FiniteGroupTable(q, std::move(t));
}

bool FiniteGroupTable::is_endomorphism(const Endomap& f) const {
  if (f.order() != order_) return false;
  for (Element x = 0; x < order_; ++x)
    for (Element y = 0; y < order_; ++y)
      if (f(mul(x, y)) != mul(f(x), f(y))) return false;
  return true;
}

Endomap FiniteGroupTable::conjugation_by(Element g) const {
  std::vector<Element> t(static_cast<std::size_t>(order_));
  for (Element h = 0; h < order_; ++h) t[static_cast<std::size_t>(h)] = mul(mul(g, h), inverse(g));
  return Endomap(order_, std::move(t));
}

bool FiniteGroupTable::is_abelian() const {
  for (Element x = 0; x < order_; ++x)
    for (Element y = 0; y < order_; ++y)
      if (mul(x, y) != mul(y, x)) return false;
  return true;
}

}  // namespace fq

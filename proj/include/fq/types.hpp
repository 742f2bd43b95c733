#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fq {

/// Carrier elements are the integers {0..order-1}.
using Element = int;

/// Axiom level of an f-distributive structure. CrossedSet only exists as a
/// check request for binary structures.
enum class Level { Shelf, Rack, Quandle, CrossedSet };

std::string_view to_string(Level level);
std::optional<Level> parse_level(std::string_view text);

// Error hierarchy. Everything thrown by the library derives from fq::Error.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class ArityError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class UnsupportedError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class GuardrailError : public Error {
 public:
  using Error::Error;
};

class SizeLimitError : public Error {
 public:
  using Error::Error;
};

/// base^exp, throwing SizeLimitError if the result exceeds `limit`.
std::size_t checked_pow(std::size_t base, std::size_t exp,
                        std::size_t limit = std::size_t{1} << 40);

/// Iterates all tuples of {0..order-1}^length in lexicographic order
/// (first coordinate most significant).
class TupleCounter {
 public:
  TupleCounter(int order, std::size_t length) : order_(order), digits_(length, 0) {
    done_ = length > 0 && order <= 0;
  }

  [[nodiscard]] bool done() const { return done_; }
  [[nodiscard]] std::span<const Element> value() const { return digits_; }
  Element operator[](std::size_t i) const { return digits_[i]; }

  void next() {
    for (std::size_t i = digits_.size(); i-- > 0;) {
      if (++digits_[i] < order_) return;
      digits_[i] = 0;
    }
    done_ = true;
  }

 private:
  int order_;
  std::vector<Element> digits_;
  bool done_ = false;
};

/// Flat index with the first argument varying fastest:
/// x1 + q*x2 + q^2*x3 + ...
inline std::size_t flat_index(int order, std::span<const Element> args) {
  std::size_t idx = 0;
  for (std::size_t i = args.size(); i-- > 0;) idx = idx * static_cast<std::size_t>(order) + static_cast<std::size_t>(args[i]);
  return idx;
}

/// Inverse of flat_index.
inline void unflatten(int order, std::size_t idx, std::span<Element> out) {
  for (auto& x : out) {
    x = static_cast<Element>(idx % static_cast<std::size_t>(order));
    idx /= static_cast<std::size_t>(order);
  }
}

std::string join_elements(std::span<const Element> xs, std::string_view sep = ",");

}  // namespace fq

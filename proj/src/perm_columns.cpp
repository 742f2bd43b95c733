#include "fq/perm_columns.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

namespace fq {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  while (true) {
    auto pos = text.find(sep);
    parts.push_back(text.substr(0, pos));
    if (pos == std::string_view::npos) break;
    text.remove_prefix(pos + 1);
  }
  return parts;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<int> parse_cycle_body(std::string_view body, int order) {
  std::vector<int> labels;
  bool spaced = false;
  for (char c : body) {
    if (std::isspace(static_cast<unsigned char>(c))) spaced = true;
    else if (!std::isdigit(static_cast<unsigned char>(c))) throw ParseError("unexpected character in cycle '" + std::string(body) + "'");
  }
  if (spaced || order > 9) {
    std::istringstream is{std::string(body)};
    std::string tok;
    while (is >> tok) {
      int v = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc{} || ptr != tok.data() + tok.size()) throw ParseError("malformed cycle entry '" + tok + "'");
      labels.push_back(v);
    }
  } else {
    for (char c : body) labels.push_back(c - '0');
  }
  if (labels.empty()) throw ParseError("empty cycle");
  return labels;
}

}  // namespace

std::string render_cycles(const Permutation& p, CycleStyle style) {
  if (p.order() > 9) style = CycleStyle::Spaced;
  auto cycles = p.cycles();
  if (cycles.empty()) return "(1)";
  std::string out;
  for (const auto& c : cycles) {
    out += '(';
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i > 0 && style == CycleStyle::Spaced) out += ' ';
      out += std::to_string(c[i] + 1);
    }
    out += ')';
  }
  return out;
}

Permutation parse_cycles(std::string_view text, int order) {
  text = trim(text);
  if (text.empty()) throw ParseError("empty permutation");
  std::vector<Element> image(static_cast<std::size_t>(order));
  for (int i = 0; i < order; ++i) image[static_cast<std::size_t>(i)] = i;
  std::vector<bool> seen(static_cast<std::size_t>(order), false);
  while (!text.empty()) {
    if (text.front() != '(') throw ParseError("expected '(' in '" + std::string(text) + "'");
    auto close = text.find(')');
    if (close == std::string_view::npos) throw ParseError("unterminated cycle");
    auto labels = parse_cycle_body(text.substr(1, close - 1), order);
    text = trim(text.substr(close + 1));
    for (int v : labels)
      if (v < 1 || v > order) throw ParseError("cycle label " + std::to_string(v) + " out of range 1.." + std::to_string(order));
    if (labels.size() == 1) continue;  // "(1)" or any 1-cycle
    for (std::size_t i = 0; i < labels.size(); ++i) {
      auto from = static_cast<std::size_t>(labels[i] - 1);
      if (seen[from]) throw ParseError("cycles are not disjoint");
      seen[from] = true;
      image[from] = labels[(i + 1) % labels.size()] - 1;
    }
  }
  return Permutation(std::move(image));
}

std::string to_permutation_columns(const RawStructure& s, CycleStyle style) {
  if (s.arity() != 3) throw PreconditionError("permutation-column notation needs a ternary structure");
  const int q = s.order();
  std::string out;
  for (Element z = 0; z < q; ++z) {
    if (z > 0) out += "; ";
    for (Element y = 0; y < q; ++y) {
      if (y > 0) out += ',';
      const Element tail[2] = {y, z};
      auto r = right_translation(s, tail);
      if (auto* c = std::get_if<Collision>(&r)) {
        std::ostringstream os;
        os << "column (y,z)=(" << y << ',' << z << ") is not a permutation: " << c->first << " and " << c->second
           << " both map to " << c->image;
        throw PreconditionError(os.str());
      }
      out += render_cycles(std::get<Permutation>(r), style);
    }
  }
  return out;
}

RawStructure parse_permutation_columns(std::string_view text, const std::optional<Endomap>& twist) {
  auto groups = split(trim(text), ';');
  const int q = static_cast<int>(groups.size());
  std::vector<Element> table(static_cast<std::size_t>(q * q * q));
  for (int z = 0; z < q; ++z) {
    auto entries = split(trim(groups[static_cast<std::size_t>(z)]), ',');
    if (static_cast<int>(entries.size()) != q) {
      throw ParseError("z-group " + std::to_string(z + 1) + " has " + std::to_string(entries.size()) + " columns, expected " +
                       std::to_string(q));
    }
    for (int y = 0; y < q; ++y) {
      auto p = parse_cycles(entries[static_cast<std::size_t>(y)], q);
      for (int x = 0; x < q; ++x) table[static_cast<std::size_t>(x + q * y + q * q * z)] = p(x);
    }
  }
  CayleyOp op(3, q, std::move(table));
  if (twist) {
    if (twist->order() != q) throw ParseError("twist order does not match the column text");
    return RawStructure(std::move(op), *twist);
  }
  std::vector<Element> diag(static_cast<std::size_t>(q));
  for (Element x = 0; x < q; ++x) diag[static_cast<std::size_t>(x)] = op({x, x, x});
  return RawStructure(std::move(op), Endomap(q, std::move(diag)));
}

std::string normalize_whitespace(std::string_view text) {
  std::string out;
  bool pending = false;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending = !out.empty();
      continue;
    }
    if (pending) out += ' ';
    pending = false;
    out += c;
  }
  return out;
}

}  // namespace fq

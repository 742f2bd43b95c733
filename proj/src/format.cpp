#include "fq/format.hpp"

#include <charconv>
#include <sstream>

#include "json.hpp"

namespace fq {

namespace {

constexpr std::string_view kVersion = "fq v1";

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    auto nl = text.find('\n');
    auto line = trim(text.substr(0, nl));
    if (!line.empty()) lines.push_back(line);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return lines;
}

std::vector<Element> parse_ints(std::string_view rest, std::string_view what) {
  std::vector<Element> out;
  while (true) {
    rest = trim(rest);
    if (rest.empty()) break;
    Element v = 0;
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), v);
    if (ec != std::errc{}) throw ParseError("malformed integer in '" + std::string(what) + "' line");
    rest.remove_prefix(static_cast<std::size_t>(ptr - rest.data()));
    if (!rest.empty() && rest.front() != ' ' && rest.front() != '\t') {
      throw ParseError("malformed integer in '" + std::string(what) + "' line");
    }
    out.push_back(v);
  }
  return out;
}

std::string_view expect_key(std::string_view line, std::string_view key) {
  if (line.substr(0, key.size()) != key ||
      (line.size() > key.size() && line[key.size()] != ' ' && line[key.size()] != '\t')) {
    throw ParseError("expected '" + std::string(key) + "' line, got '" + std::string(line) + "'");
  }
  return line.substr(key.size());
}

int parse_single(std::string_view line, std::string_view key) {
  auto v = parse_ints(expect_key(line, key), key);
  if (v.size() != 1) throw ParseError("'" + std::string(key) + "' takes exactly one value");
  return v[0];
}

RawStructure build(int arity, int order, std::vector<Element> twist, std::vector<Element> op) {
  try {
    return RawStructure(CayleyOp(arity, order, std::move(op)), Endomap(order, std::move(twist)));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(std::string("inconsistent structure: ") + e.what());
  }
}

RawStructure parse_lines(std::span<const std::string_view> lines) {
  if (lines.size() != 5) throw ParseError("canonical text needs exactly 5 non-empty lines");
  if (lines[0] != kVersion) throw ParseError("unsupported header '" + std::string(lines[0]) + "'");
  const int arity = parse_single(lines[1], "arity");
  const int order = parse_single(lines[2], "order");
  auto twist = parse_ints(expect_key(lines[3], "twist"), "twist");
  auto op = parse_ints(expect_key(lines[4], "op"), "op");
  return build(arity, order, std::move(twist), std::move(op));
}

}  // namespace

std::string to_text(const RawStructure& s) {
  std::ostringstream os;
  os << kVersion << "\narity " << s.arity() << "\norder " << s.order() << "\ntwist";
  for (auto v : s.twist.table()) os << ' ' << v;
  os << "\nop";
  for (auto v : s.op.table()) os << ' ' << v;
  os << '\n';
  return os.str();
}

RawStructure parse_text(std::string_view text) {
  auto lines = split_lines(text);
  return parse_lines(lines);
}

std::vector<RawStructure> parse_text_stream(std::string_view text) {
  std::vector<RawStructure> out;
  auto lines = split_lines(text);
  std::size_t start = 0;
  for (std::size_t i = 0; i <= lines.size(); ++i) {
    if (i == lines.size() || lines[i] == "---") {
      if (i > start) out.push_back(parse_lines(std::span(lines).subspan(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

std::string to_json(const RawStructure& s) {
  nlohmann::ordered_json j;
  j["version"] = kVersion;
  j["arity"] = s.arity();
  j["order"] = s.order();
  j["twist"] = s.twist.table();
  j["op"] = s.op.table();
  return j.dump();
}

RawStructure parse_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  try {
    if (j.at("version").get<std::string>() != kVersion) throw ParseError("unsupported version");
    return build(j.at("arity").get<int>(), j.at("order").get<int>(), j.at("twist").get<std::vector<Element>>(),
                 j.at("op").get<std::vector<Element>>());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed structure JSON: ") + e.what());
  }
}

RawStructure parse_any(std::string_view text) {
  auto t = trim(text);
  while (!t.empty() && (t.front() == '\n' || t.front() == ' ')) t.remove_prefix(1);
  if (!t.empty() && t.front() == '{') return parse_json(t);
  return parse_text(t);
}

}  // namespace fq

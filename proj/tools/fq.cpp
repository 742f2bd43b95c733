#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "fq/cohomology.hpp"
#include "fq/constructions.hpp"
#include "fq/enumeration.hpp"
#include "fq/extensions.hpp"
#include "fq/fixtures.hpp"
#include "fq/format.hpp"
#include "fq/manifest.hpp"
#include "fq/perm_columns.hpp"
#include "fq/reproduce.hpp"
#include "json.hpp"

namespace {

using namespace fq;
using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;

class UsageError : public Error {
 public:
  using Error::Error;
};

struct Context {
  bool json = false;
  int workers = 1;
  std::string manifest_path;
  RunManifest manifest;
  bool batch = false;
};

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<long long> parse_list(const std::string& text, const std::string& what) {
  std::vector<long long> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    item = trim(item);
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw UsageError(what + ": expected comma-separated integers, got '" + text + "'");
    }
  }
  if (out.empty()) throw UsageError(what + ": empty list");
  return out;
}

Endomap parse_endomap(const std::string& text, int order, const std::string& what) {
  std::vector<Element> images;
  for (auto v : parse_list(text, what)) images.push_back(static_cast<Element>(v));
  if (static_cast<int>(images.size()) != order)
    throw UsageError(what + ": expected " + std::to_string(order) + " images, got " + std::to_string(images.size()));
  try {
    return Endomap(order, std::move(images));
  } catch (const Error& e) {
    throw UsageError(what + ": " + e.what());
  }
}

std::string read_input(Context& ctx, const std::string& path) {
  std::stringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read '" + path + "'");
    ss << in.rdbuf();
  }
  const std::string text = ss.str();
  ctx.manifest.inputs.emplace_back(path, hex_digest(text));
  return text;
}

RawStructure load_structure(Context& ctx, const std::string& path) {
  const std::string text = trim(read_input(ctx, path));
  if (text.empty()) throw ParseError("'" + path + "' is empty");
  if (text.front() == '{' || text.rfind("fq ", 0) == 0) return parse_any(text);
  return parse_permutation_columns(text);
}

Level parse_level_or_throw(const std::string& text) {
  auto l = parse_level(text);
  if (!l) throw UsageError("unknown level '" + text + "' (shelf, rack, quandle, crossed-set)");
  return *l;
}

CycleStyle parse_style(const std::string& text) {
  if (text == "compact") return CycleStyle::Compact;
  if (text == "spaced") return CycleStyle::Spaced;
  throw UsageError("unknown style '" + text + "' (compact, spaced)");
}

std::string render_structure(const RawStructure& s, const std::string& format, CycleStyle style) {
  if (format == "text") return to_text(s);
  if (format == "json") return to_json(s) + "\n";
  if (format == "perm-columns") return to_permutation_columns(s, style) + "\n";
  throw UsageError("unknown format '" + format + "' (text, json, perm-columns)");
}

Json report_json(const AxiomReport& r) {
  Json j;
  j["passed"] = r.passed;
  if (!r.passed) {
    j["axiom"] = r.axiom;
    j["witness"] = r.witness;
    j["detail"] = r.detail;
  }
  return j;
}

void write_output(Context& ctx, const std::string& out_path, const std::string& body) {
  if (out_path.empty() || out_path == "-") {
    std::cout << body;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw UsageError("cannot write '" + out_path + "'");
  out << body;
  ctx.manifest.outputs.push_back(out_path);
}

// ---------------------------------------------------------------- check

struct CheckArgs {
  std::string file;
  std::string level;
};

int run_check(Context& ctx, const CheckArgs& a) {
  const RawStructure s = load_structure(ctx, a.file);
  AxiomReport report;
  Json j;
  if (!a.level.empty()) {
    const Level level = parse_level_or_throw(a.level);
    report = check_axioms(s, level);
    j["level"] = to_string(level);
  } else {
    const auto level = highest_level(s);
    report = level ? AxiomReport::pass() : check_axioms(s, Level::Shelf);
    j["level"] = level ? Json(std::string(to_string(*level))) : Json(nullptr);
  }
  const Json rj = report_json(report);
  for (const auto& [k, v] : rj.items()) j[k] = v;
  if (ctx.json) {
    std::cout << j.dump() << "\n";
  } else if (!a.level.empty()) {
    std::cout << a.level << ": " << describe(report) << "\n";
  } else if (report.passed) {
    std::cout << "highest level: " << j["level"].get<std::string>() << "\n";
  } else {
    std::cout << "not a shelf: " << describe(report) << "\n";
  }
  return report.passed ? kExitOk : kExitValidation;
}

// ------------------------------------------------------------ construct

struct ConstructArgs {
  std::string name;
  int order = 2;
  int arity = 3;
  int modulus = 3;
  std::string coeffs;
  std::string twist;
  int a = 1;
  int b = 0;
  std::string group = "cyclic:3";
  std::string from;
  std::string format = "text";
  std::string style = "compact";
};

FiniteGroupTable parse_group(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw UsageError("group must be cyclic:<n> or symmetric:<n>");
  const std::string kind = spec.substr(0, colon);
  const int n = static_cast<int>(parse_list(spec.substr(colon + 1), "group size").at(0));
  if (kind == "cyclic") return FiniteGroupTable::cyclic(n);
  if (kind == "symmetric") return FiniteGroupTable::symmetric(n);
  throw UsageError("unknown group kind '" + kind + "'");
}

FStructure construct_named(Context& ctx, const ConstructArgs& a) {
  if (a.name == "trivial") {
    const Endomap f = a.twist.empty() ? Endomap::identity(a.order) : parse_endomap(a.twist, a.order, "--twist");
    return FStructure::make_highest(trivial_f_quandle(a.order, f, a.arity, Level::Shelf).raw());
  }
  if (a.name == "dihedral") return dihedral_f_quandle(a.modulus, a.a, a.b);
  if (a.name == "affine") {
    if (a.coeffs.empty()) throw UsageError("affine needs --coeffs");
    std::vector<int> c;
    for (auto v : parse_list(a.coeffs, "--coeffs")) c.push_back(static_cast<int>(v));
    std::optional<Endomap> f;
    if (!a.twist.empty()) f = parse_endomap(a.twist, a.modulus, "--twist");
    return affine_structure(AffineParams(a.modulus, std::move(c)), f);
  }
  if (a.name == "conjugation" || a.name == "heap") {
    const auto g = parse_group(a.group);
    const Endomap f = a.twist.empty() ? Endomap::identity(g.order()) : parse_endomap(a.twist, g.order(), "--twist");
    return a.name == "conjugation" ? conjugation_f_quandle(g, f) : heap_f_quandle(g, f);
  }
  if (a.name == "induced") {
    if (a.from.empty()) throw UsageError("induced needs --from <binary structure file>");
    const auto binary = FStructure::make_highest(load_structure(ctx, a.from));
    return induced_from_binary(binary, a.arity);
  }
  throw UsageError("unknown construction '" + a.name + "' (trivial, dihedral, affine, conjugation, heap, induced)");
}

int run_construct(Context& ctx, const ConstructArgs& a) {
  const FStructure s = construct_named(ctx, a);
  if (ctx.json) {
    Json j = Json::parse(to_json(s));
    j["level"] = to_string(s.level());
    std::cout << j.dump() << "\n";
  } else {
    std::cout << render_structure(s.raw(), a.format, parse_style(a.style));
  }
  return kExitOk;
}

// --------------------------------------------------- enumerate / classify

struct SearchArgs {
  int order = 2;
  int arity = 3;
  std::string level = "quandle";
  std::string twists = "all";
  std::string morphism = "require";
  bool force = false;
  std::string format = "text";
  std::string style = "compact";
  std::string out;
};

SearchConfig search_config(const Context& ctx, const SearchArgs& a) {
  SearchConfig cfg;
  cfg.order = a.order;
  cfg.arity = a.arity;
  cfg.level = parse_level_or_throw(a.level);
  const auto tw = parse_twist_policy(a.twists);
  if (!tw) throw UsageError("unknown twist policy '" + a.twists + "' (all, identity, bijective)");
  cfg.twists = *tw;
  const auto mp = parse_morphism_policy(a.morphism);
  if (!mp) throw UsageError("unknown morphism policy '" + a.morphism + "' (require, none)");
  cfg.morphism = *mp;
  cfg.force = a.force;
  cfg.workers = ctx.workers;
  return cfg;
}

Json summary_json(const std::vector<FStructure>& all, const std::vector<IsoClassReport>& classes) {
  Json j;
  j["count"] = all.size();
  j["classes"] = classes.size();
  std::vector<std::size_t> sizes;
  std::size_t id = 0;
  for (const auto& c : classes) {
    sizes.push_back(c.class_size);
    id += c.twist_is_identity ? 1 : 0;
  }
  j["class_sizes"] = sizes;
  j["twist_id_count"] = id;
  return j;
}

int run_enumerate(Context& ctx, const SearchArgs& a) {
  ctx.batch = true;
  const auto all = enumerate(search_config(ctx, a));
  if (ctx.json) {
    std::cout << summary_json(all, classify(all)).dump() << "\n";
    return kExitOk;
  }
  const auto style = parse_style(a.style);
  std::string body;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (a.format == "text" && i > 0) body += "---\n";
    body += render_structure(all[i].raw(), a.format, style);
  }
  write_output(ctx, a.out, body);
  if (!a.out.empty() && a.out != "-") std::cout << all.size() << " structures written to " << a.out << "\n";
  return kExitOk;
}

int run_classify(Context& ctx, const SearchArgs& a) {
  ctx.batch = true;
  const auto all = enumerate(search_config(ctx, a));
  const auto classes = classify(all);
  const auto style = parse_style(a.style);
  if (ctx.json) {
    Json j = summary_json(all, classes);
    Json reps = Json::array();
    for (const auto& c : classes) {
      Json r = Json::parse(to_json(c.representative));
      r["class_size"] = c.class_size;
      r["twist_is_identity"] = c.twist_is_identity;
      if (!c.rendering.empty()) r["perm_columns"] = c.rendering;
      reps.push_back(r);
    }
    j["representatives"] = reps;
    write_output(ctx, a.out, j.dump() + "\n");
    return kExitOk;
  }
  std::ostringstream os;
  std::size_t id = 0;
  for (const auto& c : classes) id += c.twist_is_identity ? 1 : 0;
  os << all.size() << " structures, " << classes.size() << " isomorphism classes, " << id << " with identity twist\n";
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const auto& c = classes[i];
    os << i + 1 << "\tsize " << c.class_size << "\ttwist " << join_elements(c.representative.twist().table()) << "\t";
    if (c.representative.arity() == 3 && !c.rendering.empty()) {
      os << (style == CycleStyle::Spaced ? to_permutation_columns(c.representative, style) : c.rendering);
    } else {
      os << "op " << join_elements(c.representative.op().table(), " ");
    }
    os << "\n";
  }
  write_output(ctx, a.out, os.str());
  return kExitOk;
}

// ---------------------------------------------------------------- twist

struct TwistArgs {
  std::string file;
  std::string beta;
  std::string format = "text";
  std::string style = "compact";
};

int run_twist(Context& ctx, const TwistArgs& a) {
  const auto s = FStructure::make_highest(load_structure(ctx, a.file));
  const auto result = yau_twist(s, parse_endomap(a.beta, s.order(), "--beta"));
  if (ctx.json) {
    Json j = Json::parse(to_json(result.structure));
    j["level"] = to_string(result.structure.level());
    j["downgraded"] = result.downgraded;
    std::cout << j.dump() << "\n";
  } else {
    if (result.downgraded)
      std::cerr << "note: beta is not bijective, result certified only as " << to_string(result.structure.level()) << "\n";
    std::cout << render_structure(result.structure.raw(), a.format, parse_style(a.style));
  }
  return kExitOk;
}

// --------------------------------------------------------------- extend

struct ExtendArgs {
  std::string file;
  bool unchecked = false;
  std::string format = "text";
  std::string style = "compact";
};

int run_extend(Context& ctx, const ExtendArgs& a) {
  const auto fixture = parse_any_fixture(read_input(ctx, a.file));
  std::optional<DynamicalCocycle> cocycle;
  if (const auto* two = std::get_if<TwoCocycle>(&fixture)) {
    cocycle = a.unchecked ? affine_dynamical_cocycle(*two) : extension_from_2cocycle(*two);
  } else {
    const auto& c = std::get<ConstantCocycleFixture>(fixture);
    if (!a.unchecked) {
      const auto r = check_constant_cocycle(c.base, c.lambda, c.base.level() == Level::Quandle);
      if (!r) throw PreconditionError("not a constant cocycle: " + describe(r));
    }
    cocycle = constant_to_dynamical(c.base, c.lambda);
  }
  const auto report = check_dynamical_cocycle(*cocycle);
  const auto ext = build_extension(*cocycle);
  if (ctx.json) {
    Json j;
    j["dynamical_cocycle"] = report.passed;
    if (!report.passed) {
      j["condition"] = report.condition;
      j["base_witness"] = report.base_witness;
      j["fiber_witness"] = report.fiber_witness;
    }
    j["level"] = ext.level ? Json(std::string(to_string(*ext.level))) : Json(nullptr);
    j["structure"] = Json::parse(to_json(ext.raw));
    std::cout << j.dump() << "\n";
  } else {
    std::cerr << "dynamical cocycle: " << describe(report) << "\n";
    std::cerr << "extension level: " << (ext.level ? std::string(to_string(*ext.level)) : std::string("none")) << "\n";
    std::cout << render_structure(ext.raw, a.format, parse_style(a.style));
  }
  return report.passed && ext.level == Level::Quandle ? kExitOk : kExitValidation;
}

// ----------------------------------------------------------- cohomology

struct CohomologyArgs {
  std::string file;
  std::string construct;
  int modulus = 3;
  std::string coeffs;
  std::string twist;
  std::string module;
  std::optional<long long> g;
  int degree = 1;
  bool all_cochains = false;
  bool basis = false;
};

int run_cohomology(Context& ctx, const CohomologyArgs& a) {
  std::optional<FStructure> s;
  std::vector<long long> module;
  if (!a.construct.empty()) {
    if (a.construct != "affine") throw UsageError("cohomology --construct supports only 'affine'");
    if (a.coeffs.empty()) throw UsageError("--construct affine needs --coeffs");
    std::vector<int> c;
    for (auto v : parse_list(a.coeffs, "--coeffs")) c.push_back(static_cast<int>(v));
    std::optional<Endomap> f;
    if (!a.twist.empty()) f = parse_endomap(a.twist, a.modulus, "--twist");
    s = affine_structure(AffineParams(a.modulus, c), f);
    module.assign(c.begin(), c.end());
  } else if (!a.file.empty()) {
    s = FStructure::make_highest(load_structure(ctx, a.file));
  } else {
    throw UsageError("cohomology needs a structure file or --construct affine");
  }
  if (!a.module.empty()) module = parse_list(a.module, "--module");
  if (module.empty()) throw UsageError("a structure file needs --module eta,tau_1,...");
  if (static_cast<int>(module.size()) != s->arity())
    throw UsageError("--module needs " + std::to_string(s->arity()) + " coefficients (eta and one per tau)");
  ScalarModuleParams params;
  params.modulus = a.modulus;
  params.eta = module[0];
  params.taus.assign(module.begin() + 1, module.end());
  if (a.g) params.g = *a.g;

  const auto r = cohomology_group(*s, params, a.degree, {!a.all_cochains});
  const int args = cochain_arguments(s->arity(), a.degree);
  if (ctx.json) {
    Json j;
    j["degree"] = r.degree;
    j["modulus"] = r.modulus;
    j["dim_ker"] = r.dim_ker;
    j["dim_im_prev"] = r.dim_im_prev;
    if (r.h_dim) j["h_dim"] = *r.h_dim;
    j["invariant_factors"] = r.invariant_factors;
    j["kernel_basis"] = r.kernel_basis;
    Json chi = Json::array();
    for (const auto& v : r.kernel_basis) chi.push_back(format_chi(v, s->order(), args));
    j["kernel_basis_chi"] = chi;
    if (r.unrestricted_difference) j["unrestricted_difference"] = *r.unrestricted_difference;
    j["runtime_ms"] = r.runtime_ms;
    std::cout << j.dump() << "\n";
    return kExitOk;
  }
  std::cout << "degree " << r.degree << " over Z_" << r.modulus << ": dim ker " << r.dim_ker << ", dim im " << r.dim_im_prev;
  if (r.h_dim) {
    std::cout << ", h_dim " << *r.h_dim << "\n";
  } else {
    std::cout << ", invariant factors (" << join_elements(std::vector<Element>(r.invariant_factors.begin(), r.invariant_factors.end()))
              << ")\n";
  }
  if (a.basis) {
    std::cout << "kernel basis:\n";
    for (const auto& v : r.kernel_basis) std::cout << "  " << format_chi(v, s->order(), args) << "\n";
    if (!r.quotient_representatives.empty()) {
      std::cout << "class representatives:\n";
      for (const auto& v : r.quotient_representatives) std::cout << "  " << format_chi(v, s->order(), args) << "\n";
    }
  }
  return kExitOk;
}

// -------------------------------------------------------------- convert

struct ConvertArgs {
  std::string file;
  std::string to = "text";
  std::string style = "compact";
  std::string out;
};

int run_convert(Context& ctx, const ConvertArgs& a) {
  write_output(ctx, a.out, render_structure(load_structure(ctx, a.file), a.to, parse_style(a.style)));
  return kExitOk;
}

// ------------------------------------------------------------ reproduce

struct ReproduceArgs {
  std::string only;
  std::string data = FQ_DATA_DIR;
};

int run_reproduce(Context& ctx, const ReproduceArgs& a) {
  ctx.batch = true;
  AcceptanceOptions opt;
  opt.data_dir = a.data;
  opt.workers = ctx.workers;
  if (!a.only.empty()) {
    std::stringstream ss(a.only);
    for (std::string id; std::getline(ss, id, ',');) opt.only.push_back(trim(id));
  }
  for (const auto& id : opt.only) {
    const auto ids = criterion_ids();
    if (std::find(ids.begin(), ids.end(), id) == ids.end()) throw UsageError("unknown criterion '" + id + "'");
  }
  bool all = true;
  Json rows = Json::array();
  for (const auto& id : opt.only.empty() ? criterion_ids() : opt.only) {
    const auto r = run_criterion(id, opt);
    all = all && r.passed;
    if (ctx.json) {
      rows.push_back({{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"detail", r.detail}, {"seconds", r.seconds}});
    } else {
      std::cout << format_results({r}) << std::flush;
    }
  }
  if (ctx.json) std::cout << Json{{"passed", all}, {"criteria", rows}}.dump() << "\n";
  return all ? kExitOk : kExitValidation;
}

// ------------------------------------------------------------ config file

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  std::map<std::string, std::string> out;
  int line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(line_no) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    for (auto& c : key)
      if (c == '_') c = '-';
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

std::optional<std::string> find_config_path(const std::vector<std::string>& args) {
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return std::nullopt;
}

// Inserts config entries as options right after the subcommand token so that
// explicit flags, which come later, take precedence.
std::vector<std::string> apply_config(CLI::App& app, std::vector<std::string> args) {
  const auto path = find_config_path(args);
  if (!path) return args;
  const auto config = read_config(*path);
  std::size_t sub_pos = 0;
  CLI::App* sub = nullptr;
  for (std::size_t i = 1; i < args.size() && !sub; ++i) {
    if (auto* s = app.get_subcommand_no_throw(args[i])) {
      sub = s;
      sub_pos = i;
    }
  }
  std::vector<std::string> injected;
  for (const auto& [key, value] : config) {
    if (key == "config") continue;
    CLI::Option* opt = sub ? sub->get_option_no_throw("--" + key) : nullptr;
    if (!opt) opt = app.get_option_no_throw("--" + key);
    if (!opt) {
      std::cerr << "warning: config key '" << key << "' does not apply to this command\n";
      continue;
    }
    if (opt->get_expected_max() == 0) {
      if (value == "true" || value == "1" || value == "yes") injected.push_back("--" + key);
    } else {
      injected.push_back("--" + key + "=" + value);
    }
  }
  const auto at = sub ? sub_pos + 1 : std::size_t{1};
  args.insert(args.begin() + static_cast<std::ptrdiff_t>(at), injected.begin(), injected.end());
  return args;
}

// First argument that is neither an option nor the value of a global option.
std::optional<std::string> first_command_word(const std::vector<std::string>& args) {
  for (std::size_t i = 1; i < args.size(); ++i) {
    const auto& a = args[i];
    if (a == "--config" || a == "--workers" || a == "--manifest") {
      ++i;
      continue;
    }
    if (!a.empty() && a[0] != '-') return a;
  }
  return std::nullopt;
}

int default_workers() {
  if (const char* env = std::getenv("FQ_WORKERS")) {
    try {
      const int w = std::stoi(env);
      if (w >= 1) return w;
    } catch (const std::logic_error&) {
    }
    std::cerr << "warning: ignoring invalid FQ_WORKERS='" << env << "'\n";
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void emit_manifest(Context& ctx, const CLI::App& app, double seconds) {
  if (ctx.manifest_path.empty() && !ctx.batch) return;
  for (const auto* sub : app.get_subcommands()) {
    ctx.manifest.command = sub->get_name();
    for (const auto* opt : sub->get_options()) {
      if (opt->get_name().empty() || opt->get_name() == "--help") continue;
      const auto results = opt->results();
      if (!results.empty()) ctx.manifest.config.emplace_back(opt->get_name(), results.back());
    }
  }
  ctx.manifest.config.emplace_back("workers", std::to_string(ctx.workers));
  std::sort(ctx.manifest.config.begin(), ctx.manifest.config.end());
  ctx.manifest.wall_seconds = seconds;
  const std::string body = ctx.manifest.to_json() + "\n";
  if (ctx.manifest_path.empty()) {
    std::cerr << "manifest: " << body;
    return;
  }
  std::ofstream out(ctx.manifest_path);
  if (!out) {
    std::cerr << "warning: cannot write manifest '" << ctx.manifest_path << "'\n";
    return;
  }
  out << body;
}

}  // namespace

int main(int argc, char** argv) {
  const auto start = Clock::now();
  Context ctx;
  ctx.workers = default_workers();

  CLI::App app{"Finite n-ary f-shelves, f-racks and f-quandles"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path;
  app.add_flag("--json", ctx.json, "Machine-readable JSON on standard output");
  app.add_option("--config", config_path, "Flat key = value file; explicit flags win");
  app.add_option("--workers", ctx.workers, "Worker threads (default FQ_WORKERS or hardware concurrency)")
      ->check(CLI::PositiveNumber);
  app.add_option("--manifest", ctx.manifest_path, "Write the run manifest to this path");
  app.set_version_flag("--version", std::string(kToolVersion));

  std::function<int()> action;

  CheckArgs check;
  auto* c = app.add_subcommand("check", "Validate a structure file");
  c->add_option("file", check.file, "Structure file (canonical text, JSON or permutation columns; - for stdin)")->required();
  c->add_option("--level", check.level, "shelf, rack, quandle or crossed-set; default reports the highest level");
  c->callback([&] { action = [&] { return run_check(ctx, check); }; });

  ConstructArgs cons;
  auto* k = app.add_subcommand("construct", "Emit a named construction");
  k->add_option("name", cons.name, "trivial, dihedral, affine, conjugation, heap or induced")->required();
  k->add_option("--order", cons.order, "Carrier size (trivial)");
  k->add_option("--arity", cons.arity, "Arity (trivial, induced)");
  k->add_option("--mod", cons.modulus, "Modulus (dihedral, affine)");
  k->add_option("--coeffs", cons.coeffs, "Affine coefficients, e.g. 2,1,1");
  k->add_option("--twist", cons.twist, "Twist images, e.g. 0,0,0");
  k->add_option("--a", cons.a, "Dihedral multiplier");
  k->add_option("--b", cons.b, "Dihedral offset");
  k->add_option("--group", cons.group, "cyclic:<n> or symmetric:<n> (conjugation, heap)");
  k->add_option("--from", cons.from, "Binary structure file (induced)");
  k->add_option("--format", cons.format, "text, json or perm-columns");
  k->add_option("--style", cons.style, "compact or spaced cycles");
  k->callback([&] { action = [&] { return run_construct(ctx, cons); }; });

  SearchArgs search;
  auto add_search = [&](CLI::App* s) {
    s->add_option("--order", search.order, "Carrier size")->required();
    s->add_option("--arity", search.arity, "Arity (2 or 3)");
    s->add_option("--level", search.level, "shelf, rack or quandle");
    s->add_option("--twists", search.twists, "all, identity or bijective");
    s->add_option("--morphism", search.morphism, "require (twist must be an endomorphism) or none");
    s->add_flag("--force", search.force, "Lift the order guardrail");
    s->add_option("--style", search.style, "compact or spaced cycles");
    s->add_option("--out", search.out, "Output file (default standard output)");
  };
  auto* e = app.add_subcommand("enumerate", "List all labeled structures");
  add_search(e);
  e->add_option("--format", search.format, "text, json or perm-columns");
  e->callback([&] { action = [&] { return run_enumerate(ctx, search); }; });
  auto* cl = app.add_subcommand("classify", "Isomorphism classes of all structures");
  add_search(cl);
  cl->callback([&] { action = [&] { return run_classify(ctx, search); }; });

  TwistArgs tw;
  auto* t = app.add_subcommand("twist", "Apply a Yau twist (Q, beta T, beta f)");
  t->add_option("file", tw.file, "Structure file")->required();
  t->add_option("--beta", tw.beta, "Images of the morphism beta, e.g. 0,2,1")->required();
  t->add_option("--format", tw.format, "text, json or perm-columns");
  t->add_option("--style", tw.style, "compact or spaced cycles");
  t->callback([&] { action = [&] { return run_twist(ctx, tw); }; });

  ExtendArgs ex;
  auto* x = app.add_subcommand("extend", "Build the extension X x_alpha A from a cocycle fixture");
  x->add_option("file", ex.file, "Cocycle fixture (JSON)")->required();
  x->add_flag("--unchecked", ex.unchecked, "Skip the cocycle precondition and just report");
  x->add_option("--format", ex.format, "text, json or perm-columns");
  x->add_option("--style", ex.style, "compact or spaced cycles");
  x->callback([&] { action = [&] { return run_extend(ctx, ex); }; });

  CohomologyArgs co;
  auto* h = app.add_subcommand("cohomology", "Cohomology with scalar coefficients in Z_m");
  h->add_option("file", co.file, "Structure file (or use --construct)");
  h->add_option("--construct", co.construct, "affine");
  h->add_option("--mod", co.modulus, "Modulus of the structure and of A = Z_m");
  h->add_option("--coeffs", co.coeffs, "Affine coefficients, e.g. 2,1,1");
  h->add_option("--twist", co.twist, "Twist override for the affine construction");
  h->add_option("--module", co.module, "eta,tau_1,... (default: the affine coefficients)");
  h->add_option("--g", co.g, "Coefficient twist g (default eta + sum of taus)");
  h->add_option("--degree", co.degree, "Cohomological degree p >= 1")->check(CLI::PositiveNumber);
  h->add_flag("--all-cochains", co.all_cochains, "Use every cochain instead of the twist-compatible ones");
  h->add_flag("--basis", co.basis, "List the kernel basis in chi notation");
  h->callback([&] { action = [&] { return run_cohomology(ctx, co); }; });

  ConvertArgs cv;
  auto* v = app.add_subcommand("convert", "Translate between text, JSON and permutation columns");
  v->add_option("file", cv.file, "Structure file")->required();
  v->add_option("--to", cv.to, "text, json or perm-columns");
  v->add_option("--style", cv.style, "compact or spaced cycles");
  v->add_option("--out", cv.out, "Output file (default standard output)");
  v->callback([&] { action = [&] { return run_convert(ctx, cv); }; });

  ReproduceArgs rp;
  auto* r = app.add_subcommand("reproduce", "Run the acceptance suite and print a pass/fail table");
  r->add_option("--only", rp.only, "Comma-separated criterion ids, e.g. C1,C5");
  r->add_option("--data", rp.data, "Directory with the golden table files");
  r->callback([&] { action = [&] { return run_reproduce(ctx, rp); }; });

  std::vector<std::string> args(argv, argv + argc);
  if (const auto word = first_command_word(args); word && !app.get_subcommand_no_throw(*word)) {
    std::cerr << "usage error: unknown subcommand '" << *word << "'\n";
    return kExitUsage;
  }
  try {
    args = apply_config(app, std::move(args));
  } catch (const UsageError& err) {
    std::cerr << "usage error: " << err.what() << "\n";
    return kExitUsage;
  }
  std::vector<char*> raw;
  for (auto& s : args) raw.push_back(s.data());
  try {
    app.parse(static_cast<int>(raw.size()), raw.data());
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  int status = kExitOk;
  try {
    status = action();
  } catch (const UsageError& err) {
    std::cerr << "usage error: " << err.what() << "\n";
    return kExitUsage;
  } catch (const ValidationError& err) {
    std::cerr << "validation failed: " << describe(err.report()) << "\n";
    status = kExitValidation;
  } catch (const PreconditionError& err) {
    std::cerr << "validation failed: " << err.what() << "\n";
    status = kExitValidation;
  } catch (const ParseError& err) {
    std::cerr << "malformed input: " << err.what() << "\n";
    return kExitUsage;
  } catch (const GuardrailError& err) {
    std::cerr << "guardrail refusal: " << err.what() << "\n";
    return kExitUsage;
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  }
  emit_manifest(ctx, app, std::chrono::duration<double>(Clock::now() - start).count());
  return status;
}

#include "fq/cohomology.hpp"

#include <chrono>
#include <numeric>

namespace fq {

ScalarModuleParams ScalarModuleParams::ternary(std::int64_t m, std::int64_t p, std::int64_t q, std::int64_t r) {
  return {m, p, {q, r}, std::nullopt};
}

ScalarModuleParams ScalarModuleParams::binary(std::int64_t m, std::int64_t t, std::int64_t s) {
  return {m, t, {s}, std::nullopt};
}

std::int64_t ScalarModuleParams::g_value() const {
  if (g) return ((*g % modulus) + modulus) % modulus;
  std::int64_t total = eta;
  for (auto t : taus) total += t;
  return ((total % modulus) + modulus) % modulus;
}

void ScalarModuleParams::validate() const {
  if (modulus < 2) throw PreconditionError("coefficient modulus must be at least 2");
  if (taus.empty()) throw ArityError("scalar module needs at least one τ coefficient");
  if (std::gcd(((eta % modulus) + modulus) % modulus, modulus) != 1) {
    throw PreconditionError("η = " + std::to_string(eta) + " is not a unit modulo " + std::to_string(modulus));
  }
}

int cochain_arguments(int arity, int degree) {
  if (degree < 1) throw DimensionError("cochain degree must be at least 1");
  return (arity - 1) * (degree - 1) + 1;
}

Cochain Cochain::zero(int degree, int arity, int order, std::int64_t modulus) {
  const auto size = checked_pow(static_cast<std::size_t>(order), static_cast<std::size_t>(cochain_arguments(arity, degree)));
  return {degree, arity, order, modulus, std::vector<std::int64_t>(size, 0)};
}

Cochain Cochain::indicator(int degree, int arity, int order, std::int64_t modulus, std::span<const Element> tuple) {
  auto c = zero(degree, arity, order, modulus);
  if (static_cast<int>(tuple.size()) != c.arguments()) throw ArityError("indicator tuple has the wrong length");
  c.values[flat_index(order, tuple)] = 1 % modulus;
  return c;
}

Element bracket_eval(const RawStructure& s, std::span<const Element> args) {
  const int n = s.arity();
  if (args.empty() || (args.size() - 1) % static_cast<std::size_t>(n - 1) != 0) {
    throw ArityError("bracket needs (n-1)p+1 arguments, got " + std::to_string(args.size()));
  }
  Element acc = args[0];
  std::vector<Element> call(static_cast<std::size_t>(n));
  auto twist = Endomap::identity(s.order());
  for (std::size_t start = 1; start < args.size(); start += static_cast<std::size_t>(n - 1)) {
    call[0] = acc;
    for (int k = 0; k < n - 1; ++k) call[static_cast<std::size_t>(k + 1)] = twist(args[start + static_cast<std::size_t>(k)]);
    acc = s.op(call);
    twist = s.twist.after(twist);
  }
  return acc;
}

namespace {

void check_shape(const FStructure& s, const ScalarModuleParams& params) {
  params.validate();
  if (s.arity() != 2 && s.arity() != 3) throw UnsupportedError("coboundaries are implemented for arity 2 and 3");
  if (params.arity() != s.arity()) throw ArityError("module coefficients do not match the structure arity");
}

// Visits the terms (source column, coefficient) of row `x` of δ^p, following
//   (−1)^p [ Σ_i (−1)^i ( η φ(x without block i)
//                         − φ(T(x_1, block i), ..., T(x_last before block, block i), f(rest)) )
//            − Σ_j τ^j φ(x_{j+1}, x_{n+1}, ..., x_K) ]
// where block i holds x_{(n-1)(i-1)+2} .. x_{(n-1)i+1}.
template <typename Visit>
void for_each_term(const FStructure& s, const ScalarModuleParams& params, int p, std::span<const Element> x, Visit&& visit) {
  const int n = s.arity();
  const int q = s.order();
  const std::int64_t m = params.modulus;
  const std::int64_t outer = p % 2 == 0 ? 1 : -1;
  std::vector<Element> arg;
  std::vector<Element> call(static_cast<std::size_t>(n));
  const auto K = x.size();
  for (int i = 1; i <= p; ++i) {
    const std::int64_t sign = (i % 2 == 0 ? 1 : -1) * outer;
    const auto bstart = static_cast<std::size_t>((n - 1) * (i - 1) + 1);  // 0-based start of block i
    const auto bend = bstart + static_cast<std::size_t>(n - 1);
    arg.clear();
    for (std::size_t k = 0; k < K; ++k)
      if (k < bstart || k >= bend) arg.push_back(x[k]);
    visit(flat_index(q, arg), (sign * params.eta) % m);

    arg.clear();
    for (std::size_t k = 0; k < bstart; ++k) {
      call[0] = x[k];
      for (std::size_t b = 0; b < static_cast<std::size_t>(n - 1); ++b) call[b + 1] = x[bstart + b];
      arg.push_back(s.op()(call));
    }
    for (std::size_t k = bend; k < K; ++k) arg.push_back(s.twist()(x[k]));
    visit(flat_index(q, arg), -sign);
  }
  for (int j = 1; j <= n - 1; ++j) {
    arg.clear();
    arg.push_back(x[static_cast<std::size_t>(j)]);
    for (std::size_t k = static_cast<std::size_t>(n); k < K; ++k) arg.push_back(x[k]);
    visit(flat_index(q, arg), (-outer * params.taus[static_cast<std::size_t>(j - 1)]) % m);
  }
}

std::int64_t mod(std::int64_t v, std::int64_t m) {
  v %= m;
  return v < 0 ? v + m : v;
}

std::vector<std::int64_t> apply_delta(const FStructure& s, const ScalarModuleParams& params, int p,
                                      const std::vector<std::int64_t>& phi) {
  const int q = s.order();
  const auto K = static_cast<std::size_t>(cochain_arguments(s.arity(), p + 1));
  const auto rows = checked_pow(static_cast<std::size_t>(q), K);
  const std::int64_t m = params.modulus;
  std::vector<std::int64_t> out(rows, 0);
  std::vector<Element> x(K);
  for (std::size_t r = 0; r < rows; ++r) {
    unflatten(q, r, x);
    std::int64_t acc = 0;
    for_each_term(s, params, p, x, [&](std::size_t col, std::int64_t coeff) { acc = mod(acc + coeff * phi[col], m); });
    out[r] = acc;
  }
  return out;
}

std::vector<std::vector<std::int64_t>> columns_of(const IntMatrix& a, const std::vector<std::vector<std::int64_t>>& vs) {
  std::vector<std::vector<std::int64_t>> out;
  out.reserve(vs.size());
  for (const auto& v : vs) out.push_back(multiply(a, v));
  return out;
}

std::vector<std::int64_t> combine(const std::vector<std::vector<std::int64_t>>& cols, const std::vector<std::int64_t>& w,
                                  std::size_t length, std::int64_t m) {
  std::vector<std::int64_t> out(length, 0);
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (w[j] == 0) continue;
    for (std::size_t i = 0; i < length; ++i) out[i] = (out[i] + w[j] * cols[j][i]) % m;
  }
  return out;
}

// δ^p stacked with the compatibility constraints when requested.
IntMatrix kernel_system(const FStructure& s, const ScalarModuleParams& params, int p, const CohomologyOptions& options) {
  auto m = coboundary_matrix(s, params, p).matrix;
  if (options.twist_compatible) m = m.stacked(twist_constraint_matrix(s, params, p));
  return m;
}

}  // namespace

Cochain coboundary_apply(const FStructure& s, const ScalarModuleParams& params, const Cochain& phi) {
  check_shape(s, params);
  if (phi.arity != s.arity() || phi.order != s.order() || phi.modulus != params.modulus) {
    throw DimensionError("cochain shape does not match the structure and coefficients");
  }
  const auto expected = checked_pow(static_cast<std::size_t>(s.order()), static_cast<std::size_t>(phi.arguments()));
  if (phi.values.size() != expected) throw DimensionError("cochain table has the wrong length");
  return {phi.degree + 1, phi.arity, phi.order, phi.modulus, apply_delta(s, params, phi.degree, phi.values)};
}

CochainMatrix coboundary_matrix(const FStructure& s, const ScalarModuleParams& params, int degree) {
  check_shape(s, params);
  const int q = s.order();
  const auto src = checked_pow(static_cast<std::size_t>(q), static_cast<std::size_t>(cochain_arguments(s.arity(), degree)));
  const auto K = static_cast<std::size_t>(cochain_arguments(s.arity(), degree + 1));
  const auto rows = checked_pow(static_cast<std::size_t>(q), K);
  if (rows * src > kMaxMatrixEntries) {
    throw SizeLimitError("coboundary matrix " + std::to_string(rows) + "x" + std::to_string(src) + " exceeds the size limit");
  }
  IntMatrix mat(rows, src, params.modulus);
  std::vector<Element> x(K);
  for (std::size_t r = 0; r < rows; ++r) {
    unflatten(q, r, x);
    for_each_term(s, params, degree, x,
                  [&](std::size_t col, std::int64_t coeff) { mat(r, col) = mod(mat(r, col) + coeff, params.modulus); });
  }
  return {degree, std::move(mat)};
}

IntMatrix twist_constraint_matrix(const FStructure& s, const ScalarModuleParams& params, int degree) {
  check_shape(s, params);
  const int q = s.order();
  const auto k = static_cast<std::size_t>(cochain_arguments(s.arity(), degree));
  const auto size = checked_pow(static_cast<std::size_t>(q), k);
  const std::int64_t g = params.g_value();
  IntMatrix mat(size, size, params.modulus);
  std::vector<Element> x(k);
  for (std::size_t r = 0; r < size; ++r) {
    unflatten(q, r, x);
    for (auto& v : x) v = s.twist()(v);
    const auto fc = flat_index(q, x);
    mat(r, fc) = mod(mat(r, fc) + 1, params.modulus);
    mat(r, r) = mod(mat(r, r) - g, params.modulus);
  }
  return mat;
}

std::vector<std::vector<std::int64_t>> cochain_space_generators(const FStructure& s, const ScalarModuleParams& params,
                                                                 int degree, const CohomologyOptions& options) {
  check_shape(s, params);
  if (options.twist_compatible) {
    auto c = twist_constraint_matrix(s, params, degree);
    if (is_prime(params.modulus)) return kernel_basis_mod_p(c);
    return kernel_mod(c).generators;
  }
  const auto size =
      checked_pow(static_cast<std::size_t>(s.order()), static_cast<std::size_t>(cochain_arguments(s.arity(), degree)));
  std::vector<std::vector<std::int64_t>> out(size, std::vector<std::int64_t>(size, 0));
  for (std::size_t i = 0; i < size; ++i) out[i][i] = 1;
  return out;
}

CohomologyResult cohomology_group(const FStructure& s, const ScalarModuleParams& params, int degree,
                                  const CohomologyOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  check_shape(s, params);
  if (degree < 1) throw DimensionError("cohomology degree must be at least 1");
  const std::int64_t m = params.modulus;
  CohomologyResult res;
  res.degree = degree;
  res.modulus = m;
  res.prime_modulus = is_prime(m);

  const auto system = kernel_system(s, params, degree, options);
  const std::size_t length = system.cols();

  // Image of δ^{p-1} restricted to cochains whose image lies in the kernel.
  std::vector<std::vector<std::int64_t>> image_gens, preimages;
  if (degree > 1) {
    const auto prev = coboundary_matrix(s, params, degree - 1).matrix;
    const auto B = cochain_space_generators(s, params, degree - 1, options);
    const auto A = columns_of(prev, B);
    std::vector<std::vector<std::int64_t>> sys_cols;
    for (const auto& a : A) sys_cols.push_back(multiply(system, a));
    const auto NA = IntMatrix::from_columns(sys_cols, system.rows(), m);
    const auto W = res.prime_modulus ? kernel_basis_mod_p(NA) : kernel_mod(NA).generators;
    for (const auto& w : W) {
      image_gens.push_back(combine(A, w, prev.rows(), m));
      preimages.push_back(combine(B, w, prev.cols(), m));
    }
  }

  if (res.prime_modulus) {
    res.kernel_basis = kernel_basis_mod_p(system);
    res.dim_ker = res.kernel_basis.size();
    for (auto idx : independent_subset_mod_p(image_gens, m)) {
      res.image_basis.push_back(image_gens[idx]);
      res.image_preimages.push_back(preimages[idx]);
    }
    res.dim_im_prev = res.image_basis.size();
    res.h_dim = res.dim_ker - res.dim_im_prev;
    res.invariant_factors.assign(*res.h_dim, m);
    auto all = res.image_basis;
    all.insert(all.end(), res.kernel_basis.begin(), res.kernel_basis.end());
    for (auto idx : independent_subset_mod_p(all, m))
      if (idx >= res.image_basis.size()) res.quotient_representatives.push_back(all[idx]);

    const auto full_ker = kernel_basis_mod_p(coboundary_matrix(s, params, degree).matrix).size();
    const std::size_t full_prev = degree > 1 ? rank_mod_p(coboundary_matrix(s, params, degree - 1).matrix) : 0;
    res.unrestricted_difference = static_cast<std::int64_t>(full_ker) - static_cast<std::int64_t>(full_prev);
  } else {
    const auto snf = smith_normal_form_mod(system);
    std::vector<std::int64_t> scale;
    std::vector<std::size_t> coords;
    for (std::size_t i = 0; i < length; ++i) {
      const std::int64_t d = i < snf.diagonal.size() ? snf.diagonal[i] : 0;
      const std::int64_t order = std::gcd(d, m);
      if (order == 1) continue;
      const std::int64_t e = m / order;
      auto v = snf.V.column(i);
      for (auto& x : v) x = x * e % m;
      res.kernel_basis.push_back(std::move(v));
      res.kernel_orders.push_back(order);
      scale.push_back(e);
      coords.push_back(i);
    }
    res.dim_ker = res.kernel_basis.size();
    std::vector<std::vector<std::int64_t>> relations;
    for (std::size_t g = 0; g < image_gens.size(); ++g) {
      const auto y = multiply(snf.V_inv, image_gens[g]);
      std::vector<std::int64_t> z(coords.size());
      for (std::size_t c = 0; c < coords.size(); ++c) {
        const std::int64_t yi = y[coords[c]];
        if (yi % scale[c] != 0) throw Error("internal consistency: image vector outside the kernel");
        z[c] = (yi / scale[c]) % res.kernel_orders[c];
      }
      relations.push_back(std::move(z));
      res.image_basis.push_back(image_gens[g]);
      res.image_preimages.push_back(preimages[g]);
    }
    res.dim_im_prev = res.image_basis.size();
    res.invariant_factors = quotient_invariant_factors(res.kernel_orders, relations, m);
  }
  res.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return res;
}

ComplexReport verify_complex(const FStructure& s, const ScalarModuleParams& params, int p_max,
                             const CohomologyOptions& options) {
  check_shape(s, params);
  for (int p = 1; p < p_max; ++p) {
    for (const auto& phi : cochain_space_generators(s, params, p, options)) {
      const auto once = apply_delta(s, params, p, phi);
      const auto twice = apply_delta(s, params, p + 1, once);
      for (std::size_t r = 0; r < twice.size(); ++r) {
        if (twice[r] == 0) continue;
        ComplexReport rep;
        rep.passed = false;
        rep.degree = p;
        rep.witness_cochain = phi;
        rep.witness_tuple.resize(static_cast<std::size_t>(cochain_arguments(s.arity(), p + 2)));
        unflatten(s.order(), r, rep.witness_tuple);
        rep.witness_value = twice[r];
        return rep;
      }
    }
  }
  return {};
}

std::string format_chi(const std::vector<std::int64_t>& values, int order, int arguments) {
  std::string out;
  TupleCounter tc(order, static_cast<std::size_t>(arguments));
  for (; !tc.done(); tc.next()) {
    const auto v = values[flat_index(order, tc.value())];
    if (v == 0) continue;
    if (!out.empty()) out += '+';
    if (v != 1) out += std::to_string(v);
    out += "χ_";
    if (arguments == 1) {
      out += std::to_string(tc[0]);
    } else {
      out += '(' + join_elements(tc.value(), ",") + ')';
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace fq

#include "splinemod/engine.hpp"

#include "splinemod/error.hpp"
#include "splinemod/normal_form.hpp"
#include "splinemod/number_theory.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace splinemod {

namespace {

Integer big(std::int64_t v) { return Integer(static_cast<long>(v)); }

std::int64_t reduce(const Integer& x, std::int64_t m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), big(m).get_mpz_t());
  return r.get_si();
}

Spline column_mod(const IntMatrix& a, std::size_t j, std::int64_t m) {
  Spline s{std::vector<std::int64_t>(a.rows()), m};
  for (std::size_t i = 0; i < a.rows(); ++i) s.values[i] = m > 0 ? reduce(a(i, j), m) : a(i, j).get_si();
  return s;
}

// Solves B x = rhs for lower-triangular B with nonzero diagonal; the solution
// must be integral.
std::vector<Integer> forward_solve(const IntMatrix& b, const std::vector<Integer>& rhs) {
  const std::size_t n = b.rows();
  std::vector<Integer> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    Integer acc = rhs[i];
    for (std::size_t k = 0; k < i; ++k) acc -= b(i, k) * x[k];
    if (!mpz_divisible_p(acc.get_mpz_t(), b(i, i).get_mpz_t()))
      throw Error(ErrorCode::InternalInconsistency, "lattice does not contain the expected vector");
    mpz_divexact(x[i].get_mpz_t(), acc.get_mpz_t(), b(i, i).get_mpz_t());
  }
  return x;
}

// Lattice spanned by the columns of `gens` (n rows), as a flow-up basis.
LatticeBasis basis_of(const IntMatrix& gens, std::int64_t modulus) {
  HnfResult h = hnf(gens);
  return LatticeBasis{h.h.columns(0, h.rank), modulus, h.pivot_rows};
}

IntMatrix spline_columns(const std::vector<Spline>& splines, std::size_t n, std::int64_t m, bool adjoin_m) {
  IntMatrix a(n, splines.size() + (adjoin_m ? n : 0));
  for (std::size_t j = 0; j < splines.size(); ++j) {
    if (splines[j].size() != n) throw Error(ErrorCode::LengthMismatch, "spline length differs from vertex count");
    for (std::size_t i = 0; i < n; ++i) a(i, j) = big(splines[j].values[i]);
  }
  if (adjoin_m)
    for (std::size_t i = 0; i < n; ++i) a(i, splines.size() + i) = big(m);
  return a;
}

}  // namespace

std::vector<std::int64_t> LatticeBasis::column(std::size_t j) const {
  std::vector<std::int64_t> out(b.rows());
  for (std::size_t i = 0; i < b.rows(); ++i) out[i] = b(i, j).get_si();
  return out;
}

bool LatticeBasis::contains(const std::vector<Integer>& x) const {
  std::vector<Integer> r = x;
  for (std::size_t k = 0; k < b.cols(); ++k) {
    const std::size_t p = pivot_rows[k];
    if (!mpz_divisible_p(r[p].get_mpz_t(), b(p, k).get_mpz_t())) return false;
    const Integer q = r[p] / b(p, k);
    for (std::size_t i = p; i < b.rows(); ++i) r[i] -= q * b(i, k);
  }
  return std::all_of(r.begin(), r.end(), [](const Integer& v) { return sgn(v) == 0; });
}

Integer SplineModule::order() const {
  if (integer_mode()) return mgs.empty() ? 1 : 0;
  Integer out = 1;
  for (auto d : invariant_factors) out *= big(d);
  return out;
}

LatticeBasis integer_lattice(const EdgeLabeledGraph& g) {
  const std::size_t n = g.vertex_count();
  const auto& edges = g.edges();
  // kernel of f, y -> (f_u - f_v + g_e y_e)_e
  IntMatrix a(edges.size(), n + edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    a(e, edges[e].u) += 1;
    a(e, edges[e].v) -= 1;
    a(e, n + e) = big(g.ideal_generator(edges[e]));
  }
  const HnfResult h = hnf(a);
  const std::size_t kernel_dim = a.cols() - h.rank;
  IntMatrix proj(n, kernel_dim);
  for (std::size_t j = 0; j < kernel_dim; ++j)
    for (std::size_t i = 0; i < n; ++i) proj(i, j) = h.u(i, h.rank + j);
  return basis_of(proj, g.modulus());
}

std::vector<Spline> flow_up_generators(const EdgeLabeledGraph& g) {
  const LatticeBasis lb = integer_lattice(g);
  std::vector<Spline> out;
  for (std::size_t j = 0; j < lb.size(); ++j) {
    Spline s = column_mod(lb.b, j, g.modulus());
    if (!s.is_zero()) out.push_back(std::move(s));
  }
  return out;
}

SplineModule invariant_factors(const EdgeLabeledGraph& g) {
  if (g.integer_mode()) throw Error(ErrorCode::IntegerMode, "invariant factors need a modulus m >= 1");
  const std::int64_t m = g.modulus();
  const std::size_t n = g.vertex_count();
  const LatticeBasis lb = integer_lattice(g);
  const IntMatrix& b = lb.b;

  IntMatrix coords(n, n);  // m * B^{-1}
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Integer> rhs(n);
    rhs[j] = big(m);
    const auto x = forward_solve(b, rhs);
    for (std::size_t i = 0; i < n; ++i) coords(i, j) = x[i];
  }
  const SnfResult s = snf(coords);
  const IntMatrix gens = b * s.u_inverse;

  SplineModule out;
  out.modulus = m;
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t d = s.d[i].get_si();
    out.raw_factors.push_back(d);
    if (d == 1) continue;
    out.invariant_factors.push_back(d);
    out.mgs.push_back(column_mod(gens, i, m));
  }
  for (std::size_t j = 0; j < n; ++j) {
    Spline f = column_mod(b, j, m);
    if (!f.is_zero()) out.flow_up.push_back(std::move(f));
  }
  return out;
}

Solution solve(const EdgeLabeledGraph& g) {
  Normalized norm = normalize(g);
  SplineModule mod;
  if (g.integer_mode()) {
    mod.modulus = 0;
    const LatticeBasis lb = integer_lattice(norm.graph);
    for (std::size_t j = 0; j < lb.size(); ++j) mod.flow_up.push_back(column_mod(lb.b, j, 0));
    mod.mgs = mod.flow_up;
  } else {
    mod = invariant_factors(norm.graph);
  }
  for (auto& s : mod.mgs) s = norm.report.pull_back(s);
  for (auto& s : mod.flow_up) s = norm.report.pull_back(s);
  return Solution{std::move(mod), std::move(norm.report)};
}

std::size_t rank(const EdgeLabeledGraph& g) { return solve(g).module.rank(); }

Presentation trivial_first_presentation(const EdgeLabeledGraph& g) {
  if (g.modulus() < 2) throw Error(ErrorCode::PreconditionViolated, "presentation needs m >= 2");
  const std::int64_t m = g.modulus();
  const std::size_t n = g.vertex_count();
  const LatticeBasis lb = integer_lattice(g);
  const IntMatrix& b = lb.b;

  // [m B^{-1} | B^{-1} 1]: the quotient L / (mZ^n + Z 1)
  IntMatrix rel(n, n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    std::vector<Integer> rhs(n, j == n ? Integer(1) : Integer(0));
    if (j < n) rhs[j] = big(m);
    const auto x = forward_solve(b, rhs);
    for (std::size_t i = 0; i < n; ++i) rel(i, j) = x[i];
  }
  const SnfResult s = snf(rel);
  const IntMatrix gens = b * s.u_inverse;

  Presentation out;
  out.generators.push_back(Spline::trivial(n, m));
  out.orders.push_back(m);
  std::vector<std::pair<Spline, std::int64_t>> rest;
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t e = s.d[i].get_si();
    if (e == 1) continue;
    Spline lift = column_mod(gens, i, m);
    // e * lift is c * 1 mod m; shift by (c / e) * 1 so the order drops to e
    const std::int64_t c = static_cast<std::int64_t>(static_cast<__int128>(lift.values[0]) * e % m);
    if (c % e != 0) throw Error(ErrorCode::InternalInconsistency, "trivial summand does not split");
    lift = lift + Spline::trivial(n, m).scaled(m - c / e);
    if (lift.order() != e) throw Error(ErrorCode::InternalInconsistency, "lifted generator has the wrong order");
    rest.emplace_back(std::move(lift), e);
  }
  std::stable_sort(rest.begin(), rest.end(),
                   [](const auto& x, const auto& y) { return x.first.leading_vertex() > y.first.leading_vertex(); });
  for (auto& [sp, e] : rest) {
    out.generators.push_back(std::move(sp));
    out.orders.push_back(e);
  }
  return out;
}

bool generates_module(const EdgeLabeledGraph& g, const std::vector<Spline>& generators) {
  const std::size_t n = g.vertex_count();
  for (const auto& s : generators)
    if (!spline_check(g, s)) return false;
  const LatticeBasis lb = integer_lattice(g);
  const bool adjoin = !g.integer_mode();
  return same_column_lattice(spline_columns(generators, n, g.modulus(), adjoin),
                             adjoin ? [&] {
                               IntMatrix a(n, lb.size() + n);
                               for (std::size_t i = 0; i < n; ++i) {
                                 for (std::size_t j = 0; j < lb.size(); ++j) a(i, j) = lb.b(i, j);
                                 a(i, lb.size() + i) = big(g.modulus());
                               }
                               return a;
                             }()
                                    : lb.b);
}

bool same_span(const std::vector<Spline>& a, const std::vector<Spline>& b, std::size_t n, std::int64_t modulus) {
  const bool adjoin = modulus > 0;
  return same_column_lattice(spline_columns(a, n, modulus, adjoin), spline_columns(b, n, modulus, adjoin));
}

bool module_isomorphic(const SplineModule& a, const SplineModule& b) {
  return a.invariant_factors == b.invariant_factors && a.integer_mode() == b.integer_mode() &&
         (!a.integer_mode() || a.rank() == b.rank());
}

ExtensionAnalysis extension_analysis(const EdgeLabeledGraph& g, const EdgeLabeledGraph& g_plus,
                                     const std::string& v) {
  const std::int64_t m = g.modulus();
  if (g_plus.modulus() != m) throw Error(ErrorCode::NotAnExtension, "moduli differ");
  std::size_t vplus = 0;
  try {
    vplus = g_plus.index_of(v);
  } catch (const Error&) {
    throw Error(ErrorCode::NotAnExtension, "new vertex '" + v + "' is not in the extended graph");
  }
  if (g_plus.vertex_count() != g.vertex_count() + 1)
    throw Error(ErrorCode::NotAnExtension, "extended graph must have exactly one more vertex");

  // g vertex index -> g_plus vertex index
  std::vector<std::size_t> to_plus(g.vertex_count());
  std::vector<std::size_t> from_plus(g_plus.vertex_count(), g.vertex_count());
  for (std::size_t i = 0; i < g.vertex_count(); ++i) {
    std::size_t j = 0;
    try {
      j = g_plus.index_of(g.names()[i]);
    } catch (const Error&) {
      throw Error(ErrorCode::NotAnExtension, "vertex '" + g.names()[i] + "' missing from the extended graph");
    }
    if (j == vplus) throw Error(ErrorCode::NotAnExtension, "new vertex already present in the base graph");
    to_plus[i] = j;
    from_plus[j] = i;
  }

  using Key = std::tuple<std::size_t, std::size_t, std::int64_t>;
  auto key = [](std::size_t a, std::size_t b, std::int64_t l) { return Key{std::min(a, b), std::max(a, b), l}; };
  std::vector<Key> base, restricted;
  for (const auto& e : g.edges()) base.push_back(key(e.u, e.v, e.label));

  ExtensionAnalysis out;
  out.new_vertex = v;
  bool zero_incident = false;
  for (const auto& e : g_plus.edges()) {
    if (e.u == vplus || e.v == vplus) {
      const std::int64_t gen = g_plus.ideal_generator(e);
      if (gen == 0) zero_incident = true;
      else out.n_lcm = lcm64(out.n_lcm, gen);
      continue;
    }
    restricted.push_back(key(from_plus[e.u], from_plus[e.v], e.label));
  }
  std::sort(base.begin(), base.end());
  std::sort(restricted.begin(), restricted.end());
  if (base != restricted) throw Error(ErrorCode::NotAnExtension, "edges off the new vertex differ from the base graph");

  if (m > 0) {
    out.kernel_order = m / gcd64(out.n_lcm, m);
  } else if (zero_incident) {
    out.n_lcm = 0;
    out.kernel_order = 1;
  }

  const LatticeBasis plus = integer_lattice(g_plus);
  IntMatrix proj(g.vertex_count(), plus.size());
  for (std::size_t i = 0; i < g.vertex_count(); ++i)
    for (std::size_t j = 0; j < plus.size(); ++j) proj(i, j) = plus.b(to_plus[i], j);
  const LatticeBasis image = basis_of(proj, m);
  const LatticeBasis base_lattice = integer_lattice(g);
  for (std::size_t j = 0; j < base_lattice.size(); ++j) {
    if (image.contains(base_lattice.b.column(j))) continue;
    out.pi_surjective = false;
    out.unlifted = column_mod(base_lattice.b, j, m);
    break;
  }
  return out;
}

}  // namespace splinemod

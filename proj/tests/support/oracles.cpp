#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>

namespace oracle {

using kstab::MonomialOrder;
using kstab::Ring;

std::vector<Monomial> monomials_of_degree(std::size_t nvars, long degree) {
  std::vector<Monomial> out;
  if (degree < 0) return out;
  if (nvars == 0) {
    if (degree == 0) out.push_back(Monomial::one());
    return out;
  }
  Monomial m;
  std::function<void(std::size_t, long)> rec = [&](std::size_t i, long left) {
    if (i + 1 == nvars) {
      m.exp[i] = static_cast<std::uint16_t>(left);
      out.push_back(m);
      m.exp[i] = 0;
      return;
    }
    for (long e = left; e >= 0; --e) {
      m.exp[i] = static_cast<std::uint16_t>(e);
      rec(i + 1, left - e);
    }
    m.exp[i] = 0;
  };
  rec(0, degree);
  return out;
}

namespace {

Rational small_coefficient(Rng& rng) {
  long c = 0;
  while (c == 0) c = rng.uniform(-3, 3);
  return Rational(c);
}

}  // namespace

Polynomial random_polynomial(Rng& rng, const RingPtr& ring, int terms, long min_deg, long max_deg) {
  Polynomial p(ring);
  while (p.is_zero()) {
    for (int t = 0; t < terms; ++t) {
      const auto monos = monomials_of_degree(ring->size(), rng.uniform(min_deg, max_deg));
      const auto& m = monos[rng.next() % monos.size()];
      p += Polynomial::monomial(ring, m, small_coefficient(rng));
    }
  }
  return p;
}

Polynomial random_form(Rng& rng, const RingPtr& ring, int terms, long degree) {
  return random_polynomial(rng, ring, terms, degree, degree);
}

std::size_t rank(std::vector<std::vector<Rational>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t pivot = r;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[r], rows[pivot]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      const Rational f = rows[i][c] / rows[r][c];
      for (std::size_t k = c; k < cols; ++k) rows[i][k] -= f * rows[r][k];
    }
    ++r;
  }
  return r;
}

Integer dense_graded_dimension(const Ideal& I, long degree) {
  const std::size_t n = I.ring()->size();
  const auto basis = monomials_of_degree(n, degree);
  std::map<Monomial, std::size_t> column;
  for (std::size_t i = 0; i < basis.size(); ++i) column[basis[i]] = i;

  std::vector<std::vector<Rational>> rows;
  for (const auto& g : I.generators()) {
    if (g.is_zero()) continue;
    const long e = g.total_degree();
    for (const auto& m : monomials_of_degree(n, degree - e)) {
      std::vector<Rational> row(basis.size());
      for (const auto& t : g.terms()) row[column.at(t.mono * m)] = t.coef;
      rows.push_back(std::move(row));
    }
  }
  return Integer(static_cast<long>(basis.size())) - static_cast<long>(rank(std::move(rows)));
}

long monomial_order(const Monomial& m, const std::vector<Monomial>& ideal_gens, long cap) {
  std::set<Monomial> power{Monomial::one()};
  long j = 0;
  while (j < cap) {
    std::set<Monomial> next;
    for (const auto& a : power)
      for (const auto& g : ideal_gens) next.insert(a * g);
    bool inside = false;
    for (const auto& a : next) inside = inside || a.divides(m);
    if (!inside) return j;
    power = std::move(next);
    ++j;
  }
  return cap;
}

Integer eigenweight(const std::vector<Monomial>& variety_gens, const std::vector<Monomial>& z_gens, std::size_t nvars,
                    long d, long ck, long k) {
  Integer total = 0;
  for (const auto& mu : monomials_of_degree(nvars, d * k)) {
    bool standard = true;
    for (const auto& g : variety_gens) standard = standard && !g.divides(mu);
    if (!standard) continue;
    const long ord = monomial_order(mu, z_gens, ck);
    total += std::min(ord, ck) - ck;
  }
  return total;
}

std::vector<Ideal> elimination_tilde(const Ideal& I, const Ideal& center, long j_max) {
  const RingPtr& S = I.ring();
  std::vector<Polynomial> g;
  const Ideal reduced_center = center.interreduced();
  for (const auto& p : reduced_center.generators())
    if (!p.is_zero()) g.push_back(p);

  std::vector<std::string> names = S->names();
  const std::size_t v_index = names.size();
  names.push_back("v_");
  for (std::size_t i = 0; i < g.size(); ++i) names.push_back("T" + std::to_string(i) + "_");
  RingPtr big = std::make_shared<const Ring>(names, std::vector<std::vector<long>>{std::vector<long>(names.size(), 1)});

  std::vector<Polynomial> gens;
  for (const auto& f : I.generators()) gens.push_back(f.embed(big));
  const Polynomial v = Polynomial::variable(big, v_index);
  for (std::size_t i = 0; i < g.size(); ++i)
    gens.push_back(Polynomial::variable(big, v_index + 1 + i) - g[i].embed(big) * v);

  const auto G = kstab::reduced_groebner(gens, MonomialOrder::block_elimination(names.size(), {{v_index}}));

  std::map<std::string, Polynomial> back{{"v_", Polynomial(S)}};
  for (std::size_t i = 0; i < g.size(); ++i) back.emplace("T" + std::to_string(i) + "_", g[i]);

  std::vector<std::pair<long, Polynomial>> images;
  for (const auto& p : G.generators()) {
    if (p.is_zero()) continue;
    long e = -1;
    bool has_v = false;
    for (const auto& t : p.terms()) {
      has_v = has_v || t.mono.exp[v_index] != 0;
      long te = 0;
      for (std::size_t i = 0; i < g.size(); ++i) te += t.mono.exp[v_index + 1 + i];
      e = std::max(e, te);
    }
    if (has_v) continue;
    images.emplace_back(e, kstab::substitute(p, back, S));
  }

  std::vector<Ideal> out;
  for (long j = 0; j <= j_max; ++j) {
    Ideal C = Ideal::zero(S);
    for (const auto& [e, q] : images) {
      if (e > j) continue;
      const Ideal part = kstab::ideal_product(Ideal::principal(q), kstab::ideal_power(center, static_cast<unsigned>(j - e)));
      C = kstab::ideal_sum(C, part);
    }
    out.push_back(C.interreduced());
  }
  return out;
}

}  // namespace oracle

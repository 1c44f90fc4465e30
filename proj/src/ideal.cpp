#include "kstab/ideal.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <limits>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>

#include "kstab/errors.hpp"

namespace kstab {

struct Ideal::Slot {
  std::mutex mutex;
  std::shared_ptr<const GroebnerBasis> grevlex;
};

Ideal::Ideal(RingPtr ring, std::vector<Polynomial> generators)
    : ring_(std::move(ring)), generators_(std::move(generators)), slot_(std::make_shared<Slot>()) {
  for (const auto& g : generators_) require_same_ring(ring_, g.ring(), "ideal construction");
  std::erase_if(generators_, [](const Polynomial& g) { return g.is_zero(); });
  if (generators_.empty()) generators_.push_back(Polynomial(ring_));
}

Ideal Ideal::zero(RingPtr ring) { return Ideal(std::move(ring), {}); }

Ideal Ideal::unit(RingPtr ring) {
  auto one = Polynomial::constant(ring, 1);
  return Ideal(std::move(ring), {std::move(one)});
}

Ideal Ideal::principal(const Polynomial& f) { return Ideal(f.ring(), {f}); }

const GroebnerBasis& Ideal::basis() const {
  std::lock_guard lock(slot_->mutex);
  if (!slot_->grevlex) slot_->grevlex = cached_groebner(generators_, MonomialOrder::grevlex(ring_->size()));
  return *slot_->grevlex;
}

std::shared_ptr<const GroebnerBasis> Ideal::basis(const MonomialOrder& order) const {
  return cached_groebner(generators_, order);
}

bool Ideal::is_zero() const { return generators_.size() == 1 && generators_[0].is_zero(); }

bool Ideal::is_unit() const { return basis().is_unit(); }

bool Ideal::is_monomial() const {
  return std::all_of(generators_.begin(), generators_.end(),
                     [](const Polynomial& g) { return g.is_zero() || g.is_monomial(); });
}

bool Ideal::is_homogeneous_total() const {
  return std::all_of(generators_.begin(), generators_.end(),
                     [](const Polynomial& g) { return g.is_homogeneous_total(); });
}

bool Ideal::contains(const Polynomial& f) const {
  require_same_ring(ring_, f.ring(), "ideal membership");
  if (f.is_zero()) return true;
  return normal_form(f, basis()).is_zero();
}

bool Ideal::contains(const Ideal& J) const {
  return std::all_of(J.generators().begin(), J.generators().end(), [this](const Polynomial& g) { return contains(g); });
}

Ideal Ideal::interreduced() const {
  if (is_zero()) return *this;
  return Ideal(ring_, basis().generators());
}

Ideal Ideal::embed(RingPtr target) const {
  std::vector<Polynomial> gens;
  for (const auto& g : generators_) gens.push_back(g.embed(target));
  return Ideal(std::move(target), std::move(gens));
}

std::string Ideal::to_string() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < generators_.size(); ++i) os << (i ? ", " : "") << generators_[i].to_string();
  os << ")";
  return os.str();
}

bool ideal_member(const Polynomial& f, const Ideal& I) { return I.contains(f); }

bool ideal_equal(const Ideal& I, const Ideal& J) {
  require_same_ring(I.ring(), J.ring(), "ideal_equal");
  return I.contains(J) && J.contains(I);
}

Ideal ideal_sum(const Ideal& I, const Ideal& J) {
  require_same_ring(I.ring(), J.ring(), "ideal_sum");
  auto gens = I.generators();
  gens.insert(gens.end(), J.generators().begin(), J.generators().end());
  return Ideal(I.ring(), std::move(gens));
}

Ideal ideal_product(const Ideal& I, const Ideal& J) {
  require_same_ring(I.ring(), J.ring(), "ideal_product");
  std::vector<Polynomial> gens;
  for (const auto& f : I.generators())
    for (const auto& g : J.generators()) gens.push_back(f * g);
  return Ideal(I.ring(), std::move(gens));
}

Ideal ideal_power(const Ideal& I, unsigned m) {
  if (m == 0) return Ideal::unit(I.ring());
  const Ideal base = I.interreduced();
  Ideal acc = base;
  for (unsigned k = 1; k < m; ++k) acc = ideal_product(acc, base).interreduced();
  return acc;
}

namespace {

Polynomial restrict_to(const Polynomial& f, const RingPtr& base) {
  for (const auto& t : f.terms())
    for (std::size_t i = base->size(); i < kMaxVariables; ++i)
      if (t.mono.exp[i] != 0) throw InvariantViolation("auxiliary variable leaked out of an elimination");
  return Polynomial(base, f.terms());
}

bool involves_beyond(const Polynomial& f, std::size_t first) {
  return std::any_of(f.terms().begin(), f.terms().end(), [first](const Term& t) {
    for (std::size_t i = first; i < kMaxVariables; ++i)
      if (t.mono.exp[i] != 0) return true;
    return false;
  });
}

Ideal monomial_intersect(const Ideal& I, const Ideal& J) {
  std::vector<Polynomial> gens;
  for (const auto& f : I.basis().generators())
    for (const auto& g : J.basis().generators())
      gens.push_back(Polynomial::monomial(I.ring(), f.terms()[0].mono.lcm(g.terms()[0].mono)));
  return Ideal(I.ring(), std::move(gens)).interreduced();
}

std::optional<std::size_t> as_variable(const Polynomial& g) {
  if (!g.is_monomial() || g.terms()[0].mono.total_degree() != 1) return std::nullopt;
  const auto& e = g.terms()[0].mono.exp;
  for (std::size_t i = 0; i < kMaxVariables; ++i)
    if (e[i] == 1) return i;
  return std::nullopt;
}

// (I : v^k) for homogeneous I via a grevlex basis with v last; k = 0 means v^inf.
Ideal revlex_variable_quotient(const Ideal& I, std::size_t v, unsigned k) {
  const auto G = I.basis(MonomialOrder::grevlex_last(I.ring()->size(), v));
  std::vector<Polynomial> gens;
  for (const auto& g : G->generators()) {
    unsigned common = std::numeric_limits<unsigned>::max();
    for (const auto& t : g.terms()) common = std::min<unsigned>(common, t.mono.exp[v]);
    if (k != 0) common = std::min(common, k);
    gens.push_back(g.divide_by_monomial(Monomial::variable(v, common)));
  }
  return Ideal(I.ring(), std::move(gens)).interreduced();
}

}  // namespace

Ideal ideal_intersect(const Ideal& I, const Ideal& J) {
  require_same_ring(I.ring(), J.ring(), "ideal_intersect");
  if (I.is_zero() || J.is_zero()) return Ideal::zero(I.ring());
  if (I.is_unit()) return J;
  if (J.is_unit()) return I;
  if (I.is_monomial() && J.is_monomial()) return monomial_intersect(I, J);

  const RingPtr& base = I.ring();
  const RingPtr ext = base->with_extra_variable("w");
  const std::size_t w = base->size();
  const Polynomial wv = Polynomial::variable(ext, w);
  const Polynomial one_minus_w = Polynomial::constant(ext, 1) - wv;
  std::vector<Polynomial> gens;
  for (const auto& f : I.generators()) gens.push_back(wv * f.embed(ext));
  for (const auto& g : J.generators()) gens.push_back(one_minus_w * g.embed(ext));
  const auto order = MonomialOrder::block_elimination(ext->size(), {{w}});
  const auto G = cached_groebner(gens, order);
  std::vector<Polynomial> kept;
  for (const auto& g : G->generators())
    if (!involves_beyond(g, w)) kept.push_back(restrict_to(g, base));
  return Ideal(base, std::move(kept)).interreduced();
}

Ideal ideal_quotient(const Ideal& I, const Polynomial& g) {
  require_same_ring(I.ring(), g.ring(), "ideal_quotient");
  if (g.is_zero() || I.is_unit()) return Ideal::unit(I.ring());
  if (I.is_zero()) return I;
  if (g.is_constant()) return I;
  if (I.is_monomial() && g.is_monomial()) {
    const Monomial& m = g.terms()[0].mono;
    std::vector<Polynomial> gens;
    for (const auto& f : I.basis().generators()) {
      const Monomial& a = f.terms()[0].mono;
      gens.push_back(Polynomial::monomial(I.ring(), a.gcd(m).quotient_of(a)));
    }
    return Ideal(I.ring(), std::move(gens)).interreduced();
  }
  if (auto v = as_variable(g); v && I.is_homogeneous_total()) return revlex_variable_quotient(I, *v, 1);

  const Ideal cap = ideal_intersect(I, Ideal::principal(g));
  std::vector<Polynomial> gens;
  const auto order = MonomialOrder::grevlex(I.ring()->size());
  for (const auto& f : cap.generators()) {
    // f lies in (g), so the division is exact.
    const Term& lt_g = g.leading_term(order);
    Polynomial rest = f;
    Polynomial q(I.ring());
    while (!rest.is_zero()) {
      const Term& lt = rest.leading_term(order);
      if (!lt_g.mono.divides(lt.mono)) throw InvariantViolation("intersection generator not divisible by g");
      Polynomial step = Polynomial::monomial(I.ring(), lt_g.mono.quotient_of(lt.mono), lt.coef / lt_g.coef);
      q += step;
      rest -= step * g;
    }
    gens.push_back(std::move(q));
  }
  return Ideal(I.ring(), std::move(gens)).interreduced();
}

Ideal ideal_quotient(const Ideal& I, const Ideal& J) {
  require_same_ring(I.ring(), J.ring(), "ideal_quotient");
  if (J.is_zero()) return Ideal::unit(I.ring());
  std::optional<Ideal> acc;
  for (const auto& g : J.generators()) {
    Ideal q = ideal_quotient(I, g);
    acc = acc ? ideal_intersect(*acc, q) : q;
    if (ideal_equal(*acc, I)) return I.interreduced();  // I ⊆ (I : J) ⊆ acc
  }
  return *acc;
}

Ideal saturation(const Ideal& I, const Ideal& J) {
  require_same_ring(I.ring(), J.ring(), "saturation");
  if (J.is_unit()) return I;
  // (I : g) = I for one generator g already forces (I : J^inf) = I.
  for (const auto& g : J.generators()) {
    if (as_variable(g) || g.is_constant()) {
      if (ideal_equal(ideal_quotient(I, g), I)) return I;
    }
  }
  Ideal current = I;
  for (;;) {
    Ideal next = ideal_quotient(current, J);
    if (ideal_equal(next, current)) return current;
    current = std::move(next);
  }
}

Ideal irrelevant_ideal(const RingPtr& ring, const std::string& block) {
  std::vector<Polynomial> gens;
  for (auto v : ring->require_block(block).variables) gens.push_back(Polynomial::variable(ring, v));
  return Ideal(ring, std::move(gens));
}

Ideal saturate_irrelevant(const Ideal& I) {
  const auto& ring = I.ring();
  if (ring->blocks().empty()) {
    std::vector<Polynomial> gens;
    for (std::size_t v = 0; v < ring->size(); ++v) gens.push_back(Polynomial::variable(ring, v));
    return saturation(I, Ideal(ring, std::move(gens)));
  }
  Ideal current = I;
  for (const auto& b : ring->blocks()) current = saturation(current, irrelevant_ideal(ring, b.name));
  return current;
}

Ideal leading_ideal(const GroebnerBasis& G) {
  std::vector<Polynomial> gens;
  for (const auto& m : G.leading_monomials()) gens.push_back(Polynomial::monomial(G.ring(), m));
  return Ideal(G.ring(), std::move(gens));
}

long krull_dimension(const Ideal& I) {
  const auto& G = I.basis();
  if (G.is_unit()) return -1;
  const std::size_t n = I.ring()->size();
  std::vector<std::uint32_t> supports;
  for (const auto& m : G.leading_monomials()) {
    std::uint32_t s = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (m.exp[i]) s |= (1u << i);
    supports.push_back(s);
  }
  long best = 0;
  for (std::uint32_t subset = 0; subset < (1u << n); ++subset) {
    const long size = std::popcount(subset);
    if (size <= best) continue;
    // A variable set is independent when no leading monomial lives entirely inside it.
    if (std::none_of(supports.begin(), supports.end(), [subset](std::uint32_t s) { return (s & ~subset) == 0; }))
      best = size;
  }
  return best;
}

bool is_projectively_empty(const Ideal& I) { return saturate_irrelevant(I).is_unit(); }

std::string to_string(Smoothness s) {
  switch (s) {
    case Smoothness::smooth: return "smooth";
    case Smoothness::singular: return "singular";
    case Smoothness::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

Polynomial determinant(const std::vector<std::vector<Polynomial>>& m, const RingPtr& ring) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  Polynomial det(ring);
  for (std::size_t col = 0; col < n; ++col) {
    if (m[0][col].is_zero()) continue;
    std::vector<std::vector<Polynomial>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Polynomial> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != col) row.push_back(m[r][c]);
      minor.push_back(std::move(row));
    }
    Polynomial term = m[0][col] * determinant(minor, ring);
    det = (col % 2 == 0) ? det + term : det - term;
  }
  return det;
}

void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> pick(k);
  std::iota(pick.begin(), pick.end(), std::size_t{0});
  if (k > n) return;
  for (;;) {
    fn(pick);
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
}

}  // namespace

Smoothness jacobian_smoothness_check(const Ideal& I_V, long expected_codim) {
  const auto& ring = I_V.ring();
  if (I_V.is_zero()) return Smoothness::smooth;
  if (expected_codim <= 0) throw InputError("expected codimension must be positive");
  std::vector<Polynomial> eqs;
  for (const auto& g : I_V.generators())
    if (!g.is_zero()) eqs.push_back(g);
  const long codim = static_cast<long>(ring->size()) - krull_dimension(I_V);
  if (static_cast<long>(eqs.size()) != expected_codim || codim != expected_codim) return Smoothness::inconclusive;

  std::vector<std::vector<Polynomial>> jac;
  for (const auto& f : eqs) {
    std::vector<Polynomial> row;
    for (std::size_t v = 0; v < ring->size(); ++v) row.push_back(f.derivative(v));
    jac.push_back(std::move(row));
  }
  std::vector<Polynomial> gens = eqs;
  for_each_subset(ring->size(), static_cast<std::size_t>(expected_codim), [&](const std::vector<std::size_t>& cols) {
    std::vector<std::vector<Polynomial>> sub;
    for (const auto& row : jac) {
      std::vector<Polynomial> r;
      for (auto c : cols) r.push_back(row[c]);
      sub.push_back(std::move(r));
    }
    Polynomial d = determinant(sub, ring);
    if (!d.is_zero()) gens.push_back(std::move(d));
  });
  return is_projectively_empty(Ideal(ring, std::move(gens))) ? Smoothness::smooth : Smoothness::singular;
}

}  // namespace kstab

#include "kstab/groebner.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

#include "kstab/errors.hpp"

namespace kstab {

namespace {

std::mutex g_budget_mutex;
GroebnerBudget g_budget;

// Working representation: terms sorted by the active order, leading term first.
struct WPoly {
  std::vector<Term> terms;
  long degree = 0;

  bool empty() const { return terms.empty(); }
  const Monomial& lm() const { return terms.front().mono; }
  const Rational& lc() const { return terms.front().coef; }
};

WPoly to_working(const Polynomial& f, const MonomialOrder& order) {
  WPoly w;
  w.terms = f.terms();
  std::sort(w.terms.begin(), w.terms.end(),
            [&](const Term& a, const Term& b) { return order.greater(a.mono, b.mono); });
  for (const auto& t : w.terms) w.degree = std::max(w.degree, t.mono.total_degree());
  return w;
}

Polynomial from_working(const RingPtr& ring, const WPoly& w) { return Polynomial(ring, w.terms); }

void make_monic(WPoly& w) {
  if (w.empty() || w.lc() == 1) return;
  const Rational inv = 1 / w.lc();
  for (auto& t : w.terms) t.coef *= inv;
}

// a - c * m * b, with both inputs sorted by `order`. Skips a's terms before `from`.
std::vector<Term> sub_mul(const std::vector<Term>& a, std::size_t from, const Rational& c, const Monomial& m,
                          const std::vector<Term>& b, const MonomialOrder& order) {
  std::vector<Term> out;
  out.reserve(a.size() - from + b.size());
  std::size_t i = from, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size()) {
      out.push_back(a[i++]);
      continue;
    }
    Monomial bm = b[j].mono * m;
    if (i == a.size()) {
      out.push_back(Term{bm, -c * b[j].coef});
      ++j;
      continue;
    }
    switch (order.compare(a[i].mono, bm)) {
      case Ordering::greater:
        out.push_back(a[i++]);
        break;
      case Ordering::less:
        out.push_back(Term{bm, -c * b[j].coef});
        ++j;
        break;
      case Ordering::equal: {
        Rational v = a[i].coef - c * b[j].coef;
        if (v != 0) out.push_back(Term{a[i].mono, std::move(v)});
        ++i;
        ++j;
        break;
      }
    }
  }
  return out;
}

// Full reduction of p by the active basis elements. Basis elements are monic.
WPoly reduce(WPoly p, const std::vector<WPoly>& basis, const std::vector<bool>& active,
             const MonomialOrder& order, std::size_t skip = static_cast<std::size_t>(-1)) {
  std::vector<Term> done;
  std::size_t start = 0;
  while (start < p.terms.size()) {
    const Term& lt = p.terms[start];
    std::size_t hit = basis.size();
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (!active[k] || k == skip) continue;
      if (basis[k].lm().divides(lt.mono)) {
        hit = k;
        break;
      }
    }
    if (hit == basis.size()) {
      done.push_back(lt);
      ++start;
      continue;
    }
    const Monomial m = basis[hit].lm().quotient_of(lt.mono);
    const Rational c = lt.coef;  // basis element is monic
    p.terms = sub_mul(p.terms, start, c, m, basis[hit].terms, order);
    start = 0;
  }
  WPoly out;
  out.terms = std::move(done);
  for (const auto& t : out.terms) out.degree = std::max(out.degree, t.mono.total_degree());
  return out;
}

WPoly spoly(const WPoly& f, const WPoly& g, const MonomialOrder& order) {
  const Monomial l = f.lm().lcm(g.lm());
  std::vector<Term> fm;
  const Monomial mf = f.lm().quotient_of(l);
  fm.reserve(f.terms.size());
  for (const auto& t : f.terms) fm.push_back(Term{t.mono * mf, t.coef / f.lc()});
  WPoly s;
  s.terms = sub_mul(fm, 0, 1 / g.lc(), g.lm().quotient_of(l), g.terms, order);
  for (const auto& t : s.terms) s.degree = std::max(s.degree, t.mono.total_degree());
  return s;
}

struct Pair {
  std::size_t i, j;  // i < j
  Monomial lcm;
  long degree;
};

struct PairLess {
  const MonomialOrder* order;
  bool operator()(const Pair& a, const Pair& b) const {
    if (a.degree != b.degree) return a.degree < b.degree;
    switch (order->compare(a.lcm, b.lcm)) {
      case Ordering::less: return true;
      case Ordering::greater: return false;
      case Ordering::equal: break;
    }
    return std::tie(a.j, a.i) < std::tie(b.j, b.i);
  }
};

class Engine {
 public:
  Engine(const MonomialOrder& order, const GroebnerBudget& budget)
      : order_(order), budget_(budget), pairs_(PairLess{&order_}) {}

  // Gebauer-Moeller UPDATE.
  void update(WPoly h) {
    if (h.degree > budget_.max_degree)
      throw BudgetExceeded("Groebner intermediate degree " + std::to_string(h.degree) + " exceeds cap " +
                           std::to_string(budget_.max_degree));
    const std::size_t hi = basis_.size();
    basis_.push_back(std::move(h));
    active_.push_back(true);
    const Monomial& lh = basis_[hi].lm();

    std::vector<Pair> candidates;
    for (std::size_t g = 0; g < hi; ++g)
      if (active_[g]) candidates.push_back(make_pair(g, hi));

    std::vector<Pair> kept;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      const Pair& p = candidates[c];
      bool keep = lh.coprime(basis_[p.i].lm());
      if (!keep) {
        keep = true;
        for (std::size_t d = c + 1; d < candidates.size() && keep; ++d)
          if (candidates[d].lcm.divides(p.lcm)) keep = false;
        for (const auto& q : kept)
          if (keep && q.lcm.divides(p.lcm)) keep = false;
      }
      if (keep) kept.push_back(p);
    }

    std::set<Pair, PairLess> next(PairLess{&order_});
    for (const auto& p : pairs_) {
      const bool chain = lh.divides(p.lcm) && basis_[p.i].lm().lcm(lh) != p.lcm &&
                         basis_[p.j].lm().lcm(lh) != p.lcm;
      if (!chain) next.insert(p);
    }
    for (const auto& p : kept)
      if (!lh.coprime(basis_[p.i].lm())) next.insert(p);
    pairs_ = std::move(next);

    for (std::size_t g = 0; g < hi; ++g)
      if (active_[g] && lh.divides(basis_[g].lm())) active_[g] = false;
  }

  bool run() {
    while (!pairs_.empty()) {
      const Pair p = *pairs_.begin();
      pairs_.erase(pairs_.begin());
      if (++processed_ > budget_.max_pairs)
        throw BudgetExceeded("Groebner pair budget of " + std::to_string(budget_.max_pairs) + " exhausted");
      WPoly h = reduce(spoly(basis_[p.i], basis_[p.j], order_), basis_, active_, order_);
      if (h.empty()) continue;
      make_monic(h);
      if (h.lm().is_one()) return false;
      update(std::move(h));
    }
    return true;
  }

  std::vector<WPoly>& basis() { return basis_; }
  std::vector<bool>& active() { return active_; }

 private:
  Pair make_pair(std::size_t i, std::size_t j) const {
    Monomial l = basis_[i].lm().lcm(basis_[j].lm());
    return Pair{i, j, l, l.total_degree()};
  }

  MonomialOrder order_;
  GroebnerBudget budget_;
  std::vector<WPoly> basis_;
  std::vector<bool> active_;
  std::set<Pair, PairLess> pairs_;
  std::size_t processed_ = 0;
};

GroebnerBasis unit_basis(const RingPtr& ring, const MonomialOrder& order) {
  return GroebnerBasis(ring, order, {Polynomial::constant(ring, 1)}, true);
}

std::vector<Polynomial> sort_by_leading(std::vector<Polynomial> gens, const MonomialOrder& order) {
  std::sort(gens.begin(), gens.end(), [&](const Polynomial& a, const Polynomial& b) {
    return order.greater(a.leading_term(order).mono, b.leading_term(order).mono);
  });
  return gens;
}

}  // namespace

GroebnerBudget default_budget() {
  std::lock_guard lock(g_budget_mutex);
  return g_budget;
}

void set_default_budget(const GroebnerBudget& budget) {
  std::lock_guard lock(g_budget_mutex);
  g_budget = budget;
}

GroebnerBasis::GroebnerBasis(RingPtr ring, MonomialOrder order, std::vector<Polynomial> generators, bool reduced)
    : ring_(std::move(ring)), order_(std::move(order)), generators_(std::move(generators)), reduced_(reduced) {
  for (const auto& g : generators_) {
    const auto& lt = g.leading_term(order_);
    leading_.push_back(lt.mono);
    lead_coefs_.push_back(lt.coef);
  }
}

bool GroebnerBasis::is_unit() const {
  return std::any_of(leading_.begin(), leading_.end(), [](const Monomial& m) { return m.is_one(); });
}

Polynomial normal_form(const Polynomial& f, const GroebnerBasis& G) {
  require_same_ring(f.ring(), G.ring(), "normal_form");
  std::vector<WPoly> basis;
  for (const auto& g : G.generators()) {
    WPoly w = to_working(g, G.order());
    make_monic(w);
    basis.push_back(std::move(w));
  }
  std::vector<bool> active(basis.size(), true);
  return from_working(f.ring(), reduce(to_working(f, G.order()), basis, active, G.order()));
}

GroebnerBasis reduced_groebner(const std::vector<Polynomial>& gens, const MonomialOrder& order) {
  return reduced_groebner(gens, order, default_budget());
}

GroebnerBasis reduced_groebner(const std::vector<Polynomial>& gens, const MonomialOrder& order,
                               const GroebnerBudget& budget) {
  if (gens.empty()) throw InputError("reduced_groebner needs at least one generator");
  const RingPtr ring = gens.front().ring();
  for (const auto& g : gens) require_same_ring(ring, g.ring(), "reduced_groebner");
  if (order.nvars() != ring->size()) throw InputError("monomial order does not match the ring");

  std::vector<Polynomial> input;
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    if (g.is_constant()) return unit_basis(ring, order);
    if (g.total_degree() > budget.max_degree)
      throw BudgetExceeded("generator degree exceeds cap " + std::to_string(budget.max_degree));
    input.push_back(g);
  }
  if (input.empty()) return GroebnerBasis(ring, order, {}, true);

  // Monomial ideals: minimal generators already form the reduced basis.
  if (std::all_of(input.begin(), input.end(), [](const Polynomial& g) { return g.is_monomial(); })) {
    std::vector<Monomial> ms;
    for (const auto& g : input) ms.push_back(g.terms().front().mono);
    std::sort(ms.begin(), ms.end(), [](const Monomial& a, const Monomial& b) {
      return a.total_degree() != b.total_degree() ? a.total_degree() < b.total_degree() : a > b;
    });
    ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
    std::vector<Monomial> minimal;
    for (const auto& m : ms)
      if (std::none_of(minimal.begin(), minimal.end(), [&](const Monomial& d) { return d.divides(m); }))
        minimal.push_back(m);
    std::vector<Polynomial> out;
    for (const auto& m : minimal) out.push_back(Polynomial::monomial(ring, m));
    return GroebnerBasis(ring, order, sort_by_leading(std::move(out), order), true);
  }

  std::vector<WPoly> work;
  for (const auto& g : input) work.push_back(to_working(g, order));
  std::sort(work.begin(), work.end(), [&](const WPoly& a, const WPoly& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    return order.compare(a.lm(), b.lm()) == Ordering::less;
  });

  Engine engine(order, budget);
  for (auto& w : work) {
    WPoly h = reduce(std::move(w), engine.basis(), engine.active(), order);
    if (h.empty()) continue;
    make_monic(h);
    if (h.lm().is_one()) return unit_basis(ring, order);
    engine.update(std::move(h));
  }
  if (!engine.run()) return unit_basis(ring, order);

  // Active elements have pairwise non-dividing leading monomials; tail-reduce them.
  auto& basis = engine.basis();
  auto& active = engine.active();
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < basis.size(); ++k)
    if (active[k]) idx.push_back(k);
  std::vector<WPoly> final_basis;
  for (auto k : idx) {
    WPoly r = reduce(basis[k], basis, active, order, k);
    if (r.empty() || r.lm() != basis[k].lm())
      throw InvariantViolation("interreduction changed a leading monomial");
    make_monic(r);
    final_basis.push_back(std::move(r));
  }
  std::vector<Polynomial> out;
  for (const auto& w : final_basis) out.push_back(from_working(ring, w));
  return GroebnerBasis(ring, order, sort_by_leading(std::move(out), order), true);
}

namespace {

std::mutex g_cache_mutex;
std::map<std::string, std::shared_ptr<const GroebnerBasis>> g_cache;

std::string cache_key(const std::vector<Polynomial>& gens, const MonomialOrder& order) {
  std::vector<std::string> parts;
  for (const auto& g : gens) {
    std::ostringstream os;
    for (const auto& t : g.terms()) {
      for (std::size_t i = 0; i < g.ring()->size(); ++i) os << t.mono.exp[i] << ".";
      os << ":" << t.coef.get_str() << ";";
    }
    parts.push_back(os.str());
  }
  std::sort(parts.begin(), parts.end());
  parts.erase(std::unique(parts.begin(), parts.end()), parts.end());
  std::string key = gens.front().ring()->describe() + "#" + order.key() + "#";
  for (const auto& p : parts) key += p + "|";
  return key;
}

}  // namespace

std::shared_ptr<const GroebnerBasis> cached_groebner(const std::vector<Polynomial>& gens,
                                                     const MonomialOrder& order) {
  if (gens.empty()) throw InputError("cached_groebner needs at least one generator");
  const std::string key = cache_key(gens, order);
  {
    std::lock_guard lock(g_cache_mutex);
    if (auto it = g_cache.find(key); it != g_cache.end()) return it->second;
  }
  auto basis = std::make_shared<const GroebnerBasis>(reduced_groebner(gens, order));
  std::lock_guard lock(g_cache_mutex);
  // Insert-if-absent: a concurrent computation of the same key yields the same basis.
  return g_cache.emplace(key, std::move(basis)).first->second;
}

void clear_groebner_cache() {
  std::lock_guard lock(g_cache_mutex);
  g_cache.clear();
}

std::size_t groebner_cache_size() {
  std::lock_guard lock(g_cache_mutex);
  return g_cache.size();
}

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const MonomialOrder& order) {
  require_same_ring(f.ring(), g.ring(), "s_polynomial");
  return from_working(f.ring(), spoly(to_working(f, order), to_working(g, order), order));
}

bool s_polynomials_reduce_to_zero(const GroebnerBasis& G) {
  const auto& gens = G.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (!normal_form(s_polynomial(gens[i], gens[j], G.order()), G).is_zero()) return false;
  return true;
}

}  // namespace kstab

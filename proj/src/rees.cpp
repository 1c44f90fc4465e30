#include "kstab/rees.hpp"

#include <sstream>

#include "kstab/errors.hpp"

namespace kstab {

namespace {

// base^j + ambient, built incrementally.
class PowerLadder {
 public:
  PowerLadder(Ideal base, Ideal ambient) : base_(std::move(base)), ambient_(std::move(ambient)) {
    powers_.push_back(Ideal::unit(base_.ring()));
  }

  const Ideal& operator[](long j) {
    while (static_cast<long>(powers_.size()) <= j) {
      powers_.push_back(ideal_sum(ideal_product(powers_.back(), base_), ambient_).interreduced());
    }
    return powers_[static_cast<std::size_t>(j)];
  }

 private:
  Ideal base_;
  Ideal ambient_;
  std::vector<Ideal> powers_;
};

long ord_with(PowerLadder& ladder, const Polynomial& f, const Ideal& ambient, long cap) {
  if (f.is_zero() || ideal_member(f, ambient)) throw InputError("order along the center of a zero class");
  for (long k = 0; k < cap; ++k) {
    if (!ladder[k + 1].contains(f)) return k;
  }
  throw InputError("order along the center exceeds the cap " + std::to_string(cap));
}

Ideal with_ambient(const Ideal& I, const Ideal& ambient) {
  return ambient.is_zero() ? I : ideal_sum(I, ambient).interreduced();
}

Polynomial divide_exact(const Polynomial& f, const Polynomial& g) {
  const auto order = MonomialOrder::grevlex(f.ring()->size());
  const Term lt_g = g.leading_term(order);
  Polynomial rest = f;
  Polynomial q(f.ring());
  while (!rest.is_zero()) {
    const Term& lt = rest.leading_term(order);
    if (!lt_g.mono.divides(lt.mono)) throw InvariantViolation("inexact division by the local equation");
    Polynomial step = Polynomial::monomial(f.ring(), lt_g.mono.quotient_of(lt.mono), lt.coef / lt_g.coef);
    rest -= step * g;
    q += step;
  }
  return q;
}

}  // namespace

long ord_along(const Polynomial& f, const Ideal& center, const Ideal& ambient, long cap) {
  require_same_ring(f.ring(), center.ring(), "ord_along");
  PowerLadder ladder(center, ambient);
  return ord_with(ladder, f, ambient, cap);
}

long ord_along(const Polynomial& f, const Ideal& center, long cap) {
  return ord_along(f, center, Ideal::zero(center.ring()), cap);
}

TildeFamily tilde_components(const Ideal& I, const Ideal& center, const Ideal& ambient, long j_cap) {
  require_same_ring(I.ring(), center.ring(), "tilde_components");
  require_same_ring(I.ring(), ambient.ring(), "tilde_components");
  if (j_cap < 1) throw InputError("j_cap must be positive");
  TildeFamily family{with_ambient(I, ambient), center, ambient, {}, -1};
  PowerLadder ladder(center, ambient);
  family.components.push_back(family.ideal);
  auto component = [&](long j) -> const Ideal& {
    while (static_cast<long>(family.components.size()) <= j) {
      const long next = static_cast<long>(family.components.size());
      family.components.push_back(ideal_intersect(family.ideal, ladder[next]));
    }
    return family.components[static_cast<std::size_t>(j)];
  };
  auto artin_rees_step = [&](long j) {
    const Ideal pushed = with_ambient(ideal_product(center, component(j)), ambient);
    return ideal_equal(component(j + 1), pushed);
  };
  for (long j = 1; j <= j_cap; ++j) {
    if (artin_rees_step(j) && artin_rees_step(j + 1) && artin_rees_step(j + 2)) {
      family.stabilization_index = j;
      break;
    }
  }
  return family;
}

TildeFamily tilde_components(const Ideal& I, const Ideal& center, long j_cap) {
  return tilde_components(I, center, Ideal::zero(I.ring()), j_cap);
}

std::string InitIdeal::to_string() const {
  return generators.to_string() + " mod " + relations.to_string();
}

InitIdeal init_ideal(const Ideal& I, const Ideal& center, long j_cap) {
  require_same_ring(I.ring(), center.ring(), "init_ideal");
  const auto& gb = center.basis().generators();
  if (gb.size() != 1 || gb.front().is_constant()) {
    throw InputError("init_ideal needs a principal proper center, got " + center.to_string());
  }
  const Polynomial h = gb.front();
  const TildeFamily family = tilde_components(I, center, j_cap);
  if (!family.stabilized()) {
    throw BudgetExceeded("tilde components did not stabilize by j = " + std::to_string(j_cap));
  }

  InitIdeal out{I.ring()->with_extra_variable("s"), Polynomial(I.ring()), Ideal::zero(I.ring()),
                Ideal::zero(I.ring()), family.stabilization_index};
  const RingPtr& rs = out.ring;
  const Polynomial s = Polynomial::variable(rs, rs->size() - 1);
  out.center = h.embed(rs);
  out.relations = Ideal::principal(out.center);
  const auto& h_basis = center.basis();

  auto preimage = [&](bool enlarged) {
    std::vector<Polynomial> emitted{out.center};
    Polynomial hj = Polynomial::constant(I.ring(), 1);
    for (long j = 0; j <= family.stabilization_index; ++j) {
      std::vector<Polynomial> gens = family.components[static_cast<std::size_t>(j)].generators();
      if (enlarged) {
        const std::size_t n = gens.size();
        for (std::size_t a = 0; a + 1 < n; ++a) gens.push_back(gens[a] + gens[a + 1]);
        if (n > 1) gens.push_back(gens.front() + gens.back().scaled(2));
      }
      for (const auto& g : gens) {
        if (g.is_zero()) continue;
        // ord exactly j iff the quotient survives modulo h.
        const Polynomial r = normal_form(divide_exact(g, hj), h_basis);
        if (!r.is_zero()) emitted.push_back(r.embed(rs) * s.pow(static_cast<unsigned>(j)));
      }
      hj *= h;
    }
    return Ideal(rs, std::move(emitted));
  };

  const Ideal full = preimage(false);
  if (!ideal_equal(full, preimage(true))) {
    throw InvariantViolation("initial ideal depends on the generator presentation");
  }
  const auto& rel_basis = out.relations.basis();
  std::vector<Polynomial> reduced;
  for (const auto& g : full.basis().generators()) {
    Polynomial r = normal_form(g, rel_basis);
    if (!r.is_zero()) reduced.push_back(std::move(r));
  }
  out.generators = Ideal(rs, std::move(reduced));
  return out;
}

PowerCompatReport power_compat(const Ideal& I, const Ideal& center, const Ideal& ambient, long m_max) {
  require_same_ring(I.ring(), center.ring(), "power_compat");
  require_same_ring(I.ring(), ambient.ring(), "power_compat");
  if (m_max < 1) throw InputError("m_max must be positive");
  PowerCompatReport report;
  const Ideal base = with_ambient(I, ambient);
  report.center_inside_ideal = base.contains(center);
  PowerLadder ideal_powers(base, ambient);
  PowerLadder center_powers(center, ambient);
  for (long m = 1; m <= m_max; ++m) {
    for (long j = 1; j <= m; ++j) {
      const Ideal lhs = ideal_intersect(ideal_powers[m], center_powers[j]).interreduced();
      const Ideal rhs = with_ambient(ideal_product(center_powers[j], ideal_powers[m - j]), ambient);
      ++report.checked;
      for (const auto& g : lhs.generators()) {
        if (!rhs.contains(g)) {
          report.holds = false;
          report.failing_m = m;
          report.failing_j = j;
          report.certificate = g;
          return report;
        }
      }
    }
  }
  return report;
}

PowerCompatReport power_compat(const Ideal& I, const Ideal& center, long m_max) {
  return power_compat(I, center, Ideal::zero(I.ring()), m_max);
}

PowerCompatReport lemma41_check(const Polynomial& h, const Ideal& I, long m_max) {
  if (!I.contains(h)) throw InputError("h = " + h.to_string() + " is not in I");
  return power_compat(I, Ideal::principal(h), m_max);
}

}  // namespace kstab

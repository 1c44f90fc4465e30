#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "kstab/polynomial.hpp"

namespace kstab {

/// Caps for a single basis computation. Exceeding either raises BudgetExceeded.
struct GroebnerBudget {
  std::size_t max_pairs = 200000;
  long max_degree = 64;
};

/// Process-wide defaults used when no explicit budget is passed (the CLI sets these).
GroebnerBudget default_budget();
void set_default_budget(const GroebnerBudget& budget);

class GroebnerBasis {
 public:
  GroebnerBasis(RingPtr ring, MonomialOrder order, std::vector<Polynomial> generators, bool reduced);

  const RingPtr& ring() const { return ring_; }
  const MonomialOrder& order() const { return order_; }
  /// Sorted by leading monomial, largest first. Empty for the zero ideal.
  const std::vector<Polynomial>& generators() const { return generators_; }
  bool reduced() const { return reduced_; }
  bool is_unit() const;
  const std::vector<Monomial>& leading_monomials() const { return leading_; }
  const std::vector<Rational>& leading_coefficients() const { return lead_coefs_; }

 private:
  RingPtr ring_;
  MonomialOrder order_;
  std::vector<Polynomial> generators_;
  std::vector<Monomial> leading_;
  std::vector<Rational> lead_coefs_;
  bool reduced_;
};

/// Multivariate division remainder: no term is divisible by a leading monomial of G.
Polynomial normal_form(const Polynomial& f, const GroebnerBasis& G);

/// Buchberger with the coprime and chain criteria (Gebauer-Moeller update) and
/// the normal selection strategy. Output is the reduced basis, deterministic.
GroebnerBasis reduced_groebner(const std::vector<Polynomial>& gens, const MonomialOrder& order,
                               const GroebnerBudget& budget);
GroebnerBasis reduced_groebner(const std::vector<Polynomial>& gens, const MonomialOrder& order);

/// Memoized reduced_groebner keyed by (ring, order, generator set). Thread-safe.
std::shared_ptr<const GroebnerBasis> cached_groebner(const std::vector<Polynomial>& gens,
                                                     const MonomialOrder& order);
void clear_groebner_cache();
std::size_t groebner_cache_size();

/// Buchberger's criterion checked directly: every S-polynomial reduces to zero.
bool s_polynomials_reduce_to_zero(const GroebnerBasis& G);
Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const MonomialOrder& order);

}  // namespace kstab

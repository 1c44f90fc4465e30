#pragma once

#include <memory>
#include <string>
#include <vector>

#include "kstab/groebner.hpp"

namespace kstab {

/// Finitely generated ideal of a polynomial ring. Equality is extensional
/// (see ideal_equal); the generator list is only a presentation. Reduced bases
/// are shared through the process-wide memo table.
class Ideal {
 public:
  Ideal(RingPtr ring, std::vector<Polynomial> generators);
  static Ideal zero(RingPtr ring);
  static Ideal unit(RingPtr ring);
  static Ideal principal(const Polynomial& f);

  const RingPtr& ring() const { return ring_; }
  /// Never empty: the zero ideal is presented by the single generator 0.
  const std::vector<Polynomial>& generators() const { return generators_; }

  /// Reduced basis under the ring's grevlex order.
  const GroebnerBasis& basis() const;
  std::shared_ptr<const GroebnerBasis> basis(const MonomialOrder& order) const;

  bool is_zero() const;
  bool is_unit() const;
  bool is_monomial() const;
  bool is_homogeneous_total() const;
  bool contains(const Polynomial& f) const;
  bool contains(const Ideal& J) const;

  /// Same ideal presented by its reduced grevlex basis.
  Ideal interreduced() const;
  Ideal embed(RingPtr target) const;

  std::string to_string() const;

 private:
  struct Slot;
  RingPtr ring_;
  std::vector<Polynomial> generators_;
  std::shared_ptr<Slot> slot_;
};

bool ideal_member(const Polynomial& f, const Ideal& I);
bool ideal_equal(const Ideal& I, const Ideal& J);

Ideal ideal_sum(const Ideal& I, const Ideal& J);
Ideal ideal_product(const Ideal& I, const Ideal& J);
/// Iterated product, interreduced after every step.
Ideal ideal_power(const Ideal& I, unsigned m);

/// I ∩ J by eliminating an auxiliary variable w from <w I, (1 - w) J>.
Ideal ideal_intersect(const Ideal& I, const Ideal& J);
/// (I : J), the intersection of the principal quotients (I : g) over generators g of J.
Ideal ideal_quotient(const Ideal& I, const Ideal& J);
Ideal ideal_quotient(const Ideal& I, const Polynomial& g);
/// (I : J^inf), quotients iterated until the chain stabilizes.
Ideal saturation(const Ideal& I, const Ideal& J);

/// The ideal generated by the variables of a block.
Ideal irrelevant_ideal(const RingPtr& ring, const std::string& block);
/// Saturation with respect to every block's irrelevant ideal (all variables if the ring has no blocks).
Ideal saturate_irrelevant(const Ideal& I);

Ideal leading_ideal(const GroebnerBasis& G);

/// Krull dimension of R/I read off the leading ideal.
long krull_dimension(const Ideal& I);

/// True iff I cuts out the empty set in the product of projective spaces of its blocks.
bool is_projectively_empty(const Ideal& I);

enum class Smoothness { smooth, singular, inconclusive };
std::string to_string(Smoothness s);

/// Jacobian criterion for a complete-intersection presentation in a single-block ring.
Smoothness jacobian_smoothness_check(const Ideal& I_V, long expected_codim);

}  // namespace kstab

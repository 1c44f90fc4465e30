#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kstab/rational.hpp"
#include "kstab/ring.hpp"

namespace kstab {

struct Term {
  Monomial mono;
  Rational coef;
};

/// Sparse polynomial over Q. Terms are kept in one fixed canonical order
/// (descending exponent vectors) independent of any monomial order; the
/// Groebner layer sorts its own working copies.
class Polynomial {
 public:
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}
  Polynomial(RingPtr ring, std::vector<Term> terms);

  static Polynomial constant(RingPtr ring, const Rational& c);
  static Polynomial variable(RingPtr ring, std::size_t index);
  static Polynomial variable(RingPtr ring, std::string_view name);
  static Polynomial monomial(RingPtr ring, const Monomial& m, const Rational& c = 1);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  bool is_monomial() const { return terms_.size() == 1; }
  long total_degree() const;

  /// Common multidegree of all terms; nullopt for inhomogeneous input. The zero
  /// polynomial reports the zero vector.
  std::optional<DegreeVector> multidegree() const;
  bool is_homogeneous_total() const;

  /// Leading term under `order`; requires a nonzero polynomial.
  const Term& leading_term(const MonomialOrder& order) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& g);
  Polynomial& operator-=(const Polynomial& g);
  Polynomial& operator*=(const Polynomial& g);
  Polynomial scaled(const Rational& c) const;
  Polynomial times_monomial(const Monomial& m, const Rational& c = 1) const;
  Polynomial pow(unsigned e) const;
  /// Content-free, monic with respect to `order`.
  Polynomial monic(const MonomialOrder& order) const;
  Polynomial derivative(std::size_t var) const;

  /// Exact division by a monomial dividing every term.
  Polynomial divide_by_monomial(const Monomial& m) const;

  /// Move into another ring whose first variables coincide (appended variables allowed).
  Polynomial embed(RingPtr target) const;

  /// Terms rendered in grevlex-descending order, e.g. "x0^2 - 3/2*x1*x2".
  std::string to_string() const;

  friend Polynomial operator+(Polynomial f, const Polynomial& g) { return f += g; }
  friend Polynomial operator-(Polynomial f, const Polynomial& g) { return f -= g; }
  friend Polynomial operator*(const Polynomial& f, const Polynomial& g);
  friend bool operator==(const Polynomial& f, const Polynomial& g);

 private:
  void normalize();
  RingPtr ring_;
  std::vector<Term> terms_;
};

enum class ArithOp { add, sub, mul };
Polynomial poly_arith(ArithOp op, const Polynomial& f, const Polynomial& g);

Ordering mono_compare(const MonomialOrder& order, const Monomial& a, const Monomial& b);

/// Ring homomorphism: each source variable named in `assignment` maps to the
/// given target polynomial; every other source variable maps to the target
/// variable of the same name (InputError if the target has none).
Polynomial substitute(const Polynomial& f, const std::map<std::string, Polynomial>& assignment,
                      const RingPtr& target);

}  // namespace kstab

#include "kstab/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "kstab/errors.hpp"

namespace kstab {

namespace {

bool canonical_before(const Term& a, const Term& b) { return a.mono > b.mono; }

void check_degree(const std::vector<Term>& terms) {
  for (const auto& t : terms)
    if (t.mono.total_degree() > kMaxTotalDegree)
      throw InputError("polynomial degree exceeds " + std::to_string(kMaxTotalDegree));
}

}  // namespace

Polynomial::Polynomial(RingPtr ring, std::vector<Term> terms) : ring_(std::move(ring)), terms_(std::move(terms)) {
  normalize();
}

void Polynomial::normalize() {
  std::sort(terms_.begin(), terms_.end(), canonical_before);
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().mono == t.mono)
      out.back().coef += t.coef;
    else
      out.push_back(std::move(t));
    if (out.back().coef == 0) out.pop_back();
  }
  terms_ = std::move(out);
  check_degree(terms_);
}

Polynomial Polynomial::constant(RingPtr ring, const Rational& c) {
  if (c == 0) return Polynomial(std::move(ring));
  return Polynomial(std::move(ring), {Term{Monomial::one(), c}});
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t index) {
  if (index >= ring->size()) throw InputError("variable index out of range");
  return Polynomial(std::move(ring), {Term{Monomial::variable(index), 1}});
}

Polynomial Polynomial::variable(RingPtr ring, std::string_view name) {
  const auto i = ring->require_index(name);
  return variable(std::move(ring), i);
}

Polynomial Polynomial::monomial(RingPtr ring, const Monomial& m, const Rational& c) {
  if (c == 0) return Polynomial(std::move(ring));
  return Polynomial(std::move(ring), {Term{m, c}});
}

long Polynomial::total_degree() const {
  long d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.total_degree());
  return d;
}

std::optional<DegreeVector> Polynomial::multidegree() const {
  if (terms_.empty()) return DegreeVector(ring_->grading_rank(), 0);
  const auto d = ring_->degree_of(terms_.front().mono);
  for (const auto& t : terms_)
    if (ring_->degree_of(t.mono) != d) return std::nullopt;
  return d;
}

bool Polynomial::is_homogeneous_total() const {
  if (terms_.empty()) return true;
  const auto d = terms_.front().mono.total_degree();
  return std::all_of(terms_.begin(), terms_.end(), [d](const Term& t) { return t.mono.total_degree() == d; });
}

const Term& Polynomial::leading_term(const MonomialOrder& order) const {
  if (terms_.empty()) throw InputError("leading term of the zero polynomial");
  const Term* best = &terms_.front();
  for (const auto& t : terms_)
    if (order.greater(t.mono, best->mono)) best = &t;
  return *best;
}

Polynomial Polynomial::operator-() const { return scaled(-1); }

Polynomial& Polynomial::operator+=(const Polynomial& g) {
  require_same_ring(ring_, g.ring_, "polynomial addition");
  std::vector<Term> out;
  out.reserve(terms_.size() + g.terms_.size());
  auto a = terms_.begin();
  auto b = g.terms_.begin();
  while (a != terms_.end() || b != g.terms_.end()) {
    if (b == g.terms_.end() || (a != terms_.end() && a->mono > b->mono)) {
      out.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->mono > a->mono) {
      out.push_back(*b++);
    } else {
      Rational c = a->coef + b->coef;
      if (c != 0) out.push_back(Term{a->mono, std::move(c)});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(out);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& g) { return *this += -g; }

Polynomial operator*(const Polynomial& f, const Polynomial& g) {
  require_same_ring(f.ring_, g.ring_, "polynomial multiplication");
  std::vector<Term> out;
  out.reserve(f.terms_.size() * g.terms_.size());
  for (const auto& s : f.terms_)
    for (const auto& t : g.terms_) out.push_back(Term{s.mono * t.mono, s.coef * t.coef});
  return Polynomial(f.ring_, std::move(out));
}

Polynomial& Polynomial::operator*=(const Polynomial& g) { return *this = *this * g; }

Polynomial Polynomial::scaled(const Rational& c) const {
  if (c == 0) return Polynomial(ring_);
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coef *= c;
  return r;
}

Polynomial Polynomial::times_monomial(const Monomial& m, const Rational& c) const {
  if (c == 0) return Polynomial(ring_);
  Polynomial r(ring_);
  r.terms_.reserve(terms_.size());
  // Multiplying by a monomial preserves the canonical (lexicographic) order.
  for (const auto& t : terms_) r.terms_.push_back(Term{t.mono * m, t.coef * c});
  check_degree(r.terms_);
  return r;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result = constant(ring_, 1);
  Polynomial base = *this;
  while (e) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e) base *= base;
  }
  return result;
}

Polynomial Polynomial::monic(const MonomialOrder& order) const {
  if (terms_.empty()) return *this;
  return scaled(1 / Rational(leading_term(order).coef));
}

Polynomial Polynomial::derivative(std::size_t var) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.mono.exp.at(var) == 0) continue;
    Term d{t.mono, t.coef * t.mono.exp[var]};
    d.mono.exp[var] -= 1;
    out.push_back(std::move(d));
  }
  return Polynomial(ring_, std::move(out));
}

Polynomial Polynomial::divide_by_monomial(const Monomial& m) const {
  Polynomial r(ring_);
  for (const auto& t : terms_) {
    if (!m.divides(t.mono)) throw InvariantViolation("inexact monomial division");
    r.terms_.push_back(Term{m.quotient_of(t.mono), t.coef});
  }
  return r;
}

Polynomial Polynomial::embed(RingPtr target) const {
  if (target->size() < ring_->size()) throw InputError("embedding into a smaller ring");
  for (std::size_t i = 0; i < ring_->size(); ++i)
    if (target->name(i) != ring_->name(i)) throw InputError("embedding between incompatible rings");
  Polynomial r(std::move(target));
  r.terms_ = terms_;
  return r;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  const auto order = MonomialOrder::grevlex(ring_->size());
  std::vector<const Term*> sorted;
  for (const auto& t : terms_) sorted.push_back(&t);
  std::sort(sorted.begin(), sorted.end(), [&](const Term* a, const Term* b) { return order.greater(a->mono, b->mono); });
  std::ostringstream os;
  bool first = true;
  for (const Term* t : sorted) {
    Rational c = t->coef;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    c = abs(c);
    bool wrote = false;
    if (c != 1 || t->mono.is_one()) {
      os << kstab::to_string(c);
      wrote = true;
    }
    for (std::size_t i = 0; i < ring_->size(); ++i) {
      const auto e = t->mono.exp[i];
      if (e == 0) continue;
      os << (wrote ? "*" : "") << ring_->name(i);
      if (e > 1) os << "^" << e;
      wrote = true;
    }
  }
  return os.str();
}

bool operator==(const Polynomial& f, const Polynomial& g) {
  if (!same_ring(f.ring_, g.ring_) || f.terms_.size() != g.terms_.size()) return false;
  for (std::size_t i = 0; i < f.terms_.size(); ++i)
    if (f.terms_[i].mono != g.terms_[i].mono || f.terms_[i].coef != g.terms_[i].coef) return false;
  return true;
}

Polynomial poly_arith(ArithOp op, const Polynomial& f, const Polynomial& g) {
  switch (op) {
    case ArithOp::add: return f + g;
    case ArithOp::sub: return f - g;
    case ArithOp::mul: return f * g;
  }
  throw InvariantViolation("unknown arithmetic op");
}

Ordering mono_compare(const MonomialOrder& order, const Monomial& a, const Monomial& b) {
  return order.compare(a, b);
}

Polynomial substitute(const Polynomial& f, const std::map<std::string, Polynomial>& assignment,
                      const RingPtr& target) {
  const auto& src = *f.ring();
  for (const auto& [name, image] : assignment) {
    if (!src.index_of(name)) throw InputError("substitution names undeclared variable '" + name + "'");
    require_same_ring(image.ring(), target, "substitution target");
  }
  std::vector<Polynomial> images;
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (auto it = assignment.find(src.name(i)); it != assignment.end()) {
      images.push_back(it->second);
    } else if (auto j = target->index_of(src.name(i))) {
      images.push_back(Polynomial::variable(target, *j));
    } else {
      images.push_back(Polynomial(target));  // placeholder; only an error if actually used
      bool used = std::any_of(f.terms().begin(), f.terms().end(), [i](const Term& t) { return t.mono.exp[i] != 0; });
      if (used) throw InputError("variable '" + src.name(i) + "' has no image in the target ring");
    }
  }
  Polynomial out(target);
  for (const auto& t : f.terms()) {
    Polynomial term = Polynomial::constant(target, t.coef);
    for (std::size_t i = 0; i < src.size(); ++i)
      if (t.mono.exp[i]) term *= images[i].pow(t.mono.exp[i]);
    out += term;
  }
  return out;
}

}  // namespace kstab

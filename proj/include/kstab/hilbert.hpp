#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "kstab/ideal.hpp"

namespace kstab {

/// Univariate polynomial with rational coefficients, ascending powers.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> ascending);

  long degree() const { return static_cast<long>(coefs_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return coefs_.empty(); }
  Rational coefficient(long power) const;
  const std::vector<Rational>& ascending() const { return coefs_; }
  std::vector<Rational> descending() const;

  Rational operator()(const Rational& x) const;
  UniPoly derivative() const;
  /// Antiderivative with zero constant term.
  UniPoly antiderivative() const;
  /// Substitutes x -> s * x.
  UniPoly scale_argument(const Rational& s) const;

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const Rational& s, const UniPoly& a);
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.coefs_ == b.coefs_; }

  std::string to_string(const std::string& var) const;

 private:
  void trim();
  std::vector<Rational> coefs_;
};

/// Exact Newton interpolation through distinct nodes.
UniPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys);

/// A polynomial in k valid on the progression k in stride*Z, k >= k0, together
/// with the samples that pinned it down.
struct HilbertPolynomial {
  UniPoly poly;
  long k0 = 0;
  long stride = 1;
  std::vector<std::pair<long, Rational>> samples;

  std::vector<Rational> coefficients() const { return poly.descending(); }
  Rational operator()(long k) const { return poly(Rational(k)); }
};

struct WindowOptions {
  long start_multiple = 4;  // first sample at k = stride * start_multiple
  long max_shifts = 24;     // window advances before giving up
};

/// Fits a polynomial of degree <= max_degree to k -> f(k) on stride*Z:
/// D+2 points determine the fit, a window shifted by one stride must give the
/// same coefficients. Throws BudgetExceeded when no stable window is found.
HilbertPolynomial fit_eventual_polynomial(const std::function<Rational(long)>& f, long max_degree, long stride,
                                          const WindowOptions& window = {});

/// Multigraded K-polynomial of R/M for a monomial ideal M: the Hilbert series
/// is K / prod_i (1 - t^deg(x_i)).
class HilbertSeries {
 public:
  HilbertSeries(RingPtr ring, const std::vector<Monomial>& generators);
  /// dim_Q (R/M)_deg.
  Integer dimension(const DegreeVector& deg) const;
  const std::map<DegreeVector, Integer>& numerator() const { return numerator_; }

 private:
  RingPtr ring_;
  std::map<DegreeVector, Integer> numerator_;
};

/// Number of monomials of the ring in multidegree deg.
Integer monomial_count(const Ring& ring, const DegreeVector& deg);

/// dim (R/I)_deg via standard monomials of the leading ideal. I must be homogeneous.
Integer graded_dimension(const Ideal& I, const DegreeVector& deg);
std::shared_ptr<const HilbertSeries> hilbert_series(const Ideal& I);

/// k -> dim (R/I)_{k * direction}; the ideal is saturated first when asked.
HilbertPolynomial hilbert_polynomial(const Ideal& I, const DegreeVector& direction, long stride = 1,
                                     bool saturate = false, const WindowOptions& window = {});

/// H(k, m) = dim (R/I_k)_{(d k, m)} on a bigraded ring (fiber row 0, base row 1).
struct SectionTable {
  long fiber_degree = 1;
  bool saturated = true;
  std::string provenance;
  std::map<long, std::map<long, Integer>> entries;  // k -> m -> H(k, m)

  const Integer& at(long k, long m) const { return entries.at(k).at(m); }
};

struct SectionTableOptions {
  long m_start = 0;
  long m_cap = 200;
  long stable_run = 3;  // equal consecutive differences that count as linear
  long extra_checks = 2;
};

/// Rows from Hilbert series of already saturated ideals.
SectionTable section_table(const std::function<std::shared_ptr<const HilbertSeries>(long)>& series_for_k,
                           long fiber_degree, const std::vector<long>& k_samples, const std::string& provenance,
                           const SectionTableOptions& options = {});
/// Rows from ideals, each saturated by both irrelevant ideals first.
SectionTable section_table(const std::function<Ideal(long)>& ideal_for_k, long fiber_degree,
                           const std::vector<long>& k_samples, const std::string& provenance,
                           const SectionTableOptions& options = {});

/// deg + rank of the pushforward to the P^1 base, read off the linear tail of H(k, .).
Integer relative_euler_characteristic(const SectionTable& table, long k, long stable_run = 3);

/// (coefficient of k^n, coefficient of k^(n-1)).
std::pair<Rational, Rational> extract_coefficients(const HilbertPolynomial& hp, long n);

}  // namespace kstab

#pragma once

// Independent reference computations used by the test suites. None of these
// touch the Hilbert-series or saturation code paths they are compared against.

#include <cstdint>
#include <vector>

#include "kstab/errors.hpp"
#include "kstab/groebner.hpp"
#include "kstab/ideal.hpp"

namespace oracle {

using kstab::Integer;
using kstab::Ideal;
using kstab::Monomial;
using kstab::Polynomial;
using kstab::Rational;
using kstab::RingPtr;

/// splitmix64; deterministic on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  long uniform(long lo, long hi) { return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }

 private:
  std::uint64_t state_;
};

/// All monomials of total degree `degree` in the first `nvars` variables.
std::vector<Monomial> monomials_of_degree(std::size_t nvars, long degree);

/// Random polynomial with up to `terms` terms of total degree in [min_deg, max_deg],
/// small nonzero integer coefficients.
Polynomial random_polynomial(Rng& rng, const RingPtr& ring, int terms, long min_deg, long max_deg);
/// Random homogeneous polynomial of the given degree.
Polynomial random_form(Rng& rng, const RingPtr& ring, int terms, long degree);

/// rank over Q by Gaussian elimination.
std::size_t rank(std::vector<std::vector<Rational>> rows);

/// dim (S/I)_D for a homogeneous I in the standard grading: monomial count minus
/// the rank of the span of all monomial multiples of the generators in degree D.
Integer dense_graded_dimension(const Ideal& I, long degree);

/// Largest j with the monomial in the j-th power of a monomial ideal (brute-force powers).
long monomial_order(const Monomial& m, const std::vector<Monomial>& ideal_gens, long cap);

/// sum over monomials mu of degree d k outside the monomial ideal of V of
/// (min(ord_Z mu, c k) - c k); the weight of the normal-cone action.
Integer eigenweight(const std::vector<Monomial>& variety_gens, const std::vector<Monomial>& z_gens, std::size_t nvars,
                    long d, long ck_num, long k);

/// C_j for j = 0..j_max by eliminating v from I + (T_i - g_i v) in S[v, T].
std::vector<Ideal> elimination_tilde(const Ideal& I, const Ideal& center, long j_max);

}  // namespace oracle

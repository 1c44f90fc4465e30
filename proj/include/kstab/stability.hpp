#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kstab/hilbert.hpp"
#include "kstab/rees.hpp"

namespace kstab {

/// c = p/q > 0 in lowest terms.
Rational require_positive_param(const Rational& c, const char* what);
long stride_of(const Rational& x);

/// (V, O_V(d)) for a saturated homogeneous ideal in a single-graded ring.
struct VarietySpec {
  Ideal ideal;
  long d = 1;
  long dimension = 0;
  HilbertPolynomial chi;  // k -> dim (S/I_V)_{d k}
  Rational a0, a1;
  std::optional<Smoothness> smoothness;
};

VarietySpec make_variety(const Ideal& I_V, long d, bool check_smoothness = false);

/// A proper closed subscheme Z ⊂ V; the stored ideal contains I_V and is saturated.
struct SubschemeSpec {
  Ideal ideal;
};

SubschemeSpec make_subscheme(const VarietySpec& V, const Ideal& I_Z);

/// A polarized family X ⊂ P^n × P^1 with relative polarization O(d, 0).
struct FamilySpec {
  Ideal ideal;        // saturated I_X in the bigraded ring (blocks "x", "y")
  long d = 1;
  Ideal fiber_ideal;  // I_X + (y1), saturated: the fiber over 0 = (1:0)
  VarietySpec fiber;  // the fiber over 0 as a variety in the x-ring
  std::vector<std::string> flatness_checks;  // fiber Hilbert polynomials at (1:0), (0:1), (1:1)
};

FamilySpec make_family(const Ideal& I_X, long d);

/// The same family with fiber X0 × P^1.
FamilySpec product_family(const VarietySpec& X0);

Rational slope_mu(const VarietySpec& V);

struct AxCoefficients {
  Rational x;
  Rational a0, a1;
  HilbertPolynomial fit;
};

AxCoefficients ax_coefficients(const VarietySpec& V, const SubschemeSpec& Z, const Rational& x);

/// a0(x), a1(x) as exact polynomials, fitted on x-samples in [0, c].
struct AxPolynomials {
  UniPoly a0;
  UniPoly a1;
  std::vector<AxCoefficients> samples;  // the last one is the verification sample
};

AxPolynomials ax_polynomials(const VarietySpec& V, const SubschemeSpec& Z, const Rational& c);

struct SlopeAlong {
  Rational mu_c;
  AxPolynomials ax;
};

SlopeAlong slope_mu_c(const VarietySpec& V, const SubschemeSpec& Z, const Rational& c);

/// Largest grid value x with a0(x) > 0 and a0 strictly decreasing along the grid up to x.
/// An upper-bound proxy for the Seshadri constant, never the constant itself.
struct SeshadriProxy {
  std::optional<Rational> proxy;
  std::vector<std::pair<Rational, Rational>> a0_values;  // (x, a0(x)) for the grid points examined
  std::string stop_reason;
};

SeshadriProxy seshadri_proxy(const VarietySpec& V, const SubschemeSpec& Z, const std::vector<Rational>& grid);

/// w(k) = sum_{j=1}^{ck} (h0(V, I_Z^j L^k) - h0(V, L^k)); k must be a multiple of the denominator of c.
Integer total_weight(const VarietySpec& V, const SubschemeSpec& Z, const Rational& c, long k);
HilbertPolynomial weight_polynomial(const VarietySpec& V, const SubschemeSpec& Z, const Rational& c);

/// chi(X, L^k(-ckE)) on the blow-up of the family along the twist ideal, via
/// deg + rank over the base. Without a twist, chi(X, L^k).
HilbertPolynomial family_chi(const FamilySpec& F, const std::optional<Ideal>& twist, const Rational& c);

struct CMResult {
  Rational a0, a1, b0, b1;
  Rational cm;
  HilbertPolynomial chi;
};

/// a1 b0 - a0 b1 + a0^2 (base of genus 0).
CMResult cm_degree(const FamilySpec& F, const std::optional<Ideal>& twist, const std::optional<Rational>& c);

struct DFResult {
  Rational a0, a1;
  Rational w0, w1;
  Rational b0, b1;
  Rational df;
  Rational cm;  // of the compactified configuration
  HilbertPolynomial weight;
  HilbertPolynomial chi;
  std::vector<std::string> warnings;
};

/// Donaldson-Futaki invariant a1 w0 - a0 w1 of the deformation to the normal cone
/// of Z with parameter c. Both routes are computed; disagreement raises InvariantViolation.
DFResult df_normal_cone(const VarietySpec& V, const SubschemeSpec& Z, const Rational& c);

struct Prop33Report {
  bool gated = false;  // power compatibility held on every chart
  std::vector<std::pair<std::string, PowerCompatReport>> charts;
  std::optional<Rational> cm_test_configuration;
  std::optional<Rational> cm_blowup;
  std::optional<Rational> cm_family;
  bool identity_holds = false;
  std::string note;
};

/// CM(T, N) = CM(B, M) - CM(X, L) for Z supported in the fiber over 0.
Prop33Report prop33_check(const FamilySpec& F, const Ideal& I_Z, const Rational& c, long m_max);

struct ScanCell {
  std::size_t subscheme = 0;
  Rational c;
  bool inside_proxy = true;  // cells beyond the proxy are not evaluated
  std::optional<Rational> mu_c;
  std::optional<Rational> difference;  // mu - mu_c
  std::string verdict;
};

struct ScanReport {
  Rational mu;
  std::vector<ScanCell> cells;
  std::vector<SeshadriProxy> proxies;
  bool violation = false;
  std::string verdict;
};

ScanReport slope_semistable_scan(const VarietySpec& V, const std::vector<SubschemeSpec>& Zs,
                                 const std::vector<Rational>& grid);

}  // namespace kstab

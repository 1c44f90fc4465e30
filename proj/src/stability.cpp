#include "kstab/stability.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numeric>

#include "kstab/errors.hpp"

namespace kstab {

namespace {

std::string ideal_key(const Ideal& I) { return I.ring()->describe() + "|" + I.interreduced().to_string(); }

// Hilbert series of sat(base + twist^j) for j = 0, 1, ...; j = 0 is the unit ideal.
class TwistLadder {
 public:
  TwistLadder(Ideal base, Ideal twist) : base_(std::move(base)), twist_(std::move(twist)) {
    raw_.push_back(Ideal::unit(base_.ring()));
  }

  std::shared_ptr<const HilbertSeries> series(long j) {
    std::lock_guard lock(mutex_);
    if (auto it = series_.find(j); it != series_.end()) return it->second;
    auto s = hilbert_series(saturate_irrelevant(raw(j)));
    series_.emplace(j, s);
    return s;
  }

 private:
  const Ideal& raw(long j) {
    while (static_cast<long>(raw_.size()) <= j) {
      raw_.push_back(ideal_sum(ideal_product(raw_.back(), twist_), base_).interreduced());
    }
    return raw_[static_cast<std::size_t>(j)];
  }

  std::mutex mutex_;
  Ideal base_;
  Ideal twist_;
  std::vector<Ideal> raw_;
  std::map<long, std::shared_ptr<const HilbertSeries>> series_;
};

std::shared_ptr<TwistLadder> twist_ladder(const Ideal& base, const Ideal& twist) {
  static std::mutex mutex;
  static std::map<std::string, std::shared_ptr<TwistLadder>> table;
  const std::string key = ideal_key(base) + "#" + ideal_key(twist);
  std::lock_guard lock(mutex);
  auto& slot = table[key];
  if (!slot) slot = std::make_shared<TwistLadder>(base, twist);
  return slot;
}

long integer_multiple(const Rational& x, long k, const char* what) {
  const Rational v = x * k;
  if (v.get_den() != 1) throw InputError(std::string(what) + ": " + to_string(x) + " * " + std::to_string(k) +
                                         " is not an integer");
  return v.get_num().get_si();
}

Rational fiber_dimension(const VarietySpec& V, long k) {
  return Rational(hilbert_series(V.ideal)->dimension({V.d * k}));
}

// x-samples in [0, c] with the smallest denominators, ordered by (denominator, numerator).
std::vector<Rational> x_samples(const Rational& c, std::size_t count) {
  std::vector<Rational> out{Rational(0)};
  for (long q = 1; out.size() < count; ++q) {
    for (long p = 1; out.size() < count; ++p) {
      Rational x(p, q);
      if (x > c) break;
      if (std::gcd(p, q) == 1) out.push_back(x);
    }
  }
  return out;
}

const Block& y_block(const Ring& ring) {
  const Block& y = ring.require_block("y");
  if (y.variables.size() != 2) throw InputError("the base block y must have exactly two variables");
  return y;
}

std::string join_point(long a, long b) { return "(" + std::to_string(a) + ":" + std::to_string(b) + ")"; }

Ideal fiber_at(const Ideal& I_X, long a, long b) {
  const auto& ring = *I_X.ring();
  const auto xring = ring.block_ring("x", 0);
  const Block& y = y_block(ring);
  std::map<std::string, Polynomial> at{{ring.name(y.variables[0]), Polynomial::constant(xring, a)},
                                       {ring.name(y.variables[1]), Polynomial::constant(xring, b)}};
  std::vector<Polynomial> gens;
  for (const auto& g : I_X.generators()) gens.push_back(substitute(g, at, xring));
  return Ideal(xring, std::move(gens));
}

Polynomial base_coordinate(const RingPtr& ring, std::size_t which) {
  return Polynomial::variable(ring, y_block(*ring).variables[which]);
}

}  // namespace

Rational require_positive_param(const Rational& c, const char* what) {
  Rational v = c;
  v.canonicalize();
  if (v <= 0) throw InputError(std::string(what) + " must be positive, got " + to_string(v));
  return v;
}

long stride_of(const Rational& x) { return Rational(x).get_den().get_si(); }

VarietySpec make_variety(const Ideal& I_V, long d, bool check_smoothness) {
  if (d < 1) throw InputError("polarization degree d must be at least 1");
  if (I_V.ring()->grading_rank() != 1) throw InputError("a variety needs a single-graded ring");
  VarietySpec V{saturate_irrelevant(I_V).interreduced(), d, 0, {}, 0, 0, std::nullopt};
  if (V.ideal.is_unit()) throw InputError("the ideal cuts out the empty scheme");
  V.chi = hilbert_polynomial(V.ideal, {d});
  V.dimension = V.chi.poly.degree();
  if (V.dimension < 0) throw InputError("the ideal cuts out the empty scheme");
  std::tie(V.a0, V.a1) = extract_coefficients(V.chi, V.dimension);
  if (check_smoothness) {
    const long codim = static_cast<long>(I_V.ring()->size()) - 1 - V.dimension;
    V.smoothness = jacobian_smoothness_check(V.ideal, codim);
  }
  return V;
}

SubschemeSpec make_subscheme(const VarietySpec& V, const Ideal& I_Z) {
  require_same_ring(V.ideal.ring(), I_Z.ring(), "subscheme");
  for (const auto& g : I_Z.generators()) {
    if (!g.is_homogeneous_total()) throw InputError("subscheme ideal must be homogeneous: " + g.to_string());
  }
  SubschemeSpec Z{saturate_irrelevant(ideal_sum(I_Z, V.ideal)).interreduced()};
  if (ideal_equal(Z.ideal, V.ideal)) throw InputError("Z must be a proper subscheme, but I_Z = I_V");
  if (Z.ideal.is_unit()) throw InputError("Z is empty");
  return Z;
}

FamilySpec make_family(const Ideal& I_X, long d) {
  const auto& ring = I_X.ring();
  if (ring->grading_rank() != 2 || !ring->find_block("x")) {
    throw InputError("a family needs a bigraded ring with blocks x and y");
  }
  y_block(*ring);
  const Ideal sat = saturate_irrelevant(I_X).interreduced();
  std::vector<std::string> checks;
  std::optional<std::string> reference;
  for (auto [a, b] : {std::pair{1L, 0L}, {0L, 1L}, {1L, 1L}}) {
    const std::string hp = hilbert_polynomial(fiber_at(sat, a, b), {d}, 1, true).poly.to_string("k");
    checks.push_back(join_point(a, b) + ": " + hp);
    if (!reference) reference = hp;
    else if (*reference != hp) {
      throw InputError("flatness spot check failed: fiber Hilbert polynomials differ (" + *reference + " vs " + hp +
                       " at " + join_point(a, b) + ")");
    }
  }
  Ideal fiber_ideal =
      saturate_irrelevant(ideal_sum(sat, Ideal::principal(base_coordinate(ring, 1)))).interreduced();
  VarietySpec fiber = make_variety(fiber_at(sat, 1, 0), d);
  return FamilySpec{sat, d, std::move(fiber_ideal), std::move(fiber), std::move(checks)};
}

FamilySpec product_family(const VarietySpec& X0) {
  const auto ring = X0.ideal.ring()->times_projective_line();
  return make_family(X0.ideal.embed(ring), X0.d);
}

Rational slope_mu(const VarietySpec& V) {
  if (V.a0 == 0) throw InputError("degenerate leading coefficient a0 = 0");
  return V.a1 / V.a0;
}

AxCoefficients ax_coefficients(const VarietySpec& V, const SubschemeSpec& Z, const Rational& x) {
  if (x < 0) throw InputError("x must be nonnegative");
  auto ladder = twist_ladder(V.ideal, Z.ideal);
  const long q = stride_of(x);
  auto fit = fit_eventual_polynomial(
      [&](long k) -> Rational {
        const long j = integer_multiple(x, k, "twist");
        return fiber_dimension(V, k) - Rational(ladder->series(j)->dimension({V.d * k}));
      },
      V.dimension, q);
  auto [a0, a1] = extract_coefficients(fit, V.dimension);
  return {x, a0, a1, std::move(fit)};
}

AxPolynomials ax_polynomials(const VarietySpec& V, const SubschemeSpec& Z, const Rational& c) {
  const Rational cc = require_positive_param(c, "c");
  const std::size_t n = static_cast<std::size_t>(V.dimension);
  AxPolynomials out;
  for (const auto& x : x_samples(cc, n + 3)) out.samples.push_back(ax_coefficients(V, Z, x));
  std::vector<Rational> xs, a0s, a1s;
  for (std::size_t i = 0; i + 1 < out.samples.size(); ++i) {
    xs.push_back(out.samples[i].x);
    a0s.push_back(out.samples[i].a0);
    a1s.push_back(out.samples[i].a1);
  }
  out.a0 = interpolate(xs, a0s);
  out.a1 = interpolate(xs, a1s);
  const auto& check = out.samples.back();
  if (out.a0.degree() > V.dimension || out.a1.degree() > V.dimension || out.a0(check.x) != check.a0 ||
      out.a1(check.x) != check.a1) {
    throw InvariantViolation("a0(x), a1(x) are not polynomial of degree <= " + std::to_string(n) + " on [0, " +
                             to_string(cc) + "]; c may exceed the Seshadri constant");
  }
  return out;
}

SlopeAlong slope_mu_c(const VarietySpec& V, const SubschemeSpec& Z, const Rational& c) {
  const Rational cc = require_positive_param(c, "c");
  SlopeAlong out{0, ax_polynomials(V, Z, cc)};
  const UniPoly numerator = (out.ax.a1 + Rational(1, 2) * out.ax.a0.derivative()).antiderivative();
  const UniPoly denominator = out.ax.a0.antiderivative();
  const Rational den = denominator(cc);
  if (den == 0) throw InputError("integral of a0(x) over [0, c] vanishes");
  out.mu_c = numerator(cc) / den;
  return out;
}

SeshadriProxy seshadri_proxy(const VarietySpec& V, const SubschemeSpec& Z, const std::vector<Rational>& grid) {
  SeshadriProxy out;
  Rational previous = V.a0;
  Rational last = 0;
  for (const auto& x : grid) {
    if (x <= last) throw InputError("proxy grid must be increasing and positive");
    last = x;
    Rational a0;
    try {
      a0 = ax_coefficients(V, Z, x).a0;
    } catch (const BudgetExceeded& e) {
      out.stop_reason = "no stable Hilbert polynomial at x = " + to_string(x);
      return out;
    }
    out.a0_values.emplace_back(x, a0);
    if (a0 <= 0) {
      out.stop_reason = "a0(" + to_string(x) + ") = " + to_string(a0) + " is not positive";
      return out;
    }
    if (a0 >= previous) {
      out.stop_reason = "a0 stops decreasing at x = " + to_string(x);
      return out;
    }
    previous = a0;
    out.proxy = x;
  }
  out.stop_reason = "grid exhausted";
  return out;
}

Integer total_weight(const VarietySpec& V, const SubschemeSpec& Z, const Rational& c, long k) {
  const Rational cc = require_positive_param(c, "c");
  const long top = integer_multiple(cc, k, "total weight");
  auto ladder = twist_ladder(V.ideal, Z.ideal);
  Integer w = 0;
  for (long j = 1; j <= top; ++j) w -= ladder->series(j)->dimension({V.d * k});
  return w;
}

HilbertPolynomial weight_polynomial(const VarietySpec& V, const SubschemeSpec& Z, const Rational& c) {
  const Rational cc = require_positive_param(c, "c");
  return fit_eventual_polynomial([&](long k) { return Rational(total_weight(V, Z, cc, k)); }, V.dimension + 1,
                                 stride_of(cc));
}

HilbertPolynomial family_chi(const FamilySpec& F, const std::optional<Ideal>& twist, const Rational& c) {
  std::shared_ptr<TwistLadder> ladder;
  Rational cc = 1;
  if (twist) {
    require_same_ring(F.ideal.ring(), twist->ring(), "family twist");
    cc = require_positive_param(c, "c");
    ladder = twist_ladder(F.ideal, *twist);
  }
  auto base = hilbert_series(F.ideal);
  return fit_eventual_polynomial(
      [&](long k) {
        const SectionTable X = section_table([&](long) { return base; }, F.d, {k}, "family");
        Integer chi = relative_euler_characteristic(X, k);
        if (ladder) {
          const long j = integer_multiple(cc, k, "twist");
          const SectionTable J = section_table([&](long) { return ladder->series(j); }, F.d, {k}, "twist");
          chi -= relative_euler_characteristic(J, k);
        }
        return Rational(chi);
      },
      F.fiber.dimension + 1, twist ? stride_of(cc) : 1);
}

CMResult cm_degree(const FamilySpec& F, const std::optional<Ideal>& twist, const std::optional<Rational>& c) {
  std::optional<Ideal> J;
  Rational cc = 1;
  if (twist) {
    if (!c) throw InputError("a twisted CM degree needs the parameter c");
    cc = require_positive_param(*c, "c");
    J = saturate_irrelevant(ideal_sum(*twist, F.ideal)).interreduced();
    if (!J->contains(base_coordinate(F.ideal.ring(), 1))) {
      throw InputError("the twist ideal is not supported in the fiber over 0");
    }
  }
  CMResult out;
  out.a0 = F.fiber.a0;
  out.a1 = F.fiber.a1;
  out.chi = family_chi(F, J, cc);
  std::tie(out.b0, out.b1) = extract_coefficients(out.chi, F.fiber.dimension + 1);
  out.cm = out.a1 * out.b0 - out.a0 * out.b1 + out.a0 * out.a0;
  return out;
}

DFResult df_normal_cone(const VarietySpec& V, const SubschemeSpec& Z, const Rational& c) {
  const Rational cc = require_positive_param(c, "c");
  DFResult out;
  out.a0 = V.a0;
  out.a1 = V.a1;
  out.weight = weight_polynomial(V, Z, cc);
  std::tie(out.w0, out.w1) = extract_coefficients(out.weight, V.dimension + 1);
  out.df = out.a1 * out.w0 - out.a0 * out.w1;

  const FamilySpec T = product_family(V);
  const auto& ring = T.ideal.ring();
  const Ideal J = ideal_sum(Z.ideal.embed(ring), Ideal::principal(base_coordinate(ring, 1)));
  const CMResult cm = cm_degree(T, J, cc);
  out.b0 = cm.b0;
  out.b1 = cm.b1;
  out.cm = cm.cm;
  out.chi = cm.chi;
  if (out.w0 != out.b0 || out.w1 != out.b1 - out.a0) {
    throw InvariantViolation("weight route and chi route disagree: w0 = " + to_string(out.w0) +
                             ", b0 = " + to_string(out.b0) + ", w1 = " + to_string(out.w1) +
                             ", b1 - a0 = " + to_string(out.b1 - out.a0));
  }
  if (ax_coefficients(V, Z, cc).a0 <= 0) {
    out.warnings.push_back("a0(c) is not positive: c lies beyond the Seshadri proxy window");
  }
  return out;
}

Prop33Report prop33_check(const FamilySpec& F, const Ideal& I_Z, const Rational& c, long m_max) {
  const Rational cc = require_positive_param(c, "c");
  const auto& ring = F.ideal.ring();
  require_same_ring(ring, I_Z.ring(), "prop33");
  const Ideal J = saturate_irrelevant(ideal_sum(I_Z, F.ideal)).interreduced();
  if (!J.contains(F.fiber_ideal)) throw InputError("Z is not supported in the fiber over 0");

  Prop33Report report;
  const Block& x = ring->require_block("x");
  const std::size_t y0 = y_block(*ring).variables[0];
  const std::size_t y1 = y_block(*ring).variables[1];
  for (std::size_t xi : x.variables) {
    std::vector<std::string> names;
    for (std::size_t v = 0; v < ring->size(); ++v)
      if (v != xi && v != y0) names.push_back(ring->name(v));
    const auto chart = Ring::standard(names);
    const std::map<std::string, Polynomial> at{{ring->name(xi), Polynomial::constant(chart, 1)},
                                               {ring->name(y0), Polynomial::constant(chart, 1)}};
    auto dehomogenize = [&](const Ideal& I) {
      std::vector<Polynomial> gens;
      for (const auto& g : I.generators()) gens.push_back(substitute(g, at, chart));
      return Ideal(chart, std::move(gens));
    };
    const Ideal z = dehomogenize(J);
    if (z.is_unit()) continue;
    const Ideal ambient = dehomogenize(F.ideal);
    const Ideal center = ideal_sum(ambient, Ideal::principal(Polynomial::variable(chart, ring->name(y1))));
    report.charts.emplace_back(ring->name(xi) + "=1," + ring->name(y0) + "=1", power_compat(z, center, ambient, m_max));
  }
  report.gated = !report.charts.empty();
  for (const auto& [name, r] : report.charts) report.gated = report.gated && r.holds;
  if (!report.gated) {
    report.note = report.charts.empty() ? "Z meets no affine chart" : "power compatibility failed; identity not asserted";
    return report;
  }

  const SubschemeSpec Z0 = make_subscheme(F.fiber, fiber_at(J, 1, 0));
  report.cm_test_configuration = df_normal_cone(F.fiber, Z0, cc).cm;
  report.cm_blowup = cm_degree(F, J, cc).cm;
  report.cm_family = cm_degree(F, std::nullopt, std::nullopt).cm;
  report.identity_holds = *report.cm_test_configuration == *report.cm_blowup - *report.cm_family;
  report.note = report.identity_holds ? "CM(T,N) = CM(B,M) - CM(X,L)" : "identity violated";
  return report;
}

ScanReport slope_semistable_scan(const VarietySpec& V, const std::vector<SubschemeSpec>& Zs,
                                 const std::vector<Rational>& grid) {
  ScanReport report;
  report.mu = slope_mu(V);
  for (std::size_t z = 0; z < Zs.size(); ++z) {
    report.proxies.push_back(seshadri_proxy(V, Zs[z], grid));
    const auto& proxy = report.proxies.back().proxy;
    for (const auto& c : grid) {
      ScanCell cell;
      cell.subscheme = z;
      cell.c = c;
      cell.inside_proxy = proxy && c <= *proxy;
      if (!cell.inside_proxy) {
        cell.verdict = "outside proxy window";
      } else {
        cell.mu_c = slope_mu_c(V, Zs[z], c).mu_c;
        cell.difference = report.mu - *cell.mu_c;
        if (*cell.difference < 0) {
          cell.verdict = "mu < mu_c";
          report.violation = true;
        } else {
          cell.verdict = *cell.difference == 0 ? "mu = mu_c" : "mu > mu_c";
        }
      }
      report.cells.push_back(std::move(cell));
    }
  }
  report.verdict = report.violation ? "violation found" : "no violation found over the supplied scan";
  return report;
}

}  // namespace kstab

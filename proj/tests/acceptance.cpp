// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.
// Usage: kstab_acceptance <path-to-kstab-cli> <jobs-dir>

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "json.hpp"
#include "kstab/stability.hpp"
#include "oracles.hpp"

using namespace kstab;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool condition, const std::string& what) {
    if (!condition && ok) {
      ok = false;
      detail = what;
    }
  }
};

RingPtr projective(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i <= n; ++i) names.push_back("x" + std::to_string(i));
  return Ring::standard(names);
}

Polynomial var(const RingPtr& R, const char* name) { return Polynomial::variable(R, name); }

Outcome slopes() {
  Outcome out;
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto t0 = std::chrono::steady_clock::now();
    const Rational mu = slope_mu(make_variety(Ideal::zero(projective(n)), 1));
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    const Rational expected = Rational(static_cast<long>(n * (n + 1))) / 2;
    out.require(mu == expected, "mu(P^" + std::to_string(n) + ") = " + to_string(mu));
    out.require(ms < 1000, "mu(P^" + std::to_string(n) + ") took " + std::to_string(ms) + " ms");
  }
  if (out.ok) out.detail = "mu(P^n, O(1)) = n(n+1)/2 for n = 1, 2, 3";
  return out;
}

Outcome point_on_line() {
  Outcome out;
  auto R = projective(1);
  const auto V = make_variety(Ideal::zero(R), 1);
  const auto Z = make_subscheme(V, Ideal(R, {var(R, "x0")}));
  const auto ax = ax_polynomials(V, Z, Rational(1, 2));
  out.require(ax.a0 == UniPoly({Rational(1), Rational(-1)}), "a0(x) = " + ax.a0.to_string("x"));
  out.require(ax.a1 == UniPoly({Rational(1)}), "a1(x) = " + ax.a1.to_string("x"));
  for (const Rational& c : {Rational(1, 4), Rational(1, 3), Rational(1, 2), Rational(2, 3), Rational(3, 4)}) {
    const Rational expected = 1 / (2 - c);
    const Rational got = slope_mu_c(V, Z, c).mu_c;
    out.require(got == expected, "mu_c(" + to_string(c) + ") = " + to_string(got));
  }
  const DFResult df = df_normal_cone(V, Z, Rational(1, 2));
  out.require(df.df == Rational(1, 8), "DF(1/2) = " + to_string(df.df));
  out.require(df.cm == Rational(1, 8), "CM route gives " + to_string(df.cm));
  out.require(df.w0 == Rational(-1, 8) && df.b0 == Rational(-1, 8), "w0 = " + to_string(df.w0) + ", b0 = " + to_string(df.b0));
  const Rational b1_minus_a0 = df.b1 - df.a0;
  out.require(df.w1 == Rational(-1, 4) && b1_minus_a0 == Rational(-1, 4),
              "w1 = " + to_string(df.w1) + ", b1 - a0 = " + to_string(b1_minus_a0));
  const Rational df1 = df_normal_cone(V, Z, Rational(1)).df;
  out.require(df1 == 0, "DF(1) = " + to_string(df1));
  if (out.ok) out.detail = "a0 = 1 - x, a1 = 1, mu_c = 1/(2-c), DF(1/2) = 1/8 by both routes, DF(1) = 0";
  return out;
}

Outcome sign_coherence() {
  Outcome out;
  const std::vector<Rational> grid{Rational(1, 5), Rational(1, 4), Rational(1, 3), Rational(1, 2),
                                   Rational(2, 3), Rational(3, 4), Rational(1)};
  auto R1 = projective(1);
  auto R2 = projective(2);
  struct Case {
    std::string name;
    VarietySpec V;
    Ideal Z;
  };
  const std::vector<Case> cases{
      {"(P1, pt)", make_variety(Ideal::zero(R1), 1), Ideal(R1, {var(R1, "x0")})},
      {"(P2, pt)", make_variety(Ideal::zero(R2), 1), Ideal(R2, {var(R2, "x0"), var(R2, "x1")})},
      {"(P2, line)", make_variety(Ideal::zero(R2), 1), Ideal(R2, {var(R2, "x0")})}};
  long cells = 0;
  for (const auto& cs : cases) {
    const SubschemeSpec Z = make_subscheme(cs.V, cs.Z);
    const SeshadriProxy proxy = seshadri_proxy(cs.V, Z, grid);
    out.require(proxy.proxy.has_value(), cs.name + ": no proxy window");
    if (!proxy.proxy) continue;
    long inside = 0;
    for (const auto& c : grid) {
      if (c > *proxy.proxy) continue;
      ++inside;
      const DFResult df = df_normal_cone(cs.V, Z, c);
      const Rational gap = slope_mu(cs.V) - slope_mu_c(cs.V, Z, c).mu_c;
      out.require(sign(df.df) == sign(gap), cs.name + " c = " + to_string(c) + ": DF = " + to_string(df.df) +
                                                 ", mu - mu_c = " + to_string(gap));
    }
    out.require(inside >= 4, cs.name + ": only " + std::to_string(inside) + " grid points inside the proxy");
    cells += inside;
  }
  if (out.ok) out.detail = std::to_string(cells) + " cells, sign(DF) = sign(mu - mu_c) everywhere";
  return out;
}

Outcome blowup_identity() {
  Outcome out;
  auto R1 = projective(1);
  const FamilySpec P = product_family(make_variety(Ideal::zero(R1), 1));
  const RingPtr& RP = P.ideal.ring();
  std::ostringstream detail;
  for (const Rational& c : {Rational(1, 2), Rational(1, 3)}) {
    const Prop33Report r = prop33_check(P, Ideal(RP, {var(RP, "x0"), var(RP, "y1")}), c, 4);
    out.require(r.gated && r.identity_holds, "P1 x P1, c = " + to_string(c) + ": " + r.note);
    if (r.cm_test_configuration) detail << "P1xP1 c=" << to_string(c) << ": " << to_string(*r.cm_test_configuration) << "; ";
  }
  auto R = projective(2)->times_projective_line();
  auto v = [&](const char* n) { return var(R, n); };
  const Polynomial x0 = v("x0"), x1 = v("x1"), x2 = v("x2"), y0 = v("y0"), y1 = v("y1");
  const FamilySpec F = make_family(Ideal(R, {y0 * (x0 * x2 + x1 * x1) + y1 * (x0 * x0 + x1 * x1 - x2 * x2)}), 1);
  const Prop33Report r = prop33_check(F, Ideal(R, {x0, x1, y1}), Rational(1, 3), 4);
  out.require(r.gated, "pencil: power compatibility gate failed");
  out.require(r.identity_holds, "pencil: " + r.note);
  if (r.cm_test_configuration) {
    detail << "pencil c=1/3: " << to_string(*r.cm_test_configuration) << " = " << to_string(*r.cm_blowup) << " - "
           << to_string(*r.cm_family);
  }
  if (out.ok) out.detail = detail.str();
  return out;
}

Outcome product_vanishing() {
  Outcome out;
  auto R1 = projective(1);
  auto R2 = projective(2);
  const Ideal conic(R2, {var(R2, "x0") * var(R2, "x2") - var(R2, "x1") * var(R2, "x1")});
  const std::vector<std::pair<std::string, VarietySpec>> fibers{{"P1", make_variety(Ideal::zero(R1), 1)},
                                                               {"P2", make_variety(Ideal::zero(R2), 1)},
                                                               {"conic", make_variety(conic, 1)},
                                                               {"P1, O(2)", make_variety(Ideal::zero(R1), 2)}};
  for (const auto& [name, X0] : fibers) {
    const Rational cm = cm_degree(product_family(X0), std::nullopt, std::nullopt).cm;
    out.require(cm == 0, name + ": CM = " + to_string(cm));
  }
  if (out.ok) out.detail = std::to_string(fibers.size()) + " product families, CM = 0";
  return out;
}

Outcome power_compat_suite() {
  Outcome out;
  auto R = Ring::standard({"x", "y", "u"});
  const Polynomial u = var(R, "u");
  oracle::Rng rng(0x41);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Polynomial> gens{u};
    const int extra = static_cast<int>(rng.uniform(1, 2));
    for (int g = 0; g < extra; ++g) gens.push_back(oracle::random_polynomial(rng, R, static_cast<int>(rng.uniform(1, 3)), 1, 2));
    const Ideal I(R, gens);
    const PowerCompatReport r = lemma41_check(u, I, 4);
    out.require(r.holds && r.checked == 10, "fails on " + I.to_string());
  }
  auto S = Ring::standard({"x", "y"});
  const Polynomial x = var(S, "x"), y = var(S, "y");
  const PowerCompatReport bad = power_compat(Ideal(S, {x, y}), Ideal(S, {x * y}), 4);
  out.require(!bad.holds, "counterexample not detected");
  out.require(bad.failing_m == 2 && bad.failing_j == 1, "counterexample fails at the wrong (m, j)");
  out.require(bad.certificate && *bad.certificate == x * y, "certificate differs from x*y");
  if (out.ok) out.detail = "200 random ideals pass for m <= 4; (x, y) with h = xy fails at (2, 1), certificate x*y";
  return out;
}

Outcome tilde_init() {
  Outcome out;
  auto R = Ring::standard({"x", "y", "u"});
  const Polynomial x = var(R, "x"), y = var(R, "y"), u = var(R, "u");
  const InitIdeal A = init_ideal(Ideal(R, {u, x * x}), Ideal(R, {u}));
  const Polynomial s = Polynomial::variable(A.ring, "s");
  out.require(ideal_equal(A.generators, Ideal(A.ring, {s, x.embed(A.ring).pow(2)})), "init((u, x^2), (u)) = " + A.to_string());

  const std::vector<Ideal> centers{Ideal(R, {u}), Ideal(R, {x, u}), Ideal(R, {u * y}), Ideal(R, {x * x, u})};
  oracle::Rng rng(0x7);
  long stabilized = 0;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Polynomial> gens;
    const int count = static_cast<int>(rng.uniform(1, 3));
    for (int i = 0; i < count; ++i) gens.push_back(oracle::random_polynomial(rng, R, static_cast<int>(rng.uniform(1, 3)), 1, 3));
    const Ideal I(R, gens);
    const Ideal& center = centers[static_cast<std::size_t>(trial) % centers.size()];
    const TildeFamily T = tilde_components(I, center, 10);
    const long last = static_cast<long>(T.components.size()) - 1;
    const auto expected = oracle::elimination_tilde(I, center, last);
    for (long j = 0; j <= last; ++j)
      out.require(ideal_equal(T.components[j], expected[j]), "C_" + std::to_string(j) + " differs for " + I.to_string());
    auto step = [&](long j) { return ideal_equal(T.components[j + 1], ideal_product(center, T.components[j])); };
    auto triple = [&](long j) { return j + 3 <= last && step(j) && step(j + 1) && step(j + 2); };
    if (T.stabilized()) {
      ++stabilized;
      const long js = T.stabilization_index;
      out.require(triple(js), "stabilization at " + std::to_string(js) + " not verified for " + I.to_string());
      for (long j = 1; j < js; ++j) out.require(!triple(j), "earlier stabilization missed for " + I.to_string());
    } else {
      for (long j = 1; j + 3 <= last; ++j) out.require(!triple(j), "stabilization missed for " + I.to_string());
    }
  }
  if (out.ok) out.detail = "init correct; 50 oracle comparisons agree, " + std::to_string(stabilized) + " stabilized";
  return out;
}

Outcome hilbert_oracle() {
  Outcome out;
  oracle::Rng rng(0x8);
  const std::vector<std::vector<std::string>> names{{"x"}, {"x", "y"}, {"x", "y", "z"}};
  long comparisons = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto& vars = names[trial % 10 == 0 ? 0 : 1 + trial % 2];
    auto R = Ring::standard(vars);
    std::vector<Polynomial> gens;
    const int count = static_cast<int>(rng.uniform(1, 3));
    for (int i = 0; i < count; ++i)
      gens.push_back(oracle::random_form(rng, R, static_cast<int>(rng.uniform(1, 4)), rng.uniform(1, 4)));
    const Ideal I(R, gens);
    for (long D = 0; D <= 8; ++D) {
      const Integer gb = graded_dimension(I, {D});
      const Integer dense = oracle::dense_graded_dimension(I, D);
      ++comparisons;
      out.require(gb == dense, I.to_string() + " in degree " + std::to_string(D) + ": " + gb.get_str() + " vs " +
                                   dense.get_str());
    }
  }
  if (out.ok) out.detail = std::to_string(comparisons) + " (ideal, degree) pairs agree";
  return out;
}

std::pair<int, std::string> capture(const std::string& command) {
  std::array<char, 4096> buffer{};
  std::string text;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::size_t n;
  while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) text.append(buffer.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, text};
}

std::string strip_timing(const std::string& text) {
  auto doc = nlohmann::ordered_json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) return text;
  doc.erase("timing");
  return doc.dump(2);
}

Outcome determinism(const std::string& cli, const std::string& jobs_dir) {
  Outcome out;
  std::vector<std::filesystem::path> jobs;
  for (const auto& entry : std::filesystem::directory_iterator(jobs_dir))
    if (entry.path().extension() == ".json") jobs.push_back(entry.path());
  std::sort(jobs.begin(), jobs.end());
  out.require(!jobs.empty(), "no job files in " + jobs_dir);
  auto run_suite = [&]() {
    std::vector<std::pair<int, std::string>> reports;
    for (const auto& job : jobs) {
      auto [code, text] = capture("'" + cli + "' --job '" + job.string() + "' --seed 1 2>&1");
      reports.emplace_back(code, strip_timing(text));
    }
    return reports;
  };
  const auto first = run_suite();
  const auto second = run_suite();
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    out.require(first[i].first >= 0, jobs[i].filename().string() + ": could not run");
    out.require(first[i] == second[i], jobs[i].filename().string() + ": reports differ");
  }
  if (out.ok) out.detail = std::to_string(jobs.size()) + " job reports byte-identical across two runs";
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: kstab_acceptance <kstab-cli> <jobs-dir>\n";
    return 2;
  }
  const std::string cli = argv[1];
  const std::string jobs = argv[2];
  struct Criterion {
    int id;
    const char* name;
    long limit_ms;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "slope values", 3000, slopes},
      {2, "point on P1", 5000, point_on_line},
      {3, "sign coherence", 120000, sign_coherence},
      {4, "blow-up CM identity", 600000, blowup_identity},
      {5, "product-family vanishing", 60000, product_vanishing},
      {6, "power compatibility suite", 300000, power_compat_suite},
      {7, "tilde and init", 300000, tilde_init},
      {8, "Hilbert oracle equivalence", 300000, hilbert_oracle},
      {9, "determinism", 600000, [&] { return determinism(cli, jobs); }},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome.ok = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = ms <= c.limit_ms;
    const bool pass = outcome.ok && in_time;
    if (!pass) ++failures;
    std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << c.id << " (" << c.name << "): " << outcome.detail
              << (in_time ? "" : " [time limit exceeded]") << " [" << ms << " ms / limit " << c.limit_ms << " ms]"
              << std::endl;
  }
  return failures == 0 ? 0 : 1;
}

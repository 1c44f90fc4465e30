#include "kstab/job.hpp"

#include <chrono>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "kstab/parser.hpp"
#include "kstab/stability.hpp"

namespace kstab {

SchemaError::SchemaError(std::string pointer, const std::string& message)
    : InputError("schema error at " + pointer + ": " + message), pointer_(std::move(pointer)) {}

namespace {

enum class FieldType { ideal, ideal_list, rational, rational_list, integer, integer_list, boolean, polynomial };

struct Field {
  const char* name;
  FieldType type;
  bool required;
};

const std::map<std::string, std::vector<Field>>& kind_table() {
  using T = FieldType;
  static const std::map<std::string, std::vector<Field>> table{
      {"slope", {{"variety", T::ideal, true}, {"d", T::integer, false}, {"smoothness", T::boolean, false}}},
      {"mu-c",
       {{"variety", T::ideal, true}, {"subscheme", T::ideal, true}, {"c", T::rational, true}, {"d", T::integer, false}}},
      {"df",
       {{"variety", T::ideal, true}, {"subscheme", T::ideal, true}, {"c", T::rational, true}, {"d", T::integer, false}}},
      {"cm",
       {{"family", T::ideal, true}, {"twist", T::ideal, false}, {"c", T::rational, false}, {"d", T::integer, false}}},
      {"prop33",
       {{"family", T::ideal, true},
        {"subscheme", T::ideal, true},
        {"c", T::rational, true},
        {"m_max", T::integer, false},
        {"d", T::integer, false}}},
      {"tilde",
       {{"ideal", T::ideal, true}, {"center", T::ideal, true}, {"ambient", T::ideal, false}, {"j_cap", T::integer, false}}},
      {"init", {{"ideal", T::ideal, true}, {"center", T::ideal, true}, {"j_cap", T::integer, false}}},
      {"power-compat",
       {{"ideal", T::ideal, true}, {"center", T::ideal, true}, {"ambient", T::ideal, false}, {"m_max", T::integer, true}}},
      {"lemma41",
       {{"h", T::polynomial, true},
        {"ideal", T::ideal, true},
        {"m_max", T::integer, true},
        {"random_trials", T::integer, false}}},
      {"hilbert",
       {{"ideal", T::ideal, true},
        {"direction", T::integer_list, false},
        {"stride", T::integer, false},
        {"saturate", T::boolean, false}}},
      {"scan",
       {{"variety", T::ideal, true},
        {"subschemes", T::ideal_list, true},
        {"grid", T::rational_list, true},
        {"d", T::integer, false}}},
  };
  return table;
}

void require_object(const Json& j, const std::string& pointer) {
  if (!j.is_object()) throw SchemaError(pointer.empty() ? "/" : pointer, "expected an object");
}

void reject_unknown(const Json& j, const std::string& pointer, const std::set<std::string>& allowed) {
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) throw SchemaError(pointer + "/" + key, "unknown field");
  }
}

std::string escape_pointer(const std::string& key) {
  std::string out;
  for (char ch : key) {
    if (ch == '~') out += "~0";
    else if (ch == '/') out += "~1";
    else out += ch;
  }
  return out;
}

Rational read_rational(Json& value, const std::string& pointer, std::vector<std::string>& notices) {
  std::string text;
  if (value.is_string()) text = value.get<std::string>();
  else if (value.is_number_integer()) text = std::to_string(value.get<long long>());
  else throw SchemaError(pointer, "expected a rational string \"p/q\"");
  Rational r;
  try {
    r = parse_rational(text);
  } catch (const InputError& e) {
    throw SchemaError(pointer, e.what());
  }
  const std::string normal = to_string(r);
  if (!value.is_string() || normal != text) {
    if (value.is_string()) notices.push_back(pointer + ": " + text + " normalized to " + normal);
    value = normal;
  }
  return r;
}

RingPtr parse_ring(const Json& j) {
  require_object(j, "/ring");
  reject_unknown(j, "/ring", {"variables", "blocks", "grading"});
  if (!j.contains("variables")) throw SchemaError("/ring/variables", "missing field");
  const Json& vars = j["variables"];
  if (!vars.is_array() || vars.empty()) throw SchemaError("/ring/variables", "expected a nonempty list of names");
  if (vars.size() > kMaxVariables) {
    throw SchemaError("/ring/variables", "at most " + std::to_string(kMaxVariables) + " variables are supported");
  }
  std::vector<std::string> names;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const std::string at = "/ring/variables/" + std::to_string(i);
    if (!vars[i].is_string()) throw SchemaError(at, "expected a variable name");
    const std::string name = vars[i].get<std::string>();
    const bool ident = !name.empty() && (std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_') &&
                       std::all_of(name.begin(), name.end(), [](char ch) {
                         return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_';
                       });
    if (!ident) throw SchemaError(at, "'" + name + "' is not an identifier");
    if (!seen.insert(name).second) throw SchemaError(at, "duplicate variable '" + name + "'");
    names.push_back(name);
  }
  std::vector<std::vector<long>> grading;
  if (j.contains("grading")) {
    const Json& g = j["grading"];
    if (!g.is_array() || g.empty()) throw SchemaError("/ring/grading", "expected a nonempty list of rows");
    for (std::size_t r = 0; r < g.size(); ++r) {
      const std::string at = "/ring/grading/" + std::to_string(r);
      if (!g[r].is_array() || g[r].size() != names.size()) {
        throw SchemaError(at, "expected " + std::to_string(names.size()) + " integers");
      }
      std::vector<long> row;
      for (std::size_t c = 0; c < g[r].size(); ++c) {
        if (!g[r][c].is_number_integer()) throw SchemaError(at + "/" + std::to_string(c), "expected an integer");
        row.push_back(g[r][c].get<long>());
      }
      grading.push_back(std::move(row));
    }
  } else {
    grading.push_back(std::vector<long>(names.size(), 1));
  }
  std::vector<Block> blocks;
  if (j.contains("blocks")) {
    const Json& b = j["blocks"];
    require_object(b, "/ring/blocks");
    for (const auto& [bname, members] : b.items()) {
      const std::string at = "/ring/blocks/" + escape_pointer(bname);
      if (!members.is_array() || members.empty()) throw SchemaError(at, "expected a nonempty list of variables");
      Block block{bname, {}};
      for (std::size_t i = 0; i < members.size(); ++i) {
        const std::string mat = at + "/" + std::to_string(i);
        if (!members[i].is_string()) throw SchemaError(mat, "expected a variable name");
        auto it = std::find(names.begin(), names.end(), members[i].get<std::string>());
        if (it == names.end()) throw SchemaError(mat, "unknown variable '" + members[i].get<std::string>() + "'");
        block.variables.push_back(static_cast<std::size_t>(it - names.begin()));
      }
      blocks.push_back(std::move(block));
    }
  } else {
    Block all{"x", {}};
    for (std::size_t i = 0; i < names.size(); ++i) all.variables.push_back(i);
    blocks.push_back(std::move(all));
  }
  try {
    return std::make_shared<const Ring>(std::move(names), std::move(grading), std::move(blocks));
  } catch (const InputError& e) {
    throw SchemaError("/ring", e.what());
  }
}

void validate_param(Json& value, const Field& field, const std::string& pointer, const JobDocument& doc,
                    std::vector<std::string>& notices) {
  auto require_ideal_name = [&](const Json& v, const std::string& at) {
    if (!v.is_string()) throw SchemaError(at, "expected an ideal name");
    if (!doc.ideals.count(v.get<std::string>())) {
      throw SchemaError(at, "undeclared ideal '" + v.get<std::string>() + "'");
    }
  };
  switch (field.type) {
    case FieldType::ideal:
      require_ideal_name(value, pointer);
      break;
    case FieldType::ideal_list:
      if (!value.is_array()) throw SchemaError(pointer, "expected a list of ideal names");
      for (std::size_t i = 0; i < value.size(); ++i) require_ideal_name(value[i], pointer + "/" + std::to_string(i));
      break;
    case FieldType::rational:
      read_rational(value, pointer, notices);
      break;
    case FieldType::rational_list:
      if (!value.is_array()) throw SchemaError(pointer, "expected a list of rationals");
      for (std::size_t i = 0; i < value.size(); ++i) read_rational(value[i], pointer + "/" + std::to_string(i), notices);
      break;
    case FieldType::integer:
      if (!value.is_number_integer()) throw SchemaError(pointer, "expected an integer");
      if (value.get<long long>() < 0) throw SchemaError(pointer, "expected a nonnegative integer");
      break;
    case FieldType::integer_list:
      if (!value.is_array()) throw SchemaError(pointer, "expected a list of integers");
      for (std::size_t i = 0; i < value.size(); ++i) {
        if (!value[i].is_number_integer()) throw SchemaError(pointer + "/" + std::to_string(i), "expected an integer");
      }
      break;
    case FieldType::boolean:
      if (!value.is_boolean()) throw SchemaError(pointer, "expected true or false");
      break;
    case FieldType::polynomial:
      if (!value.is_string()) throw SchemaError(pointer, "expected a polynomial string");
      try {
        parse_polynomial(value.get<std::string>(), doc.ring);
      } catch (const InputError& e) {
        throw SchemaError(pointer, e.what());
      }
      break;
  }
}

std::string r2s(const Rational& r) { return to_string(r); }

Json samples_json(const HilbertPolynomial& hp) {
  Json out = Json::array();
  for (const auto& [k, v] : hp.samples) out.push_back(Json::array({k, r2s(v)}));
  return out;
}

Json hilbert_json(const HilbertPolynomial& hp) {
  Json coefficients = Json::array();
  for (const auto& c : hp.coefficients()) coefficients.push_back(r2s(c));
  return Json{{"polynomial", hp.poly.to_string("k")},
              {"coefficients", coefficients},
              {"stride", hp.stride},
              {"first_sample", hp.k0},
              {"samples", samples_json(hp)}};
}

Json power_compat_json(const PowerCompatReport& r) {
  Json out{{"holds", r.holds}, {"pairs_checked", r.checked}, {"center_inside_ideal", r.center_inside_ideal}};
  if (!r.holds) {
    out["failing"] = Json{{"m", *r.failing_m}, {"j", *r.failing_j}};
    out["certificate"] = r.certificate->to_string();
  }
  return out;
}

class Runner {
 public:
  Runner(const JobDocument& job, const RunOptions& options) : job_(job), options_(options) {}

  Report run() {
    const auto start = std::chrono::steady_clock::now();
    static const std::map<std::string, void (Runner::*)()> dispatch{
        {"slope", &Runner::slope},   {"mu-c", &Runner::mu_c},         {"df", &Runner::df},
        {"cm", &Runner::cm},         {"prop33", &Runner::prop33},     {"tilde", &Runner::tilde},
        {"init", &Runner::init},     {"power-compat", &Runner::power}, {"lemma41", &Runner::lemma41},
        {"hilbert", &Runner::hilbert}, {"scan", &Runner::scan}};
    (this->*dispatch.at(job_.kind))();
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);

    Report report;
    Json& doc = report.document;
    doc["job"] = job_.source;
    doc["results"] = results_;
    doc["certificates"] = certificates_;
    doc["verdict"] = Json{{"status", status_}, {"detail", detail_}};
    doc["formula"] = formula_;
    Json notices = Json::array();
    for (const auto& n : job_.notices) notices.push_back(n);
    for (const auto& n : warnings_) notices.push_back(n);
    doc["notices"] = notices;
    doc["timing"] = Json{{"milliseconds", elapsed.count()}};
    report.exit_code = status_ == "fail" ? kExitCheckFailed : kExitOk;
    return report;
  }

 private:
  const Json& params() const { return job_.params; }
  bool has(const char* key) const { return params().contains(key); }
  const Ideal& ideal(const char* key) const { return job_.ideals.at(params()[key].get<std::string>()); }
  long integer(const char* key, long fallback) const { return has(key) ? params()[key].get<long>() : fallback; }
  Rational rational(const char* key) const { return parse_rational(params()[key].get<std::string>()); }

  long positive(const char* key, long fallback) const {
    const long v = integer(key, fallback);
    if (v < 1) throw SchemaError("/job/params/" + std::string(key), "must be positive");
    return v;
  }

  VarietySpec variety() const { return make_variety(ideal("variety"), positive("d", 1), false); }

  void slope() {
    const bool smooth = has("smoothness") && params()["smoothness"].get<bool>();
    const VarietySpec V = make_variety(ideal("variety"), positive("d", 1), smooth);
    results_ = Json{{"dimension", V.dimension}, {"a0", r2s(V.a0)}, {"a1", r2s(V.a1)}, {"mu", r2s(slope_mu(V))}};
    if (V.smoothness) results_["smoothness"] = to_string(*V.smoothness);
    certificates_ = Json{{"hilbert_polynomial", hilbert_json(V.chi)}};
    formula_ = "mu = a_1/a_0";
  }

  void mu_c() {
    const VarietySpec V = variety();
    const SubschemeSpec Z = make_subscheme(V, ideal("subscheme"));
    const Rational c = rational("c");
    const SlopeAlong s = slope_mu_c(V, Z, c);
    const Rational mu = slope_mu(V);
    results_ = Json{{"c", r2s(c)},
                    {"a0(x)", s.ax.a0.to_string("x")},
                    {"a1(x)", s.ax.a1.to_string("x")},
                    {"mu", r2s(mu)},
                    {"mu_c", r2s(s.mu_c)},
                    {"mu - mu_c", r2s(mu - s.mu_c)}};
    Json xs = Json::array();
    for (const auto& sample : s.ax.samples) {
      xs.push_back(Json{{"x", r2s(sample.x)}, {"a0", r2s(sample.a0)}, {"a1", r2s(sample.a1)},
                        {"stride", sample.fit.stride}, {"first_sample", sample.fit.k0}});
    }
    certificates_ = Json{{"x_samples", xs}, {"verification_sample", r2s(s.ax.samples.back().x)}};
    formula_ = "mu_c = int_0^c (a_1(x) + a_0'(x)/2) dx / int_0^c a_0(x) dx";
  }

  void df() {
    const VarietySpec V = variety();
    const SubschemeSpec Z = make_subscheme(V, ideal("subscheme"));
    const Rational c = rational("c");
    const DFResult r = df_normal_cone(V, Z, c);
    const Rational mu_gap = slope_mu(V) - slope_mu_c(V, Z, c).mu_c;
    results_ = Json{{"c", r2s(c)},   {"a0", r2s(r.a0)}, {"a1", r2s(r.a1)}, {"w0", r2s(r.w0)},
                    {"w1", r2s(r.w1)}, {"b0", r2s(r.b0)}, {"b1", r2s(r.b1)}, {"df", r2s(r.df)},
                    {"cm_compactified", r2s(r.cm)}, {"mu - mu_c", r2s(mu_gap)}};
    certificates_ = Json{{"weight_polynomial", hilbert_json(r.weight)}, {"chi_polynomial", hilbert_json(r.chi)}};
    warnings_ = r.warnings;
    const bool signs = sign(r.df) == sign(mu_gap);
    status_ = "pass";
    detail_ = std::string("route equality w_0 = b_0, w_1 = b_1 - a_0 holds; sign(DF) ") +
              (signs ? "agrees" : "disagrees") + " with sign(mu - mu_c)";
    formula_ = "DF = a_1 w_0 - a_0 w_1";
  }

  void cm() {
    const FamilySpec F = make_family(ideal("family"), positive("d", 1));
    std::optional<Ideal> twist;
    std::optional<Rational> c;
    if (has("twist")) {
      if (!has("c")) throw SchemaError("/job/params/c", "missing field (required with a twist)");
      twist = ideal("twist");
    }
    if (has("c")) c = rational("c");
    const CMResult r = cm_degree(F, twist, c);
    results_ = Json{{"a0", r2s(r.a0)}, {"a1", r2s(r.a1)}, {"b0", r2s(r.b0)}, {"b1", r2s(r.b1)}, {"cm", r2s(r.cm)}};
    Json flat = Json::array();
    for (const auto& s : F.flatness_checks) flat.push_back(s);
    certificates_ = Json{{"chi_polynomial", hilbert_json(r.chi)}, {"flatness", flat}};
    formula_ = "CM = a_1 b_0 - a_0 b_1 + (1 - g) a_0^2, g = 0";
  }

  void prop33() {
    const FamilySpec F = make_family(ideal("family"), positive("d", 1));
    const Rational c = rational("c");
    const Prop33Report r = prop33_check(F, ideal("subscheme"), c, positive("m_max", 4));
    Json charts = Json::object();
    for (const auto& [name, report] : r.charts) charts[name] = power_compat_json(report);
    results_ = Json{{"c", r2s(c)}, {"gated", r.gated}};
    if (r.cm_test_configuration) {
      results_["cm_test_configuration"] = r2s(*r.cm_test_configuration);
      results_["cm_blowup"] = r2s(*r.cm_blowup);
      results_["cm_family"] = r2s(*r.cm_family);
      results_["identity_holds"] = r.identity_holds;
    }
    certificates_ = Json{{"power_compat", charts}};
    status_ = r.gated && r.identity_holds ? "pass" : "fail";
    detail_ = r.note;
    formula_ = "CM(T,N) = CM(B,M) - CM(X,L)";
  }

  void tilde() {
    const Ideal ambient = has("ambient") ? ideal("ambient") : Ideal::zero(job_.ring);
    const TildeFamily t = tilde_components(ideal("ideal"), ideal("center"), ambient, positive("j_cap", 16));
    Json comps = Json::array();
    for (const auto& c : t.components) comps.push_back(c.to_string());
    results_ = Json{{"stabilized", t.stabilized()}, {"stabilization_index", t.stabilization_index}, {"components", comps}};
    certificates_ = Json{{"verified_steps", t.stabilized() ? 3 : 0}};
    status_ = t.stabilized() ? "ok" : "partial";
    detail_ = t.stabilized() ? "C_{j+1} = I_X0 C_j for j = j*, j*+1, j*+2" : "j_cap reached without stabilization";
    formula_ = "C_j = I ∩ I_X0^j";
  }

  void init() {
    const InitIdeal r = init_ideal(ideal("ideal"), ideal("center"), positive("j_cap", 16));
    Json gens = Json::array();
    for (const auto& g : r.generators.generators()) gens.push_back(g.to_string());
    results_ = Json{{"generators", gens},
                    {"relations", r.relations.to_string()},
                    {"parameter", r.ring->name(r.ring->size() - 1)},
                    {"stabilization_index", r.stabilization_index}};
    formula_ = "init(I) = sum_j ((C_j : h^j) mod h) s^j";
  }

  void power() {
    const Ideal ambient = has("ambient") ? ideal("ambient") : Ideal::zero(job_.ring);
    const PowerCompatReport r = power_compat(ideal("ideal"), ideal("center"), ambient, positive("m_max", 1));
    results_ = power_compat_json(r);
    status_ = r.holds ? "pass" : "fail";
    detail_ = r.holds ? "all (m, j) pairs hold" : "counterexample found";
    if (!r.center_inside_ideal) warnings_.push_back("the center is not contained in the ideal");
    formula_ = "I^m ∩ I_X0^j = I_X0^j I^(m-j)";
  }

  void lemma41() {
    const Polynomial h = parse_polynomial(params()["h"].get<std::string>(), job_.ring);
    const long m_max = positive("m_max", 1);
    const PowerCompatReport r = lemma41_check(h, ideal("ideal"), m_max);
    results_ = power_compat_json(r);
    bool holds = r.holds;
    const long trials = integer("random_trials", 0);
    if (trials > 0) {
      const std::uint64_t seed = options_.seed.value_or(0);
      std::mt19937_64 rng(seed);
      long passed = 0;
      Json failures = Json::array();
      for (long t = 0; t < trials; ++t) {
        const Ideal I = random_ideal_containing(h, rng);
        const PowerCompatReport tr = lemma41_check(h, I, m_max);
        if (tr.holds) ++passed;
        else failures.push_back(Json{{"ideal", I.to_string()}, {"report", power_compat_json(tr)}});
      }
      results_["random_trials"] = Json{{"seed", seed}, {"trials", trials}, {"passed", passed}};
      certificates_ = Json{{"failures", failures}};
      holds = holds && passed == trials;
    }
    status_ = holds ? "pass" : "fail";
    detail_ = holds ? "all (m, j) pairs hold" : "counterexample found";
    formula_ = "I^m ∩ (h^j) = h^j I^(m-j)";
  }

  Ideal random_ideal_containing(const Polynomial& h, std::mt19937_64& rng) const {
    auto draw = [&](std::uint64_t bound) { return static_cast<long>(rng() % bound); };
    std::vector<Polynomial> gens{h};
    const long extra = 1 + draw(2);
    for (long g = 0; g < extra; ++g) {
      Polynomial p(job_.ring);
      const long terms = 1 + draw(3);
      for (long t = 0; t < terms; ++t) {
        Monomial m;
        const long degree = 1 + draw(2);
        for (long e = 0; e < degree; ++e) m.exp[static_cast<std::size_t>(draw(job_.ring->size()))] += 1;
        long coef = draw(7) - 3;
        if (coef == 0) coef = 1;
        p += Polynomial::monomial(job_.ring, m, coef);
      }
      if (!p.is_zero()) gens.push_back(p);
    }
    return Ideal(job_.ring, std::move(gens));
  }

  void hilbert() {
    const Ideal& I = ideal("ideal");
    DegreeVector direction;
    if (has("direction")) {
      for (const auto& v : params()["direction"]) direction.push_back(v.get<long>());
      if (direction.size() != job_.ring->grading_rank()) {
        throw SchemaError("/job/params/direction", "expected " + std::to_string(job_.ring->grading_rank()) + " entries");
      }
    } else {
      direction.assign(job_.ring->grading_rank(), 1);
    }
    const bool saturate = has("saturate") && params()["saturate"].get<bool>();
    const HilbertPolynomial hp = hilbert_polynomial(I, direction, positive("stride", 1), saturate);
    results_ = Json{{"polynomial", hp.poly.to_string("k")}, {"degree", hp.poly.degree()}};
    certificates_ = Json{{"fit", hilbert_json(hp)}};
    formula_ = "k -> dim (S/I)_{k * direction}";
  }

  void scan() {
    const VarietySpec V = variety();
    std::vector<SubschemeSpec> Zs;
    std::vector<std::string> names;
    for (const auto& n : params()["subschemes"]) {
      names.push_back(n.get<std::string>());
      Zs.push_back(make_subscheme(V, job_.ideals.at(names.back())));
    }
    std::vector<Rational> grid;
    for (const auto& g : params()["grid"]) grid.push_back(parse_rational(g.get<std::string>()));
    const ScanReport r = slope_semistable_scan(V, Zs, grid);
    Json cells = Json::array();
    for (const auto& cell : r.cells) {
      Json j{{"subscheme", names[cell.subscheme]}, {"c", r2s(cell.c)}, {"inside_proxy", cell.inside_proxy}};
      if (cell.mu_c) {
        j["mu_c"] = r2s(*cell.mu_c);
        j["mu - mu_c"] = r2s(*cell.difference);
      }
      j["verdict"] = cell.verdict;
      cells.push_back(std::move(j));
    }
    Json proxies = Json::object();
    for (std::size_t z = 0; z < r.proxies.size(); ++z) {
      Json values = Json::array();
      for (const auto& [x, a0] : r.proxies[z].a0_values) values.push_back(Json::array({r2s(x), r2s(a0)}));
      proxies[names[z]] = Json{{"proxy", r.proxies[z].proxy ? Json(r2s(*r.proxies[z].proxy)) : Json(nullptr)},
                               {"a0_values", values},
                               {"stop_reason", r.proxies[z].stop_reason}};
    }
    results_ = Json{{"mu", r2s(r.mu)}, {"cells", cells}};
    certificates_ = Json{{"seshadri_proxy", proxies}};
    status_ = r.violation ? "fail" : "pass";
    detail_ = r.verdict;
    formula_ = "mu(V, L) >= mu_c(I_Z, L)";
  }

  const JobDocument& job_;
  const RunOptions& options_;
  Json results_ = Json::object();
  Json certificates_ = Json::object();
  std::string status_ = "ok";
  std::string detail_;
  std::string formula_;
  std::vector<std::string> warnings_;
};

void render_value(std::ostringstream& os, const Json& value, int indent);

void render_entry(std::ostringstream& os, const std::string& key, const Json& value, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  const bool scalar_array =
      value.is_array() && std::all_of(value.begin(), value.end(), [](const Json& v) { return v.is_primitive(); });
  if (value.is_primitive()) {
    os << pad << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
  } else if (scalar_array) {
    os << pad << key << ": [";
    for (std::size_t i = 0; i < value.size(); ++i) {
      os << (i ? ", " : "") << (value[i].is_string() ? value[i].get<std::string>() : value[i].dump());
    }
    os << "]\n";
  } else {
    os << pad << key << ":\n";
    render_value(os, value, indent + 2);
  }
}

void render_value(std::ostringstream& os, const Json& value, int indent) {
  if (value.is_object()) {
    for (const auto& [k, v] : value.items()) render_entry(os, k, v, indent);
  } else if (value.is_array()) {
    for (std::size_t i = 0; i < value.size(); ++i) render_entry(os, "[" + std::to_string(i) + "]", value[i], indent);
  } else {
    os << std::string(static_cast<std::size_t>(indent), ' ') << value.dump() << "\n";
  }
}

}  // namespace

const std::vector<std::string>& job_kinds() {
  static const std::vector<std::string> kinds = [] {
    std::vector<std::string> out;
    for (const auto& [k, v] : kind_table()) out.push_back(k);
    return out;
  }();
  return kinds;
}

JobDocument parse_job(const std::string& text) {
  JobDocument doc;
  try {
    doc.source = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError("/", std::string("malformed JSON: ") + e.what());
  }
  Json& src = doc.source;
  require_object(src, "");
  reject_unknown(src, "", {"ring", "ideals", "job"});
  for (const char* key : {"ring", "ideals", "job"}) {
    if (!src.contains(key)) throw SchemaError(std::string("/") + key, "missing field");
  }
  doc.ring = parse_ring(src["ring"]);

  require_object(src["ideals"], "/ideals");
  for (const auto& [name, gens] : src["ideals"].items()) {
    const std::string at = "/ideals/" + escape_pointer(name);
    if (!gens.is_array()) throw SchemaError(at, "expected a list of polynomial strings");
    std::vector<Polynomial> polys;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const std::string gat = at + "/" + std::to_string(i);
      if (!gens[i].is_string()) throw SchemaError(gat, "expected a polynomial string");
      try {
        polys.push_back(parse_polynomial(gens[i].get<std::string>(), doc.ring));
      } catch (const InputError& e) {
        throw SchemaError(gat, e.what());
      }
    }
    doc.ideals.emplace(name, Ideal(doc.ring, std::move(polys)));
  }

  Json& job = src["job"];
  require_object(job, "/job");
  reject_unknown(job, "/job", {"kind", "params"});
  if (!job.contains("kind")) throw SchemaError("/job/kind", "missing field");
  if (!job["kind"].is_string()) throw SchemaError("/job/kind", "expected a string");
  doc.kind = job["kind"].get<std::string>();
  auto entry = kind_table().find(doc.kind);
  if (entry == kind_table().end()) throw SchemaError("/job/kind", "unknown job kind '" + doc.kind + "'");
  if (!job.contains("params")) job["params"] = Json::object();
  Json& params = job["params"];
  require_object(params, "/job/params");
  std::set<std::string> allowed;
  for (const auto& f : entry->second) allowed.insert(f.name);
  reject_unknown(params, "/job/params", allowed);
  for (const auto& f : entry->second) {
    const std::string at = std::string("/job/params/") + f.name;
    if (!params.contains(f.name)) {
      if (f.required) throw SchemaError(at, "missing field");
      continue;
    }
    validate_param(params[f.name], f, at, doc, doc.notices);
  }
  doc.params = params;
  return doc;
}

Report run_job(const JobDocument& job, const RunOptions& options) { return Runner(job, options).run(); }

std::string render_json(const Report& report) { return report.document.dump(2) + "\n"; }

std::string render_text(const Report& report) {
  std::ostringstream os;
  render_value(os, report.document, 0);
  return os.str();
}

Json without_timing(const Json& report) {
  Json copy = report;
  copy.erase("timing");
  return copy;
}

}  // namespace kstab

#include "kstab/hilbert.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

#include "kstab/errors.hpp"

namespace kstab {

UniPoly::UniPoly(std::vector<Rational> ascending) : coefs_(std::move(ascending)) { trim(); }

void UniPoly::trim() {
  while (!coefs_.empty() && coefs_.back() == 0) coefs_.pop_back();
}

Rational UniPoly::coefficient(long power) const {
  if (power < 0 || power >= static_cast<long>(coefs_.size())) return 0;
  return coefs_[static_cast<std::size_t>(power)];
}

std::vector<Rational> UniPoly::descending() const { return {coefs_.rbegin(), coefs_.rend()}; }

Rational UniPoly::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coefs_.rbegin(); it != coefs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

UniPoly UniPoly::derivative() const {
  std::vector<Rational> out;
  for (std::size_t i = 1; i < coefs_.size(); ++i) out.push_back(coefs_[i] * static_cast<long>(i));
  return UniPoly(std::move(out));
}

UniPoly UniPoly::antiderivative() const {
  std::vector<Rational> out{0};
  for (std::size_t i = 0; i < coefs_.size(); ++i) out.push_back(coefs_[i] / static_cast<long>(i + 1));
  return UniPoly(std::move(out));
}

UniPoly UniPoly::scale_argument(const Rational& s) const {
  std::vector<Rational> out = coefs_;
  Rational p = 1;
  for (auto& c : out) {
    c *= p;
    p *= s;
  }
  return UniPoly(std::move(out));
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
  std::vector<Rational> out(std::max(a.coefs_.size(), b.coefs_.size()), Rational(0));
  for (std::size_t i = 0; i < a.coefs_.size(); ++i) out[i] += a.coefs_[i];
  for (std::size_t i = 0; i < b.coefs_.size(); ++i) out[i] += b.coefs_[i];
  return UniPoly(std::move(out));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + Rational(-1) * b; }

UniPoly operator*(const Rational& s, const UniPoly& a) {
  std::vector<Rational> out = a.coefs_;
  for (auto& c : out) c *= s;
  return UniPoly(std::move(out));
}

std::string UniPoly::to_string(const std::string& var) const {
  if (coefs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (long i = degree(); i >= 0; --i) {
    Rational c = coefs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    Rational a = abs(c);
    if (i == 0) {
      os << kstab::to_string(a);
    } else {
      if (a != 1) os << kstab::to_string(a) << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  return os.str();
}

UniPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  if (xs.size() != ys.size() || xs.empty()) throw InputError("interpolate: node/value count mismatch");
  const std::size_t n = xs.size();
  std::vector<Rational> dd = ys;
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = n - 1; i >= level; --i) {
      const Rational gap = xs[i] - xs[i - level];
      if (gap == 0) throw InputError("interpolate: repeated node");
      dd[i] = (dd[i] - dd[i - 1]) / gap;
    }
  }
  // Horner on the Newton form.
  UniPoly acc({dd[n - 1]});
  for (std::size_t i = n - 1; i-- > 0;) {
    std::vector<Rational> shifted(acc.ascending().size() + 1, Rational(0));
    for (std::size_t t = 0; t < acc.ascending().size(); ++t) {
      shifted[t + 1] += acc.ascending()[t];
      shifted[t] -= acc.ascending()[t] * xs[i];
    }
    shifted[0] += dd[i];
    acc = UniPoly(std::move(shifted));
  }
  return acc;
}

HilbertPolynomial fit_eventual_polynomial(const std::function<Rational(long)>& f, long max_degree, long stride,
                                          const WindowOptions& window) {
  if (stride <= 0) throw InputError("sampling stride must be positive");
  if (max_degree < 0) throw InputError("degree bound must be nonnegative");
  std::map<long, Rational> seen;
  auto sample = [&](long k) -> const Rational& {
    auto it = seen.find(k);
    if (it == seen.end()) it = seen.emplace(k, f(k)).first;
    return it->second;
  };
  const std::size_t span = static_cast<std::size_t>(max_degree) + 2;
  for (long shift = 0; shift <= window.max_shifts; ++shift) {
    const long start = stride * (window.start_multiple + shift);
    std::vector<Rational> xs, ys;
    for (std::size_t i = 0; i <= span; ++i) {
      const long k = start + static_cast<long>(i) * stride;
      xs.emplace_back(k);
      ys.push_back(sample(k));
    }
    UniPoly head = interpolate({xs.begin(), xs.end() - 1}, {ys.begin(), ys.end() - 1});
    if (head.degree() > max_degree) continue;
    UniPoly tail = interpolate({xs.begin() + 1, xs.end()}, {ys.begin() + 1, ys.end()});
    if (!(head == tail)) continue;
    HilbertPolynomial out;
    out.poly = std::move(head);
    out.k0 = start;
    out.stride = stride;
    for (std::size_t i = 0; i < xs.size(); ++i) out.samples.emplace_back(start + static_cast<long>(i) * stride, ys[i]);
    return out;
  }
  throw BudgetExceeded("polynomial behaviour not reached within " + std::to_string(window.max_shifts) +
                       " window shifts (stride " + std::to_string(stride) + ")");
}

namespace {

using KPoly = std::map<DegreeVector, Integer>;

bool unit_column_grading(const Ring& ring) {
  for (std::size_t v = 0; v < ring.size(); ++v) {
    int ones = 0;
    for (const auto& row : ring.grading()) {
      if (row[v] == 1) ++ones;
      else if (row[v] != 0) return false;
    }
    if (ones != 1) return false;
  }
  return true;
}

void require_positive_grading(const Ring& ring) {
  for (std::size_t v = 0; v < ring.size(); ++v) {
    bool positive = false;
    for (const auto& row : ring.grading()) {
      if (row[v] < 0) throw InputError("Hilbert functions need a nonnegative grading");
      if (row[v] > 0) positive = true;
    }
    if (!positive) throw InputError("variable " + ring.name(v) + " has degree zero; graded pieces are infinite");
  }
}

std::vector<Monomial> minimalize(std::vector<Monomial> gens) {
  std::sort(gens.begin(), gens.end(),
            [](const Monomial& a, const Monomial& b) { return a.total_degree() < b.total_degree(); });
  std::vector<Monomial> out;
  for (const auto& g : gens) {
    bool redundant = false;
    for (const auto& h : out) {
      if (h.divides(g)) {
        redundant = true;
        break;
      }
    }
    if (!redundant) out.push_back(g);
  }
  return out;
}

KPoly multiply(const KPoly& a, const KPoly& b) {
  KPoly out;
  for (const auto& [da, ca] : a) {
    for (const auto& [db, cb] : b) {
      DegreeVector d(da.size());
      for (std::size_t i = 0; i < d.size(); ++i) d[i] = da[i] + db[i];
      out[d] += ca * cb;
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

class KPolyBuilder {
 public:
  KPolyBuilder(const Ring& ring) : ring_(ring), nvars_(ring.size()), zero_(ring.grading_rank(), 0) {}

  KPoly run(std::vector<Monomial> gens) {
    gens = minimalize(std::move(gens));
    if (gens.empty()) return {{zero_, Integer(1)}};
    if (gens.front().is_one()) return {};

    std::vector<int> count(nvars_, 0);
    for (const auto& g : gens)
      for (std::size_t v = 0; v < nvars_; ++v)
        if (g.exp[v] > 0) ++count[v];
    const auto best = std::max_element(count.begin(), count.end());
    if (*best <= 1) {
      KPoly acc{{zero_, Integer(1)}};
      for (const auto& g : gens) acc = multiply(acc, {{zero_, Integer(1)}, {ring_.degree_of(g), Integer(-1)}});
      return acc;
    }
    const std::size_t x = static_cast<std::size_t>(best - count.begin());
    std::vector<unsigned> exps;
    for (const auto& g : gens) {
      if (g.exp[x] == 0) continue;
      if (Monomial::variable(x, g.exp[x]) == g) continue;
      exps.push_back(g.exp[x]);
    }
    std::sort(exps.begin(), exps.end());
    const Monomial pivot = Monomial::variable(x, exps[exps.size() / 2]);

    std::vector<Monomial> sum = gens;
    sum.push_back(pivot);
    std::vector<Monomial> quotient;
    quotient.reserve(gens.size());
    for (const auto& g : gens) quotient.push_back(g.gcd(pivot).quotient_of(g));

    KPoly out = run(std::move(sum));
    const DegreeVector shift = ring_.degree_of(pivot);
    for (const auto& [d, c] : run(std::move(quotient))) {
      DegreeVector e(d.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = d[i] + shift[i];
      out[e] += c;
    }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
  }

 private:
  const Ring& ring_;
  std::size_t nvars_;
  DegreeVector zero_;
};

Integer general_count(const Ring& ring, std::size_t var, const DegreeVector& deg,
                      std::map<std::pair<std::size_t, DegreeVector>, Integer>& memo) {
  if (var == ring.size()) {
    return std::all_of(deg.begin(), deg.end(), [](long v) { return v == 0; }) ? Integer(1) : Integer(0);
  }
  auto key = std::make_pair(var, deg);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  Integer total = 0;
  DegreeVector rest = deg;
  while (true) {
    if (std::any_of(rest.begin(), rest.end(), [](long v) { return v < 0; })) break;
    total += general_count(ring, var + 1, rest, memo);
    for (std::size_t r = 0; r < rest.size(); ++r) rest[r] -= ring.grading()[r][var];
  }
  memo.emplace(std::move(key), total);
  return total;
}

struct SeriesMemo {
  std::mutex mutex;
  std::map<const GroebnerBasis*,
           std::pair<std::shared_ptr<const GroebnerBasis>, std::shared_ptr<const HilbertSeries>>>
      table;
};

SeriesMemo& series_memo() {
  static SeriesMemo memo;
  return memo;
}

}  // namespace

HilbertSeries::HilbertSeries(RingPtr ring, const std::vector<Monomial>& generators) : ring_(std::move(ring)) {
  require_positive_grading(*ring_);
  numerator_ = KPolyBuilder(*ring_).run(generators);
}

Integer HilbertSeries::dimension(const DegreeVector& deg) const {
  if (deg.size() != ring_->grading_rank()) throw InputError("degree vector has the wrong length");
  Integer total = 0;
  DegreeVector rest(deg.size());
  for (const auto& [e, c] : numerator_) {
    bool negative = false;
    for (std::size_t i = 0; i < deg.size(); ++i) {
      rest[i] = deg[i] - e[i];
      if (rest[i] < 0) negative = true;
    }
    if (!negative) total += c * monomial_count(*ring_, rest);
  }
  return total;
}

Integer monomial_count(const Ring& ring, const DegreeVector& deg) {
  if (deg.size() != ring.grading_rank()) throw InputError("degree vector has the wrong length");
  for (long v : deg)
    if (v < 0) return 0;
  if (unit_column_grading(ring)) {
    Integer total = 1;
    for (std::size_t r = 0; r < deg.size(); ++r) {
      unsigned long n = 0;
      for (std::size_t v = 0; v < ring.size(); ++v)
        if (ring.grading()[r][v] == 1) ++n;
      if (n == 0) {
        if (deg[r] != 0) return 0;
        continue;
      }
      Integer b;
      mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(deg[r]) + n - 1, n - 1);
      total *= b;
    }
    return total;
  }
  require_positive_grading(ring);
  std::map<std::pair<std::size_t, DegreeVector>, Integer> memo;
  return general_count(ring, 0, deg, memo);
}

std::shared_ptr<const HilbertSeries> hilbert_series(const Ideal& I) {
  for (const auto& g : I.generators()) {
    if (!g.multidegree()) throw InputError("Hilbert function of an inhomogeneous ideal: " + g.to_string());
  }
  auto G = I.basis(MonomialOrder::grevlex(I.ring()->size()));
  auto& memo = series_memo();
  {
    std::lock_guard lock(memo.mutex);
    if (auto it = memo.table.find(G.get()); it != memo.table.end()) return it->second.second;
  }
  auto series = std::make_shared<const HilbertSeries>(I.ring(), G->leading_monomials());
  std::lock_guard lock(memo.mutex);
  auto [it, inserted] = memo.table.emplace(G.get(), std::make_pair(G, series));
  return it->second.second;
}

Integer graded_dimension(const Ideal& I, const DegreeVector& deg) { return hilbert_series(I)->dimension(deg); }

HilbertPolynomial hilbert_polynomial(const Ideal& I, const DegreeVector& direction, long stride, bool saturate,
                                     const WindowOptions& window) {
  const Ideal J = saturate ? saturate_irrelevant(I) : I;
  auto series = hilbert_series(J);
  const long bound = static_cast<long>(I.ring()->size()) - 1;
  return fit_eventual_polynomial(
      [&](long k) {
        DegreeVector d(direction.size());
        for (std::size_t i = 0; i < d.size(); ++i) d[i] = direction[i] * k;
        return Rational(series->dimension(d));
      },
      std::max(bound, 0L), stride, window);
}

namespace {

bool tail_is_linear(const std::map<long, Integer>& row, long run) {
  if (static_cast<long>(row.size()) < run + 1) return false;
  auto it = row.rbegin();
  const Integer last = it->second;
  ++it;
  const Integer diff = last - it->second;
  Integer prev = it->second;
  for (long i = 1; i < run; ++i) {
    ++it;
    if (prev - it->second != diff) return false;
    prev = it->second;
  }
  return true;
}

}  // namespace

SectionTable section_table(const std::function<std::shared_ptr<const HilbertSeries>(long)>& series_for_k,
                           long fiber_degree, const std::vector<long>& k_samples, const std::string& provenance,
                           const SectionTableOptions& options) {
  SectionTable table;
  table.fiber_degree = fiber_degree;
  table.provenance = provenance;
  const long needed = options.stable_run + options.extra_checks;
  for (long k : k_samples) {
    auto series = series_for_k(k);
    auto& row = table.entries[k];
    for (long m = options.m_start;; ++m) {
      if (m > options.m_cap) {
        throw BudgetExceeded("sections over the base not linear in m by m = " + std::to_string(options.m_cap) +
                             " (k = " + std::to_string(k) + ")");
      }
      row[m] = series->dimension({fiber_degree * k, m});
      if (tail_is_linear(row, needed)) break;
    }
  }
  return table;
}

SectionTable section_table(const std::function<Ideal(long)>& ideal_for_k, long fiber_degree,
                           const std::vector<long>& k_samples, const std::string& provenance,
                           const SectionTableOptions& options) {
  return section_table(
      [&](long k) {
        const Ideal I = saturate_irrelevant(ideal_for_k(k));
        if (I.ring()->grading_rank() != 2) throw InputError("section tables need a bigraded ring");
        return hilbert_series(I);
      },
      fiber_degree, k_samples, provenance, options);
}

Integer relative_euler_characteristic(const SectionTable& table, long k, long stable_run) {
  auto it = table.entries.find(k);
  if (it == table.entries.end()) throw InputError("section table has no row for k = " + std::to_string(k));
  const auto& row = it->second;
  if (!tail_is_linear(row, stable_run)) {
    throw InvariantViolation("section table row k = " + std::to_string(k) + " has no linear tail");
  }
  auto last = row.rbegin();
  auto before = std::next(last);
  const Integer rank = last->second - before->second;
  return last->second - rank * last->first;
}

std::pair<Rational, Rational> extract_coefficients(const HilbertPolynomial& hp, long n) {
  if (hp.poly.degree() > n) {
    throw InvariantViolation("polynomial of degree " + std::to_string(hp.poly.degree()) + " exceeds dimension " +
                             std::to_string(n));
  }
  return {hp.poly.coefficient(n), hp.poly.coefficient(n - 1)};
}

}  // namespace kstab

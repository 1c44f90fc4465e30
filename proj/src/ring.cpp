#include "kstab/ring.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "kstab/errors.hpp"

namespace kstab {

Monomial Monomial::variable(std::size_t index, unsigned power) {
  Monomial m;
  m.exp.at(index) = static_cast<std::uint16_t>(power);
  return m;
}

long Monomial::total_degree() const {
  long d = 0;
  for (auto e : exp) d += e;
  return d;
}

bool Monomial::is_one() const {
  return std::all_of(exp.begin(), exp.end(), [](auto e) { return e == 0; });
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < kMaxVariables; ++i)
    if (exp[i] > other.exp[i]) return false;
  return true;
}

bool Monomial::coprime(const Monomial& other) const {
  for (std::size_t i = 0; i < kMaxVariables; ++i)
    if (exp[i] != 0 && other.exp[i] != 0) return false;
  return true;
}

Monomial Monomial::lcm(const Monomial& other) const {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVariables; ++i) r.exp[i] = std::max(exp[i], other.exp[i]);
  return r;
}

Monomial Monomial::gcd(const Monomial& other) const {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVariables; ++i) r.exp[i] = std::min(exp[i], other.exp[i]);
  return r;
}

Monomial Monomial::quotient_of(const Monomial& num) const {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVariables; ++i) r.exp[i] = static_cast<std::uint16_t>(num.exp[i] - exp[i]);
  return r;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVariables; ++i) {
    const unsigned e = unsigned{a.exp[i]} + b.exp[i];
    if (e > 0xffffu) throw BudgetExceeded("monomial exponent overflow");
    r.exp[i] = static_cast<std::uint16_t>(e);
  }
  return r;
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (auto e : m.exp) h = (h ^ e) * 1099511628211ull;
  return h;
}

Ring::Ring(std::vector<std::string> variables, std::vector<std::vector<long>> grading,
           std::vector<Block> blocks)
    : names_(std::move(variables)), grading_(std::move(grading)), blocks_(std::move(blocks)) {
  if (names_.size() > kMaxVariables)
    throw InputError("ring has " + std::to_string(names_.size()) + " variables; at most " +
                     std::to_string(kMaxVariables) + " are supported");
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) throw InputError("empty variable name");
    for (std::size_t j = 0; j < i; ++j)
      if (names_[i] == names_[j]) throw InputError("duplicate variable '" + names_[i] + "'");
  }
  if (grading_.empty()) grading_.push_back(std::vector<long>(names_.size(), 1));
  for (const auto& row : grading_)
    if (row.size() != names_.size()) throw InputError("grading row length differs from variable count");
  for (const auto& b : blocks_)
    for (auto v : b.variables)
      if (v >= names_.size()) throw InputError("block '" + b.name + "' references an unknown variable");
}

RingPtr Ring::standard(std::vector<std::string> names) {
  Block x{"x", std::vector<std::size_t>(names.size())};
  std::iota(x.variables.begin(), x.variables.end(), std::size_t{0});
  const auto n = names.size();
  return std::make_shared<const Ring>(std::move(names), std::vector<std::vector<long>>{std::vector<long>(n, 1)},
                                      std::vector<Block>{std::move(x)});
}

std::optional<std::size_t> Ring::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

std::size_t Ring::require_index(std::string_view name) const {
  if (auto i = index_of(name)) return *i;
  throw InputError("unknown variable '" + std::string(name) + "'");
}

DegreeVector Ring::degree_of(const Monomial& m) const {
  DegreeVector d(grading_.size(), 0);
  for (std::size_t r = 0; r < grading_.size(); ++r)
    for (std::size_t i = 0; i < names_.size(); ++i) d[r] += grading_[r][i] * m.exp[i];
  return d;
}

const Block* Ring::find_block(std::string_view name) const {
  for (const auto& b : blocks_)
    if (b.name == name) return &b;
  return nullptr;
}

const Block& Ring::require_block(std::string_view name) const {
  if (const auto* b = find_block(name)) return *b;
  throw InputError("ring has no block named '" + std::string(name) + "'");
}

RingPtr Ring::with_extra_variable(std::string name) const {
  auto names = names_;
  std::string fresh = std::move(name);
  while (index_of(fresh)) fresh += "_";
  names.push_back(fresh);
  auto grading = grading_;
  for (auto& row : grading) row.push_back(0);
  return std::make_shared<const Ring>(std::move(names), std::move(grading), blocks_);
}

RingPtr Ring::block_ring(std::string_view block, std::size_t grading_row) const {
  const auto& b = require_block(block);
  std::vector<std::string> names;
  std::vector<long> row;
  for (auto v : b.variables) {
    names.push_back(names_[v]);
    row.push_back(grading_.at(grading_row)[v]);
  }
  Block all{std::string(block), std::vector<std::size_t>(names.size())};
  std::iota(all.variables.begin(), all.variables.end(), std::size_t{0});
  return std::make_shared<const Ring>(std::move(names), std::vector<std::vector<long>>{row},
                                      std::vector<Block>{std::move(all)});
}

RingPtr Ring::times_projective_line(std::string y0, std::string y1) const {
  if (grading_.size() != 1) throw InputError("product with P^1 needs a single-graded ring");
  auto names = names_;
  if (index_of(y0) || index_of(y1)) throw InputError("base variable names clash with fiber variables");
  names.push_back(std::move(y0));
  names.push_back(std::move(y1));
  const auto n = names_.size();
  std::vector<long> fiber_row = grading_[0];
  fiber_row.push_back(0);
  fiber_row.push_back(0);
  std::vector<long> base_row(n, 0);
  base_row.push_back(1);
  base_row.push_back(1);
  Block x{"x", {}}, y{"y", {n, n + 1}};
  for (std::size_t i = 0; i < n; ++i) x.variables.push_back(i);
  return std::make_shared<const Ring>(std::move(names), std::vector<std::vector<long>>{fiber_row, base_row},
                                      std::vector<Block>{std::move(x), std::move(y)});
}

std::string Ring::describe() const {
  std::ostringstream os;
  os << "Q[";
  for (std::size_t i = 0; i < names_.size(); ++i) os << (i ? "," : "") << names_[i];
  os << "]{";
  for (std::size_t r = 0; r < grading_.size(); ++r) {
    os << (r ? ";" : "");
    for (std::size_t i = 0; i < grading_[r].size(); ++i) os << (i ? "," : "") << grading_[r][i];
  }
  os << "}";
  for (const auto& b : blocks_) {
    os << "|" << b.name << ":";
    for (auto v : b.variables) os << v << ".";
  }
  return os.str();
}

bool operator==(const Ring& a, const Ring& b) {
  if (a.names_ != b.names_ || a.grading_ != b.grading_ || a.blocks_.size() != b.blocks_.size()) return false;
  for (std::size_t i = 0; i < a.blocks_.size(); ++i)
    if (a.blocks_[i].name != b.blocks_[i].name || a.blocks_[i].variables != b.blocks_[i].variables) return false;
  return true;
}

bool same_ring(const RingPtr& a, const RingPtr& b) { return a == b || (a && b && *a == *b); }

void require_same_ring(const RingPtr& a, const RingPtr& b, const char* what) {
  if (!same_ring(a, b)) throw InputError(std::string("ring mismatch in ") + what);
}

// ---------------------------------------------------------------------------

MonomialOrder::MonomialOrder(Kind kind, std::size_t nvars, std::vector<std::vector<long>> rows, std::string key)
    : kind_(kind), nvars_(nvars), rows_(std::move(rows)), key_(std::move(key)) {}

namespace {

std::string rows_key(const char* tag, const std::vector<std::vector<long>>& rows) {
  std::ostringstream os;
  os << tag;
  for (const auto& r : rows) {
    os << "[";
    for (auto v : r) os << v << ",";
    os << "]";
  }
  return os.str();
}

// Degree row followed by reverse-lex rows over `vars` (in their given order).
void append_grevlex_rows(std::vector<std::vector<long>>& rows, std::size_t nvars,
                         const std::vector<std::size_t>& vars) {
  std::vector<long> ones(nvars, 0);
  for (auto v : vars) ones[v] = 1;
  rows.push_back(ones);
  for (std::size_t k = vars.size(); k-- > 1;) {
    std::vector<long> r(nvars, 0);
    r[vars[k]] = -1;
    rows.push_back(r);
  }
}

}  // namespace

MonomialOrder MonomialOrder::lex(std::size_t nvars) {
  std::vector<std::vector<long>> rows;
  for (std::size_t i = 0; i < nvars; ++i) {
    std::vector<long> r(nvars, 0);
    r[i] = 1;
    rows.push_back(r);
  }
  return {Kind::lex, nvars, rows, rows_key("lex", rows)};
}

MonomialOrder MonomialOrder::grevlex(std::size_t nvars) {
  std::vector<std::size_t> vars(nvars);
  std::iota(vars.begin(), vars.end(), std::size_t{0});
  std::vector<std::vector<long>> rows;
  append_grevlex_rows(rows, nvars, vars);
  return {Kind::grevlex, nvars, rows, rows_key("grevlex", rows)};
}

MonomialOrder MonomialOrder::grevlex_last(std::size_t nvars, std::size_t last) {
  std::vector<std::size_t> vars;
  for (std::size_t i = 0; i < nvars; ++i)
    if (i != last) vars.push_back(i);
  vars.push_back(last);
  std::vector<std::vector<long>> rows;
  append_grevlex_rows(rows, nvars, vars);
  return {Kind::grevlex, nvars, rows, rows_key("grevlex", rows)};
}

MonomialOrder MonomialOrder::block_elimination(std::size_t nvars, std::vector<std::vector<std::size_t>> blocks) {
  std::vector<bool> seen(nvars, false);
  for (const auto& b : blocks)
    for (auto v : b) {
      if (v >= nvars || seen[v]) throw InputError("block order: blocks must partition the variables");
      seen[v] = true;
    }
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < nvars; ++i)
    if (!seen[i]) rest.push_back(i);
  if (!rest.empty()) blocks.push_back(rest);
  std::vector<std::vector<long>> rows;
  for (const auto& b : blocks) append_grevlex_rows(rows, nvars, b);
  return {Kind::block_elimination, nvars, rows, rows_key("block", rows)};
}

MonomialOrder MonomialOrder::weighted(std::vector<long> weights) {
  for (auto w : weights)
    if (w < 0) throw InputError("weighted order needs nonnegative weights");
  const auto n = weights.size();
  std::vector<std::vector<long>> rows{weights};
  std::vector<std::size_t> vars(n);
  std::iota(vars.begin(), vars.end(), std::size_t{0});
  append_grevlex_rows(rows, n, vars);
  return {Kind::weighted, n, rows, rows_key("weighted", rows)};
}

Ordering MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  for (const auto& row : rows_) {
    long d = 0;
    for (std::size_t i = 0; i < nvars_; ++i)
      if (row[i] != 0) d += row[i] * (long{a.exp[i]} - long{b.exp[i]});
    if (d > 0) return Ordering::greater;
    if (d < 0) return Ordering::less;
  }
  // Rows span all variables for every kind, so equal keys mean equal monomials.
  return Ordering::equal;
}

}  // namespace kstab

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace kstab {

inline constexpr std::size_t kMaxVariables = 16;
inline constexpr int kMaxTotalDegree = 64;

using DegreeVector = std::vector<long>;

/// Exponent vector. Positions past the ring's variable count stay zero, so a
/// monomial of a ring is also a monomial of any ring that appends variables.
struct Monomial {
  std::array<std::uint16_t, kMaxVariables> exp{};

  static Monomial one() { return {}; }
  static Monomial variable(std::size_t index, unsigned power = 1);

  long total_degree() const;
  bool is_one() const;
  bool divides(const Monomial& other) const;
  bool coprime(const Monomial& other) const;
  Monomial lcm(const Monomial& other) const;
  Monomial gcd(const Monomial& other) const;
  /// Requires divides(*this, num).
  Monomial quotient_of(const Monomial& num) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

struct Block {
  std::string name;
  std::vector<std::size_t> variables;
};

/// Variables, an integer grading matrix (rows = grading components,
/// columns = variables) and named variable blocks.
class Ring {
 public:
  Ring(std::vector<std::string> variables, std::vector<std::vector<long>> grading,
       std::vector<Block> blocks = {});

  /// Q[names] with the standard Z-grading and a single block "x".
  static std::shared_ptr<const Ring> standard(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  std::optional<std::size_t> index_of(std::string_view name) const;
  std::size_t require_index(std::string_view name) const;

  const std::vector<std::vector<long>>& grading() const { return grading_; }
  std::size_t grading_rank() const { return grading_.size(); }
  DegreeVector degree_of(const Monomial& m) const;

  const std::vector<Block>& blocks() const { return blocks_; }
  const Block* find_block(std::string_view name) const;
  const Block& require_block(std::string_view name) const;

  /// Same ring plus one trailing variable of degree zero.
  std::shared_ptr<const Ring> with_extra_variable(std::string name) const;

  /// The ring on a block's variables, graded by the given row.
  std::shared_ptr<const Ring> block_ring(std::string_view block, std::size_t grading_row) const;

  /// this (single-graded, one block "x") times P^1 in fresh variables y0, y1:
  /// blocks "x" and "y", bigrading rows (fiber degree, base degree).
  std::shared_ptr<const Ring> times_projective_line(std::string y0 = "y0",
                                                    std::string y1 = "y1") const;

  std::string describe() const;

  friend bool operator==(const Ring& a, const Ring& b);

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<long>> grading_;
  std::vector<Block> blocks_;
};

using RingPtr = std::shared_ptr<const Ring>;

bool same_ring(const RingPtr& a, const RingPtr& b);
void require_same_ring(const RingPtr& a, const RingPtr& b, const char* what);

enum class Ordering { less, equal, greater };

/// lex, grevlex, block elimination and weighted orders, compiled to a weight
/// matrix whose rows are compared lexicographically.
class MonomialOrder {
 public:
  enum class Kind { lex, grevlex, block_elimination, weighted };

  static MonomialOrder lex(std::size_t nvars);
  static MonomialOrder grevlex(std::size_t nvars);
  /// grevlex with the given variable moved to the last (cheapest) position.
  static MonomialOrder grevlex_last(std::size_t nvars, std::size_t last);
  /// Each block beats every later block; grevlex inside a block.
  static MonomialOrder block_elimination(std::size_t nvars,
                                         std::vector<std::vector<std::size_t>> blocks);
  /// Weight vector first, then grevlex tie-break. Weights must be nonnegative.
  static MonomialOrder weighted(std::vector<long> weights);

  Kind kind() const { return kind_; }
  std::size_t nvars() const { return nvars_; }
  Ordering compare(const Monomial& a, const Monomial& b) const;
  bool greater(const Monomial& a, const Monomial& b) const {
    return compare(a, b) == Ordering::greater;
  }
  /// Stable textual key (used for memoization).
  const std::string& key() const { return key_; }

  friend bool operator==(const MonomialOrder& a, const MonomialOrder& b) { return a.key_ == b.key_; }

 private:
  MonomialOrder(Kind kind, std::size_t nvars, std::vector<std::vector<long>> rows, std::string key);

  Kind kind_;
  std::size_t nvars_;
  std::vector<std::vector<long>> rows_;
  std::string key_;
};

}  // namespace kstab

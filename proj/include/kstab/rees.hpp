#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kstab/ideal.hpp"

namespace kstab {

/// Largest k with f in center^k + ambient. Raises InputError when f lies in the
/// ambient ideal and BudgetExceeded past `cap`.
long ord_along(const Polynomial& f, const Ideal& center, const Ideal& ambient, long cap = 32);
long ord_along(const Polynomial& f, const Ideal& center, long cap = 32);

/// C_j = I ∩ center^j (modulo the ambient ideal) for j = 0, 1, ... .
struct TildeFamily {
  Ideal ideal;
  Ideal center;
  Ideal ambient;
  std::vector<Ideal> components;  // C_0 .. C_last, including the verification steps
  long stabilization_index = -1;  // smallest j >= 1 with C_{j+1} = center * C_j; -1 if not reached
  bool stabilized() const { return stabilization_index >= 1; }
};

TildeFamily tilde_components(const Ideal& I, const Ideal& center, const Ideal& ambient, long j_cap = 16);
TildeFamily tilde_components(const Ideal& I, const Ideal& center, long j_cap = 16);

/// The special fiber of the degeneration to the normal cone: generators of an
/// ideal of O_{X0}[s] (presented in the ring with s appended, modulo the
/// center). Requires a principal center and no ambient ideal.
struct InitIdeal {
  RingPtr ring;           // the input ring with the parameter s appended
  Polynomial center;      // local equation h, embedded
  Ideal relations;        // (h) in the extended ring
  Ideal generators;       // reduced modulo the relations
  long stabilization_index = 0;
  std::string to_string() const;
};

InitIdeal init_ideal(const Ideal& I, const Ideal& center, long j_cap = 16);

/// I^m ∩ center^j == center^j * I^(m-j) for 1 <= j <= m <= m_max (modulo the ambient ideal).
struct PowerCompatReport {
  bool holds = true;
  long checked = 0;
  std::optional<long> failing_m;
  std::optional<long> failing_j;
  std::optional<Polynomial> certificate;  // in the left side, not in the right side
  bool center_inside_ideal = true;        // the support hypothesis center ⊆ I
};

PowerCompatReport power_compat(const Ideal& I, const Ideal& center, const Ideal& ambient, long m_max);
PowerCompatReport power_compat(const Ideal& I, const Ideal& center, long m_max);

/// power_compat with a principal center (h).
PowerCompatReport lemma41_check(const Polynomial& h, const Ideal& I, long m_max);

}  // namespace kstab

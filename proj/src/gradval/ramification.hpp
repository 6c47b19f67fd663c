#pragma once

#include "gradval/numeric.hpp"

#include <optional>

namespace gradval {

/// Degree, ramification index, residue degree, residue characteristic and
/// defect of a finite extension, with the optional local indices d, g and
/// r = d / g.
class ExtensionRecord {
public:
  /// Derives the defect when it is not given. Throws InvalidRecord when the
  /// fields are out of range, N != e f p^delta, or r is not the positive
  /// integer d / g.
  ExtensionRecord(Int N, Int e, Int f, Int p, std::optional<Int> delta = std::nullopt,
                  std::optional<Rational> d = std::nullopt,
                  std::optional<Rational> g = std::nullopt,
                  std::optional<Rational> r = std::nullopt);

  static ExtensionRecord trivial(const Int &p = 0);

  const Int &degree() const noexcept { return N_; }
  const Int &e() const noexcept { return e_; }
  const Int &f() const noexcept { return f_; }
  const Int &residue_char() const noexcept { return p_; }
  const Int &defect() const noexcept { return delta_; }
  const std::optional<Rational> &d() const noexcept { return d_; }
  const std::optional<Rational> &g() const noexcept { return g_; }
  const std::optional<Rational> &r() const noexcept { return r_; }

  bool operator==(const ExtensionRecord &) const = default;

private:
  Int N_, e_, f_, p_, delta_;
  std::optional<Rational> d_, g_, r_;
};

/// delta with N = e f p^delta. Throws Inconsistent when no such delta exists.
Int ostrowski_defect(const Int &N, const Int &e, const Int &f, const Int &p);

/// Record of the tower K <= lower <= upper; throws CharMismatch.
ExtensionRecord compose_tower(const ExtensionRecord &lower, const ExtensionRecord &upper);

/// True iff r = 1; throws MissingIndex when r is absent.
bool unramified_criterion(const ExtensionRecord &rec);

/// Checks [K* : K^i] = r [K* : K'^i]; throws Inconsistent or MissingIndex.
void check_inertia_indices(const ExtensionRecord &rec, const Int &index_over_base,
                           const Int &index_over_intermediate);

} // namespace gradval

#pragma once

#include "gradval/monomial_extension.hpp"

#include <cstdint>
#include <random>

namespace gradval {

struct GeneratorParams {
  std::size_t max_rank = 3;
  std::size_t max_size = 6;
  long max_h = 3;
  long max_diag = 3;       // entries of the diagonal blocks lie in [0, max_diag]
  Int max_index = 24;      // upper bound for |det A_T|
};

/// Random extension in triangular form: non-T rows are y_m times a
/// monomial in later-block T-variables. The values are chosen so that the
/// monomialized form satisfies the coset hypotheses (every nu(x_m) lies in
/// the group generated by the T-values of x).
MonomialExtension random_triangular(std::mt19937_64 &rng, const GeneratorParams &params = {});

/// Random extension already in strong monomial form, satisfying the coset
/// hypotheses.
MonomialExtension random_ssm(std::mt19937_64 &rng, const GeneratorParams &params = {});

} // namespace gradval

#pragma once

#include <random>

#include "cohnet/fock.hpp"
#include "cohnet/matrix.hpp"

namespace cohnet::testing {

inline CMatrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = Complex{g(rng), g(rng)};
  }
  return m;
}

inline CMatrix random_hermitian(std::size_t dim, std::mt19937_64& rng) {
  const CMatrix a = random_matrix(dim, dim, rng);
  CMatrix h = a + a.adjoint();
  h *= Complex{0.5, 0.0};
  return h;
}

// A random normalized state spread over `dim` Fock tuples of a sector.
inline PureState random_state(const SectorBasis& basis, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<Amplitude> entries;
  for (const auto& t : basis.tuples()) entries.push_back({t, Complex{g(rng), g(rng)}});
  return PureState::from_entries(basis.mode_count(), std::move(entries)).normalized();
}

}  // namespace cohnet::testing

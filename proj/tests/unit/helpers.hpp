#pragma once

#include <random>

#include "locext/exact_matrix.hpp"

namespace testutil {

// mpq_class(n, d) does not cancel common factors.
inline mpq_class rational(long n, long d) {
  mpq_class q(n, d);
  q.canonicalize();
  return q;
}

inline locext::GaussianRational rand_scalar(std::mt19937_64& rng, long lo, long hi, bool complex) {
  std::uniform_int_distribution<long> d(lo, hi);
  long re = d(rng);
  long im = complex ? d(rng) : 0;
  return {mpq_class(re), mpq_class(im)};
}

inline locext::ExactMatrix rand_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long lo, long hi,
                                       bool complex = false) {
  locext::ExactMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rand_scalar(rng, lo, hi, complex);
  return m;
}

inline locext::ExactMatrix rand_hermitian(std::mt19937_64& rng, std::size_t n, long lo, long hi,
                                          bool complex = false) {
  locext::ExactMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = rand_scalar(rng, lo, hi, false);
    for (std::size_t j = i + 1; j < n; ++j) {
      m(i, j) = rand_scalar(rng, lo, hi, complex);
      m(j, i) = m(i, j).conj();
    }
  }
  return m;
}

inline locext::ExactVector rand_vector(std::mt19937_64& rng, std::size_t n, long lo, long hi, bool complex = false) {
  locext::ExactVector v(n);
  for (auto& x : v) x = rand_scalar(rng, lo, hi, complex);
  return v;
}

}  // namespace testutil

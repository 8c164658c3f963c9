#include "locext/range_matrix.hpp"

#include <functional>
#include <set>
#include <unordered_map>

#include "locext/errors.hpp"
#include "locext/linalg.hpp"

namespace locext::alg {

ExactMatrix SymbolicRangeMatrix::substitute(const std::vector<mpq_class>& x) const {
  ExactMatrix out(dims.a, dims.b);
  for (std::size_t i = 0; i < dims.a; ++i)
    for (std::size_t j = 0; j < dims.b; ++j) out(i, j) = GaussianRational(at(i, j).evaluate(x));
  return out;
}

Polynomial SymbolicRangeMatrix::overlap(const ExactVector& w) const {
  if (w.size() != dims.total()) throw Error(ErrorKind::DimensionMismatch, "witness has the wrong length");
  Polynomial out;
  for (std::size_t s = 0; s < w.size(); ++s) {
    if (w[s].is_zero()) continue;
    if (!w[s].is_real()) throw Error(ErrorKind::PreconditionViolation, "witness must have rational entries");
    out += entries[s] * w[s].re();
  }
  return out;
}

namespace {

std::string site_name(std::size_t i, std::size_t j) {
  if (i < 10 && j < 10) return "psi" + std::to_string(i) + std::to_string(j);
  return "psi" + std::to_string(i) + "_" + std::to_string(j);
}

void check_orthogonal(const std::vector<ExactVector>& basis) {
  for (std::size_t a = 0; a < basis.size(); ++a)
    for (std::size_t b = a + 1; b < basis.size(); ++b)
      if (!inner(basis[a], basis[b]).is_zero())
        throw Error(ErrorKind::NonOrthogonalBasis,
                    "range basis vectors " + std::to_string(a) + " and " + std::to_string(b) + " overlap");
}

}  // namespace

SymbolicRangeMatrix range_coordinate_matrix(Dims d, const std::vector<ExactVector>& basis,
                                            std::vector<std::string> names, bool require_orthogonal_basis) {
  if (names.size() != basis.size())
    throw Error(ErrorKind::DimensionMismatch, "one variable name per basis vector is required");
  for (const auto& v : basis) {
    if (v.size() != d.total()) throw Error(ErrorKind::DimensionMismatch, "basis vector has the wrong length");
    for (const auto& z : v)
      if (!z.is_real()) throw Error(ErrorKind::PreconditionViolation, "range basis must have rational entries");
  }
  if (Subspace::span(basis, d.total()).dim() != basis.size())
    throw Error(ErrorKind::PreconditionViolation, "range basis is linearly dependent");
  if (require_orthogonal_basis) check_orthogonal(basis);

  SymbolicRangeMatrix m{d, PolyRing(std::move(names)), basis, {}};
  std::vector<std::vector<Term>> terms(d.total());
  for (std::size_t l = 0; l < basis.size(); ++l)
    for (std::size_t s = 0; s < d.total(); ++s)
      if (!basis[l][s].is_zero()) terms[s].push_back({Monomial::variable(l), basis[l][s].re()});
  m.entries.reserve(d.total());
  for (auto& t : terms) m.entries.push_back(Polynomial::from_terms(std::move(t)));
  return m;
}

SymbolicRangeMatrix range_coordinate_matrix(const BipartiteState& s, bool require_orthogonal_basis) {
  const Subspace r = range(s.matrix());
  std::vector<std::string> names;
  for (std::size_t p : r.pivots()) names.push_back(site_name(p / s.dim_b(), p % s.dim_b()));
  return range_coordinate_matrix(s.dims(), r.basis(), std::move(names), require_orthogonal_basis);
}

SymbolicRangeMatrix decomposition_coordinate_matrix(const BipartiteState& s, bool require_orthogonal_basis) {
  if (!s.decomposition()) throw Error(ErrorKind::PreconditionViolation, "state has no decomposition");
  std::vector<ExactVector> basis;
  std::vector<std::string> names;
  for (const auto& part : *s.decomposition()) {
    if (sgn(part.weight) == 0) continue;
    basis.push_back(part.vector);
    names.push_back(part.name);
  }
  if (basis.size() != rank(s.matrix()))
    throw Error(ErrorKind::PreconditionViolation, "decomposition vectors do not form a range basis");
  return range_coordinate_matrix(s.dims(), basis, std::move(names), require_orthogonal_basis);
}

namespace {

class MinorEngine {
 public:
  MinorEngine(const std::vector<Polynomial>& entries, std::size_t cols) : entries_(entries), cols_(cols) {}

  // Determinant of the submatrix on row and column bit sets of equal size.
  const Polynomial& det(std::uint32_t rows, std::uint32_t cols) {
    const std::uint64_t key = (std::uint64_t(rows) << 32) | cols;
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    Polynomial out;
    const int r = __builtin_ctz(rows);
    const std::uint32_t rest = rows & (rows - 1);
    int sign = 1;
    for (std::uint32_t c = cols; c; c &= c - 1) {
      const int col = __builtin_ctz(c);
      const Polynomial& e = entries_[std::size_t(r) * cols_ + std::size_t(col)];
      if (!e.is_zero()) {
        if (rest == 0) {
          out += e;
        } else {
          const Polynomial& sub = det(rest, cols & ~(1u << col));
          if (!sub.is_zero()) {
            if (sign > 0) out += e * sub;
            else out -= e * sub;
          }
        }
      }
      sign = -sign;
    }
    return memo_.emplace(key, std::move(out)).first->second;
  }

 private:
  const std::vector<Polynomial>& entries_;
  std::size_t cols_;
  std::unordered_map<std::uint64_t, Polynomial> memo_;
};

bool poly_less(const Polynomial& a, const Polynomial& b) {
  const auto& x = a.terms();
  const auto& y = b.terms();
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    const int c = grevlex_compare(x[i].mono, y[i].mono);
    if (c != 0) return c < 0;
    if (x[i].coeff != y[i].coeff) return x[i].coeff < y[i].coeff;
  }
  return x.size() < y.size();
}

void for_each_subset(std::size_t n, std::size_t k, const std::function<void(std::uint32_t)>& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    std::uint32_t mask = 0;
    for (std::size_t i : idx) mask |= 1u << i;
    f(mask);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

Polynomial determinant(const std::vector<Polynomial>& entries, std::size_t n) {
  if (entries.size() != n * n) throw Error(ErrorKind::DimensionMismatch, "determinant needs a square matrix");
  if (n == 0) return Polynomial(mpq_class(1));
  if (n > 31) throw Error(ErrorKind::PreconditionViolation, "matrix too large for Laplace expansion");
  MinorEngine eng(entries, n);
  const std::uint32_t all = (n == 32) ? ~0u : ((1u << n) - 1);
  return eng.det(all, all);
}

MinorIdeal minor_ideal(const SymbolicRangeMatrix& m, std::size_t k, const std::vector<std::string>& exclude_vars) {
  const std::size_t rows = m.dims.a, cols = m.dims.b;
  if (k == 0 || k > std::min(rows, cols))
    throw Error(ErrorKind::PreconditionViolation, "minor size must lie in 1..min(m,n)");
  if (rows > 31 || cols > 31) throw Error(ErrorKind::PreconditionViolation, "local dimensions above 31");
  std::uint32_t excluded_mask = 0;
  for (const auto& name : exclude_vars) excluded_mask |= 1u << m.ring.index(name);

  MinorIdeal out;
  MinorEngine eng(m.entries, cols);
  auto cmp = [](const Polynomial& a, const Polynomial& b) { return poly_less(a, b); };
  std::set<Polynomial, decltype(cmp)> seen(cmp);
  for_each_subset(rows, k, [&](std::uint32_t rmask) {
    for_each_subset(cols, k, [&](std::uint32_t cmask) {
      ++out.total;
      const Polynomial& d = eng.det(rmask, cmask);
      if (d.is_zero()) {
        ++out.zero;
        return;
      }
      if (d.support_mask() & excluded_mask) {
        ++out.excluded;
        return;
      }
      Polynomial g = d.monic();
      if (!seen.insert(g).second) {
        ++out.duplicates;
        return;
      }
      out.generators.push_back(std::move(g));
    });
  });
  return out;
}

}  // namespace locext::alg

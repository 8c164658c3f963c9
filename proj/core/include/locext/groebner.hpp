#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "locext/polynomial.hpp"

namespace locext::alg {

/// One reduction step: subtract coeff * mono * basis[index].
struct ReductionStep {
  std::size_t index = 0;
  Monomial mono;
  mpq_class coeff;
};

struct NormalForm {
  Polynomial remainder;
  std::vector<ReductionStep> steps;
};

/// Full (top and tail) reduction of p by `basis` under grevlex. Basis
/// elements need not be monic. Zero basis elements are ignored.
Polynomial normal_form(const Polynomial& p, const std::vector<Polynomial>& basis);
NormalForm normal_form_with_steps(const Polynomial& p, const std::vector<Polynomial>& basis);

inline constexpr std::size_t kNoIndex = static_cast<std::size_t>(-1);

/// How item t of a trace was obtained. With base either generator
/// `generator` or the S-polynomial of items (left, right),
///   item_t = scale * (base - sum_s coeff_s * mono_s * item_{index_s}).
/// Items are monic, so the S-polynomial is
///   (L / lm(left)) item_left - (L / lm(right)) item_right, L = lcm.
struct Derivation {
  std::size_t generator = kNoIndex;
  std::size_t left = kNoIndex;
  std::size_t right = kNoIndex;
  std::vector<ReductionStep> steps;
  mpq_class scale;
};

struct GroebnerTrace {
  std::vector<Polynomial> items;
  std::vector<Derivation> derivations;
};

struct GroebnerProgress {
  std::size_t pairs_done = 0;
  std::size_t pairs_pending = 0;
  std::size_t basis_size = 0;
  unsigned degree = 0;
};

struct GroebnerOptions {
  bool record_trace = false;
  std::function<void(const GroebnerProgress&)> progress;
  std::size_t progress_every = 200;
};

struct GroebnerBasis {
  /// Reduced, monic, sorted by increasing leading monomial.
  std::vector<Polynomial> polys;
  std::optional<GroebnerTrace> trace;
  std::size_t pairs_done = 0;
  std::size_t zero_reductions = 0;

  bool contains(const Polynomial& p) const { return normal_form(p, polys).is_zero(); }
};

/// Buchberger's algorithm with the Gebauer-Moeller pair criteria and the
/// normal selection strategy. The returned reduced basis depends only on the
/// ideal.
GroebnerBasis buchberger(const std::vector<Polynomial>& generators, const GroebnerOptions& options = {});

/// S-polynomial of two nonzero polynomials.
Polynomial s_polynomial(const Polynomial& f, const Polynomial& g);

/// True when every S-polynomial of `basis` reduces to zero.
bool is_groebner_basis(const std::vector<Polynomial>& basis);

/// Recomputes every item of `trace` from `generators` and compares with the
/// stored item. Returns the index of the first mismatch, or nullopt.
std::optional<std::size_t> replay_trace(const std::vector<Polynomial>& generators, const GroebnerTrace& trace);

}  // namespace locext::alg

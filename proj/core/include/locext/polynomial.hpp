#pragma once

#include <gmpxx.h>

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace locext::alg {

inline constexpr std::size_t kMaxVariables = 32;

/// Exponent vector with cached total degree and support mask.
struct Monomial {
  std::array<std::uint8_t, kMaxVariables> exp{};
  std::uint16_t degree = 0;
  std::uint32_t mask = 0;

  static Monomial variable(std::size_t index, unsigned power = 1);
  void refresh();

  bool divides(const Monomial& other) const;
  bool is_one() const { return degree == 0; }
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exp == b.exp; }
};

Monomial operator*(const Monomial& a, const Monomial& b);
/// a / b; requires b | a.
Monomial operator/(const Monomial& a, const Monomial& b);
Monomial lcm(const Monomial& a, const Monomial& b);
bool coprime(const Monomial& a, const Monomial& b);

/// Graded reverse lexicographic comparison with x0 > x1 > ... ; returns
/// <0, 0, >0.
int grevlex_compare(const Monomial& a, const Monomial& b);

struct Term {
  Monomial mono;
  mpq_class coeff;
};

/// Polynomial over Q. Terms are kept sorted by decreasing grevlex order and
/// never hold a zero coefficient.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(const mpq_class& c);  // NOLINT: constants embed implicitly
  static Polynomial variable(std::size_t index);
  static Polynomial monomial(const Monomial& m, const mpq_class& c);
  /// Builds from arbitrary terms, combining duplicates.
  static Polynomial from_terms(std::vector<Term> terms);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  std::size_t size() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }
  const Term& lead() const { return terms_.front(); }
  unsigned degree() const;
  bool uses_variable(std::size_t index) const;
  std::uint32_t support_mask() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const mpq_class& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const mpq_class& c) { return a *= c; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial operator-() const;

  /// this - c * m * g, in place.
  void sub_mul(const mpq_class& c, const Monomial& m, const Polynomial& g);
  Polynomial times(const Monomial& m, const mpq_class& c) const;
  /// Removes the leading term.
  void pop_lead() { terms_.erase(terms_.begin()); }

  /// Leading coefficient scaled to 1; zero stays zero.
  Polynomial monic() const;
  Polynomial pow(unsigned n) const;

  mpq_class evaluate(const std::vector<mpq_class>& point) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

 private:
  std::vector<Term> terms_;
};

/// Variable names of a polynomial ring; index order is the variable order.
class PolyRing {
 public:
  PolyRing() = default;
  explicit PolyRing(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  /// Index of a variable; throws ParseError when unknown.
  std::size_t index(std::string_view name) const;
  bool has(std::string_view name) const;
  Polynomial var(std::string_view name) const { return Polynomial::variable(index(name)); }

  /// Accepts + - * ^ parentheses, integers and p/q rationals.
  Polynomial parse(std::string_view text) const;
  std::string str(const Polynomial& p) const;
  std::string str(const Monomial& m) const;

 private:
  std::vector<std::string> names_;
  std::map<std::string, std::size_t, std::less<>> lookup_;
};

}  // namespace locext::alg

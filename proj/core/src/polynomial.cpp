#include "locext/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "locext/errors.hpp"

namespace locext::alg {

Monomial Monomial::variable(std::size_t index, unsigned power) {
  if (index >= kMaxVariables)
    throw Error(ErrorKind::PreconditionViolation, "variable index exceeds " + std::to_string(kMaxVariables));
  Monomial m;
  m.exp[index] = static_cast<std::uint8_t>(power);
  m.refresh();
  return m;
}

void Monomial::refresh() {
  degree = 0;
  mask = 0;
  for (std::size_t i = 0; i < kMaxVariables; ++i) {
    degree = static_cast<std::uint16_t>(degree + exp[i]);
    if (exp[i]) mask |= (1u << i);
  }
}

bool Monomial::divides(const Monomial& o) const {
  if ((mask & ~o.mask) != 0 || degree > o.degree) return false;
  for (std::size_t i = 0; i < kMaxVariables; ++i)
    if (exp[i] > o.exp[i]) return false;
  return true;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (std::size_t i = 0; i < kMaxVariables; ++i) {
    const unsigned e = unsigned(a.exp[i]) + b.exp[i];
    if (e > 255) throw Error(ErrorKind::PreconditionViolation, "exponent overflow");
    m.exp[i] = static_cast<std::uint8_t>(e);
  }
  m.degree = static_cast<std::uint16_t>(a.degree + b.degree);
  m.mask = a.mask | b.mask;
  return m;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (std::size_t i = 0; i < kMaxVariables; ++i) m.exp[i] = static_cast<std::uint8_t>(a.exp[i] - b.exp[i]);
  m.refresh();
  return m;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (std::size_t i = 0; i < kMaxVariables; ++i) m.exp[i] = std::max(a.exp[i], b.exp[i]);
  m.refresh();
  return m;
}

bool coprime(const Monomial& a, const Monomial& b) { return (a.mask & b.mask) == 0; }

int grevlex_compare(const Monomial& a, const Monomial& b) {
  if (a.degree != b.degree) return a.degree > b.degree ? 1 : -1;
  for (std::size_t i = kMaxVariables; i-- > 0;)
    if (a.exp[i] != b.exp[i]) return a.exp[i] < b.exp[i] ? 1 : -1;
  return 0;
}

Polynomial::Polynomial(const mpq_class& c) {
  if (sgn(c) != 0) terms_.push_back({Monomial{}, c});
}

Polynomial Polynomial::variable(std::size_t index) { return monomial(Monomial::variable(index), 1); }

Polynomial Polynomial::monomial(const Monomial& m, const mpq_class& c) {
  Polynomial p;
  if (sgn(c) != 0) p.terms_.push_back({m, c});
  return p;
}

Polynomial Polynomial::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& x, const Term& y) { return grevlex_compare(x.mono, y.mono) > 0; });
  Polynomial p;
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff += t.coeff;
      if (sgn(p.terms_.back().coeff) == 0) p.terms_.pop_back();
    } else if (sgn(t.coeff) != 0) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

unsigned Polynomial::degree() const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max<unsigned>(d, t.mono.degree);
  return d;
}

bool Polynomial::uses_variable(std::size_t index) const {
  for (const auto& t : terms_)
    if (t.mono.exp[index]) return true;
  return false;
}

std::uint32_t Polynomial::support_mask() const {
  std::uint32_t m = 0;
  for (const auto& t : terms_) m |= t.mono.mask;
  return m;
}

namespace {

// out = a + sign * scale * mono * b, merged in grevlex order.
std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b, const mpq_class& scale,
                        const Monomial* mono) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  Term tb;
  auto load = [&](std::size_t k) {
    tb.mono = mono ? b[k].mono * *mono : b[k].mono;
    tb.coeff = b[k].coeff * scale;
  };
  if (j < b.size()) load(j);
  while (i < a.size() || j < b.size()) {
    int cmp;
    if (i == a.size()) cmp = -1;
    else if (j == b.size()) cmp = 1;
    else cmp = grevlex_compare(a[i].mono, tb.mono);
    if (cmp > 0) {
      out.push_back(a[i++]);
    } else if (cmp < 0) {
      out.push_back(tb);
      if (++j < b.size()) load(j);
    } else {
      mpq_class c = a[i].coeff + tb.coeff;
      if (sgn(c) != 0) out.push_back({a[i].mono, std::move(c)});
      ++i;
      if (++j < b.size()) load(j);
    }
  }
  return out;
}

}  // namespace

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  terms_ = merge(terms_, o.terms_, 1, nullptr);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  terms_ = merge(terms_, o.terms_, -1, nullptr);
  return *this;
}

Polynomial& Polynomial::operator*=(const mpq_class& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& t : a.terms_) out.terms_ = merge(out.terms_, b.terms_, t.coeff, &t.mono);
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial p = *this;
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

void Polynomial::sub_mul(const mpq_class& c, const Monomial& m, const Polynomial& g) {
  terms_ = merge(terms_, g.terms_, -c, &m);
}

Polynomial Polynomial::times(const Monomial& m, const mpq_class& c) const {
  Polynomial p;
  if (sgn(c) == 0) return p;
  p.terms_.reserve(terms_.size());
  for (const auto& t : terms_) p.terms_.push_back({t.mono * m, t.coeff * c});
  return p;
}

Polynomial Polynomial::monic() const {
  if (terms_.empty()) return *this;
  Polynomial p = *this;
  const mpq_class inv = 1 / terms_.front().coeff;
  for (auto& t : p.terms_) t.coeff *= inv;
  return p;
}

Polynomial Polynomial::pow(unsigned n) const {
  Polynomial result(mpq_class(1));
  Polynomial base = *this;
  while (n) {
    if (n & 1u) result = result * base;
    n >>= 1u;
    if (n) base = base * base;
  }
  return result;
}

mpq_class Polynomial::evaluate(const std::vector<mpq_class>& point) const {
  mpq_class sum = 0;
  for (const auto& t : terms_) {
    mpq_class v = t.coeff;
    for (std::size_t i = 0; i < kMaxVariables; ++i)
      for (unsigned e = 0; e < t.mono.exp[i]; ++e) v *= point.at(i);
    sum += v;
  }
  return sum;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  return true;
}

PolyRing::PolyRing(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.size() > kMaxVariables)
    throw Error(ErrorKind::PreconditionViolation, "ring has " + std::to_string(names_.size()) +
                                                      " variables, at most " + std::to_string(kMaxVariables) +
                                                      " are supported");
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (!lookup_.emplace(names_[i], i).second)
      throw Error(ErrorKind::PreconditionViolation, "duplicate variable name " + names_[i]);
}

std::size_t PolyRing::index(std::string_view name) const {
  auto it = lookup_.find(name);
  if (it == lookup_.end()) throw Error(ErrorKind::ParseError, "unknown variable '" + std::string(name) + "'");
  return it->second;
}

bool PolyRing::has(std::string_view name) const { return lookup_.find(name) != lookup_.end(); }

std::string PolyRing::str(const Monomial& m) const {
  std::string out;
  for (std::size_t i = 0; i < kMaxVariables; ++i) {
    if (!m.exp[i]) continue;
    if (!out.empty()) out += '*';
    out += i < names_.size() ? names_[i] : "x" + std::to_string(i);
    if (m.exp[i] > 1) out += '^' + std::to_string(m.exp[i]);
  }
  return out.empty() ? "1" : out;
}

std::string PolyRing::str(const Polynomial& p) const {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    mpq_class c = t.coeff;
    if (sgn(c) < 0) {
      out += first ? "-" : " - ";
      c = -c;
    } else if (!first) {
      out += " + ";
    }
    if (t.mono.is_one()) {
      out += c.get_str();
    } else {
      if (c != 1) out += c.get_str() + "*";
      out += str(t.mono);
    }
    first = false;
  }
  return out;
}

namespace {

class Parser {
 public:
  Parser(const PolyRing& ring, std::string_view text) : ring_(ring), s_(text) {}

  Polynomial run() {
    Polynomial p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return p;
  }

 private:
  const PolyRing& ring_;
  std::string_view s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorKind::ParseError, why + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial p;
    bool neg = eat('-');
    if (!neg) eat('+');
    p = neg ? -term() : term();
    for (;;) {
      if (eat('+')) p += term();
      else if (eat('-')) p -= term();
      else return p;
    }
  }

  Polynomial term() {
    Polynomial p = factor();
    while (eat('*')) p = p * factor();
    return p;
  }

  Polynomial factor() {
    if (eat('-')) return -factor();
    Polynomial base = primary();
    if (eat('^')) {
      skip();
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      base = base.pow(static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start)))));
    }
    return base;
  }

  std::string digits() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  Polynomial primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = digits();
      skip();
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        skip();
        const std::string den = digits();
        if (den.empty()) fail("expected denominator");
        num += "/" + den;
      }
      mpq_class q(num);
      if (q.get_den() == 0) fail("zero denominator");
      q.canonicalize();
      return Polynomial(q);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      return ring_.var(s_.substr(start, pos_ - start));
    }
    fail("unexpected character");
  }
};

}  // namespace

Polynomial PolyRing::parse(std::string_view text) const { return Parser(*this, text).run(); }

}  // namespace locext::alg

#include "locext/gaussian_rational.hpp"

#include <cmath>
#include <ostream>

#include "locext/errors.hpp"

namespace locext {

namespace {

mpq_class parse_rational(std::string_view text) {
  if (text.empty()) throw Error(ErrorKind::ParseError, "empty rational");
  std::string s(text);
  if (s.front() == '+') s.erase(s.begin());
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw Error(ErrorKind::ParseError, "bad rational '" + s + "'");
  if (q.get_den() == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

std::string strip(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text)
    if (c != ' ' && c != '\t') out.push_back(c);
  return out;
}

}  // namespace

GaussianRational GaussianRational::parse(std::string_view text) {
  std::string s = strip(text);
  if (s.empty()) throw Error(ErrorKind::ParseError, "empty scalar");
  if (s.back() != 'i') return GaussianRational(parse_rational(s));
  s.pop_back();
  // Split at the last sign that is not the leading one.
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if (s[k] == '+' || s[k] == '-') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) {
    if (s.empty() || s == "+") return {mpq_class(0), mpq_class(1)};
    if (s == "-") return {mpq_class(0), mpq_class(-1)};
    return {mpq_class(0), parse_rational(s)};
  }
  std::string im_part = s.substr(split);
  if (im_part == "+") im_part = "1";
  if (im_part == "-") im_part = "-1";
  return {parse_rational(s.substr(0, split)), parse_rational(im_part)};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (is_real() && o.is_real()) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (o.is_zero()) throw std::domain_error("GaussianRational: division by zero");
  if (o.is_real()) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  mpq_class d = o.norm2();
  mpq_class re = (re_ * o.re_ + im_ * o.im_) / d;
  mpq_class im = (im_ * o.re_ - re_ * o.im_) / d;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::string GaussianRational::str() const {
  if (is_real()) return re_.get_str();
  std::string out = re_.get_str();
  if (sgn(im_) >= 0) out += "+";
  out += im_.get_str();
  out += "i";
  return out;
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.str(); }

mpq_class rationalize(double value, long max_den) {
  if (!std::isfinite(value)) throw std::domain_error("rationalize: non-finite value");
  const bool negative = value < 0;
  double x = std::fabs(value);
  // Continued-fraction convergents h/k.
  mpz_class h_prev = 1, h = static_cast<long>(std::floor(x));
  mpz_class k_prev = 0, k = 1;
  double frac = x - std::floor(x);
  while (frac > 1e-15) {
    double inv = 1.0 / frac;
    long a = static_cast<long>(std::floor(inv));
    mpz_class k_next = a * k + k_prev;
    if (k_next > max_den) break;
    mpz_class h_next = a * h + h_prev;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
    frac = inv - std::floor(inv);
  }
  mpq_class q(h, k);
  q.canonicalize();
  return negative ? mpq_class(-q) : q;
}

}  // namespace locext

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "helpers.hpp"
#include "locext/errors.hpp"
#include "locext/extension.hpp"
#include "locext/families.hpp"
#include "locext/linalg.hpp"
#include "locext/numlab.hpp"
#include "locext/survey.hpp"

using namespace locext;
using namespace locext::num;

namespace {

// Real roots of x^3 + a x^2 + b x + c (all roots real), ascending.
std::vector<double> cubic_roots(long double a, long double b, long double c) {
  const long double p = b - a * a / 3, q = 2 * a * a * a / 27 - a * b / 3 + c;
  std::vector<double> out;
  if (std::fabs(p) < 1e-300L) {
    long double r = std::cbrt(-q);
    for (int i = 0; i < 3; ++i) out.push_back(static_cast<double>(r - a / 3));
  } else {
    const long double m = 2 * std::sqrt(-p / 3);
    long double arg = 3 * q / (p * m);
    arg = std::max(-1.0L, std::min(1.0L, arg));
    const long double theta = std::acos(arg) / 3;
    for (int k = 0; k < 3; ++k)
      out.push_back(static_cast<double>(m * std::cos(theta - 2 * std::numbers::pi_v<long double> * k / 3) - a / 3));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_SUITE("numlab") {

TEST_CASE("random_hermitian") {
  auto one = random_hermitian(1, 7);
  CHECK(one.rows() == 1);
  CHECK(one(0, 0).imag() == 0);
  auto h = random_hermitian(6, 3);
  CHECK((h - h.adjoint()).norm() == 0);
  CHECK(random_hermitian(6, 3) == h);
  CHECK(random_hermitian(6, 4) != h);
}

TEST_CASE("random_hermitian moments") {
  const int n = 10000;
  std::complex<double> sum_off = 0;
  double sum_diag = 0, sum_abs2 = 0;
  for (int s = 0; s < n; ++s) {
    auto h = random_hermitian(2, static_cast<std::uint64_t>(s));
    sum_diag += h(0, 0).real();
    sum_off += h(0, 1);
    sum_abs2 += std::norm(h(0, 1));
  }
  // 5 sigma / sqrt(n) with unit variance
  CHECK(std::fabs(sum_diag / n) < 0.05);
  CHECK(std::abs(sum_off / double(n)) < 0.05);
  CHECK(std::fabs(sum_abs2 / n - 1) < 0.1);
}

TEST_CASE("eig_hermitian examples") {
  CMatrix d = CMatrix::Zero(3, 3);
  d(0, 0) = 3;
  d(1, 1) = 1;
  d(2, 2) = 2;
  auto e = eig_hermitian(d);
  CHECK(e.values(0) == doctest::Approx(1));
  CHECK(e.values(1) == doctest::Approx(2));
  CHECK(e.values(2) == doctest::Approx(3));
  CMatrix x(2, 2);
  x << 0, 1, 1, 0;
  auto f = eig_hermitian(x);
  CHECK(f.values(0) == doctest::Approx(-1));
  CHECK(f.values(1) == doctest::Approx(1));
}

TEST_CASE("eig_hermitian reconstruction") {
  for (std::size_t n : {8u, 40u}) {
    CAPTURE(n);
    auto a = random_hermitian(n, 5);
    auto e = eig_hermitian(a);
    CMatrix rebuilt = e.vectors * e.values.cast<std::complex<double>>().asDiagonal() * e.vectors.adjoint();
    CHECK((rebuilt - a).norm() <= 1e-10 * a.norm());
    CHECK((e.vectors.adjoint() * e.vectors - CMatrix::Identity(n, n)).norm() <= 1e-10);
    for (Eigen::Index i = 1; i < e.values.size(); ++i) CHECK(e.values(i - 1) <= e.values(i));
  }
}

TEST_CASE("property: eigenvalues match characteristic polynomial roots") {
  std::mt19937_64 rng(51);
  for (int t = 0; t < 100; ++t) {
    auto m = testutil::rand_hermitian(rng, 3, -5, 5, t % 2 == 0);
    // exact coefficients of det(x - M) = x^3 + a x^2 + b x + c
    auto g = [&](std::size_t i, std::size_t j) { return m(i, j); };
    GaussianRational tr = m.trace();
    GaussianRational minors = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0) + g(0, 0) * g(2, 2) - g(0, 2) * g(2, 0) +
                              g(1, 1) * g(2, 2) - g(1, 2) * g(2, 1);
    GaussianRational det = g(0, 0) * (g(1, 1) * g(2, 2) - g(1, 2) * g(2, 1)) -
                           g(0, 1) * (g(1, 0) * g(2, 2) - g(1, 2) * g(2, 0)) +
                           g(0, 2) * (g(1, 0) * g(2, 1) - g(1, 1) * g(2, 0));
    REQUIRE(tr.is_real());
    REQUIRE(minors.is_real());
    REQUIRE(det.is_real());
    auto roots = cubic_roots(-tr.re().get_d(), minors.re().get_d(), -det.re().get_d());
    CMatrix f(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) f(i, j) = {m(i, j).real_double(), m(i, j).imag_double()};
    auto e = eig_hermitian(f);
    for (int i = 0; i < 3; ++i) CHECK(std::fabs(e.values(i) - roots[i]) < 1e-9 * std::max(1.0, std::fabs(roots[i])));
  }
}

TEST_CASE("float partial transpose matches the exact one") {
  auto s = rho_4x5();
  auto f = to_float(s);
  auto exact = partial_transpose(s, Side::B);
  auto pf = partial_transpose(f.matrix, s.dims(), Side::B);
  for (std::size_t i = 0; i < exact.rows(); ++i)
    for (std::size_t j = 0; j < exact.cols(); ++j)
      CHECK(pf(i, j).real() == doctest::Approx(exact(i, j).real_double()));
}

TEST_CASE("gauss-newton examples") {
  auto full = gauss_newton_run(2, 2, 4, 4, 1);
  CHECK(full.converged);
  CHECK(full.iterations <= 1);

  std::size_t ok = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto r = gauss_newton_run(3, 3, 4, 4, seed);
    if (!r.converged) continue;
    ++ok;
    CHECK(r.residual < 1e-9);
    CHECK(r.min_eigenvalue > -1e-9);
    CHECK(r.min_eigenvalue_pt > -1e-9);
    auto res = birank_residual(r.state.matrix, {3, 3}, 4, 4);
    CHECK(res.cwiseAbs().maxCoeff() < 1e-9);
    CHECK(r.state.matrix.trace().real() == doctest::Approx(1));
  }
  CHECK(ok >= 9);

  GaussNewtonOptions tight;
  tight.max_iter = 1;
  CHECK_THROWS_AS(gauss_newton_birank(3, 3, 4, 4, 1, tight), Error);
}

TEST_CASE("gauss-newton calibration on 2x4 birank (7,8)") {
  std::size_t ok = 0, ppt = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    auto r = gauss_newton_run(2, 4, 7, 8, seed);
    if (!(r.converged && r.residual < 1e-9 && r.iterations <= 200)) continue;
    ++ok;
    // round trip through exact rationals
    BipartiteState s({2, 4}, rationalize_truncated(r.state, 7));
    if (is_ppt(s) && birank(s).first == 7) ++ppt;
  }
  CHECK(ok >= 90);
  CHECK(ppt * 5 >= ok * 4);
}

TEST_CASE("determinism") {
  auto a = gauss_newton_birank(3, 3, 4, 4, 17);
  auto b = gauss_newton_birank(3, 3, 4, 4, 17);
  CHECK(a.matrix == b.matrix);
  SurveyOptions o;
  o.samples = 6;
  o.seed = 3;
  auto one = unextendibility_survey({{{3, 3}, 4, 4}}, o);
  o.threads = 3;
  auto three = unextendibility_survey({{{3, 3}, 4, 4}}, o);
  REQUIRE(one.size() == 1);
  REQUIRE(three.size() == 1);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(one[0].outcomes[i].seed == three[0].outcomes[i].seed);
    CHECK(one[0].outcomes[i].residual == three[0].outcomes[i].residual);
    CHECK(one[0].outcomes[i].extension_dim == three[0].outcomes[i].extension_dim);
  }
}

TEST_CASE("numeric extension dimension examples") {
  CHECK(numeric_extension_dimension(to_float(rho_3x3())) == ext::ppt_extension_space(rho_3x3()).dimension);
  CHECK(numeric_extension_dimension(to_float(rho_3x3())) == 7);
  CHECK(numeric_extension_dimension(to_float(maximally_mixed({2, 2}))) == 8);
  auto s = gauss_newton_birank(3, 3, 4, 4, 2);
  CHECK(numeric_extension_dimension(s) == 3);
  auto rep = numeric_extension_report(to_float(rho_3x3()));
  CHECK(rep.p == 5);
  CHECK(rep.q == 6);
  CHECK(rep.largest_below < 1e-8);
  CHECK(rep.smallest_above > 1e-6);
}

TEST_CASE("property: numeric and exact extension dimensions agree on the corpus") {
  auto p = rho_4x5_pipeline();
  std::vector<BipartiteState> corpus{rho_3x3(), p.stage1(), tiles_complement().state, qubit_counterexample(),
                                     rho_family({2}), maximally_mixed({2, 2}), maximally_mixed({2, 3})};
  for (const auto& s : corpus) {
    CAPTURE(s.label());
    CHECK(numeric_extension_dimension(to_float(s)) == ext::ppt_extension_space(s).dimension);
  }
}

TEST_CASE("survey examples") {
  SurveyOptions o;
  o.samples = 0;
  CHECK(unextendibility_survey({{{3, 3}, 4, 4}}, o).empty());

  o.samples = 20;
  auto r = unextendibility_survey({{{3, 3}, 4, 4}, {{3, 3}, 5, 6}}, o);
  REQUIRE(r.size() == 2);
  CHECK(r[0].bound == -6);
  CHECK(r[0].expected == 3);
  CHECK(r[0].converged >= 18);
  CHECK(r[0].converged <= r[0].samples);
  for (const auto& out : r[0].outcomes)
    if (out.converged) CHECK(out.extension_dim == 3);
  CHECK(r[1].bound == 3);
  for (const auto& out : r[1].outcomes)
    if (out.extension_dim >= 0) CHECK(out.extension_dim >= 6);
  CHECK(r[0].residual_max < 1e-9);
  CHECK(to_json(r, o).size() > 0);
  CHECK(to_table(r, o).find("3x3") != std::string::npos);
}

}  // TEST_SUITE

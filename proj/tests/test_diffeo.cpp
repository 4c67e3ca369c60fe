#include <doctest.h>

#include "oracles.hpp"
#include "pushpull/diffeo.hpp"
#include "pushpull/quadrature.hpp"

using namespace pushpull;

namespace {

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

ChartDomain euclidean2(double lo = -2.0, double hi = 2.0) {
  return ChartDomain::euclidean_box(vec2(lo, lo), vec2(hi, hi));
}

Diffeomorphism linear_diffeo(const Matrix& a, ChartDomain source, ChartDomain target) {
  Diffeomorphism phi;
  phi.source = std::move(source);
  phi.target = std::move(target);
  const Matrix a_inv = a.inverse();
  phi.forward = [a](const Vector& x) { return Vector(a * x); };
  phi.inverse = [a_inv](const Vector& y) { return Vector(a_inv * y); };
  phi.jacobian = [a](const Vector&) { return a; };
  return phi;
}

// phi(x1, x2) = (x1 + a sin(x2), x2) with exact inverse, on [-2, 2]^2 -> padded box.
Diffeomorphism sine_shear(double amplitude) {
  Diffeomorphism phi;
  phi.source = euclidean2();
  phi.target = euclidean2(-3.0, 3.0);
  phi.forward = [amplitude](const Vector& x) {
    return vec2(x[0] + amplitude * std::sin(x[1]), x[1]);
  };
  phi.inverse = [amplitude](const Vector& y) {
    return vec2(y[0] - amplitude * std::sin(y[1]), y[1]);
  };
  return phi;  // no analytic Jacobian: exercises finite differences
}

Diffeomorphism sine_shear_analytic(double amplitude) {
  Diffeomorphism phi = sine_shear(amplitude);
  phi.jacobian = [amplitude](const Vector& x) {
    Matrix jac(2, 2);
    jac << 1, amplitude * std::cos(x[1]), 0, 1;
    return jac;
  };
  return phi;
}

}  // namespace

TEST_CASE("jacobian matrix") {
  std::mt19937_64 rng(47);
  Matrix a(2, 2);
  a << 2, 1, 0.5, 3;
  auto chart = euclidean2();
  auto big = euclidean2(-10, 10);
  const auto phi = linear_diffeo(a, chart, big);
  CHECK(jacobian_matrix(phi, vec2(0.3, -0.7)).isApprox(a));

  const auto id = linear_diffeo(Matrix::Identity(2, 2), chart, chart);
  CHECK(jacobian_matrix(id, vec2(1, 1)).isApprox(Matrix::Identity(2, 2)));

  SUBCASE("finite differences against the analytic Jacobian") {
    const auto fd = sine_shear(0.5);
    for (const Vector& x : halton_points(fd.source, 50)) {
      Matrix expected(2, 2);
      expected << 1, 0.5 * std::cos(x[1]), 0, 1;
      const Matrix jac = jacobian_matrix(fd, x);
      CHECK((jac - expected).cwiseAbs().maxCoeff() < 1e-8);
    }
  }
  SUBCASE("orientation violation") {
    Matrix reflect(2, 2);
    reflect << 1, 0, 0, -1;
    const auto bad = linear_diffeo(reflect, chart, chart);
    CHECK_THROWS_AS(jacobian_matrix(bad, vec2(0, 0)), OrientationError);
  }
}

TEST_CASE("frame matrix") {
  Matrix a(2, 2);
  a << 1.5, 0.25, -0.5, 2.0;
  const auto phi = linear_diffeo(a, euclidean2(), euclidean2(-10, 10));
  CHECK(frame_matrix(phi, vec2(0.1, 0.4)).isApprox(a, 1e-12));

  // Identity map with g_M = diag(4, 1), g_N = I gives Phi = diag(1/2, 1).
  ChartDomain source(vec2(0, 0), vec2(1, 1), {false, false}, [](const Vector&) {
    Matrix g(2, 2);
    g << 4, 0, 0, 1;
    return g;
  });
  ChartDomain target = ChartDomain::euclidean_box(vec2(0, 0), vec2(1, 1));
  auto id = linear_diffeo(Matrix::Identity(2, 2), source, target);
  const Matrix frame = frame_matrix(id, vec2(0.5, 0.5));
  CHECK(frame(0, 0) == doctest::Approx(0.5));
  CHECK(frame(1, 1) == doctest::Approx(1.0));
  CHECK(std::abs(frame(0, 1)) < 1e-14);

  // Equal metrics on both sides: the identity map is an isometry.
  ChartDomain both(vec2(0, 0), vec2(1, 1), {false, false}, [](const Vector& x) {
    Matrix g(2, 2);
    g << 2 + x[0], 0.2, 0.2, 1.5;
    return g;
  });
  auto iso = linear_diffeo(Matrix::Identity(2, 2), both, both);
  const auto spectrum = singular_spectrum(iso, vec2(0.25, 0.5));
  CHECK(spectrum.alphas[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(spectrum.alphas[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("singular spectrum") {
  Matrix d(2, 2);
  d << 2, 0, 0, 1;
  const auto phi = linear_diffeo(d, euclidean2(), euclidean2(-5, 5));
  const auto spectrum = singular_spectrum(phi, vec2(0.5, 0.5));
  CHECK(spectrum.alphas[0] == doctest::Approx(2.0));
  CHECK(spectrum.alphas[1] == doctest::Approx(1.0));

  Matrix rot(2, 2);
  const double theta = 0.83;
  rot << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  const auto iso = linear_diffeo(rot, euclidean2(), euclidean2(-4, 4));
  const auto rot_spectrum = singular_spectrum(iso, vec2(0.1, -0.2));
  CHECK(rot_spectrum.alphas[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rot_spectrum.alphas[1] == doctest::Approx(1.0).epsilon(1e-12));

  // Unit shear: the golden ratio pair, from the closed-form 2x2 SVD.
  Matrix shear(2, 2);
  shear << 1, 1, 0, 1;
  const auto sheared = linear_diffeo(shear, euclidean2(), euclidean2(-5, 5));
  const auto golden = singular_spectrum(sheared, vec2(0, 0));
  const double phi_ratio = (1.0 + std::sqrt(5.0)) / 2.0;
  CHECK(golden.alphas[0] == doctest::Approx(phi_ratio).epsilon(1e-12));
  CHECK(golden.alphas[1] == doctest::Approx(1.0 / phi_ratio).epsilon(1e-12));
  const Vector closed = oracles::svd2_oracle(shear);
  CHECK(golden.alphas[0] == doctest::Approx(closed[0]).epsilon(1e-12));
  CHECK(golden.alphas[1] == doctest::Approx(closed[1]).epsilon(1e-12));

  SUBCASE("degenerate cutoff") {
    Matrix tiny(2, 2);
    tiny << 1, 0, 0, 1e-13;
    const auto degenerate = linear_diffeo(tiny, euclidean2(), euclidean2());
    CHECK_THROWS_AS(singular_spectrum(degenerate, vec2(0, 0)), DegenerateMapError);
  }
}

TEST_CASE("jacobian determinant") {
  Matrix shear(2, 2);
  shear << 1, 1, 0, 1;
  const auto vol = linear_diffeo(shear, euclidean2(), euclidean2(-5, 5));
  CHECK(jacobian_determinant(vol, vec2(0.2, 0.3)) == doctest::Approx(1.0));

  Matrix d(2, 2);
  d << 2, 0, 0, 3;
  const auto stretch = linear_diffeo(d, euclidean2(), euclidean2(-8, 8));
  CHECK(jacobian_determinant(stretch, vec2(0, 0)) == doctest::Approx(6.0));

  // Nonlinear with curved metrics: product of singular values equals the
  // metric-weighted coordinate determinant.
  Diffeomorphism phi = sine_shear_analytic(0.4);
  phi.source = ChartDomain(vec2(-2, -2), vec2(2, 2), {false, false}, [](const Vector& x) {
    Matrix g(2, 2);
    g << 1.5 + 0.2 * std::sin(x[0]), 0.1, 0.1, 1.0 + 0.1 * x[1] * x[1];
    return g;
  });
  phi.target = ChartDomain(vec2(-3, -3), vec2(3, 3), {false, false}, [](const Vector& y) {
    Matrix g(2, 2);
    g << 2.0, -0.2, -0.2, 1.0 + 0.05 * y[0] * y[0];
    return g;
  });
  for (const Vector& x : halton_points(phi.source, 200)) {
    const auto spectrum = singular_spectrum(phi, x);
    const double via_product = spectrum.alphas.prod();
    const double via_det = jacobian_determinant(phi, x);
    const double via_metrics = volume_density(phi.target, phi.map_forward(x)) *
                               jacobian_matrix(phi, x).determinant() /
                               volume_density(phi.source, x);
    CHECK(via_product == doctest::Approx(via_det).epsilon(1e-9));
    CHECK(via_det == doctest::Approx(via_metrics).epsilon(1e-9));
  }

  SUBCASE("inverse identity at 1000 points") {
    const Diffeomorphism psi = sine_shear_analytic(0.6);
    const Diffeomorphism psi_inv = psi.inverted();
    for (const Vector& x : halton_points(psi.source, 1000)) {
      const Vector y = psi.map_forward(x);
      const double forward = jacobian_determinant(psi, x);
      const double backward = jacobian_determinant(psi_inv, y);
      CHECK(forward * backward == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("inverse spectrum") {
  Matrix d(2, 2);
  d << 2, 0, 0, 1;
  const auto phi = linear_diffeo(d, euclidean2(), euclidean2(-5, 5));
  const auto beta = inverse_spectrum(phi, vec2(0.4, 0.2));
  CHECK(beta.alphas[0] == doctest::Approx(1.0));
  CHECK(beta.alphas[1] == doctest::Approx(0.5));

  // beta_i = alpha_{n-i+1}^{-1} o phi^{-1} on a nonlinear map.
  const Diffeomorphism psi = sine_shear_analytic(0.5);
  for (const Vector& x : halton_points(psi.source, 1000)) {
    const Vector y = psi.map_forward(x);
    const auto alphas = singular_spectrum(psi, x).alphas;
    const auto betas = inverse_spectrum(psi, y).alphas;
    const int n = 2;
    for (int i = 1; i <= n; ++i) {
      CHECK(betas[i - 1] ==
            doctest::Approx(1.0 / alphas[n - i]).epsilon(1e-9));
    }
  }
}

TEST_CASE("frame choice does not move the spectrum") {
  std::mt19937_64 rng(53);
  const Diffeomorphism phi = sine_shear_analytic(0.45);
  for (const Vector& x : halton_points(phi.source, 20)) {
    const Vector y = phi.map_forward(x);
    const Matrix e_src = orthonormal_frame(phi.source, x);
    const Matrix e_tgt = orthonormal_frame(phi.target, y);
    const Matrix jac = jacobian_matrix(phi, x);
    const Vector reference = singular_values(
        e_tgt.partialPivLu().solve(jac * e_src));
    // Any positively-oriented orthonormal frames differ by rotations.
    const Matrix q_src = oracles::random_special_orthogonal(2, rng);
    const Matrix q_tgt = oracles::random_special_orthogonal(2, rng);
    const Vector rotated = singular_values(
        (e_tgt * q_tgt).partialPivLu().solve(jac * (e_src * q_src)));
    CHECK((reference - rotated).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("finite differences track the analytic Jacobian") {
  const Diffeomorphism analytic = sine_shear_analytic(0.7);
  Diffeomorphism fd = analytic;
  fd.jacobian = nullptr;
  fd.fd_step = 1e-5;
  for (const Vector& x : halton_points(analytic.source, 100)) {
    const Matrix a = jacobian_matrix(analytic, x);
    const Matrix b = jacobian_matrix(fd, x);
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-6);
  }
}

TEST_CASE("minimax oracle") {
  Matrix d(2, 2);
  d << 2, 0, 0, 1;
  const auto phi = linear_diffeo(d, euclidean2(), euclidean2(-5, 5));
  CHECK(minimax_singular_oracle(phi, vec2(0.5, 0.5), 1) == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(minimax_singular_oracle(phi, vec2(0.5, 0.5), 2) == doctest::Approx(1.0).epsilon(1e-6));

  Matrix shear(2, 2);
  shear << 1, 1, 0, 1;
  const auto sheared = linear_diffeo(shear, euclidean2(), euclidean2(-5, 5));
  const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  CHECK(minimax_singular_oracle(sheared, vec2(0, 0), 1) ==
        doctest::Approx(golden).epsilon(1e-4));
  CHECK(minimax_singular_oracle(sheared, vec2(0, 0), 2) ==
        doctest::Approx(1.0 / golden).epsilon(1e-4));

  Matrix rot(2, 2);
  rot << 0, -1, 1, 0;
  const auto iso = linear_diffeo(rot, euclidean2(), euclidean2());
  for (int i : {1, 2}) {
    const auto interval = minimax_singular_interval(iso, vec2(0.3, 0.3), i);
    CHECK(interval.lower == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(interval.upper == doctest::Approx(1.0).epsilon(1e-8));
  }

  SUBCASE("n = 3 sampled subspaces bracket the spectrum") {
    Matrix a(3, 3);
    a << 1.8, 0.3, 0.0, 0.0, 1.0, -0.4, 0.2, 0.0, 0.7;
    Vector lo = -2 * Vector::Ones(3), hi = 2 * Vector::Ones(3);
    auto small_box = ChartDomain::euclidean_box(lo, hi);
    auto big_box = ChartDomain::euclidean_box(5 * lo, 5 * hi);
    const auto psi = linear_diffeo(a, small_box, big_box);
    Vector x = Vector::Zero(3);
    const auto alphas = singular_spectrum(psi, x).alphas;
    for (int i = 1; i <= 3; ++i) {
      const auto interval = minimax_singular_interval(psi, x, i, 4000);
      CHECK(interval.lower <= alphas[i - 1] + 1e-10);
      CHECK(interval.upper >= alphas[i - 1] - 1e-10);
      CHECK(interval.upper - interval.lower < 0.05 * alphas[0]);
    }
  }

  SUBCASE("unsupported dimension") {
    Vector lo = -Vector::Ones(4), hi = Vector::Ones(4);
    auto box = ChartDomain::euclidean_box(lo, hi);
    const auto psi = linear_diffeo(Matrix::Identity(4, 4), box, box);
    CHECK_THROWS_AS(minimax_singular_oracle(psi, Vector::Zero(4), 1),
                    NotImplementedError);
  }
}

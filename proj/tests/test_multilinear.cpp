#include <doctest.h>

#include "oracles.hpp"
#include "pushpull/alternating.hpp"
#include "pushpull/compound.hpp"

using namespace pushpull;

namespace {

AlternatingTensor random_tensor(int n, int k, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector coeffs(binomial(n, k));
  for (int i = 0; i < coeffs.size(); ++i) coeffs[i] = gauss(rng);
  return AlternatingTensor(n, k, coeffs);
}

}  // namespace

TEST_CASE("lexicographic multi-index tables") {
  const auto table = lex_multi_indices(3, 2);
  REQUIRE(table.rank() == 3);
  CHECK(table[0] == std::vector<int>{1, 2});
  CHECK(table[1] == std::vector<int>{1, 3});
  CHECK(table[2] == std::vector<int>{2, 3});

  const auto empty = lex_multi_indices(5, 0);
  CHECK(empty.rank() == 1);
  CHECK(empty[0].empty());

  const auto four = lex_multi_indices(4, 2);
  CHECK(four.rank() == 6);
  CHECK(four[5] == std::vector<int>{3, 4});

  for (int n = 1; n <= 8; ++n) {
    for (int k = 0; k <= n; ++k) {
      const auto t = lex_multi_indices(n, k);
      CHECK(t.rank() == binomial(n, k));
      for (int i = 0; i < t.rank(); ++i) {
        for (int j = 0; j + 1 < k; ++j) CHECK(t[i][j] < t[i][j + 1]);
        if (i > 0) CHECK(t[i - 1] < t[i]);
        CHECK(t.position(t[i]) == i);
      }
    }
  }

  CHECK_THROWS_AS(lex_multi_indices(3, -1), DegreeRangeError);
  CHECK_THROWS_AS(lex_multi_indices(3, 4), DegreeRangeError);
}

TEST_CASE("alternating evaluation") {
  const auto e12 = AlternatingTensor::cobasis(2, {1, 2});
  Matrix forward(2, 2), swapped(2, 2);
  forward << 1, 0, 0, 1;
  swapped << 0, 1, 1, 0;
  CHECK(apply_to_vectors(e12, forward) == doctest::Approx(1.0));
  CHECK(apply_to_vectors(e12, swapped) == doctest::Approx(-1.0));

  std::mt19937_64 rng(7);
  const auto tensor = random_tensor(3, 2, rng);
  Matrix repeated(3, 2);
  repeated.col(0) << 0.3, -1.2, 0.5;
  repeated.col(1) = repeated.col(0);
  CHECK(apply_to_vectors(tensor, repeated) == doctest::Approx(0.0).epsilon(1e-14));

  CHECK_THROWS_AS(apply_to_vectors(e12, Matrix::Identity(3, 3)), ShapeError);
}

TEST_CASE("wedge product") {
  const auto e1 = AlternatingTensor::cobasis(3, {1});
  const auto e2 = AlternatingTensor::cobasis(3, {2});
  const auto e12 = wedge(e1, e2);
  CHECK(e12.coeffs.isApprox(AlternatingTensor::cobasis(3, {1, 2}).coeffs));

  CHECK(wedge(e1, e1).coeffs.norm() == doctest::Approx(0.0));

  const auto mixed = wedge(e1 + e2, e2);
  CHECK(mixed.coeffs.isApprox(AlternatingTensor::cobasis(3, {1, 2}).coeffs, 1e-14));

  std::mt19937_64 rng(11);
  SUBCASE("graded anticommutativity and bilinearity") {
    for (auto [n, j, k] : {std::tuple{4, 1, 2}, {5, 2, 2}, {5, 1, 3}, {6, 2, 3}}) {
      const auto a = random_tensor(n, j, rng);
      const auto b = random_tensor(n, k, rng);
      const auto ab = wedge(a, b);
      const auto ba = wedge(b, a);
      const double sign = (j * k) % 2 == 0 ? 1.0 : -1.0;
      CHECK((ab.coeffs - sign * ba.coeffs).cwiseAbs().maxCoeff() < 1e-12);

      const auto c = random_tensor(n, j, rng);
      const auto lhs = wedge(a + c, b);
      CHECK((lhs.coeffs - wedge(a, b).coeffs - wedge(c, b).coeffs).cwiseAbs().maxCoeff() <
            1e-12);
    }
  }
  SUBCASE("associativity") {
    const auto a = random_tensor(6, 1, rng);
    const auto b = random_tensor(6, 2, rng);
    const auto c = random_tensor(6, 2, rng);
    const auto left = wedge(wedge(a, b), c);
    const auto right = wedge(a, wedge(b, c));
    CHECK((left.coeffs - right.coeffs).cwiseAbs().maxCoeff() < 1e-10);
  }

  CHECK_THROWS_AS(wedge(random_tensor(3, 2, rng), random_tensor(3, 2, rng)),
                  DegreeRangeError);
}

TEST_CASE("hodge star") {
  // star(mu) = 1 for the volume covector in every dimension.
  for (int n = 1; n <= 6; ++n) {
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i + 1;
    const auto mu = AlternatingTensor::cobasis(n, all);
    const auto one = hodge_star(mu);
    CHECK(one.k == 0);
    CHECK(one.coeffs[0] == doctest::Approx(1.0));
  }

  const auto e1 = AlternatingTensor::cobasis(3, {1});
  const auto star = hodge_star(e1);
  CHECK(star.coeffs.isApprox(AlternatingTensor::cobasis(3, {2, 3}).coeffs));

  std::mt19937_64 rng(13);
  for (auto [n, k] : {std::tuple{3, 1}, {4, 2}, {5, 2}, {6, 3}}) {
    const auto a = random_tensor(n, k, rng);
    const auto dual = hodge_star(a);
    CHECK(dual.euclidean_norm() == doctest::Approx(a.euclidean_norm()));
    const auto twice = hodge_star(dual);
    const double sign = (k * (n - k)) % 2 == 0 ? 1.0 : -1.0;
    CHECK((twice.coeffs - sign * a.coeffs).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("compound matrices") {
  Matrix diag = Matrix::Zero(3, 3);
  diag(0, 0) = 3;
  diag(1, 1) = 2;
  diag(2, 2) = 1;
  const Matrix c2 = compound(diag, 2);
  CHECK(c2(0, 0) == doctest::Approx(6.0));
  CHECK(c2(1, 1) == doctest::Approx(3.0));
  CHECK(c2(2, 2) == doctest::Approx(2.0));
  CHECK(c2.cwiseAbs().sum() == doctest::Approx(11.0));

  for (int k = 0; k <= 4; ++k) {
    const Matrix ck = compound(Matrix::Identity(4, 4), k);
    CHECK(ck.isApprox(Matrix::Identity(ck.rows(), ck.cols())));
  }

  std::mt19937_64 rng(17);
  SUBCASE("multiplicativity against direct minor computation") {
    const Matrix phi = oracles::random_matrix(4, rng);
    const Matrix psi = oracles::random_matrix(4, rng);
    const Matrix lhs = compound(phi * psi, 2);
    const Matrix rhs = compound(phi, 2) * compound(psi, 2);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10);

    // Entries really are the k x k minors (Laplace-expansion oracle).
    const auto table = lex_multi_indices(4, 2);
    const Matrix c = compound(phi, 2);
    for (int i = 0; i < table.rank(); ++i) {
      for (int j = 0; j < table.rank(); ++j) {
        Matrix sub(2, 2);
        for (int r = 0; r < 2; ++r)
          for (int s = 0; s < 2; ++s) sub(r, s) = phi(table[i][r] - 1, table[j][s] - 1);
        CHECK(c(i, j) == doctest::Approx(oracles::laplace_det(sub)).epsilon(1e-12));
      }
    }
  }
  SUBCASE("degree edge cases") {
    const Matrix phi = oracles::random_matrix(5, rng);
    CHECK(compound(phi, 1).isApprox(phi));
    const Matrix top = compound(phi, 5);
    CHECK(top.rows() == 1);
    CHECK(top(0, 0) == doctest::Approx(oracles::laplace_det(phi)).epsilon(1e-10));
    const Matrix bottom = compound(phi, 0);
    CHECK(bottom.rows() == 1);
    CHECK(bottom(0, 0) == doctest::Approx(1.0));
  }

  CHECK_THROWS_AS(compound(Matrix::Zero(2, 3), 1), ShapeError);
}

TEST_CASE("singular values") {
  Matrix diag(2, 2);
  diag << 3, 0, 0, -2;
  const Vector sv = singular_values(diag);
  CHECK(sv[0] == doctest::Approx(3.0));
  CHECK(sv[1] == doctest::Approx(2.0));

  std::mt19937_64 rng(19);
  for (int n : {2, 3, 5}) {
    const Matrix q = oracles::random_orthogonal(n, rng);
    const Vector rot = singular_values(q);
    for (int i = 0; i < n; ++i) CHECK(rot[i] == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("3x3 characteristic polynomial oracle") {
    for (int trial = 0; trial < 50; ++trial) {
      const Matrix m = oracles::random_matrix(3, rng);
      const Vector sv3 = singular_values(m);
      const Vector ref = oracles::svd3_oracle(m);
      for (int i = 0; i < 3; ++i) {
        CHECK(sv3[i] == doctest::Approx(ref[i]).epsilon(1e-8));
      }
    }
  }
  SUBCASE("orthogonal invariance") {
    const Matrix m = oracles::random_matrix(4, rng);
    const Matrix u = oracles::random_orthogonal(4, rng);
    const Matrix v = oracles::random_orthogonal(4, rng);
    const Vector a = singular_values(m);
    const Vector b = singular_values(u * m * v);
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-10);
  }
  SUBCASE("stable at compound rank 70") {
    const Matrix phi = oracles::random_invertible(8, rng);
    const Matrix c4 = compound(phi, 4);
    REQUIRE(c4.rows() == 70);
    const Vector alphas = singular_values(phi);
    double top = alphas[0] * alphas[1] * alphas[2] * alphas[3];
    CHECK(singular_values(c4)[0] == doctest::Approx(top).epsilon(1e-8));
  }

  Matrix bad(2, 2);
  bad << 1, std::numeric_limits<double>::quiet_NaN(), 0, 1;
  CHECK_THROWS_AS(singular_values(bad), NumericError);
}

TEST_CASE("comass norm closed forms and witness") {
  const AlternatingTensor scalar(3, 0, Vector::Constant(1, -2.5));
  CHECK(comass_norm(scalar) == doctest::Approx(2.5));

  Vector c(1);
  c << 5.0;
  const AlternatingTensor top(3, 3, c);
  CHECK(comass_norm(top) == doctest::Approx(5.0));

  // The classic non-decomposable witness: |e^12 + e^34| = 1, not sqrt(2).
  Vector w = Vector::Zero(6);
  const auto table = lex_multi_indices(4, 2);
  w[table.position({1, 2})] = 1.0;
  w[table.position({3, 4})] = 1.0;
  const AlternatingTensor witness(4, 2, w);
  CHECK(comass_norm(witness) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(witness.euclidean_norm() == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("comass norm properties") {
  std::mt19937_64 rng(23);
  SUBCASE("bounds and axioms") {
    for (auto [n, k] : {std::tuple{4, 2}, {5, 2}, {5, 3}, {6, 3}}) {
      for (int trial = 0; trial < 6; ++trial) {
        const auto a = random_tensor(n, k, rng);
        const double comass = comass_norm(a);
        CHECK(comass <= a.euclidean_norm() + 1e-10);
        CHECK(comass >= a.coeffs.cwiseAbs().maxCoeff() - 1e-10);
        CHECK(comass_norm(-3.0 * a) == doctest::Approx(3.0 * comass).epsilon(1e-8));

        const auto b = random_tensor(n, k, rng);
        CHECK(comass_norm(a + b) <= comass + comass_norm(b) + 1e-8);
      }
    }
  }
  SUBCASE("matches Euclidean norm at decomposable degrees") {
    for (auto [n, k] : {std::tuple{4, 1}, {4, 3}, {4, 4}, {5, 4}}) {
      const auto a = random_tensor(n, k, rng);
      CHECK(comass_norm(a) == doctest::Approx(a.euclidean_norm()).epsilon(1e-12));
    }
  }
  SUBCASE("brute-force agreement at n = 4, k = 2") {
    const auto table = lex_multi_indices(4, 2);
    for (int trial = 0; trial < 5; ++trial) {
      const auto a = random_tensor(4, 2, rng);
      const double fast = comass_norm(a);
      const double brute = oracles::bruteforce_comass(4, 2, a.coeffs, table.tuples(),
                                                      20000, 1000 + trial);
      CHECK(fast == doctest::Approx(brute).epsilon(1e-4));
    }
  }
}

TEST_CASE("compound spectral law") {
  std::mt19937_64 rng(29);
  for (int n = 2; n <= 6; ++n) {
    for (int k = 1; k <= n; ++k) {
      for (int trial = 0; trial < 5; ++trial) {
        const Matrix phi = oracles::random_invertible(n, rng);
        const Vector alphas = singular_values(phi);
        const Vector compound_sv = singular_values(compound(phi, k));
        double top = 1.0;
        for (int i = 0; i < k; ++i) top *= alphas[i];
        CHECK(compound_sv[0] == doctest::Approx(top).epsilon(1e-8));

        // Full spectrum = all k-fold products of distinct singular values.
        const auto table = lex_multi_indices(n, k);
        std::vector<double> products;
        for (int t = 0; t < table.rank(); ++t) {
          double prod = 1.0;
          for (int i : table[t]) prod *= alphas[i - 1];
          products.push_back(prod);
        }
        std::sort(products.begin(), products.end(), std::greater<double>());
        for (int i = 0; i < compound_sv.size(); ++i) {
          CHECK(compound_sv[i] ==
                doctest::Approx(products[i]).epsilon(1e-7).scale(products[0]));
        }
      }
    }
  }
}

TEST_CASE("pointwise spectral bound for transported tensors") {
  std::mt19937_64 rng(31);
  for (auto [n, k] : {std::tuple{3, 2}, {4, 2}, {5, 2}, {5, 3}}) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto a = random_tensor(n, k, rng);
      const Matrix phi = oracles::random_invertible(n, rng);
      const Vector alphas = singular_values(phi);
      double top = 1.0;
      for (int i = 0; i < k; ++i) top *= alphas[i];
      const AlternatingTensor pulled(n, k,
                                     Vector(compound(phi, k).transpose() * a.coeffs));
      CHECK(comass_norm(pulled) <= top * comass_norm(a) + 1e-8);
    }
  }
}

TEST_CASE("wedge/compound compatibility") {
  std::mt19937_64 rng(37);
  const int n = 4, k = 3;
  const Matrix phi = oracles::random_matrix(n, rng);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix vectors(n, k);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < n; ++i) vectors(i, j) = gauss(rng);

  // Pluecker coordinates of x1 ^ ... ^ xk are the k x k row minors.
  const auto table = lex_multi_indices(n, k);
  auto pluecker = [&](const Matrix& cols) {
    Vector p(table.rank());
    for (int t = 0; t < table.rank(); ++t) {
      Matrix sub(k, k);
      for (int i = 0; i < k; ++i) sub.row(i) = cols.row(table[t][i] - 1);
      p[t] = oracles::laplace_det(sub);
    }
    return p;
  };
  const Vector lhs = compound(phi, k) * pluecker(vectors);
  const Vector rhs = pluecker(phi * vectors);
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10);
}

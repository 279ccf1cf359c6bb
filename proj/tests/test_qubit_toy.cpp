#include <doctest.h>

#include <cmath>
#include <random>

#include <unsupported/Eigen/KroneckerProduct>

#include "oracles/jacobi.hpp"
#include "triphoton/errors.hpp"
#include "triphoton/qubit_toy.hpp"

using namespace triphoton;
using namespace triphoton::qubit;

namespace {

const std::size_t kKeep01[] = {0, 1};
const std::size_t kFirst[] = {0};
const std::size_t kSecond[] = {1};

Matrix ket_bra(std::initializer_list<std::pair<int, Complex>> ket, int dim) {
  Vector v = Vector::Zero(dim);
  for (auto [i, a] : ket) v(i) = a;
  return v * v.adjoint();
}

Matrix classical_pair() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = m(3, 3) = 0.5;
  return m;
}

Matrix w_pair_target() {
  const double r = 1.0 / std::sqrt(2.0);
  return 2.0 / 3.0 * ket_bra({{1, r}, {2, r}}, 4) + 1.0 / 3.0 * ket_bra({{0, 1.0}}, 4);
}

oracle::CMatrix to_oracle(const Matrix& m) {
  oracle::CMatrix out(static_cast<std::size_t>(m.rows()), std::vector<Complex>(static_cast<std::size_t>(m.cols())));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) out[r][c] = m(r, c);
  return out;
}

Matrix random_unitary(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> g;
  Matrix z(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) z(r, c) = Complex(g(rng), g(rng));
  Eigen::HouseholderQR<Matrix> qr(z);
  return qr.householderQ();
}

Vector random_ket(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> g;
  Vector v(d);
  for (int i = 0; i < d; ++i) v(i) = Complex(g(rng), g(rng));
  return v.normalized();
}

DensityMatrix random_pure(std::mt19937_64& rng, int d) {
  return DensityMatrix::from_pure(PureState(random_ket(rng, d), {static_cast<std::size_t>(d)}));
}

DensityMatrix random_mixed(std::mt19937_64& rng, int d) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<DensityMatrix> parts;
  std::vector<double> w;
  for (int i = 0; i < 3; ++i) {
    parts.push_back(random_pure(rng, d));
    w.push_back(u(rng) + 0.05);
  }
  double total = 0.0;
  for (double x : w) total += x;
  for (double& x : w) x /= total;
  return mixture(w, parts);
}

void require_valid(const DensityMatrix& rho) {
  const Matrix& m = rho.matrix();
  CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(std::abs(m.trace() - Complex(1.0)) <= 1e-12);
  CHECK(rho.eigenvalues().minCoeff() >= -1e-10);
}

}  // namespace

TEST_CASE("GHZ and W fixtures") {
  const PureState ghz = make_ghz();
  const PureState w = make_w();
  REQUIRE(ghz.dims() == Dims{2, 2, 2});
  for (int i = 0; i < 8; ++i) {
    const double expect_ghz = (i == 0 || i == 7) ? 1.0 / std::sqrt(2.0) : 0.0;
    const double expect_w = (i == 1 || i == 2 || i == 4) ? 1.0 / std::sqrt(3.0) : 0.0;
    CHECK(std::abs(ghz.amplitudes()(i) - Complex(expect_ghz)) < 1e-15);
    CHECK(std::abs(w.amplitudes()(i) - Complex(expect_w)) < 1e-15);
  }
  CHECK(std::abs(ghz.amplitudes().norm() - 1.0) < 1e-15);
  CHECK(std::abs(w.amplitudes().norm() - 1.0) < 1e-15);
  CHECK(std::abs(ghz.amplitudes().dot(w.amplitudes())) < 1e-15);
}

TEST_CASE("W single-qubit reductions agree") {
  const auto rho = DensityMatrix::from_pure(make_w());
  const std::size_t k0[] = {0}, k1[] = {1}, k2[] = {2};
  const Matrix a = partial_trace(rho, k0).matrix();
  CHECK((a - partial_trace(rho, k1).matrix()).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((a - partial_trace(rho, k2).matrix()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("traced pairs match the closed forms") {
  const auto ghz = partial_trace(DensityMatrix::from_pure(make_ghz()), kKeep01);
  const auto w = partial_trace(DensityMatrix::from_pure(make_w()), kKeep01);
  CHECK((ghz.matrix() - classical_pair()).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((w.matrix() - w_pair_target()).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(ghz.dims() == Dims{2, 2});
}

TEST_CASE("partial trace keeps the requested order") {
  std::mt19937_64 rng(11);
  const auto a = random_mixed(rng, 2);
  const auto b = random_mixed(rng, 3);
  const auto ab = tensor_product(a, b);
  const std::size_t keep_b[] = {1};
  CHECK((partial_trace(ab, kFirst).matrix() - a.matrix()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((partial_trace(ab, keep_b).matrix() - b.matrix()).cwiseAbs().maxCoeff() < 1e-12);

  const auto c = random_mixed(rng, 2);
  const auto abc = tensor_product(ab, c);
  const std::size_t reversed[] = {2, 0};
  const auto ca = partial_trace(abc, reversed);
  CHECK(ca.dims() == Dims{2, 2});
  CHECK((ca.matrix() - tensor_product(c, a).matrix()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("partial trace rejects empty and full keep sets") {
  const auto rho = DensityMatrix::from_pure(make_ghz());
  const std::size_t all[] = {0, 1, 2};
  const std::size_t bad[] = {3};
  const std::size_t dup[] = {1, 1};
  CHECK_THROWS_AS(partial_trace(rho, std::span<const std::size_t>{}), InvalidArgument);
  CHECK_THROWS_AS(partial_trace(rho, all), InvalidArgument);
  CHECK_THROWS_AS(partial_trace(rho, bad), InvalidArgument);
  CHECK_THROWS_AS(partial_trace(rho, dup), InvalidArgument);
}

TEST_CASE("partial trace is linear over mixtures") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto r = random_mixed(rng, 8);
    const auto s = random_mixed(rng, 8);
    const DensityMatrix r3(r.matrix(), {2, 2, 2});
    const DensityMatrix s3(s.matrix(), {2, 2, 2});
    const double a = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const double weights[] = {a, 1.0 - a};
    const DensityMatrix parts[] = {r3, s3};
    const Matrix lhs = partial_trace(mixture(weights, parts), kKeep01).matrix();
    const Matrix rhs = a * partial_trace(r3, kKeep01).matrix() + (1.0 - a) * partial_trace(s3, kKeep01).matrix();
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("negativity fixtures against the Jacobi oracle") {
  const double r = 1.0 / std::sqrt(2.0);
  const DensityMatrix psi_plus(ket_bra({{1, r}, {2, r}}, 4), {2, 2});
  CHECK(negativity(psi_plus, kFirst) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(oracle::negativity(to_oracle(psi_plus.matrix()), 2, 2) == doctest::Approx(0.5).epsilon(1e-12));

  const DensityMatrix classical(classical_pair(), {2, 2});
  CHECK(negativity(classical, kFirst) <= 1e-10);

  // (sqrt(5) - 1) / 6 from the 2x2 block of the transposed matrix.
  const double w_expected = 0.20601132958329828;
  const DensityMatrix wpair(w_pair_target(), {2, 2});
  CHECK(negativity(wpair, kFirst) == doctest::Approx(w_expected).epsilon(1e-12));
  CHECK(oracle::negativity(to_oracle(wpair.matrix()), 2, 2) == doctest::Approx(w_expected).epsilon(1e-12));
  CHECK(negativity(wpair, kSecond) == doctest::Approx(w_expected).epsilon(1e-12));
}

TEST_CASE("negativity matches the oracle on random states") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const auto m = random_mixed(rng, 6);
    const DensityMatrix rho(m.matrix(), {2, 3});
    CHECK(negativity(rho, kFirst) == doctest::Approx(oracle::negativity(to_oracle(rho.matrix()), 2, 3)).epsilon(1e-9));
  }
}

TEST_CASE("one lost qubit: W keeps entanglement, GHZ does not") {
  const auto ghz = DensityMatrix::from_pure(make_ghz());
  const auto w = DensityMatrix::from_pure(make_w());
  const std::size_t pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (const auto& p : pairs) {
    const auto g = partial_trace(ghz, p);
    const auto v = partial_trace(w, p);
    CHECK(negativity(g, kFirst) <= 1e-10);
    CHECK(negativity(v, kFirst) > 0.0);
  }
}

TEST_CASE("separable mixtures have zero negativity") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int da = 2 + trial % 2;
    const int db = 2 + (trial / 2) % 2;
    std::vector<DensityMatrix> parts;
    std::vector<double> weights;
    const int terms = 1 + trial % 4;
    for (int t = 0; t < terms; ++t) {
      const auto a = random_mixed(rng, da);
      const auto b = random_mixed(rng, db);
      parts.push_back(tensor_product(a, b));
      weights.push_back(u(rng));
    }
    double total = 0.0;
    for (double w : weights) total += w;
    for (double& w : weights) w /= total;
    const auto rho = mixture(weights, parts);
    require_valid(rho);
    CHECK(negativity(rho, kFirst) <= 1e-10);
  }
}

TEST_CASE("negativity is invariant under local unitaries") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const auto base = random_mixed(rng, 6);
    const DensityMatrix rho(base.matrix(), {2, 3});
    const Matrix u = Eigen::kroneckerProduct(random_unitary(rng, 2), random_unitary(rng, 3)).eval();
    const DensityMatrix rotated(u * rho.matrix() * u.adjoint(), {2, 3});
    CHECK(std::abs(negativity(rho, kFirst) - negativity(rotated, kFirst)) <= 1e-10);
  }
}

TEST_CASE("density matrices from random inputs keep their invariants") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 20; ++trial) {
    const auto rho = random_mixed(rng, 8);
    const DensityMatrix r3(rho.matrix(), {2, 2, 2});
    require_valid(r3);
    require_valid(partial_trace(r3, kKeep01));
    require_valid(tensor_product(r3, random_mixed(rng, 2)));
  }
}

TEST_CASE("invalid density matrices are rejected") {
  Matrix m = classical_pair();
  m(0, 1) = 0.1;
  CHECK_THROWS_AS(DensityMatrix(m, {2, 2}), InvalidArgument);
  CHECK_THROWS_AS(DensityMatrix(2.0 * classical_pair(), {2, 2}), InvalidArgument);
  Matrix neg = Matrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityMatrix(neg, {2}), InvalidArgument);
  CHECK_THROWS_AS(DensityMatrix(classical_pair(), {2, 3}), InvalidArgument);
  Vector v = Vector::Ones(4);
  CHECK_THROWS_AS(PureState(v, {2, 2}), InvalidArgument);
}

TEST_CASE("fidelity") {
  const auto ghz = DensityMatrix::from_pure(make_ghz());
  const auto w = DensityMatrix::from_pure(make_w());
  CHECK(fidelity(ghz, ghz) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(fidelity(ghz, w) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(fidelity(partial_trace(ghz, kKeep01), DensityMatrix(classical_pair(), {2, 2})) ==
        doctest::Approx(1.0).epsilon(1e-10));

  std::mt19937_64 rng(5);
  const Vector a = random_ket(rng, 4);
  const Vector b = random_ket(rng, 4);
  const double overlap = std::norm(a.dot(b));
  CHECK(fidelity(DensityMatrix::from_pure(PureState(a, {4})), DensityMatrix::from_pure(PureState(b, {4}))) ==
        doctest::Approx(overlap).epsilon(1e-8));
  const auto m = random_mixed(rng, 4);
  CHECK(fidelity(m, m) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK_THROWS_AS(fidelity(ghz, DensityMatrix(classical_pair(), {2, 2})), InvalidArgument);
}

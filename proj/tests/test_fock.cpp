#include <doctest.h>

#include "qbt/fock.hpp"
#include "support.hpp"

using namespace qbt;
using test::max_abs_diff;

namespace {

// independent dense embedding: I_(high) x M x I_(low), mode 0 fastest
Eigen::MatrixXcd kron_embed(const FockBasis& b, int mode, const Eigen::MatrixXcd& m) {
  const auto eye = [](std::int64_t n) { return Eigen::MatrixXcd::Identity(n, n); };
  const auto kron = [](const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& c) {
    Eigen::MatrixXcd out(a.rows() * c.rows(), a.cols() * c.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      for (Eigen::Index j = 0; j < a.cols(); ++j)
        out.block(i * c.rows(), j * c.cols(), c.rows(), c.cols()) = a(i, j) * c;
    return out;
  };
  const std::int64_t low = b.stride(mode);
  const std::int64_t high = b.dim() / (low * (b.cutoff() + 1));
  return kron(eye(high), kron(m, eye(low)));
}

}  // namespace

TEST_SUITE("fock") {

TEST_CASE("basis dimensions and tuple enumeration") {
  CHECK(make_basis(1, 2).dim() == 3);
  CHECK(make_basis(3, 4).dim() == 125);

  const FockBasis b = make_basis(2, 1);
  REQUIRE(b.dim() == 4);
  std::vector<std::vector<int>> tuples;
  for (std::int64_t i = 0; i < b.dim(); ++i) tuples.push_back(b.occupation_of(i));
  CHECK(tuples[0] == std::vector<int>{0, 0});
  CHECK(tuples[1] == std::vector<int>{1, 0});
  CHECK(tuples[2] == std::vector<int>{0, 1});
  CHECK(tuples[3] == std::vector<int>{1, 1});
}

TEST_CASE("index mapping is a bijection") {
  const FockBasis b = make_basis(3, 4);
  for (std::int64_t i = 0; i < b.dim(); ++i) {
    const auto occ = b.occupation_of(i);
    CHECK(b.index_of(occ) == i);
    for (int mode = 0; mode < 3; ++mode)
      CHECK(b.occupation(i, mode) == occ[static_cast<std::size_t>(mode)]);
  }
}

TEST_CASE("oversized basis raises a capacity error") {
  CHECK_THROWS_AS(make_basis(9, 200), capacity_error);
  CHECK_THROWS_AS(make_basis(30, 30), capacity_error);
}

TEST_CASE("dense realization is capacity guarded") {
  const FockBasis big = make_basis(3, 20);  // dim 9261
  CHECK_THROWS_AS(annihilation_power(big, 0, 1.0).realized(), capacity_error);
}

TEST_CASE("ladder matrix elements") {
  const FockBasis b1 = make_basis(1, 2);
  const auto a = annihilation_power(b1, 0, 1.0, 1);
  CHECK(a.mode_matrix()(1, 2).real() == doctest::Approx(std::sqrt(2.0)));
  CHECK(a.mode_matrix()(0, 1).real() == doctest::Approx(1.0));

  const FockBasis b2 = make_basis(1, 3);
  const auto a2 = annihilation_power(b2, 0, 1.0, 2);
  CHECK(a2.mode_matrix()(0, 2).real() == doctest::Approx(std::sqrt(2.0)));
  CHECK(a2.mode_matrix()(1, 3).real() == doctest::Approx(std::sqrt(6.0)));
}

TEST_CASE("linear mix equals a + beta adag") {
  const FockBasis b = make_basis(1, 5);
  const complexd beta = 0.4 * test::random_phase();
  const auto mix = linear_mix(b, 0, 1.0, beta);
  const Eigen::MatrixXcd expect =
      annihilation_power(b, 0, 1.0).mode_matrix() + beta * creation_power(b, 0, 1.0).mode_matrix();
  CHECK(max_abs_diff(mix.mode_matrix(), expect) < 1e-15);
}

TEST_CASE("band beyond the cutoff is empty, negative couplings accepted") {
  const FockBasis b = make_basis(1, 2);
  const auto high = creation_power(b, 0, 1.0, 5);
  CHECK(high.mode_matrix().cwiseAbs().maxCoeff() == 0.0);
  const auto neg = annihilation_power(b, 0, -0.7);
  CHECK(neg.mode_matrix()(0, 1).real() == doctest::Approx(-0.7));
}

TEST_CASE("realized embedding acts as identity on other modes") {
  const FockBasis b = make_basis(3, 2);
  for (int mode = 0; mode < 3; ++mode) {
    const auto op = test::random_coupling(b, mode);
    CHECK(max_abs_diff(op.realized(), kron_embed(b, mode, op.mode_matrix())) < 1e-14);
  }
}

TEST_CASE("apply matches the realized matrix") {
  const FockBasis b = make_basis(2, 3);
  const auto op = test::random_coupling(b, 1);
  Eigen::VectorXcd v(b.dim());
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = test::random_phase() * test::uniform(0.0, 1.0);
  CHECK((op.apply(v) - op.realized() * v).cwiseAbs().maxCoeff() < 1e-13);
  CHECK((op.apply_adjoint(v) - op.realized().adjoint() * v).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("adjoint swaps the bands exactly") {
  const FockBasis b = make_basis(1, 6);
  for (int rep = 0; rep < 5; ++rep) {
    const auto op = test::random_coupling(b, 0);
    CHECK(max_abs_diff(op.adjoint().mode_matrix(), op.mode_matrix().adjoint()) < 1e-15);
  }
}

TEST_CASE("powers of a equal repeated application") {
  for (int cutoff : {3, 5, 8}) {
    const FockBasis b = make_basis(1, cutoff);
    const Eigen::MatrixXcd a = annihilation_power(b, 0, 1.0, 1).mode_matrix();
    Eigen::MatrixXcd prod = Eigen::MatrixXcd::Identity(cutoff + 1, cutoff + 1);
    for (int n = 1; n <= cutoff; ++n) {
      prod = a * prod;
      CHECK(max_abs_diff(annihilation_power(b, 0, 1.0, n).mode_matrix(), prod) < 1e-12);
    }
  }
}

TEST_CASE("adag^m a^m is the diagonal falling factorial") {
  const FockBasis b = make_basis(1, 7);
  for (int m = 1; m <= 3; ++m) {
    const Eigen::MatrixXcd am = annihilation_power(b, 0, 1.0, m).mode_matrix();
    const Eigen::MatrixXcd diag = am.adjoint() * am;
    for (int k = 0; k <= 7; ++k) {
      double expect = 1.0;
      for (int j = 0; j < m; ++j) expect *= std::max(0, k - j);
      if (k < m) expect = 0.0;
      CHECK(std::abs(diag(k, k).real() - expect) < 1e-12);
      CHECK(std::abs(diag(k, k).imag()) < 1e-15);
    }
  }
}

TEST_CASE("condensate amplitudes") {
  const FockBasis b = make_basis(3, 3);

  SUBCASE("single particle in one mode") {
    const auto s = condensate_state(b, 1, 1.0, 0.0);
    const int occ[3] = {1, 0, 0};
    CHECK(std::abs(s.amplitudes[b.index_of(occ)] - 1.0) < 1e-15);
    CHECK(s.norm() == doctest::Approx(1.0));
  }

  SUBCASE("symmetric single particle") {
    const double r = 1.0 / std::sqrt(2.0);
    const auto s = condensate_state(b, 1, r, r);
    const int o1[3] = {1, 0, 0};
    const int o2[3] = {0, 1, 0};
    CHECK(std::abs(s.amplitudes[b.index_of(o1)] - r) < 1e-15);
    CHECK(std::abs(s.amplitudes[b.index_of(o2)] - r) < 1e-15);
  }

  SUBCASE("two symmetric particles spread multinomially") {
    const double r = 1.0 / std::sqrt(2.0);
    const auto s = condensate_state(b, 2, r, r);
    const int o20[3] = {2, 0, 0};
    const int o11[3] = {1, 1, 0};
    const int o02[3] = {0, 2, 0};
    CHECK(std::abs(s.amplitudes[b.index_of(o20)] - 0.5) < 1e-14);
    CHECK(std::abs(s.amplitudes[b.index_of(o11)] - 1.0 / std::sqrt(2.0)) < 1e-14);
    CHECK(std::abs(s.amplitudes[b.index_of(o02)] - 0.5) < 1e-14);
  }

  SUBCASE("one-particle amplitudes are (u1, u2, u_T)") {
    for (int rep = 0; rep < 20; ++rep) {
      const auto [u1, u2] = test::random_overlaps();
      const auto s = condensate_state(b, 1, u1, u2);
      const double ut = std::sqrt(1.0 - std::norm(u1) - std::norm(u2));
      const int o1[3] = {1, 0, 0};
      const int o2[3] = {0, 1, 0};
      const int o3[3] = {0, 0, 1};
      CHECK(std::abs(s.amplitudes[b.index_of(o1)] - u1) < 1e-14);
      CHECK(std::abs(s.amplitudes[b.index_of(o2)] - u2) < 1e-14);
      CHECK(std::abs(s.amplitudes[b.index_of(o3)] - ut) < 1e-14);
    }
  }

  SUBCASE("overfilled one-particle state is rejected") {
    CHECK_THROWS_AS(condensate_state(b, 1, 0.9, 0.7), std::invalid_argument);
  }

  SUBCASE("matches the operator-built product state") {
    for (int n : {1, 2, 3}) {
      const auto [u1, u2] = test::random_overlaps();
      const double ut = std::sqrt(1.0 - std::norm(u1) - std::norm(u2));
      Eigen::VectorXcd phi(3);
      phi << u1, u2, ut;
      const auto direct = condensate_state(b, n, u1, u2);
      const auto built = product_state(b, {{phi, n}});
      CHECK((direct.amplitudes - built.amplitudes).cwiseAbs().maxCoeff() < 1e-13);
    }
  }
}

TEST_CASE("orthogonal product states") {
  const FockBasis b = make_basis(3, 3);
  const auto e = [&](int k) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(3);
    v[k] = 1.0;
    return v;
  };

  SUBCASE("single creation") {
    const auto s = orthogonal_product_state(b, {e(0)});
    const int occ[3] = {1, 0, 0};
    CHECK(std::abs(s.amplitudes[b.index_of(occ)] - 1.0) < 1e-14);
  }

  SUBCASE("distinct modes") {
    const auto s = orthogonal_product_state(b, {e(0), e(1)});
    const int occ[3] = {1, 1, 0};
    CHECK(std::abs(s.amplitudes[b.index_of(occ)] - 1.0) < 1e-14);
  }

  SUBCASE("rotated pair interferes the cross term away") {
    const double r = 1.0 / std::sqrt(2.0);
    const auto s = orthogonal_product_state(b, {r * (e(0) + e(1)), r * (e(0) - e(1))});
    const int o20[3] = {2, 0, 0};
    const int o11[3] = {1, 1, 0};
    const int o02[3] = {0, 2, 0};
    CHECK(std::abs(s.amplitudes[b.index_of(o20)] - r) < 1e-14);
    CHECK(std::abs(s.amplitudes[b.index_of(o11)]) < 1e-14);
    CHECK(std::abs(s.amplitudes[b.index_of(o02)] + r) < 1e-14);
  }

  SUBCASE("permutation invariance") {
    for (int rep = 0; rep < 10; ++rep) {
      const auto [p1, p2] = test::random_orthonormal_pair();
      const auto fwd = orthogonal_product_state(b, {p1, p2});
      const auto rev = orthogonal_product_state(b, {p2, p1});
      CHECK((fwd.amplitudes - rev.amplitudes).cwiseAbs().maxCoeff() < 1e-12);
    }
  }

  SUBCASE("non-orthogonal inputs are rejected") {
    const double r = 1.0 / std::sqrt(2.0);
    CHECK_THROWS_WITH_AS(
        [&] { return orthogonal_product_state(b, {e(0), r * (e(0) + e(1))}); }(),
        doctest::Contains("orthonormal"), std::invalid_argument);
  }

  SUBCASE("overfilling a mode past the cutoff is caught") {
    const FockBasis tight = make_basis(2, 1);
    Eigen::VectorXcd phi = Eigen::VectorXcd::Zero(2);
    phi[0] = 1.0;
    CHECK_THROWS_AS(product_state(tight, {{phi, 2}}), std::exception);
  }
}

TEST_CASE("expectation values") {
  const FockBasis b = make_basis(3, 7);
  const auto adag1 = creation_power(b, 0, 1.0);
  const auto a1 = annihilation_power(b, 0, 1.0);
  const auto adag2 = creation_power(b, 1, 1.0);
  const auto a2 = annihilation_power(b, 1, 1.0);

  SUBCASE("number operator on a one-particle state") {
    const auto s = condensate_state(b, 1, 1.0, 0.0);
    CHECK(std::abs(expectation(s, {&adag1, &a1}) - 1.0) < 1e-14);
  }

  SUBCASE("cross and pair correlators on condensates") {
    for (int n = 1; n <= 6; ++n) {
      const auto [u1, u2] = test::random_overlaps();
      const auto s = condensate_state(b, n, u1, u2);
      const complexd cross = expectation(s, {&adag1, &a2});
      const complexd expect_cross = static_cast<double>(n) * std::conj(u1) * u2;
      CHECK(std::abs(cross - expect_cross) < 1e-12);
      const complexd pair = expectation(s, {&adag1, &a1, &adag2, &a2});
      const double expect_pair =
          static_cast<double>(n) * (n - 1.0) * std::norm(u1) * std::norm(u2);
      CHECK(std::abs(pair - expect_pair) < 1e-12);
    }
  }

  SUBCASE("basis mismatch is an error") {
    const FockBasis other = make_basis(3, 3);
    const auto s = condensate_state(other, 1, 0.5, 0.5);
    CHECK_THROWS_AS(expectation(s, {&adag1, &a1}), std::invalid_argument);
  }
}

TEST_CASE("commutation residuals") {
  const FockBasis b = make_basis(2, 5);
  const auto a1 = annihilation_power(b, 0, 1.0);
  const auto a2 = annihilation_power(b, 1, 1.0);
  CHECK(check_commuting(a1, a2) == 0.0);

  const auto adag1 = creation_power(b, 0, 1.0);
  CHECK(check_commuting(a1, adag1) == doctest::Approx(1.0));

  const auto mix1 = linear_mix(b, 0, 0.8, complexd{0.3, 0.1});
  const auto mix2 = linear_mix(b, 1, 1.2, complexd{0.3, 0.1});
  CHECK(check_commuting(mix1, mix2) == 0.0);

  // distinct modes commute exactly even when realized and multiplied densely
  const Eigen::MatrixXcd m1 = mix1.realized();
  const Eigen::MatrixXcd m2 = mix2.realized();
  CHECK(max_abs_diff(m1 * m2, m2 * m1) < 1e-13);
  const Eigen::MatrixXcd m2d = m2.adjoint();
  CHECK(max_abs_diff(m1 * m2d, m2d * m1) < 1e-13);
}

TEST_CASE("mixture validation") {
  const FockBasis b = make_basis(3, 2);
  const auto s = condensate_state(b, 1, 0.5, 0.5);
  CHECK_THROWS_AS(MixedBosonState({{0.4, s}, {0.4, s}}), std::invalid_argument);
  CHECK_THROWS_AS(MixedBosonState({{-0.5, s}, {1.5, s}}), std::invalid_argument);
  const FockBasis other = make_basis(3, 3);
  CHECK_THROWS_AS(MixedBosonState({{0.5, s}, {0.5, condensate_state(other, 1, 0.5, 0.5)}}),
                  std::invalid_argument);
}

TEST_CASE("number distributions") {
  const auto bin = NumberDistribution::binomial(5, 0.3);
  CHECK(bin.mean() == doctest::Approx(1.5));
  CHECK(bin.mean_pair() == doctest::Approx(5.0 * 4.0 * 0.09));

  const auto poi = NumberDistribution::poisson(2.0, 1e-15);
  CHECK(poi.mean() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(poi.mean_pair() == doctest::Approx(4.0).epsilon(1e-12));

  CHECK_THROWS_AS(NumberDistribution({0.5, 0.4}), std::invalid_argument);
  CHECK_THROWS_AS(NumberDistribution({1.5, -0.5}), std::invalid_argument);
}

}  // TEST_SUITE

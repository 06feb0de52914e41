#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "factorx/beta.hpp"
#include "factorx/cumulants.hpp"
#include "factorx/errors.hpp"
#include "factorx/gaussian_model.hpp"
#include "oracles/oracles.hpp"

using namespace factorx;

namespace {

// Random symmetric positive-definite matrix with entries of order one.
Eigen::MatrixXd random_cov(int m, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXd X(m, m + 2);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m + 2; ++j) X(i, j) = normal(rng);
  return X * X.transpose() / (m + 2);
}

CovarianceFn as_fn(Eigen::MatrixXd c) {
  return [c = std::move(c)](int a, int b) { return c(a, b); };
}

struct Model {
  Graph g;
  GaussianModel m;
};

Model kn_model(int n, double lambda) {
  const auto g = complete_graph(n);
  Eigen::VectorXd targets = Eigen::VectorXd::Constant(n, lambda * (n - 1));
  const Eigen::VectorXd beta = Eigen::VectorXd::Constant(n, 0.5 * std::log(lambda / (1 - lambda)));
  return {g, build_gaussian_model(g, make_beta_state(g, targets, beta))};
}

// Sum over all edges of coeff * i^l * (theta_j + theta_k)^l.
MonomialSum edge_terms(const Graph& g, int l, double coeff) {
  MonomialSum R;
  for (const auto& e : g.edges()) R.terms.push_back({l, coeff, e.u, e.v});
  return R;
}

// Second cumulant of the cubic plus quartic edge sums on K_n, from the
// Gaussian moment identities Cov(X^3, Z^3) = 9 s^2 c + 6 c^3 and
// Cov(X^4, Z^4) = 72 s^2 c^2 + 24 c^4 and the count of edge pairs by overlap.
double kn_second_cumulant(int n, double lambda) {
  const double L = lambda * (1 - lambda);
  const auto s = kn_covariances(n);
  const double same = n * (n - 1) / 2.0;
  const double share = static_cast<double>(n) * (n - 1) * (n - 2);
  const double disjoint = same * (n - 2) * (n - 3) / 2.0;
  const double b3 = L * (1 - 2 * lambda) / 6, b4 = L * (1 - 6 * L) / 24;
  const double a3 = b3 / std::pow(L * n, 1.5), a4 = b4 / std::pow(L * n, 2);
  auto c3 = [&](double c) { return 9 * s.sigma2 * s.sigma2 * c + 6 * c * c * c; };
  auto c4 = [&](double c) { return 72 * s.sigma2 * s.sigma2 * c * c + 24 * std::pow(c, 4); };
  const double v3 = same * c3(s.sigma2) + share * c3(s.sigma1) + disjoint * c3(s.sigma0);
  const double v4 = same * c4(s.sigma2) + share * c4(s.sigma1) + disjoint * c4(s.sigma0);
  return a4 * a4 * v4 - a3 * a3 * v3;
}

}  // namespace

TEST(TaylorCoefficients, Examples) {
  EXPECT_NEAR(taylor_coefficients(0.3, 2)[2], 0.105, 1e-15);
  EXPECT_NEAR(taylor_coefficients(0.5, 3)[3], 0.0, 1e-16);
  EXPECT_NEAR(taylor_coefficients(0.3, 4)[4], -0.002275, 1e-15);
  for (double l : {0.01, 0.3, 0.77}) EXPECT_DOUBLE_EQ(taylor_coefficients(l, 1)[1], l);
  EXPECT_THROW(taylor_coefficients(1.0, 3), DomainError);
}

TEST(TaylorCoefficients, MatchDerivativeRecursion) {
  for (double lambda : {0.05, 0.3, 0.5, 0.81}) {
    const auto tc = taylor_coefficients(lambda, 14);
    const auto ref = oracle::bernoulli_taylor(lambda, 14);
    for (int l = 1; l <= 14; ++l) EXPECT_NEAR(tc[l], ref[l], 1e-14) << l;
  }
}

TEST(TaylorCoefficients, SymmetryUnderComplement) {
  // ln(1 + (1-lambda)(e^u - 1)) = u + ln(1 + lambda(e^-u - 1)).
  for (double lambda : {0.1, 0.37}) {
    const auto a = taylor_coefficients(lambda, 12);
    const auto b = taylor_coefficients(1 - lambda, 12);
    for (int l = 2; l <= 12; ++l) EXPECT_NEAR(a[l], (l % 2 ? -1 : 1) * b[l], 1e-15);
  }
}

TEST(GaussianMoment, Examples) {
  Eigen::Matrix4d c;
  c << 2.0, 0.3, -0.5, 0.7, 0.3, 1.5, 0.2, -0.1, -0.5, 0.2, 1.1, 0.4, 0.7, -0.1, 0.4, 3.0;
  const auto cov = as_fn(c);
  const std::vector<int> pair{0, 2}, four{0, 1, 2, 3}, odd{1, 1, 1}, same{2, 2, 2, 2};
  EXPECT_DOUBLE_EQ(gaussian_moment(pair, cov), c(0, 2));
  EXPECT_NEAR(gaussian_moment(four, cov), c(0, 1) * c(2, 3) + c(0, 2) * c(1, 3) + c(0, 3) * c(1, 2),
              1e-15);
  EXPECT_EQ(gaussian_moment(odd, cov), 0.0);
  EXPECT_NEAR(gaussian_moment(same, cov), 3 * c(2, 2) * c(2, 2), 1e-14);
}

TEST(GaussianMoment, MatchingCountsAreDoubleFactorials) {
  const auto one = [](int, int) { return 1.0; };
  for (int k = 2; k <= 12; k += 2) {
    std::vector<int> slots(k, 0);
    std::size_t visited = 0;
    const double value = gaussian_moment(slots, one, &visited);
    EXPECT_EQ(visited, oracle::double_factorial_odd(k - 1));
    EXPECT_DOUBLE_EQ(value, static_cast<double>(oracle::double_factorial_odd(k - 1)));
  }
}

TEST(GaussianMoment, MatchesRecursiveOracle) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const auto c = random_cov(5, rng);
    std::vector<int> slots;
    const int k = 2 * (1 + static_cast<int>(rng() % 5));
    for (int i = 0; i < k; ++i) slots.push_back(static_cast<int>(rng() % 5));
    EXPECT_NEAR(gaussian_moment(slots, as_fn(c)), oracle::moment(slots, as_fn(c)), 1e-10);
  }
}

TEST(JointCumulant, Examples) {
  Eigen::Matrix2d c;
  c << 1.3, 0.4, 0.4, 0.9;
  const auto cov = as_fn(c);
  EXPECT_NEAR(joint_cumulant({{0}, {1}}, cov), 0.4, 1e-15);
  EXPECT_NEAR(joint_cumulant({{0, 0}, {1, 1}}, cov), 2 * 0.4 * 0.4, 1e-15);
  EXPECT_NEAR(joint_cumulant({{0, 0}, {1, 1}}, cov),
              oracle::moment({0, 0, 1, 1}, cov) - oracle::moment({0, 0}, cov) * oracle::moment({1, 1}, cov),
              1e-14);
  EXPECT_EQ(joint_cumulant({{0, 0}, {1}}, cov), 0.0);
}

TEST(JointCumulant, ThirdCumulantOfProduct) {
  // kappa_3 of the product X_u X_v from its raw moments.
  Eigen::Matrix2d c;
  c << 1.0, 0.6, 0.6, 1.0;
  const auto cov = as_fn(c);
  const double m1 = oracle::moment({0, 1}, cov);
  const double m2 = oracle::moment({0, 1, 0, 1}, cov);
  const double m3 = oracle::moment({0, 1, 0, 1, 0, 1}, cov);
  EXPECT_NEAR(joint_cumulant({{0, 1}, {0, 1}, {0, 1}}, cov), m3 - 3 * m2 * m1 + 2 * m1 * m1 * m1, 1e-12);
}

TEST(JointCumulant, MatchesPartitionFormula) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const auto c = random_cov(4, rng);
    const int nblocks = 1 + static_cast<int>(rng() % 4);
    std::vector<std::vector<int>> blocks(nblocks);
    int total = 0;
    for (auto& b : blocks) {
      const int len = 1 + static_cast<int>(rng() % 3);
      for (int i = 0; i < len; ++i) b.push_back(static_cast<int>(rng() % 4));
      total += len;
    }
    if (total > 8) continue;
    EXPECT_NEAR(joint_cumulant(blocks, as_fn(c)), oracle::partition_cumulant(blocks, as_fn(c)), 1e-10);
  }
}

TEST(JointCumulant, PathPairingIdentity) {
  // Blocks (3, 4, 3) on the path u-v-w-x with the K_n pair covariances.
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int trial = 0; trial < 5; ++trial) {
    const double s0 = u(rng), s1 = u(rng), s2 = u(rng);
    Eigen::Matrix3d c;
    c << s2, s1, s0, s1, s2, s1, s0, s1, s2;
    const double got = joint_cumulant({{0, 0, 0}, {1, 1, 1, 1}, {2, 2, 2}}, as_fn(c));
    const double want = 216 * s0 * s0 * s1 * s1 * s2 + 216 * s0 * s1 * s1 * s2 * s2 +
                        108 * s1 * s1 * s2 * s2 * s2 + 216 * s0 * std::pow(s1, 4) +
                        144 * std::pow(s1, 4) * s2;
    EXPECT_NEAR(got, want, 1e-10 * std::max(1.0, std::abs(want)));
    const std::vector<int> powers{3, 4, 3};
    EXPECT_NEAR(power_cumulant(powers, c), want, 1e-10 * std::max(1.0, std::abs(want)));
  }
}

TEST(PowerCumulant, MatchesSlotEnumeration) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 60; ++trial) {
    const int r = 1 + static_cast<int>(rng() % 4);
    const auto c = random_cov(r, rng);
    std::vector<int> powers(r);
    std::vector<std::vector<int>> blocks(r);
    int total = 0;
    for (int a = 0; a < r; ++a) {
      powers[a] = 1 + static_cast<int>(rng() % 4);
      blocks[a].assign(powers[a], a);
      total += powers[a];
    }
    if (total > 14) continue;
    const double want = joint_cumulant(blocks, as_fn(c));
    EXPECT_NEAR(power_cumulant(powers, c), want, 1e-9 * std::max(1.0, std::abs(want)));
  }
}

TEST(PowerCumulant, BeyondSlotLimit) {
  // kappa_2(X^9, X^9) for unit variance is Var(X^9) = 17!! - 0.
  Eigen::Matrix2d c;
  c << 1, 1, 1, 1;
  const std::vector<int> powers{9, 9};
  EXPECT_NEAR(power_cumulant(powers, c), static_cast<double>(oracle::double_factorial_odd(17)), 1e-3);
}

TEST(PolynomialJointCumulant, MatchesMultilinearExpansion) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 40; ++trial) {
    const int r = 2 + static_cast<int>(rng() % 2);
    const auto c = random_cov(r, rng);
    std::vector<std::vector<double>> coeffs(r, std::vector<double>(5, 0.0));
    for (auto& p : coeffs)
      for (int l = 1; l <= 4; ++l) p[l] = u(rng);
    double want = 0;
    std::vector<int> powers(r, 1);
    while (true) {
      int total = 0;
      double w = 1;
      for (int a = 0; a < r; ++a) {
        total += powers[a];
        w *= coeffs[a][powers[a]];
      }
      if (total % 2 == 0) want += (total / 2 % 2 ? -1 : 1) * w * power_cumulant(powers, c);
      int a = 0;
      while (a < r && powers[a] == 4) powers[a++] = 1;
      if (a == r) break;
      ++powers[a];
    }
    EXPECT_NEAR(polynomial_joint_cumulant(coeffs, c), want, 1e-9 * std::max(1.0, std::abs(want)));
  }
}

TEST(GaussianMonteCarlo, CovarianceOfSquares) {
  // Sample estimate of Cov(X_0^2, X_1^2) against the connected-pairing value 2 c01^2.
  std::mt19937_64 rng(99);
  std::mt19937_64 sample_rng(100);
  const auto c = random_cov(2, rng);
  const Eigen::MatrixXd L = c.llt().matrixL();
  std::normal_distribution<double> normal;
  const int N = 1'000'000;
  double sa = 0, sb = 0, sab = 0;
  for (int i = 0; i < N; ++i) {
    const Eigen::Vector2d z(normal(sample_rng), normal(sample_rng));
    const Eigen::Vector2d x = L * z;
    sa += x(0) * x(0);
    sb += x(1) * x(1);
    sab += x(0) * x(0) * x(1) * x(1);
  }
  const double mc = sab / N - (sa / N) * (sb / N);
  const double exact = joint_cumulant({{0, 0}, {1, 1}}, as_fn(c));
  const double scale = 2 * c(0, 0) * c(1, 1);
  EXPECT_NEAR(mc, exact, 0.02 * scale);
}

TEST(CumulantOfPolynomial, LinearTermsHaveZeroMean) {
  const auto km = kn_model(8, 0.4);
  MonomialSum R;
  for (int j = 0; j < 8; ++j) R.terms.push_back({1, 0.1 * (j - 3), j, j});
  EXPECT_EQ(cumulant_of_polynomial(R, km.m, 1), 0.0);
}

TEST(CumulantOfPolynomial, OddTotalDegreeVanishes) {
  const auto km = kn_model(7, 0.3);
  EXPECT_EQ(cumulant_of_polynomial(edge_terms(km.g, 3, 1.0), km.m, 1), 0.0);
  EXPECT_EQ(cumulant_of_polynomial(edge_terms(km.g, 3, 1.0), km.m, 3), 0.0);
}

TEST(CumulantOfPolynomial, QuarticMeanOnCompleteGraph) {
  // kappa_1 of b_4 sum (theta_j + theta_k)^4 is n (1 - 6 Lambda) / (4 Lambda (n - 1)) exactly.
  for (double lambda : {0.5, 0.3}) {
    for (int n : {8, 15, 30}) {
      const auto km = kn_model(n, lambda);
      const double L = lambda * (1 - lambda);
      const double b4 = taylor_coefficients(lambda, 4)[4];
      const double got = cumulant_of_polynomial(edge_terms(km.g, 4, b4), km.m, 1);
      EXPECT_NEAR(got, n * (1 - 6 * L) / (4 * L * (n - 1)), 1e-11);
    }
  }
}

TEST(CumulantOfPolynomial, SecondCumulantOnCompleteGraph) {
  for (double lambda : {0.3, 0.45}) {
    for (int n : {6, 9, 12}) {
      const auto km = kn_model(n, lambda);
      const auto b = taylor_coefficients(lambda, 4);
      MonomialSum R = edge_terms(km.g, 3, b[3]);
      for (const auto& t : edge_terms(km.g, 4, b[4]).terms) R.terms.push_back(t);
      const double want = kn_second_cumulant(n, lambda);
      EXPECT_NEAR(cumulant_of_polynomial(R, km.m, 2), want, 1e-12 * std::max(1.0, std::abs(want)));
    }
  }
}

TEST(CumulantOfPolynomial, CubicSecondCumulantApproachesLeadingTerms) {
  // Two edge shapes contribute at leading order: sharing a vertex and disjoint.
  const double lambda = 0.3, L = lambda * (1 - lambda);
  const double limit = -7 * (1 - 4 * L) / (6 * L) + (1 - 4 * L) / (2 * L);
  const double b3 = taylor_coefficients(lambda, 3)[3];
  double previous = INFINITY;
  for (int n : {20, 40, 80}) {
    const auto km = kn_model(n, lambda);
    const double got = cumulant_of_polynomial(edge_terms(km.g, 3, b3), km.m, 2);
    const double gap = std::abs(got / limit - 1);
    EXPECT_LT(gap, previous);
    previous = gap;
  }
  EXPECT_LT(previous, 0.05);
}

TEST(CumulantOfPolynomial, MatchesOrderedTupleExpansion) {
  // Independent route: sum over ordered r-tuples of single monomials.
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1, 1);
  const auto c = random_cov(5, rng);
  const PairCovarianceFn pc = [&c](int j, int k, int a, int b) {
    const double left_a = c(j, a) + (j == k ? 0 : c(k, a));
    const double left_b = c(j, b) + (j == k ? 0 : c(k, b));
    return a == b ? left_a : left_a + left_b;
  };
  MonomialSum R;
  R.terms = {{1, u(rng), 0, 0}, {1, u(rng), 3, 3}, {2, u(rng), 0, 1}, {3, u(rng), 1, 2},
             {4, u(rng), 2, 4}, {3, u(rng), 0, 1}, {2, u(rng), 3, 4}};
  for (int r = 1; r <= 3; ++r) {
    double want = 0;
    const int m = static_cast<int>(R.terms.size());
    std::vector<int> idx(r, 0);
    while (true) {
      int total = 0;
      double w = 1;
      std::vector<std::vector<int>> blocks;
      Eigen::MatrixXd cov(r, r);
      for (int a = 0; a < r; ++a) {
        const auto& t = R.terms[idx[a]];
        total += t.degree;
        w *= t.coeff;
        blocks.push_back(std::vector<int>(t.degree, a));
        for (int b = 0; b < r; ++b) {
          const auto& s = R.terms[idx[b]];
          cov(a, b) = pc(t.j, t.k, s.j, s.k);
        }
      }
      if (total % 2 == 0) want += (total / 2 % 2 ? -1 : 1) * w * joint_cumulant(blocks, as_fn(cov));
      int a = 0;
      while (a < r && idx[a] == m - 1) idx[a++] = 0;
      if (a == r) break;
      ++idx[a];
    }
    EXPECT_NEAR(cumulant_of_polynomial(R, pc, 5, r), want, 1e-10 * std::max(1.0, std::abs(want))) << r;
  }
}

TEST(CumulantOfPolynomial, IndependentOfThreadCount) {
  const auto km = kn_model(10, 0.4);
  const auto b = taylor_coefficients(0.4, 6);
  MonomialSum R;
  for (int l = 3; l <= 6; ++l)
    for (const auto& t : edge_terms(km.g, l, b[l]).terms) R.terms.push_back(t);
  CumulantOptions one, four;
  one.threads = 1;
  four.threads = 4;
  for (int r = 1; r <= 2; ++r)
    EXPECT_EQ(cumulant_of_polynomial(R, km.m, r, one), cumulant_of_polynomial(R, km.m, r, four));
}

TEST(CumulantOfPolynomial, BudgetIsEnforced) {
  const auto km = kn_model(12, 0.4);
  const MonomialSum R = edge_terms(km.g, 4, 1.0);
  EXPECT_DOUBLE_EQ(cumulant_tuple_count(R, 2), 66.0 * 67 / 2);
  CumulantOptions tiny;
  tiny.budget = 100;
  EXPECT_THROW(cumulant_of_polynomial(R, km.m, 2, tiny), BudgetExceeded);
}

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include "factorx/gaussian_model.hpp"

namespace factorx {

/// Real Taylor coefficients b_l of ln(1 + lambda(e^u - 1)) around u = 0.
///
/// With u = iz these give the coefficients of f_lambda(z) = ln(1 + lambda(e^{iz} - 1))
/// as c_l = i^l b_l, so b_1 = lambda, b_2 = Lambda/2, b_3 = (1-2 lambda) Lambda/6.
struct TaylorCoefficients {
  std::vector<double> b;  // b[0] is unused and zero

  double operator[](int l) const { return b[l]; }
  int max_order() const { return static_cast<int>(b.size()) - 1; }
};

TaylorCoefficients taylor_coefficients(double lambda, int l_max);

/// Exact coefficients of b_l as a polynomial in lambda: entry k multiplies lambda^k.
std::vector<boost::multiprecision::cpp_rational> taylor_polynomial(int l);

// Covariance between two variable ids.
using CovarianceFn = std::function<double(int, int)>;

inline constexpr std::size_t kMaxSlots = 16;

/// E[X_{s_1} ... X_{s_k}] for a centred Gaussian, summed over all perfect
/// matchings of the slots. If matchings is given it receives the number of
/// matchings visited.
double gaussian_moment(std::span<const int> slots, const CovarianceFn& cov,
                       std::size_t* matchings = nullptr);

/// Joint cumulant of the block products, summed over the pairings whose
/// block graph is connected.
double joint_cumulant(const std::vector<std::vector<int>>& blocks, const CovarianceFn& cov);

/// kappa(X_1^{p_1}, ..., X_r^{p_r}) for jointly Gaussian X with covariance cov.
///
/// Pairings are grouped by the multigraph of block-to-block pair counts, so
/// the cost depends on the number of such multigraphs rather than on the
/// number of slot pairings.
double power_cumulant(std::span<const int> powers, const Eigen::MatrixXd& cov);

/// kappa(P_1(X_1), ..., P_r(X_r)) with P_a(x) = sum_l coeffs[a][l] i^l x^l.
///
/// Odd total degrees vanish, so the result is real: each multigraph carries
/// the phase i^{sum l} = (-1)^{edges}.
double polynomial_joint_cumulant(std::span<const std::vector<double>> coeffs,
                                 const Eigen::MatrixXd& cov);

/// One term coeff * i^degree * (theta_j + theta_k)^degree. A term with j == k
/// stands for the single coordinate theta_j (used for the linear delta terms).
struct Monomial {
  int degree;
  double coeff;
  int j;
  int k;
};

struct MonomialSum {
  std::vector<Monomial> terms;
};

// Cov of the linear forms selected by (j, k) and (u, v); see Monomial.
using PairCovarianceFn = std::function<double(int j, int k, int u, int v)>;

struct CumulantOptions {
  std::size_t budget = 10'000'000;  // unordered r-tuples of grouped variables
  unsigned threads = 0;             // 0: hardware concurrency
};

/// kappa_r(R(Y)) by multilinearity over unordered r-multisets of variables.
///
/// Terms are grouped by their linear form, and all degree-1 single-coordinate
/// terms are merged into one linear form. Throws BudgetExceeded when the
/// number of r-multisets exceeds opts.budget. The result does not depend on
/// the thread count.
double cumulant_of_polynomial(const MonomialSum& R, const PairCovarianceFn& cov, int n, int r,
                              const CumulantOptions& opts = {});
double cumulant_of_polynomial(const MonomialSum& R, const GaussianModel& model, int r,
                              const CumulantOptions& opts = {});

/// Number of unordered r-multisets cumulant_of_polynomial would visit.
double cumulant_tuple_count(const MonomialSum& R, int r);

struct KnCovariances {
  double sigma0;  // disjoint pairs
  double sigma1;  // one shared endpoint
  double sigma2;  // same pair
};

/// Covariances of the scaled pair variables for K_n at constant density.
KnCovariances kn_covariances(int n);

}  // namespace factorx

#include <cmath>
#include <functional>
#include <ostream>
#include <string>

#include "factorx/beta.hpp"
#include "factorx/cli.hpp"
#include "factorx/cumulants.hpp"
#include "factorx/exact.hpp"
#include "factorx/gaussian_model.hpp"
#include "factorx/regular_expansion.hpp"
#include "factorx/scientific.hpp"

namespace factorx {

namespace {

bool close(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

}  // namespace

int run_selftest(std::ostream& out) {
  int failures = 0;
  auto report = [&](const std::string& name, const std::function<bool()>& body) {
    bool ok = false;
    try {
      ok = body();
    } catch (const std::exception& e) {
      out << "  (" << e.what() << ")\n";
    }
    out << (ok ? "PASS " : "FAIL ") << name << '\n';
    if (!ok) ++failures;
  };

  report("RG(37,18) expansion k=7 is 1.6237815979e168", [] {
    const auto sci = to_scientific(rg_log_expansion(37, 18, 7).log_value);
    return sci.mantissa == "1.6237815979" && sci.exponent == 168;
  });
  report("exact RG(5,2)=12 and RG(6,3)=70", [] {
    return exact_regular_count(5, 2) == 12 && exact_regular_count(6, 3) == 70;
  });
  report("connected pairings of (Y_uv^3, Y_vw^4, Y_wx^3)", [] {
    const double s0 = -0.3, s1 = 0.7, s2 = 1.9;
    // Variables 0..2 are Y_uv, Y_vw, Y_wx on the path u-v-w-x.
    auto cov = [&](int a, int b) {
      if (a == b) return s2;
      return std::abs(a - b) == 1 ? s1 : s0;
    };
    const double got = joint_cumulant({{0, 0, 0}, {1, 1, 1, 1}, {2, 2, 2}}, cov);
    const double want = 216 * s0 * s0 * s1 * s1 * s2 + 216 * s0 * s1 * s1 * s2 * s2 +
                        108 * s1 * s1 * s2 * s2 * s2 + 216 * s0 * std::pow(s1, 4) +
                        144 * std::pow(s1, 4) * s2;
    return close(got, want, 1e-12);
  });
  report("K_10 Gaussian model closed forms", [] {
    const int n = 10;
    const double lambda = 4.0 / 9;
    const auto g = complete_graph(n);
    const Eigen::VectorXd beta =
        Eigen::VectorXd::Constant(n, 0.5 * std::log(lambda / (1 - lambda)));
    const auto model = build_gaussian_model(g, make_beta_state(g, DegreeSequence::regular(n, 4), beta));
    const auto s = kn_covariances(n);
    const double det = std::log(2 - 2.0 / n) + (n - 1) * std::log(1 - 2.0 / n);
    return close(model.log_det_A, det, 1e-12) &&
           close(pairwise_covariance(model, 0, 1, 0, 1), s.sigma2, 1e-12) &&
           close(pairwise_covariance(model, 0, 1, 0, 2), s.sigma1, 1e-12) &&
           close(pairwise_covariance(model, 0, 1, 2, 3), s.sigma0, 1e-12);
  });
  report("beta on K_12, 5-regular is constant with zero residual", [] {
    const auto s = solve_beta(complete_graph(12), DegreeSequence::regular(12, 5));
    return s.delta_inf() < 1e-12 && s.beta.maxCoeff() - s.beta.minCoeff() < 1e-12;
  });
  report("Taylor coefficient b_4(0.3) = -0.002275", [] {
    return close(taylor_coefficients(0.3, 4)[4], -0.002275, 1e-12);
  });
  return failures;
}

}  // namespace factorx

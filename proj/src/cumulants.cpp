#include "factorx/cumulants.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <thread>

#include "factorx/errors.hpp"

namespace factorx {

namespace mp = boost::multiprecision;

std::vector<mp::cpp_rational> taylor_polynomial(int l) {
  if (l < 1) throw DomainError("Taylor order must be at least 1");
  // ln(1 + lambda(e^u - 1)) = sum_k (-1)^{k+1} lambda^k (e^u - 1)^k / k and
  // (e^u - 1)^k = k! sum_l S(l, k) u^l / l!.
  std::vector<std::vector<mp::cpp_int>> stirling(l + 1, std::vector<mp::cpp_int>(l + 1, 0));
  stirling[0][0] = 1;
  for (int i = 1; i <= l; ++i)
    for (int k = 1; k <= i; ++k) stirling[i][k] = k * stirling[i - 1][k] + stirling[i - 1][k - 1];
  mp::cpp_int l_fact = 1;
  for (int i = 2; i <= l; ++i) l_fact *= i;
  std::vector<mp::cpp_rational> poly(l + 1, 0);
  mp::cpp_int k_minus_1_fact = 1;
  for (int k = 1; k <= l; ++k) {
    if (k > 1) k_minus_1_fact *= k - 1;
    mp::cpp_rational term(k_minus_1_fact * stirling[l][k], l_fact);
    poly[k] = (k % 2 == 1) ? term : mp::cpp_rational(-term);
  }
  return poly;
}

TaylorCoefficients taylor_coefficients(double lambda, int l_max) {
  if (!(lambda > 0 && lambda < 1)) throw DomainError("lambda must lie in (0, 1)");
  if (l_max < 1) throw DomainError("l_max must be at least 1");
  TaylorCoefficients tc;
  tc.b.assign(l_max + 1, 0.0);
  const long double x = lambda;
  for (int l = 1; l <= l_max; ++l) {
    const auto poly = taylor_polynomial(l);
    long double acc = 0;
    for (int k = l; k >= 1; --k) acc = acc * x + static_cast<long double>(poly[k]);
    tc.b[l] = static_cast<double>(acc * x);
  }
  return tc;
}

namespace {

struct PairingWalk {
  std::span<const int> slots;
  const CovarianceFn& cov;
  std::vector<int> block;               // slot -> block, empty for plain moments
  std::vector<std::uint32_t> links;     // block adjacency bitmasks
  std::vector<bool> used;
  std::size_t leaves = 0;

  bool connected() const {
    if (links.empty()) return true;
    std::uint32_t seen = 1, frontier = 1;
    while (frontier) {
      std::uint32_t grown = seen;
      for (std::uint32_t f = frontier; f; f &= f - 1) grown |= links[std::countr_zero(f)];
      frontier = grown & ~seen;
      seen = grown;
    }
    return seen == (links.size() == 32 ? ~0u : (1u << links.size()) - 1);
  }

  double walk() {
    std::size_t first = 0;
    while (first < used.size() && used[first]) ++first;
    if (first == used.size()) {
      ++leaves;
      return connected() ? 1.0 : 0.0;
    }
    used[first] = true;
    double total = 0;
    for (std::size_t other = first + 1; other < used.size(); ++other) {
      if (used[other]) continue;
      const double c = cov(slots[first], slots[other]);
      used[other] = true;
      std::uint32_t saved_a = 0, saved_b = 0;
      int a = 0, b = 0;
      if (!block.empty()) {
        a = block[first];
        b = block[other];
        saved_a = links[a];
        saved_b = links[b];
        if (a != b) {
          links[a] |= 1u << b;
          links[b] |= 1u << a;
        }
      }
      const double rest = walk();
      if (c != 0) total += c * rest;
      if (!block.empty()) {
        links[a] = saved_a;
        links[b] = saved_b;
      }
      used[other] = false;
    }
    used[first] = false;
    return total;
  }
};

}  // namespace

double gaussian_moment(std::span<const int> slots, const CovarianceFn& cov, std::size_t* matchings) {
  if (slots.size() > kMaxSlots) throw DomainError("too many slots for pairing enumeration");
  if (slots.size() % 2 == 1) {
    if (matchings) *matchings = 0;
    return 0.0;
  }
  PairingWalk w{slots, cov, {}, {}, std::vector<bool>(slots.size(), false)};
  const double value = w.walk();
  if (matchings) *matchings = w.leaves;
  return value;
}

double joint_cumulant(const std::vector<std::vector<int>>& blocks, const CovarianceFn& cov) {
  if (blocks.empty()) throw DomainError("joint cumulant needs at least one block");
  if (blocks.size() > 32) throw DomainError("too many blocks");
  std::vector<int> slots, owner;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (int s : blocks[b]) {
      slots.push_back(s);
      owner.push_back(static_cast<int>(b));
    }
  }
  if (slots.size() > kMaxSlots) throw DomainError("too many slots for pairing enumeration");
  if (slots.size() % 2 == 1) return 0.0;
  PairingWalk w{slots, cov, owner, std::vector<std::uint32_t>(blocks.size(), 0),
                std::vector<bool>(slots.size(), false)};
  return w.walk();
}

namespace {

double factorial(int k) {
  double f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// Enumerates symmetric multigraphs (m_ab) on r blocks row by row. A block's
// degree is final once its row is done, so disallowed degrees prune early.
class MultigraphSum {
 public:
  MultigraphSum(std::span<const std::vector<double>> coeffs, const Eigen::MatrixXd& cov)
      : coeffs_(coeffs), cov_(cov), r_(static_cast<int>(coeffs.size())), deg_(r_, 0),
        cap_(r_, 0), links_(r_, 0) {
    for (int a = 0; a < r_; ++a) {
      const auto& c = coeffs_[a];
      for (int l = static_cast<int>(c.size()) - 1; l >= 1; --l) {
        if (c[l] != 0) {
          cap_[a] = l;
          break;
        }
      }
    }
  }

  double run() {
    for (int a = 0; a < r_; ++a) {
      if (cap_[a] == 0) return 0.0;
    }
    total_ = 0;
    step(0, 0, 1.0);
    return total_;
  }

 private:
  bool connected() const {
    std::uint32_t seen = 1, frontier = 1;
    while (frontier) {
      std::uint32_t grown = seen;
      for (std::uint32_t f = frontier; f; f &= f - 1) grown |= links_[std::countr_zero(f)];
      frontier = grown & ~seen;
      seen = grown;
    }
    return seen == (r_ == 32 ? ~0u : (1u << r_) - 1);
  }

  void finish(double weight) {
    if (!connected()) return;
    int edges = 0;
    double w = weight;
    for (int a = 0; a < r_; ++a) {
      edges += deg_[a];
      w *= factorial(deg_[a]) * coeffs_[a][deg_[a]];
    }
    edges /= 2;
    total_ += (edges % 2 == 0) ? w : -w;
  }

  // Entry (a, b) with a <= b; weight carries prod cov^m / (m! [2^m on the diagonal]).
  void step(int a, int b, double weight) {
    if (a == r_) {
      finish(weight);
      return;
    }
    const int next_a = b + 1 == r_ ? a + 1 : a;
    const int next_b = b + 1 == r_ ? a + 1 : b + 1;
    const bool row_ends = b + 1 == r_;
    const int room_a = cap_[a] - deg_[a];
    const int top = a == b ? room_a / 2 : std::min(room_a, cap_[b] - deg_[b]);
    const double c = cov_(a, b);
    double w = weight;
    for (int m = 0; m <= top; ++m) {
      if (m > 0) {
        w *= c / (a == b ? 2.0 * m : static_cast<double>(m));
        if (w == 0) break;
      }
      const int add_a = a == b ? 2 * m : m;
      deg_[a] += add_a;
      if (a != b) deg_[b] += m;
      const std::uint32_t saved_a = links_[a], saved_b = links_[b];
      if (a != b && m > 0) {
        links_[a] |= 1u << b;
        links_[b] |= 1u << a;
      }
      if (!row_ends || (deg_[a] >= 1 && coeffs_[a][deg_[a]] != 0)) {
        step(next_a, next_b, w);
      }
      links_[a] = saved_a;
      links_[b] = saved_b;
      deg_[a] -= add_a;
      if (a != b) deg_[b] -= m;
    }
  }

  std::span<const std::vector<double>> coeffs_;
  const Eigen::MatrixXd& cov_;
  int r_;
  std::vector<int> deg_;
  std::vector<int> cap_;
  std::vector<std::uint32_t> links_;
  double total_ = 0;
};

}  // namespace

double polynomial_joint_cumulant(std::span<const std::vector<double>> coeffs,
                                 const Eigen::MatrixXd& cov) {
  const int r = static_cast<int>(coeffs.size());
  if (r < 1) throw DomainError("joint cumulant needs at least one argument");
  if (r > 32) throw DomainError("too many cumulant arguments");
  if (cov.rows() != r || cov.cols() != r) throw DomainError("covariance size mismatch");
  return MultigraphSum(coeffs, cov).run();
}

double power_cumulant(std::span<const int> powers, const Eigen::MatrixXd& cov) {
  std::vector<std::vector<double>> coeffs;
  int total = 0;
  for (int p : powers) {
    if (p < 1) throw DomainError("powers must be positive");
    std::vector<double> c(p + 1, 0.0);
    c[p] = 1.0;
    coeffs.push_back(std::move(c));
    total += p;
  }
  if (total % 2 == 1) return 0.0;
  // Undo the i^{sum p} phase applied by polynomial_joint_cumulant.
  const double value = polynomial_joint_cumulant(coeffs, cov);
  return (total / 2) % 2 == 0 ? value : -value;
}

namespace {

// R with its terms grouped by linear form. Variable 0 is the merged linear
// form when any single-coordinate degree-1 terms are present.
struct GroupedPolynomial {
  struct Var {
    int j;
    int k;
    std::vector<double> coeffs;
  };
  std::vector<Var> vars;
  bool has_linear = false;
  Eigen::VectorXd linear;  // weights of the merged linear form
};

GroupedPolynomial group_terms(const MonomialSum& R, int n) {
  GroupedPolynomial gp;
  gp.linear = Eigen::VectorXd::Zero(std::max(n, 0));
  std::map<std::pair<int, int>, std::size_t> index;
  for (const auto& t : R.terms) {
    if (t.degree < 1) throw DomainError("monomial degree must be at least 1");
    if (!std::isfinite(t.coeff)) throw DomainError("monomial coefficient is not finite");
    const int j = std::min(t.j, t.k), k = std::max(t.j, t.k);
    if (j < 0 || k >= n) throw DomainError("monomial variable out of range");
    if (j == k && t.degree == 1) {
      gp.has_linear = true;
      gp.linear(j) += t.coeff;
      continue;
    }
    auto [it, fresh] = index.try_emplace({j, k}, gp.vars.size());
    if (fresh) gp.vars.push_back({j, k, {}});
    auto& c = gp.vars[it->second].coeffs;
    if (static_cast<int>(c.size()) <= t.degree) c.resize(t.degree + 1, 0.0);
    c[t.degree] += t.coeff;
  }
  if (gp.has_linear) gp.vars.insert(gp.vars.begin(), {-1, -1, {0.0, 1.0}});
  return gp;
}

double multiset_count(double v, int r) {
  double count = 1;
  for (int i = 0; i < r; ++i) count = count * (v + i) / (i + 1);
  return std::round(count);
}

struct Neumaier {
  double sum = 0, comp = 0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) comp += (sum - t) + x;
    else comp += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

}  // namespace

double cumulant_tuple_count(const MonomialSum& R, int r) {
  int n = 0;
  for (const auto& t : R.terms) n = std::max({n, t.j + 1, t.k + 1});
  return multiset_count(static_cast<double>(group_terms(R, n).vars.size()), r);
}

double cumulant_of_polynomial(const MonomialSum& R, const PairCovarianceFn& cov, int n, int r,
                              const CumulantOptions& opts) {
  if (r < 1) throw DomainError("cumulant order must be at least 1");
  if (r > 32) throw DomainError("cumulant order too large");
  const auto gp = group_terms(R, n);
  const int nv = static_cast<int>(gp.vars.size());
  if (nv == 0) return 0.0;
  const double tuples = multiset_count(nv, r);
  if (tuples > static_cast<double>(opts.budget)) {
    throw BudgetExceeded("cumulant of order " + std::to_string(r) + " needs " +
                             std::to_string(static_cast<long long>(tuples)) +
                             " tuples, above the budget of " + std::to_string(opts.budget) +
                             "; lower ell0/r0 or use the regular expansion",
                         tuples);
  }

  // Covariances involving the merged linear form are precomputed.
  std::vector<double> linear_cov;
  double linear_var = 0;
  if (gp.has_linear) {
    std::vector<int> support;
    for (int j = 0; j < n; ++j)
      if (gp.linear(j) != 0) support.push_back(j);
    linear_cov.assign(nv, 0.0);
    for (int v = 1; v < nv; ++v) {
      double s = 0;
      for (int j : support) s += gp.linear(j) * cov(j, j, gp.vars[v].j, gp.vars[v].k);
      linear_cov[v] = s;
    }
    for (int a : support)
      for (int b : support) linear_var += gp.linear(a) * gp.linear(b) * cov(a, a, b, b);
    linear_cov[0] = linear_var;
  }
  auto var_cov = [&](int a, int b) {
    if (gp.has_linear && (a == 0 || b == 0)) return linear_cov[a == 0 ? b : a];
    return cov(gp.vars[a].j, gp.vars[a].k, gp.vars[b].j, gp.vars[b].k);
  };

  double r_fact = factorial(r);
  std::vector<double> partial(nv, 0.0);
  auto work = [&](int first) {
    Neumaier acc;
    std::vector<int> idx(r, first);
    Eigen::MatrixXd c(r, r);
    std::vector<std::vector<double>> coeffs(r);
    while (true) {
      int same = 1;
      double denom = 1;
      for (int a = 1; a < r; ++a) {
        same = idx[a] == idx[a - 1] ? same + 1 : 1;
        denom *= same;
      }
      for (int a = 0; a < r; ++a) {
        coeffs[a] = gp.vars[idx[a]].coeffs;
        for (int b = a; b < r; ++b) c(a, b) = c(b, a) = var_cov(idx[a], idx[b]);
      }
      const double k = polynomial_joint_cumulant(coeffs, c);
      if (k != 0) acc.add(k * (r_fact / denom));
      // Next non-decreasing tuple with idx[0] fixed.
      int pos = r - 1;
      while (pos >= 1 && idx[pos] == nv - 1) --pos;
      if (pos < 1) break;
      ++idx[pos];
      for (int a = pos + 1; a < r; ++a) idx[a] = idx[pos];
    }
    partial[first] = acc.value();
  };

  unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(nv));
  if (threads <= 1) {
    for (int f = 0; f < nv; ++f) work(f);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (int f = next++; f < nv; f = next++) work(f);
      });
    }
    for (auto& th : pool) th.join();
  }
  Neumaier total;
  for (double p : partial) total.add(p);
  return total.value();
}

double cumulant_of_polynomial(const MonomialSum& R, const GaussianModel& model, int r,
                              const CumulantOptions& opts) {
  return cumulant_of_polynomial(
      R, [&model](int j, int k, int u, int v) { return model.linear_covariance(j, k, u, v); },
      model.n, r, opts);
}

KnCovariances kn_covariances(int n) {
  if (n < 4) throw DomainError("K_n covariances need n >= 4");
  const double dn = n;
  return {-2 * dn / ((dn - 1) * (dn - 2)), (dn - 3) * dn / ((dn - 1) * (dn - 2)),
          2 * dn / (dn - 1)};
}

}  // namespace factorx

#include "factorx/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "factorx/assumptions.hpp"
#include "factorx/beta.hpp"
#include "factorx/errors.hpp"
#include "factorx/estimator.hpp"
#include "factorx/exact.hpp"
#include "factorx/graph.hpp"
#include "factorx/regular_expansion.hpp"
#include "factorx/scientific.hpp"

namespace factorx {

namespace {

using Json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct InstanceFlags {
  std::string graph_path;
  std::string format = "edgelist";
  int kn = 0;
  std::string degrees_path;
  std::string inline_degrees;
  std::optional<int> regular;
};

void add_instance_flags(CLI::App* cmd, InstanceFlags& f) {
  cmd->add_option("--graph", f.graph_path, "Graph file (edge list or graph6)");
  cmd->add_option("--format", f.format, "Graph file format")
      ->check(CLI::IsMember({"edgelist", "graph6"}));
  cmd->add_option("--kn", f.kn, "Use the complete graph K_n")->check(CLI::PositiveNumber);
  cmd->add_option("--degrees", f.degrees_path, "File of target degrees");
  cmd->add_option("--d", f.inline_degrees, "Inline target degrees, comma separated");
  cmd->add_option("--regular", f.regular, "Every vertex gets this target degree");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Graph load_graph(const InstanceFlags& f) {
  const int sources = !f.graph_path.empty() + (f.kn > 0);
  if (sources != 1) throw UsageError("give exactly one of --graph or --kn");
  if (f.kn > 0) return complete_graph(f.kn);
  const auto text = read_file(f.graph_path);
  return f.format == "graph6" ? parse_graph6(text) : parse_edge_list(text);
}

DegreeSequence load_degrees(const InstanceFlags& f, const Graph& g) {
  const int sources = !f.degrees_path.empty() + !f.inline_degrees.empty() + f.regular.has_value();
  if (sources != 1) throw UsageError("give exactly one of --degrees, --d or --regular");
  DegreeSequence d;
  if (f.regular) d = DegreeSequence::regular(g.order(), *f.regular);
  else if (!f.inline_degrees.empty()) d = parse_degrees(f.inline_degrees);
  else d = parse_degrees(read_file(f.degrees_path));
  if (d.size() != static_cast<std::size_t>(g.order())) {
    throw DomainError("got " + std::to_string(d.size()) + " degrees for a graph on " +
                      std::to_string(g.order()) + " vertices");
  }
  return d;
}

Json vector_json(const Eigen::VectorXd& v) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

Json estimate_json(const Estimate& e) {
  Json j;
  j["log_value"] = e.log_value;
  const auto sci = to_scientific(e.log_value);
  j["mantissa"] = sci.mantissa;
  j["exponent"] = sci.exponent;
  j["breakdown"] = {{"log_M", e.breakdown.log_M},
                    {"gaussian_prefactor", e.breakdown.gaussian_prefactor},
                    {"kappa", e.breakdown.kappa}};
  Json orders = {{"ell0", e.orders.ell0}, {"r0", e.orders.r0}, {"p", e.orders.p}};
  if (std::isnan(e.orders.sigma)) orders["sigma"] = nullptr;
  else orders["sigma"] = e.orders.sigma;
  j["orders"] = orders;
  return j;
}

void flatten(const Json& j, const std::string& prefix, std::vector<std::string>& keys,
             std::vector<std::string>& values) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, keys, values);
    return;
  }
  keys.push_back(prefix);
  if (j.is_array()) {
    std::string joined;
    for (const auto& x : j) {
      if (!joined.empty()) joined += ',';
      joined += x.is_string() ? x.get<std::string>() : x.dump();
    }
    values.push_back(joined);
  } else {
    values.push_back(j.is_string() ? j.get<std::string>() : j.dump());
  }
}

void emit(const Json& j, const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << j.dump(2) << '\n';
    return;
  }
  std::vector<std::string> keys, values;
  flatten(j, "", keys, values);
  for (std::size_t i = 0; i < keys.size(); ++i) out << (i ? "\t" : "") << keys[i];
  out << '\n';
  for (std::size_t i = 0; i < values.size(); ++i) out << (i ? "\t" : "") << values[i];
  out << '\n';
}

std::string rational_string(const ExactRational& q) {
  return numerator(q).str() + "/" + denominator(q).str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Count degree-constrained subgraphs exactly and asymptotically", "factorx"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json";
  unsigned threads = 0;
  app.add_option("--output", format, "Output format")->check(CLI::IsMember({"json", "tsv"}));
  app.add_option("--threads", threads, "Worker threads for cumulant sums (0 = all cores)");

  InstanceFlags inst;
  auto* exact = app.add_subcommand("exact", "Exact d-factor count (big integer)");
  add_instance_flags(exact, inst);
  std::size_t state_budget = ExactOptions{}.state_budget;
  exact->add_option("--budget", state_budget, "Maximum DP states per layer");

  auto* estimate = app.add_subcommand("estimate", "Asymptotic estimate of the d-factor count");
  add_instance_flags(estimate, inst);
  EstimateOptions est_opts;
  std::optional<double> sigma;
  std::optional<int> ell0, r0;
  bool approx = false;
  double tol = BetaSolverOptions{}.tol;
  std::size_t cum_budget = CumulantOptions{}.budget;
  estimate->add_option("--p", est_opts.p, "Precision exponent");
  estimate->add_option("--sigma", sigma, "Density exponent");
  estimate->add_option("--ell0", ell0, "Taylor truncation degree");
  estimate->add_option("--r0", r0, "Highest cumulant order");
  estimate->add_option("--budget", cum_budget, "Maximum cumulant tuples per order");
  estimate->add_flag("--approx-beta", approx, "Use the closed-form beta instead of solving");
  estimate->add_option("--tol", tol, "Beta solver tolerance");

  auto* regular = app.add_subcommand("regular", "Expansion for the number of regular graphs");
  int reg_n = 0, reg_d = 0, reg_k = 7;
  bool conjectural = false;
  regular->add_option("--n", reg_n, "Number of vertices")->required();
  regular->add_option("--d", reg_d, "Degree")->required();
  regular->add_option("--k", reg_k, "Number of expansion terms");
  regular->add_flag("--conjectural", conjectural, "Allow the conjectural p_8 and p_9");

  auto* beta = app.add_subcommand("beta", "Solve the beta equations");
  add_instance_flags(beta, inst);
  int max_iter = BetaSolverOptions{}.max_iter;
  beta->add_flag("--approx", approx, "Report the closed-form approximation only");
  beta->add_option("--tol", tol, "Solver tolerance");
  beta->add_option("--max-iter", max_iter, "Newton iteration limit");

  auto* edgeprob = app.add_subcommand("edgeprob", "Probability that a random factor contains uv");
  add_instance_flags(edgeprob, inst);
  int eu = 0, ev = 0;
  bool with_exact = false;
  edgeprob->add_option("--u", eu, "First endpoint (1-based)")->required();
  edgeprob->add_option("--v", ev, "Second endpoint (1-based)")->required();
  edgeprob->add_flag("--exact", with_exact, "Also compute the exact probability");
  edgeprob->add_option("--tol", tol, "Beta solver tolerance");

  auto* check = app.add_subcommand("check", "Evaluate the assumption clauses");
  add_instance_flags(check, inst);
  AssumptionParams params;
  check->add_option("--sigma", params.sigma);
  check->add_option("--B", params.B);
  check->add_option("--C", params.C);
  check->add_option("--tauq", params.tau_Q);
  check->add_option("--eps", params.eps);
  check->add_option("--p", params.p);
  check->add_flag("--approx-beta", approx, "Use the closed-form beta");

  auto* selftest = app.add_subcommand("selftest", "Run built-in consistency checks");

  std::vector<const char*> argv{"factorx"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    Json result;
    if (*exact) {
      const auto g = load_graph(inst);
      const auto d = load_degrees(inst, g);
      result["n"] = g.order();
      result["degree_sum"] = d.sum();
      result["count"] = exact_factor_count(g, d, {state_budget}).str();
    } else if (*estimate) {
      const auto g = load_graph(inst);
      const auto d = load_degrees(inst, g);
      est_opts.sigma = sigma;
      est_opts.ell0 = ell0;
      est_opts.r0 = r0;
      est_opts.beta_source = approx ? BetaSource::approximate : BetaSource::solve;
      est_opts.solver.tol = tol;
      est_opts.cumulants = {cum_budget, threads};
      result = estimate_json(estimate_log_count(g, d, est_opts));
    } else if (*regular) {
      const auto r = rg_log_expansion(reg_n, reg_d, reg_k, conjectural);
      result["n"] = reg_n;
      result["d"] = reg_d;
      result["k"] = r.k;
      if (std::isinf(r.log_value)) {
        result["count_is_zero"] = true;
      } else {
        result["log_value"] = static_cast<double>(r.log_value);
        const auto sci = to_scientific(r.log_value);
        result["mantissa"] = sci.mantissa;
        result["exponent"] = sci.exponent;
        Json terms = Json::array();
        for (auto t : r.terms) terms.push_back(static_cast<double>(t));
        result["terms"] = terms;
        Json corr;
        corr["eps1"] = r.corrections.eps1 ? Json(static_cast<double>(*r.corrections.eps1)) : Json();
        corr["eps2"] = r.corrections.eps2 ? Json(static_cast<double>(*r.corrections.eps2)) : Json();
        corr["base_log"] = static_cast<double>(r.corrections.base_log);
        result["corrections"] = corr;
      }
      result["conjectural"] = r.conjectural;
    } else if (*beta) {
      const auto g = load_graph(inst);
      const auto d = load_degrees(inst, g);
      const BetaState s = approx ? make_beta_state(g, d, approx_beta(g, d))
                                 : solve_beta(g, d, {tol, max_iter});
      result["beta"] = vector_json(s.beta);
      result["delta_inf"] = s.delta_inf();
      result["delta_one"] = s.delta_one();
      result["lambda_bar"] = s.lambda_bar;
      result["Lambda"] = s.Lambda;
      result["iterations"] = s.iterations;
    } else if (*edgeprob) {
      const auto g = load_graph(inst);
      const auto d = load_degrees(inst, g);
      const int u = eu - 1, v = ev - 1;
      const auto s = solve_beta(g, d, {tol, BetaSolverOptions{}.max_iter});
      result["u"] = eu;
      result["v"] = ev;
      result["estimate"] = edge_probability_estimate(g, d, s, u, v);
      if (with_exact) {
        const auto q = exact_edge_probability(g, d, u, v);
        result["exact"] = rational_string(q);
        result["exact_value"] = static_cast<double>(q);
      }
    } else if (*check) {
      const auto g = load_graph(inst);
      const auto d = load_degrees(inst, g);
      const Eigen::VectorXd b = approx ? approx_beta(g, d) : solve_beta(g, d).beta;
      const auto r = check_assumptions(g, d, b, params);
      result["a"] = {{"pass", r.d_le_g.pass}, {"worst_excess", r.d_le_g.worst_excess}};
      result["b"] = {{"pass", r.beta_spread.pass}, {"spread", r.beta_spread.spread},
                     {"bound", r.beta_spread.bound}};
      result["c"] = {{"pass", r.lambda_lower.pass}, {"Lambda", r.lambda_lower.Lambda},
                     {"ratio", r.lambda_lower.ratio}, {"bound", r.lambda_lower.bound}};
      result["d"] = {{"pass", r.cheeger_and_q.pass},
                     {"h_lower_bound", r.cheeger_and_q.h.lower_bound},
                     {"h_exact", r.cheeger_and_q.h.exact.has_value()},
                     {"h_required", r.cheeger_and_q.h_required},
                     {"q", r.cheeger_and_q.q},
                     {"q_required", r.cheeger_and_q.q_required}};
      result["e"] = {{"pass", r.delta_norms.pass}, {"delta_inf", r.delta_norms.inf_norm},
                     {"delta_one", r.delta_norms.one_norm}, {"inf_ratio", r.delta_norms.inf_ratio},
                     {"one_ratio", r.delta_norms.one_ratio}};
      result["all_pass"] = r.all_pass();
      err << "assumptions: a=" << r.d_le_g.pass << " b=" << r.beta_spread.pass
          << " c=" << r.lambda_lower.pass << " d=" << r.cheeger_and_q.pass
          << " e=" << r.delta_norms.pass << '\n';
    } else if (*selftest) {
      const int failures = run_selftest(out);
      return failures == 0 ? 0 : 1;
    }
    emit(result, format, out);
    return 0;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace factorx

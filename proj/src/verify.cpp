#include "psgb/verify.hpp"

#include "psgb/least_squares.hpp"
#include "psgb/model.hpp"
#include "psgb/oracle.hpp"
#include "psgb/prox.hpp"
#include "psgb/solver.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <ostream>

namespace psgb {

GroupPartition make_random_partition(std::mt19937_64& rng, int n, int max_group) {
  std::uniform_int_distribution<int> size_dist(1, max_group);
  std::vector<std::vector<int>> groups;
  int next = 0;
  while (next < n) {
    const int size = std::min(size_dist(rng), n - next);
    std::vector<int> group(size);
    for (int j = 0; j < size; ++j) group[j] = next + j;
    groups.push_back(std::move(group));
    next += size;
  }
  return GroupPartition(n, std::move(groups));
}

BoxConstraint make_random_box(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.5);
  Vector l(n), u(n);
  for (int i = 0; i < n; ++i) {
    const double kind_l = unit(rng);
    const double kind_u = unit(rng);
    l[i] = kind_l < 0.15 ? 0.0 : (kind_l > 0.9 ? kInfinity : std::abs(gauss(rng)));
    u[i] = kind_u < 0.15 ? 0.0 : (kind_u > 0.9 ? kInfinity : std::abs(gauss(rng)));
  }
  return BoxConstraint(std::move(l), std::move(u));
}

RandomProxCase make_random_prox_case(std::mt19937_64& rng, int max_n, int max_group) {
  std::uniform_int_distribution<int> n_dist(1, max_n);
  std::uniform_real_distribution<double> log_penalty(-3.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 3.0);

  const int n = n_dist(rng);
  Vector s(n);
  for (int i = 0; i < n; ++i) s[i] = gauss(rng);

  RegularizationParams params;
  params.lambda = std::pow(10.0, log_penalty(rng));
  params.mu = std::pow(10.0, log_penalty(rng));
  params.tau = std::pow(10.0, log_penalty(rng));

  return RandomProxCase{std::move(s), params, make_random_box(rng, n),
                        make_random_partition(rng, n, max_group)};
}

namespace {

// Central finite differences with h = 1e-6*(1+|x_i|).
Vector finite_difference_gradient(const SmoothObjective& objective, const Vector& x) {
  Vector grad(x.size());
  Vector probe = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double h = 1e-6 * (1.0 + std::abs(x[i]));
    probe[i] = x[i] + h;
    const double fp = objective.value(probe);
    probe[i] = x[i] - h;
    const double fm = objective.value(probe);
    probe[i] = x[i];
    grad[i] = (fp - fm) / (2.0 * h);
  }
  return grad;
}

}  // namespace

VerificationReport run_verification(int trials, std::uint64_t seed, std::ostream& log) {
  std::mt19937_64 rng(seed);
  VerificationReport report;
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_int_distribution<int> dim_dist(2, 12);

  // Closed-form prox vs exhaustive pattern search.
  for (int t = 0; t < trials; ++t) {
    const RandomProxCase c = make_random_prox_case(rng);
    const Vector x = prox_sparse_group(c.s, c.params, c.box, c.partition);
    const ProxOracleResult oracle = brute_force_prox(c.s, c.params, c.box, c.partition);
    const double psi = prox_objective(x, c.s, c.params, c.box, c.partition);
    ++report.prox_trials;
    if (!(std::abs(psi - oracle.psi) <= 1e-10)) ++report.prox_failures;
  }
  log << "prox-vs-enumeration: " << report.prox_failures << "/" << report.prox_trials
      << " failures\n";

  // mu = 0 collapses to the elementwise threshold, exactly.
  for (int t = 0; t < trials; ++t) {
    RandomProxCase c = make_random_prox_case(rng);
    c.params.mu = 0.0;
    const Vector x = prox_sparse_group(c.s, c.params, c.box, c.partition);
    const Vector z =
        hard_threshold_l0(c.s, 2.0 * c.params.lambda * c.params.tau, c.box);
    ++report.reduction_trials;
    if (x != z) ++report.reduction_failures;
  }
  log << "group-free reduction: " << report.reduction_failures << "/"
      << report.reduction_trials << " failures\n";

  // Projection monotonicity / nonexpansiveness / variational inequality.
  for (int t = 0; t < trials; ++t) {
    const int n = dim_dist(rng);
    const BoxConstraint box = make_random_box(rng, n);
    Vector x(n), y(n);
    for (int i = 0; i < n; ++i) {
      x[i] = 3.0 * gauss(rng);
      y[i] = 3.0 * gauss(rng);
    }
    const Vector px = project_box(x, box);
    const Vector py = project_box(y, box);
    const Vector z = project_box(y, box);  // an arbitrary feasible point
    bool ok = (px - x).dot(z - px) >= -1e-12;
    ok = ok && (py - px).dot(y - x) >= -1e-12;
    ok = ok && (py - px).norm() <= (y - x).norm() + 1e-12;
    ++report.projection_trials;
    if (!ok) ++report.projection_failures;
  }
  log << "projection properties: " << report.projection_failures << "/"
      << report.projection_trials << " failures\n";

  // Gradient against central differences; smoothness bound against a
  // dense eigensolve.
  for (int t = 0; t < trials / 10 + 1; ++t) {
    const int m = dim_dist(rng) + 2;
    const int n = dim_dist(rng);
    Matrix A(m, n);
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < m; ++i) A(i, j) = gauss(rng);
    }
    Vector b(m);
    for (int i = 0; i < m; ++i) b[i] = gauss(rng);
    const LeastSquaresObjective objective(A, b);

    Vector x(n);
    for (int i = 0; i < n; ++i) x[i] = 2.0 * gauss(rng);
    const Vector g = objective.gradient(x);
    const Vector fd = finite_difference_gradient(objective, x);
    bool grad_ok = true;
    for (int i = 0; i < n; ++i) {
      if (std::abs(fd[i] - g[i]) > 1e-6 * (1.0 + std::abs(g[i]))) grad_ok = false;
    }
    ++report.gradient_trials;
    if (!grad_ok) ++report.gradient_failures;

    Eigen::SelfAdjointEigenSolver<Matrix> eig(A.transpose() * A);
    const double exact = eig.eigenvalues().maxCoeff();
    ++report.smoothness_trials;
    if (!(objective.smoothness_constant() >= exact)) ++report.smoothness_failures;
  }
  log << "gradient & smoothness: " << report.gradient_failures + report.smoothness_failures
      << "/" << report.gradient_trials + report.smoothness_trials << " failures\n";

  // Pattern-search minimizer passes the stationarity and support
  // optimality tests; the iterative solver never beats it.
  const int chain_trials = std::max(1, trials / 20);
  for (int t = 0; t < chain_trials; ++t) {
    const int n = 6;
    Matrix A(n, n);
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) A(i, j) = gauss(rng);
    }
    Vector b(n);
    for (int i = 0; i < n; ++i) b[i] = gauss(rng);
    const LeastSquaresObjective objective(A, b);
    const BoxConstraint box = BoxConstraint::uniform(n, 10.0);
    const GroupPartition partition = GroupPartition::contiguous(n, 2);

    RegularizationParams params;
    std::uniform_real_distribution<double> log_penalty(-2.0, -0.5);
    params.lambda = std::pow(10.0, log_penalty(rng));
    params.mu = std::pow(10.0, log_penalty(rng));
    params.tau = 0.99 / objective.smoothness_constant();

    const GlobalMinResult oracle = brute_force_global_min(objective, params, box, partition);

    SolverConfig config;
    config.params = params;
    config.tau_policy = TauPolicy::fraction_of_inverse_l(0.99);
    config.rel_change_tol = 1e-14;
    config.max_iterations = 50000;
    const SolveTrace trace = solve(objective, config, box, partition, Vector::Zero(n));
    const double solver_phi = phi(trace.final_iterate, objective, params, box, partition);

    bool ok = so_point_check(oracle.x, objective, box, 1e-6);
    ok = ok && check_tau_stationary(oracle.x, objective, params, box, partition, 1e-6);
    ok = ok && solver_phi >= oracle.phi - 1e-8 * (1.0 + std::abs(oracle.phi));
    ++report.chain_trials;
    if (!ok) ++report.chain_failures;
  }
  log << "optimality chain: " << report.chain_failures << "/" << report.chain_trials
      << " failures\n";

  return report;
}

}  // namespace psgb

// Copyright 2026 The uniest Authors
// SPDX-License-Identifier: Apache-2.0

#include "uniest/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "uniest/errors.hpp"
#include "uniest/linalg.hpp"

namespace uniest {

std::vector<std::uint64_t> sample_outcomes(std::span<const double> probabilities, std::uint64_t n,
                                           std::uint64_t seed) {
  if (probabilities.empty()) throw DomainError("sample_outcomes: empty distribution");
  if (n < 1) throw DomainError("sample_outcomes: need at least one sample");
  double total = 0.0;
  for (double p : probabilities) {
    if (!std::isfinite(p) || p < -1e-12) throw DomainError("sample_outcomes: probabilities must be nonnegative");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-10) {
    throw DomainError("sample_outcomes: probabilities sum to " + std::to_string(total));
  }
  Rng rng(seed);
  std::vector<std::uint64_t> counts(probabilities.size(), 0);
  std::uint64_t remaining = n;
  double mass = 1.0;
  for (std::size_t x = 0; x + 1 < probabilities.size() && remaining > 0; ++x) {
    const double p = std::max(probabilities[x], 0.0);
    const double q = mass > 0.0 ? std::clamp(p / mass, 0.0, 1.0) : 0.0;
    std::binomial_distribution<std::uint64_t> draw(remaining, q);
    counts[x] = draw(rng);
    remaining -= counts[x];
    mass -= p;
  }
  counts.back() += remaining;
  return counts;
}

double log_likelihood(std::span<const double> counts, const ChannelFamily& family, const Povm& povm,
                      const RVector& coords) {
  if (!family.in_domain(coords)) return -std::numeric_limits<double>::infinity();
  const RVector p = outcome_probabilities_pure(family.output_state(coords), povm);
  double ll = 0.0;
  for (Index x = 0; x < p.size(); ++x) {
    const double c = counts[static_cast<std::size_t>(x)];
    if (c == 0.0) continue;
    if (p(x) <= 0.0) return -std::numeric_limits<double>::infinity();
    ll += c * std::log(p(x));
  }
  return ll;
}

namespace {

struct Vertex {
  RVector x;
  double f;  // negative log-likelihood
};

double simplex_size(const std::vector<Vertex>& simplex) {
  double size = 0.0;
  for (std::size_t k = 1; k < simplex.size(); ++k) {
    size = std::max(size, (simplex[k].x - simplex[0].x).cwiseAbs().maxCoeff());
  }
  return size;
}

}  // namespace

MleResult mle(std::span<const double> counts, const ChannelFamily& family, const Povm& povm, const RVector& init,
              const MleOptions& options) {
  if (counts.size() != povm.size()) throw DomainError("mle: one count per POVM outcome is required");
  family.check_domain(init);
  const FisherMatrix fi = classical_fi(family.model(init), povm);
  const double fi_min = fi.min_eigenvalue();
  if (fi_min < options.identifiability) {
    std::ostringstream msg;
    msg << "mle: Fisher information at the initial point is singular (smallest eigenvalue " << fi_min
        << "); the parameters are not identifiable with this POVM";
    throw NonIdentifiableError(msg.str());
  }

  const auto objective = [&](const RVector& x) { return -log_likelihood(counts, family, povm, x); };
  const Index p = init.size();

  MleResult result;
  result.initial_log_likelihood = -objective(init);

  // Grid seeding over [init - r, init + r]^p.
  const int g = std::max(options.grid_points, 2);
  const double spacing = 2.0 * options.grid_radius / (g - 1);
  Vertex best{init, objective(init)};
  const double full = std::pow(static_cast<double>(g), static_cast<double>(p));
  if (full <= static_cast<double>(options.max_grid_evaluations)) {
    std::vector<int> idx(static_cast<std::size_t>(p), 0);
    for (;;) {
      RVector x(p);
      for (Index a = 0; a < p; ++a) x(a) = init(a) - options.grid_radius + spacing * idx[a];
      const double f = objective(x);
      if (f < best.f) best = {x, f};
      Index a = 0;
      while (a < p && ++idx[a] == g) idx[a++] = 0;
      if (a == p) break;
    }
  } else {
    Rng rng(derive_seed(0x6d6c65ULL, static_cast<std::uint64_t>(p)));
    std::uniform_real_distribution<double> offset(-options.grid_radius, options.grid_radius);
    for (std::size_t k = 0; k < options.max_grid_evaluations; ++k) {
      RVector x = init;
      for (Index a = 0; a < p; ++a) x(a) += offset(rng);
      const double f = objective(x);
      if (f < best.f) best = {x, f};
    }
  }

  // Nelder-Mead refinement.
  std::vector<Vertex> simplex{best};
  for (Index a = 0; a < p; ++a) {
    RVector x = best.x;
    x(a) += spacing;
    simplex.push_back({x, objective(x)});
  }
  const auto by_value = [](const Vertex& u, const Vertex& v) { return u.f < v.f; };
  int iter = 0;
  for (; iter < options.max_iterations; ++iter) {
    std::sort(simplex.begin(), simplex.end(), by_value);
    if (simplex_size(simplex) < options.simplex_tolerance) break;
    RVector centroid = RVector::Zero(p);
    for (Index k = 0; k < p; ++k) centroid += simplex[static_cast<std::size_t>(k)].x;
    centroid /= static_cast<double>(p);
    Vertex& worst = simplex.back();
    const Vertex reflected{centroid + (centroid - worst.x), objective(centroid + (centroid - worst.x))};
    if (reflected.f < simplex.front().f) {
      const RVector xe = centroid + 2.0 * (centroid - worst.x);
      const double fe = objective(xe);
      worst = fe < reflected.f ? Vertex{xe, fe} : reflected;
      continue;
    }
    if (reflected.f < simplex[simplex.size() - 2].f) {
      worst = reflected;
      continue;
    }
    const bool outside = reflected.f < worst.f;
    const RVector xc = outside ? RVector(centroid + 0.5 * (reflected.x - centroid))
                               : RVector(centroid + 0.5 * (worst.x - centroid));
    const double fc = objective(xc);
    if (fc < std::min(reflected.f, worst.f)) {
      worst = {xc, fc};
      continue;
    }
    for (std::size_t k = 1; k < simplex.size(); ++k) {
      simplex[k].x = simplex.front().x + 0.5 * (simplex[k].x - simplex.front().x);
      simplex[k].f = objective(simplex[k].x);
    }
  }
  std::sort(simplex.begin(), simplex.end(), by_value);
  if (iter == options.max_iterations) {
    throw ConvergenceError("mle: Nelder-Mead did not converge within " + std::to_string(options.max_iterations) +
                               " iterations",
                           simplex.front().x);
  }
  result.estimate = simplex.front().x;
  result.log_likelihood = -simplex.front().f;
  result.iterations = iter;
  if (result.log_likelihood < result.initial_log_likelihood) {
    result.estimate = init;
    result.log_likelihood = result.initial_log_likelihood;
  }
  return result;
}

double EstimationReport::trace_ratio() const { return covariance.trace() / predicted.trace(); }

double EstimationReport::crb_floor_min_eig() const {
  return min_eigenvalue(RMatrix(static_cast<double>(samples) * (covariance - predicted)));
}

EstimationReport covariance_study(const ChannelFamily& family, const RVector& theta0, const Povm& povm,
                                  std::uint64_t n, int reps, std::uint64_t seed, const MleOptions& options) {
  if (reps < 2) throw DomainError("covariance_study: need at least two repetitions");
  family.check_domain(theta0);
  const OutputModel model = family.model(theta0);
  const FisherMatrix fi = classical_fi(model, povm);
  const double fi_min = fi.min_eigenvalue();
  if (fi_min < options.identifiability) {
    std::ostringstream msg;
    msg << "covariance_study: Fisher information is singular (smallest eigenvalue " << fi_min
        << "); not every parameter is identifiable";
    throw NonIdentifiableError(msg.str());
  }
  const RVector probs = outcome_probabilities(model.rho, povm);
  const std::vector<double> p(probs.data(), probs.data() + probs.size());

  EstimationReport report;
  report.truth = theta0;
  report.samples = n;
  report.repetitions = reps;
  report.seed = seed;
  report.estimates.resize(static_cast<std::size_t>(reps));
  for (int r = 0; r < reps; ++r) {
    const std::vector<std::uint64_t> counts = sample_outcomes(p, n, derive_seed(seed, static_cast<std::uint64_t>(r)));
    const std::vector<double> weights(counts.begin(), counts.end());
    report.estimates[static_cast<std::size_t>(r)] = mle(weights, family, povm, theta0, options).estimate;
  }
  const Index dim = theta0.size();
  RVector mean = RVector::Zero(dim);
  for (const RVector& e : report.estimates) mean += e;
  mean /= reps;
  report.covariance = RMatrix::Zero(dim, dim);
  for (const RVector& e : report.estimates) report.covariance += (e - mean) * (e - mean).transpose();
  report.covariance /= (reps - 1);
  report.predicted = fi.entries.inverse() / static_cast<double>(n);
  return report;
}

InvarianceResult invariance_sweep(const ChannelFamily& family, const RVector& theta0, const RVector& theta1,
                                  const Povm& povm) {
  family.check_domain(theta0);
  family.check_domain(theta1);
  const CMatrix v = family.unitary_value(theta1) * family.unitary_value(theta0).adjoint();
  InvarianceResult result;
  result.conjugated = conjugate_first_factor(povm, v);
  result.merit0 = evaluate_merit(family.model(theta0), povm).value;
  result.merit1 = evaluate_merit(family.model(theta1), result.conjugated).value;
  result.difference = std::abs(result.merit1 - result.merit0);
  return result;
}

RMatrix qfi_at_identity(const BipartiteState& probe, const GeneratorBasis& basis) {
  std::vector<CMatrix> du;
  du.reserve(basis.size());
  for (const CMatrix& t : basis.generators()) du.push_back(kI * t);
  const Index d = probe.dim();
  return qfi_pure(output_model(CMatrix::Identity(d, d), du, probe)).entries;
}

namespace {

double top_eigenvalue(const RMatrix& h) { return eigenvalues_symmetric(h).maxCoeff(); }

}  // namespace

SearchReport counterexample_search(int d, std::uint64_t trials, std::uint64_t seed, const SearchOptions& options) {
  if (d < 2) throw DomainError("counterexample_search: d must be at least 2");
  const GeneratorBasis basis = gellmann_basis(d);
  Rng rng(seed);

  CMatrix best = CMatrix::Identity(d, d) / std::sqrt(static_cast<double>(d));
  double best_value = top_eigenvalue(qfi_at_identity(BipartiteState(best), basis));
  for (std::uint64_t t = 0; t < trials; ++t) {
    const BipartiteState candidate = random_bipartite_state(d, rng);
    const double value = top_eigenvalue(qfi_at_identity(candidate, basis));
    if (value > best_value) {
      best_value = value;
      best = candidate.amplitudes();
    }
  }

  // Coordinate-wise hill climb over the real and imaginary parts of R.
  double step = options.initial_step;
  int budget = options.hill_climb_budget;
  while (step >= options.final_step && budget > 0) {
    bool improved = false;
    for (Index k = 0; k < best.size() && budget > 0; ++k) {
      for (const Complex dir : {Complex(1, 0), Complex(-1, 0), Complex(0, 1), Complex(0, -1)}) {
        if (budget-- <= 0) break;
        CMatrix trial = best;
        trial(k) += step * dir;
        if (trial.norm() == 0.0) continue;
        const BipartiteState candidate = BipartiteState::normalized(trial);
        const double value = top_eigenvalue(qfi_at_identity(candidate, basis));
        if (value > best_value) {
          best_value = value;
          best = candidate.amplitudes();
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }

  SearchReport report;
  report.dim = d;
  report.best_amplitudes = best;
  report.best_qfi = qfi_at_identity(BipartiteState(best), basis);
  report.max_eigenvalue = top_eigenvalue(report.best_qfi);
  report.excess = report.max_eigenvalue - 4.0 / d;
  report.found = report.excess > options.threshold;
  report.trials = trials;
  report.seed = seed;
  return report;
}

}  // namespace uniest

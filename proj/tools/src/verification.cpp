// Copyright 2026 The uniest Authors
// SPDX-License-Identifier: Apache-2.0

#include "uniest/tools/verification.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

#include "uniest/uniest.hpp"

namespace uniest::tools {
namespace {

using std::numbers::pi;

std::string fmt(double x, const char* spec = "%.6g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

std::string sci(double x) { return fmt(x, "%.3e"); }

/// Collects the largest residual and any failed side conditions of one check.
class Tracker {
 public:
  void residual(double r) {
    if (!(r <= max_)) max_ = std::isnan(r) ? std::numeric_limits<double>::infinity() : r;
  }
  void require(bool condition, const std::string& what) {
    if (condition) return;
    ok_ = false;
    if (failures_++ < 3) notes_ << (notes_.tellp() > 0 ? "; " : "") << what;
  }
  void note(const std::string& what) { notes_ << (notes_.tellp() > 0 ? "; " : "") << what; }

  CheckResult finish(int id, std::string name, std::string expected, std::string computed, double tolerance,
                     const VerifyOptions& options) const {
    CheckResult r;
    r.id = id;
    r.name = std::move(name);
    r.expected = std::move(expected);
    r.computed = std::move(computed);
    r.residual = max_;
    r.tolerance = options.tolerance.value_or(tolerance);
    r.conditions_ok = ok_;
    r.detail = notes_.str();
    if (failures_ > 3) r.detail += "; ... " + std::to_string(failures_ - 3) + " more";
    return r;
  }

 private:
  double max_ = 0.0;
  bool ok_ = true;
  int failures_ = 0;
  std::ostringstream notes_;
};

/// Tracks min and max of a scalar across cases.
struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double x) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  std::string str() const { return lo == hi ? fmt(lo, "%.12g") : "[" + fmt(lo, "%.12g") + ", " + fmt(hi, "%.12g") + "]"; }
};

Rng check_rng(const VerifyOptions& options, int id) { return Rng(derive_seed(options.seed, static_cast<std::uint64_t>(id))); }

RVector polar_point(Rng& rng) {
  std::uniform_real_distribution<double> angle(0.2, pi - 0.2);
  std::uniform_real_distribution<double> azimuth(0.0, 2.0 * pi);
  RVector q(3);
  q << angle(rng), angle(rng), azimuth(rng);
  return q;
}

RVector exp_point(int d, Rng& rng, double scale = 0.4) {
  std::normal_distribution<double> normal(0.0, scale);
  RVector x(d * d - 1);
  for (Index a = 0; a < x.size(); ++a) x(a) = normal(rng);
  return x;
}

/// Cell-centred grid point i of n over [lo, hi].
double cell(double lo, double hi, int i, int n) { return lo + (hi - lo) * (i + 0.5) / n; }

double merit_of(const OutputModel& model, const Povm& povm) { return evaluate_merit(model, povm).value; }

const ChannelFamily& singlet_family() {
  static const ChannelFamily family(singlet(), Chart::kSu2Polar);
  return family;
}

CheckResult qfi_closed_form(const VerifyOptions& options) {
  Tracker t;
  Rng rng = check_rng(options, 1);
  for (int k = 0; k < 100; ++k) {
    const RVector q = polar_point(rng);
    const double sa = std::sin(q(0));
    const double st = std::sin(q(1));
    const RMatrix closed = Eigen::Vector3d(4.0, 4.0 * sa * sa, 4.0 * sa * sa * st * st).asDiagonal();
    t.residual(max_abs(RMatrix(qfi_pure(singlet_family().model(q)).entries - closed)));
  }
  return t.finish(1, "d=2 QFI closed form at 100 random polar points",
                  "H = 4 diag(1, sin^2 a, sin^2 a sin^2 t)", "entrywise agreement", 1e-9, options);
}

CheckResult bell_optimality(const VerifyOptions& options) {
  Tracker t;
  Range merits;
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      for (int k = 0; k < 5; ++k) {
        RVector q(3);
        // Ranges chosen so no cell centre hits pi/2 or pi, where a Bell probability
        // vanishes to second order and the 0/0 convention drops its information.
        q << cell(0.2, 2.9, i, 5), cell(0.2, 2.9, j, 5), cell(0.1, 6.1, k, 5);
        const OutputModel model = singlet_family().model(q);
        const FisherMatrix h = qfi_pure(model);
        t.residual(max_abs(RMatrix(classical_fi(model, bell_basis()).entries - h.entries)));
        const double m = merit(h, classical_fi(model, bell_basis())).value;
        merits.add(m);
        t.residual(std::abs(m - 3.0));
      }
    }
  }
  return t.finish(2, "Bell basis: I = H and merit 3 on a 5x5x5 grid", "I = H, merit 3", "merit " + merits.str(),
                  1e-9, options);
}

CheckResult bell_variants(const VerifyOptions& options) {
  Tracker t;
  Rng rng = check_rng(options, 3);
  Range reduced;
  Range lo;
  Range shared;
  const std::vector<Povm> parts{reduced_bell(1), reduced_bell(2), reduced_bell(3)};
  const Povm time_share = time_shared(parts, std::vector<double>(3, 1.0 / 3.0));
  for (int n = 0; n < 20; ++n) {
    const OutputModel model = singlet_family().model(polar_point(rng));
    for (int k = 1; k <= 4; ++k) {
      const Povm povm = reduced_bell(k);
      const double m = merit_of(model, povm);
      reduced.add(m);
      t.residual(std::abs(m - 1.0));
      t.require(classical_fi(model, povm).rank() == 1, "reduced Bell k=" + std::to_string(k) + " FI rank is not 1");
    }
    for (int k = 1; k <= 4; ++k) {
      for (int l = k + 1; l <= 4; ++l) {
        const Povm povm = linear_optics_bell(k, l);
        const double m = merit_of(model, povm);
        lo.add(m);
        t.residual(std::abs(m - 2.0));
        t.require(classical_fi(model, povm).rank() == 2, "linear-optics Bell FI rank is not 2");
      }
    }
    const double m = merit_of(model, time_share);
    shared.add(m);
    t.residual(std::abs(m - 1.0));
    t.require(classical_fi(model, time_share).rank() == 3, "time-shared reduced Bell FI rank is not 3");
  }
  return t.finish(3, "Reduced, linear-optics and time-shared Bell merits at 20 points",
                  "1 (rank 1), 2 (rank 2), time-share 1 (rank 3)",
                  "reduced " + reduced.str() + ", lo " + lo.str() + ", time-share " + shared.str(), 1e-9, options);
}

CheckResult local_spin(const VerifyOptions& options) {
  Tracker t;
  Rng rng = check_rng(options, 4);
  Range merits;
  const Povm povm = local_spin_povm();
  for (int n = 0; n < 20; ++n) {
    const OutputModel model = singlet_family().model(polar_point(rng));
    const double m = merit_of(model, povm);
    merits.add(m);
    t.residual(std::abs(m - 1.0));
    t.require(classical_fi(model, povm).rank() == 3, "local-spin FI is not full rank");
  }
  return t.finish(4, "Local-spin (nine product bases) merit at 20 points", "1", merits.str(), 1e-9, options);
}

CheckResult separable_identity(const VerifyOptions& options) {
  Tracker t;
  Rng rng = check_rng(options, 5);
  std::string computed;
  for (int d = 2; d <= 5; ++d) {
    const ChannelFamily family(max_entangled(d), Chart::kExp);
    Range merits;
    for (int i = 0; i < 20; ++i) {
      const Povm povm = random_product_povm(d, 1 + i % 3, rng());
      const double m = merit_of(family.model(exp_point(d, rng)), povm);
      merits.add(m);
      t.residual(std::abs(m - d * (d - 1) / 2.0));
    }
    computed += (d > 2 ? ", " : "") + ("d=" + std::to_string(d) + ": " + merits.str());
  }
  return t.finish(5, "Separable identity: 20 random product POVMs for each d in 2..5",
                  "d(d-1)/2 = 1, 3, 6, 10", computed, 1e-9, options);
}

CheckResult general_qfi(const VerifyOptions& options) {
  Tracker t;
  for (int d = 2; d <= 6; ++d) {
    const ChannelFamily family(max_entangled(d), Chart::kExp);
    const RMatrix h = qfi_pure(family.model(RVector::Zero(d * d - 1))).entries;
    t.residual(max_abs(RMatrix(h - (4.0 / d) * RMatrix::Identity(d * d - 1, d * d - 1))));
  }
  return t.finish(6, "Max-entangled QFI at the identity for d in 2..6", "H = (4/d) identity",
                  "entrywise agreement", 1e-9, options);
}

CheckResult matsumoto_attains(const VerifyOptions& options) {
  Tracker t;
  Rng rng = check_rng(options, 7);
  Range d2;
  for (int k = 0; k < 5; ++k) {
    const OutputModel model = singlet_family().model(polar_point(rng));
    const FisherMatrix h = qfi_pure(model);
    const Povm povm = matsumoto_povm(model, h, MatsumotoConfig::householder(3));
    const FisherMatrix i = classical_fi(model, povm);
    t.residual(max_abs(RMatrix(i.entries - h.entries)));
    const double m = merit(h, i).value;
    d2.add(m);
    t.residual(std::abs(m - 3.0));
  }
  const ChannelFamily family(max_entangled(3), Chart::kExp);
  const OutputModel model = family.model(RVector::Zero(8));
  const FisherMatrix h = qfi_pure(model);
  const FisherMatrix i = classical_fi(model, matsumoto_povm(model, h, MatsumotoConfig::householder(8)));
  t.residual(max_abs(RMatrix(i.entries - h.entries)));
  const double m3 = merit(h, i).value;
  t.residual(std::abs(m3 - 8.0));
  return t.finish(7, "Matsumoto measurement attains the QFI (5 points at d=2, identity at d=3)",
                  "I = H; merit 3 and 8", "merit d=2 " + d2.str() + ", d=3 " + fmt(m3, "%.12g"), 1e-8, options);
}

CheckResult advantage_ratio(const VerifyOptions& options) {
  Tracker t;
  Rng rng = check_rng(options, 8);
  std::string computed;
  for (int d = 2; d <= 4; ++d) {
    const ChannelFamily family(max_entangled(d), Chart::kExp);
    const OutputModel model = family.model(RVector::Zero(d * d - 1));
    const FisherMatrix h = qfi_pure(model);
    const int p = d * d - 1;
    const double entangled = merit(h, classical_fi(model, matsumoto_povm(model, h, MatsumotoConfig::householder(p)))).value;
    const double separable = merit_of(model, random_product_povm(d, 2, rng()));
    const double ratio = entangled / separable;
    t.residual(std::abs(ratio - 2.0 * (d + 1) / d));
    computed += (d > 2 ? ", " : "") + fmt(ratio, "%.12g");
  }
  return t.finish(8, "Entangled over separable merit ratio for d = 2, 3, 4", "2(d+1)/d = 3, 8/3, 5/2", computed,
                  1e-9, options);
}

CheckResult qcrb_sweep(const VerifyOptions& options) {
  Tracker t;
  Rng rng = check_rng(options, 9);
  Range merit_over_p;
  double worst = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 200; ++k) {
    const int d = 2 + k % 3;
    const int p = d * d - 1;
    const ChannelFamily family(random_bipartite_state(d, rng), Chart::kExp);
    const OutputModel model = family.model(exp_point(d, rng));
    Povm povm;
    switch (k % 4) {
      case 0: povm = random_product_povm(d, 1 + k % 3, rng()); break;
      case 1: povm = d == 2 ? bell_basis() : random_povm(d * d, d * d, rng); break;
      default: povm = random_povm(d * d, 2 + k % 17, rng); break;
    }
    const FisherMatrix h = qfi_pure(model);
    const FisherMatrix i = classical_fi(model, povm);
    const QcrbVerdict verdict = qcrb_check(h, i);
    worst = std::min(worst, verdict.min_eigenvalue);
    t.residual(std::max(0.0, -verdict.min_eigenvalue));
    try {
      const double m = merit(h, i).value;
      merit_over_p.add(m - p);
      t.require(m <= p + 1e-8, "merit " + fmt(m) + " exceeds p = " + std::to_string(p));
    } catch (const SingularMatrixError& e) {
      t.require(false, e.what());
    }
  }
  return t.finish(9, "QCRB on 200 random (POVM, point, d<=4) cases", "min eig(H - I) >= 0, merit <= p",
                  "min eig(H - I) = " + sci(worst) + ", merit - p in " + merit_over_p.str(), 1e-9, options);
}

CheckResult achievability(const VerifyOptions& options) {
  Tracker t;
  Rng rng = check_rng(options, 10);
  double max_entangled_gap = 0.0;
  for (int d = 2; d <= 4; ++d) {
    const ChannelFamily family(max_entangled(d), Chart::kExp);
    for (int k = 0; k < 10; ++k) {
      const double gap = achievability_gap(family.model(exp_point(d, rng))).max_abs;
      max_entangled_gap = std::max(max_entangled_gap, gap);
      t.residual(gap);
    }
  }
  double smallest_gap = std::numeric_limits<double>::infinity();
  double formula = 0.0;
  int accepted = 0;
  while (accepted < 100) {
    const int d = 2 + accepted % 3;
    const BipartiteState probe = random_bipartite_state(d, rng);
    if (probe.entanglement_deviation() <= 1e-3) continue;
    ++accepted;
    const ChannelFamily family(probe, Chart::kExp);
    const AchievabilityGap at_identity = achievability_gap(family.model(RVector::Zero(d * d - 1)));
    formula = std::max(formula, max_abs(RMatrix(at_identity.matrix - commutator_gap(probe, family.basis()))));
    const double gap = achievability_gap(family.model(exp_point(d, rng))).max_abs;
    smallest_gap = std::min({smallest_gap, gap, at_identity.max_abs});
  }
  t.residual(formula);
  t.require(smallest_gap > 1e-8, "a non-maximally-entangled probe has gap " + sci(smallest_gap));
  return t.finish(10, "Achievability gap vanishes exactly for maximally entangled probes",
                  "gap < 1e-10 (max-entangled), > 1e-8 (100 others), commutator formula at identity",
                  "max-entangled gap " + sci(max_entangled_gap) + ", smallest other gap " + sci(smallest_gap) +
                      ", formula mismatch " + sci(formula),
                  1e-10, options);
}

CheckResult refinement(const VerifyOptions& options) {
  Tracker t;
  Rng rng = check_rng(options, 11);
  double worst = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 50; ++k) {
    const int d = 2 + k % 2;
    const Povm fine = random_product_povm(d, 1 + k % 3, rng());
    std::uniform_int_distribution<std::size_t> pick(0, fine.size() - 1);
    const std::size_t i = pick(rng);
    std::size_t j = pick(rng);
    while (j == i) j = pick(rng);
    const Povm coarse = merge_elements(fine, i, j);
    const ChannelFamily family(random_bipartite_state(d, rng), Chart::kExp);
    const OutputModel model = family.model(exp_point(d, rng));
    const RMatrix diff = classical_fi(model, refine_separable(coarse)).entries - classical_fi(model, coarse).entries;
    const double m = min_eigenvalue(diff);
    worst = std::min(worst, m);
    t.residual(std::max(0.0, -m));
  }
  return t.finish(11, "Refinement of 50 coarsened product POVMs never loses information",
                  "I(refined) - I(coarse) PSD", "min eigenvalue " + sci(worst), 1e-9, options);
}

CheckResult invariance(const VerifyOptions& options) {
  Tracker t;
  Rng rng = check_rng(options, 12);
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    InvarianceResult r;
    if (k % 2 == 0) {
      const Povm povm = k % 4 == 0 ? random_product_povm(2, 2, rng()) : random_povm(4, 3 + k % 5, rng);
      r = invariance_sweep(singlet_family(), polar_point(rng), polar_point(rng), povm);
    } else {
      const ChannelFamily family(random_bipartite_state(3, rng), Chart::kExp);
      r = invariance_sweep(family, exp_point(3, rng), exp_point(3, rng), random_povm(9, 4 + k % 9, rng));
    }
    t.require(r.conjugated.size() > 0 && validate(r.conjugated).ok(), "conjugated POVM is invalid");
    worst = std::max(worst, r.difference);
    t.residual(r.difference);
  }
  return t.finish(12, "Merit invariance under (V (x) 1) conjugation on 50 random triples", "difference 0",
                  "max difference " + sci(worst), 1e-9, options);
}

CheckResult bures(const VerifyOptions& options) {
  Tracker t;
  Rng rng = check_rng(options, 13);
  std::normal_distribution<double> normal;
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const RVector q = polar_point(rng);
    RVector delta(3);
    for (Index a = 0; a < 3; ++a) delta(a) = normal(rng);
    delta *= 1e-3 / delta.norm();
    const RMatrix h = qfi_pure(singlet_family().model(q)).entries;
    const double quadratic = 0.25 * delta.dot(h * delta);
    const double exact =
        bures_distance_sq(singlet_family().output_state(q), singlet_family().output_state(RVector(q + delta)));
    worst = std::max(worst, std::abs(exact - quadratic) / quadratic);
    t.residual(worst);
  }
  return t.finish(13, "Bures distance against (1/4) delta^T H delta at |delta| = 1e-3, 20 points",
                  "relative error < 1e-2", "max relative error " + sci(worst), 1e-2, options);
}

CheckResult covariance(const VerifyOptions& options) {
  Tracker t;
  const auto start = std::chrono::steady_clock::now();
  constexpr int kReps = 200;
  RVector theta0(3);
  theta0 << 0.9, 1.0, 2.1;
  const EstimationReport report =
      covariance_study(singlet_family(), theta0, bell_basis(), 10000, kReps, derive_seed(options.seed, 14));
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const double ratio = report.trace_ratio();
  t.residual(std::max({0.0, 0.8 - ratio, ratio - 1.25}));
  t.require(seconds < 60.0, "study took " + fmt(seconds) + " s");
  const RMatrix inverse_fi = report.predicted * static_cast<double>(report.samples);
  const double floor = -5.0 / std::sqrt(static_cast<double>(kReps)) * eigenvalues_symmetric(inverse_fi).maxCoeff();
  t.require(report.crb_floor_min_eig() >= floor, "N V - I^-1 has min eigenvalue " + sci(report.crb_floor_min_eig()));
  t.note("runtime " + fmt(seconds, "%.1f") + " s, min eig(N V - I^-1) " + sci(report.crb_floor_min_eig()));
  return t.finish(14, "Bell covariance study, N = 1e4, 200 repetitions", "tr(V) N / tr(H^-1) in [0.8, 1.25]",
                  fmt(ratio, "%.4f"), 0.0, options);
}

CheckResult counterexample(const VerifyOptions& options) {
  Tracker t;
  const SearchReport qubits = counterexample_search(2, 10000, derive_seed(options.seed, 15));
  t.residual(std::max(0.0, qubits.max_eigenvalue - 2.0));
  t.require(!qubits.found, "d=2 search reported an excess");
  const SearchReport qutrits = counterexample_search(3, 10000, derive_seed(options.seed, 16));
  if (qutrits.found) {
    t.note("d=3 witness found, excess " + sci(qutrits.excess));
    if (options.witness_out) write_text_file(*options.witness_out, report_to_text(qutrits));
  } else {
    t.note("d=3 search found no excess in 10000 trials");
  }
  if (options.witness_fixture) {
    const SearchReport frozen = search_report_from_text(read_text_file(*options.witness_fixture));
    const RMatrix h = qfi_at_identity(BipartiteState(frozen.best_amplitudes), gellmann_basis(frozen.dim));
    const double top = eigenvalues_symmetric(h).maxCoeff();
    t.require(std::abs(top - frozen.max_eigenvalue) < 1e-9, "frozen witness no longer reproduces its eigenvalue");
    t.require(top > 4.0 / frozen.dim + 1e-6, "frozen witness has no excess");
    t.note("frozen witness excess " + sci(top - 4.0 / frozen.dim));
  }
  return t.finish(15, "Counterexample search: none for d=2 (1e4 trials), d=3 reported",
                  "d=2 max eigenvalue <= 2 + 1e-6", "d=2 max eigenvalue " + fmt(qubits.max_eigenvalue, "%.12g"), 1e-6,
                  options);
}

}  // namespace

const std::vector<CheckFn>& acceptance_checks() {
  static const std::vector<CheckFn> checks{
      qfi_closed_form, bell_optimality,  bell_variants, local_spin,   separable_identity,
      general_qfi,     matsumoto_attains, advantage_ratio, qcrb_sweep, achievability,
      refinement,      invariance,       bures,          covariance,   counterexample};
  return checks;
}

CheckResult run_check(int id, const VerifyOptions& options) {
  const auto& checks = acceptance_checks();
  if (id < 1 || id > static_cast<int>(checks.size())) throw DomainError("no acceptance check " + std::to_string(id));
  const auto start = std::chrono::steady_clock::now();
  CheckResult result;
  try {
    result = checks[static_cast<std::size_t>(id - 1)](options);
  } catch (const std::exception& e) {
    result.id = id;
    result.name = "check " + std::to_string(id);
    result.conditions_ok = false;
    result.residual = std::numeric_limits<double>::infinity();
    result.tolerance = options.tolerance.value_or(0.0);
    result.detail = std::string("error: ") + e.what();
  }
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::vector<CheckResult> run_acceptance_suite(const VerifyOptions& options) {
  std::vector<CheckResult> results;
  for (int id = 1; id <= static_cast<int>(acceptance_checks().size()); ++id) results.push_back(run_check(id, options));
  return results;
}

std::string format_check(const CheckResult& r) {
  std::ostringstream out;
  char id[8];
  std::snprintf(id, sizeof id, "%02d", r.id);
  out << (r.passed() ? "PASS " : "FAIL ") << id << ' ' << r.name << " | expected " << r.expected << " | computed "
      << r.computed << " | residual " << sci(r.residual) << " (tol " << sci(r.tolerance) << ")";
  if (!r.detail.empty()) out << " | " << r.detail;
  out << " | " << fmt(r.seconds, "%.2f") << " s";
  return out.str();
}

nlohmann::json check_to_json(const CheckResult& r) {
  return nlohmann::json{{"id", r.id},
                        {"name", r.name},
                        {"expected", r.expected},
                        {"computed", r.computed},
                        {"residual", r.residual},
                        {"tolerance", r.tolerance},
                        {"conditions_ok", r.conditions_ok},
                        {"passed", r.passed()},
                        {"detail", r.detail},
                        {"seconds", r.seconds}};
}

}  // namespace uniest::tools

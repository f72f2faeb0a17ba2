#include "pvfilter/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>

#include "pvfilter/contour.hpp"
#include "pvfilter/dirac.hpp"
#include "pvfilter/errors.hpp"
#include "pvfilter/fit.hpp"
#include "pvfilter/oscillator.hpp"
#include "pvfilter/power_counting.hpp"
#include "pvfilter/reg_algebra.hpp"

namespace pvfilter::verify {

namespace {

using Rng = std::mt19937_64;

class Recorder {
 public:
  Recorder(std::string module, const Options& options, std::vector<Check>& out)
      : module_(std::move(module)), options_(options), out_(out) {}

  void at_most(const std::string& name, double residual, double tolerance) {
    const double tol = options_.tolerance.value_or(tolerance);
    out_.push_back({module_, name, residual, tol, false, residual <= tol});
  }
  void above(const std::string& name, double residual, double threshold) {
    out_.push_back({module_, name, residual, threshold, true, residual > threshold});
  }

 private:
  std::string module_;
  const Options& options_;
  std::vector<Check>& out_;
};

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Ascending ladder with neighbour ratios in [min_ratio, max_ratio].
MassLadder random_ladder(Rng& rng, std::size_t n_reg, double min_ratio = 1.5,
                         double max_ratio = 4.0) {
  std::vector<double> m{uniform(rng, 0.5, 2.0)};
  for (std::size_t k = 0; k < n_reg; ++k) {
    m.push_back(m.back() * uniform(rng, min_ratio, max_ratio));
  }
  return MassLadder(std::move(m));
}

// Random z kept at least 0.05 * M away from every pole.
Complex random_z(Rng& rng, const MassLadder& ladder, double radius) {
  while (true) {
    const Complex z(uniform(rng, -radius, radius), uniform(rng, -radius, radius));
    bool ok = true;
    for (double m : ladder.masses()) ok = ok && std::abs(z - m) > 0.05 * m;
    if (ok) return z;
  }
}

void reg_algebra_checks(Recorder& rec) {
  Rng rng(20240101);
  double reconstruction = 0.0;
  double recursion = 0.0;
  double sum_rules = 0.0;
  for (std::size_t n = 0; n <= 6; ++n) {
    for (int trial = 0; trial < 4; ++trial) {
      const MassLadder ladder = random_ladder(rng, n);
      const PartialFractionDecomposition pfd = decompose(ladder);
      for (double r : sum_rule_residuals(pfd, ladder)) sum_rules = std::max(sum_rules, r);
      for (int i = 0; i < 200; ++i) {
        const Complex z = random_z(rng, ladder, 2.0 * ladder.max_mass());
        const Complex g = g_f_scalar(ladder, 0, n, z);
        reconstruction =
            std::max(reconstruction, std::abs(reconstruct(pfd, ladder, z) - g) / std::abs(g));
      }
      for (std::size_t L = 1; L <= n; ++L) {
        for (std::size_t K = 0; K < L; ++K) {
          const Complex z = random_z(rng, ladder, 2.0 * ladder.max_mass());
          recursion = std::max(recursion, recursion_residual(ladder, K, L, z));
        }
      }
    }
  }
  rec.at_most("reconstruction", reconstruction, 1e-10);
  rec.at_most("recursion", recursion, 1e-12);
  rec.at_most("sum_rules", sum_rules, 1e-12);

  double sign_mismatches = 0.0;
  for (std::size_t n = 0; n <= 6; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      const PartialFractionDecomposition pfd = decompose(random_ladder(rng, n, 1.05, 10.0));
      for (std::size_t k = 0; k <= n; ++k) {
        if (pfd.signs[k] != (k % 2 == 0 ? 1 : -1)) sign_mismatches += 1.0;
      }
    }
  }
  rec.at_most("sign_pattern", sign_mismatches, 0.0);

  double sigma01 = 0.0;
  double sigma_high = 0.0;
  for (std::size_t n = 1; n <= 6; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      const PartialFractionDecomposition pfd = decompose(random_ladder(rng, n, 100.0, 1000.0));
      sigma01 = std::max({sigma01, std::abs(pfd.weights[0] - 1.0),
                          std::abs(pfd.weights[1] - 1.0)});
      for (std::size_t k = 2; k <= n; ++k) sigma_high = std::max(sigma_high, pfd.weights[k]);
    }
  }
  rec.at_most("typical_case_sigma01", sigma01, 0.01);
  rec.at_most("typical_case_sigma_high", sigma_high, 0.15);

  double falloff = 0.0;
  for (std::size_t n = 0; n <= 4; ++n) {
    const MassLadder ladder = random_ladder(rng, n);
    std::vector<double> r, g;
    const Complex dir = std::polar(1.0, 0.7);
    for (int i = 0; i <= 8; ++i) {
      const double radius = 1e3 * ladder.max_mass() * std::pow(10.0, 0.25 * i);
      r.push_back(radius);
      g.push_back(std::abs(g_f_scalar(ladder, 0, n, radius * dir)));
    }
    falloff = std::max(falloff, std::abs(fit_loglog_slope(r, g) + double(n + 1)));
  }
  rec.at_most("falloff_slope", falloff, 0.05);
}

void contour_checks(Recorder& rec) {
  const MassLadder ladder({1.0, 10.0});
  const double eps = 1e-4;
  const double cutoff = 1e5;
  const double tol = oracle_tolerance(ladder, eps, cutoff);
  double worst = 0.0;
  double feyn_vs_ret = 0.0;
  double plus_minus = 0.0;
  for (std::size_t L = 0; L < ladder.size(); ++L) {
    for (std::size_t K = 0; K <= L; ++K) {
      for (double tau : {-2.0, -0.5, 0.1, 0.5, 2.0}) {
        for (Contour c : {Contour::kFeynman, Contour::kRetarded, Contour::kClosed,
                          Contour::kPlus, Contour::kMinus}) {
          const Complex exact = time_domain_propagator(ladder, c, K, L, tau);
          const Complex numeric = numeric_contour_oracle(ladder, c, K, L, tau, eps, cutoff);
          worst = std::max(worst, std::abs(exact - numeric) / tol);
        }
        feyn_vs_ret = std::max(
            feyn_vs_ret, std::abs(time_domain_propagator(ladder, Contour::kFeynman, K, L, tau) -
                                  time_domain_propagator(ladder, Contour::kRetarded, K, L, tau)));
        plus_minus = std::max(
            plus_minus, std::abs(time_domain_propagator(ladder, Contour::kPlus, K, L, tau) +
                                 time_domain_propagator(ladder, Contour::kMinus, K, L, tau) -
                                 time_domain_propagator(ladder, Contour::kClosed, K, L, tau)));
      }
    }
  }
  rec.at_most("residue_vs_quadrature", worst, 1.0);
  rec.at_most("feynman_equals_retarded", feyn_vs_ret, 1e-14);
  rec.at_most("plus_plus_minus_is_closed", plus_minus, 1e-12);

  double continuity = 0.0;
  double order_mismatch = 0.0;
  for (const MassLadder& l : {MassLadder({1.0, 10.0}), MassLadder({1.0, 2.0, 4.0}),
                              MassLadder({1.0, 3.0, 7.0, 15.0, 31.0})}) {
    const std::size_t n = l.regulators();
    const PartialFractionDecomposition pfd = decompose(l);
    continuity = std::max(
        continuity, std::abs(time_domain_propagator(l, Contour::kFeynman, 0, n, 0.0)));
    for (std::size_t j = 0; j < n; ++j) {
      double scale = 0.0;
      for (std::size_t k = 0; k < l.size(); ++k) {
        scale += std::abs(pfd.coefficients[k]) * std::pow(l[k], double(j));
      }
      continuity = std::max(continuity,
                            std::abs(derivative_jump(l, 0, n, static_cast<int>(j))) / scale);
    }
    order_mismatch += std::abs(smoothness_order(l) - static_cast<int>(n));
  }
  rec.at_most("regularised_smoothness", continuity, 1e-10);
  rec.at_most("smoothness_order_is_N", order_mismatch, 0.0);

  const MassLadder bare({1.0});
  std::vector<double> log_cut, values;
  for (double c : {1e3, 1e4, 1e5, 1e6}) {
    log_cut.push_back(std::log(c));
    values.push_back(std::abs(cutoff_probe(bare, c)));
  }
  rec.at_most("bare_loop_log_growth", std::abs(fit_slope(log_cut, values) - 1.0), 0.05);
  rec.at_most("regularised_loop_cutoff_stable",
              std::abs(cutoff_probe(ladder, 2e4) - cutoff_probe(ladder, 1e4)), 1e-3);
}

void oscillator_checks(Recorder& rec) {
  Rng rng(7);
  const int n_max = 8;
  double dual = 0.0;
  double hermitian = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    const double w0 = uniform(rng, 0.5, 2.0);
    const FilterSystem sys(w0, w0 * uniform(rng, 2.0, 20.0));
    const DualOperators d = build_dual_operators(sys, n_max);
    const std::array<const OperatorMatrix*, 2> a{&d.a_0, &d.a_1};
    const std::array<const OperatorMatrix*, 2> b{&d.b0_dag, &d.b1_dag};
    for (int L = 0; L < 2; ++L) {
      for (int K = 0; K < 2; ++K) {
        const Matrix comm =
            a[L]->matrix * b[K]->matrix - b[K]->matrix * a[L]->matrix;
        const Matrix expected =
            (L == K ? 1.0 : 0.0) * Matrix::Identity(comm.rows(), comm.cols());
        dual = std::max(dual, protected_residual({n_max, comm}, expected));
      }
    }
    const OperatorMatrix h = hamiltonian_matrix(sys, n_max, uniform(rng, -2.0, 2.0));
    hermitian = std::max(
        hermitian, (pseudo_adjoint(h, sign_operator(n_max)).matrix - h.matrix).cwiseAbs().maxCoeff());
  }
  rec.at_most("dual_commutators", dual, 1e-13);
  rec.at_most("pseudo_hermitian_hamiltonian", hermitian, 1e-13);

  const FilterSystem sys(1.0, 10.0);
  rec.at_most("free_hamiltonian_equivalence",
              (hamiltonian_matrix(sys, n_max, 0.0).matrix -
               free_oscillator_hamiltonian(sys, n_max).matrix)
                  .norm(),
              1e-12);

  double kubo = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double tau = 10.0 * i / 199.0;
    const Complex lhs = tau > 0.0 ? Complex(0.0, 1.0) * kubo_commutator(sys, n_max, tau)
                                  : Complex(0.0, 0.0);
    kubo = std::max(kubo, std::abs(lhs - response_function(sys, tau)));
  }
  rec.at_most("kubo_equals_response", kubo, 1e-8);
  rec.at_most("response_regular_at_zero",
              std::max(std::abs(response_function(sys, 0.0)),
                       std::abs(response_function(sys, 1e-9))),
              1e-7);

  const DriveSignal drive = DriveSignal::gaussian(0.1, 1.0);
  const double step = drive.width / 200.0;
  const TransferMatrix whole = evolve_transfer(sys, drive, -8.0, 8.0, step);
  const TransferMatrix split =
      evolve_transfer(sys, drive, 0.0, 8.0, step) * evolve_transfer(sys, drive, -8.0, 0.0, step);
  rec.at_most("transfer_composition", (whole - split).cwiseAbs().maxCoeff(), 1e-8);
  rec.at_most("transfer_step_halving",
              (whole - evolve_transfer(sys, drive, -8.0, 8.0, step / 2.0)).cwiseAbs().maxCoeff(),
              1e-9);

  double worst_slope = 0.0;
  for (int order = 1; order <= 3; ++order) {
    std::vector<double> amplitudes, residuals;
    for (double v0 : {0.01, 0.02, 0.04}) {
      const DriveSignal d = DriveSignal::gaussian(v0, 1.0);
      const Complex exact = evolve_transfer(sys, d, d.t_min, d.t_max, step)(0, 0);
      const std::vector<Complex> terms = born_series(sys, d, order, step);
      Complex partial(0.0, 0.0);
      for (const Complex& t : terms) partial += t;
      amplitudes.push_back(v0);
      residuals.push_back(std::abs(exact - partial) / std::abs(exact));
    }
    worst_slope = std::max(worst_slope,
                           std::abs(fit_loglog_slope(amplitudes, residuals) - (order + 1)));
  }
  rec.at_most("born_truncation_scaling", worst_slope, 0.2);

  const SectorMatrix s = sector_s_matrix(sys, drive, 1, step);
  rec.at_most("s_matrix_pseudo_unitary", pseudo_unitarity_defect(s), 1e-8);
  rec.at_most("s_matrix_matches_transfer",
              std::abs(dual_amplitude_from_s(sys, drive, s) - whole(0, 0)), 1e-8);
  const DriveSignal kick = DriveSignal::gaussian(0.5, 0.1);
  rec.above("s_matrix_not_unitary",
            unitarity_defect(sector_s_matrix(sys, kick, 1, kick.width / 200.0)), 1e-3);

  double tadpole = 0.0;
  for (double v0 : {0.0, 0.1, 0.5, 2.0}) {
    for (double width : {0.5, 1.0, 3.0}) {
      tadpole = std::max(tadpole, std::abs(vacuum_tadpole(sys, DriveSignal::gaussian(v0, width))));
    }
  }
  rec.at_most("regularised_tadpole_vanishes", tadpole, 0.0);
}

void dirac_checks(Recorder& rec) {
  Rng rng(1234);
  const GammaSet g = GammaSet::dirac();
  rec.at_most("clifford_relations", clifford_residual(g), 1e-15);

  const std::vector<MassLadder> ladders{MassLadder({1.0, 10.0}), MassLadder({1.0, 2.0, 4.0}),
                                        MassLadder({1.0, 2.0, 4.0, 8.0, 16.0})};
  double spectral = 0.0;
  double recursion = 0.0;
  double inversion = 0.0;
  double equal_time = 0.0;
  double triangular = 0.0;
  double contraction_jump = 0.0;
  double partition = 0.0;
  double mode_sum = 0.0;
  for (const MassLadder& ladder : ladders) {
    const std::size_t n = ladder.regulators();
    for (int trial = 0; trial < 10; ++trial) {
      const FourMomentum p{Complex(uniform(rng, -3.0, 3.0), uniform(rng, -1.0, 1.0)),
                           {uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0),
                            uniform(rng, -1.0, 1.0)}};
      const SpinorMatrix gm = g_f_matrix(ladder, 0, n, p, g);
      Eigen::ComplexEigenSolver<SpinorMatrix> solver(gm);
      const Complex root = std::sqrt(p.square());
      const Complex up = g_f_scalar(ladder, 0, n, root);
      const Complex down = g_f_scalar(ladder, 0, n, -root);
      std::vector<Complex> ev(solver.eigenvalues().begin(), solver.eigenvalues().end());
      int matched_up = 0;
      int matched_down = 0;
      double worst = 0.0;
      for (const Complex& e : ev) {
        const double du = std::abs(e - up);
        const double dd = std::abs(e - down);
        if (du <= dd) ++matched_up; else ++matched_down;
        worst = std::max(worst, std::min(du, dd) / std::max(std::abs(up), std::abs(down)));
      }
      if (matched_up != 2 || matched_down != 2) worst = 1.0;
      spectral = std::max(spectral, worst);

      for (std::size_t L = 1; L <= n; ++L) {
        for (std::size_t K = 0; K < L; ++K) {
          recursion = std::max(recursion, matrix_recursion_residual(ladder, K, L, p, g));
        }
      }
      inversion = std::max(inversion, (inverse_filter_polynomial(ladder, p, g) * gm -
                                       SpinorMatrix::Identity()).norm());
      mode_sum = std::max(mode_sum, (mode_sum_filter(ladder, p, g) - gm).norm() / gm.norm());
    }
    for (int trial = 0; trial < 50; ++trial) {
      const std::array<double, 3> pv{uniform(rng, -2.0, 2.0), uniform(rng, -2.0, 2.0),
                                     uniform(rng, -2.0, 2.0)};
      for (std::size_t K = 0; K <= n; ++K) {
        for (std::size_t L = 0; L <= n; ++L) {
          const SpinorMatrix r = equal_time_anticommutator(ladder, K, L, pv, g);
          const SpinorMatrix expected = K == L ? g[0] : SpinorMatrix::Zero();
          equal_time = std::max(equal_time, (r - expected).norm());
          if (L > K) triangular = std::max(triangular, r.cwiseAbs().maxCoeff());
        }
      }
      if (trial < 10) {
        const double tiny = 1e-12;
        contraction_jump = std::max(
            contraction_jump,
            (contraction_time_domain(ladder, Contour::kFeynman, pv, tiny, g) -
             contraction_time_domain(ladder, Contour::kFeynman, pv, -tiny, g))
                .norm());
        for (double tau : {-1.5, 0.0, 0.7}) {
          partition = std::max(
              partition, (contraction_time_domain(ladder, Contour::kPlus, pv, tau, g) +
                          contraction_time_domain(ladder, Contour::kMinus, pv, tau, g) -
                          contraction_time_domain(ladder, Contour::kClosed, pv, tau, g))
                             .norm());
        }
      }
    }
  }
  rec.at_most("spectral_consistency", spectral, 1e-11);
  rec.at_most("matrix_recursion", recursion, 1e-12);
  rec.at_most("filter_polynomial_inversion", inversion, 1e-12);
  rec.at_most("mode_sum_matches_filter", mode_sum, 1e-12);
  rec.at_most("equal_time_anticommutator", equal_time, 1e-10);
  rec.at_most("anticommutator_triangular", triangular, 0.0);
  rec.at_most("regularised_contraction_continuous", contraction_jump, 1e-10);
  rec.at_most("plus_plus_minus_is_closed", partition, 1e-12);

  double falloff = 0.0;
  for (const MassLadder& ladder : ladders) {
    const std::size_t n = ladder.regulators();
    std::vector<double> r, norm;
    for (int i = 0; i <= 8; ++i) {
      const double p0 = 1e3 * ladder.max_mass() * std::pow(10.0, 0.25 * i);
      r.push_back(p0);
      norm.push_back(g_f_matrix(ladder, 0, n, FourMomentum{Complex(p0, 0.0), {0.3, -0.2, 0.5}}, g)
                         .norm());
    }
    falloff = std::max(falloff, std::abs(fit_loglog_slope(r, norm) + double(n + 1)));
  }
  rec.at_most("falloff_exponent", falloff, 0.05);
}

void divergence_checks(Recorder& rec) {
  double monotone = 0.0;
  for (const DiagramSpec& d : canonical_diagrams()) {
    for (int n = 0; n < 6; ++n) {
      const int drop = superficial_degree(d, n) - superficial_degree(d, n + 1);
      monotone = std::max(monotone, double(std::abs(drop - d.fermion_internal)));
    }
  }
  rec.at_most("degree_monotone_in_regulators", monotone, 0.0);

  // Fermion-line exponent against the measured decay of G_f^(0,N)(pslash).
  const GammaSet g = GammaSet::dirac();
  double falloff = 0.0;
  for (int n = 0; n <= 4; ++n) {
    std::vector<double> masses{1.0};
    for (int k = 0; k < n; ++k) masses.push_back(masses.back() * 3.0);
    const MassLadder ladder(masses);
    std::vector<double> r, norm;
    for (int i = 0; i <= 8; ++i) {
      const double p0 = 1e3 * ladder.max_mass() * std::pow(10.0, 0.25 * i);
      r.push_back(p0);
      norm.push_back(g_f_matrix(ladder, 0, n, FourMomentum{Complex(p0, 0.0), {0.1, 0.2, 0.3}}, g)
                         .norm());
    }
    falloff = std::max(falloff, std::abs(-fit_loglog_slope(r, norm) - fermion_line_falloff(n)));
  }
  rec.at_most("line_exponent_matches_dirac_falloff", falloff, 0.05);

  double mismatched = 0.0;
  for (const ClaimRow& row : claim_table()) mismatched += row.satisfied ? 0.0 : 1.0;
  rec.at_most("claim_table", mismatched, 0.0);
}

}  // namespace

const std::vector<std::string>& module_names() {
  static const std::vector<std::string> names{"reg_algebra", "contour_propagators",
                                              "oscillator_filter", "dirac_algebra",
                                              "divergence_counter"};
  return names;
}

std::vector<Check> run_suite(const Options& options) {
  const auto& names = module_names();
  if (options.only &&
      std::find(names.begin(), names.end(), *options.only) == names.end()) {
    throw InvalidArgument("unknown module '" + *options.only + "'");
  }
  using Runner = void (*)(Recorder&);
  const std::vector<std::pair<std::string, Runner>> runners{
      {"reg_algebra", reg_algebra_checks},
      {"contour_propagators", contour_checks},
      {"oscillator_filter", oscillator_checks},
      {"dirac_algebra", dirac_checks},
      {"divergence_counter", divergence_checks}};
  std::vector<Check> checks;
  for (const auto& [name, run] : runners) {
    if (options.only && *options.only != name) continue;
    Recorder rec(name, options, checks);
    run(rec);
  }
  return checks;
}

std::string format_report(const std::vector<Check>& checks) {
  std::string out;
  char buf[64];
  for (const Check& c : checks) {
    std::snprintf(buf, sizeof buf, "%.16e", c.residual);
    out += c.module + "." + c.name + "," + (c.passed ? "PASS" : "FAIL") + "," + buf + "\n";
  }
  return out;
}

bool all_passed(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

}  // namespace pvfilter::verify

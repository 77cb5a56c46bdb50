#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "asgard/problem.hpp"
#include "asgard/solver.hpp"

namespace asgard {

struct InstanceSpec {
    Index p = 1000;
    Index n = 350;
    Index s = 100;          // nonzeros of the planted signal
    double sigma = 0.05;    // gaussian noise variance
    bool correlated = false;  // 50% equicorrelated columns of K
    double rho = 0.0;
    double lambda_alpha = 0.05;
    double lambda_c = 1.1;
    std::optional<double> lambda_override;
    std::uint64_t seed = 0;
};

struct InstanceBundle {
    InstanceSpec spec;
    std::shared_ptr<const LinearMap> k_op;
    Vec b, x_natural;
    double lambda = 0.0;
    double rho = 0.0;

    // Reference data (filled by reference_solve).
    double f_ref = kInf;
    Vec x_ref;
    double d_ref = kInf;
    Vec y_ref;
    bool has_y_ref = false;
    bool certified = false;
    bool flagged = false;  // rho > 0 and the gap certificate was not met
};

// Draw order is fixed (K row-major, support positions, signal values, noise)
// so a seed reproduces the bundle bitwise on one platform.
InstanceBundle generate(const InstanceSpec& spec);

// Standard normal quantile via Wichura's PPND16 rational approximation;
// absolute error well below 1e-9 over (0, 1).
double inv_norm_cdf(double q);

// lambda = c * Phi^{-1}(1 - alpha / (2p)).
double lambda_rule(Index p, double alpha, double c);

// beta* = ||K|| ||x0 - x_ref|| / M_g, the minimizer of the Case-1 primal
// bound over beta0.
double beta_star(double opnorm, double dist0, double m_g);

SaddleProblem problem_from_bundle(const InstanceBundle& bundle, bool use_strong_convexity);

struct ReferenceRuns {
    RunRecord primary;                  // long ASGARD+ run
    std::optional<RunRecord> secondary;  // smoothing baseline (rho = 0) or Case-1 run (rho > 0)
};

// High-accuracy in-repo reference: two long runs, F_ref = best observed F,
// x_ref its iterate, y_ref the best finite dual iterate. For rho > 0 the pair
// (x_ref, y_ref) must certify a gap <= 1e-6 max(1, |F_ref|) or the bundle is
// flagged. trace_keep > 0 keeps that many leading trace rows for reuse as
// report curves; k_max_hint sizes the baseline smoothing parameter.
ReferenceRuns reference_solve(InstanceBundle& bundle, long budget, long k_max_hint = 5000,
                              long trace_keep = 0);

// Bundle directory layout: K.csv, b.csv, xnat.csv, meta.txt.
void save_bundle(const InstanceBundle& bundle, const std::string& dir);
InstanceBundle load_bundle(const std::string& dir);

struct InstanceRun {
    InstanceBundle bundle;
    std::vector<std::string> configs;
    std::vector<std::vector<double>> f_curves;        // [config][k], objective values
    std::vector<std::vector<double>> residual_curves;  // (F - F_ref)/max(1,|F_ref|)
};

struct AggregateCurve {
    std::string config;
    std::vector<double> mean, lo, hi;
};

struct AggregateReport {
    std::vector<AggregateCurve> curves;
    long k_max = 0;
    int instances_used = 0;
    int instances_flagged = 0;
};

struct ExperimentOptions {
    int which = 1;  // 1..4
    int num_instances = 30;
    InstanceSpec base;
    long k_max = 5000;
    long ref_budget = 100000;
    std::uint64_t base_seed = 90210;
    int threads = 1;
};

struct ExperimentResult {
    AggregateReport report;
    std::vector<InstanceRun> runs;  // instance order, flagged ones carry empty curves
};

ExperimentOptions desk_profile(int which);
ExperimentOptions paper_profile(int which);

ExperimentResult run_experiment(const ExperimentOptions& opts);

// Pointwise mean/min/max across instances per configuration. Ragged curves
// are a usage error.
AggregateReport aggregate(const std::vector<InstanceRun>& runs, long k_max);

// CSV columns: config, k, mean, min, max.
void write_aggregate_csv(const AggregateReport& report, std::ostream& out);

}  // namespace asgard

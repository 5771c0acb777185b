#ifndef BKLAB_EXPERIMENTS_HPP
#define BKLAB_EXPERIMENTS_HPP

// Named, reproducible experiments wiring the modules together. Each takes a
// flat config (defaults documented in the README), runs deterministically
// under the recorded seed, and reports rows + pass/fail against its declared
// tolerances. The CLI is a thin shell over these.

#include <string>

#include "bklab/report.hpp"

namespace bklab {

using ExperimentFn = ExperimentReport (*)(const Config&);

ExperimentReport run_curvature_check(const Config& cfg);
ExperimentReport run_heat_model(const Config& cfg);
ExperimentReport run_miller(const Config& cfg);
ExperimentReport run_gram(const Config& cfg);
ExperimentReport run_bergman_scan(const Config& cfg);
ExperimentReport run_bergman_fit(const Config& cfg);
ExperimentReport run_oracle_compare(const Config& cfg);
ExperimentReport run_equidist(const Config& cfg);
ExperimentReport run_hilbert_dims(const Config& cfg);
ExperimentReport run_hilbert_eisenstein(const Config& cfg);
ExperimentReport run_hilbert_invariance(const Config& cfg);

// Registry by subcommand name; nullptr when unknown.
ExperimentFn find_experiment(const std::string& name);

}  // namespace bklab

#endif  // BKLAB_EXPERIMENTS_HPP

// Copyright 2026 The Phaserigid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "phaserigid/quantize.hpp"

namespace phaserigid {

/// Ideal heterodyne record: draws alpha from Q(alpha) = <alpha|rho|alpha>/pi of one mode.
struct SampleBatch {
  std::vector<Complex> points;
  std::uint64_t seed = 0;
  std::string state_ref;
  double hbar = 1.0;
  /// Accepted / proposed over all shards.
  double acceptance_rate = 1.0;
  std::string rng_algorithm;
};

struct SamplingOptions {
  /// Worker threads; results do not depend on this value.
  int num_threads = 1;
  /// Points per shard; every shard draws from its own stream seeded by (seed, shard index).
  std::size_t shard_size = 8192;
  /// Mode whose (reduced) Husimi function is sampled.
  int mode = 0;
  /// Tail-mass bound below which the cutoff is considered adequate.
  double tail_threshold = 1e-8;
};

/// Identifier of the generator and seeding scheme recorded in every batch.
extern const char* const kSamplingRngAlgorithm;

/// Rejection sampling with a centered complex Gaussian proposal of covariance
/// (1 + <n>) per real component pair in alpha units (widened if needed so the
/// envelope constant stays moderate). Throws SamplingError when the state is
/// not adequately resolved by its cutoff or the envelope fails to dominate Q.
SampleBatch sample_husimi(const FockState& s, std::size_t n, std::uint64_t seed, const std::string& state_ref = "",
                          const SamplingOptions& options = {});

/// CSV with one comment header line, a column header "re_alpha,im_alpha" and
/// round-trip precision values.
void write_batch_csv(const SampleBatch& batch, std::ostream& out);
SampleBatch read_batch_csv(std::istream& in);

struct CumulantEstimate {
  int order = 0;
  double value = 0.0;
  /// Analytic standard error under approximate normality.
  double std_error = 0.0;
  /// Delete-a-group jackknife standard error (50 groups).
  double jackknife_error = 0.0;
  std::size_t n = 0;
  /// Set when the projected sample has zero spread; higher orders are then undefined (NaN).
  bool degenerate = false;
};

/// Projection sqrt(2 hbar) Re(alpha e^{-i angle}) of every sample: the
/// heterodyne estimate of the quadrature along the axis (the axis mode is ignored).
std::vector<double> project_samples(const SampleBatch& batch, const QuadratureAxis& axis);

/// k-statistics k1..k_up_to (up_to in 1..4) of the projected samples.
/// Throws SamplingError when n < up_to + 1.
std::vector<CumulantEstimate> estimate_cumulants(const SampleBatch& batch, const QuadratureAxis& axis, int up_to = 4);
std::vector<CumulantEstimate> estimate_cumulants(const std::vector<double>& values, int up_to = 4);

/// Standardized kurtosis 3 + k4/k2^2 with its normal-theory and jackknife errors.
CumulantEstimate estimate_kurtosis(const std::vector<double>& values);

struct ExperimentOptions {
  std::vector<double> gamma_grid{0.02, 0.04, 0.06, 0.08};
  std::vector<double> r_grid{0.2, 0.5, 0.8};
  double t = 1.0;
  std::size_t n = 100000;
  std::uint64_t seed = 0;
  int cutoff = 40;
  double hbar = 1.0;
  SamplingOptions sampling;
};

/// One arm point: shifts of the Husimi p-quadrature variance and
/// standardized kurtosis relative to the vacuum (hbar and 3).
struct ArmPoint {
  double param = 0.0;
  double dm2 = 0.0;
  double dm2_err = 0.0;
  double dm4 = 0.0;
  double dm4_err = 0.0;
  /// Oracle values from the Fock state itself.
  double exact_dm2 = 0.0;
  double exact_dm4 = 0.0;
  double acceptance_rate = 0.0;
};

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  double slope_err = 0.0;
};

struct ExperimentReport {
  std::vector<ArmPoint> cubic;
  std::vector<ArmPoint> squeezing;
  /// Ordinary least squares of sampled dm4 against sampled dm2 over the cubic arm.
  LinearFit fit;
  /// Leading power laws dm ~ gamma^e fitted log-log on the oracle values.
  double exponent_dm2 = 0.0;
  double exponent_dm4 = 0.0;
  double max_abs_squeezing_dm4 = 0.0;
  double max_abs_squeezing_dm4_err = 0.0;
  /// Every squeezing-arm |dm4| within 3 standard errors of zero.
  bool squeezing_consistent = true;
};

/// Cubic arm: vacuum evolved under gamma x^3 for time t; squeezing arm:
/// vacuum squeezed by r. Each point is sampled, estimated and compared with
/// the oracle. Throws PreconditionError for empty grids.
ExperimentReport rigidity_experiment(const ExperimentOptions& options);

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace phaserigid

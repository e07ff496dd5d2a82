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

#include "phaserigid/sampling.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "phaserigid/errors.hpp"

namespace phaserigid {

const char* const kSamplingRngAlgorithm = "mt19937_64;seed_seq(seed_lo,seed_hi,shard_lo,shard_hi);std-normal";

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Reduced density matrix of one mode.
Eigen::MatrixXcd reduced_density(const FockState& s, int mode) {
  const FockBasis& b = s.basis();
  if (mode < 0 || mode >= b.num_modes) throw PreconditionError("sampled mode out of range");
  if (b.num_modes == 1) return s.density();
  const Eigen::MatrixXcd rho = s.density();
  const int d = b.cutoff;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
  for (int a = 0; a < d; ++a) {
    for (int c = 0; c < d; ++c) {
      for (int k = 0; k < d; ++k) {
        out(a, c) += mode == 0 ? rho(a * d + k, c * d + k) : rho(k * d + a, k * d + c);
      }
    }
  }
  return out;
}

// Pure components sqrt(p_j) psi_j of a single-mode density matrix, as columns.
Eigen::MatrixXcd pure_components(const Eigen::MatrixXcd& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
  std::vector<int> keep;
  for (int k = 0; k < es.eigenvalues().size(); ++k) {
    if (es.eigenvalues()(k) > 1e-15) keep.push_back(k);
  }
  Eigen::MatrixXcd out(rho.rows(), static_cast<int>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j) {
    out.col(static_cast<int>(j)) = std::sqrt(es.eigenvalues()(keep[j])) * es.eigenvectors().col(keep[j]);
  }
  return out;
}

// log of sum_j (sum_n |psi_jn| r^n / sqrt(n!))^2 at u = r^2: an upper bound
// of pi e^{u} Q on the circle |alpha| = r.
double log_radial_bound(const Eigen::MatrixXd& abs_components, double u) {
  const int levels = static_cast<int>(abs_components.rows());
  std::vector<double> log_basis(levels);
  for (int n = 0; n < levels; ++n) {
    log_basis[n] = (n == 0 ? 0.0 : 0.5 * n * std::log(u)) - 0.5 * std::lgamma(n + 1.0);
  }
  double top = -std::numeric_limits<double>::infinity();
  std::vector<double> logs;
  for (int j = 0; j < abs_components.cols(); ++j) {
    double best = -std::numeric_limits<double>::infinity();
    for (int n = 0; n < levels; ++n) {
      if (abs_components(n, j) > 0) best = std::max(best, std::log(abs_components(n, j)) + log_basis[n]);
    }
    double sum = 0.0;
    for (int n = 0; n < levels; ++n) {
      if (abs_components(n, j) > 0) sum += std::exp(std::log(abs_components(n, j)) + log_basis[n] - best);
    }
    logs.push_back(2 * (best + std::log(sum)));
    top = std::max(top, logs.back());
  }
  double total = 0.0;
  for (double l : logs) total += std::exp(l - top);
  return top + std::log(total);
}

struct Envelope {
  double s = 1.0;
  double log_m = 0.0;
};

// Envelope constant M with Q(alpha) <= M g_s(alpha), g_s(alpha) = exp(-|alpha|^2/s)/(pi s).
double log_envelope_constant(const Eigen::MatrixXd& abs_components, double s) {
  const int levels = static_cast<int>(abs_components.rows());
  int top_level = 0;
  for (int n = 0; n < levels; ++n) {
    if (abs_components.row(n).maxCoeff() > 0) top_level = n;
  }
  // Margin for rounding and for the grid maximum of a smooth function.
  const double margin = std::log(1.05);
  if (top_level == 0) return std::log(s) + log_radial_bound(abs_components, 0.0) + margin;
  if (s <= 1.0) return std::numeric_limits<double>::infinity();
  const double decay = 1.0 - 1.0 / s;
  const double u_max = (2.0 * top_level + 60.0) / decay;
  const int steps = 20000;
  double best = -std::numeric_limits<double>::infinity();
  for (int k = 0; k <= steps; ++k) {
    const double u = u_max * k / steps;
    best = std::max(best, std::log(s) + log_radial_bound(abs_components, u) - decay * u);
  }
  return best + margin;
}

Envelope build_envelope(const Eigen::MatrixXcd& components, double mean_number) {
  const Eigen::MatrixXd abs_components = components.cwiseAbs();
  Envelope env;
  env.s = 1.0 + std::max(0.0, mean_number);
  env.log_m = log_envelope_constant(abs_components, env.s);
  for (int iter = 0; iter < 200 && env.log_m > std::log(20.0); ++iter) {
    const double wider = env.s * 1.25;
    const double candidate = log_envelope_constant(abs_components, wider);
    if (!(candidate < env.log_m) && std::isfinite(env.log_m)) break;
    env.s = wider;
    env.log_m = candidate;
  }
  if (!std::isfinite(env.log_m) || env.log_m > std::log(1e6)) {
    throw SamplingError("could not construct a dominating Gaussian envelope for this state");
  }
  return env;
}

std::mt19937_64 shard_engine(std::uint64_t seed, std::uint64_t shard) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(shard), static_cast<std::uint32_t>(shard >> 32)};
  return std::mt19937_64(seq);
}

struct ShardResult {
  std::vector<Complex> points;
  std::uint64_t proposed = 0;
  bool envelope_violated = false;
};

ShardResult run_shard(const Eigen::MatrixXcd& components, const Envelope& env, std::size_t count, std::uint64_t seed,
                      std::uint64_t shard) {
  std::mt19937_64 engine = shard_engine(seed, shard);
  std::normal_distribution<double> normal(0.0, std::sqrt(env.s / 2));
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const int levels = static_cast<int>(components.rows());
  const double m = std::exp(env.log_m);
  ShardResult out;
  out.points.reserve(count);
  Eigen::VectorXcd coh(levels);
  while (out.points.size() < count) {
    const Complex alpha(normal(engine), normal(engine));
    const double u = uniform(engine);
    ++out.proposed;
    const double r2 = std::norm(alpha);
    coh(0) = std::exp(-r2 / 2);
    for (int n = 1; n < levels; ++n) coh(n) = coh(n - 1) * alpha / std::sqrt(static_cast<double>(n));
    // Q(alpha) = sum_j |<alpha|psi_j>|^2 / pi.
    const double q = (coh.adjoint() * components).squaredNorm() / M_PI;
    const double g = std::exp(-r2 / env.s) / (M_PI * env.s);
    const double ratio = q / (m * g);
    if (ratio > 1.0) {
      out.envelope_violated = true;
      return out;
    }
    if (u < ratio) out.points.push_back(alpha);
  }
  return out;
}

}  // namespace

SampleBatch sample_husimi(const FockState& s, std::size_t n, std::uint64_t seed, const std::string& state_ref,
                          const SamplingOptions& options) {
  if (!s.is_physical()) throw PreconditionError("sample_husimi requires a physical state");
  if (options.shard_size == 0 || options.num_threads < 1) throw PreconditionError("invalid sampling options");
  SampleBatch batch;
  batch.seed = seed;
  batch.state_ref = state_ref;
  batch.hbar = s.basis().hbar;
  batch.rng_algorithm = kSamplingRngAlgorithm;
  if (n == 0) return batch;

  const Eigen::MatrixXcd rho = reduced_density(s, options.mode);
  const int levels = static_cast<int>(rho.rows());
  const int top = std::max(1, levels / 10);
  double tail = 0.0;
  double mean_number = 0.0;
  for (int k = 0; k < levels; ++k) {
    if (k >= levels - top) tail += rho(k, k).real();
    mean_number += k * rho(k, k).real();
  }
  if (tail > options.tail_threshold) {
    throw SamplingError("state carries tail mass " + std::to_string(tail) + " at cutoff " + std::to_string(levels) +
                        "; its energy is too large for the cutoff");
  }
  const Eigen::MatrixXcd components = pure_components(rho);
  const Envelope env = build_envelope(components, mean_number);

  const std::size_t shards = (n + options.shard_size - 1) / options.shard_size;
  std::vector<ShardResult> results(shards);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < shards; k = next++) {
      const std::size_t count = std::min(options.shard_size, n - k * options.shard_size);
      results[k] = run_shard(components, env, count, seed, k);
    }
  };
  const int threads = static_cast<int>(std::min<std::size_t>(options.num_threads, shards));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  std::uint64_t proposed = 0;
  batch.points.reserve(n);
  for (const auto& r : results) {
    if (r.envelope_violated) throw SamplingError("Gaussian envelope failed to dominate the Husimi function");
    proposed += r.proposed;
    batch.points.insert(batch.points.end(), r.points.begin(), r.points.end());
  }
  batch.acceptance_rate = static_cast<double>(n) / static_cast<double>(proposed);
  return batch;
}

void write_batch_csv(const SampleBatch& batch, std::ostream& out) {
  std::ostringstream header;
  header.precision(17);
  header << "# seed=" << batch.seed << "; n=" << batch.points.size() << "; hbar=" << batch.hbar
         << "; acceptance=" << batch.acceptance_rate << "; rng=" << batch.rng_algorithm << "; state=" << batch.state_ref;
  std::string line = header.str();
  std::replace(line.begin(), line.end(), '\n', ' ');
  out << line << "\nre_alpha,im_alpha\n";
  out.precision(17);
  for (const auto& z : batch.points) out << z.real() << ',' << z.imag() << '\n';
}

SampleBatch read_batch_csv(std::istream& in) {
  SampleBatch batch;
  std::string line;
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0) throw PreconditionError("batch file lacks its header comment");
  std::size_t expected = 0;
  std::string rest = line.substr(2);
  auto take = [&](const std::string& key) {
    const std::string prefix = key + "=";
    if (rest.rfind(prefix, 0) != 0) throw PreconditionError("batch header lacks field '" + key + "'");
    if (key == "state") return rest.substr(prefix.size());
    const std::size_t end = rest.find("; ");
    if (end == std::string::npos) throw PreconditionError("malformed batch header");
    std::string value = rest.substr(prefix.size(), end - prefix.size());
    rest = rest.substr(end + 2);
    return value;
  };
  try {
    batch.seed = std::stoull(take("seed"));
    expected = std::stoull(take("n"));
    batch.hbar = std::stod(take("hbar"));
    batch.acceptance_rate = std::stod(take("acceptance"));
    // The rng identifier itself contains ';' but never "; ".
    batch.rng_algorithm = take("rng");
    batch.state_ref = take("state");
  } catch (const std::invalid_argument&) {
    throw PreconditionError("malformed batch header");
  }
  if (!std::getline(in, line) || line != "re_alpha,im_alpha") throw PreconditionError("batch file lacks its column header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos) throw PreconditionError("malformed batch row: " + line);
    try {
      batch.points.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
    } catch (const std::exception&) {
      throw PreconditionError("malformed batch row: " + line);
    }
  }
  if (batch.points.size() != expected) throw PreconditionError("batch row count does not match its header");
  return batch;
}

std::vector<double> project_samples(const SampleBatch& batch, const QuadratureAxis& axis) {
  const double scale = std::sqrt(2 * batch.hbar);
  const double c = std::cos(axis.angle);
  const double s = std::sin(axis.angle);
  std::vector<double> out;
  out.reserve(batch.points.size());
  for (const auto& z : batch.points) out.push_back(scale * (z.real() * c + z.imag() * s));
  return out;
}

namespace {

// Shifted power sums S_k = sum (y - shift)^k, k = 0..4.
using PowerSums = std::array<double, 5>;

PowerSums power_sums(const std::vector<double>& y, std::size_t begin, std::size_t end, double shift) {
  PowerSums s{};
  for (std::size_t i = begin; i < end; ++i) {
    const double d = y[i] - shift;
    double term = 1.0;
    for (int k = 0; k <= 4; ++k) {
      s[k] += term;
      term *= d;
    }
  }
  return s;
}

struct KStats {
  double n = 0;
  std::array<double, 5> k{};  // k[1..4]
  double m2 = 0;
};

KStats kstats_from_sums(const PowerSums& s, double shift) {
  KStats out;
  const double n = s[0];
  out.n = n;
  const double d = s[1] / n;  // mean - shift
  // Central moments m_r = (1/n) sum (y - mean)^r from shifted sums.
  const double r1 = s[1] / n, r2 = s[2] / n, r3 = s[3] / n, r4 = s[4] / n;
  const double m2 = r2 - d * r1;
  const double m3 = r3 - 3 * d * r2 + 2 * d * d * d;
  const double m4 = r4 - 4 * d * r3 + 6 * d * d * r2 - 3 * d * d * d * d;
  out.m2 = std::max(0.0, m2);
  out.k[1] = shift + d;
  out.k[2] = n / (n - 1) * out.m2;
  out.k[3] = n * n / ((n - 1) * (n - 2)) * m3;
  out.k[4] = n * n * ((n + 1) * m4 - 3 * (n - 1) * out.m2 * out.m2) / ((n - 1) * (n - 2) * (n - 3));
  return out;
}

double kstat_std_error(int order, double k2, double n) {
  switch (order) {
    case 1:
      return std::sqrt(k2 / n);
    case 2:
      return std::sqrt(2 * k2 * k2 / (n - 1));
    case 3:
      return std::sqrt(6 * k2 * k2 * k2 * n / ((n - 1) * (n - 2)));
    default:
      return std::sqrt(24 * std::pow(k2, 4) * n * (n + 1) / ((n - 1) * (n - 2) * (n - 3)));
  }
}

double kurtosis_std_error(double n) { return std::sqrt(24 * n * (n - 1) * (n - 1) / ((n - 3) * (n - 2) * (n + 3) * (n + 5))); }

// Delete-a-group jackknife over at most 50 contiguous groups.
template <typename Statistic>
double jackknife_error(const std::vector<double>& y, double shift, const PowerSums& total, Statistic stat) {
  const std::size_t n = y.size();
  const std::size_t groups = std::min<std::size_t>(50, n);
  std::vector<double> values;
  for (std::size_t g = 0; g < groups; ++g) {
    PowerSums part = power_sums(y, g * n / groups, (g + 1) * n / groups, shift);
    PowerSums rest;
    for (int k = 0; k <= 4; ++k) rest[k] = total[k] - part[k];
    values.push_back(stat(kstats_from_sums(rest, shift)));
  }
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(groups);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss * (static_cast<double>(groups) - 1) / static_cast<double>(groups));
}

double mean_of(const std::vector<double>& y) {
  double s = 0.0;
  for (double v : y) s += v;
  return s / static_cast<double>(y.size());
}

}  // namespace

std::vector<CumulantEstimate> estimate_cumulants(const std::vector<double>& values, int up_to) {
  if (up_to < 1 || up_to > 4) throw PreconditionError("cumulant estimates are available for orders 1..4");
  // The jackknife deletes groups of ~n/50 points, so order-4 statistics need
  // a few points per remaining subset as well.
  if (values.size() < static_cast<std::size_t>(up_to) + 1 || values.size() < 5) {
    throw SamplingError("insufficient samples: need at least " + std::to_string(std::max(up_to + 1, 5)));
  }
  const double shift = mean_of(values);
  const PowerSums total = power_sums(values, 0, values.size(), shift);
  const KStats ks = kstats_from_sums(total, shift);
  const bool degenerate = !(ks.m2 > 0.0);
  std::vector<CumulantEstimate> out;
  for (int order = 1; order <= up_to; ++order) {
    CumulantEstimate e;
    e.order = order;
    e.n = values.size();
    e.degenerate = degenerate;
    if (degenerate && order >= 2) {
      e.value = order == 2 ? 0.0 : kNaN;
      e.std_error = order == 2 ? 0.0 : kNaN;
      e.jackknife_error = e.std_error;
    } else {
      e.value = ks.k[order];
      e.std_error = kstat_std_error(order, ks.k[2], ks.n);
      e.jackknife_error = jackknife_error(values, shift, total, [order](const KStats& k) { return k.k[order]; });
    }
    out.push_back(e);
  }
  return out;
}

std::vector<CumulantEstimate> estimate_cumulants(const SampleBatch& batch, const QuadratureAxis& axis, int up_to) {
  return estimate_cumulants(project_samples(batch, axis), up_to);
}

CumulantEstimate estimate_kurtosis(const std::vector<double>& values) {
  auto ks = estimate_cumulants(values, 4);
  CumulantEstimate e;
  e.order = 4;
  e.n = values.size();
  e.degenerate = ks[1].degenerate;
  if (e.degenerate) {
    e.value = e.std_error = e.jackknife_error = kNaN;
    return e;
  }
  e.value = 3.0 + ks[3].value / (ks[1].value * ks[1].value);
  e.std_error = kurtosis_std_error(static_cast<double>(values.size()));
  const double shift = mean_of(values);
  e.jackknife_error = jackknife_error(values, shift, power_sums(values, 0, values.size(), shift),
                                      [](const KStats& k) { return 3.0 + k.k[4] / (k.k[2] * k.k[2]); });
  return e;
}

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw PreconditionError("fit_line needs at least two paired points");
  const double n = static_cast<double>(x.size());
  const double mx = mean_of(x);
  const double my = mean_of(y);
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (!(sxx > 0)) throw PreconditionError("fit_line needs distinct abscissae");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double sse = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - fit.intercept - fit.slope * x[i];
    sse += r * r;
  }
  fit.r2 = syy > 0 ? 1.0 - sse / syy : 1.0;
  fit.slope_err = x.size() > 2 ? std::sqrt(sse / (n - 2) / sxx) : kNaN;
  return fit;
}

namespace {

std::uint64_t derive_seed(std::uint64_t seed, std::uint32_t arm, std::uint32_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), arm, index};
  std::array<std::uint32_t, 2> words{};
  seq.generate(words.begin(), words.end());
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

double power_law_exponent(const std::vector<double>& params, const std::vector<double>& values) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (params[i] > 0 && std::abs(values[i]) > 0) {
      lx.push_back(std::log(params[i]));
      ly.push_back(std::log(std::abs(values[i])));
    }
  }
  if (lx.size() < 2) return kNaN;
  return fit_line(lx, ly).slope;
}

}  // namespace

ExperimentReport rigidity_experiment(const ExperimentOptions& options) {
  if (options.gamma_grid.empty() || options.r_grid.empty()) throw PreconditionError("experiment grids must be nonempty");
  const FockBasis basis{1, options.cutoff, options.hbar};
  basis.validate();
  const AlgebraContext ctx(1, Rational(options.hbar));
  PhasePolynomial x(ctx), p(ctx);
  x.add_term(ctx.unit_index(ctx.x(0)), GaussRational(1));
  p.add_term(ctx.unit_index(ctx.p(0)), GaussRational(1));
  const PhasePolynomial cubic = x * x * x;
  const PhasePolynomial squeeze = -(x * p);
  const FockState vacuum = FockState::vacuum(basis);
  const QuadratureAxis axis = QuadratureAxis::p();
  const CumulantVector reference = husimi_quadrature_cumulants(vacuum, axis, 4);

  auto measure = [&](const FockState& state, double param, std::uint32_t arm, std::uint32_t index) {
    ArmPoint point;
    point.param = param;
    const CumulantVector exact = husimi_quadrature_cumulants(state, axis, 4);
    point.exact_dm2 = exact.variance() - reference.variance();
    point.exact_dm4 = exact.m4() - reference.m4();
    std::ostringstream ref;
    ref << (arm == 0 ? "cubic gamma=" : "squeezed r=") << param;
    const SampleBatch batch =
        sample_husimi(state, options.n, derive_seed(options.seed, arm, index), ref.str(), options.sampling);
    point.acceptance_rate = batch.acceptance_rate;
    const std::vector<double> y = project_samples(batch, axis);
    const auto ks = estimate_cumulants(y, 2);
    const auto kurt = estimate_kurtosis(y);
    point.dm2 = ks[1].value - reference.variance();
    point.dm2_err = ks[1].std_error;
    point.dm4 = kurt.value - reference.m4();
    point.dm4_err = kurt.std_error;
    return point;
  };

  ExperimentReport report;
  for (std::size_t i = 0; i < options.gamma_grid.size(); ++i) {
    const double gamma = options.gamma_grid[i];
    // exp(-i gamma x^3 t / hbar) is the x^3 flow run for time gamma t.
    const FockState state = evolve(vacuum, cubic, gamma * options.t);
    report.cubic.push_back(measure(state, gamma, 0, static_cast<std::uint32_t>(i)));
  }
  for (std::size_t i = 0; i < options.r_grid.size(); ++i) {
    const double r = options.r_grid[i];
    const FockState state = evolve(vacuum, squeeze, r);
    const ArmPoint point = measure(state, r, 1, static_cast<std::uint32_t>(i));
    if (std::abs(point.dm4) > 3 * point.dm4_err) report.squeezing_consistent = false;
    if (std::abs(point.dm4) >= report.max_abs_squeezing_dm4) {
      report.max_abs_squeezing_dm4 = std::abs(point.dm4);
      report.max_abs_squeezing_dm4_err = point.dm4_err;
    }
    report.squeezing.push_back(point);
  }
  std::vector<double> dm2, dm4, gammas, exact2, exact4;
  for (const auto& point : report.cubic) {
    dm2.push_back(point.dm2);
    dm4.push_back(point.dm4);
    gammas.push_back(point.param);
    exact2.push_back(point.exact_dm2);
    exact4.push_back(point.exact_dm4);
  }
  if (report.cubic.size() >= 2) {
    try {
      report.fit = fit_line(dm2, dm4);
    } catch (const PreconditionError&) {
      report.fit = LinearFit{kNaN, kNaN, kNaN, kNaN};
    }
  } else {
    report.fit = LinearFit{kNaN, kNaN, kNaN, kNaN};
  }
  report.exponent_dm2 = power_law_exponent(gammas, exact2);
  report.exponent_dm4 = power_law_exponent(gammas, exact4);
  return report;
}

}  // namespace phaserigid

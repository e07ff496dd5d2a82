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

// Command-line front end: parses symbols, dispatches to the engine, and
// prints text tables or machine-readable JSON/CSV.
//
// Exit codes: 0 success, 1 internal error, 2 usage or parse error,
// 3 resource limit (Fock cutoff or sampling envelope).

#include <CLI11.hpp>
#include <unistd.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "phaserigid/errors.hpp"
#include "phaserigid/expression.hpp"
#include "phaserigid/hierarchy.hpp"
#include "phaserigid/lindblad.hpp"
#include "phaserigid/moyal.hpp"
#include "phaserigid/quantize.hpp"
#include "phaserigid/sampling.hpp"
#include "phaserigid/serialize.hpp"
#include "phaserigid/symplectic.hpp"

namespace phaserigid {
namespace {

enum ExitCode { kOk = 0, kInternal = 1, kUsage = 2, kResource = 3 };

/// Invalid command-line input detected after CLI11 parsing.
class UsageError : public Error {
 public:
  explicit UsageError(const std::string& message) : Error(message) {}
};

struct GlobalOptions {
  std::string hbar = "1";
  int modes = 1;
  std::uint64_t seed = 0;
  int cutoff = 40;
  std::string format = "text";
  std::string out;
};

AlgebraContext make_context(const GlobalOptions& g) {
  if (g.modes < 1) throw UsageError("--modes must be at least 1");
  Rational hbar;
  try {
    hbar = parse_rational(g.hbar);
  } catch (const ParseError&) {
    throw UsageError("--hbar expects a rational such as 1 or 1/2");
  }
  if (sgn(hbar) <= 0) throw UsageError("--hbar must be positive");
  return AlgebraContext(g.modes, hbar);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

double parse_double(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw UsageError("malformed number '" + text + "' in " + what);
  }
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  for (const auto& item : split(text, ',')) out.push_back(parse_double(item, what));
  if (out.empty()) throw UsageError(what + " must not be empty");
  return out;
}

/// "start:stop:count" or a comma-separated list.
std::vector<double> parse_times(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() == 3) {
    const double a = parse_double(parts[0], "--times");
    const double b = parse_double(parts[1], "--times");
    const int count = static_cast<int>(parse_double(parts[2], "--times"));
    if (count < 1) throw UsageError("--times needs at least one point");
    std::vector<double> out;
    for (int k = 0; k < count; ++k) out.push_back(count == 1 ? a : a + (b - a) * k / (count - 1));
    return out;
  }
  return parse_list(text, "--times");
}

Bindings parse_bindings(const std::vector<std::string>& items, const AlgebraContext& ctx) {
  Bindings out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--bind expects name=value, got '" + item + "'");
    const PhasePolynomial value = parse_expression(item.substr(eq + 1), ctx, out);
    if (value.degree() > 0) throw UsageError("binding '" + item + "' is not a constant");
    out[item.substr(0, eq)] = value.coefficient(ctx.zero_index());
  }
  return out;
}

std::vector<JumpOperator> parse_jumps(const std::vector<std::string>& items, const AlgebraContext& ctx,
                                      const Bindings& bindings) {
  std::vector<JumpOperator> out;
  for (const auto& item : items) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw UsageError("--jump expects rate:symbol, got '" + item + "'");
    Rational rate;
    try {
      rate = parse_rational(item.substr(0, colon));
    } catch (const ParseError&) {
      throw UsageError("malformed jump rate in '" + item + "'");
    }
    // A bare annihilation operator is accepted at any hbar: its dissipator
    // only depends on the symbol up to a rescaled rate.
    static const std::regex ladder(R"(\s*a(?:_?([0-9]+))?\s*)");
    std::smatch match;
    const std::string symbol = item.substr(colon + 1);
    if (std::regex_match(symbol, match, ladder)) {
      const int mode = match[1].matched ? std::stoi(match[1].str()) : 1;
      if (mode < 1 || mode > ctx.num_modes()) throw UsageError("jump mode out of range in '" + item + "'");
      if (!match[1].matched && ctx.num_modes() > 1) throw UsageError("jump 'a' needs a mode index when --modes > 1");
      out.push_back(annihilation_jump(ctx, mode - 1, rate));
    } else {
      out.push_back({rate, parse_expression(symbol, ctx, bindings)});
    }
  }
  return out;
}

/// One factor per mode, separated by ';': vacuum | coherent:re[,im] |
/// number:n | squeezed:r | superposition:n.
FockState parse_state(const std::string& text, const FockBasis& basis) {
  const auto factors = split(text, ';');
  if (static_cast<int>(factors.size()) != basis.num_modes) {
    throw UsageError("--state needs one factor per mode (separate modes with ';')");
  }
  const FockBasis one{1, basis.cutoff, basis.hbar};
  Eigen::VectorXcd amps;
  for (const auto& factor : factors) {
    const auto colon = factor.find(':');
    const std::string kind = factor.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : factor.substr(colon + 1);
    Eigen::VectorXcd v;
    if (kind == "vacuum") {
      v = FockState::vacuum(one).amplitudes();
    } else if (kind == "coherent") {
      const auto parts = parse_list(arg, "coherent amplitude");
      if (parts.size() > 2) throw UsageError("coherent expects re[,im]");
      v = FockState::coherent(one, {Complex(parts[0], parts.size() > 1 ? parts[1] : 0.0)}).amplitudes();
    } else if (kind == "number" || kind == "superposition") {
      const int n = static_cast<int>(parse_double(arg, kind));
      if (n < 0 || n >= basis.cutoff) throw UsageError("Fock level out of range for the cutoff");
      v = FockState::number(one, {n}).amplitudes();
      if (kind == "superposition") {
        if (n == 0) throw UsageError("superposition needs a level n >= 1");
        v(0) = 1.0;
        v /= v.norm();
      }
    } else if (kind == "squeezed") {
      v = FockState::squeezed_vacuum(one, parse_double(arg, "squeezing")).amplitudes();
    } else {
      throw UsageError("unknown state kind '" + kind + "'");
    }
    if (amps.size() == 0) {
      amps = v;
    } else {
      Eigen::VectorXcd next(amps.size() * v.size());
      for (int i = 0; i < amps.size(); ++i) next.segment(i * v.size(), v.size()) = amps(i) * v;
      amps = next;
    }
  }
  return FockState::from_amplitudes(basis, amps);
}

/// Gaussian description of a state spec when every factor is Gaussian.
std::optional<GaussianState> gaussian_of(const std::string& text, int modes, double hbar) {
  const auto factors = split(text, ';');
  GaussianState g = GaussianState::vacuum(modes, hbar);
  for (int k = 0; k < modes; ++k) {
    const auto colon = factors[k].find(':');
    const std::string kind = factors[k].substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : factors[k].substr(colon + 1);
    if (kind == "vacuum") continue;
    if (kind == "coherent") {
      const auto parts = parse_list(arg, "coherent amplitude");
      g.mean(k) = std::sqrt(2 * hbar) * parts[0];
      g.mean(modes + k) = std::sqrt(2 * hbar) * (parts.size() > 1 ? parts[1] : 0.0);
    } else if (kind == "squeezed") {
      const double r = parse_double(arg, "squeezing");
      g.cov(k, k) = hbar / 2 * std::exp(-2 * r);
      g.cov(modes + k, modes + k) = hbar / 2 * std::exp(2 * r);
    } else {
      return std::nullopt;
    }
  }
  return g;
}

std::string moment_name(const AlgebraContext& ctx, const MomentIndex& m) {
  return "<" + (total_order(m) == 0 ? std::string("1") : to_string(PhasePolynomial::monomial(ctx, m))) + ">";
}

std::string render_rhs(const AlgebraContext& ctx, const MomentCombination& rhs) {
  if (rhs.empty()) return "0";
  std::string out;
  for (const auto& term : rhs) {
    std::string c = to_string(term.coefficient);
    const bool negative = !c.empty() && c[0] == '-';
    if (negative) c = c.substr(1);
    if (out.empty()) {
      out = negative ? "-" : "";
    } else {
      out += negative ? " - " : " + ";
    }
    out += (c == "1" ? "" : c + "*") + moment_name(ctx, term.target);
  }
  return out;
}

Json document(const std::string& command) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  return j;
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path temp = target.parent_path() / (target.filename().string() + ".tmp-" + std::to_string(::getpid()));
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + temp.string() + "' for writing");
    out << text;
    out.flush();
    if (!out) {
      std::error_code ignored;
      fs::remove(temp, ignored);
      throw std::runtime_error("failed while writing '" + temp.string() + "'");
    }
  }
  fs::rename(temp, target);
}

std::string format_double(double v) {
  std::ostringstream out;
  out << std::setprecision(17) << v;
  return out.str();
}

// ---------------------------------------------------------------------------
// Commands.

struct ClassifyArgs {
  std::string expr;
  std::vector<std::string> binds;
  std::vector<std::string> jumps;
};

std::string cmd_classify(const GlobalOptions& g, const ClassifyArgs& a) {
  const AlgebraContext ctx = make_context(g);
  const Bindings bindings = parse_bindings(a.binds, ctx);
  const PhasePolynomial h = parse_expression(a.expr, ctx, bindings);
  Json j = document("classify");
  j["expression"] = a.expr;
  j["canonical"] = to_string(h);
  j["modes"] = ctx.num_modes();
  j["hbar"] = to_string(ctx.hbar());
  std::ostringstream text;
  if (!a.jumps.empty()) {
    const LindbladSpec spec(h, parse_jumps(a.jumps, ctx, bindings));
    const ChannelClassification c = classify_channel(spec);
    j["kind"] = "channel";
    j["degree"] = c.hamiltonian_degree;
    j["generator_order"] = c.order;
    j["hierarchy_preserving"] = c.hierarchy_preserving;
    j["gaussian"] = c.gaussian;
    j["max_jump_degree"] = c.max_jump_degree;
    j["closure"] = to_json(c.closure);
    j["spec"] = to_json(spec);
    j["witness"] = nullptr;
    text << "channel              H = " << to_string(h) << "\n";
    for (const auto& jump : spec.jumps) text << "jump                 " << to_string(jump.rate) << " : " << to_string(jump.symbol) << "\n";
    text << "generator order      " << c.order << "\n"
         << "gaussian             " << (c.gaussian ? "yes" : "no") << "\n"
         << "hierarchy preserving " << (c.hierarchy_preserving ? "yes" : "no") << "\n"
         << "order-2 block        " << (c.closure.closed_at_two ? "closed" : "open") << "\n";
  } else {
    const HamiltonianClassification c = classify_hamiltonian(h);
    j["kind"] = "hamiltonian";
    j.update(to_json(c));
    std::optional<WitnessRecord> witness;
    if (c.degree >= 3) witness = find_witness_state(h);
    j["witness"] = witness ? to_json(*witness) : Json(nullptr);
    text << "hamiltonian          " << to_string(h) << "\n"
         << "degree               " << c.degree << "\n"
         << "generator order      " << c.generator_order << "\n"
         << "hierarchy preserving " << (c.hierarchy_preserving ? "yes" : "no") << "\n";
    if (c.closure.witness_equation) {
      text << "open equation        d" << moment_name(ctx, c.closure.witness_equation->first) << "/dt references "
           << moment_name(ctx, c.closure.witness_equation->second) << "\n";
    }
    if (witness) {
      std::string state;
      for (const auto& mode : witness->state) state += (state.empty() ? "" : " x ") + to_string(mode);
      text << "witness state        " << state << "\n"
           << "witness derivative   d" << moment_name(ctx, witness->moment) << "/dt = " << to_string(witness->value) << "\n";
    }
  }
  if (g.format == "json") return j.dump(2) + "\n";
  return text.str();
}

struct MomentsArgs {
  std::string expr;
  int max_order = 2;
  std::vector<std::string> binds;
  std::vector<std::string> jumps;
};

std::string cmd_moments(const GlobalOptions& g, const MomentsArgs& a) {
  const AlgebraContext ctx = make_context(g);
  const Bindings bindings = parse_bindings(a.binds, ctx);
  const PhasePolynomial h = parse_expression(a.expr, ctx, bindings);
  if (a.max_order < 1) throw UsageError("--max-order must be at least 1");
  const MomentODESystem sys = a.jumps.empty() ? build_ode_system(generator_of(h), a.max_order)
                                              : open_moment_system(LindbladSpec(h, parse_jumps(a.jumps, ctx, bindings)), a.max_order);
  std::optional<ClosureReport> closure;
  if (a.max_order >= 2) closure = closure_report(sys);
  if (g.format == "json") {
    Json j = document("moments");
    j["expression"] = a.expr;
    j["canonical"] = to_string(h);
    j["system"] = to_json(sys);
    j["closure"] = closure ? to_json(*closure) : Json(nullptr);
    return j.dump(2) + "\n";
  }
  std::ostringstream text;
  std::size_t width = 0;
  const auto indices = moment_indices_up_to(ctx.num_vars(), a.max_order);
  for (const auto& m : indices) width = std::max(width, moment_name(ctx, m).size());
  text << "# generator order " << sys.generator_order << "\n";
  for (const auto& m : indices) {
    text << std::left << std::setw(static_cast<int>(width) + 4) << ("d" + moment_name(ctx, m) + "/dt") << " = "
         << render_rhs(ctx, sys.equations.at(m)) << "\n";
  }
  if (closure) text << "# order-2 block " << (closure->closed_at_two ? "closed" : "open") << "\n";
  return text.str();
}

struct SimulateArgs {
  std::string expr;
  std::string state = "vacuum";
  std::string times = "0";
  std::string sweep;
  std::vector<std::string> binds;
};

std::string cmd_simulate(const GlobalOptions& g, const SimulateArgs& a) {
  const AlgebraContext ctx = make_context(g);
  if (ctx.num_modes() > 2) throw UsageError("simulate supports at most 2 modes");
  const double hbar = ctx.hbar().get_d();
  const FockBasis basis{ctx.num_modes(), g.cutoff, hbar};
  basis.validate();
  const FockState initial = parse_state(a.state, basis);
  const std::vector<double> times = parse_times(a.times);
  std::string sweep_name;
  std::vector<std::string> sweep_values{""};
  if (!a.sweep.empty()) {
    const auto eq = a.sweep.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--sweep expects name=v1,v2,...");
    sweep_name = a.sweep.substr(0, eq);
    sweep_values = split(a.sweep.substr(eq + 1), ',');
    if (sweep_values.empty()) throw UsageError("--sweep needs at least one value");
  }
  const auto gaussian_initial = gaussian_of(a.state, ctx.num_modes(), hbar);

  struct Row {
    std::string param;
    double t;
    std::string name;
    double value;
  };
  std::vector<Row> rows;
  for (const auto& value : sweep_values) {
    std::vector<std::string> binds = a.binds;
    if (!sweep_name.empty()) binds.push_back(sweep_name + "=" + value);
    const PhasePolynomial h = parse_expression(a.expr, ctx, parse_bindings(binds, ctx));
    if (!h.is_real()) throw UsageError("simulate needs a real Hamiltonian");
    std::optional<SymplecticGenerator> gen;
    if (h.degree() <= 2 && gaussian_initial) gen = quadratic_to_matrix(h);
    for (double t : times) {
      if (t < 0) throw UsageError("--times must be non-negative");
      const FockState s = evolve(initial, h, t);
      auto emit = [&](const std::string& name, double v) { rows.push_back({value, t, name, v}); };
      for (const auto& m : moment_indices_up_to(ctx.num_vars(), 2)) {
        if (total_order(m) > 0) emit(moment_name(ctx, m), wigner_moment(s, m));
      }
      for (int k = 0; k < ctx.num_modes(); ++k) {
        for (const auto& [axis, label] : {std::pair{QuadratureAxis::x(k), ctx.var_name(ctx.x(k))},
                                          std::pair{QuadratureAxis::p(k), ctx.var_name(ctx.p(k))}}) {
          const CumulantVector c = quadrature_cumulants(s, axis, 4);
          emit("mean_" + label, c.mean);
          emit("var_" + label, c.variance());
          emit("m3_" + label, c.m3());
          emit("m4_" + label, c.m4());
          emit("kappa3_" + label, c.kappa(3));
          emit("kappa4_" + label, c.kappa(4));
        }
      }
      emit("cutoff", s.basis().cutoff);
      if (gen) {
        const GaussianState gs = evolve_gaussian(*gaussian_initial, *gen, t);
        for (int k = 0; k < ctx.num_modes(); ++k) {
          emit("gaussian_var_" + ctx.var_name(ctx.x(k)), gs.cov(k, k));
          emit("gaussian_var_" + ctx.var_name(ctx.p(k)), gs.cov(ctx.num_modes() + k, ctx.num_modes() + k));
        }
      }
    }
  }
  if (g.format == "json") {
    Json j = document("simulate");
    j["expression"] = a.expr;
    j["state"] = a.state;
    j["sweep"] = sweep_name.empty() ? Json(nullptr) : Json(sweep_name);
    Json out = Json::array();
    for (const auto& r : rows) out.push_back({{"param", r.param}, {"t", r.t}, {"name", r.name}, {"value", number_or_null(r.value)}});
    j["rows"] = out;
    return j.dump(2) + "\n";
  }
  std::ostringstream csv;
  csv << "param,t,name,value\n";
  for (const auto& r : rows) csv << r.param << ',' << format_double(r.t) << ',' << r.name << ',' << format_double(r.value) << '\n';
  return csv.str();
}

struct SampleArgs {
  std::string state = "vacuum";
  std::size_t n = 1000;
  int mode = 1;
  int threads = 1;
};

std::string cmd_sample(const GlobalOptions& g, const SampleArgs& a) {
  const AlgebraContext ctx = make_context(g);
  if (ctx.num_modes() > 2) throw UsageError("sample supports at most 2 modes");
  const FockBasis basis{ctx.num_modes(), g.cutoff, ctx.hbar().get_d()};
  basis.validate();
  const FockState state = parse_state(a.state, basis);
  SamplingOptions options;
  options.mode = a.mode - 1;
  options.num_threads = a.threads;
  if (options.mode < 0 || options.mode >= ctx.num_modes()) throw UsageError("--mode out of range");
  const SampleBatch batch = sample_husimi(state, a.n, g.seed, a.state, options);
  if (g.format == "json") {
    Json j = document("sample");
    j["state"] = a.state;
    j["n"] = batch.points.size();
    j["seed"] = batch.seed;
    j["hbar"] = batch.hbar;
    j["acceptance_rate"] = number_or_null(batch.acceptance_rate);
    j["rng"] = batch.rng_algorithm;
    Json estimates = Json::object();
    Json kurtosis = Json::object();
    if (batch.points.size() >= 5) {
      for (const auto& [axis, label] : {std::pair{QuadratureAxis::x(), "x"}, std::pair{QuadratureAxis::p(), "p"}}) {
        Json list = Json::array();
        for (const auto& e : estimate_cumulants(batch, axis, 4)) list.push_back(to_json(e));
        estimates[label] = list;
        kurtosis[label] = to_json(estimate_kurtosis(project_samples(batch, axis)));
      }
    }
    j["estimates"] = estimates;
    j["kurtosis"] = kurtosis;
    return j.dump(2) + "\n";
  }
  std::ostringstream csv;
  write_batch_csv(batch, csv);
  return csv.str();
}

struct ExperimentArgs {
  std::string gammas = "0.02,0.04,0.06,0.08";
  std::string rs = "0.2,0.5,0.8";
  double t = 1.0;
  std::size_t n = 100000;
  int threads = 1;
};

std::string cmd_experiment(const GlobalOptions& g, const ExperimentArgs& a) {
  const AlgebraContext ctx = make_context(g);
  if (ctx.num_modes() != 1) throw UsageError("experiment runs on a single mode");
  ExperimentOptions options;
  options.gamma_grid = parse_list(a.gammas, "--gammas");
  options.r_grid = parse_list(a.rs, "--rs");
  options.t = a.t;
  options.n = a.n;
  options.seed = g.seed;
  options.cutoff = g.cutoff;
  options.hbar = ctx.hbar().get_d();
  options.sampling.num_threads = a.threads;
  const ExperimentReport report = rigidity_experiment(options);
  if (g.format == "json") {
    Json j = document("experiment");
    j["n"] = a.n;
    j["t"] = a.t;
    j["seed"] = g.seed;
    j.update(to_json(report));
    return j.dump(2) + "\n";
  }
  std::ostringstream text;
  text << std::left << std::setw(10) << "arm" << std::setw(8) << "param" << std::setw(36) << "dm2 (exact)" << "dm4 (exact)\n";
  auto line = [&](const char* arm, const ArmPoint& p) {
    std::ostringstream dm2, dm4;
    dm2 << std::setprecision(4) << p.dm2 << " +- " << p.dm2_err << " (" << p.exact_dm2 << ")";
    dm4 << std::setprecision(4) << p.dm4 << " +- " << p.dm4_err << " (" << p.exact_dm4 << ")";
    text << std::setw(10) << arm << std::setw(8) << p.param << std::setw(36) << dm2.str() << dm4.str() << "\n";
  };
  for (const auto& p : report.cubic) line("cubic", p);
  for (const auto& p : report.squeezing) line("squeezing", p);
  text << "fit dm4 = " << report.fit.slope << " * dm2 + " << report.fit.intercept << "  (r2 " << report.fit.r2 << ")\n"
       << "oracle exponents: dm2 ~ gamma^" << report.exponent_dm2 << ", dm4 ~ gamma^" << report.exponent_dm4 << "\n"
       << "squeezing arm max |dm4| = " << report.max_abs_squeezing_dm4 << " +- " << report.max_abs_squeezing_dm4_err
       << (report.squeezing_consistent ? " (consistent with 0)" : " (NOT consistent with 0)") << "\n";
  return text.str();
}

struct AlgebraArgs {
  std::vector<std::string> exprs;
  std::vector<std::string> binds;
};

std::string cmd_algebra(const GlobalOptions& g, const AlgebraArgs& a) {
  const AlgebraContext ctx = make_context(g);
  const Bindings bindings = parse_bindings(a.binds, ctx);
  std::vector<PhasePolynomial> basis;
  for (const auto& e : a.exprs) basis.push_back(parse_expression(e, ctx, bindings));
  const AlgebraClosureReport report = algebra_closure_check(basis);
  if (g.format == "json") {
    Json j = document("algebra");
    Json members = Json::array();
    for (const auto& b : basis) members.push_back(to_string(b));
    j["basis"] = members;
    j.update(to_json(report));
    return j.dump(2) + "\n";
  }
  std::ostringstream text;
  for (const auto& s : report.brackets) {
    text << "{" << to_string(basis[s.i]) << ", " << to_string(basis[s.j]) << "} = " << to_string(s.bracket);
    if (s.in_span) {
      text << "   [";
      for (std::size_t k = 0; k < s.coefficients.size(); ++k) text << (k ? ", " : "") << to_string(s.coefficients[k]);
      text << "]\n";
    } else {
      text << "   [outside span]\n";
    }
  }
  text << "closed               " << (report.closed ? "yes" : "no") << "\n"
       << "hierarchy preserving " << (report.hierarchy_preserving ? "yes" : "no") << "\n";
  return text.str();
}

struct BracketArgs {
  std::string left;
  std::string right;
  std::string kind = "poisson";
  std::vector<std::string> binds;
};

std::string cmd_bracket(const GlobalOptions& g, const BracketArgs& a) {
  const AlgebraContext ctx = make_context(g);
  const Bindings bindings = parse_bindings(a.binds, ctx);
  const PhasePolynomial f = parse_expression(a.left, ctx, bindings);
  const PhasePolynomial h = parse_expression(a.right, ctx, bindings);
  const PhasePolynomial result = a.kind == "moyal" ? moyal_bracket(f, h) : poisson_bracket(f, h);
  if (g.format == "json") {
    Json j = document("bracket");
    j["kind"] = a.kind;
    j["left"] = to_string(f);
    j["right"] = to_string(h);
    j["result"] = to_json(result);
    return j.dump(2) + "\n";
  }
  return to_string(result) + "\n";
}

int run(int argc, char** argv) {
  CLI::App app{"phaserigid: phase-space generators, moment hierarchies and their Fock-space and sampling cross-checks"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOptions g;
  app.add_option("--hbar", g.hbar, "Reduced Planck constant as a rational, e.g. 1 or 1/2")->capture_default_str();
  app.add_option("--modes", g.modes, "Number of modes")->capture_default_str();
  app.add_option("--seed", g.seed, "Random seed for sampling commands")->capture_default_str();
  app.add_option("--cutoff", g.cutoff, "Initial Fock cutoff per mode")->capture_default_str();
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();
  app.add_option("--out", g.out, "Write the output to this file (atomically) instead of stdout");

  ClassifyArgs classify;
  auto* c = app.add_subcommand("classify", "Classify a Hamiltonian (or, with --jump, a Lindblad channel)");
  c->add_option("expr", classify.expr, "Hamiltonian symbol")->required();
  c->add_option("--bind", classify.binds, "Parameter binding name=value");
  c->add_option("--jump", classify.jumps, "Jump operator rate:symbol");

  MomentsArgs moments;
  auto* m = app.add_subcommand("moments", "Print the moment-hierarchy ODE system");
  m->add_option("expr", moments.expr, "Hamiltonian symbol")->required();
  m->add_option("--max-order", moments.max_order, "Highest moment order")->capture_default_str();
  m->add_option("--bind", moments.binds, "Parameter binding name=value");
  m->add_option("--jump", moments.jumps, "Jump operator rate:symbol");

  SimulateArgs simulate;
  auto* s = app.add_subcommand("simulate", "Evolve a Fock state and emit moment/cumulant trajectories");
  s->add_option("expr", simulate.expr, "Hamiltonian symbol")->required();
  s->add_option("--state", simulate.state, "vacuum | coherent:re[,im] | number:n | squeezed:r | superposition:n; ';' between modes")
      ->capture_default_str();
  s->add_option("--times", simulate.times, "start:stop:count or comma list")->capture_default_str();
  s->add_option("--sweep", simulate.sweep, "Parameter sweep name=v1,v2,...");
  s->add_option("--bind", simulate.binds, "Parameter binding name=value");

  SampleArgs sample;
  auto* sa = app.add_subcommand("sample", "Draw heterodyne (Husimi) samples");
  sa->add_option("--state", sample.state, "State specification (see simulate)")->capture_default_str();
  sa->add_option("-n,--count", sample.n, "Number of samples")->capture_default_str();
  sa->add_option("--mode", sample.mode, "Sampled mode (1-based)")->capture_default_str();
  sa->add_option("--threads", sample.threads, "Worker threads (results do not depend on it)")->capture_default_str();

  ExperimentArgs experiment;
  auto* e = app.add_subcommand("experiment", "Run the cubic-coupling and squeezing-control sampling experiment");
  e->add_option("--gammas", experiment.gammas, "Cubic strengths")->capture_default_str();
  e->add_option("--rs", experiment.rs, "Squeezing parameters")->capture_default_str();
  e->add_option("--t", experiment.t, "Evolution time of the cubic arm")->capture_default_str();
  e->add_option("-n,--count", experiment.n, "Samples per arm point")->capture_default_str();
  e->add_option("--threads", experiment.threads, "Worker threads")->capture_default_str();

  AlgebraArgs algebra;
  auto* al = app.add_subcommand("algebra", "Check Poisson-bracket closure of a list of symbols");
  al->add_option("exprs", algebra.exprs, "Symbols");
  al->add_option("--bind", algebra.binds, "Parameter binding name=value");

  BracketArgs bracket;
  auto* b = app.add_subcommand("bracket", "Print the Poisson or Moyal bracket of two symbols");
  b->add_option("left", bracket.left, "First symbol")->required();
  b->add_option("right", bracket.right, "Second symbol")->required();
  b->add_option("--kind", bracket.kind, "poisson or moyal")
      ->check(CLI::IsMember({"poisson", "moyal"}))
      ->capture_default_str();
  b->add_option("--bind", bracket.binds, "Parameter binding name=value");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    if (err.get_exit_code() == 0) return app.exit(err);
    std::cerr << "error: " << err.what() << "\n" << "run with --help for usage\n";
    return kUsage;
  }

  try {
    std::string output;
    if (*c) output = cmd_classify(g, classify);
    if (*m) output = cmd_moments(g, moments);
    if (*s) output = cmd_simulate(g, simulate);
    if (*sa) output = cmd_sample(g, sample);
    if (*e) output = cmd_experiment(g, experiment);
    if (*al) output = cmd_algebra(g, algebra);
    if (*b) output = cmd_bracket(g, bracket);
    write_output(output, g.out);
    return kOk;
  } catch (const ParseError& err) {
    std::cerr << "parse error: " << err.what() << "\n";
    return kUsage;
  } catch (const UsageError& err) {
    std::cerr << "usage error: " << err.what() << "\n";
    return kUsage;
  } catch (const PreconditionError& err) {
    std::cerr << "invalid input: " << err.what() << "\n";
    return kUsage;
  } catch (const ContextMismatch& err) {
    std::cerr << "invalid input: " << err.what() << "\n";
    return kUsage;
  } catch (const CutoffError& err) {
    std::cerr << "cutoff error: " << err.what() << " (try a larger --cutoff)\n";
    return kResource;
  } catch (const SamplingError& err) {
    std::cerr << "sampling error: " << err.what() << " (try a larger --cutoff)\n";
    return kResource;
  } catch (const std::exception& err) {
    std::cerr << "internal error: " << err.what() << "\n";
    return kInternal;
  }
}

}  // namespace
}  // namespace phaserigid

int main(int argc, char** argv) { return phaserigid::run(argc, argv); }

/* Copyright 2026 The qfid Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "qfid/cli/commands.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <optional>
#include <sstream>
#include <variant>

#include <CLI11.hpp>

#include "qfid/channels.hpp"
#include "qfid/cli/io.hpp"
#include "qfid/error.hpp"
#include "qfid/fidelity.hpp"
#include "qfid/haar_mc.hpp"
#include "qfid/random.hpp"

namespace qfid::cli {

namespace {

struct LoadedMatrix {
  ComplexMatrix matrix;
  json provenance;
};

struct LoadedChannel {
  KrausChannel channel;
  json provenance;
};

json provenance(const std::string& path, const std::string& bytes) {
  return json{{"path", path}, {"sha256", sha256_hex(bytes)}};
}

LoadedMatrix load_matrix(const std::string& path) {
  const std::string bytes = read_file(path);
  return {matrix_from_json(parse_document(bytes, path)), provenance(path, bytes)};
}

LoadedChannel load_channel(const std::string& path) {
  const std::string bytes = read_file(path);
  return {channel_from_json(parse_document(bytes, path)), provenance(path, bytes)};
}

std::vector<double> parse_number_list(const std::string& text, std::string_view what) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    double v = 0.0;
    const char* first = item.data();
    const char* last = item.data() + item.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (item.empty() || ec != std::errc() || ptr != last || !std::isfinite(v)) {
      throw InputError("grid spec: bad " + std::string(what) + " value \"" + item + "\"");
    }
    out.push_back(v);
  }
  if (out.empty() || (!text.empty() && text.back() == ',')) {
    throw InputError("grid spec: empty " + std::string(what) + " list");
  }
  return out;
}

struct UnitaryArgs {
  std::string target;
  std::string actual;
  std::vector<std::size_t> subspace;
  bool worst_case = false;
  bool conditional = false;
  std::uint64_t mc = 0;
  std::uint64_t seed = 0;
};

struct KrausArgs {
  std::string target;
  std::string channel;
  std::uint64_t mc = 0;
  std::uint64_t seed = 0;
  bool remix_check = false;
};

struct ScaleArgs {
  std::size_t n = 0;
  std::size_t k = 0;
  double f1 = 0.0;
  std::string channel;
  bool sweep = false;
  bool check = false;
};

struct OptimizeArgs {
  std::string target;
  std::size_t pulses = 1;
  std::string grid = "1";
  std::uint64_t seed = 0;
  std::uint64_t max_evals = 10000;
};

struct McArgs {
  std::string matrix;
  std::uint64_t samples = kDefaultSamples;
  std::uint64_t seed = 0;
};

struct ChannelArgs {
  std::string kind;
  double parameter = 0.0;
};

McOptions mc_options(std::uint64_t samples, std::uint64_t seed) {
  McOptions o;
  o.samples = samples;
  o.seed = seed;
  return o;
}

json cmd_unitary(const UnitaryArgs& a) {
  const LoadedMatrix target = load_matrix(a.target);
  const LoadedMatrix actual = load_matrix(a.actual);
  if (a.conditional && a.subspace.empty()) {
    throw InputError("--conditional requires --subspace");
  }

  FidelityReport full = avg_unitary(target.matrix, actual.matrix);
  if (a.worst_case) full.worst_case = worst_case_unitary(target.matrix, actual.matrix);
  if (a.mc > 0) {
    full.mc_crosscheck = mc_quadratic_form_average(adjoint(target.matrix) * actual.matrix,
                                                   mc_options(a.mc, a.seed));
  }

  json doc{{"inputs", {{"target", target.provenance}, {"actual", actual.provenance}}},
           {"unitary", to_json(full)}};

  if (!a.subspace.empty()) {
    const SubspaceSelector sel(target.matrix.rows(), a.subspace);
    FidelityReport sub = a.conditional ? conditional_fidelity(target.matrix, actual.matrix, sel)
                                       : avg_subspace(target.matrix, actual.matrix, sel);
    if (!a.conditional) sub.acceptance_q = acceptance_probability(actual.matrix, sel);
    if (a.mc > 0) {
      const ComplexMatrix m_rel =
          principal_submatrix(adjoint(target.matrix) * actual.matrix, sel.indices());
      sub.mc_crosscheck = mc_quadratic_form_average(m_rel, mc_options(a.mc, a.seed));
    }
    json sub_json = to_json(sub);
    sub_json["indices"] = a.subspace;
    doc["subspace"] = std::move(sub_json);
  }
  return doc;
}

json cmd_kraus(const KrausArgs& a) {
  const LoadedMatrix target = load_matrix(a.target);
  const LoadedChannel channel = load_channel(a.channel);
  FidelityReport report = avg_kraus(target.matrix, channel.channel);
  if (a.mc > 0) {
    report.mc_crosscheck =
        mc_channel_fidelity(target.matrix, channel.channel, mc_options(a.mc, a.seed));
  }
  json doc{{"inputs", {{"target", target.provenance}, {"channel", channel.provenance}}},
           {"kraus", to_json(report)}};
  if (a.remix_check) {
    SplitMix64 rng(a.seed);
    const ComplexMatrix v = random_unitary(channel.channel.size(), rng);
    const double remixed = avg_kraus(target.matrix, remix(channel.channel, v)).mean_fidelity;
    doc["remix_check"] = json{{"seed", a.seed},
                              {"remixed_fidelity", remixed},
                              {"difference", std::abs(remixed - report.mean_fidelity)}};
  }
  return doc;
}

std::string sweep_csv(std::size_t n, std::size_t k_max, double f1) {
  std::string csv = "K,F_nK,f1_pow_3K_2,rel_gap\n";
  for (std::size_t k = 1; k <= k_max; ++k) {
    const double f = composite_fidelity(n, k, f1);
    const double naive = std::pow(f1, 1.5 * static_cast<double>(k));
    csv += std::to_string(k) + "," + format_double(f) + "," + format_double(naive) + "," +
           format_double(std::abs(f - naive) / f) + "\n";
  }
  return csv;
}

// Returns either a JSON document or CSV text.
std::variant<json, std::string> cmd_scale(const ScaleArgs& a) {
  if (a.k == 0) throw InputError("--K must be at least 1");
  if (!a.channel.empty()) {
    const LoadedChannel channel = load_channel(a.channel);
    const KrausChannel& ch = channel.channel;
    const double f1 = avg_kraus(ComplexMatrix::identity(ch.dim()), ch).mean_fidelity;
    if (a.sweep) return sweep_csv(ch.dim(), a.k, f1);
    json doc{{"inputs", {{"channel", channel.provenance}}},
             {"composite",
              {{"n", ch.dim()},
               {"K", a.k},
               {"f1", f1},
               {"mean_fidelity", composite_fidelity(ch.dim(), a.k, f1)}}}};
    if (a.check) {
      const CompositeCheck check = composite_bruteforce_check(ch, a.k);
      doc["check"] = json{{"bruteforce", check.bruteforce},
                          {"closed_form", check.closed_form},
                          {"difference", std::abs(check.bruteforce - check.closed_form)}};
    }
    return doc;
  }
  if (a.check) throw InputError("--check requires --channel");
  if (a.n == 0) throw InputError("scale needs --n and --f1, or --channel");
  if (a.sweep) return sweep_csv(a.n, a.k, a.f1);
  return json{{"composite",
               {{"n", a.n},
                {"K", a.k},
                {"f1", a.f1},
                {"mean_fidelity", composite_fidelity(a.n, a.k, a.f1)}}}};
}

json cmd_optimize(const OptimizeArgs& a) {
  const LoadedMatrix target = load_matrix(a.target);
  const ErrorGrid grid = parse_grid(a.grid);
  OptOptions options;
  options.seed = a.seed;
  options.max_evaluations = a.max_evals;
  const OptResult result = design_sequence(target.matrix, a.pulses, grid, options);
  json pulses = json::array();
  for (const Pulse& p : result.best_params.pulses()) {
    pulses.push_back(json{{"theta", p.theta}, {"phi", p.phi}});
  }
  return json{{"inputs", {{"target", target.provenance}}},
              {"grid", {{"amplitude_scales", grid.amplitude_scales},
                        {"detunings", grid.detunings}}},
              {"optimize",
               {{"pulses", std::move(pulses)},
                {"objective", result.best_objective},
                {"evaluations", result.evaluations},
                {"converged", result.converged}}}};
}

json cmd_mc(const McArgs& a) {
  const LoadedMatrix m = load_matrix(a.matrix);
  const McEstimate mc = mc_quadratic_form_average(m.matrix, mc_options(a.samples, a.seed));
  const double closed = avg_quadratic_form(m.matrix);
  return json{{"inputs", {{"matrix", m.provenance}}},
              {"quadratic_form",
               {{"closed_form", closed},
                {"mc", to_json(mc)},
                {"deviation_in_stderr",
                 mc.std_error > 0.0 ? std::abs(mc.mean - closed) / mc.std_error : 0.0}}}};
}

json cmd_channel(const ChannelArgs& a) {
  if (a.kind == "depolarizing") return channel_to_json(depolarizing_channel(a.parameter));
  if (a.kind == "amplitude-damping") {
    return channel_to_json(amplitude_damping_channel(a.parameter));
  }
  throw InputError("unknown channel kind \"" + a.kind +
                   "\" (expected depolarizing or amplitude-damping)");
}

}  // namespace

ErrorGrid parse_grid(const std::string& spec) {
  ErrorGrid grid;
  const auto colon = spec.find(':');
  grid.amplitude_scales = parse_number_list(spec.substr(0, colon), "amplitude scale");
  if (colon != std::string::npos) {
    grid.detunings = parse_number_list(spec.substr(colon + 1), "detuning");
  }
  return grid;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Average fidelities of quantum operations, with Monte Carlo cross-checks", "qfid"};
  app.require_subcommand(1);
  bool timing = false;
  app.add_flag("--timing", timing, "Include wall-clock time in the report");

  UnitaryArgs ua;
  auto* unitary = app.add_subcommand("unitary", "Fidelity of an actual unitary against a target");
  unitary->add_option("target", ua.target, "Target matrix file")->required();
  unitary->add_option("actual", ua.actual, "Actual matrix file")->required();
  unitary->add_option("--subspace", ua.subspace, "Relevant basis indices, e.g. 0,1")
      ->delimiter(',');
  unitary->add_flag("--worst-case", ua.worst_case, "Report the minimum over pure states");
  unitary->add_flag("--conditional", ua.conditional, "Report Q and F/Q (needs --subspace)");
  unitary->add_option("--mc", ua.mc, "Monte Carlo cross-check sample count");
  unitary->add_option("--seed", ua.seed, "Monte Carlo seed");

  KrausArgs ka;
  auto* kraus = app.add_subcommand("kraus", "Fidelity of a Kraus channel against a target");
  kraus->add_option("target", ka.target, "Target matrix file")->required();
  kraus->add_option("channel", ka.channel, "Channel file")->required();
  kraus->add_option("--mc", ka.mc, "Monte Carlo cross-check sample count");
  kraus->add_option("--seed", ka.seed, "Seed for Monte Carlo and the remix unitary");
  kraus->add_flag("--remix-check", ka.remix_check, "Recompute after a random Kraus remixing");

  ScaleArgs sa;
  auto* scale = app.add_subcommand("scale", "K-qudit register fidelity from the single-qudit one");
  scale->add_option("--n", sa.n, "Single-qudit dimension");
  scale->add_option("--K", sa.k, "Number of qudits")->required();
  scale->add_option("--f1", sa.f1, "Single-qudit average fidelity");
  scale->add_option("--channel", sa.channel, "Channel file supplying n and f1");
  scale->add_flag("--sweep", sa.sweep, "CSV table for K = 1..K");
  scale->add_flag("--check", sa.check, "Brute-force check on the tensor-power channel");

  OptimizeArgs oa;
  auto* optimize_cmd = app.add_subcommand("optimize", "Composite-pulse design for a qubit gate");
  optimize_cmd->add_option("target", oa.target, "Target 2x2 matrix file")->required();
  optimize_cmd->add_option("--pulses", oa.pulses, "Number of pulses");
  optimize_cmd->add_option("--grid", oa.grid, "Error grid: scales[:detunings], comma lists");
  optimize_cmd->add_option("--seed", oa.seed, "Seed for restarts and padding phases");
  optimize_cmd->add_option("--max-evals", oa.max_evals, "Evaluation budget per stage");

  McArgs ma;
  auto* mc = app.add_subcommand("mc", "Monte Carlo estimate of the Haar average of |<psi|M|psi>|^2");
  mc->add_option("matrix", ma.matrix, "Matrix file")->required();
  mc->add_option("--samples", ma.samples, "Sample count");
  mc->add_option("--seed", ma.seed, "Seed");

  ChannelArgs ca;
  auto* channel = app.add_subcommand("channel", "Write a named channel as a channel file");
  channel->add_option("kind", ca.kind, "depolarizing | amplitude-damping")->required();
  channel->add_option("parameter", ca.parameter, "p, or Gamma*t")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "qfid: " << e.what() << "\n";
    return kInputError;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    std::variant<json, std::string> result;
    if (unitary->parsed()) {
      result = cmd_unitary(ua);
    } else if (kraus->parsed()) {
      result = cmd_kraus(ka);
    } else if (scale->parsed()) {
      result = cmd_scale(sa);
    } else if (optimize_cmd->parsed()) {
      result = cmd_optimize(oa);
    } else if (mc->parsed()) {
      result = cmd_mc(ma);
    } else {
      out << dump_document(cmd_channel(ca));
      return kSuccess;
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (auto* csv = std::get_if<std::string>(&result)) {
      out << *csv;
    } else {
      json& doc = std::get<json>(result);
      doc["command"] = args;
      if (timing) doc["wall_time_s"] = seconds;
      out << dump_document(doc);
    }
    err << "qfid: wall time " << seconds << " s\n";
    return kSuccess;
  } catch (const DegenerateAcceptanceError& e) {
    err << "qfid: " << e.what() << "\n";
    return kDegenerate;
  } catch (const std::exception& e) {
    err << "qfid: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace qfid::cli

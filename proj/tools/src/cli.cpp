// Copyright 2026 The tinopt Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "cli.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <random>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "io.hpp"
#include "tinopt/capacity_gap.hpp"
#include "tinopt/channel_model.hpp"
#include "tinopt/errors.hpp"
#include "tinopt/netsim.hpp"
#include "tinopt/potential_graph.hpp"
#include "tinopt/region.hpp"

namespace tinopt::cli {
namespace {

struct Globals {
  std::uint64_t seed = 1;
  std::size_t trials = 1000;
  std::string format;
  unsigned threads = 1;
  std::string output;
};

struct Result {
  int code = kExitOk;
  std::string text;
};

std::string read_text(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

io::ChannelInput load_channel(const std::string& path) {
  return io::parse_channel(read_text(path), path);
}

GdofTuple parse_gdof(const std::string& text, std::size_t users) {
  std::vector<double> d = io::parse_reals(text, "--gdof");
  if (d.size() != users) {
    throw InvalidInput("--gdof has " + std::to_string(d.size()) + " entries for a " +
                       std::to_string(users) + "-user channel");
  }
  return GdofTuple(std::move(d));
}

std::vector<double> parse_powers(const std::string& text) {
  std::vector<double> p = io::parse_reals(text, "--power");
  for (double v : p) {
    if (!(v > 1.0)) throw InvalidInput("--power values must exceed 1");
  }
  return p;
}

void require_format(const std::string& format, std::initializer_list<const char*> allowed,
                    const std::string& command) {
  if (format.empty()) return;
  for (const char* a : allowed) {
    if (format == a) return;
  }
  throw InvalidInput(command + " does not support --format " + format);
}

Result check_condition(const std::string& path, const Globals& g) {
  require_format(g.format, {"json", "csv"}, "check-condition");
  const ConditionReport report = check_tin_condition(load_channel(path).alpha);
  return {report.holds ? kExitOk : kExitViolation,
          g.format == "csv" ? io::condition_csv(report) : io::condition_json(report)};
}

Result region(const std::string& path, const std::string& silent_text, bool minimized,
              bool as_union, const Globals& g) {
  require_format(g.format, {"json", "csv"}, "region");
  const ChannelMatrix alpha = load_channel(path).alpha;
  if (as_union) {
    if (g.format == "csv") throw InvalidInput("--union output is JSON only");
    if (!silent_text.empty()) throw InvalidInput("--union and --silent-set are exclusive");
    TinRegion tin = general_tin_region(alpha);
    if (minimized) {
      for (RegionMember& m : tin.members) m.region = minimize(m.region);
    }
    return {kExitOk, io::union_json(tin)};
  }
  const std::vector<std::size_t> silent =
      io::parse_users(silent_text, alpha.users(), "--silent-set");
  Polyhedron poly = polyhedral_region(alpha, silent);
  if (minimized) poly = minimize(poly);
  if (g.format == "csv") return {kExitOk, io::vertices_csv(enumerate_vertices(poly), alpha.users())};
  return {kExitOk, io::region_json(poly)};
}

Result membership(const std::string& path, const std::string& gdof, bool polyhedral,
                  const Globals& g) {
  require_format(g.format, {"json"}, "membership");
  const ChannelMatrix alpha = load_channel(path).alpha;
  const GdofTuple d = parse_gdof(gdof, alpha.users());
  if (polyhedral) {
    const MembershipCertificate cert = decide_membership(build_graph(alpha, d));
    return {is_feasible(cert) ? kExitOk : kExitViolation,
            io::certificate_json(cert, alpha.users())};
  }
  const TinMembership m = point_in_tin_region(alpha, d);
  return {m.inside ? kExitOk : kExitViolation, io::membership_json(m, alpha.users())};
}

Result power_alloc(const std::string& path, const std::string& gdof, const Globals& g) {
  require_format(g.format, {"json"}, "power-alloc");
  const ChannelMatrix alpha = load_channel(path).alpha;
  const GdofTuple d = parse_gdof(gdof, alpha.users());
  const TinMembership m = point_in_tin_region(alpha, d);
  std::vector<double> achieved;
  bool verified = false;
  if (const auto* ok = std::get_if<FeasibleAllocation>(&m.certificate)) {
    achieved = tin_gdof(alpha, ok->power).values();
    verified = true;
    for (std::size_t i = 0; i < d.size(); ++i) {
      verified = verified && achieved[i] >= d[i] - kLengthTolerance;
    }
  }
  return {verified ? kExitOk : kExitViolation,
          io::power_alloc_json(m.certificate, alpha.users(), achieved, verified)};
}

Result gap_check(const std::string& path, const std::string& gdof, std::size_t points,
                 const std::string& power_text, const Globals& g) {
  require_format(g.format, {"csv"}, "gap-check");
  const io::ChannelInput input = load_channel(path);
  const ChannelMatrix& alpha = input.alpha;
  std::vector<double> powers;
  if (!power_text.empty()) {
    powers = parse_powers(power_text);
  } else if (input.nominal_power) {
    powers = {*input.nominal_power};
  } else {
    powers = {1e2, 1e4, 1e6};
  }
  std::vector<std::pair<std::string, GdofTuple>> targets;
  if (!gdof.empty()) {
    targets.emplace_back("d", parse_gdof(gdof, alpha.users()));
  } else {
    // Random directions scaled onto the boundary of the region.
    const Polyhedron poly = polyhedral_region(alpha);
    std::mt19937_64 eng(g.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t n = 0; n < points; ++n) {
      std::vector<double> dir(alpha.users());
      for (double& v : dir) v = unit(eng);
      const auto boundary = scale_to_boundary(poly, GdofTuple(std::move(dir)));
      if (!boundary) throw PreconditionFailed("the polyhedral region is empty");
      targets.emplace_back("pt" + std::to_string(n + 1), *boundary);
    }
  }
  std::vector<io::GapInstance> instances;
  bool holds = true;
  for (const auto& [id, d] : targets) {
    for (double p : powers) {
      GapCertificate cert = gap_certificate(FiniteSnrChannel(alpha, p), d);
      holds = holds && cert.holds();
      instances.push_back({id, std::move(cert)});
    }
  }
  return {holds ? kExitOk : kExitViolation, io::gap_csv(instances)};
}

Result gdof_limits(const std::string& path, const std::string& cycle_text,
                   const std::string& power_text, double tolerance, const Globals& g) {
  require_format(g.format, {"json"}, "gdof-limits");
  const ChannelMatrix alpha = load_channel(path).alpha;
  const std::vector<double> powers = parse_powers(power_text);
  std::vector<CyclicSequence> cycles;
  if (!cycle_text.empty()) {
    cycles.emplace_back(io::parse_users(cycle_text, alpha.users(), "--cycle"));
  } else {
    std::vector<std::size_t> all(alpha.users());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    cycles = enumerate_cycles(all);
    if (cycles.empty()) throw InvalidInput("gdof-limits needs at least two users");
  }
  std::vector<LimitReport> reports;
  bool converged = true;
  for (const CyclicSequence& c : cycles) {
    reports.push_back(gdof_limit_checks(alpha, c, powers, tolerance));
    converged = converged && reports.back().converged();
  }
  return {converged ? kExitOk : kExitViolation, io::limits_json(reports, tolerance)};
}

void add_sim_options(CLI::App* cmd, netsim::SimConfig& cfg, std::string& terrain,
                     double& shadowing) {
  cmd->add_option("--cell-radius", cfg.cell_radius_m, "Cell radius in meters")
      ->capture_default_str();
  cmd->add_option("--carrier-mhz", cfg.carrier_mhz, "Carrier frequency")->capture_default_str();
  cmd->add_option("--noise-floor", cfg.noise_floor_dbm, "Noise floor in dBm")
      ->capture_default_str();
  cmd->add_option("--boundary-snr", cfg.boundary_snr_db, "Median SNR at the coverage boundary")
      ->capture_default_str();
  cmd->add_option("--terrain", terrain, "Erceg terrain category (A, B or C)")
      ->capture_default_str();
  cmd->add_option("--bs-height", cfg.bs_height_m, "Base station height in meters")
      ->capture_default_str();
  cmd->add_option("--rx-height", cfg.rx_height_m, "Receiver height in meters")
      ->capture_default_str();
  cmd->add_option("--reference-distance", cfg.reference_distance_m, "Erceg d0 in meters")
      ->capture_default_str();
  cmd->add_option("--antenna-gain", cfg.antenna_gain_db, "Total antenna gain in dB")
      ->capture_default_str();
  cmd->add_option("--frequency-correction", cfg.frequency_correction_db,
                  "Path loss frequency correction in dB")
      ->capture_default_str();
  cmd->add_option("--height-correction", cfg.height_correction_db,
                  "Path loss receiver height correction in dB")
      ->capture_default_str();
  cmd->add_option("--shadowing-sigma", shadowing, "Lognormal shadowing sigma in dB (0 = off)")
      ->capture_default_str();
}

void finish_sim_config(netsim::SimConfig& cfg, const std::string& terrain, double shadowing,
                       const Globals& g) {
  cfg.terrain = netsim::parse_terrain(terrain);
  if (shadowing < 0.0) throw InvalidInput("--shadowing-sigma must be >= 0");
  if (shadowing > 0.0) cfg.shadowing_sigma_db = shadowing;
  cfg.master_seed = g.seed;
  cfg.trials = g.trials;
  if (g.threads == 0) throw InvalidInput("--threads must be positive");
}

void emit(const Result& result, const Globals& g, std::ostream& out) {
  if (g.output.empty() || g.output == "-") {
    out << result.text;
    return;
  }
  std::ofstream file(g.output, std::ios::binary);
  if (!file) throw InvalidInput(g.output + ": cannot open for writing");
  file << result.text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Treating-interference-as-noise optimality and GDoF region tool", "tinopt"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "Master random seed")->capture_default_str();
  app.add_option("--trials", g.trials, "Monte-Carlo trials")->capture_default_str();
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--threads", g.threads, "Worker threads for simulations")
      ->capture_default_str();
  app.add_option("-o,--output", g.output, "Write output to this file instead of stdout");

  std::string channel;
  std::string gdof;
  std::string silent_set;
  std::string cycle;
  std::string power;
  bool minimized = false;
  bool as_union = false;
  bool polyhedral = false;
  std::size_t points = 5;
  double tolerance = kLimitTolerance;

  auto* check = app.add_subcommand("check-condition", "Per-user TIN optimality verdicts");
  check->add_option("channel", channel, "Channel JSON file")->required();

  auto* reg = app.add_subcommand("region", "Polyhedral TIN region (JSON) or its vertices (CSV)");
  reg->add_option("channel", channel, "Channel JSON file")->required();
  reg->add_option("--silent-set", silent_set, "Comma-separated silent users (1-based)");
  reg->add_flag("--minimize", minimized, "Drop bounds implied by other bounds");
  reg->add_flag("--union", as_union, "Emit every member of the general TIN region");

  auto* mem = app.add_subcommand("membership", "Decide whether a GDoF tuple is TIN-achievable");
  mem->add_option("channel", channel, "Channel JSON file")->required();
  mem->add_option("--gdof", gdof, "Comma-separated GDoF tuple")->required();
  mem->add_flag("--polyhedral", polyhedral, "Test against the region with no silent users only");

  auto* alloc = app.add_subcommand("power-alloc", "Power exponents achieving a GDoF tuple");
  alloc->add_option("channel", channel, "Channel JSON file")->required();
  alloc->add_option("--gdof", gdof, "Comma-separated GDoF tuple")->required();

  auto* gap = app.add_subcommand("gap-check", "Finite-SNR constant-gap report (CSV)");
  gap->add_option("channel", channel, "Channel JSON file")->required();
  gap->add_option("--gdof", gdof, "GDoF tuple to certify (default: random boundary points)");
  gap->add_option("--points", points, "Random boundary points when --gdof is absent")
      ->capture_default_str();
  gap->add_option("--power", power, "Comma-separated nominal powers P");

  std::string limit_power = "100,10000,100000000";
  auto* lim = app.add_subcommand("gdof-limits", "Convergence of cyclic bounds to GDoF limits");
  lim->add_option("channel", channel, "Channel JSON file")->required();
  lim->add_option("--cycle", cycle, "Cyclic sequence, e.g. 1,2,3 (default: every cycle)");
  lim->add_option("--power", limit_power, "Increasing nominal powers")->capture_default_str();
  lim->add_option("--tolerance", tolerance, "Error tolerance at the largest power")
      ->capture_default_str();

  netsim::SimConfig sim_cfg;
  std::string terrain = "B";
  double shadowing = 0.0;
  std::size_t sim_users = sim_cfg.users;
  double sim_radius = sim_cfg.coverage_radius_m;
  std::int64_t dump_instance = -1;
  auto* sim = app.add_subcommand("simulate", "Probability that the optimality condition holds");
  sim->add_option("--users", sim_users, "Number of users K")->capture_default_str();
  sim->add_option("--coverage-radius", sim_radius, "Coverage radius in meters")
      ->capture_default_str();
  sim->add_option("--dump-instance", dump_instance, "Emit the network of this trial as JSON");
  add_sim_options(sim, sim_cfg, terrain, shadowing);

  std::string sweep_users = "2,5,10,15";
  std::string sweep_radii = "50,100,200";
  auto* sweep = app.add_subcommand("sweep", "Condition probability over a (K, radius) grid (CSV)");
  sweep->add_option("--users", sweep_users, "Comma-separated user counts")->capture_default_str();
  sweep->add_option("--radii", sweep_radii, "Comma-separated coverage radii in meters")
      ->capture_default_str();
  add_sim_options(sweep, sim_cfg, terrain, shadowing);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    Result result;
    if (*check) {
      result = check_condition(channel, g);
    } else if (*reg) {
      result = region(channel, silent_set, minimized, as_union, g);
    } else if (*mem) {
      result = membership(channel, gdof, polyhedral, g);
    } else if (*alloc) {
      result = power_alloc(channel, gdof, g);
    } else if (*gap) {
      result = gap_check(channel, gdof, points, power, g);
    } else if (*lim) {
      result = gdof_limits(channel, cycle, limit_power, tolerance, g);
    } else if (*sim) {
      require_format(g.format, {"json", "csv"}, "simulate");
      sim_cfg.users = sim_users;
      sim_cfg.coverage_radius_m = sim_radius;
      finish_sim_config(sim_cfg, terrain, shadowing, g);
      if (dump_instance >= 0) {
        const auto trial = static_cast<std::uint64_t>(dump_instance);
        result.text = io::instance_json(netsim::sample_network(sim_cfg, trial), trial);
      } else {
        const netsim::ProbabilityEstimate est = netsim::condition_probability(sim_cfg, g.threads);
        result.text = g.format == "csv"
                          ? io::sweep_csv({{sim_cfg.users, sim_cfg.coverage_radius_m, est}})
                          : io::estimate_json(sim_cfg, est);
      }
    } else if (*sweep) {
      require_format(g.format, {"csv"}, "sweep");
      finish_sim_config(sim_cfg, terrain, shadowing, g);
      std::vector<std::size_t> users;
      for (double v : io::parse_reals(sweep_users, "--users")) {
        if (v != std::floor(v) || v < 1.0) throw InvalidInput("--users entries must be >= 1");
        users.push_back(static_cast<std::size_t>(v));
      }
      const std::vector<double> radii = io::parse_reals(sweep_radii, "--radii");
      result.text = io::sweep_csv(netsim::condition_sweep(sim_cfg, users, radii, g.threads));
    }
    emit(result, g, out);
    return result.code;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const PreconditionFailed& e) {
    err << "precondition failed: " << e.what() << "\n";
    return kExitViolation;
  }
}

}  // namespace tinopt::cli

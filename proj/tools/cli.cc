// Copyright 2026 The gaitlab Authors
//
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

#include "cli.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "gaitlab/checkpoint.h"
#include "gaitlab/errors.h"
#include "gaitlab/evolution_strategy.h"
#include "gaitlab/experiment_config.h"
#include "gaitlab/gait_metrics.h"
#include "gaitlab/log_io.h"
#include "gaitlab/report.h"
#include "gaitlab/trainer.h"
#include "json.hpp"

namespace gaitlab::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Seed streams for evaluation rollouts, disjoint from the trainer's.
constexpr std::uint64_t kSweepStream = 50000;
constexpr std::uint64_t kCircleStream = 60000;

// Usage errors detected after CLI11 parsing.
class UsageError : public Error {
 public:
  using Error::Error;
};

std::string ResolveOutDir(const std::string& flag, const std::string& config) {
  if (!flag.empty()) return flag;
  if (!config.empty()) return config;
  if (const char* env = std::getenv(kOutDirEnv); env && *env) return env;
  throw UsageError(std::string("no output directory: pass --out or set ") +
                   kOutDirEnv);
}

void MakeDir(const fs::path& p) {
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec) throw Error("cannot create directory '" + p.string() + "': " + ec.message());
}

void WriteText(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error("cannot write '" + p.string() + "'");
  out << text;
  if (!out) throw Error("failed writing '" + p.string() + "'");
}

template <typename Fn>
void WriteStream(const fs::path& p, Fn&& fn) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error("cannot write '" + p.string() + "'");
  fn(out);
  if (!out) throw Error("failed writing '" + p.string() + "'");
}

std::string CommandTag(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "cmd_%03zu", index);
  return buf;
}

json LabelJson(const GaitLabel& g) {
  json j = json::object();
  j["gait"] = std::string(GaitName(g.gait));
  j["duty_factor"] = std::vector<double>(g.duty_factor.begin(), g.duty_factor.end());
  json offsets = json::array();
  for (const auto& o : g.phase_offset) {
    offsets.push_back(o ? json(*o) : json(nullptr));
  }
  j["phase_offset"] = offsets;
  j["flight_fraction"] = g.flight_fraction;
  j["quad_support_fraction"] = g.quad_support_fraction;
  j["stride_period"] = g.stride_period;
  j["max_phase_spread"] = MaxPhaseSpread(g);
  return j;
}

json Finite(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

// Rollouts at `commands`, each writing its own log and gait diagram, then a
// serial report. Returns the sweep rows.
std::vector<SweepRow> RunSweep(const LocomotionPolicy& policy,
                               const ExperimentConfig& config,
                               const std::vector<double>& commands,
                               int steps, double ramp, int jobs,
                               const fs::path& out_dir, std::ostream& err) {
  MakeDir(out_dir / "logs");
  MakeDir(out_dir / "gait");
  const SimSetup setup = config.Setup();
  const std::string hash = ConfigHash(config);
  std::vector<RolloutLog> logs(commands.size());
  ParallelFor(commands.size(), jobs, [&](std::size_t i) {
    RolloutOptions options;
    options.steps = steps;
    options.randomize_dynamics = false;
    options.observation_noise = true;
    options.ramp_acceleration = ramp;
    options.config_hash = hash;
    EpisodeResult r =
        Evaluate(policy, setup, {commands[i], 0.0},
                 MixSeed(config.seed, kSweepStream + i), config.reward, options);
    const std::string tag = CommandTag(i);
    SaveLog(r.log, (out_dir / "logs" / (tag + ".jsonl")).string());
    WriteStream(out_dir / "gait" / (tag + ".csv"),
                [&](std::ostream& o) { WriteGaitDiagramCsv(r.log, o); });
    WriteText(out_dir / "gait" / (tag + ".svg"),
              GaitDiagramSvg(r.log, SteadyStateWindow(r.log)));
    logs[i] = std::move(r.log);
  });
  std::vector<SweepRow> rows = VelocitySweepReport(logs);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    // A ramped command reports the target, not the ramp start.
    rows[i].command_vx = commands[i];
    if (!rows[i].error.empty()) {
      err << "warning: command " << FormatDouble(commands[i]) << ": "
          << rows[i].error << "\n";
    }
  }
  WriteStream(out_dir / "report.csv",
              [&](std::ostream& o) { WriteSweepCsv(rows, o); });
  return rows;
}

int CmdTrain(const std::string& config_path, std::optional<double> alpha_en,
             std::optional<std::uint64_t> seed, std::optional<int> iterations,
             std::optional<int> jobs, const std::string& out_flag, bool quiet,
             std::ostream& out, std::ostream& err) {
  ExperimentConfig config = LoadExperimentConfig(config_path);
  if (alpha_en) config.reward.alpha_en = *alpha_en;
  if (seed) config.seed = *seed;
  if (iterations) config.train.iterations = *iterations;
  if (jobs) config.train.jobs = *jobs;
  config.Validate();
  const fs::path out_dir = ResolveOutDir(out_flag, config.output_dir);
  MakeDir(out_dir);
  const std::string hash = ConfigHash(config);
  WriteText(out_dir / "config.json", DumpExperimentConfig(config, 2) + "\n");

  const TrainResult result =
      Train(config.Train(), config.Setup(), config.reward, config.curriculum,
            [&](const TrainingRecord& r) {
              if (quiet) return;
              err << "iter " << r.iteration << " mean " << r.mean_return
                  << " best " << r.best_return << " range " << r.curriculum_lin;
              if (!std::isnan(r.validation_return)) {
                err << " validation " << r.validation_return;
              }
              err << "\n";
            });

  WriteStream(out_dir / "training.csv",
              [&](std::ostream& o) { WriteTrainingCsv(result.history, o); });
  Checkpoint best{result.policy, result.best_iteration, config, hash};
  SaveCheckpoint(best, (out_dir / "policy.json").string());
  Checkpoint last = best;
  last.policy.net.set_params(result.final_params);
  last.iteration = config.train.iterations - 1;
  SaveCheckpoint(last, (out_dir / "policy_final.json").string());

  const int steps = config.train.validation_steps > 0
                        ? config.train.validation_steps
                        : config.train.episode_steps;
  RunSweep(result.policy, config, config.train.validation_commands, steps, 0.0,
           config.train.jobs, out_dir / "eval", err);
  out << "trained " << config.train.iterations << " iterations, best validation "
      << result.best_validation << " at iteration " << result.best_iteration
      << "; wrote " << out_dir.string() << "\n";
  return kExitOk;
}

int CmdEvalSweep(const std::string& policy_path, double vmin, double vmax,
                 double step, const std::string& out_flag, double ramp,
                 std::optional<int> jobs, std::optional<int> steps,
                 std::ostream& out, std::ostream& err) {
  if (!(step > 0)) throw UsageError("--step must be > 0");
  if (!(vmin <= vmax)) throw UsageError("--vmin must be <= --vmax");
  if (!(ramp >= 0)) throw UsageError("--ramp must be >= 0");
  const Checkpoint ckpt = LoadCheckpoint(policy_path);
  const fs::path out_dir = ResolveOutDir(out_flag, "");
  MakeDir(out_dir);
  const std::size_t n = SweepPointCount(vmin, vmax, step);
  std::vector<double> commands(n);
  // Snap to 1e-12 so that e.g. 0.1 + 24 * 0.1 reads back as 2.5.
  for (std::size_t i = 0; i < n; ++i) {
    commands[i] = std::round((vmin + i * step) * 1e12) / 1e12;
  }
  const int rollout_steps = steps ? *steps : ckpt.config.train.episode_steps;
  if (rollout_steps < 1) throw UsageError("--steps must be >= 1");
  const std::vector<SweepRow> rows =
      RunSweep(ckpt.policy, ckpt.config, commands, rollout_steps, ramp,
               jobs ? *jobs : ckpt.config.train.jobs, out_dir, err);
  out << "wrote " << rows.size() << " rows to "
      << (out_dir / "report.csv").string() << "\n";
  return kExitOk;
}

int CmdAnalyze(const std::string& log_path, const std::string& config_path,
               const std::string& out_flag, std::ostream& out) {
  RewardConfig reward;
  if (!config_path.empty()) reward = LoadExperimentConfig(config_path).reward;
  const RolloutLog log = LoadLog(log_path);
  const fs::path out_dir = ResolveOutDir(out_flag, "");
  MakeDir(out_dir);

  WriteStream(out_dir / "reward.csv",
              [&](std::ostream& o) { WriteRewardCsv(log, reward, o); });
  WriteStream(out_dir / "gait_diagram.csv",
              [&](std::ostream& o) { WriteGaitDiagramCsv(log, o); });
  WriteText(out_dir / "gait_diagram.svg",
            GaitDiagramSvg(log, SteadyStateWindow(log)));

  const std::vector<SweepRow> rows =
      VelocitySweepReport(std::span<const RolloutLog>(&log, 1));
  WriteStream(out_dir / "report.csv",
              [&](std::ostream& o) { WriteSweepCsv(rows, o); });
  const SweepRow& row = rows.front();

  double episode_return = 0.0;
  for (const StepSample& s : log.samples) {
    episode_return += TotalReward(s, reward).r_total * log.header.dt_control;
  }
  json summary = json::object();
  summary["samples"] = log.samples.size();
  summary["joints"] =
      log.samples.empty() ? 0 : log.samples.front().joint_torques.size();
  summary["return"] = Finite(episode_return);
  summary["cot_j_per_m"] = Finite(row.cot.cot);
  summary["achieved_speed"] = Finite(row.cot.achieved_speed);
  summary["tracking_error"] = Finite(row.cot.tracking_error);
  summary["rectified_energy_j"] = Finite(RectifiedEnergy(log, FullWindow(log)));
  summary["generalized_distance_m"] = Finite(GeneralizedDistance(log, reward));
  summary["gait"] = LabelJson(row.gait);
  summary["error"] = row.error;
  WriteText(out_dir / "summary.json", summary.dump(2) + "\n");
  out << "cot " << FormatDouble(row.cot.cot) << " J/m, gait "
      << GaitName(row.gait.gait) << "\n";
  return kExitOk;
}

// Reads "t,x,y" rows (header line optional).
void ReadTrajectory(const std::string& path, std::vector<double>& t,
                    std::vector<Point2>& p) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read trajectory '" + path + "'");
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string a, b, c;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') ||
        !std::getline(ss, c)) {
      throw SchemaError(row, "expected t,x,y");
    }
    try {
      const double tv = std::stod(a), xv = std::stod(b), yv = std::stod(c);
      t.push_back(tv);
      p.push_back({xv, yv});
    } catch (const std::exception&) {
      if (row == 1) continue;  // header
      throw SchemaError(row, "non-numeric value");
    }
  }
  if (p.empty()) throw SchemaError(0, "trajectory is empty");
}

int CmdTrackCircle(const std::string& policy_path, double radius,
                   const std::string& trajectory, const std::string& out_flag,
                   std::optional<int> steps, std::ostream& out) {
  if (!(radius > 0)) throw UsageError("--radius must be > 0");
  constexpr double kSpeed = 1.0;
  constexpr double kYawRate = 0.5;
  std::vector<double> times;
  std::vector<Point2> points;
  if (!trajectory.empty()) {
    ReadTrajectory(trajectory, times, points);
  } else {
    if (policy_path.empty()) throw UsageError("pass --policy or --trajectory");
    const Checkpoint ckpt = LoadCheckpoint(policy_path);
    RolloutOptions options;
    options.steps = steps ? *steps : ckpt.config.train.episode_steps;
    if (options.steps < 1) throw UsageError("--steps must be >= 1");
    options.randomize_dynamics = false;
    options.config_hash = ConfigHash(ckpt.config);
    const EpisodeResult r =
        Evaluate(ckpt.policy, ckpt.config.Setup(), {kSpeed, 0.0},
                 MixSeed(ckpt.config.seed, kCircleStream), ckpt.config.reward,
                 options);
    // The planar model has no yaw: the achieved forward speed is carried
    // along the commanded heading psi(t) = yaw_rate * t from the origin.
    const double dt = r.log.header.dt_control;
    double x = 0.0, y = 0.0, heading = 0.0;
    for (const StepSample& s : r.log.samples) {
      // Exact arc for a constant twist over one control interval.
      const double next = heading + kYawRate * dt;
      x += s.vx * (std::sin(next) - std::sin(heading)) / kYawRate;
      y += s.vx * (std::cos(heading) - std::cos(next)) / kYawRate;
      heading = next;
      times.push_back(s.t);
      points.push_back({x, y});
    }
  }
  const CircleTrackingResult result =
      CircleTrackingError(points, {0.0, radius}, radius);
  const fs::path out_dir = ResolveOutDir(out_flag, "");
  MakeDir(out_dir);
  WriteStream(out_dir / "circle.csv", [&](std::ostream& o) {
    WriteCircleCsv(times, points, result, o);
  });
  json summary = json::object();
  summary["radius"] = radius;
  summary["steps"] = result.errors.size();
  summary["accumulated_error"] = result.accumulated;
  summary["command_speed"] = kSpeed;
  summary["command_yaw_rate"] = kYawRate;
  WriteText(out_dir / "summary.json", summary.dump(2) + "\n");
  out << "accumulated error " << FormatDouble(result.accumulated) << " over "
      << result.errors.size() << " steps\n";
  return kExitOk;
}

}  // namespace

std::size_t SweepPointCount(double vmin, double vmax, double step) {
  return static_cast<std::size_t>(std::floor((vmax - vmin) / step + 1e-9)) + 1;
}

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"gaitlab: energy-regularized quadruped locomotion lab", "gaitlab"};
  app.require_subcommand(1);

  std::string config_path, out_dir, policy_path, log_path, trajectory;
  std::optional<double> alpha_en;
  std::optional<std::uint64_t> seed;
  std::optional<int> iterations, jobs, steps;
  bool quiet = false;
  double vmin = 0.1, vmax = 2.5, step = 0.1, ramp = 0.0, radius = 2.0;

  CLI::App* train = app.add_subcommand("train", "Train a policy");
  train->add_option("--config", config_path, "Experiment config JSON")->required();
  train->add_option("--alpha-en", alpha_en, "Override reward.alpha_en");
  train->add_option("--seed", seed, "Override the root seed");
  train->add_option("--iterations", iterations, "Override train.iterations");
  train->add_option("--jobs", jobs, "Worker threads (0 = all cores)");
  train->add_option("--out", out_dir, "Output directory");
  train->add_flag("--quiet", quiet, "No per-iteration progress");

  CLI::App* sweep = app.add_subcommand("eval-sweep", "Velocity sweep of a policy");
  sweep->add_option("--policy", policy_path, "Checkpoint JSON")->required();
  sweep->add_option("--vmin", vmin, "Lowest command (m/s)");
  sweep->add_option("--vmax", vmax, "Highest command (m/s)");
  sweep->add_option("--step", step, "Command spacing (m/s)");
  sweep->add_option("--out", out_dir, "Output directory");
  sweep->add_option("--ramp", ramp, "Command ramp acceleration (m/s^2), 0 = off");
  sweep->add_option("--jobs", jobs, "Parallel rollouts (0 = all cores)");
  sweep->add_option("--steps", steps, "Control steps per rollout");

  CLI::App* analyze = app.add_subcommand("analyze", "Analyze a rollout log");
  analyze->add_option("--log", log_path, "Rollout log (JSONL)")->required();
  analyze->add_option("--config", config_path, "Config whose reward block to use");
  analyze->add_option("--out", out_dir, "Output directory");

  CLI::App* circle = app.add_subcommand("track-circle", "Circle-tracking error");
  circle->add_option("--policy", policy_path, "Checkpoint JSON");
  circle->add_option("--radius", radius, "Circle radius (m)");
  circle->add_option("--trajectory", trajectory, "CSV of t,x,y instead of a rollout");
  circle->add_option("--out", out_dir, "Output directory");
  circle->add_option("--steps", steps, "Control steps of the rollout");

  std::vector<const char*> argv = {"gaitlab"};
  argv.reserve(args.size() + 1);
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*train) {
      return CmdTrain(config_path, alpha_en, seed, iterations, jobs, out_dir,
                      quiet, out, err);
    }
    if (*sweep) {
      return CmdEvalSweep(policy_path, vmin, vmax, step, out_dir, ramp, jobs,
                          steps, out, err);
    }
    if (*analyze) return CmdAnalyze(log_path, config_path, out_dir, out);
    if (*circle) {
      return CmdTrackCircle(policy_path, radius, trajectory, out_dir, steps, out);
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SchemaError& e) {
    err << "schema error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace gaitlab::cli

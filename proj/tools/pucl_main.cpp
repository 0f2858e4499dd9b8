// Copyright 2026 The pucl Authors
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

// Command-line front end for the experiment harness. Subcommands:
//   converge  error-convergence sweep for pcl / pcl2 / pcl2b
//   density   L1-convergence sweep for pcde
//   ssl       success-rate benchmark for the semi-supervised pipeline
//   audit     frequency-based privacy check of one mechanism
// Exit codes: 0 success, 2 configuration error, 3 audit FAIL.

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pucl/errors.hpp"
#include "pucl/experiment.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitAuditFail = 3;

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw pucl::ConfigError("cannot open output file: " + path);
  }
  return out;
}

struct CommonOptions {
  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 42;
  unsigned threads = 1;
};

void add_common(CLI::App* cmd, CommonOptions* options) {
  cmd->add_option("--config", options->config_path, "JSON config file")
      ->required();
  cmd->add_option("--out", options->out_path, "output file path")->required();
  cmd->add_option("--seed", options->seed, "master seed");
  cmd->add_option("--threads", options->threads, "worker thread count")
      ->check(CLI::Range(1u, 256u));
}

int run_sweep(const CommonOptions& options, bool density) {
  const pucl::ExperimentConfig config =
      pucl::ExperimentConfig::from_json_file(options.config_path);
  std::ofstream out = open_output(options.out_path);
  if (density) {
    const pucl::ConvergenceResult result =
        pucl::run_density(config, options.seed, options.threads);
    pucl::write_density_csv(out, result);
  } else {
    const pucl::ConvergenceResult result =
        pucl::run_convergence(config, options.seed, options.threads);
    pucl::write_convergence_csv(out, result);
  }
  return kExitOk;
}

int run_ssl(const CommonOptions& options) {
  const pucl::ExperimentConfig config =
      pucl::ExperimentConfig::from_json_file(options.config_path);
  const std::vector<pucl::SslRow> rows =
      pucl::run_ssl_benchmark(config, options.seed, options.threads);
  std::ofstream out = open_output(options.out_path);
  pucl::write_ssl_csv(out, rows);
  return kExitOk;
}

int run_audit_command(const CommonOptions& options) {
  const pucl::AuditConfig config =
      pucl::AuditConfig::from_json_file(options.config_path);
  const pucl::AuditReport report = pucl::run_audit(config, options.seed);
  std::ofstream out = open_output(options.out_path);
  out << report.to_text();
  std::cout << report.to_text();
  return report.pass ? kExitOk : kExitAuditFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"private universally consistent learners: experiment harness"};
  app.require_subcommand(1);

  CommonOptions converge_options;
  CLI::App* converge =
      app.add_subcommand("converge", "error-convergence sweep");
  add_common(converge, &converge_options);

  CommonOptions density_options;
  CLI::App* density = app.add_subcommand("density", "L1-convergence sweep");
  add_common(density, &density_options);

  CommonOptions ssl_options;
  CLI::App* ssl = app.add_subcommand("ssl", "semi-supervised benchmark");
  add_common(ssl, &ssl_options);

  CommonOptions audit_options;
  CLI::App* audit = app.add_subcommand("audit", "privacy frequency audit");
  add_common(audit, &audit_options);

  CLI11_PARSE(app, argc, argv);

  try {
    if (converge->parsed()) {
      return run_sweep(converge_options, false);
    }
    if (density->parsed()) {
      return run_sweep(density_options, true);
    }
    if (ssl->parsed()) {
      return run_ssl(ssl_options);
    }
    if (audit->parsed()) {
      return run_audit_command(audit_options);
    }
  } catch (const pucl::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitConfig;
}

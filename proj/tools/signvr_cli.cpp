// Copyright 2026 The signvr Authors. All Rights Reserved.
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
// =============================================================================

// Command-line entry point: run, verify-key-identity, example1,
// nonconvergence-demo and a hidden oracle subcommand.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "signvr/harness.hpp"
#include "signvr/oracles.hpp"

namespace {

int cmd_oracle(const std::string& kind, double x, double g, double G, double gamma,
               std::size_t T) {
  using namespace signvr;
  try {
    if (kind == "drift") {
      std::cout << format_double(oracles::counterexample_drift(x)) << '\n';
    } else if (kind == "expected-sign") {
      std::cout << format_double(oracles::expected_sign_analytic(g, G)) << '\n';
    } else if (kind == "signgd-1d") {
      for (double v : oracles::signgd_1d_closed_form(x, gamma, T)) {
        std::cout << format_double(v) << '\n';
      }
    } else {
      std::cerr << "unknown oracle '" << kind << "'\n";
      return kExitConfigError;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfigError;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sign-based stochastic optimizers with variance reduction"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  auto* run = app.add_subcommand("run", "Run an experiment from a JSON config");
  run->add_option("--config", config_path, "Experiment config (JSON)")->required();
  run->add_option("--out", out_dir, "Output directory for traces and summary.json");

  signvr::KeyIdentityOptions key;
  auto* verify = app.add_subcommand("verify-key-identity",
                                    "Monte Carlo check of E[sign(g + G U)] = g / G");
  verify->add_option("--N", key.N, "Draws per grid point");
  verify->add_option("--seed", key.seed, "Seed");
  verify->add_option("--G", key.scales, "Noise amplitudes");
  verify->add_option("--ratios", key.ratios, "Values of g / G");

  std::size_t d = 10;
  std::size_t samples = 10000;
  std::uint64_t seed = 0;
  auto* ex1 = app.add_subcommand("example1", "Smoothness constants of a random rank-one quadratic");
  ex1->add_option("--d", d, "Dimension");
  ex1->add_option("--samples", samples, "Sphere samples");
  ex1->add_option("--seed", seed, "Seed");

  std::size_t T = 10000;
  double gamma = 0.01;
  auto* demo = app.add_subcommand("nonconvergence-demo",
                                  "SignSGD versus SignSGD+ on the three-component counterexample");
  demo->add_option("--T", T, "Iterations");
  demo->add_option("--gamma", gamma, "Step size");
  demo->add_option("--seed", seed, "Seed");

  std::string kind;
  double x = 0.0, g = 0.0, G = 1.0;
  auto* oracle = app.add_subcommand("oracle", "Reference implementations");
  oracle->group("");
  oracle->add_option("kind", kind, "drift | expected-sign | signgd-1d")->required();
  oracle->add_option("--x", x);
  oracle->add_option("--g", g);
  oracle->add_option("--G", G);
  oracle->add_option("--gamma", gamma);
  oracle->add_option("--T", T);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? signvr::kExitOk : signvr::kExitConfigError;
  }

  if (*run) return signvr::cmd_run(config_path, out_dir, std::cout, std::cerr);
  if (*verify) return signvr::cmd_verify_key_identity(key, std::cout, std::cerr);
  if (*ex1) return signvr::cmd_example1(d, samples, seed, std::cout, std::cerr);
  if (*demo) return signvr::cmd_nonconvergence_demo(T, gamma, seed, std::cout, std::cerr);
  if (*oracle) return cmd_oracle(kind, x, g, G, gamma, T);
  return signvr::kExitConfigError;
}

// Copyright 2026 The qkit Authors
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

// qkit command-line front end.
//
// Exit codes: 0 success, 1 malformed input or usage, 2 domain error.

#include <CLI11.hpp>
#include <functional>
#include <iostream>

#include <json.hpp>

#include "commands.hpp"
#include "qkit/errors.hpp"

namespace {

constexpr int kInputExit = 1;
constexpr int kDomainExit = 2;

}  // namespace

int main(int argc, char **argv) {
  using namespace qkit::cli;
  CLI::App app{"qkit: circuit transpilation, simulation and mitigation toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  Context ctx;
  app.add_option("--seed", ctx.seed, "Random seed")->capture_default_str();
  app.add_option("--out", ctx.out, "Output file (default stdout)");
  app.add_option("--max-qubits", ctx.max_qubits, "Statevector width guard")->capture_default_str();

  std::function<int()> action;

  QftBenchArgs qft;
  auto *qft_cmd = app.add_subcommand("qft-bench", "Sweep QFT/AQFT gate counts as CSV");
  qft_cmd->add_option("--n", qft.n_range, "Inclusive range lo:hi, empty for none")->capture_default_str();
  qft_cmd->add_option("--cutoffs", qft.cutoffs, "full, default or integers, comma separated")
      ->capture_default_str();
  qft_cmd->add_option("--trials", qft.trials, "Fidelity trials per row")->capture_default_str();
  qft_cmd->callback([&] { action = [&] { return qft_bench(ctx, qft); }; });

  OrderFindArgs of;
  std::size_t t = 0, m = 0;
  auto *of_cmd = app.add_subcommand("order-find", "Simulated order finding");
  of_cmd->add_option("--N", of.modulus, "Modulus")->required();
  of_cmd->add_option("--x", of.base, "Base coprime to N")->required();
  auto *t_opt = of_cmd->add_option("--t", t, "Argument register width (default 2n+1)");
  of_cmd->add_flag("--aqft", of.aqft, "Use the approximate transform");
  auto *m_opt = of_cmd->add_option("--m", m, "AQFT rotation cutoff");
  of_cmd->add_option("--shots", of.shots, "Shots")->capture_default_str();
  of_cmd->add_flag("--inverse", of.inverse, "Read out through the inverse transform");
  of_cmd->callback([&] {
    if (t_opt->count() > 0) of.t = t;
    if (m_opt->count() > 0) of.m = m;
    action = [&] { return order_find(ctx, of); };
  });

  TranspileArgs tr;
  auto *tr_cmd = app.add_subcommand("transpile", "Map a circuit onto a coupling map and basis");
  tr_cmd->add_option("--coupling", tr.coupling, "Coupling map file")->required();
  tr_cmd->add_option("--basis", tr.basis, "Basis gates")->capture_default_str();
  tr_cmd->add_option("--in", tr.input, "Circuit file")->required();
  tr_cmd->add_option("--report", tr.report, "Report JSON path");
  tr_cmd->add_option("--layout", tr.layout, "trivial or greedy")->capture_default_str();
  tr_cmd->callback([&] { action = [&] { return transpile(ctx, tr); }; });

  MitigateArgs mi;
  auto *mi_cmd = app.add_subcommand("mitigate", "Apply zne, mirror, twirl or dd to a circuit");
  mi_cmd->add_option("technique", mi.technique, "zne, mirror, twirl or dd")
      ->required()
      ->check(CLI::IsMember({"zne", "mirror", "twirl", "dd"}));
  mi_cmd->add_option("--in", mi.input, "Circuit file")->required();
  mi_cmd->add_option("--noise", mi.noise, "Noise model JSON");
  mi_cmd->add_option("--shots", mi.shots, "Shots")->capture_default_str();
  mi_cmd->add_option("--scale-factors", mi.scale_factors, "Odd scale factors")->capture_default_str();
  mi_cmd->add_option("--fit", mi.fit, "linear or quadratic")->capture_default_str();
  mi_cmd->add_option("--fold", mi.fold_mode, "global or per-gate")->capture_default_str();
  mi_cmd->add_option("--observable", mi.observable, "Qubits of the Z-parity observable");
  mi_cmd->add_option("--min-window", mi.min_window, "Shortest idle window for DD")
      ->capture_default_str();
  mi_cmd->add_option("--sequence", mi.sequence, "xx or xyxy")->capture_default_str();
  mi_cmd->callback([&] { action = [&] { return mitigate(ctx, mi); }; });

  MirrorArgs mr;
  auto *mr_cmd = app.add_subcommand("mirror", "Mirror-circuit survival over a depth ladder");
  mr_cmd->add_option("--qubits", mr.qubits, "Width")->capture_default_str();
  mr_cmd->add_option("--depths", mr.depths, "Layer counts")->capture_default_str();
  mr_cmd->add_option("--p", mr.p, "Depolarizing probability per CX")->capture_default_str();
  mr_cmd->add_option("--noise", mr.noise, "Noise model JSON (overrides --p)");
  mr_cmd->add_option("--shots", mr.shots, "Shots")->capture_default_str();
  mr_cmd->callback([&] { action = [&] { return mirror(ctx, mr); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kInputExit;
  }

  ctx.manifest.command_line.assign(argv, argv + argc);
  ctx.manifest.seed = ctx.seed;
  ctx.manifest.started_at = qkit::utc_timestamp();
  try {
    return action();
  } catch (const qkit::NotCoprime &e) {
    std::cerr << "error: " << e.what() << " (gcd = " << e.gcd() << ", a nontrivial factor)\n";
    return kDomainExit;
  } catch (const qkit::SizeLimitExceeded &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomainExit;
  } catch (const qkit::TransformError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomainExit;
  } catch (const qkit::Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputExit;
  } catch (const nlohmann::json::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputExit;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputExit;
  }
}

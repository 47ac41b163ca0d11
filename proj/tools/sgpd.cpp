// Copyright 2026 The SGPD Authors
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

// sgpd: secure coded matrix multiplication runs, trade-off sweeps and
// secrecy audits.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sgpd/commands.hpp"

namespace {

void add_params(CLI::App* app, sgpd::CodeParams& p) {
  app->add_option("--t", p.t, "block rows of A")->capture_default_str();
  app->add_option("--s", p.s, "inner block count")->capture_default_str();
  app->add_option("--d", p.d, "block columns of B")->capture_default_str();
  app->add_option("--pc", p.pc, "collusion level P_C")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Secure generalized PolyDot codes"};
  app.require_subcommand(1);
  app.set_config("--config", "", "flat key=value file; flags override it");

  sgpd::SweepSpec spec;
  std::string sweep_out;
  std::uint64_t sweep_seed = 0;  // accepted for symmetry; the sweep is exact
  auto* sweep = app.add_subcommand("sweep", "P_R / C_L trade-off over t,s,d");
  sweep->add_option("--m", spec.m, "A is split into m = ts blocks")
      ->capture_default_str();
  sweep->add_option("--n", spec.n, "B is split into n = sd blocks")
      ->capture_default_str();
  sweep->add_option("--P", spec.P, "worker count")->capture_default_str();
  sweep->add_option("--pc-list", spec.pcs, "collusion levels")
      ->delimiter(',')
      ->capture_default_str();
  sweep->add_option("--modulus", spec.modulus)->capture_default_str();
  sweep->add_option("--seed", sweep_seed);
  sweep->add_option("--out", sweep_out, "CSV path (default stdout)");

  sgpd::RunConfig run;
  auto* runc = app.add_subcommand("run", "encode, simulate workers, decode");
  add_params(runc, run.params);
  runc->add_option("--P", run.P, "worker count")->capture_default_str();
  runc->add_option("--T", run.T, "rows of A")->capture_default_str();
  runc->add_option("--S", run.S, "columns of A, rows of B")
      ->capture_default_str();
  runc->add_option("--D", run.D, "columns of B")->capture_default_str();
  runc->add_option("--modulus", run.modulus)->capture_default_str();
  runc->add_option("--seed", run.seed, "input and key seed")
      ->capture_default_str();
  runc->add_option("--a", run.a_path, "A matrix file (default: random)");
  runc->add_option("--b", run.b_path, "B matrix file (default: random)");
  runc->add_option("--out", run.out_path, "decoded C matrix file");
  runc->add_option("--report", run.report_path, "report file (default stdout)");
  runc->add_option("--model", run.model, "fixed | random | latency")
      ->check(CLI::IsMember({"fixed", "random", "latency"}))
      ->capture_default_str();
  runc->add_option("--responder-ids", run.responder_ids,
                   "fixed model: responding worker ids")
      ->delimiter(',');
  runc->add_option("--responders", run.responders,
                   "only the earliest N results arrive (0 = all)")
      ->capture_default_str();
  runc->add_option("--shift", run.shift)->capture_default_str();
  runc->add_option("--rate", run.rate)->capture_default_str();
  runc->add_option("--failure-prob", run.failure_probability)
      ->capture_default_str();
  runc->add_option("--model-seed", run.model_seed)->capture_default_str();
  runc->add_option("--trace-dir", run.trace_dir,
                   "write per-worker shares and a manifest here");

  sgpd::AuditConfig audit;
  std::uint64_t audit_seed = 0;  // enumeration is exhaustive
  auto* auditc = app.add_subcommand("audit", "exhaustive secrecy audit");
  add_params(auditc, audit.params);
  auditc->add_option("--P", audit.P, "worker count")->capture_default_str();
  auditc->add_option("--T", audit.T)->capture_default_str();
  auditc->add_option("--S", audit.S)->capture_default_str();
  auditc->add_option("--D", audit.D)->capture_default_str();
  auditc->add_option("--modulus", audit.modulus)->capture_default_str();
  auditc->add_option("--seed", audit_seed);
  auditc->add_option("--budget", audit.budget, "maximum evaluations")
      ->capture_default_str();
  auditc->add_flag("--negative-control", audit.negative_control,
                   "zero every key block");
  auditc->add_option("--out", audit.out_path, "report path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : sgpd::kExitConfig;
  }

  if (*sweep) return sgpd::cmd_sweep(spec, sweep_out, std::cout, std::cerr);
  if (*runc) return sgpd::cmd_run(run, std::cout, std::cerr);
  return sgpd::cmd_audit(audit, std::cout, std::cerr);
}

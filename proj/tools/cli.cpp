// Copyright 2026 The stabchan Authors
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

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "stabchan/channel.hpp"
#include "stabchan/json_io.hpp"
#include "stabchan/qmat.hpp"
#include "stabchan/scattering.hpp"
#include "stabchan/sdpcert.hpp"
#include "stabchan/stabilizer.hpp"

namespace stabchan::cli {
namespace {

constexpr double kDefaultCheckTol = 1e-9;
constexpr double kOracleAgreement = 1e-3;
constexpr double kOracleUndercut = 1e-6;

double check_tolerance() {
  const char* env = std::getenv("STABCHAN_TOL");
  if (env == nullptr || *env == '\0') return kDefaultCheckTol;
  char* end = nullptr;
  const double tol = std::strtod(env, &end);
  if (end == env || *end != '\0' || !(tol > 0.0) || !std::isfinite(tol)) {
    throw InvalidInput(std::string("STABCHAN_TOL must be a positive number, got \"") +
                       env + "\"");
  }
  return tol;
}

Json new_report(const std::string& command) {
  return Json{{"schema", kSchema}, {"command", command}};
}

DensityMatrix read_state(const std::string& path) {
  return DensityMatrix(matrix_from_json(read_json_file(path)));
}

HermitianMatrix read_hermitian(const std::string& path) {
  return HermitianMatrix(matrix_from_json(read_json_file(path)));
}

void write_json(const std::string& path, const Json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

Json fixed_point_json(const FixedPoint& fp) {
  return Json{{"state", matrix_to_json(fp.state.matrix())},
              {"unique", fp.unique},
              {"eigenspace_dim", fp.eigenspace_dim}};
}

struct Options {
  std::string hamiltonian, sigma, completion, rho, rho0, channel, spec, hy,
      taus, out, trace_out, json_out;
  double beta = 0.0;
  int steps = 0;
  bool require_cp = false;
  bool permissive = false;
  bool oracle = false;
  std::uint64_t seed = 42;
  long budget = 20000;
};

int cmd_gibbs(const Options& o, Json& report) {
  const DensityMatrix rho = gibbs(read_hermitian(o.hamiltonian), o.beta);
  report["beta"] = o.beta;
  report["state"] = matrix_to_json(rho.matrix());
  if (!o.out.empty()) write_json(o.out, matrix_to_json(rho.matrix()));
  return kOk;
}

int cmd_min_channel(const Options& o, Json& report) {
  const StabilizerTarget target(read_state(o.sigma));
  const ChoiMatrix z = min_choi(target);
  report["trace"] = z.matrix().trace().real();
  report["lambda_max"] = target.lambda_max();
  report["degenerate"] = target.degenerate();
  report["warnings"] = target.warnings();
  report["channel"] = channel_to_json(z);
  if (!o.out.empty()) write_json(o.out, channel_to_json(z));
  return kOk;
}

int cmd_tp_channel(const Options& o, Json& report) {
  const double tol = check_tolerance();
  const FamilyChannel fam(StabilizerTarget(read_state(o.sigma)),
                          read_state(o.completion));
  const ChoiMatrix c = fam.choi();
  const TraceCheck tp = is_trace_preserving(c, tol);
  const PositivityCheck cp = is_completely_positive(c, tol);
  report["tp"] = tp.trace_preserving;
  report["tp_defect"] = tp.defect;
  report["cp"] = cp.completely_positive;
  report["min_eigenvalue"] = cp.min_eigenvalue;
  report["overlap_q"] = fam.overlap_q();
  report["lambda_max"] = fam.target().lambda_max();
  report["degenerate"] = fam.target().degenerate();
  report["warnings"] = fam.target().warnings();
  report["channel"] = channel_to_json(c);
  if (!o.out.empty()) write_json(o.out, channel_to_json(c));
  if (!tp.trace_preserving) return kVerificationFailed;
  if (o.require_cp && !cp.completely_positive) return kVerificationFailed;
  return kOk;
}

int cmd_apply(const Options& o, Json& report) {
  const ChoiMatrix c = channel_from_json(read_json_file(o.channel));
  const DensityMatrix rho = read_state(o.rho);
  const HermitianMatrix out = apply_choi(c, rho);
  report["state"] = matrix_to_json(out.matrix());
  report["trace"] = out.trace().real();
  if (!o.out.empty()) write_json(o.out, matrix_to_json(out.matrix()));
  return kOk;
}

int cmd_iterate(const Options& o, Json& report) {
  const double tol = check_tolerance();
  const FamilyChannel fam(StabilizerTarget(read_state(o.sigma)),
                          read_state(o.completion));
  const DensityMatrix rho0 = read_state(o.rho0);
  std::optional<FreeEvolution> free;
  if (o.hy.empty() != o.taus.empty()) {
    throw InvalidInput("iterate: --hy and --taus must be given together");
  }
  if (!o.hy.empty()) {
    const Json taus = read_json_file(o.taus);
    if (!taus.is_array() ||
        !std::all_of(taus.begin(), taus.end(),
                     [](const Json& t) { return t.is_number(); })) {
      throw InvalidInput("iterate: --taus must be a JSON array of numbers");
    }
    free = FreeEvolution{read_hermitian(o.hy), taus.get<std::vector<double>>()};
  }
  const IterationTrace trace =
      iterate(fam, rho0, o.steps, free, !o.permissive, tol);
  write_text_file(o.trace_out, trace_to_csv(trace));
  if (!o.json_out.empty()) write_json(o.json_out, trace_to_json(trace));
  const IterationRecord& last = trace.steps.back();
  report["steps"] = o.steps;
  report["q"] = trace.q;
  report["p_0"] = trace.steps.front().p_n;
  report["final_distance"] = last.dist_to_sigma;
  report["final_state"] = matrix_to_json(last.state.matrix());
  report["converged"] = trace.converged(tol);
  report["stagnant"] = trace.stagnant;
  report["domain_violation"] = trace.domain_violation;
  report["warnings"] = fam.target().warnings();
  return kOk;
}

int cmd_verify_sdp(const Options& o, Json& report) {
  const DensityMatrix sigma = read_state(o.sigma);
  const CertificateReport cert = certify_optimality(sigma);
  report.update(certificate_to_json(cert));
  bool ok = cert.certified;
  if (o.oracle) {
    const OracleResult r = brute_force_search(sigma, o.budget, o.seed);
    const double optimum = 1.0 / StabilizerTarget(sigma).lambda_max();
    const bool agrees = std::abs(r.best - optimum) <= kOracleAgreement &&
                        r.best >= optimum - kOracleUndercut &&
                        r.best_from_restarts >= optimum - kOracleUndercut;
    report["oracle"] = {{"value", r.best},
                        {"best_from_restarts", r.best_from_restarts},
                        {"warm_start", r.warm_start},
                        {"evaluations", r.evaluations},
                        {"seed", o.seed},
                        {"agrees", agrees}};
    ok = ok && agrees;
  }
  return ok ? kOk : kVerificationFailed;
}

int cmd_verify_channel(const Options& o, Json& report) {
  const double tol = check_tolerance();
  const ChoiMatrix c = channel_from_json(read_json_file(o.channel));
  const TraceCheck tp = is_trace_preserving(c, tol);
  const PositivityCheck cp = is_completely_positive(c, tol);
  report["tp"] = tp.trace_preserving;
  report["tp_defect"] = tp.defect;
  report["cp"] = cp.completely_positive;
  report["min_eigenvalue"] = cp.min_eigenvalue;
  if (tp.trace_preserving && c.d_in() == c.d_out()) {
    try {
      report["fixed_point"] = fixed_point_json(fixed_point(c));
    } catch (const Error& e) {
      report["fixed_point"] = {{"error", e.what()}};
    }
  }
  bool ok = tp.trace_preserving && cp.completely_positive;
  if (!o.sigma.empty()) {
    const StabilizerTarget target(read_state(o.sigma));
    const FamilyMembership m = is_in_family(c, target, tol);
    report["membership"] = membership_to_json(m);
    if (m.member) report["membership"]["overlap_q"] =
        target.overlap_ratio(m.completion->matrix());
    report["warnings"] = target.warnings();
    ok = ok && m.member;
  }
  return ok ? kOk : kVerificationFailed;
}

int cmd_collision(const Options& o, Json& report) {
  const double tol = check_tolerance();
  const CollisionSpec spec = collision_from_json(read_json_file(o.spec));
  const ChoiMatrix c = collision_choi(spec);
  const ThermalMembership tm =
      thermal_membership(spec, read_hermitian(o.hy), o.beta, tol);
  report["channel"] = channel_to_json(c);
  report["trace_preserving"] = is_trace_preserving(c).trace_preserving;
  report["thermal_state"] = matrix_to_json(tm.thermal_state.matrix());
  if (tm.fixed_point) {
    report["fixed_point"] = fixed_point_json(*tm.fixed_point);
    report["fixed_point"]["distance_to_thermal"] = tm.fixed_point_distance;
  } else {
    report["fixed_point"] = {{"error", tm.fixed_point_error}};
  }
  report["fixed_point_match"] = tm.fixed_point_match;
  report["membership"] = membership_to_json(tm.membership);
  if (!o.out.empty()) write_json(o.out, channel_to_json(c));
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Stabilizer channels: construct, certify and iterate quantum "
               "channels with a prescribed fixed point"};
  app.name("stabchan");
  app.require_subcommand(1);
  Options o;
  std::function<int(const Options&, Json&)> handler;
  std::string command;

  auto add = [&](const char* name, const char* help,
                 int (*fn)(const Options&, Json&)) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->callback([&, name, fn] {
      command = name;
      handler = fn;
    });
    return sub;
  };

  auto* g = add("gibbs", "Thermal state exp(-beta H)/Z", cmd_gibbs);
  g->add_option("--hamiltonian", o.hamiltonian, "Hamiltonian matrix JSON")->required();
  g->add_option("--beta", o.beta, "Inverse temperature")->required();
  g->add_option("--out", o.out, "Write the state here");

  auto* mc = add("min-channel", "Minimum-trace stabilizer Choi matrix", cmd_min_channel);
  mc->add_option("--sigma", o.sigma, "Target state JSON")->required();
  mc->add_option("--out", o.out, "Write the channel here");

  auto* tc = add("tp-channel", "Trace-preserving family member C[sigma,B]",
                 cmd_tp_channel);
  tc->add_option("--sigma", o.sigma, "Target state JSON")->required();
  tc->add_option("--completion", o.completion, "Completion state B JSON")->required();
  tc->add_option("--out", o.out, "Write the channel here");
  tc->add_flag("--require-cp", o.require_cp, "Exit 1 if the map is not CP");

  auto* ap = add("apply", "Apply a Choi channel to a state", cmd_apply);
  ap->add_option("--channel", o.channel, "Channel JSON")->required();
  ap->add_option("--rho", o.rho, "Input state JSON")->required();
  ap->add_option("--out", o.out, "Write the output state here");

  auto* it = add("iterate", "Iterate a family channel", cmd_iterate);
  it->add_option("--sigma", o.sigma, "Target state JSON")->required();
  it->add_option("--completion", o.completion, "Completion state B JSON")->required();
  it->add_option("--rho0", o.rho0, "Initial state JSON")->required();
  it->add_option("--steps", o.steps, "Number of applications")
      ->required()
      ->check(CLI::NonNegativeNumber);
  it->add_option("--hy", o.hy, "Free-evolution Hamiltonian JSON");
  it->add_option("--taus", o.taus, "JSON array of free-evolution durations");
  it->add_option("--trace-out", o.trace_out, "CSV trace output")->required();
  it->add_option("--json-out", o.json_out, "JSON trace output with states");
  it->add_flag("--permissive", o.permissive,
               "Continue past domain violations instead of failing");

  auto* vs = add("verify-sdp", "Certify the closed-form SDP optimum", cmd_verify_sdp);
  vs->add_option("--sigma", o.sigma, "Target state JSON")->required();
  vs->add_flag("--oracle", o.oracle, "Run the brute-force oracle (d <= 3)");
  vs->add_option("--seed", o.seed, "Oracle seed");
  vs->add_option("--budget", o.budget, "Oracle evaluation budget")
      ->check(CLI::PositiveNumber);

  auto* vc = add("verify-channel", "Check TP, CP, fixed point and family membership",
                 cmd_verify_channel);
  vc->add_option("--channel", o.channel, "Channel JSON")->required();
  vc->add_option("--sigma", o.sigma, "Test membership in the family of sigma");

  auto* co = add("collision", "Collision channel membership for a thermal target",
                 cmd_collision);
  co->add_option("--spec", o.spec, "Collision spec JSON")->required();
  co->add_option("--hy", o.hy, "System Hamiltonian JSON")->required();
  co->add_option("--beta", o.beta, "Inverse temperature")->required();
  co->add_option("--out", o.out, "Write the collision Choi channel here");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    Json report = new_report(args.empty() ? "" : args.front());
    report["error"] = std::string("invalid arguments: ") + e.what();
    report["exit_code"] = kInvalidInput;
    out << report.dump(2) << "\n";
    return kInvalidInput;
  }

  Json report = new_report(command);
  int code = kOk;
  std::string error;
  try {
    code = handler(o, report);
  } catch (const InvalidInput& e) {
    code = kInvalidInput;
    error = std::string("invalid input: ") + e.what();
  } catch (const Json::exception& e) {
    code = kInvalidInput;
    error = std::string("invalid input: ") + e.what();
  } catch (const Error& e) {
    code = kNumericalFailure;
    error = std::string("numerical failure: ") + e.what();
  }
  if (!error.empty()) {
    err << "stabchan " << command << ": " << error << "\n";
    report = new_report(command);
    report["error"] = error;
  }
  report["exit_code"] = code;
  out << report.dump(2) << "\n";
  return code;
}

}  // namespace stabchan::cli

// Command-line front end: build, check, analyze, verify-paper.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "workbench/checker.hpp"
#include "workbench/claims.hpp"
#include "workbench/errors.hpp"
#include "workbench/family_spec.hpp"
#include "workbench/structure.hpp"
#include "workbench/term_parser.hpp"
#include "workbench/text_format.hpp"

namespace {

  using namespace workbench;

  constexpr int kExitHolds   = 0;
  constexpr int kExitFails   = 1;
  constexpr int kExitBudget  = 2;
  constexpr int kExitInvalid = 3;

  std::string yes_no(bool b) {
    return b ? "yes" : "no";
  }

  Substitution parse_witness(std::string const& text) {
    Substitution tau;
    for (auto const& item : detail::split(text, ',')) {
      auto eq = item.find('=');
      if (eq == std::string::npos) {
        throw ParseError("witness entries look like x=3");
      }
      Term v = parse_term(item.substr(0, eq));
      auto vars = variables(v);
      if (vars.size() != 1 || to_string(v) != vars[0].to_string()) {
        throw ParseError("bad witness variable '" + item.substr(0, eq) + "'");
      }
      tau[vars[0]] = static_cast<Element>(std::stoul(item.substr(eq + 1)));
    }
    return tau;
  }

  struct BuildArgs {
    std::string spec;
    std::string output;
  };

  int cmd_build(BuildArgs const& a) {
    Algebra const          A = build_family(a.spec);
    FiniteSemigroup const& S = A.semigroup();
    std::cout << "size " << S.size() << " inverse " << yes_no(S.has_inverses()) << " zero "
              << yes_no(S.zero().has_value()) << " identity "
              << yes_no(S.identity().has_value()) << "\n";
    std::string const text
        = A.has_fixed_addition() ? format_semiring(A.semiring()) : format_cayley(S);
    if (a.output.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(a.output);
      if (!(out << text)) {
        throw BadSpec("cannot write '" + a.output + "'");
      }
    }
    return kExitHolds;
  }

  struct CheckArgs {
    std::string   algebra;
    std::string   lhs;
    std::string   rhs;
    std::string   mode   = "exhaustive";
    std::uint64_t budget = kDefaultBudget;
    std::uint64_t trials = kDefaultTrials;
    std::uint64_t seed   = 0;
    bool          seeded = false;
    std::string   witness;
    std::string   format = "text";
  };

  int cmd_check(CheckArgs const& a) {
    Algebra const A   = build_family(a.algebra);
    Term const    lhs = parse_term(a.lhs);
    Term const    rhs = parse_term(a.rhs);
    CheckOptions  opts;
    opts.budget = a.budget;
    opts.trials = a.trials;
    if (a.mode == "sampled") {
      if (!a.seeded) {
        throw BadParameters("--mode sampled requires --seed");
      }
      opts.mode = Mode::sampled;
      opts.seed = a.seed;
    } else if (a.mode == "witness") {
      opts.mode    = Mode::witness;
      opts.witness = parse_witness(a.witness);
    }
    bool const semiring = flavor(lhs) == Flavor::semiring || flavor(rhs) == Flavor::semiring;
    IdentityReport report;
    try {
      report = semiring ? check_identity(A.semiring(), lhs, rhs, opts)
                        : check_identity(A.semigroup(), lhs, rhs, opts);
    } catch (BudgetExceeded const& e) {
      std::cerr << e.what() << "\n";
      std::cout << "VERDICT budget CHECKED 0 CEX none\n";
      return kExitBudget;
    }
    if (a.format == "machine") {
      std::cout << machine_line(report) << "\n";
    } else if (semiring) {
      std::cout << format_report(A.semiring(), lhs, rhs, report);
    } else {
      std::cout << format_report(A.semigroup(), lhs, rhs, report);
    }
    return report.holds() ? kExitHolds : kExitFails;
  }

  int cmd_analyze(std::string const& spec) {
    std::cout << format_analysis(build_family(spec).semigroup());
    return kExitHolds;
  }

  int cmd_verify(std::string const& filter) {
    bool        all_passed = true;
    std::size_t matched    = 0;
    for (Claim const& claim : claim_registry()) {
      if (!filter.empty() && !glob_match(filter, claim.id)) {
        continue;
      }
      ++matched;
      ClaimResult const r = run_claim(claim);
      all_passed          = all_passed && r.passed;
      std::printf("%-18s %-4s checks=%-4zu substitutions=%-12llu %s\n",
                  r.id.c_str(),
                  r.passed ? "PASS" : "FAIL",
                  r.checks,
                  static_cast<unsigned long long>(r.substitutions),
                  r.locus.c_str());
      if (!r.passed) {
        std::printf("    %s\n", r.detail.c_str());
      }
      std::fflush(stdout);
      std::fprintf(stderr, "%s: %.3f s\n", r.id.c_str(), r.seconds);
    }
    std::printf("claims=%zu result=%s\n", matched, all_passed ? "PASS" : "FAIL");
    return all_passed && matched > 0 ? kExitHolds : kExitFails;
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite semigroup and ai-semiring workbench"};
  app.require_subcommand(1);

  BuildArgs build;
  auto*     build_cmd = app.add_subcommand("build", "Build an algebra and print its table");
  build_cmd->add_option("spec", build.spec, "Family spec, e.g. rook:2")->required();
  build_cmd->add_option("-o,--output", build.output, "Write the table to this file");

  CheckArgs check;
  auto*     check_cmd = app.add_subcommand("check", "Check an identity lhs = rhs");
  check_cmd->add_option("algebra", check.algebra, "Family spec or file:<path>")->required();
  check_cmd->add_option("lhs", check.lhs, "Left-hand term")->required();
  check_cmd->add_option("rhs", check.rhs, "Right-hand term")->required();
  check_cmd->add_option("--mode", check.mode, "exhaustive, sampled or witness")
      ->check(CLI::IsMember({"exhaustive", "sampled", "witness"}));
  check_cmd->add_option("--budget", check.budget, "Largest exhaustive search");
  check_cmd->add_option("--trials", check.trials, "Samples in sampled mode");
  auto* seed_opt = check_cmd->add_option("--seed", check.seed, "Seed for sampled mode");
  check_cmd->add_option("--witness", check.witness, "Substitution such as x=1,y=4");
  check_cmd->add_option("--format", check.format, "text or machine")
      ->check(CLI::IsMember({"text", "machine"}));

  std::string analyze_spec;
  auto*       analyze_cmd = app.add_subcommand("analyze", "Principal series and (h,m) type");
  analyze_cmd->add_option("algebra", analyze_spec, "Family spec or file:<path>")->required();

  std::string filter;
  auto*       verify_cmd = app.add_subcommand("verify-paper", "Run the claim registry");
  verify_cmd->add_option("filter", filter, "Glob over claim ids");

  CLI11_PARSE(app, argc, argv);
  check.seeded = seed_opt->count() > 0;

  try {
    if (*build_cmd) {
      return cmd_build(build);
    }
    if (*check_cmd) {
      return cmd_check(check);
    }
    if (*analyze_cmd) {
      return cmd_analyze(analyze_spec);
    }
    return cmd_verify(filter);
  } catch (Error const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
}

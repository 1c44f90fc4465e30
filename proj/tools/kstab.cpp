#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "kstab/groebner.hpp"
#include "kstab/job.hpp"

int main(int argc, char** argv) {
  CLI::App app{"kstab: exact slope, Donaldson-Futaki and CM invariants of polarized schemes"};
  std::string job_file;
  bool as_json = false;
  bool as_text = false;
  std::size_t budget_pairs = kstab::GroebnerBudget{}.max_pairs;
  long max_degree = kstab::GroebnerBudget{}.max_degree;
  std::uint64_t seed = 0;

  app.add_option("--job", job_file, "job document (JSON)")->required();
  auto* json_flag = app.add_flag("--json", as_json, "print the JSON report (default)");
  auto* text_flag = app.add_flag("--text", as_text, "print a plain-text rendering of the report");
  json_flag->excludes(text_flag);
  app.add_option("--budget-pairs", budget_pairs, "critical-pair cap per Groebner basis")->check(CLI::PositiveNumber);
  app.add_option("--max-degree", max_degree, "degree cap per Groebner basis")->check(CLI::PositiveNumber);
  auto* seed_opt = app.add_option("--seed", seed, "seed for randomized trials");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kstab::kExitInput;
  }

  try {
    std::ifstream in(job_file);
    if (!in) throw kstab::InputError("cannot read job file " + job_file);
    std::stringstream buffer;
    buffer << in.rdbuf();

    kstab::set_default_budget({budget_pairs, max_degree});
    const kstab::JobDocument job = kstab::parse_job(buffer.str());
    kstab::RunOptions options;
    if (seed_opt->count() > 0) options.seed = seed;
    const kstab::Report report = kstab::run_job(job, options);
    std::cout << (as_text ? kstab::render_text(report) : kstab::render_json(report));
    return report.exit_code;
  } catch (const kstab::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kstab::kExitInput;
  } catch (const kstab::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kstab::kExitBudget;
  } catch (const kstab::InvariantViolation& e) {
    std::cerr << "invariant violated: " << e.what() << "\n";
    return kstab::kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kstab::kExitInvariant;
  }
}

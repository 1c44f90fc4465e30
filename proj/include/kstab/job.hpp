#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "kstab/errors.hpp"
#include "kstab/ideal.hpp"

namespace kstab {

using Json = nlohmann::ordered_json;

/// Schema violation located by a JSON pointer into the job document.
class SchemaError : public InputError {
 public:
  SchemaError(std::string pointer, const std::string& message);
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

struct JobDocument {
  Json source;  // the input document, rationals normalized
  RingPtr ring;
  std::map<std::string, Ideal> ideals;
  std::string kind;
  Json params;
  std::vector<std::string> notices;
};

const std::vector<std::string>& job_kinds();

/// Validates the whole document, including per-kind parameters.
JobDocument parse_job(const std::string& text);

struct RunOptions {
  std::optional<std::uint64_t> seed;  // randomized trials only
};

enum ExitCode : int { kExitOk = 0, kExitInput = 2, kExitBudget = 3, kExitCheckFailed = 4, kExitInvariant = 5 };

struct Report {
  Json document;  // job, results, certificates, verdict, formula, notices, timing
  int exit_code = kExitOk;
};

Report run_job(const JobDocument& job, const RunOptions& options = {});

std::string render_json(const Report& report);
/// Plain-text rendering derived from the JSON report.
std::string render_text(const Report& report);

/// The report without its timing field, for reproducibility comparisons.
Json without_timing(const Json& report);

}  // namespace kstab

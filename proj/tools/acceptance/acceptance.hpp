#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace khess::acceptance {

/// One (n,k,...) case inside a criterion.
struct CaseOutcome {
    std::string label;
    bool passed = true;
    /// Informational cases are reported but never fail their criterion.
    bool informational = false;
    std::string detail;
};

struct CaseSpec {
    std::string label;
    std::function<std::vector<CaseOutcome>()> run;
};

struct SuiteOptions {
    /// Coarser grids and looser tolerances; the settings record what changed.
    bool fast = false;
    int jobs = 1;
};

struct Criterion {
    int id = 0;
    std::string title;
    /// Criterion 11 only reports.
    bool gating = true;
    std::map<std::string, std::string> settings;
    std::vector<CaseSpec> cases;
};

std::vector<Criterion> build_criteria(const SuiteOptions& options);

struct CriterionResult {
    int id = 0;
    std::string title;
    bool gating = true;
    bool passed = true;
    std::map<std::string, std::string> settings;
    std::vector<CaseOutcome> outcomes;
    /// Set when a case threw; the criterion then fails.
    std::vector<std::string> errors;
};

/// Runs every case of the selected criteria on a pool of `options.jobs` workers.
/// Results come back ordered by id regardless of completion order. An empty
/// `ids` selects everything.
std::vector<CriterionResult> run_suite(const SuiteOptions& options, std::span<const int> ids = {});

/// "PASS  3  separable-solution tracking (...)" style summary line.
std::string summary_line(const CriterionResult& result);

/// Number of gating criteria that failed.
int failure_count(std::span<const CriterionResult> results);

/// Runs tasks 0..count-1 on up to `jobs` threads.
void parallel_for(int count, int jobs, const std::function<void(int)>& task);

}  // namespace khess::acceptance

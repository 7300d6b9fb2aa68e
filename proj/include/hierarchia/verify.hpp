#ifndef HIERARCHIA_VERIFY_HPP
#define HIERARCHIA_VERIFY_HPP

#include "hierarchia/report.hpp"

#include <string>
#include <vector>

namespace hierarchia {

struct SuiteOptions {
    int nmax = -1;           // caps every index range; -1 keeps the suite defaults
    std::string id;          // genfun / binomial-sum id filter
    std::string family;      // coeff family filter: D, E, K or conv
    bool as_printed = false; // compare GP H_4 against its printed sign
    int S = 24;
    int J = 24;
};

// Registry order; "all" runs them in this order.
const std::vector<std::string>& suite_names();

// Effective cap: the smaller of opts.nmax and HIERARCHIA_NMAX when either is set.
int index_cap(int requested);

// Throws std::invalid_argument for an unknown suite or filter.
std::vector<CheckResult> run_suite(const std::string& name, const SuiteOptions& opts = {});

struct SuiteSummary {
    int passed = 0;
    int failed = 0;
    const CheckResult* first_failure = nullptr;
};

SuiteSummary summarize(const std::vector<CheckResult>& results);

}  // namespace hierarchia

#endif

#pragma once

#include "cliqueblowup/exact.hpp"
#include "cliqueblowup/graph.hpp"
#include "cliqueblowup/indexes.hpp"
#include "cliqueblowup/spectral.hpp"

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace cliqueblowup {

struct CorpusEntry {
    std::string name;
    Graph graph;
};

/// Comma-separated generator specs, e.g. "complete:2,cycle:4,petersen".
std::vector<CorpusEntry> parse_corpus(std::string_view spec);

/// K_2, P_3, P_4, C_4, C_5, K_3, K_4, S_5 and the Petersen graph.
std::vector<CorpusEntry> default_corpus();

struct VerifyOptions {
    std::vector<int> n_values{3, 4, 5};
    std::vector<int> r_values{1, 2};
    double tol = kDefaultMatchTol;
    Limits limits;
    int jobs = 1;
    /// Added to every closed-form Kf* value before it is compared with the
    /// oracle. Nonzero only in harness sensitivity tests.
    BigRational closed_form_perturbation = 0;
};

struct CheckResult {
    std::string graph;
    std::string check;
    int n = 0; ///< 0 for checks on the base graph
    int r = 0;
    bool passed = false;
    std::string detail;
};

struct VerifyReport {
    std::vector<CheckResult> results;
    std::vector<std::string> notes;

    bool all_passed() const;
    const CheckResult* first_failure() const;
};

VerifyReport run_verify(const std::vector<CorpusEntry>& corpus, const VerifyOptions& options);

/// One row per (graph, n, r), one column per check.
void print_verify_matrix(const VerifyReport& report, std::ostream& out);

} // namespace cliqueblowup

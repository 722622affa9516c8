#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "splab/matrix.hpp"

namespace splab {

enum class VerifyLevel { Quick, Full };
VerifyLevel parse_level(const std::string& name);  // "quick" | "full"

struct SuiteResult {
    std::string name;
    bool pass = true;
    std::uint64_t checks = 0;
    std::uint64_t failures = 0;
    double seconds = 0.0;
    std::vector<std::string> notes;  // capped counterexample dump
};

struct RunManifest {
    std::string version;
    std::uint32_t n = 0;
    std::uint64_t q = 0;
    std::string level;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::vector<SuiteResult> suites;
    std::vector<std::string> outputs;
    double total_seconds = 0.0;

    bool pass() const {
        for (const auto& s : suites)
            if (!s.pass) return false;
        return true;
    }
    std::string to_json() const;
};

/// Runs, in order: field axioms, matrix-ring invariants, counting equivalences,
// digraph oracle and normality audits, scaled product/sum identities, and
// embedding edge checks. Quick samples; full exhausts where the pair budget
// allows.
RunManifest run_verify(const MatRing& ring, VerifyLevel level, std::uint64_t seed,
                       unsigned threads);

}  // namespace splab

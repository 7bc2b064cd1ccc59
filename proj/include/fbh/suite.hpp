#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fbh/automorphism.hpp"
#include "fbh/serialize.hpp"

namespace fbh {

struct CheckResult {
    std::string name;
    bool pass;
    double measured;
    double threshold;
    std::string paper_anchor;
};

struct SuiteReport {
    std::string suite_name;
    std::vector<CheckResult> checks;
    double wall_time;  // seconds; emitted as 0.0 unless timing was requested
    std::uint64_t seed;

    bool all_pass() const {
        for (const CheckResult& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

struct SuiteOptions {
    double series_tol = defaults::series_tol;
    int threads = 1;               // worker cap; results are order-independent
    bool record_wall_time = false; // keep reports byte-deterministic by default
};

const std::vector<std::string>& suite_names();  // kernel, automorphism, proper-map, oracle, all

// Runs a named invariant battery. Checks draw their randomness from seeds
// derived per check, so the report is identical for a fixed seed no matter
// how many workers execute it.
SuiteReport run_suite(const std::string& name, std::uint64_t seed, const SuiteOptions& opts = {});

Json to_json(const SuiteReport& r);

// The canonical accept/reject cases for decompose_linear_biholomorphism,
// shared by the suite, the acceptance harness and the CLI tests.
struct DecomposeFixture {
    std::string label;
    LinearBiholomorphism map;
    bool expect_accept;
    std::string expect_reason;
};
std::vector<DecomposeFixture> decompose_fixture_set();

}  // namespace fbh

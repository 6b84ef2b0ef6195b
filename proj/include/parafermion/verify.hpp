#pragma once

#include <cstdint>

#include "parafermion/scalar.hpp"

namespace pf {

struct VerifyRecord {
    std::string identity;  // name of the checked identity
    std::string params;    // e.g. "N=3 m=2 sign=+1"
    bool pass = false;
    double max_dev = 0.0;  // worst numeric deviation (0 for exact checks)
    std::string note;      // e.g. fallback warnings
};

struct SuiteOptions {
    std::string suite = "all";  // pf|tl|sft|pauli|quadratic|braid|clifford|rp|tangle|all
    int n_min = 2;
    int n_max = 4;
    int m_max = 3;
    Mode mode = Mode::exact;
    int zeta_sign = +1;
    double tol = 1e-9;
    uint64_t seed = 1;
    int ensemble = 50;  // coupling matrices per (N, m) in the rp suite
};

/// Runs the named verification suites; one record per identity instance.
std::vector<VerifyRecord> run_suite(const SuiteOptions& opt);

std::string records_to_json(const std::vector<VerifyRecord>& records);
bool all_pass(const std::vector<VerifyRecord>& records);

}  // namespace pf

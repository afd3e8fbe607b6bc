#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cuspmin {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;  // first failure, or a one-line summary
    double seconds = 0;
    double time_limit = 0;
};

struct VerifyOptions {
    bool quick = false;  // smaller ranges for the loops that are not pinned by a criterion
    std::uint64_t seed = 20240611;
};

CriterionResult check_census(const VerifyOptions& o);
CriterionResult check_isometries(const VerifyOptions& o);
CriterionResult check_dehn_filling(const VerifyOptions& o);
CriterionResult check_volume(const VerifyOptions& o);
CriterionResult check_arithmetic(const VerifyOptions& o);
CriterionResult check_structure(const VerifyOptions& o);

std::vector<CriterionResult> run_acceptance(const VerifyOptions& o);
// Timings are left out when with_time is false, for byte-stable output.
std::string format_line(const CriterionResult& r, bool with_time = true);

}  // namespace cuspmin

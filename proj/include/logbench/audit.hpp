#pragma once

// Independent verifier for produced benchmarks. Works only from the emitted
// train/test prefix files and the manifest; every predicate is re-derived
// from rows (case start = timestamp - elapsed, case end = timestamp +
// target), sharing nothing with the split logic beyond the file schema.

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "logbench/prefix.hpp"

namespace logbench {

struct AuditCheck {
    std::string id;    // "a".."g"
    std::string name;
    bool pass = false;
    std::string detail;
};

struct AuditReport {
    std::vector<AuditCheck> checks;
    bool all_pass = false;

    nlohmann::json to_json() const;
    const AuditCheck* find(const std::string& id) const;
};

// Checks:
//   a  train and test case ids are disjoint
//   b  every training case ends strictly before t_sep
//   c  every test prefix ends at or after t_sep
//   d  no prefix ends inside [dataset_end - d, dataset_end]
//   e  no case lasts longer than d
//   f  manifest accounting equals accounting recomputed from the files
//   g  full_case_equivalent = train + complete + (short + long)/2 exactly
AuditReport audit_benchmark(const std::vector<PrefixRow>& train_rows,
                            const std::vector<PrefixRow>& test_rows,
                            const nlohmann::json& manifest);
AuditReport audit_benchmark(const std::filesystem::path& train_csv,
                            const std::filesystem::path& test_csv,
                            const std::filesystem::path& manifest_json);

}  // namespace logbench

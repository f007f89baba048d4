#pragma once

// Machine-readable certificate reports and their independent re-check.
//
// The report layout is published in schemas/certificate_report.schema.json;
// `report_schema_problems` enforces the same structure in-process.

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "framepart/partition.hpp"

namespace framepart {

inline constexpr const char* kToolVersion = FRAMEPART_VERSION;
inline constexpr const char* kReportSchemaId = "frame-partition/certificate-report";
inline constexpr int kReportSchemaVersion = 1;
inline constexpr double kReportTol = 1e-9;

struct ReportContext {
    std::string input_digest;
    std::size_t dim = 0;
    Field field = Field::Real;
    std::map<std::string, double> timings_ms;  // written under "timings"
};

nlohmann::json certificate_to_json(const PartitionCertificate& cert, const ReportContext& ctx);

/// Human-readable structural problems; empty when the document conforms.
std::vector<std::string> report_schema_problems(const nlohmann::json& report);

/// The report minus its "timings" object, for run-to-run comparison.
nlohmann::json without_timings(nlohmann::json report);

struct BlockVerdict {
    std::size_t block = 0;
    bool pass = false;
    std::vector<std::string> reasons;  // empty on pass
};

struct CertifyOutcome {
    bool digest_matches = false;
    bool global_pass = false;
    std::vector<std::string> global_reasons;
    std::vector<BlockVerdict> blocks;
    bool all_pass = false;
};

struct CertifyOptions {
    double tol = kReportTol;
    bool force = false;  // accept a digest mismatch
    unsigned threads = 1;
};

/// Recomputes every reported quantity from `seq` and compares within
/// `opts.tol`. A block passes when its sigma, eta, gamma and spectral pair
/// reproduce, its verdict flags agree with the recomputation and it is
/// certified for the report's mode.
///
/// Throws FormatError for a malformed report, DigestMismatch when the report
/// was produced from different data (unless forced) and IndexMismatch when
/// the blocks do not partition the input.
CertifyOutcome certify_report(const UnitVectorSequence& seq, const nlohmann::json& report,
                              const CertifyOptions& opts = {});

}  // namespace framepart

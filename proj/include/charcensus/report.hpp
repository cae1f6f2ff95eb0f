// Run configuration, the analyze/predict/compare pipelines behind the CLI,
// and machine-readable outputs: JSON invariant blocks, CSV tables with the
// fixed schema T,count,prediction,ratio,seconds, and an append-only JSON run
// log whose body hash is reproducible for a fixed config and seed.
#ifndef CHARCENSUS_REPORT_HPP
#define CHARCENSUS_REPORT_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "charcensus/asymptotic.hpp"
#include "charcensus/census.hpp"
#include "charcensus/numberfield.hpp"
#include "charcensus/orbital.hpp"
#include "json.hpp"

namespace charcensus {

inline constexpr const char* kVersion = "0.1.0";

struct RunConfig {
    IntPolynomial polynomial;
    bool have_polynomial = false;
    std::vector<double> T_values;
    Enumerator enumerator = Enumerator::Auto;
    int threads = 1;
    std::uint64_t seed = 0x5eedbea7ULL;
    std::string out_path;
    Branch branch = Branch::Case1;
    bool branch_explicit = false;
    bool allow_case2_formal = false;
    std::uint32_t residue_prime_bound = 1000000;

    std::optional<Zint> ov_disc_K;
    std::optional<Zint> ov_index;
    std::optional<Zint> ov_h_K;
    std::optional<double> ov_R_K;
    std::map<std::string, Zint> orbital_overrides;

    // Strict parse: unknown keys raise ValidationError.
    static RunConfig from_json(const nlohmann::json& j);
    static RunConfig from_file(const std::string& path);
};

struct AnalysisResult {
    IntPolynomial chi;
    OrderBasis order;
    bool have_order = false;
    FieldInvariants inv;
    std::vector<LocalGammaData> locals;
    std::vector<std::string> warnings;
};

// Invariant pipeline: irreducibility gate, maximal order (or overrides when
// factorization is infeasible), residue combination by the best available
// source, local data at every index prime.
AnalysisResult analyze(const RunConfig& cfg);

nlohmann::json analysis_to_json(const AnalysisResult& a);

// One local-data record {p, serre, orbital, source} for the oracle command.
nlohmann::json oracle_to_json(const LocalGammaData& d);

// CSV "T,C_T,euler_product,prediction" per requested T.
std::string predict_csv(const RunConfig& cfg);

struct CompareOutcome {
    std::string csv;            // schema: T,count,prediction,ratio,seconds
    nlohmann::json report;      // {meta:{...timestamps...}, body:{...}, body_hash}
};

// Census vs prediction per T; infeasible rows are reported, not fatal.
CompareOutcome compare_run(const RunConfig& cfg);

// Append one JSON line to the run log.
void append_run_log(const std::string& path, const nlohmann::json& report);

// Fit command support: samples [[p, value], ...] plus the Serre invariant.
nlohmann::json fit_to_json(const std::vector<std::pair<Zint, Zint>>& samples, int serre);

std::uint64_t json_body_hash(const nlohmann::json& body);

}  // namespace charcensus

#endif

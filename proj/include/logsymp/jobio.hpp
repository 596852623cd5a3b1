#pragma once

#include "logsymp/cartan.hpp"
#include "logsymp/deform.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace logsymp {

/// Job-level knobs. Border pairs are stored 0-based; job files and all
/// rendered output use 1-based indices.
struct JobOptions {
    std::optional<std::vector<std::pair<std::size_t, std::size_t>>> subset;
    std::vector<std::pair<std::string, Rational>> c_overrides; // "j:k" or "j" keys, 1-based
    std::size_t level_cap = 64;
    long oracle_box = 8;
    unsigned schedule_seed = 0; // not part of the file format
};

/// Parsed job file: either a raw action datum or a Cartan job.
struct JobFile {
    enum class Kind { ActionDatum, Cartan };
    Kind kind = Kind::ActionDatum;
    ActionDatum datum;
    CartanJob cartan;
    JobOptions options;
};

JobFile parse_job(const std::string& text);
JobFile load_job(const std::string& path);

/// Canonical serialization: sorted subsets, explicit options, stable key
/// order. parse . canonical is idempotent.
nlohmann::json canonical_job(const JobFile& job);

/// The job's datum, analysis, structure, smoothable weights, and the
/// resolved subset selection with coefficients.
struct ResolvedJob {
    ActionDatum datum;
    DatumAnalysis analysis;
    LogCanonicalStructure structure;
    std::vector<SmoothableWeight> s_pi0;
    std::vector<std::size_t> subset_indices; // into s_pi0, increasing
    std::vector<Rational> coefficients;      // aligned with subset_indices
};

ResolvedJob resolve(const JobFile& job);

nlohmann::json multivector_json(const Multivector& v);

nlohmann::json run_analyze(const JobFile& job);
nlohmann::json run_deform(const JobFile& job);
nlohmann::json run_pfaffian(const JobFile& job);
nlohmann::json run_check_cgl(const JobFile& job);
std::string run_export_dot(const JobFile& job);

std::string analyze_text(const nlohmann::json& report);
std::string deform_text(const nlohmann::json& report);
std::string pfaffian_text(const nlohmann::json& report);
std::string check_cgl_text(const nlohmann::json& report);

} // namespace logsymp

#pragma once

#include "xmv/bench.hpp"
#include "xmv/clustering.hpp"
#include "xmv/materialize.hpp"
#include "xmv/matrix.hpp"
#include "xmv/selection.hpp"

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace xmv {

std::string read_text_file(const std::filesystem::path &path);
void write_text_file(const std::filesystem::path &path, std::string_view content);

// --- analyze -----------------------------------------------------------------

struct AnalysisReport
{
    ClusteringPolicy policy;
    QueryAttributeMatrix matrix;
    std::vector<Cluster> clusters;
    std::vector<CandidateView> candidates;
};

std::string analysis_to_xml(const AnalysisReport &report);
std::string analysis_to_text(const AnalysisReport &report);

// --- recommend ---------------------------------------------------------------

struct Recommendation
{
    Objective objective = Objective::Profit;
    Estimator estimator = Estimator::Cardenas;
    double update_query_ratio = 0.0;
    std::optional<double> storage_budget;
    std::optional<double> alpha;
    std::uint64_t fact_count = 0;

    std::vector<CandidateView> candidates;
    ViewEstimates estimates;
    SelectionResult result;

    /// Selected view definitions in acceptance order.
    std::vector<CandidateView> selected_views() const;
};

std::string recommendation_to_xml(const Recommendation &recommendation);
Recommendation recommendation_from_xml(std::string_view xml_text);
std::string recommendation_to_text(const Recommendation &recommendation);

// --- materialized view collection ---------------------------------------------

/// Serializes one materialized view reusing the Facts.xml Cell grammar:
/// attribute columns become `dimension` elements (id = attribute,
/// node = value) and each aggregate becomes an `<op>_<measure>` element.
std::string view_to_xml(const MaterializedView &view);
MaterializedView view_from_xml(std::string_view xml_text, const CandidateView &definition);

std::string views_manifest_to_xml(std::span<const MaterializedView> views);

/// Writes `<id>.xml` per view plus `views-manifest.xml` under `directory`.
void write_view_collection(const std::filesystem::path &directory, std::span<const MaterializedView> views);
std::vector<MaterializedView> load_view_collection(const std::filesystem::path &directory);

// --- bench ---------------------------------------------------------------------

std::string bench_to_xml(const BenchReport &report);
std::string bench_to_text(const BenchReport &report);
std::string bench_to_csv(const BenchReport &report);

// --- run manifest ----------------------------------------------------------------

/// Reproducibility record written next to every command output. The
/// timestamp lives only here, so the outputs themselves stay byte-stable
/// across reruns.
struct RunManifest
{
    std::string command;
    std::vector<std::pair<std::string, std::string>> parameters;

    void add(std::string name, std::string value);
};

std::string run_manifest_to_xml(const RunManifest &manifest);

} // namespace xmv

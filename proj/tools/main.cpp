#include "xmv/bench.hpp"
#include "xmv/clustering.hpp"
#include "xmv/cost_model.hpp"
#include "xmv/errors.hpp"
#include "xmv/generator.hpp"
#include "xmv/matrix.hpp"
#include "xmv/query.hpp"
#include "xmv/reports.hpp"
#include "xmv/selection.hpp"
#include "xmv/strings.hpp"
#include "xmv/version.hpp"
#include "xmv/warehouse.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kDefaultSeed = 42;

/// Bad flag combinations and unusable paths; mapped to exit code 2.
struct UsageError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

fs::path require_file(const std::string &path, const std::string &what)
{
    if (!fs::exists(path))
        throw UsageError(what + " '" + path + "' does not exist");
    return path;
}

fs::path require_dir(const std::string &path, const std::string &what)
{
    if (!fs::is_directory(path))
        throw UsageError(what + " '" + path + "' is not a directory");
    return path;
}

xmv::Warehouse load_warehouse_dir(const fs::path &dir)
{
    return xmv::load_warehouse(xmv::read_text_file(dir / "Schema.xml"),
                               xmv::read_text_file(dir / "Dimensions.xml"),
                               xmv::read_text_file(dir / "Facts.xml"));
}

std::vector<std::string> split(const std::string &text, char separator)
{
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = text.find(separator, start);
        if (end == std::string::npos) {
            parts.push_back(text.substr(start));
            break;
        }
        parts.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    return parts;
}

// --dims "channels:10:16,customers:50:24"
std::vector<xmv::DimensionGenSpec> parse_dims_flag(const std::string &flag, std::size_t attrs_per_dim)
{
    std::vector<xmv::DimensionGenSpec> dimensions;
    for (const std::string &entry : split(flag, ',')) {
        const std::vector<std::string> fields = split(entry, ':');
        if (fields.size() != 3 || fields[0].empty())
            throw UsageError("--dims entries must look like name:cardinality:bytes, got '" + entry + "'");
        try {
            dimensions.push_back(xmv::make_dimension(fields[0],
                                                     xmv::parse_uint(fields[1], "--dims cardinality"),
                                                     xmv::parse_uint(fields[2], "--dims byte size"),
                                                     attrs_per_dim));
        } catch (const xmv::Error &error) {
            throw UsageError(error.what());
        }
        if (dimensions.back().cardinality == 0)
            throw UsageError("--dims cardinality must be >= 1 in '" + entry + "'");
    }
    return dimensions;
}

// --measures "amount:1:1000,quantity:1:100"
std::vector<xmv::MeasureGenSpec> parse_measures_flag(const std::string &flag)
{
    std::vector<xmv::MeasureGenSpec> measures;
    for (const std::string &entry : split(flag, ',')) {
        const std::vector<std::string> fields = split(entry, ':');
        if (fields.size() != 3 || fields[0].empty())
            throw UsageError("--measures entries must look like name:min:max, got '" + entry + "'");
        xmv::MeasureGenSpec measure;
        measure.name = fields[0];
        try {
            measure.min_value = xmv::parse_double(fields[1], "--measures min");
            measure.max_value = xmv::parse_double(fields[2], "--measures max");
        } catch (const xmv::Error &error) {
            throw UsageError(error.what());
        }
        measures.push_back(std::move(measure));
    }
    return measures;
}

void write_run_manifest(const fs::path &target_dir, xmv::RunManifest manifest)
{
    xmv::write_text_file(target_dir / "run-manifest.xml", xmv::run_manifest_to_xml(manifest));
}

// --- generate --------------------------------------------------------------

struct GenerateOptions
{
    std::string dims;
    std::uint64_t facts = 0;
    std::uint64_t seed = kDefaultSeed;
    std::string out;
    std::size_t attrs_per_dim = 2;
    std::string measures;
    bool special_values = false;
};

int cmd_generate(const GenerateOptions &options)
{
    xmv::GenerationSpec spec;
    spec.dimensions = parse_dims_flag(options.dims, options.attrs_per_dim);
    spec.measures = options.measures.empty() ? xmv::default_measures() : parse_measures_flag(options.measures);
    spec.fact_count = options.facts;
    spec.embed_xml_special_chars = options.special_values;

    const xmv::Warehouse warehouse = xmv::generate_synthetic(spec, options.seed);
    const xmv::WarehouseDocuments documents = xmv::serialize_warehouse(warehouse);

    const fs::path out_dir(options.out);
    fs::create_directories(out_dir);
    xmv::write_text_file(out_dir / "Schema.xml", documents.schema_xml);
    xmv::write_text_file(out_dir / "Dimensions.xml", documents.dimensions_xml);
    xmv::write_text_file(out_dir / "Facts.xml", documents.facts_xml);

    xmv::RunManifest manifest;
    manifest.command = "generate";
    manifest.add("dims", options.dims);
    manifest.add("facts", std::to_string(options.facts));
    manifest.add("seed", std::to_string(options.seed));
    manifest.add("out", options.out);
    write_run_manifest(out_dir, std::move(manifest));

    std::cout << "generated warehouse: " << warehouse.schema.dimensions.size() << " dimensions, "
              << warehouse.members.size() << " members, " << warehouse.facts.size() << " facts\n"
              << "seed: " << options.seed << "\n"
              << "wrote Schema.xml, Dimensions.xml, Facts.xml to " << options.out << "\n";
    return 0;
}

// --- analyze ---------------------------------------------------------------

struct AnalyzeOptions
{
    std::string workload;
    std::string schema;
    std::string policy = "sim-dominates";
    std::string out;
};

xmv::AnalysisReport run_analysis(const std::vector<xmv::DecisionQuery> &workload,
                                 const xmv::WarehouseSchema &schema,
                                 const xmv::ClusteringPolicy &policy)
{
    xmv::AnalysisReport report;
    report.policy = policy;
    report.matrix = xmv::build_matrix(workload);
    report.clusters = xmv::cluster_queries(report.matrix, policy);
    report.candidates = xmv::build_candidate_views(report.clusters, workload, schema);
    return report;
}

int cmd_analyze(const AnalyzeOptions &options)
{
    const auto workload = xmv::parse_workload(xmv::read_text_file(require_file(options.workload, "workload file")));
    const auto schema = xmv::parse_schema(xmv::read_text_file(require_file(options.schema, "schema file")));
    xmv::ClusteringPolicy policy;
    try {
        policy = xmv::ClusteringPolicy::parse(options.policy);
    } catch (const xmv::Error &error) {
        throw UsageError(error.what());
    }

    const xmv::AnalysisReport report = run_analysis(workload, schema, policy);
    std::cout << xmv::analysis_to_text(report);

    if (!options.out.empty()) {
        const fs::path out_path(options.out);
        if (out_path.has_parent_path())
            fs::create_directories(out_path.parent_path());
        xmv::write_text_file(out_path, xmv::analysis_to_xml(report));

        xmv::RunManifest manifest;
        manifest.command = "analyze";
        manifest.add("workload", options.workload);
        manifest.add("schema", options.schema);
        manifest.add("cluster-policy", policy.name());
        manifest.add("out", options.out);
        write_run_manifest(out_path.has_parent_path() ? out_path.parent_path() : fs::path("."), std::move(manifest));
    }
    return 0;
}

// --- recommend ---------------------------------------------------------------

struct RecommendOptions
{
    std::string workload;
    std::string schema;
    std::string warehouse;
    std::string objective = "profit";
    std::string estimator = "cardenas";
    std::string policy = "sim-dominates";
    double budget = -1.0;
    double alpha = -1.0;
    double update_ratio = 0.0;
    std::int64_t facts = -1;
    std::string out;
};

xmv::Recommendation run_recommendation(const std::vector<xmv::DecisionQuery> &workload,
                                       const xmv::WarehouseSchema &schema,
                                       const xmv::ClusteringPolicy &policy,
                                       const xmv::SelectionConfig &config,
                                       xmv::Estimator estimator,
                                       std::uint64_t fact_count)
{
    const xmv::AnalysisReport analysis = run_analysis(workload, schema, policy);
    const xmv::CostParams params = xmv::CostParams::from_schema(schema, fact_count);

    xmv::Recommendation recommendation;
    recommendation.objective = config.objective;
    recommendation.estimator = estimator;
    recommendation.update_query_ratio = config.update_query_ratio;
    recommendation.storage_budget = config.storage_budget;
    recommendation.alpha = config.alpha;
    recommendation.fact_count = fact_count;
    recommendation.candidates = analysis.candidates;

    for (const xmv::CandidateView &view : recommendation.candidates) {
        xmv::ViewEstimate estimate;
        estimate.cells = estimator == xmv::Estimator::Cardenas ? xmv::cardenas_estimate(view, params)
                                                               : xmv::yao_estimate(view, params).cells;
        estimate.bytes = xmv::view_byte_size(view, estimate.cells, params);
        recommendation.estimates[view.id] = estimate;
    }

    recommendation.result = xmv::greedy_select(recommendation.candidates, workload, config,
                                               recommendation.estimates, fact_count);
    return recommendation;
}

int cmd_recommend(const RecommendOptions &options)
{
    const auto workload = xmv::parse_workload(xmv::read_text_file(require_file(options.workload, "workload file")));

    xmv::WarehouseSchema schema;
    std::uint64_t fact_count = 0;
    bool have_facts = false;
    if (!options.warehouse.empty()) {
        const fs::path dir = require_dir(options.warehouse, "warehouse directory");
        const xmv::Warehouse warehouse = load_warehouse_dir(dir);
        schema = warehouse.schema;
        fact_count = warehouse.facts.size();
        have_facts = true;
    }
    if (!options.schema.empty())
        schema = xmv::parse_schema(xmv::read_text_file(require_file(options.schema, "schema file")));
    else if (options.warehouse.empty())
        throw UsageError("either --schema or --warehouse is required");
    if (options.facts >= 0) {
        fact_count = static_cast<std::uint64_t>(options.facts);
        have_facts = true;
    }
    if (!have_facts)
        throw UsageError("the fact count is required: pass --facts N or --warehouse DIR");

    xmv::SelectionConfig config;
    xmv::Estimator estimator = xmv::Estimator::Cardenas;
    xmv::ClusteringPolicy policy;
    try {
        config.objective = xmv::objective_from(options.objective);
        estimator = xmv::estimator_from(options.estimator);
        policy = xmv::ClusteringPolicy::parse(options.policy);
    } catch (const xmv::Error &error) {
        throw UsageError(error.what());
    }
    if (options.budget >= 0.0)
        config.storage_budget = options.budget;
    if (options.alpha >= 0.0)
        config.alpha = options.alpha;
    config.update_query_ratio = options.update_ratio;
    try {
        config.validate();
    } catch (const xmv::Error &error) {
        throw UsageError(error.what());
    }

    const xmv::Recommendation recommendation =
        run_recommendation(workload, schema, policy, config, estimator, fact_count);
    std::cout << xmv::recommendation_to_text(recommendation);

    if (!options.out.empty()) {
        const fs::path out_path(options.out);
        if (out_path.has_parent_path())
            fs::create_directories(out_path.parent_path());
        xmv::write_text_file(out_path, xmv::recommendation_to_xml(recommendation));

        xmv::RunManifest manifest;
        manifest.command = "recommend";
        manifest.add("workload", options.workload);
        if (!options.schema.empty())
            manifest.add("schema", options.schema);
        if (!options.warehouse.empty())
            manifest.add("warehouse", options.warehouse);
        manifest.add("objective", options.objective);
        manifest.add("estimator", options.estimator);
        manifest.add("cluster-policy", policy.name());
        manifest.add("update-ratio", xmv::format_double(options.update_ratio));
        if (config.storage_budget.has_value())
            manifest.add("budget", xmv::format_double(*config.storage_budget));
        if (config.alpha.has_value())
            manifest.add("alpha", xmv::format_double(*config.alpha));
        manifest.add("facts", std::to_string(fact_count));
        manifest.add("out", options.out);
        write_run_manifest(out_path.has_parent_path() ? out_path.parent_path() : fs::path("."), std::move(manifest));
    }
    return 0;
}

// --- materialize ---------------------------------------------------------------

struct MaterializeOptions
{
    std::string recommendation;
    std::string warehouse;
    std::string out;
};

int cmd_materialize(const MaterializeOptions &options)
{
    const xmv::Recommendation recommendation = xmv::recommendation_from_xml(
        xmv::read_text_file(require_file(options.recommendation, "recommendation file")));
    const xmv::Warehouse warehouse = load_warehouse_dir(require_dir(options.warehouse, "warehouse directory"));

    std::vector<xmv::MaterializedView> views;
    for (const xmv::CandidateView &view : recommendation.selected_views())
        views.push_back(xmv::materialize(view, warehouse));

    const fs::path out_dir(options.out);
    xmv::write_view_collection(out_dir, views);

    xmv::RunManifest manifest;
    manifest.command = "materialize";
    manifest.add("recommendation", options.recommendation);
    manifest.add("warehouse", options.warehouse);
    manifest.add("out", options.out);
    write_run_manifest(out_dir, std::move(manifest));

    std::cout << "materialized " << views.size() << " view(s) to " << options.out << "\n";
    for (const xmv::MaterializedView &view : views)
        std::cout << "  " << view.definition.id << ": " << view.rows.size() << " rows\n";
    return 0;
}

// --- bench --------------------------------------------------------------------

struct BenchOptions
{
    std::string workload;
    std::string warehouse;
    std::string views;
    std::string csv;
    std::string out;
    bool verify = false;
};

int cmd_bench(const BenchOptions &options)
{
    const auto workload = xmv::parse_workload(xmv::read_text_file(require_file(options.workload, "workload file")));
    const xmv::Warehouse warehouse = load_warehouse_dir(require_dir(options.warehouse, "warehouse directory"));
    const auto views = xmv::load_view_collection(require_dir(options.views, "views directory"));

    const xmv::BenchReport report = xmv::bench_workload(workload, views, warehouse);
    std::cout << xmv::bench_to_text(report);

    if (options.verify) {
        std::size_t verified = 0;
        for (const xmv::DecisionQuery &query : workload) {
            const xmv::MaterializedView *cheapest = nullptr;
            for (const xmv::MaterializedView &view : views)
                if (xmv::answerable(query, view.definition)
                    && (cheapest == nullptr || view.rows.size() < cheapest->rows.size()))
                    cheapest = &view;
            if (cheapest == nullptr)
                continue;
            if (xmv::evaluate(query, warehouse).rows != xmv::evaluate(query, *cheapest).rows)
                throw xmv::IntegrityError("query '" + query.id + "' yields different results on view '"
                                          + cheapest->definition.id + "' and on the base documents");
            ++verified;
        }
        std::cout << "verified " << verified << " rewritten quer" << (verified == 1 ? "y" : "ies")
                  << " against base results\n";
    }

    if (!options.csv.empty()) {
        const fs::path csv_path(options.csv);
        if (csv_path.has_parent_path())
            fs::create_directories(csv_path.parent_path());
        xmv::write_text_file(csv_path, xmv::bench_to_csv(report));
    }
    if (!options.out.empty()) {
        const fs::path out_path(options.out);
        if (out_path.has_parent_path())
            fs::create_directories(out_path.parent_path());
        xmv::write_text_file(out_path, xmv::bench_to_xml(report));

        xmv::RunManifest manifest;
        manifest.command = "bench";
        manifest.add("workload", options.workload);
        manifest.add("warehouse", options.warehouse);
        manifest.add("views", options.views);
        manifest.add("out", options.out);
        write_run_manifest(out_path.has_parent_path() ? out_path.parent_path() : fs::path("."), std::move(manifest));
    }
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"xmv - materialized view advisor for XML star-schema warehouses"};
    app.set_version_flag("--version", std::string("xmv ") + xmv::version_string());
    app.require_subcommand(1);

    GenerateOptions generate_options;
    CLI::App *generate = app.add_subcommand("generate", "Generate a synthetic XCube warehouse");
    generate->add_option("--dims", generate_options.dims, "Dimensions as name:cardinality:bytes,...")->required();
    generate->add_option("--facts", generate_options.facts, "Number of fact cells")->required();
    generate->add_option("--seed", generate_options.seed, "RNG seed (default 42)");
    generate->add_option("--out", generate_options.out, "Output directory")->required();
    generate->add_option("--attrs-per-dim", generate_options.attrs_per_dim, "Attributes per dimension (default 2)");
    generate->add_option("--measures", generate_options.measures,
                         "Measures as name:min:max,... (default amount, quantity)");
    generate->add_flag("--special-values", generate_options.special_values,
                       "Embed XML-escaping-relevant characters in attribute values");

    AnalyzeOptions analyze_options;
    CLI::App *analyze = app.add_subcommand("analyze", "Build the query-attribute matrix and cluster the workload");
    analyze->add_option("--workload", analyze_options.workload, "Workload file")->required();
    analyze->add_option("--schema", analyze_options.schema, "Schema.xml path")->required();
    analyze->add_option("--cluster-policy", analyze_options.policy, "sim-dominates or threshold:N");
    analyze->add_option("--out", analyze_options.out, "Write the XML report here");

    RecommendOptions recommend_options;
    CLI::App *recommend = app.add_subcommand("recommend", "Select a materialized view configuration");
    recommend->add_option("--workload", recommend_options.workload, "Workload file")->required();
    recommend->add_option("--schema", recommend_options.schema, "Schema.xml path");
    recommend->add_option("--warehouse", recommend_options.warehouse, "Warehouse directory (schema + fact count)");
    recommend->add_option("--objective", recommend_options.objective, "profit, ratio or hybrid")->required();
    recommend->add_option("--budget", recommend_options.budget, "Storage budget in bytes");
    recommend->add_option("--alpha", recommend_options.alpha, "Hybrid threshold in (0,1]");
    recommend->add_option("--update-ratio", recommend_options.update_ratio, "Update/query proportion (default 0)");
    recommend->add_option("--estimator", recommend_options.estimator, "cardenas (default) or yao");
    recommend->add_option("--cluster-policy", recommend_options.policy, "sim-dominates or threshold:N");
    recommend->add_option("--facts", recommend_options.facts, "Fact count override");
    recommend->add_option("--out", recommend_options.out, "Write the recommendation XML here");

    MaterializeOptions materialize_options;
    CLI::App *materialize = app.add_subcommand("materialize", "Materialize the recommended views as XML documents");
    materialize->add_option("--recommendation", materialize_options.recommendation, "Recommendation XML")->required();
    materialize->add_option("--warehouse", materialize_options.warehouse, "Warehouse directory")->required();
    materialize->add_option("--out", materialize_options.out, "View collection output directory")->required();

    BenchOptions bench_options;
    CLI::App *bench = app.add_subcommand("bench", "Compare workload cost with and without the views");
    bench->add_option("--workload", bench_options.workload, "Workload file")->required();
    bench->add_option("--warehouse", bench_options.warehouse, "Warehouse directory")->required();
    bench->add_option("--views", bench_options.views, "View collection directory")->required();
    bench->add_option("--csv", bench_options.csv, "Write per-query costs as CSV here");
    bench->add_option("--out", bench_options.out, "Write the XML report here");
    bench->add_flag("--verify", bench_options.verify, "Check view results against base evaluation");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }

    try {
        if (generate->parsed())
            return cmd_generate(generate_options);
        if (analyze->parsed())
            return cmd_analyze(analyze_options);
        if (recommend->parsed())
            return cmd_recommend(recommend_options);
        if (materialize->parsed())
            return cmd_materialize(materialize_options);
        if (bench->parsed())
            return cmd_bench(bench_options);
    } catch (const UsageError &error) {
        std::cerr << "error: " << error.what() << "\n";
        return 2;
    } catch (const std::exception &error) {
        std::cerr << "error: " << error.what() << "\n";
        return 1;
    }
    return 2;
}

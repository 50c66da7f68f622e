#include "xmv/reports.hpp"

#include "xmv/errors.hpp"
#include "xmv/strings.hpp"
#include "xmv/version.hpp"
#include "xmv/xml.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace xmv {

namespace fs = std::filesystem;

std::string read_text_file(const fs::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open '" + path.string() + "' for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return std::move(buffer).str();
}

void write_text_file(const fs::path &path, std::string_view content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error("cannot open '" + path.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out)
        throw Error("failed writing '" + path.string() + "'");
}

namespace {

void append_view_definition(XmlElement &parent, const CandidateView &view)
{
    for (const std::string &attribute : view.attributes)
        parent.add_child("attribute").set_attribute("name", attribute);
    for (const std::string &dimension : view.dimensions)
        parent.add_child("dimension").set_attribute("name", dimension);
    for (const Aggregate &measure : view.measures)
        parent.add_child("measure")
            .set_attribute("op", std::string(to_string(measure.op)))
            .set_attribute("name", measure.measure);
}

CandidateView view_definition_from(const XmlElement &element)
{
    CandidateView view;
    view.id = element.require_attribute("id");
    if (const std::string *cluster = element.find_attribute("cluster"))
        view.source_cluster = *cluster;
    for (const XmlElement &child : element.children) {
        if (child.name == "attribute")
            view.attributes.insert(child.require_attribute("name"));
        else if (child.name == "dimension")
            view.dimensions.insert(child.require_attribute("name"));
        else if (child.name == "measure")
            view.measures.insert(Aggregate{aggregate_op_from(child.require_attribute("op")),
                                           child.require_attribute("name")});
    }
    if (view.attributes.empty())
        throw ValidationError("view '" + view.id + "' declares no attributes");
    if (view.measures.empty())
        throw ValidationError("view '" + view.id + "' declares no measures");
    return view;
}

std::string join(const std::set<std::string> &items)
{
    std::string out;
    for (const std::string &item : items) {
        if (!out.empty())
            out += ", ";
        out += item;
    }
    return out;
}

std::string join_measures(const std::set<Aggregate> &measures)
{
    std::string out;
    for (const Aggregate &measure : measures) {
        if (!out.empty())
            out += ", ";
        out += std::string(to_string(measure.op)) + "(" + measure.measure + ")";
    }
    return out;
}

std::string aggregate_element_name(const Aggregate &aggregate)
{
    return std::string(to_string(aggregate.op)) + "_" + aggregate.measure;
}

Aggregate aggregate_from_element_name(const std::string &name)
{
    const std::size_t underscore = name.find('_');
    if (underscore == std::string::npos)
        throw ValidationError("'" + name + "' is not an <op>_<measure> aggregate element");
    return Aggregate{aggregate_op_from(name.substr(0, underscore)), name.substr(underscore + 1)};
}

} // namespace

// --- analyze -----------------------------------------------------------------

std::string analysis_to_xml(const AnalysisReport &report)
{
    XmlElement root;
    root.name = "analysis";
    root.set_attribute("policy", report.policy.name());

    XmlElement &matrix = root.add_child("matrix");
    for (const std::string &attribute : report.matrix.attributes)
        matrix.add_child("attribute").set_attribute("name", attribute);
    for (std::size_t i = 0; i != report.matrix.query_count(); ++i) {
        std::string bits;
        for (const std::uint8_t cell : report.matrix.cells[i])
            bits.push_back(cell != 0 ? '1' : '0');
        matrix.add_child("query").set_attribute("id", report.matrix.queries[i]).set_attribute("bits", bits);
    }

    XmlElement &clusters = root.add_child("clusters");
    for (const Cluster &cluster : report.clusters) {
        XmlElement &element = clusters.add_child("cluster");
        element.set_attribute("id", cluster.id);
        for (const std::string &query_id : cluster.query_ids)
            element.add_child("query").set_attribute("id", query_id);
    }

    XmlElement &candidates = root.add_child("candidates");
    for (const CandidateView &view : report.candidates) {
        XmlElement &element = candidates.add_child("view");
        element.set_attribute("id", view.id);
        element.set_attribute("cluster", view.source_cluster);
        append_view_definition(element, view);
    }

    return xml_serialize(root);
}

std::string analysis_to_text(const AnalysisReport &report)
{
    std::ostringstream out;
    out << "query-attribute matrix: " << report.matrix.query_count() << " queries x "
        << report.matrix.attribute_count() << " attributes\n";

    std::size_t id_width = 5;
    for (const std::string &query : report.matrix.queries)
        id_width = std::max(id_width, query.size());
    out << std::left << std::setw(static_cast<int>(id_width) + 2) << "query";
    for (const std::string &attribute : report.matrix.attributes)
        out << attribute << "  ";
    out << '\n';
    for (std::size_t i = 0; i != report.matrix.query_count(); ++i) {
        out << std::left << std::setw(static_cast<int>(id_width) + 2) << report.matrix.queries[i];
        for (std::size_t k = 0; k != report.matrix.attribute_count(); ++k) {
            out << std::left << std::setw(static_cast<int>(report.matrix.attributes[k].size()) + 2)
                << static_cast<int>(report.matrix.cells[i][k]);
        }
        out << '\n';
    }

    out << "\nclusters (policy " << report.policy.name() << "): " << report.clusters.size() << '\n';
    for (const Cluster &cluster : report.clusters) {
        out << "  " << cluster.id << ": ";
        for (std::size_t i = 0; i != cluster.query_ids.size(); ++i)
            out << (i != 0 ? " " : "") << cluster.query_ids[i];
        out << '\n';
    }

    out << "\ncandidate views:\n";
    for (const CandidateView &view : report.candidates) {
        out << "  " << view.id << " (cluster " << view.source_cluster << "): attributes {" << join(view.attributes)
            << "} dimensions {" << join(view.dimensions) << "} measures {" << join_measures(view.measures) << "}\n";
    }
    return std::move(out).str();
}

// --- recommend ---------------------------------------------------------------

std::vector<CandidateView> Recommendation::selected_views() const
{
    std::vector<CandidateView> views;
    for (const SelectionStep &step : result.selected) {
        const auto it = std::find_if(candidates.begin(), candidates.end(),
                                     [&](const CandidateView &view) { return view.id == step.view_id; });
        if (it == candidates.end())
            throw IntegrityError("selection step names unknown view '" + step.view_id + "'");
        views.push_back(*it);
    }
    return views;
}

std::string recommendation_to_xml(const Recommendation &recommendation)
{
    XmlElement root;
    root.name = "recommendation";
    root.set_attribute("objective", std::string(to_string(recommendation.objective)));
    root.set_attribute("estimator", std::string(to_string(recommendation.estimator)));
    root.set_attribute("update-ratio", format_double(recommendation.update_query_ratio));
    root.set_attribute("facts", std::to_string(recommendation.fact_count));
    if (recommendation.storage_budget.has_value())
        root.set_attribute("budget", format_double(*recommendation.storage_budget));
    if (recommendation.alpha.has_value())
        root.set_attribute("alpha", format_double(*recommendation.alpha));

    XmlElement &candidates = root.add_child("candidates");
    for (const CandidateView &view : recommendation.candidates) {
        XmlElement &element = candidates.add_child("view");
        element.set_attribute("id", view.id);
        element.set_attribute("cluster", view.source_cluster);
        const auto estimate = recommendation.estimates.find(view.id);
        if (estimate != recommendation.estimates.end()) {
            element.set_attribute("estimated-cells", format_double(estimate->second.cells));
            element.set_attribute("estimated-bytes", format_double(estimate->second.bytes));
        }
        element.set_attribute("selected", recommendation.result.contains(view.id) ? "true" : "false");
        append_view_definition(element, view);
    }

    XmlElement &selection = root.add_child("selection");
    selection.set_attribute("baseline-cost", format_double(recommendation.result.baseline_cost));
    selection.set_attribute("final-cost", format_double(recommendation.result.final_workload_cost));
    for (const SelectionStep &step : recommendation.result.selected) {
        XmlElement &element = selection.add_child("step");
        element.set_attribute("view", step.view_id);
        element.set_attribute("objective-value", format_double(step.objective_value));
        if (step.remaining_budget.has_value())
            element.set_attribute("remaining-budget", format_double(*step.remaining_budget));
    }

    return xml_serialize(root);
}

Recommendation recommendation_from_xml(std::string_view xml_text)
{
    const XmlElement root = xml_parse(xml_text);
    if (root.name != "recommendation")
        throw ValidationError("expected <recommendation> root element, found <" + root.name + ">");

    Recommendation recommendation;
    recommendation.objective = objective_from(root.require_attribute("objective"));
    recommendation.estimator = estimator_from(root.require_attribute("estimator"));
    recommendation.update_query_ratio = parse_double(root.require_attribute("update-ratio"), "update-ratio");
    recommendation.fact_count = parse_uint(root.require_attribute("facts"), "facts");
    if (const std::string *budget = root.find_attribute("budget"))
        recommendation.storage_budget = parse_double(*budget, "budget");
    if (const std::string *alpha = root.find_attribute("alpha"))
        recommendation.alpha = parse_double(*alpha, "alpha");

    for (const XmlElement &section : root.children) {
        if (section.name == "candidates") {
            for (const XmlElement &element : section.children) {
                CandidateView view = view_definition_from(element);
                if (const std::string *cells = element.find_attribute("estimated-cells")) {
                    ViewEstimate estimate;
                    estimate.cells = parse_double(*cells, "estimated-cells");
                    estimate.bytes = parse_double(element.require_attribute("estimated-bytes"), "estimated-bytes");
                    recommendation.estimates[view.id] = estimate;
                }
                recommendation.candidates.push_back(std::move(view));
            }
        } else if (section.name == "selection") {
            recommendation.result.baseline_cost =
                parse_double(section.require_attribute("baseline-cost"), "baseline-cost");
            recommendation.result.final_workload_cost =
                parse_double(section.require_attribute("final-cost"), "final-cost");
            for (const XmlElement &element : section.children) {
                SelectionStep step;
                step.view_id = element.require_attribute("view");
                step.objective_value = parse_double(element.require_attribute("objective-value"), "objective-value");
                if (const std::string *remaining = element.find_attribute("remaining-budget"))
                    step.remaining_budget = parse_double(*remaining, "remaining-budget");
                recommendation.result.selected.push_back(std::move(step));
            }
        }
    }

    // Every selection step must resolve against the candidate list.
    (void)recommendation.selected_views();
    return recommendation;
}

std::string recommendation_to_text(const Recommendation &recommendation)
{
    std::ostringstream out;
    out << "candidates: " << recommendation.candidates.size() << " (estimator "
        << to_string(recommendation.estimator) << ", |F| = " << recommendation.fact_count << ")\n";
    for (const CandidateView &view : recommendation.candidates) {
        out << "  " << view.id << " (cluster " << view.source_cluster << "): ";
        const auto estimate = recommendation.estimates.find(view.id);
        if (estimate != recommendation.estimates.end())
            out << "cells " << format_double(estimate->second.cells) << ", bytes "
                << format_double(estimate->second.bytes) << ", ";
        out << "attributes {" << join(view.attributes) << "} measures {" << join_measures(view.measures) << "}\n";
    }

    out << "\nselection (objective " << to_string(recommendation.objective);
    if (recommendation.storage_budget.has_value())
        out << ", budget " << format_double(*recommendation.storage_budget);
    if (recommendation.alpha.has_value())
        out << ", alpha " << format_double(*recommendation.alpha);
    out << "):\n";
    if (recommendation.result.selected.empty())
        out << "  (no view has a positive objective)\n";
    std::size_t rank = 1;
    for (const SelectionStep &step : recommendation.result.selected) {
        out << "  " << rank++ << ". " << step.view_id << "  objective " << format_double(step.objective_value);
        if (step.remaining_budget.has_value())
            out << "  remaining budget " << format_double(*step.remaining_budget);
        out << '\n';
    }

    out << "\nbaseline cost " << format_double(recommendation.result.baseline_cost) << ", final cost "
        << format_double(recommendation.result.final_workload_cost);
    if (recommendation.result.baseline_cost > 0.0) {
        const double saved = 100.0
                             * (recommendation.result.baseline_cost - recommendation.result.final_workload_cost)
                             / recommendation.result.baseline_cost;
        out << " (" << std::fixed << std::setprecision(1) << saved << "% saved)";
    }
    out << '\n';
    return std::move(out).str();
}

// --- materialized view collection ---------------------------------------------

std::string view_to_xml(const MaterializedView &view)
{
    XmlElement root;
    root.name = "CubeFacts";
    XmlElement &cube = root.add_child("cube");
    for (const MaterializedRow &row : view.rows) {
        XmlElement &cell = cube.add_child("Cell");
        for (const auto &[attribute, value] : row.group_key)
            cell.add_child("dimension").set_attribute("id", attribute).set_attribute("node", value);
        for (const auto &[aggregate, value] : row.aggregates)
            cell.add_child(aggregate_element_name(aggregate)).text = format_double(value);
    }
    return xml_serialize(root);
}

MaterializedView view_from_xml(std::string_view xml_text, const CandidateView &definition)
{
    const XmlElement root = xml_parse(xml_text);
    if (root.name != "CubeFacts")
        throw ValidationError("expected <CubeFacts> root element in a view document");

    // Accumulators every row must carry: avg is materialized as sum + count.
    std::set<Aggregate> expected;
    for (const Aggregate &measure : definition.measures) {
        if (measure.op == AggregateOp::Avg) {
            expected.insert(Aggregate{AggregateOp::Sum, fold(measure.measure)});
            expected.insert(Aggregate{AggregateOp::Count, fold(measure.measure)});
        } else {
            expected.insert(Aggregate{measure.op, fold(measure.measure)});
        }
    }

    MaterializedView view;
    view.definition = definition;
    std::set<std::map<std::string, std::string>> seen_keys;
    for (const XmlElement &cube : root.children) {
        if (cube.name != "cube")
            throw ValidationError("unexpected element <" + cube.name + "> in a view document");
        for (const XmlElement &cell : cube.children) {
            if (cell.name != "Cell")
                throw ValidationError("unexpected element <" + cell.name + "> in a view document");
            MaterializedRow row;
            for (const XmlElement &child : cell.children) {
                if (child.name == "dimension") {
                    const std::string attribute = fold(child.require_attribute("id"));
                    if (definition.attributes.count(attribute) == 0)
                        throw IntegrityError("view '" + definition.id + "' row carries undeclared attribute '"
                                             + attribute + "'");
                    row.group_key[attribute] = child.require_attribute("node");
                } else {
                    const Aggregate aggregate = aggregate_from_element_name(child.name);
                    row.aggregates[aggregate] =
                        parse_double(child.text, "view '" + definition.id + "' aggregate " + child.name);
                }
            }
            if (row.group_key.size() != definition.attributes.size())
                throw IntegrityError("view '" + definition.id + "' row covers " + std::to_string(row.group_key.size())
                                     + " attributes, expected " + std::to_string(definition.attributes.size()));
            for (const Aggregate &aggregate : expected)
                if (row.aggregates.count(aggregate) == 0)
                    throw IntegrityError("view '" + definition.id + "' row is missing "
                                         + aggregate_element_name(aggregate));
            if (!seen_keys.insert(row.group_key).second)
                throw IntegrityError("view '" + definition.id + "' has duplicate group keys");
            view.rows.push_back(std::move(row));
        }
    }
    return view;
}

std::string views_manifest_to_xml(std::span<const MaterializedView> views)
{
    XmlElement root;
    root.name = "views";
    for (const MaterializedView &view : views) {
        XmlElement &element = root.add_child("view");
        element.set_attribute("id", view.definition.id);
        element.set_attribute("cluster", view.definition.source_cluster);
        element.set_attribute("rows", std::to_string(view.rows.size()));
        element.set_attribute("file", view.definition.id + ".xml");
        append_view_definition(element, view.definition);
    }
    return xml_serialize(root);
}

void write_view_collection(const fs::path &directory, std::span<const MaterializedView> views)
{
    fs::create_directories(directory);
    write_text_file(directory / "views-manifest.xml", views_manifest_to_xml(views));
    for (const MaterializedView &view : views)
        write_text_file(directory / (view.definition.id + ".xml"), view_to_xml(view));
}

std::vector<MaterializedView> load_view_collection(const fs::path &directory)
{
    const fs::path manifest_path = directory / "views-manifest.xml";
    if (!fs::exists(manifest_path))
        throw Error("no views-manifest.xml in '" + directory.string() + "'");

    const XmlElement root = xml_parse(read_text_file(manifest_path));
    if (root.name != "views")
        throw ValidationError("expected <views> root element in views-manifest.xml");

    std::vector<MaterializedView> views;
    for (const XmlElement &element : root.children) {
        if (element.name != "view")
            throw ValidationError("unexpected element <" + element.name + "> in views-manifest.xml");
        const CandidateView definition = view_definition_from(element);
        const std::uint64_t expected_rows = parse_uint(element.require_attribute("rows"), "manifest rows");
        const std::string file = element.require_attribute("file");
        MaterializedView view = view_from_xml(read_text_file(directory / file), definition);
        if (view.rows.size() != expected_rows)
            throw IntegrityError("view '" + definition.id + "': manifest declares " + std::to_string(expected_rows)
                                 + " rows but " + file + " contains " + std::to_string(view.rows.size()));
        views.push_back(std::move(view));
    }
    return views;
}

// --- bench ---------------------------------------------------------------------

std::string bench_to_xml(const BenchReport &report)
{
    XmlElement root;
    root.name = "benchReport";
    for (const QueryBenchRow &row : report.per_query) {
        XmlElement &element = root.add_child("query");
        element.set_attribute("id", row.query_id);
        element.set_attribute("base-cost", format_double(row.base_cost));
        element.set_attribute("view-cost", format_double(row.view_cost));
        if (!row.view_id.empty())
            element.set_attribute("view", row.view_id);
    }
    XmlElement &totals = root.add_child("totals");
    totals.set_attribute("base", format_double(report.total_base));
    totals.set_attribute("with-views", format_double(report.total_with_views));
    totals.set_attribute("speedup", format_double(report.speedup));
    return xml_serialize(root);
}

std::string bench_to_text(const BenchReport &report)
{
    std::size_t id_width = 6;
    for (const QueryBenchRow &row : report.per_query)
        id_width = std::max(id_width, row.query_id.size());

    std::ostringstream out;
    out << std::left << std::setw(static_cast<int>(id_width) + 2) << "query" << std::setw(14) << "base"
        << std::setw(14) << "with-views" << "view\n";
    for (const QueryBenchRow &row : report.per_query) {
        out << std::left << std::setw(static_cast<int>(id_width) + 2) << row.query_id << std::setw(14)
            << format_double(row.base_cost) << std::setw(14) << format_double(row.view_cost)
            << (row.view_id.empty() ? "-" : row.view_id) << '\n';
    }
    out << std::left << std::setw(static_cast<int>(id_width) + 2) << "totals" << std::setw(14)
        << format_double(report.total_base) << std::setw(14) << format_double(report.total_with_views)
        << "speedup " << std::fixed << std::setprecision(2) << report.speedup << '\n';
    return std::move(out).str();
}

std::string bench_to_csv(const BenchReport &report)
{
    std::string out = "query,base_cost,view_cost,view\n";
    for (const QueryBenchRow &row : report.per_query) {
        out += row.query_id;
        out += ',';
        out += format_double(row.base_cost);
        out += ',';
        out += format_double(row.view_cost);
        out += ',';
        out += row.view_id;
        out += '\n';
    }
    return out;
}

// --- run manifest ----------------------------------------------------------------

void RunManifest::add(std::string name, std::string value)
{
    parameters.emplace_back(std::move(name), std::move(value));
}

std::string run_manifest_to_xml(const RunManifest &manifest)
{
    const auto now = std::chrono::system_clock::now();
    const std::time_t time = std::chrono::system_clock::to_time_t(now);
    std::ostringstream stamp;
    stamp << std::put_time(std::gmtime(&time), "%Y-%m-%dT%H:%M:%SZ");

    XmlElement root;
    root.name = "runManifest";
    root.set_attribute("tool", "xmv");
    root.set_attribute("version", version_string());
    root.set_attribute("command", manifest.command);
    root.set_attribute("timestamp", stamp.str());
    for (const auto &[name, value] : manifest.parameters)
        root.add_child("parameter").set_attribute("name", name).set_attribute("value", value);
    return xml_serialize(root);
}

} // namespace xmv

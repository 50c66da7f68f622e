#include "xmv/generator.hpp"

#include "../support/fixtures.hpp"

#include <doctest.h>

#include <map>

using namespace xmv;

TEST_CASE("cardinalities (2,3) with zero facts yield 5 members and no facts")
{
    GenerationSpec spec;
    spec.dimensions = {make_dimension("a", 2, 8), make_dimension("b", 3, 8)};
    spec.measures = default_measures();
    spec.fact_count = 0;

    const Warehouse warehouse = generate_synthetic(spec, 1);
    CHECK(warehouse.members.size() == 5);
    CHECK(warehouse.facts.empty());
}

TEST_CASE("generation is a pure function of spec and seed")
{
    const GenerationSpec spec = fixtures::small_gen_spec(200);
    const Warehouse first = generate_synthetic(spec, 12345);
    const Warehouse second = generate_synthetic(spec, 12345);
    CHECK(first == second);

    const Warehouse other_seed = generate_synthetic(spec, 54321);
    CHECK(first.facts != other_seed.facts);
}

TEST_CASE("fact references are uniform within 3 sigma of the binomial expectation")
{
    GenerationSpec spec;
    spec.dimensions = {make_dimension("x", 10, 8), make_dimension("y", 10, 8)};
    spec.measures = default_measures();
    spec.fact_count = 10000;

    const Warehouse warehouse = generate_synthetic(spec, 2026);

    // Per member: n*p = 1000, sigma = sqrt(n*p*(1-p)) = 30.
    std::map<std::string, std::uint64_t> counts;
    for (const FactCell &fact : warehouse.facts)
        for (const auto &[dimension, member] : fact.dimension_refs)
            ++counts[member];

    REQUIRE(counts.size() == 20);
    for (const auto &[member, count] : counts) {
        CHECK(count >= 910);
        CHECK(count <= 1090);
    }
}

TEST_CASE("integral measures stay integral and within range")
{
    GenerationSpec spec = fixtures::small_gen_spec(300);
    const Warehouse warehouse = generate_synthetic(spec, 8);
    for (const FactCell &fact : warehouse.facts) {
        const double amount = fact.measure_values.at("amount");
        const double quantity = fact.measure_values.at("quantity");
        CHECK(amount == static_cast<double>(static_cast<long long>(amount)));
        CHECK(amount >= 1.0);
        CHECK(amount <= 1000.0);
        CHECK(quantity >= 1.0);
        CHECK(quantity <= 100.0);
    }
}

TEST_CASE("make_dimension splits the byte budget across attributes")
{
    const DimensionGenSpec spec = make_dimension("d", 4, 25, 3);
    CHECK(spec.attributes.size() == 3);
    std::uint64_t total = 0;
    for (const AttributeSpec &attribute : spec.attributes)
        total += attribute.byte_size;
    CHECK(total == 25);
}

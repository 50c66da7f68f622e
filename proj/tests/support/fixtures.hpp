#pragma once

#include "xmv/generator.hpp"
#include "xmv/query.hpp"
#include "xmv/warehouse.hpp"

#include <string>
#include <vector>

namespace fixtures {

// Single-dimension selection with a multi-attribute group by; the split
// @name/@value predicate form and an explicit document() step.
inline const char *kLyonQuery = R"(
for $a in document(Dimensions.xml)//dimensionData/classification/
  Level[@node='CUSTOMERS']/node,
  $x in document(Facts.xml)//CubeFacts/cube/Cell
where $a/attribute/@name='CUST_CITY'
  and $a/attribute/@value='Lyon'
  and $x/dimension/@node=$a/@id
  and $x/dimension/@id='CUSTOMERS'
Group by (@CUST_LAST_NAME,@CUST_POSTAL_CODE)
return sum (quantity)
)";

// Two-dimension join queries with let bindings and bracketed predicates;
// they differ only in one predicate value.
inline const char *kSnapshotQ1 = R"(
for $a in //dimensionData/classification/Level
   [@node='channels']/node,
   $b in //dimensionData/classification/Level
   [@node='customers']/node,
   $x in //CubeFacts/cube/Cell
   let $q := $b/attribute[@name='cust_first_name'],
       $s := $a/attribute[@name='channel_class']
   where $a/attribute[@name='channel_desc',@value='Internet']
   and $b/attribute[@name='cust_city',@value='Montpellier']
   and $x/dimension/@node=$a/@id
   and $x/dimension/@node=$b/@id
   and $x/dimension/@id='customers'
   and $x/dimension/@id='channels'
   group by(@cust_first_name,@channel_class)
   return @cust_first_name, @channel_class, sum(quantity)
)";

inline const char *kSnapshotQ2 = R"(
for $a in //dimensionData/classification/Level
   [@node='channels']/node,
   $b in //dimensionData/classification/Level
   [@node='customers']/node,
   $x in //CubeFacts/cube/Cell
   let $q := $b/attribute[@name='cust_first_name'],
       $s := $a/attribute[@name='channel_class']
   where $a/attribute[@name='channel_desc',@value='Internet']
   and $b/attribute[@name='cust_city',@value='Lyon']
   and $x/dimension/@node=$a/@id
   and $x/dimension/@node=$b/@id
   and $x/dimension/@id='customers'
   and $x/dimension/@id='channels'
   group by(@cust_first_name,@channel_class)
   return @cust_first_name,@channel_class, sum(quantity)
)";

inline std::string snapshot_workload()
{
    return std::string("-- id: q1\n") + kSnapshotQ1 + "\n---\n-- id: q2\n" + kSnapshotQ2 + "\n";
}

// Five-dimension sales schema covering everything the snapshot and Lyon
// queries touch.
inline xmv::WarehouseSchema sales_schema()
{
    xmv::WarehouseSchema schema;
    schema.fact_name = "sales";
    schema.dimensions = {
        xmv::DimensionSpec{"channels", {{"channel_desc", 12}, {"channel_class", 12}}, 5},
        xmv::DimensionSpec{"promotions", {{"promo_name", 16}, {"promo_category", 12}}, 8},
        xmv::DimensionSpec{"customers",
                           {{"cust_city", 16}, {"cust_first_name", 16}, {"cust_last_name", 16},
                            {"cust_postal_code", 8}},
                           100},
        xmv::DimensionSpec{"products", {{"prod_name", 20}, {"prod_category", 12}}, 50},
        xmv::DimensionSpec{"times", {{"time_month", 4}, {"time_year", 4}}, 24},
    };
    schema.measures = {{"amount"}, {"quantity"}};
    return schema;
}

// Minimal one-dimension warehouse with deterministic contents.
inline xmv::Warehouse tiny_warehouse()
{
    xmv::Warehouse warehouse;
    warehouse.schema.fact_name = "sales";
    warehouse.schema.dimensions = {xmv::DimensionSpec{"shops", {{"shop_city", 8}}, 2}};
    warehouse.schema.measures = {{"quantity"}};
    warehouse.members = {
        xmv::DimensionMember{"shops", "shops-0", {{"shop_city", "Lyon"}}},
        xmv::DimensionMember{"shops", "shops-1", {{"shop_city", "Bron"}}},
    };
    warehouse.facts = {
        xmv::FactCell{{{"shops", "shops-0"}}, {{"quantity", 3.0}}},
        xmv::FactCell{{{"shops", "shops-1"}}, {{"quantity", 5.0}}},
        xmv::FactCell{{{"shops", "shops-0"}}, {{"quantity", 7.0}}},
    };
    return warehouse;
}

inline xmv::GenerationSpec small_gen_spec(std::uint64_t facts = 100)
{
    xmv::GenerationSpec spec;
    spec.dimensions = {
        xmv::make_dimension("alpha", 4, 8),
        xmv::make_dimension("beta", 5, 8),
        xmv::make_dimension("gamma", 3, 8),
    };
    spec.measures = xmv::default_measures();
    spec.fact_count = facts;
    return spec;
}

} // namespace fixtures

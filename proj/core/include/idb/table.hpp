#pragma once

#include <vector>

#include "idb/value.hpp"

namespace idb {

// Immutable relational value. Operations in relstore.hpp never mutate
// their inputs; they build new tables.
struct Table {
    Schema schema;
    std::vector<Row> rows;

    bool operator==(const Table& o) const;
};

// Result of group_rows: one group per distinct key tuple, first-appearance
// order, within-group row order preserved.
struct GroupedTable {
    struct Group {
        Row key;
        std::vector<Row> rows;
    };

    Schema key_schema;
    Schema row_schema;
    std::vector<Group> groups;

    bool operator==(const GroupedTable& o) const;
};

} // namespace idb

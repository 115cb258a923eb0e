#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "idb/table.hpp"

namespace idb {

enum class CmpOp { Eq, Ne, Lt, Le, Gt, Ge };

const char* cmp_op_text(CmpOp op);
bool apply_cmp(CmpOp op, int cmp);

// One comparison against a literal; conditions in a predicate are ANDed.
struct Condition {
    std::string attr;
    CmpOp op = CmpOp::Eq;
    Value literal;
};

struct RowPredicate {
    std::vector<Condition> conditions; // empty = always true
    bool never = false;                // overrides everything

    static RowPredicate always() { return {}; }
    static RowPredicate none() { return {.conditions = {}, .never = true}; }

    bool eval(const Schema& schema, const Row& row) const;
};

struct IngestOptions {
    std::optional<std::string> explode_attr; // split this Text column one row per character
};

// CSV ingestion: first line is the header and must match the schema names.
Table load_csv(const std::string& path, const Schema& schema, const IngestOptions& options = {});

// Header scan + cell sniffing (all-integer column -> Integer, numeric -> Real, else Text).
Schema infer_csv_schema(const std::string& path);

void write_csv(const Table& table, std::ostream& out);
void write_csv_file(const Table& table, const std::string& path);

Table filter(const Table& t, const RowPredicate& predicate, const std::vector<std::string>& projection);
Table project(const Table& t, const std::vector<std::string>& attrs);

// Inner equijoin; output schema is left's attributes then right's non-key
// attributes; output order is left order with right matches in right order.
Table equijoin(const Table& left, const Table& right,
               const std::vector<std::pair<std::string, std::string>>& on);

GroupedTable group_rows(const Table& t, const std::vector<std::string>& keys);

// One output row per distinct tx_key: key, one 0/1 Integer column per
// distinct item value (sorted), then the carry attributes.
Table pivot_items(const Table& t, const std::string& tx_key, const std::string& item_attr,
                  const std::vector<std::string>& carry);

} // namespace idb

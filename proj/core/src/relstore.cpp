#include "idb/relstore.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

namespace idb {

const char* cmp_op_text(CmpOp op) {
    switch (op) {
        case CmpOp::Eq: return "=";
        case CmpOp::Ne: return "!=";
        case CmpOp::Lt: return "<";
        case CmpOp::Le: return "<=";
        case CmpOp::Gt: return ">";
        case CmpOp::Ge: return ">=";
    }
    return "?";
}

bool apply_cmp(CmpOp op, int cmp) {
    switch (op) {
        case CmpOp::Eq: return cmp == 0;
        case CmpOp::Ne: return cmp != 0;
        case CmpOp::Lt: return cmp < 0;
        case CmpOp::Le: return cmp <= 0;
        case CmpOp::Gt: return cmp > 0;
        case CmpOp::Ge: return cmp >= 0;
    }
    return false;
}

bool RowPredicate::eval(const Schema& schema, const Row& row) const {
    if (never) return false;
    for (const auto& c : conditions) {
        std::size_t idx = schema.require(c.attr);
        const Value& v = row[idx];
        if (c.op == CmpOp::Eq) {
            if (!v.equals(c.literal)) return false;
        } else if (c.op == CmpOp::Ne) {
            if (v.is_null() || c.literal.is_null()) return false;
            if (v.equals(c.literal)) return false;
        } else {
            auto cmp = v.compare(c.literal);
            if (!cmp || !apply_cmp(c.op, *cmp)) return false;
        }
    }
    return true;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur.push_back(c);
            }
        } else if (c == '"' && cur.empty()) {
            quoted = true;
        } else if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c == '\r' && i + 1 == line.size()) {
            // tolerate CRLF
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

bool parse_integer(const std::string& s, std::int64_t& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    errno = 0;
    long long v = std::strtoll(s.c_str(), &end, 10);
    if (errno != 0 || end != s.c_str() + s.size()) return false;
    out = v;
    return true;
}

bool parse_real(const std::string& s, double& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    errno = 0;
    double v = std::strtod(s.c_str(), &end);
    if (errno != 0 || end != s.c_str() + s.size()) return false;
    out = v;
    return true;
}

Value parse_cell(const std::string& raw, ValueType type, int line_no) {
    if (raw.empty()) return Value::null();
    switch (type) {
        case ValueType::Integer: {
            std::int64_t v;
            if (!parse_integer(raw, v))
                fail(ErrorKind::Ingest,
                     "line " + std::to_string(line_no) + ": '" + raw + "' is not an integer");
            return Value::integer(v);
        }
        case ValueType::Real: {
            double v;
            if (!parse_real(raw, v))
                fail(ErrorKind::Ingest,
                     "line " + std::to_string(line_no) + ": '" + raw + "' is not a number");
            return Value::real(v);
        }
        case ValueType::Text:
            return Value::text(raw);
    }
    return Value::null();
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::Io, "cannot open '" + path + "'");
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

} // namespace

Table load_csv(const std::string& path, const Schema& schema, const IngestOptions& options) {
    auto lines = read_lines(path);
    if (lines.empty()) fail(ErrorKind::Ingest, "'" + path + "': missing header row");

    auto header = split_csv_line(lines[0]);
    if (header.size() != schema.size())
        fail(ErrorKind::Ingest, "'" + path + "': header arity " + std::to_string(header.size()) +
                                    " does not match schema arity " + std::to_string(schema.size()));
    for (std::size_t i = 0; i < header.size(); ++i)
        if (!ci_equal(header[i], schema.at(i).name))
            fail(ErrorKind::Ingest, "'" + path + "': header column '" + header[i] +
                                        "' does not match schema attribute '" + schema.at(i).name + "'");

    std::optional<std::size_t> explode_idx;
    if (options.explode_attr) {
        explode_idx = schema.find(*options.explode_attr);
        if (!explode_idx)
            fail(ErrorKind::Ingest, "explode-items attribute '" + *options.explode_attr +
                                        "' is not in the schema");
        if (schema.at(*explode_idx).type != ValueType::Text)
            fail(ErrorKind::Ingest, "explode-items attribute '" + *options.explode_attr +
                                        "' must be a text column");
    }

    Table out;
    out.schema = schema;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        if (lines[li].empty() || lines[li] == "\r") continue;
        auto cells = split_csv_line(lines[li]);
        int line_no = static_cast<int>(li) + 1;
        if (cells.size() != schema.size())
            fail(ErrorKind::Ingest, "'" + path + "' line " + std::to_string(line_no) + ": expected " +
                                        std::to_string(schema.size()) + " fields, found " +
                                        std::to_string(cells.size()));
        Row row(schema.size());
        for (std::size_t i = 0; i < cells.size(); ++i)
            row[i] = parse_cell(cells[i], schema.at(i).type, line_no);
        if (explode_idx && row[*explode_idx].is_text()) {
            const std::string items = row[*explode_idx].as_text();
            for (char item : items) {
                Row copy = row;
                copy[*explode_idx] = Value::text(std::string(1, item));
                out.rows.push_back(std::move(copy));
            }
        } else {
            out.rows.push_back(std::move(row));
        }
    }
    return out;
}

Schema infer_csv_schema(const std::string& path) {
    auto lines = read_lines(path);
    if (lines.empty()) fail(ErrorKind::Ingest, "'" + path + "': missing header row");
    auto header = split_csv_line(lines[0]);

    std::vector<AttrDef> attrs;
    for (std::size_t col = 0; col < header.size(); ++col) {
        bool all_int = true, all_real = true, any = false;
        for (std::size_t li = 1; li < lines.size(); ++li) {
            if (lines[li].empty() || lines[li] == "\r") continue;
            auto cells = split_csv_line(lines[li]);
            if (col >= cells.size() || cells[col].empty()) continue;
            any = true;
            std::int64_t iv;
            double rv;
            if (!parse_integer(cells[col], iv)) all_int = false;
            if (!parse_real(cells[col], rv)) all_real = false;
        }
        ValueType t = ValueType::Text;
        if (any && all_int)
            t = ValueType::Integer;
        else if (any && all_real)
            t = ValueType::Real;
        attrs.push_back({header[col], t});
    }
    return Schema(std::move(attrs));
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += "\"";
    return out;
}

} // namespace

void write_csv(const Table& table, std::ostream& out) {
    for (std::size_t i = 0; i < table.schema.size(); ++i) {
        if (i) out << ',';
        out << csv_escape(table.schema.at(i).name);
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << csv_escape(row[i].to_string());
        }
        out << '\n';
    }
}

void write_csv_file(const Table& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::Io, "cannot write '" + path + "'");
    write_csv(table, out);
}

Table project(const Table& t, const std::vector<std::string>& attrs) {
    std::vector<std::size_t> idx;
    std::vector<AttrDef> defs;
    for (const auto& a : attrs) {
        std::size_t i = t.schema.require(a);
        idx.push_back(i);
        defs.push_back(t.schema.at(i));
    }
    Table out;
    out.schema = Schema(std::move(defs));
    out.rows.reserve(t.rows.size());
    for (const auto& row : t.rows) {
        Row r;
        r.reserve(idx.size());
        for (std::size_t i : idx) r.push_back(row[i]);
        out.rows.push_back(std::move(r));
    }
    return out;
}

Table filter(const Table& t, const RowPredicate& predicate, const std::vector<std::string>& projection) {
    for (const auto& c : predicate.conditions) t.schema.require(c.attr);
    std::vector<std::size_t> idx;
    std::vector<AttrDef> defs;
    for (const auto& a : projection) {
        std::size_t i = t.schema.require(a);
        idx.push_back(i);
        defs.push_back(t.schema.at(i));
    }
    Table out;
    out.schema = Schema(std::move(defs));
    for (const auto& row : t.rows) {
        if (!predicate.eval(t.schema, row)) continue;
        Row r;
        r.reserve(idx.size());
        for (std::size_t i : idx) r.push_back(row[i]);
        out.rows.push_back(std::move(r));
    }
    return out;
}

Table equijoin(const Table& left, const Table& right,
               const std::vector<std::pair<std::string, std::string>>& on) {
    if (on.empty()) fail(ErrorKind::Plan, "equijoin requires at least one attribute pair");
    std::vector<std::size_t> lkey, rkey;
    for (const auto& [la, ra] : on) {
        std::size_t li = left.schema.require(la);
        std::size_t ri = right.schema.require(ra);
        ValueType lt = left.schema.at(li).type, rt = right.schema.at(ri).type;
        bool both_numeric = (lt == ValueType::Integer || lt == ValueType::Real) &&
                            (rt == ValueType::Integer || rt == ValueType::Real);
        if (lt != rt && !both_numeric)
            fail(ErrorKind::Plan, "join attributes '" + la + "' and '" + ra +
                                      "' have incomparable types");
        lkey.push_back(li);
        rkey.push_back(ri);
    }

    std::vector<AttrDef> defs = left.schema.attrs();
    std::vector<std::size_t> rcarry;
    for (std::size_t i = 0; i < right.schema.size(); ++i) {
        if (std::find(rkey.begin(), rkey.end(), i) != rkey.end()) continue;
        rcarry.push_back(i);
        defs.push_back(right.schema.at(i));
    }

    Table out;
    out.schema = Schema(std::move(defs));
    for (const auto& lrow : left.rows) {
        for (const auto& rrow : right.rows) {
            bool match = true;
            for (std::size_t k = 0; k < lkey.size() && match; ++k)
                match = lrow[lkey[k]].equals(rrow[rkey[k]]);
            if (!match) continue;
            Row r = lrow;
            for (std::size_t i : rcarry) r.push_back(rrow[i]);
            out.rows.push_back(std::move(r));
        }
    }
    return out;
}

GroupedTable group_rows(const Table& t, const std::vector<std::string>& keys) {
    if (keys.empty()) fail(ErrorKind::Plan, "grouping requires at least one key attribute");
    std::vector<std::size_t> kidx;
    std::vector<AttrDef> kdefs;
    for (const auto& k : keys) {
        std::size_t i = t.schema.require(k);
        kidx.push_back(i);
        kdefs.push_back(t.schema.at(i));
    }

    GroupedTable out;
    out.key_schema = Schema(std::move(kdefs));
    out.row_schema = t.schema;

    auto key_less = [](const Row& a, const Row& b) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            int c = Value::total_order(a[i], b[i]);
            if (c != 0) return c < 0;
        }
        return false;
    };
    std::map<Row, std::size_t, decltype(key_less)> index(key_less);
    for (const auto& row : t.rows) {
        Row key;
        key.reserve(kidx.size());
        for (std::size_t i : kidx) key.push_back(row[i]);
        auto it = index.find(key);
        if (it == index.end()) {
            index.emplace(key, out.groups.size());
            out.groups.push_back({std::move(key), {row}});
        } else {
            out.groups[it->second].rows.push_back(row);
        }
    }
    return out;
}

Table pivot_items(const Table& t, const std::string& tx_key, const std::string& item_attr,
                  const std::vector<std::string>& carry) {
    std::size_t key_idx = t.schema.require(tx_key);
    std::size_t item_idx = t.schema.require(item_attr);
    std::vector<std::size_t> carry_idx;
    for (const auto& c : carry) carry_idx.push_back(t.schema.require(c));

    // distinct item values, sorted, become the 0/1 columns
    std::vector<std::string> items;
    for (const auto& row : t.rows) {
        if (row[item_idx].is_null()) continue;
        std::string s = row[item_idx].to_string();
        if (std::find(items.begin(), items.end(), s) == items.end()) items.push_back(s);
    }
    std::sort(items.begin(), items.end());

    std::vector<AttrDef> defs;
    defs.push_back(t.schema.at(key_idx));
    for (const auto& item : items) defs.push_back({item, ValueType::Integer});
    for (std::size_t i : carry_idx) defs.push_back(t.schema.at(i));

    struct Acc {
        Row key_and_flags;
        Row carry_vals;
    };
    std::vector<Acc> accs;
    auto find_acc = [&](const Value& key) -> Acc* {
        for (auto& a : accs)
            if (a.key_and_flags[0].identical(key)) return &a;
        return nullptr;
    };

    for (const auto& row : t.rows) {
        Acc* acc = find_acc(row[key_idx]);
        if (!acc) {
            Acc a;
            a.key_and_flags.push_back(row[key_idx]);
            for (std::size_t i = 0; i < items.size(); ++i)
                a.key_and_flags.push_back(Value::integer(0));
            for (std::size_t i : carry_idx) a.carry_vals.push_back(row[i]);
            accs.push_back(std::move(a));
            acc = &accs.back();
        } else {
            for (std::size_t c = 0; c < carry_idx.size(); ++c) {
                const Value& seen = acc->carry_vals[c];
                const Value& now = row[carry_idx[c]];
                if (Value::total_order(seen, now) != 0)
                    fail(ErrorKind::Pivot, "carry attribute '" + t.schema.at(carry_idx[c]).name +
                                               "' is not constant within key '" +
                                               row[key_idx].to_string() + "'");
            }
        }
        if (!row[item_idx].is_null()) {
            std::string s = row[item_idx].to_string();
            auto it = std::lower_bound(items.begin(), items.end(), s);
            acc->key_and_flags[1 + static_cast<std::size_t>(it - items.begin())] = Value::integer(1);
        }
    }

    Table out;
    out.schema = Schema(std::move(defs));
    for (auto& a : accs) {
        Row r = std::move(a.key_and_flags);
        for (auto& v : a.carry_vals) r.push_back(std::move(v));
        out.rows.push_back(std::move(r));
    }
    return out;
}

bool Table::operator==(const Table& o) const {
    if (!(schema == o.schema) || rows.size() != o.rows.size()) return false;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != o.rows[i].size()) return false;
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            if (Value::total_order(rows[i][j], o.rows[i][j]) != 0) return false;
    }
    return true;
}

bool GroupedTable::operator==(const GroupedTable& o) const {
    if (!(key_schema == o.key_schema) || !(row_schema == o.row_schema) ||
        groups.size() != o.groups.size())
        return false;
    auto rows_equal = [](const std::vector<Row>& a, const std::vector<Row>& b) {
        if (a.size() != b.size()) return false;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i].size() != b[i].size()) return false;
            for (std::size_t j = 0; j < a[i].size(); ++j)
                if (Value::total_order(a[i][j], b[i][j]) != 0) return false;
        }
        return true;
    };
    for (std::size_t g = 0; g < groups.size(); ++g) {
        if (groups[g].key.size() != o.groups[g].key.size()) return false;
        for (std::size_t j = 0; j < groups[g].key.size(); ++j)
            if (Value::total_order(groups[g].key[j], o.groups[g].key[j]) != 0) return false;
        if (!rows_equal(groups[g].rows, o.groups[g].rows)) return false;
    }
    return true;
}

} // namespace idb

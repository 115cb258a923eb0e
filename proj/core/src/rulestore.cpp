#include "idb/rulestore.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

namespace idb {

const char* dialect_name(Dialect d) {
    switch (d) {
        case Dialect::Msql: return "msql";
        case Dialect::Dmql: return "dmql";
        case Dialect::MineRule: return "minerule";
        case Dialect::MineSql: return "minesql";
    }
    return "?";
}

RuleStyle RuleStyle::defaults(Dialect d) {
    RuleStyle s;
    s.dialect = d;
    switch (d) {
        case Dialect::Msql:
            s.display_semantics = SupportSemantics::BodySupport;
            s.display_basis = Basis::Absolute;
            break;
        case Dialect::Dmql:
        case Dialect::MineRule:
            s.display_semantics = SupportSemantics::RuleSupport;
            s.display_basis = Basis::Relative;
            break;
        case Dialect::MineSql:
            s.display_semantics = SupportSemantics::BodySupport;
            s.display_basis = Basis::Relative;
            break;
    }
    return s;
}

namespace {

std::string interval_comma_form(const Concept& c) {
    // "[500,599]" / "[MIN,499]" — the discretized-consequent print form
    if (!c.coverage.is_interval) return c.key;
    std::string lo = c.coverage.lo_unbounded ? "MIN" : std::to_string(c.coverage.lo);
    std::string hi = c.coverage.hi_unbounded ? "MAX" : std::to_string(c.coverage.hi);
    return "[" + lo + "," + hi + "]";
}

std::string msql_descriptor(const Descriptor& d) {
    if (d.is_concept()) return to_lower(d.attr) + "=" + interval_comma_form(d.concept_value());
    if (d.value().is_text()) return d.value().as_text() + "=1";
    return to_lower(d.attr) + "=" + d.value().to_string();
}

std::string surface_name(const RuleStyle& style, const Descriptor& d) {
    auto it = style.surface.find(d.attr);
    if (it != style.surface.end()) return it->second;
    return to_lower(d.attr);
}

std::string minesql_descriptor(const RuleStyle& style, const Descriptor& d) {
    std::string attr = surface_name(style, d);
    if (d.is_concept()) {
        const Concept& c = d.concept_value();
        if (c.code) return attr + "=" + std::to_string(*c.code);
        return attr + "=" + c.key;
    }
    if (d.value().is_text()) return attr + "='" + d.value().as_text() + "'";
    return attr + "=" + d.value().to_string();
}

std::string minerule_item_list(const DescriptorSet& ds) {
    std::string out = "{";
    for (std::size_t i = 0; i < ds.size(); ++i) {
        if (i) out += ",";
        out += ds[i].is_concept() ? ds[i].concept_value().label : ds[i].value().to_string();
    }
    return out + "}";
}

std::string minerule_descriptor(const RuleStyle& style, const Descriptor& d) {
    std::string attr = surface_name(style, d);
    if (d.is_concept()) return attr + "=" + d.concept_value().label;
    return attr + "=" + d.value().to_string();
}

std::string dmql_descriptor(const Descriptor& d) {
    std::string v = d.is_concept() ? interval_comma_form(d.concept_value())
                                   : (d.value().is_text() ? "'" + d.value().as_text() + "'"
                                                          : d.value().to_string());
    return to_lower(d.attr) + "(X," + v + ")";
}

std::string join_set(const DescriptorSet& ds, const std::string& sep,
                     const std::function<std::string(const Descriptor&)>& one) {
    std::string out;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        if (i) out += sep;
        out += one(ds[i]);
    }
    return out;
}

} // namespace

std::string render_rule(const Rule& r, const RuleStyle& style, RuleFormat format) {
    switch (format) {
        case RuleFormat::Canonical:
            return descriptor_set_text(r.body) + " -> " + descriptor_set_text(r.head);
        case RuleFormat::Msql: {
            std::string body = join_set(r.body, "^", msql_descriptor);
            std::string head = join_set(r.head, "^", msql_descriptor);
            Rational supp = r.support(style.display_semantics, style.display_basis);
            return body + " → " + head + " (supp " + supp.to_decimal() + ", conf " +
                   r.confidence().to_decimal() + ")";
        }
        case RuleFormat::Dmql: {
            std::string body = join_set(r.body, " & ", dmql_descriptor);
            std::string head = join_set(r.head, " & ", dmql_descriptor);
            return body + " -> " + head;
        }
        case RuleFormat::MineRule: {
            std::string head =
                join_set(r.head, ", ", [&](const Descriptor& d) { return minerule_descriptor(style, d); });
            return minerule_item_list(r.body) + " → " + head;
        }
        case RuleFormat::MineSql: {
            std::string body =
                join_set(r.body, " & ", [&](const Descriptor& d) { return minesql_descriptor(style, d); });
            std::string head =
                join_set(r.head, " & ", [&](const Descriptor& d) { return minesql_descriptor(style, d); });
            return body + "→" + head;
        }
    }
    return "";
}

std::string render_rule(const Rule& r, const RuleStyle& style) {
    switch (style.dialect) {
        case Dialect::Msql: return render_rule(r, style, RuleFormat::Msql);
        case Dialect::Dmql: return render_rule(r, style, RuleFormat::Dmql);
        case Dialect::MineRule: return render_rule(r, style, RuleFormat::MineRule);
        case Dialect::MineSql: return render_rule(r, style, RuleFormat::MineSql);
    }
    return render_rule(r, style, RuleFormat::Canonical);
}

Table RuleTable::as_table() const {
    Table t;
    t.schema = Schema({{"body", ValueType::Text},
                       {"head", ValueType::Text},
                       {"body_count", ValueType::Integer},
                       {"rule_count", ValueType::Integer},
                       {"group_count", ValueType::Integer},
                       {"support", ValueType::Real},
                       {"confidence", ValueType::Real}});
    for (const auto& r : rules) {
        Row row;
        row.push_back(Value::text(descriptor_set_text(r.body)));
        row.push_back(Value::text(descriptor_set_text(r.head)));
        row.push_back(Value::integer(r.body_count));
        row.push_back(Value::integer(r.rule_count));
        row.push_back(Value::integer(r.group_count));
        row.push_back(Value::real(r.support(style.display_semantics, style.display_basis).to_double()));
        row.push_back(Value::real(r.confidence().to_double()));
        t.rows.push_back(std::move(row));
    }
    return t;
}

std::variant<DescriptorSet, Rational> rule_metric(const Rule& r, const RuleMetricQuery& q) {
    switch (q.kind) {
        case RuleMetricKind::Body: return r.body;
        case RuleMetricKind::Head: return r.head;
        case RuleMetricKind::Support: return r.support(q.semantics, q.basis);
        case RuleMetricKind::Confidence: return r.confidence();
    }
    return Rational();
}

void export_rules_csv(const RuleTable& rt, std::ostream& out) {
    out << "body,head,body_count,rule_count,group_count,confidence\n";
    for (const auto& r : rt.rules) {
        out << descriptor_set_text(r.body) << ',' << descriptor_set_text(r.head) << ','
            << r.body_count << ',' << r.rule_count << ',' << r.group_count << ','
            << r.confidence().to_decimal() << '\n';
    }
}

namespace {

std::string descriptor_value_text(const Descriptor& d) {
    if (d.is_concept()) return d.concept_value().key;
    if (d.value().is_text()) return "'" + d.value().as_text() + "'";
    return d.value().to_string();
}

} // namespace

NormalizedExport export_normalized(const RuleTable& rt) {
    if (rt.rules.empty()) fail(ErrorKind::Plan, "export_normalized requires a nonempty rule table");
    NormalizedExport ex;
    ex.bodies.schema = Schema(
        {{"id_b", ValueType::Integer}, {"attribute", ValueType::Text}, {"value", ValueType::Text}});
    ex.heads.schema = Schema(
        {{"id_h", ValueType::Integer}, {"attribute", ValueType::Text}, {"value", ValueType::Text}});
    ex.rules.schema = Schema({{"id_r", ValueType::Integer},
                              {"id_b", ValueType::Integer},
                              {"id_h", ValueType::Integer},
                              {"support", ValueType::Real},
                              {"confidence", ValueType::Real},
                              {"group_count", ValueType::Integer},
                              {"body_count", ValueType::Integer},
                              {"rule_count", ValueType::Integer}});

    // shared ids for identical bodies/heads; independent id spaces
    std::vector<DescriptorSet> bodies, heads;
    auto id_for = [](std::vector<DescriptorSet>& seen, const DescriptorSet& ds) {
        for (std::size_t i = 0; i < seen.size(); ++i)
            if (descriptor_set_compare(seen[i], ds) == 0) return static_cast<std::int64_t>(i) + 1;
        seen.push_back(ds);
        return static_cast<std::int64_t>(seen.size());
    };

    std::int64_t id_r = 0;
    for (const auto& r : rt.rules) {
        std::int64_t id_b = id_for(bodies, r.body);
        std::int64_t id_h = id_for(heads, r.head);
        Row row;
        row.push_back(Value::integer(++id_r));
        row.push_back(Value::integer(id_b));
        row.push_back(Value::integer(id_h));
        row.push_back(
            Value::real(r.support(rt.style.display_semantics, rt.style.display_basis).to_double()));
        row.push_back(Value::real(r.confidence().to_double()));
        row.push_back(Value::integer(r.group_count));
        row.push_back(Value::integer(r.body_count));
        row.push_back(Value::integer(r.rule_count));
        ex.rules.rows.push_back(std::move(row));
    }
    for (std::size_t i = 0; i < bodies.size(); ++i)
        for (const auto& d : bodies[i])
            ex.bodies.rows.push_back({Value::integer(static_cast<std::int64_t>(i) + 1),
                                      Value::text(to_lower(d.attr)),
                                      Value::text(descriptor_value_text(d))});
    for (std::size_t i = 0; i < heads.size(); ++i)
        for (const auto& d : heads[i])
            ex.heads.rows.push_back({Value::integer(static_cast<std::int64_t>(i) + 1),
                                     Value::text(to_lower(d.attr)),
                                     Value::text(descriptor_value_text(d))});
    return ex;
}

void export_normalized_files(const RuleTable& rt, const std::string& base_path) {
    NormalizedExport ex = export_normalized(rt);
    write_csv_file(ex.rules, base_path + ".rules");
    write_csv_file(ex.bodies, base_path + ".bodies");
    write_csv_file(ex.heads, base_path + ".heads");
}

namespace {

Descriptor parse_descriptor_text(const std::string& attr, const std::string& value) {
    Descriptor d;
    d.attr = attr;
    if (!value.empty() && value.front() == '\'' && value.back() == '\'' && value.size() >= 2) {
        d.val = Value::text(value.substr(1, value.size() - 2));
        return d;
    }
    if (!value.empty() && (value.front() == '[' || value.front() == '{')) {
        Concept c;
        if (value.front() == '[') {
            auto dots = value.find("..");
            std::string lo = value.substr(1, dots - 1);
            std::string hi = value.substr(dots + 2, value.size() - dots - 3);
            c.coverage = Coverage::interval(
                lo == "MIN" ? std::nullopt : std::optional<std::int64_t>(std::stoll(lo)),
                hi == "MAX" ? std::nullopt : std::optional<std::int64_t>(std::stoll(hi)));
        } else {
            std::vector<Value> vals;
            std::istringstream vs(value.substr(1, value.size() - 2));
            std::string item;
            while (std::getline(vs, item, ',')) vals.push_back(Value::text(item));
            c.coverage = Coverage::value_set(std::move(vals));
        }
        c.key = c.coverage.canonical();
        c.label = c.key;
        d.val = std::move(c);
        return d;
    }
    char* end = nullptr;
    long long iv = std::strtoll(value.c_str(), &end, 10);
    if (end == value.c_str() + value.size() && !value.empty()) {
        d.val = Value::integer(iv);
        return d;
    }
    d.val = Value::text(value);
    return d;
}

} // namespace

std::vector<Rule> reconstruct_normalized(const NormalizedExport& ex) {
    auto collect = [](const Table& t) {
        std::map<std::int64_t, std::vector<Descriptor>> by_id;
        for (const auto& row : t.rows)
            by_id[row[0].as_integer()].push_back(
                parse_descriptor_text(row[1].as_text(), row[2].as_text()));
        return by_id;
    };
    auto bodies = collect(ex.bodies);
    auto heads = collect(ex.heads);
    std::vector<Rule> out;
    for (const auto& row : ex.rules.rows) {
        Rule r;
        auto b = bodies.find(row[1].as_integer());
        auto h = heads.find(row[2].as_integer());
        if (b == bodies.end() || h == heads.end())
            fail(ErrorKind::Plan, "normalized export is missing a body/head id");
        r.body = make_descriptor_set(b->second);
        r.head = make_descriptor_set(h->second);
        r.group_count = row[5].as_integer();
        r.body_count = row[6].as_integer();
        r.rule_count = row[7].as_integer();
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace idb

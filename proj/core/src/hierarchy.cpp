#include "idb/hierarchy.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace idb {

Coverage Coverage::interval(std::optional<std::int64_t> lo, std::optional<std::int64_t> hi) {
    Coverage c;
    c.is_interval = true;
    c.lo_unbounded = !lo.has_value();
    c.hi_unbounded = !hi.has_value();
    c.lo = lo.value_or(0);
    c.hi = hi.value_or(0);
    if (!c.lo_unbounded && !c.hi_unbounded && c.lo > c.hi)
        fail(ErrorKind::Definition, "interval bounds must satisfy lo <= hi");
    return c;
}

Coverage Coverage::value_set(std::vector<Value> values) {
    if (values.empty()) fail(ErrorKind::Definition, "value-set coverage must not be empty");
    Coverage c;
    c.is_interval = false;
    c.values = std::move(values);
    std::sort(c.values.begin(), c.values.end(),
              [](const Value& a, const Value& b) { return Value::total_order(a, b) < 0; });
    return c;
}

bool Coverage::contains(const Value& v) const {
    if (v.is_null()) return false;
    if (is_interval) {
        if (!v.is_numeric()) return false;
        double x = v.numeric();
        if (!lo_unbounded && x < static_cast<double>(lo)) return false;
        if (!hi_unbounded && x > static_cast<double>(hi)) return false;
        return true;
    }
    for (const auto& w : values)
        if (w.equals(v)) return true;
    return false;
}

bool Coverage::overlaps(const Coverage& o) const {
    if (is_interval && o.is_interval) {
        bool left_ok = hi_unbounded || o.lo_unbounded || o.lo <= hi;
        bool right_ok = lo_unbounded || o.hi_unbounded || lo <= o.hi;
        return left_ok && right_ok;
    }
    if (!is_interval && !o.is_interval) {
        for (const auto& v : values)
            if (o.contains(v)) return true;
        return false;
    }
    const Coverage& set = is_interval ? o : *this;
    const Coverage& iv = is_interval ? *this : o;
    for (const auto& v : set.values)
        if (iv.contains(v)) return true;
    return false;
}

std::string Coverage::canonical() const {
    std::ostringstream out;
    if (is_interval) {
        out << '[';
        if (lo_unbounded) out << "MIN";
        else out << lo;
        out << "..";
        if (hi_unbounded) out << "MAX";
        else out << hi;
        out << ']';
    } else {
        out << '{';
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i) out << ',';
            out << values[i].to_string();
        }
        out << '}';
    }
    return out.str();
}

bool Coverage::operator==(const Coverage& o) const {
    return canonical() == o.canonical();
}

std::vector<const HierarchyNode*> ConceptHierarchy::leaves() const {
    std::vector<const HierarchyNode*> out;
    for (const auto& n : nodes_)
        if (n.is_leaf && n.level > 0) out.push_back(&n);
    return out;
}

std::optional<std::size_t> ConceptHierarchy::covering_leaf(const Value& v) const {
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        if (nodes_[i].is_leaf && nodes_[i].level > 0 && nodes_[i].coverage.contains(v)) return i;
    return std::nullopt;
}

Value ConceptHierarchy::encode_value(const Value& v) const {
    auto leaf = covering_leaf(v);
    if (!leaf) {
        if (default_code_) return Value::integer(*default_code_);
        fail(ErrorKind::Encoding,
             "hierarchy '" + name_ + "': no concept covers value '" + v.to_string() + "'");
    }
    const HierarchyNode& n = nodes_[*leaf];
    if (n.code) return Value::integer(*n.code);
    return Value::text(n.label);
}

Value ConceptHierarchy::generalize_value(const Value& v, int level) const {
    if (level < 0 || level >= depth_)
        fail(ErrorKind::Encoding, "hierarchy '" + name_ + "': level " + std::to_string(level) +
                                      " out of range (depth " + std::to_string(depth_) + ")");
    auto leaf = covering_leaf(v);
    if (!leaf) {
        if (default_code_) return Value::integer(*default_code_);
        fail(ErrorKind::Encoding,
             "hierarchy '" + name_ + "': no concept covers value '" + v.to_string() + "'");
    }
    std::size_t idx = *leaf;
    while (nodes_[idx].level > level) idx = static_cast<std::size_t>(nodes_[idx].parent);
    const HierarchyNode& n = nodes_[idx];
    if (n.level == 0) return Value::text("ANY");
    if (n.code && n.label.empty()) return Value::integer(*n.code);
    return Value::text(n.label);
}

std::string ConceptHierarchy::to_text() const {
    std::ostringstream out;
    for (const auto& n : nodes_) {
        if (!n.is_leaf || n.level == 0) continue;
        out << n.level << '\t' << n.label << '\t';
        if (n.coverage.is_interval) {
            out << (n.coverage.lo_unbounded ? "MIN" : std::to_string(n.coverage.lo)) << '\t'
                << (n.coverage.hi_unbounded ? "MAX" : std::to_string(n.coverage.hi));
        } else {
            out << n.coverage.canonical() << '\t' << "-";
        }
        out << '\n';
    }
    if (default_code_) out << "default\t" << *default_code_ << "\t-\t-\n";
    return out.str();
}

ConceptHierarchy ConceptHierarchy::from_text(const std::string& name, const std::string& attribute,
                                             const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<LevelDef> defs;
    std::optional<std::int64_t> default_code;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string a, b, c, d;
        std::getline(ls, a, '\t');
        std::getline(ls, b, '\t');
        std::getline(ls, c, '\t');
        std::getline(ls, d, '\t');
        if (a == "default") {
            default_code = std::stoll(b);
            continue;
        }
        LevelDef def;
        def.level = std::stoi(a);
        def.label = b;
        if (!c.empty() && c[0] == '{') {
            std::vector<Value> vals;
            std::string inner = c.substr(1, c.size() - 2);
            std::istringstream vs(inner);
            std::string item;
            while (std::getline(vs, item, ',')) vals.push_back(Value::text(item));
            def.coverage = Coverage::value_set(std::move(vals));
        } else {
            std::optional<std::int64_t> lo, hi;
            if (c != "MIN") lo = std::stoll(c);
            if (d != "MAX") hi = std::stoll(d);
            def.coverage = Coverage::interval(lo, hi);
        }
        char* end = nullptr;
        long long code = std::strtoll(b.c_str(), &end, 10);
        if (end == b.c_str() + b.size() && !b.empty()) def.code = code;
        defs.push_back(std::move(def));
    }
    auto h = define_hierarchy(name, attribute, defs);
    // re-attach default (define_hierarchy has no default slot in the text path)
    ConceptHierarchy out = h;
    out.default_code_ = default_code;
    return out;
}

ConceptHierarchy define_encoding(const std::string& name, const std::string& attribute,
                                 const std::vector<EncodingRange>& ranges,
                                 std::optional<std::int64_t> default_code) {
    if (ranges.empty()) fail(ErrorKind::Definition, "encoding '" + name + "' has no ranges");
    ConceptHierarchy h;
    h.name_ = name;
    h.attribute_ = attribute;
    h.depth_ = 2;
    HierarchyNode root;
    root.level = 0;
    root.label = "ANY";
    root.coverage = Coverage::interval(std::nullopt, std::nullopt);
    root.parent = 0;
    root.is_leaf = false;
    h.nodes_.push_back(root);

    std::vector<std::int64_t> codes;
    for (const auto& r : ranges) {
        if (std::find(codes.begin(), codes.end(), r.code) != codes.end())
            fail(ErrorKind::Definition,
                 "encoding '" + name + "': duplicate code " + std::to_string(r.code));
        codes.push_back(r.code);
        HierarchyNode n;
        n.level = 1;
        n.coverage = Coverage::interval(r.lo, r.hi);
        n.label = n.coverage.canonical();
        n.code = r.code;
        n.parent = 0;
        n.is_leaf = true;
        for (const auto& prev : h.nodes_) {
            if (prev.level != 1) continue;
            if (prev.coverage.overlaps(n.coverage))
                fail(ErrorKind::Definition, "encoding '" + name + "': ranges " +
                                                prev.coverage.canonical() + " and " +
                                                n.coverage.canonical() + " overlap");
        }
        h.nodes_.push_back(std::move(n));
    }
    if (default_code &&
        std::find(codes.begin(), codes.end(), *default_code) != codes.end())
        fail(ErrorKind::Definition, "encoding '" + name + "': default code " +
                                        std::to_string(*default_code) + " collides with a range code");
    h.default_code_ = default_code;
    return h;
}

ConceptHierarchy define_hierarchy(const std::string& name, const std::string& attribute,
                                  const std::vector<LevelDef>& levels) {
    if (levels.empty()) fail(ErrorKind::Definition, "hierarchy '" + name + "' has no levels");
    ConceptHierarchy h;
    h.name_ = name;
    h.attribute_ = attribute;
    HierarchyNode root;
    root.level = 0;
    root.label = "ANY";
    root.coverage = Coverage::interval(std::nullopt, std::nullopt);
    root.parent = 0;
    root.is_leaf = false;
    h.nodes_.push_back(root);

    int max_level = 0;
    for (const auto& def : levels) max_level = std::max(max_level, def.level);
    h.depth_ = max_level + 1;

    // insert level by level so parents exist before children
    for (int lvl = 1; lvl <= max_level; ++lvl) {
        for (const auto& def : levels) {
            if (def.level != lvl) continue;
            HierarchyNode n;
            n.level = lvl;
            n.coverage = def.coverage;
            n.label = def.label.value_or(def.coverage.canonical());
            n.code = def.code;
            n.is_leaf = true;
            // find parent at previous level
            int parent = -1;
            if (lvl == 1) {
                if (!ci_equal(def.parent_label, "ANY") && !ci_equal(def.parent_label, "ALL"))
                    fail(ErrorKind::Definition, "hierarchy '" + name + "': level-1 node '" + n.label +
                                                    "' must attach to the root (ANY/ALL), got '" +
                                                    def.parent_label + "'");
                parent = 0;
            } else {
                for (std::size_t i = 0; i < h.nodes_.size(); ++i) {
                    if (h.nodes_[i].level == lvl - 1 && ci_equal(h.nodes_[i].label, def.parent_label)) {
                        parent = static_cast<int>(i);
                        break;
                    }
                }
                if (parent < 0)
                    fail(ErrorKind::Definition, "hierarchy '" + name + "': node '" + n.label +
                                                    "' references missing parent '" + def.parent_label +
                                                    "' at level " + std::to_string(lvl - 1));
            }
            n.parent = parent;
            h.nodes_[static_cast<std::size_t>(parent)].is_leaf = false;
            for (const auto& prev : h.nodes_) {
                if (prev.level != lvl) continue;
                if (prev.coverage.overlaps(n.coverage))
                    fail(ErrorKind::Definition, "hierarchy '" + name + "': sibling coverages " +
                                                    prev.coverage.canonical() + " and " +
                                                    n.coverage.canonical() + " overlap");
                if (ci_equal(prev.label, n.label))
                    fail(ErrorKind::Definition,
                         "hierarchy '" + name + "': duplicate node label '" + n.label + "'");
            }
            h.nodes_.push_back(std::move(n));
        }
    }

    bool any_leaf = false;
    for (const auto& n : h.nodes_)
        if (n.is_leaf && n.level > 0) any_leaf = true;
    if (!any_leaf) fail(ErrorKind::Definition, "hierarchy '" + name + "' has no leaves");
    return h;
}

} // namespace idb

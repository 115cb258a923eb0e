#include "idb/descriptor.hpp"

#include <algorithm>
#include <sstream>

namespace idb {

bool Concept::matches(const Value& raw) const {
    if (complement_of) {
        if (raw.is_null()) return true; // default also absorbs Null (encode(Null) -> default)
        for (const auto& cov : *complement_of)
            if (cov.contains(raw)) return false;
        return true;
    }
    return coverage.contains(raw);
}

bool Descriptor::matches_raw(const Value& raw) const {
    if (is_concept()) return concept_value().matches(raw);
    return value().equals(raw);
}

int Descriptor::compare(const Descriptor& a, const Descriptor& b) {
    if (!ci_equal(a.attr, b.attr)) return ci_less_than(a.attr, b.attr) ? -1 : 1;
    if (a.is_concept() != b.is_concept()) return a.is_concept() ? 1 : -1;
    if (a.is_concept()) {
        int c = a.concept_value().key.compare(b.concept_value().key);
        return c < 0 ? -1 : c > 0 ? 1 : 0;
    }
    return Value::total_order(a.value(), b.value());
}

std::string Descriptor::to_text() const {
    std::ostringstream out;
    out << to_lower(attr) << '=';
    if (is_concept()) {
        out << concept_value().key;
    } else if (value().is_text()) {
        out << '\'' << value().as_text() << '\'';
    } else {
        out << value().to_string();
    }
    return out.str();
}

DescriptorSet make_descriptor_set(std::vector<Descriptor> ds) {
    std::sort(ds.begin(), ds.end());
    ds.erase(std::unique(ds.begin(), ds.end(),
                         [](const Descriptor& a, const Descriptor& b) { return a == b; }),
             ds.end());
    return ds;
}

bool descriptor_subset(const DescriptorSet& sub, const DescriptorSet& super) {
    std::size_t i = 0;
    for (const auto& d : sub) {
        while (i < super.size() && super[i] < d) ++i;
        if (i == super.size() || !(super[i] == d)) return false;
    }
    return true;
}

bool descriptor_disjoint(const DescriptorSet& a, const DescriptorSet& b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        int c = Descriptor::compare(a[i], b[j]);
        if (c == 0) return false;
        if (c < 0) ++i;
        else ++j;
    }
    return true;
}

int descriptor_set_compare(const DescriptorSet& a, const DescriptorSet& b) {
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        int c = Descriptor::compare(a[i], b[i]);
        if (c != 0) return c;
    }
    return a.size() < b.size() ? -1 : a.size() > b.size() ? 1 : 0;
}

std::string descriptor_set_text(const DescriptorSet& ds, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        if (i) out += sep;
        out += ds[i].to_text();
    }
    return out;
}

HierarchyEncoder::HierarchyEncoder(HierarchyPtr hierarchy) : hierarchy_(std::move(hierarchy)) {}

Concept HierarchyEncoder::encode(const Value& raw) const {
    auto leaf = hierarchy_->covering_leaf(raw);
    if (!leaf) {
        if (auto def = hierarchy_->default_code()) {
            auto leaf_covs = std::make_shared<std::vector<Coverage>>();
            for (const auto* l : hierarchy_->leaves()) leaf_covs->push_back(l->coverage);
            Concept c;
            c.coverage = Coverage::value_set({Value::integer(*def)});
            c.key = "<default:" + std::to_string(*def) + ">";
            c.label = std::to_string(*def);
            c.code = *def;
            c.complement_of = std::move(leaf_covs);
            return c;
        }
        fail(ErrorKind::Encoding, "hierarchy '" + hierarchy_->name() + "': no concept covers value '" +
                                      raw.to_string() + "'");
    }
    const HierarchyNode& n = hierarchy_->nodes()[*leaf];
    Concept c;
    c.coverage = n.coverage;
    c.key = n.coverage.canonical();
    c.label = n.label;
    c.code = n.code;
    return c;
}

std::string HierarchyEncoder::name() const { return hierarchy_->name(); }

TruncationEncoder::TruncationEncoder(int digits) : digits_(digits) {
    if (digits < 0 || digits > 12) fail(ErrorKind::Plan, "truncation digits out of range");
    unit_ = 1;
    for (int i = 0; i < digits; ++i) unit_ *= 10;
}

Concept TruncationEncoder::encode(const Value& raw) const {
    if (!raw.is_numeric())
        fail(ErrorKind::Encoding, "TRUNC applied to non-numeric value '" + raw.to_string() + "'");
    double x = raw.numeric();
    std::int64_t k = static_cast<std::int64_t>(x / static_cast<double>(unit_));
    if (x < 0 && static_cast<double>(k) * static_cast<double>(unit_) > x) --k; // floor
    std::int64_t lo = k * unit_;
    Concept c;
    c.coverage = Coverage::interval(lo, lo + unit_ - 1);
    c.key = c.coverage.canonical();
    c.label = std::to_string(lo);
    c.code = lo;
    return c;
}

std::string TruncationEncoder::name() const {
    return "trunc:" + std::to_string(digits_);
}

} // namespace idb

#include <algorithm>
#include <map>
#include <set>

#include "idb/miner.hpp"

// Exhaustive reference miner. Deliberately shares no enumeration or counting
// machinery with mine_associations/mine_clustered: every subset is generated
// by bitmask and every count is a direct scan.

namespace idb {

namespace {

struct RawGroup {
    std::vector<DescriptorSet> clusters; // single entry when not clustered
};

bool in_set(const DescriptorSet& ds, const Descriptor& d) {
    for (const auto& x : ds)
        if (x == d) return true;
    return false;
}

bool brute_subset(const DescriptorSet& sub, const DescriptorSet& super) {
    for (const auto& d : sub)
        if (!in_set(super, d)) return false;
    return true;
}

bool group_matches(const RawGroup& g, const DescriptorSet& set, bool clustered) {
    if (!clustered) return brute_subset(set, g.clusters[0]);
    if (g.clusters.size() < 2) return false;
    for (const auto& c : g.clusters)
        if (brute_subset(set, c)) return true;
    return false;
}

bool group_matches_rule(const RawGroup& g, const DescriptorSet& body, const DescriptorSet& head,
                        bool clustered) {
    if (!clustered) return brute_subset(body, g.clusters[0]) && brute_subset(head, g.clusters[0]);
    for (std::size_t cb = 0; cb < g.clusters.size(); ++cb)
        for (std::size_t ch = 0; ch < g.clusters.size(); ++ch)
            if (cb != ch && brute_subset(body, g.clusters[cb]) && brute_subset(head, g.clusters[ch]))
                return true;
    return false;
}

bool passes(const Threshold& t, std::int64_t count, std::int64_t group_count) {
    Rational actual = t.basis == Basis::Absolute
                          ? Rational::from_int(count)
                          : (group_count == 0 ? Rational::from_int(0) : Rational(count, group_count));
    int cmp = actual.compare(t.value);
    return t.cmp == Comparator::Greater ? cmp > 0 : cmp >= 0;
}

} // namespace

std::vector<Rule> brute_force_mine(const MinePlan& plan) {
    validate_plan(plan);
    const bool clustered = plan.cluster_keys.has_value();
    const GroupedTable& src = *plan.source;

    auto attr_in = [](const std::vector<std::string>& attrs, const std::string& a) {
        for (const auto& x : attrs)
            if (ci_equal(x, a)) return true;
        return false;
    };

    auto descriptor_for = [&](const std::string& attr, const Value& v) {
        Descriptor d;
        d.attr = to_lower(attr);
        auto it = plan.bindings.find(attr);
        if (it != plan.bindings.end()) d.val = it->second->encode(v);
        else d.val = v;
        return d;
    };

    std::vector<std::string> all_attrs = plan.body.attrs;
    for (const auto& a : plan.head.attrs)
        if (!attr_in(all_attrs, a)) all_attrs.push_back(a);

    std::optional<std::vector<std::size_t>> ckey_cols;
    if (clustered) {
        ckey_cols.emplace();
        for (const auto& k : *plan.cluster_keys) ckey_cols->push_back(src.row_schema.require(k));
    }

    std::vector<RawGroup> groups;
    std::set<Descriptor> universe_set;
    for (const auto& g : src.groups) {
        if (plan.group_filter) {
            std::int64_t n = static_cast<std::int64_t>(g.rows.size());
            int cmp = n < plan.group_filter->count ? -1 : n > plan.group_filter->count ? 1 : 0;
            if (!apply_cmp(plan.group_filter->op, cmp)) continue;
        }
        RawGroup rg;
        std::map<Row, std::size_t, bool (*)(const Row&, const Row&)> cluster_index(
            [](const Row& a, const Row& b) {
                for (std::size_t i = 0; i < a.size(); ++i) {
                    int c = Value::total_order(a[i], b[i]);
                    if (c != 0) return c < 0;
                }
                return false;
            });
        std::vector<std::int64_t> cluster_sizes;
        if (!clustered) rg.clusters.emplace_back();
        for (const auto& row : g.rows) {
            std::size_t ci = 0;
            if (clustered) {
                Row ck;
                for (std::size_t i : *ckey_cols) ck.push_back(row[i]);
                auto it = cluster_index.find(ck);
                if (it == cluster_index.end()) {
                    ci = rg.clusters.size();
                    cluster_index.emplace(std::move(ck), ci);
                    rg.clusters.emplace_back();
                    cluster_sizes.push_back(0);
                } else {
                    ci = it->second;
                }
                ++cluster_sizes[ci];
            }
            for (const auto& a : all_attrs) {
                const Value* v;
                if (auto col = src.row_schema.find(a)) v = &row[*col];
                else v = &g.key[src.key_schema.require(a)];
                if (v->is_null()) continue;
                Descriptor d = descriptor_for(a, *v);
                if (!in_set(rg.clusters[ci], d)) rg.clusters[ci].push_back(d);
                universe_set.insert(d);
            }
        }
        if (clustered && plan.cluster_filter) {
            std::vector<DescriptorSet> kept;
            for (std::size_t ci = 0; ci < rg.clusters.size(); ++ci) {
                std::int64_t n = cluster_sizes[ci];
                int cmp = n < plan.cluster_filter->count ? -1 : n > plan.cluster_filter->count ? 1 : 0;
                if (apply_cmp(plan.cluster_filter->op, cmp)) kept.push_back(std::move(rg.clusters[ci]));
            }
            rg.clusters = std::move(kept);
        }
        for (auto& c : rg.clusters) c = make_descriptor_set(std::move(c));
        groups.push_back(std::move(rg));
    }

    const std::int64_t group_count = static_cast<std::int64_t>(groups.size());
    if (group_count == 0) return {};

    std::vector<Descriptor> universe(universe_set.begin(), universe_set.end());
    if (universe.size() > 20)
        fail(ErrorKind::Oracle, "oracle guard: " + std::to_string(universe.size()) +
                                    " distinct descriptors exceed the 20-descriptor limit");

    std::vector<int> body_ids, head_ids;
    for (std::size_t i = 0; i < universe.size(); ++i) {
        if (attr_in(plan.body.attrs, universe[i].attr)) body_ids.push_back(static_cast<int>(i));
        if (attr_in(plan.head.attrs, universe[i].attr)) head_ids.push_back(static_cast<int>(i));
    }

    auto subsets_within = [&](const std::vector<int>& ids, int min_card,
                              std::optional<int> max_card) {
        std::vector<DescriptorSet> out;
        std::size_t n = ids.size();
        for (std::uint64_t mask = 1; mask < (1ull << n); ++mask) {
            int bits = __builtin_popcountll(mask);
            if (bits < min_card) continue;
            if (max_card && bits > *max_card) continue;
            DescriptorSet ds;
            for (std::size_t i = 0; i < n; ++i)
                if (mask & (1ull << i)) ds.push_back(universe[static_cast<std::size_t>(ids[i])]);
            out.push_back(make_descriptor_set(std::move(ds)));
        }
        return out;
    };

    const Threshold* support_t = nullptr;
    const Threshold* conf_t = nullptr;
    for (const auto& t : plan.thresholds) {
        if (t.metric == Metric::Support) support_t = &t;
        else conf_t = &t;
    }

    std::vector<Rule> out;
    auto bodies = subsets_within(body_ids, plan.body.min_card, plan.body.max_card);
    auto heads = subsets_within(head_ids, plan.head.min_card, plan.head.max_card);
    for (const auto& body : bodies) {
        std::int64_t body_count = 0;
        for (const auto& g : groups)
            if (group_matches(g, body, clustered)) ++body_count;
        if (body_count == 0) continue;
        for (const auto& head : heads) {
            if (!descriptor_disjoint(body, head)) continue;
            std::int64_t rule_count = 0;
            for (const auto& g : groups)
                if (group_matches_rule(g, body, head, clustered)) ++rule_count;
            if (rule_count == 0) continue;
            if (support_t) {
                std::int64_t c =
                    plan.semantics == SupportSemantics::BodySupport ? body_count : rule_count;
                if (!passes(*support_t, c, group_count)) continue;
            }
            if (conf_t) {
                Rational conf(rule_count, body_count);
                int cmp = conf.compare(conf_t->value);
                bool ok = conf_t->cmp == Comparator::Greater ? cmp > 0 : cmp >= 0;
                if (!ok) continue;
            }
            Rule r;
            r.body = body;
            r.head = head;
            r.group_count = group_count;
            r.body_count = body_count;
            r.rule_count = rule_count;
            out.push_back(std::move(r));
        }
    }
    std::sort(out.begin(), out.end(), Rule::canonical_less);
    return out;
}

} // namespace idb

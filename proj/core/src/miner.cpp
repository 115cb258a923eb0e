#include "idb/miner.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <thread>
#include <unordered_map>

namespace idb {

Rational Rule::support(SupportSemantics sem, Basis basis) const {
    std::int64_t count = sem == SupportSemantics::BodySupport ? body_count : rule_count;
    if (basis == Basis::Absolute) return Rational::from_int(count);
    if (group_count == 0) return Rational::from_int(0);
    return Rational(count, group_count);
}

bool Rule::operator==(const Rule& o) const {
    return descriptor_set_compare(body, o.body) == 0 && descriptor_set_compare(head, o.head) == 0 &&
           group_count == o.group_count && body_count == o.body_count && rule_count == o.rule_count;
}

bool Rule::canonical_less(const Rule& a, const Rule& b) {
    if (a.body.size() != b.body.size()) return a.body.size() < b.body.size();
    int c = descriptor_set_compare(a.body, b.body);
    if (c != 0) return c < 0;
    return descriptor_set_compare(a.head, b.head) < 0;
}

void validate_plan(const MinePlan& plan) {
    if (!plan.source) fail(ErrorKind::Plan, "mine plan has no source");
    auto check_schema = [&](const ComponentSchema& s, const char* side) {
        if (s.attrs.empty()) fail(ErrorKind::Plan, std::string(side) + " schema names no attributes");
        if (s.min_card < 1) fail(ErrorKind::Plan, std::string(side) + " cardinality minimum must be >= 1");
        if (s.max_card && *s.max_card < s.min_card)
            fail(ErrorKind::Plan, std::string(side) + " cardinality maximum below minimum");
        for (const auto& a : s.attrs) {
            if (!plan.source->row_schema.find(a) && !plan.source->key_schema.find(a))
                fail(ErrorKind::Plan, std::string(side) + " attribute '" + a + "' not in source");
        }
    };
    check_schema(plan.body, "body");
    check_schema(plan.head, "head");

    bool seen_support = false, seen_conf = false;
    for (const auto& t : plan.thresholds) {
        bool& seen = t.metric == Metric::Support ? seen_support : seen_conf;
        if (seen) fail(ErrorKind::Plan, "more than one threshold for the same metric");
        seen = true;
        if (t.value.num < 0) fail(ErrorKind::Plan, "threshold value must be >= 0");
        if (t.basis == Basis::Relative && t.value > Rational::from_int(1))
            fail(ErrorKind::Plan, "contradictory threshold: relative value above 1");
        if (t.metric == Metric::Confidence && t.basis == Basis::Absolute)
            fail(ErrorKind::Plan, "confidence thresholds are relative");
    }
    if (plan.cluster_keys) {
        if (plan.cluster_keys->empty()) fail(ErrorKind::Plan, "empty cluster key list");
        for (const auto& k : *plan.cluster_keys) {
            if (plan.source->key_schema.find(k))
                fail(ErrorKind::Plan, "cluster key '" + k + "' is already a group key");
            plan.source->row_schema.require(k);
        }
    }
}

namespace {

bool count_pred_passes(const GroupCountPredicate& p, std::int64_t n) {
    int cmp = n < p.count ? -1 : n > p.count ? 1 : 0;
    return apply_cmp(p.op, cmp);
}

bool threshold_passes(const Threshold& t, std::int64_t count, std::int64_t group_count) {
    Rational actual = t.basis == Basis::Absolute
                          ? Rational::from_int(count)
                          : (group_count == 0 ? Rational::from_int(0) : Rational(count, group_count));
    int cmp = actual.compare(t.value);
    return t.cmp == Comparator::Greater ? cmp > 0 : cmp >= 0;
}

// smallest integer n >= 1 such that the threshold accepts n
std::int64_t min_passing_count(const Threshold& t, std::int64_t group_count) {
    __int128 num = t.value.num, den = t.value.den;
    if (t.basis == Basis::Relative) num *= group_count;
    __int128 q = num / den;
    __int128 r = num % den;
    std::int64_t n;
    if (t.cmp == Comparator::Greater) {
        n = static_cast<std::int64_t>(q) + 1; // smallest integer strictly above num/den
    } else {
        n = static_cast<std::int64_t>(q) + (r != 0 ? 1 : 0);
    }
    return std::max<std::int64_t>(n, 1);
}

struct Extraction {
    std::vector<Descriptor> universe;            // canonical order; index = id
    std::vector<std::vector<int>> group_ids;     // plain matching: per group, sorted unique
    std::vector<std::vector<std::vector<int>>> cluster_ids; // clustered: per group, per cluster
};

const Value& cell_of(const GroupedTable& data, std::size_t g, std::size_t row, std::size_t col) {
    return data.groups[g].rows[row][col];
}

Descriptor make_descriptor(const std::string& attr, const Value& v, const Bindings& bindings) {
    Descriptor d;
    d.attr = to_lower(attr);
    auto it = bindings.find(attr);
    if (it != bindings.end()) {
        d.val = it->second->encode(v);
    } else {
        d.val = v;
    }
    return d;
}

// Collect the descriptor universe over the given attributes and the 0-based
// descriptor ids of every group (or cluster). Null cells contribute nothing.
Extraction extract(const GroupedTable& data, const std::vector<std::string>& attrs,
                   const Bindings& bindings,
                   const std::optional<std::vector<std::string>>& cluster_keys,
                   const std::vector<std::size_t>& group_subset) {
    struct Col {
        std::size_t idx;
        bool from_key;
    };
    std::vector<Col> cols;
    std::vector<std::string> names;
    for (const auto& a : attrs) {
        if (auto i = data.row_schema.find(a)) {
            cols.push_back({*i, false});
        } else {
            cols.push_back({data.key_schema.require(a), true});
        }
        names.push_back(a);
    }

    std::map<Descriptor, int> ids;
    auto id_of = [&](Descriptor d) {
        auto it = ids.find(d);
        if (it != ids.end()) return it->second;
        int id = static_cast<int>(ids.size());
        ids.emplace(std::move(d), id);
        return id;
    };

    Extraction ex;
    auto descriptor_of_cell = [&](std::size_t g, std::size_t r, std::size_t c,
                                  std::optional<int>& out) {
        const Value& v = cols[c].from_key ? data.groups[g].key[cols[c].idx]
                                          : cell_of(data, g, r, cols[c].idx);
        if (v.is_null()) {
            out.reset();
            return;
        }
        try {
            out = id_of(make_descriptor(names[c], v, bindings));
        } catch (const Error& e) {
            std::string key;
            for (std::size_t i = 0; i < data.groups[g].key.size(); ++i) {
                if (i) key += ",";
                key += data.groups[g].key[i].to_string();
            }
            throw Error(e.kind, std::string(e.what()) + " (group " + key + ")", e.span);
        }
    };

    if (!cluster_keys) {
        ex.group_ids.resize(group_subset.size());
        for (std::size_t gi = 0; gi < group_subset.size(); ++gi) {
            std::size_t g = group_subset[gi];
            std::vector<int>& dst = ex.group_ids[gi];
            for (std::size_t r = 0; r < data.groups[g].rows.size(); ++r) {
                for (std::size_t c = 0; c < cols.size(); ++c) {
                    std::optional<int> id;
                    descriptor_of_cell(g, r, c, id);
                    if (id) dst.push_back(*id);
                }
            }
            std::sort(dst.begin(), dst.end());
            dst.erase(std::unique(dst.begin(), dst.end()), dst.end());
        }
    } else {
        std::vector<std::size_t> ckey_cols;
        for (const auto& k : *cluster_keys) ckey_cols.push_back(data.row_schema.require(k));
        ex.cluster_ids.resize(group_subset.size());
        for (std::size_t gi = 0; gi < group_subset.size(); ++gi) {
            std::size_t g = group_subset[gi];
            auto key_less = [](const Row& a, const Row& b) {
                for (std::size_t i = 0; i < a.size(); ++i) {
                    int c = Value::total_order(a[i], b[i]);
                    if (c != 0) return c < 0;
                }
                return false;
            };
            std::map<Row, std::size_t, decltype(key_less)> clusters(key_less);
            for (std::size_t r = 0; r < data.groups[g].rows.size(); ++r) {
                Row ck;
                for (std::size_t i : ckey_cols) ck.push_back(data.groups[g].rows[r][i]);
                auto it = clusters.find(ck);
                std::size_t ci;
                if (it == clusters.end()) {
                    ci = ex.cluster_ids[gi].size();
                    clusters.emplace(std::move(ck), ci);
                    ex.cluster_ids[gi].emplace_back();
                } else {
                    ci = it->second;
                }
                for (std::size_t c = 0; c < cols.size(); ++c) {
                    std::optional<int> id;
                    descriptor_of_cell(g, r, c, id);
                    if (id) ex.cluster_ids[gi][ci].push_back(*id);
                }
            }
            for (auto& cl : ex.cluster_ids[gi]) {
                std::sort(cl.begin(), cl.end());
                cl.erase(std::unique(cl.begin(), cl.end()), cl.end());
            }
        }
    }

    // ids were assigned in encounter order; remap to canonical descriptor order
    std::vector<int> remap(ids.size());
    ex.universe.resize(ids.size());
    int next = 0;
    for (auto& [d, id] : ids) { // std::map iterates in Descriptor order
        remap[static_cast<std::size_t>(id)] = next;
        ex.universe[static_cast<std::size_t>(next)] = d;
        ++next;
    }
    auto apply_remap = [&](std::vector<int>& v) {
        for (int& x : v) x = remap[static_cast<std::size_t>(x)];
        std::sort(v.begin(), v.end());
    };
    for (auto& v : ex.group_ids) apply_remap(v);
    for (auto& g : ex.cluster_ids)
        for (auto& v : g) apply_remap(v);
    return ex;
}

struct VecHash {
    std::size_t operator()(const std::vector<int>& v) const {
        std::size_t h = 1469598103934665603ull;
        for (int x : v) {
            h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return h;
    }
};

struct FrequentSet {
    std::vector<int> ids;
    std::int64_t count = 0;
    std::vector<int> postings; // indices into the scanned group sequence
};

// Per-scan view of one group: either a single descriptor id set, or one per
// cluster (body rules must fit within a single cluster).
struct GroupView {
    const std::vector<int>* plain = nullptr;
    const std::vector<std::vector<int>>* clusters = nullptr;
};

bool set_contains(const std::vector<int>& sorted, int id) {
    return std::binary_search(sorted.begin(), sorted.end(), id);
}

bool subset_of(const std::vector<int>& sub, const std::vector<int>& sorted_super) {
    for (int id : sub)
        if (!set_contains(sorted_super, id)) return false;
    return true;
}

void combinations(const std::vector<int>& items, std::size_t k,
                  const std::function<void(const std::vector<int>&)>& emit) {
    if (items.size() < k || k == 0) return;
    std::vector<int> cur(k);
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        for (std::size_t i = 0; i < k; ++i) cur[i] = items[idx[i]];
        emit(cur);
        std::size_t i = k;
        while (i > 0) {
            --i;
            if (idx[i] != i + items.size() - k) break;
            if (i == 0) return;
        }
        ++idx[i];
        for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

// Level-wise frequent set search restricted to `eligible` descriptor ids.
// Deterministic: candidates and results are in id-lexicographic order and the
// group scan may be partitioned across workers without changing any count.
std::vector<FrequentSet> apriori(const std::vector<GroupView>& views,
                                 const std::vector<char>& eligible, std::int64_t min_count,
                                 int min_card, std::optional<int> max_card, int workers,
                                 bool need_postings) {
    std::vector<FrequentSet> out;
    const std::size_t n_groups = views.size();

    // restrict each view to eligible ids once
    auto filter_ids = [&](const std::vector<int>& ids) {
        std::vector<int> f;
        f.reserve(ids.size());
        for (int id : ids)
            if (eligible[static_cast<std::size_t>(id)]) f.push_back(id);
        return f;
    };
    std::vector<std::vector<std::vector<int>>> gsets(n_groups); // per group: 1 or N cluster sets
    for (std::size_t g = 0; g < n_groups; ++g) {
        if (views[g].plain) {
            gsets[g].push_back(filter_ids(*views[g].plain));
        } else {
            if (views[g].clusters->size() < 2) continue; // no pair of distinct clusters
            for (const auto& cl : *views[g].clusters) gsets[g].push_back(filter_ids(cl));
        }
    }

    // L1
    std::unordered_map<int, std::int64_t> single_counts;
    for (std::size_t g = 0; g < n_groups; ++g) {
        std::set<int> present;
        for (const auto& s : gsets[g]) present.insert(s.begin(), s.end());
        for (int id : present) ++single_counts[id];
    }
    std::vector<int> frequent_items;
    for (auto& [id, c] : single_counts)
        if (c >= min_count) frequent_items.push_back(id);
    std::sort(frequent_items.begin(), frequent_items.end());

    // reduce group sets to frequent items only (supersets of infrequent items can't be frequent)
    std::vector<char> item_frequent(eligible.size(), 0);
    for (int id : frequent_items) item_frequent[static_cast<std::size_t>(id)] = 1;
    for (auto& g : gsets)
        for (auto& s : g)
            s.erase(std::remove_if(s.begin(), s.end(),
                                   [&](int id) { return !item_frequent[static_cast<std::size_t>(id)]; }),
                    s.end());

    std::vector<std::vector<int>> prev_level; // frequent sets of size k-1, lex order
    std::unordered_map<std::vector<int>, int, VecHash> prev_index;

    auto count_candidates = [&](const std::vector<std::vector<int>>& candidates, std::size_t k)
        -> std::pair<std::vector<std::int64_t>, std::vector<std::vector<int>>> {
        std::unordered_map<std::vector<int>, int, VecHash> cidx;
        cidx.reserve(candidates.size() * 2);
        for (std::size_t i = 0; i < candidates.size(); ++i)
            cidx.emplace(candidates[i], static_cast<int>(i));

        int W = std::max(1, workers);
        if (n_groups < 64) W = 1;
        std::vector<std::vector<std::int64_t>> wcounts(
            static_cast<std::size_t>(W), std::vector<std::int64_t>(candidates.size(), 0));
        std::vector<std::vector<std::vector<int>>> wpost(
            static_cast<std::size_t>(W),
            std::vector<std::vector<int>>(need_postings ? candidates.size() : 0));

        auto scan = [&](int w, std::size_t lo, std::size_t hi) {
            std::vector<int> seen; // candidate indices matched in the current group
            for (std::size_t g = lo; g < hi; ++g) {
                seen.clear();
                for (const auto& s : gsets[g]) {
                    combinations(s, k, [&](const std::vector<int>& combo) {
                        auto it = cidx.find(combo);
                        if (it != cidx.end()) seen.push_back(it->second);
                    });
                }
                std::sort(seen.begin(), seen.end());
                seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
                for (int ci : seen) {
                    ++wcounts[static_cast<std::size_t>(w)][static_cast<std::size_t>(ci)];
                    if (need_postings)
                        wpost[static_cast<std::size_t>(w)][static_cast<std::size_t>(ci)].push_back(
                            static_cast<int>(g));
                }
            }
        };

        if (W == 1) {
            scan(0, 0, n_groups);
        } else {
            std::vector<std::thread> threads;
            std::size_t chunk = (n_groups + static_cast<std::size_t>(W) - 1) / static_cast<std::size_t>(W);
            for (int w = 0; w < W; ++w) {
                std::size_t lo = static_cast<std::size_t>(w) * chunk;
                std::size_t hi = std::min(n_groups, lo + chunk);
                if (lo >= hi) break;
                threads.emplace_back(scan, w, lo, hi);
            }
            for (auto& t : threads) t.join();
        }

        std::vector<std::int64_t> counts(candidates.size(), 0);
        std::vector<std::vector<int>> postings(need_postings ? candidates.size() : 0);
        for (int w = 0; w < W; ++w) {
            for (std::size_t i = 0; i < candidates.size(); ++i) {
                counts[i] += wcounts[static_cast<std::size_t>(w)][i];
                if (need_postings)
                    postings[i].insert(postings[i].end(),
                                       wpost[static_cast<std::size_t>(w)][i].begin(),
                                       wpost[static_cast<std::size_t>(w)][i].end());
            }
        }
        return {std::move(counts), std::move(postings)};
    };

    std::size_t max_k = max_card ? static_cast<std::size_t>(*max_card) : frequent_items.size();
    for (std::size_t k = 1; k <= max_k; ++k) {
        std::vector<std::vector<int>> candidates;
        if (k == 1) {
            for (int id : frequent_items) candidates.push_back({id});
        } else {
            // join (k-1)-sets sharing a (k-2)-prefix, prune by downward closure
            for (std::size_t i = 0; i < prev_level.size(); ++i) {
                for (std::size_t j = i + 1; j < prev_level.size(); ++j) {
                    const auto& a = prev_level[i];
                    const auto& b = prev_level[j];
                    bool same_prefix = true;
                    for (std::size_t p = 0; p + 1 < a.size(); ++p)
                        if (a[p] != b[p]) {
                            same_prefix = false;
                            break;
                        }
                    if (!same_prefix) break; // lex order: later j can't share prefix either
                    std::vector<int> cand = a;
                    cand.push_back(b.back());
                    bool ok = true;
                    std::vector<int> sub(cand.size() - 1);
                    for (std::size_t drop = 0; ok && drop + 2 < cand.size(); ++drop) {
                        sub.clear();
                        for (std::size_t p = 0; p < cand.size(); ++p)
                            if (p != drop) sub.push_back(cand[p]);
                        ok = prev_index.count(sub) > 0;
                    }
                    if (ok) candidates.push_back(std::move(cand));
                }
            }
        }
        if (candidates.empty()) break;

        auto [counts, postings] = count_candidates(candidates, k);

        std::vector<std::vector<int>> level;
        prev_index.clear();
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            if (counts[i] < min_count) continue;
            prev_index.emplace(candidates[i], static_cast<int>(level.size()));
            level.push_back(candidates[i]);
            if (k >= static_cast<std::size_t>(min_card)) {
                FrequentSet fs;
                fs.ids = candidates[i];
                fs.count = counts[i];
                if (need_postings) fs.postings = std::move(postings[i]);
                out.push_back(std::move(fs));
            }
        }
        if (level.empty()) break;
        prev_level = std::move(level);
    }

    std::sort(out.begin(), out.end(), [](const FrequentSet& a, const FrequentSet& b) {
        if (a.ids.size() != b.ids.size()) return a.ids.size() < b.ids.size();
        return a.ids < b.ids;
    });
    return out;
}

std::vector<std::size_t> groups_in_scope(const MinePlan& plan) {
    std::vector<std::size_t> scope;
    for (std::size_t g = 0; g < plan.source->groups.size(); ++g) {
        if (plan.group_filter &&
            !count_pred_passes(*plan.group_filter,
                               static_cast<std::int64_t>(plan.source->groups[g].rows.size())))
            continue;
        scope.push_back(g);
    }
    return scope;
}

std::vector<char> eligibility(const std::vector<Descriptor>& universe,
                              const std::vector<std::string>& attrs) {
    std::vector<char> ok(universe.size(), 0);
    for (std::size_t i = 0; i < universe.size(); ++i)
        for (const auto& a : attrs)
            if (ci_equal(universe[i].attr, a)) ok[i] = 1;
    return ok;
}

DescriptorSet ids_to_set(const std::vector<int>& ids, const std::vector<Descriptor>& universe) {
    DescriptorSet ds;
    ds.reserve(ids.size());
    for (int id : ids) ds.push_back(universe[static_cast<std::size_t>(id)]);
    return ds;
}

bool ids_disjoint(const std::vector<int>& a, const std::vector<int>& b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return false;
        if (a[i] < b[j]) ++i;
        else ++j;
    }
    return true;
}

std::vector<Rule> mine_impl(const MinePlan& plan, const MineOptions& options, bool clustered) {
    validate_plan(plan);
    if (clustered && !plan.cluster_keys) fail(ErrorKind::Plan, "mine_clustered requires cluster keys");

    auto scope = groups_in_scope(plan);
    const std::int64_t group_count = static_cast<std::int64_t>(scope.size());
    if (group_count == 0) return {};

    // one extraction over body+head attributes so ids are comparable
    std::vector<std::string> all_attrs = plan.body.attrs;
    for (const auto& a : plan.head.attrs) {
        bool dup = false;
        for (const auto& b : all_attrs) dup = dup || ci_equal(a, b);
        if (!dup) all_attrs.push_back(a);
    }
    Extraction ex = extract(*plan.source, all_attrs, plan.bindings,
                            clustered ? plan.cluster_keys : std::nullopt, scope);

    // cluster HAVING: drop clusters below the row-count predicate
    if (clustered && plan.cluster_filter) {
        // recompute cluster row counts: re-partition rows to know sizes
        // (extraction kept only descriptor ids; sizes equal row counts per cluster)
        // simpler: re-extract with filter applied at row level is overkill; drop by id-set size
        // is wrong, so partition row counts here.
        std::vector<std::size_t> ckey_cols;
        for (const auto& k : *plan.cluster_keys) ckey_cols.push_back(plan.source->row_schema.require(k));
        for (std::size_t gi = 0; gi < scope.size(); ++gi) {
            std::size_t g = scope[gi];
            auto key_less = [](const Row& a, const Row& b) {
                for (std::size_t i = 0; i < a.size(); ++i) {
                    int c = Value::total_order(a[i], b[i]);
                    if (c != 0) return c < 0;
                }
                return false;
            };
            std::map<Row, std::int64_t, decltype(key_less)> sizes(key_less);
            std::vector<Row> order;
            for (const auto& row : plan.source->groups[g].rows) {
                Row ck;
                for (std::size_t i : ckey_cols) ck.push_back(row[i]);
                auto it = sizes.find(ck);
                if (it == sizes.end()) {
                    sizes.emplace(ck, 1);
                    order.push_back(ck);
                } else {
                    ++it->second;
                }
            }
            std::vector<std::vector<int>> kept;
            for (std::size_t ci = 0; ci < order.size(); ++ci) {
                if (count_pred_passes(*plan.cluster_filter, sizes.find(order[ci])->second))
                    kept.push_back(std::move(ex.cluster_ids[gi][ci]));
            }
            ex.cluster_ids[gi] = std::move(kept);
        }
    }

    std::vector<GroupView> views(scope.size());
    for (std::size_t gi = 0; gi < scope.size(); ++gi) {
        if (clustered) views[gi].clusters = &ex.cluster_ids[gi];
        else views[gi].plain = &ex.group_ids[gi];
    }

    const Threshold* support_t = nullptr;
    const Threshold* conf_t = nullptr;
    for (const auto& t : plan.thresholds) {
        if (t.metric == Metric::Support) support_t = &t;
        else conf_t = &t;
    }

    std::int64_t body_min = 1, head_min = 1;
    if (support_t) {
        std::int64_t m = min_passing_count(*support_t, group_count);
        if (plan.semantics == SupportSemantics::BodySupport) {
            body_min = m;
        } else {
            body_min = m; // rule_count <= body_count
            head_min = m; // rule_count <= head match count
        }
    }

    auto body_sets = apriori(views, eligibility(ex.universe, plan.body.attrs), body_min,
                             plan.body.min_card, plan.body.max_card, options.workers, true);
    auto head_sets = apriori(views, eligibility(ex.universe, plan.head.attrs), head_min,
                             plan.head.min_card, plan.head.max_card, options.workers, true);
    if (body_sets.empty() || head_sets.empty()) return {};

    // per-group matched head sets (and per-cluster membership when clustered)
    std::vector<std::vector<int>> heads_of_group(scope.size());
    for (std::size_t h = 0; h < head_sets.size(); ++h)
        for (int g : head_sets[h].postings) heads_of_group[static_cast<std::size_t>(g)].push_back(static_cast<int>(h));

    std::map<std::pair<int, int>, std::int64_t> pair_counts;
    if (!clustered) {
        for (std::size_t b = 0; b < body_sets.size(); ++b) {
            for (int g : body_sets[b].postings) {
                for (int h : heads_of_group[static_cast<std::size_t>(g)]) {
                    if (!ids_disjoint(body_sets[b].ids, head_sets[static_cast<std::size_t>(h)].ids))
                        continue;
                    ++pair_counts[{static_cast<int>(b), h}];
                }
            }
        }
    } else {
        // ordered pairs of distinct clusters: body within one, head within another
        for (std::size_t gi = 0; gi < scope.size(); ++gi) {
            const auto& clusters = ex.cluster_ids[gi];
            if (clusters.size() < 2) continue;
            std::set<std::pair<int, int>> seen;
            // which bodies/heads fit in each cluster
            std::vector<std::vector<int>> bodies_in(clusters.size()), heads_in(clusters.size());
            for (std::size_t b = 0; b < body_sets.size(); ++b)
                for (std::size_t c = 0; c < clusters.size(); ++c)
                    if (subset_of(body_sets[b].ids, clusters[c]))
                        bodies_in[c].push_back(static_cast<int>(b));
            for (std::size_t h = 0; h < head_sets.size(); ++h)
                for (std::size_t c = 0; c < clusters.size(); ++c)
                    if (subset_of(head_sets[h].ids, clusters[c]))
                        heads_in[c].push_back(static_cast<int>(h));
            for (std::size_t cb = 0; cb < clusters.size(); ++cb) {
                for (std::size_t ch = 0; ch < clusters.size(); ++ch) {
                    if (cb == ch) continue;
                    for (int b : bodies_in[cb])
                        for (int h : heads_in[ch]) {
                            if (!ids_disjoint(body_sets[static_cast<std::size_t>(b)].ids,
                                              head_sets[static_cast<std::size_t>(h)].ids))
                                continue;
                            seen.insert({b, h});
                        }
                }
            }
            for (const auto& [b, h] : seen) ++pair_counts[{b, h}];
        }
    }

    std::vector<Rule> rules;
    for (const auto& [bh, rule_count] : pair_counts) {
        const FrequentSet& b = body_sets[static_cast<std::size_t>(bh.first)];
        const FrequentSet& h = head_sets[static_cast<std::size_t>(bh.second)];
        Rule r;
        r.group_count = group_count;
        r.body_count = b.count;
        r.rule_count = rule_count;
        if (support_t) {
            std::int64_t c = plan.semantics == SupportSemantics::BodySupport ? r.body_count
                                                                             : r.rule_count;
            if (!threshold_passes(*support_t, c, group_count)) continue;
        }
        if (conf_t) {
            Rational conf(r.rule_count, r.body_count);
            int cmp = conf.compare(conf_t->value);
            bool ok = conf_t->cmp == Comparator::Greater ? cmp > 0 : cmp >= 0;
            if (!ok) continue;
        }
        r.body = ids_to_set(b.ids, ex.universe);
        r.head = ids_to_set(h.ids, ex.universe);
        rules.push_back(std::move(r));
    }
    std::sort(rules.begin(), rules.end(), Rule::canonical_less);
    return rules;
}

} // namespace

std::vector<std::pair<DescriptorSet, std::int64_t>> enumerate_frequent(
    const GroupedTable& groups, const ComponentSchema& schema, std::int64_t min_count,
    const Bindings& bindings, const MineOptions& options) {
    if (min_count < 1) fail(ErrorKind::Plan, "min_count must be >= 1");
    if (schema.min_card < 1 || (schema.max_card && *schema.max_card < schema.min_card))
        fail(ErrorKind::Plan, "invalid cardinality bounds");
    std::vector<std::size_t> scope(groups.groups.size());
    for (std::size_t i = 0; i < scope.size(); ++i) scope[i] = i;
    Extraction ex = extract(groups, schema.attrs, bindings, std::nullopt, scope);
    std::vector<GroupView> views(scope.size());
    for (std::size_t gi = 0; gi < scope.size(); ++gi) views[gi].plain = &ex.group_ids[gi];
    auto sets = apriori(views, std::vector<char>(ex.universe.size(), 1), min_count, schema.min_card,
                        schema.max_card, options.workers, false);
    std::vector<std::pair<DescriptorSet, std::int64_t>> out;
    out.reserve(sets.size());
    for (const auto& fs : sets) out.emplace_back(ids_to_set(fs.ids, ex.universe), fs.count);
    return out;
}

std::vector<Rule> mine_associations(const MinePlan& plan, const MineOptions& options) {
    return mine_impl(plan, options, false);
}

std::vector<Rule> mine_clustered(const MinePlan& plan, const MineOptions& options) {
    return mine_impl(plan, options, true);
}

std::vector<Rule> mine(const MinePlan& plan, const MineOptions& options) {
    return mine_impl(plan, options, plan.cluster_keys.has_value());
}

bool match_descriptors(const Schema& key_schema, const Row& key, const Schema& row_schema,
                       const std::vector<Row>& rows, const DescriptorSet& ds) {
    for (const auto& d : ds) {
        bool matched = false;
        if (auto col = row_schema.find(d.attr)) {
            for (const auto& row : rows) {
                if (d.matches_raw(row[*col])) {
                    matched = true;
                    break;
                }
            }
        }
        if (!matched) {
            if (auto kcol = key_schema.find(d.attr)) matched = d.matches_raw(key[*kcol]);
        }
        if (!matched) return false;
    }
    return true;
}

bool match_descriptors(const GroupedTable& data, std::size_t group_idx, const DescriptorSet& ds) {
    const auto& g = data.groups[group_idx];
    return match_descriptors(data.key_schema, g.key, data.row_schema, g.rows, ds);
}

} // namespace idb

#include "idb/catalog.hpp"

namespace idb {

std::shared_ptr<const TableEntry> CatalogSnapshot::find_table(const std::string& name) const {
    auto it = tables.find(name);
    return it == tables.end() ? nullptr : it->second;
}

HierarchyPtr CatalogSnapshot::find_hierarchy(const std::string& name) const {
    auto it = hierarchies.find(name);
    return it == hierarchies.end() ? nullptr : it->second;
}

std::shared_ptr<const RuleTable> CatalogSnapshot::find_ruletable(const std::string& name) const {
    auto it = ruletables.find(name);
    return it == ruletables.end() ? nullptr : it->second;
}

CatalogSnapshot Catalog::snapshot() const {
    std::lock_guard<std::mutex> lock(mu_);
    return state_;
}

void Catalog::put_table(const std::string& name, TableEntry entry, bool replace) {
    std::lock_guard<std::mutex> lock(mu_);
    if (!replace && state_.tables.count(name))
        fail(ErrorKind::Catalog, "table '" + name + "' already exists");
    state_.tables[name] = std::make_shared<const TableEntry>(std::move(entry));
}

void Catalog::put_hierarchy(const std::string& name, ConceptHierarchy h) {
    std::lock_guard<std::mutex> lock(mu_);
    state_.hierarchies[name] = std::make_shared<const ConceptHierarchy>(std::move(h));
}

void Catalog::store_rules(const std::string& name, RuleTable rt, bool replace) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = state_.ruletables.find(name);
    if (it != state_.ruletables.end() && !replace && !it->second->declared_placeholder)
        fail(ErrorKind::Catalog, "rule table '" + name + "' already exists (no replacement requested)");
    rt.name = name;
    rt.declared_placeholder = false;
    state_.ruletables[name] = std::make_shared<const RuleTable>(std::move(rt));
}

void Catalog::declare_ruletable(const std::string& name) {
    std::lock_guard<std::mutex> lock(mu_);
    if (state_.ruletables.count(name))
        fail(ErrorKind::Catalog, "rule table '" + name + "' already exists");
    RuleTable rt;
    rt.name = name;
    rt.declared_placeholder = true;
    state_.ruletables[name] = std::make_shared<const RuleTable>(std::move(rt));
}

std::vector<std::string> Catalog::table_names() const {
    std::lock_guard<std::mutex> lock(mu_);
    std::vector<std::string> out;
    for (const auto& [k, v] : state_.tables) out.push_back(k);
    return out;
}

std::vector<std::string> Catalog::ruletable_names() const {
    std::lock_guard<std::mutex> lock(mu_);
    std::vector<std::string> out;
    for (const auto& [k, v] : state_.ruletables) out.push_back(k);
    return out;
}

std::vector<std::string> Catalog::hierarchy_names() const {
    std::lock_guard<std::mutex> lock(mu_);
    std::vector<std::string> out;
    for (const auto& [k, v] : state_.hierarchies) out.push_back(k);
    return out;
}

} // namespace idb

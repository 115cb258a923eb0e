#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "idb/hierarchy.hpp"
#include "idb/rulestore.hpp"
#include "idb/table.hpp"

namespace idb {

// A relation plus the grouping keys its definition declared (views created
// with GROUP BY remember them; mining statements need grouped sources).
struct TableEntry {
    Table table;
    std::vector<std::string> group_keys;
};

struct CatalogSnapshot {
    std::map<std::string, std::shared_ptr<const TableEntry>, CiLess> tables;
    std::map<std::string, HierarchyPtr, CiLess> hierarchies;
    std::map<std::string, std::shared_ptr<const RuleTable>, CiLess> ruletables;

    std::shared_ptr<const TableEntry> find_table(const std::string& name) const;
    HierarchyPtr find_hierarchy(const std::string& name) const;
    std::shared_ptr<const RuleTable> find_ruletable(const std::string& name) const;
};

// Single-writer catalog; readers take consistent snapshots.
class Catalog {
public:
    CatalogSnapshot snapshot() const;

    void put_table(const std::string& name, TableEntry entry, bool replace = true);
    // hierarchies are keyed by name; redefinition replaces atomically
    void put_hierarchy(const std::string& name, ConceptHierarchy h);
    // errors on collision unless replace is requested or the existing entry is
    // a declared placeholder
    void store_rules(const std::string& name, RuleTable rt, bool replace = false);
    void declare_ruletable(const std::string& name);

    std::vector<std::string> table_names() const;
    std::vector<std::string> ruletable_names() const;
    std::vector<std::string> hierarchy_names() const;

private:
    mutable std::mutex mu_;
    CatalogSnapshot state_;
};

} // namespace idb

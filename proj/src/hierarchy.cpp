#include "ehaudit/hierarchy.hpp"

#include "ehaudit/jdk_exceptions.hpp"

#include <algorithm>
#include <stdexcept>

namespace ehaudit {

std::string simple_type_name(const std::string& name) {
    auto pos = name.rfind('.');
    return pos == std::string::npos ? name : name.substr(pos + 1);
}

bool SemanticExceptionHierarchy::known(const std::string& n) const {
    return edges.count(n) > 0 || roots.count(n) > 0;
}

std::optional<std::string> SemanticExceptionHierarchy::parent_of(const std::string& n) const {
    auto it = edges.find(n);
    if (it == edges.end()) return std::nullopt;
    return it->second;
}

bool SemanticExceptionHierarchy::derives_from(const std::string& child,
                                              const std::string& ancestor) const {
    std::string cur = child;
    for (int steps = 0; steps < 1000; ++steps) {
        auto it = edges.find(cur);
        if (it == edges.end()) return false;
        if (it->second == ancestor) return true;
        cur = it->second;
    }
    return false;
}

bool SemanticExceptionHierarchy::is_unchecked(const std::string& n) const {
    return n == "RuntimeException" || n == "Error" || derives_from(n, "RuntimeException") ||
           derives_from(n, "Error");
}

SemanticExceptionHierarchy build_semantic_hierarchy(const std::vector<EhRegionMap>& maps) {
    SemanticExceptionHierarchy h;
    h.roots.insert("Throwable");
    const auto& jdk = jdk_exception_edges();

    // (1) every exception type the project names
    std::set<std::string> mentioned;
    for (const auto& map : maps) {
        for (const auto& tb : map.try_blocks)
            for (const auto& cc : tb.catch_clauses)
                for (const auto& t : cc.exception_types) mentioned.insert(simple_type_name(t));
        for (const auto& m : map.methods) {
            for (const auto& t : m.throws_types) mentioned.insert(simple_type_name(t));
            for (const auto& t : m.thrown_new_types) mentioned.insert(simple_type_name(t));
        }
    }

    // (2) project type declarations whose superclass chain reaches Throwable
    std::map<std::string, std::string> project_extends;
    for (const auto& map : maps)
        for (const auto& d : map.type_decls)
            if (d.is_class && !d.extends.empty())
                project_extends[d.name] = simple_type_name(d.extends);

    std::set<std::string> exceptional = {"Throwable"};
    for (const auto& [child, parent] : jdk) {
        (void)parent;
        exceptional.insert(child);
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [child, parent] : project_extends) {
            if (!exceptional.count(child) && exceptional.count(parent)) {
                exceptional.insert(child);
                changed = true;
            }
        }
    }
    for (const auto& [child, parent] : project_extends)
        if (exceptional.count(child)) {
            h.edges[child] = parent;
            mentioned.insert(child);
        }

    // (3) close every mentioned type upward through the JDK table
    auto add_chain = [&](std::string name) {
        for (int steps = 0; steps < 1000; ++steps) {
            if (name == "Throwable") return;
            if (h.edges.count(name)) {
                name = h.edges[name];
                continue;
            }
            auto it = jdk.find(name);
            if (it != jdk.end()) {
                h.edges[name] = it->second;
                name = it->second;
                continue;
            }
            // unresolved external: opaque root
            if (!h.roots.count(name)) {
                h.roots.insert(name);
                h.warnings.push_back("unresolved exception type treated as opaque root: " + name);
            }
            return;
        }
    };
    for (const auto& n : mentioned) add_chain(n);

    // acyclicity: every chain must terminate in a root
    for (const auto& [child, parent] : h.edges) {
        (void)parent;
        std::string cur = child;
        std::set<std::string> seen;
        while (h.edges.count(cur)) {
            if (!seen.insert(cur).second)
                throw std::logic_error("cycle in semantic exception hierarchy at " + cur);
            cur = h.edges[cur];
        }
    }
    std::sort(h.warnings.begin(), h.warnings.end());
    h.warnings.erase(std::unique(h.warnings.begin(), h.warnings.end()), h.warnings.end());
    return h;
}

CallIndex::CallIndex(const std::vector<EhRegionMap>& maps) {
    for (const auto& map : maps)
        for (const auto& m : map.methods)
            by_name_arity_[{m.name, m.arity}].push_back(&m);
}

std::vector<const MethodInfo*> CallIndex::resolve(const CallSite& call) const {
    auto it = by_name_arity_.find({call.name, call.arity});
    if (it == by_name_arity_.end()) return {};
    return it->second;
}

std::vector<InvokingExceptionHierarchy> build_invoking_hierarchy(
    const TryBlockInfo& try_block, const CallIndex& call_index,
    std::vector<std::string>* warnings) {
    if (try_block.catch_clauses.empty())
        throw std::invalid_argument("invoking hierarchy requires at least one catch clause");

    std::set<std::string> raised;
    std::set<CallSite> seen;
    for (const auto& call : try_block.calls_in_body) {
        if (!seen.insert(call).second) continue;
        auto targets = call_index.resolve(call);
        if (targets.empty()) {
            if (warnings)
                warnings->push_back("unresolved call in try body: " + call.name + "/" +
                                    std::to_string(call.arity));
            continue;
        }
        for (const auto* m : targets) {
            for (const auto& t : m->throws_types) raised.insert(simple_type_name(t));
            for (const auto& t : m->thrown_new_types) raised.insert(simple_type_name(t));
        }
    }

    std::vector<InvokingExceptionHierarchy> out;
    for (const auto& clause : try_block.catch_clauses) {
        InvokingExceptionHierarchy ieh;
        for (const auto& t : clause.exception_types)
            ieh.declared_types.push_back(simple_type_name(t));
        if (!ieh.declared_types.empty()) ieh.root = ieh.declared_types.front();
        ieh.children = raised;
        for (const auto& d : ieh.declared_types) ieh.children.erase(d);
        out.push_back(std::move(ieh));
    }
    return out;
}

} // namespace ehaudit

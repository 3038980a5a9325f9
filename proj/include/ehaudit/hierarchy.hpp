#pragma once

#include "ehaudit/eh_model.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ehaudit {

/// Simple (unqualified) form of a possibly dotted type name.
std::string simple_type_name(const std::string& name);

/// Inheritance tree over exception types: every non-root node has exactly
/// one parent. Names are keyed by simple name.
struct SemanticExceptionHierarchy {
    std::map<std::string, std::string> edges; // child -> parent
    std::set<std::string> roots;              // Throwable plus opaque externals
    std::vector<std::string> warnings;

    bool known(const std::string& simple_name) const;
    std::optional<std::string> parent_of(const std::string& simple_name) const;
    bool derives_from(const std::string& child, const std::string& ancestor) const;

    /// RuntimeException/Error lineage. Unknown types report false (treated as
    /// checked, the conservative reading).
    bool is_unchecked(const std::string& simple_name) const;
};

/// Builds the hierarchy over every exception type named in a catch clause,
/// throws clause, or `throw new` of the project, plus project-declared
/// exception subclasses. Unresolvable externals become opaque roots.
SemanticExceptionHierarchy build_semantic_hierarchy(const std::vector<EhRegionMap>& maps);

/// One per catch clause: the clause's declared type over the exception types
/// raised by methods invoked in the guarded try body.
struct InvokingExceptionHierarchy {
    std::string root;                        // first declared type (simple name)
    std::vector<std::string> declared_types; // all types of the clause (simple)
    std::set<std::string> children;          // raised by callees, minus declared
};

/// Project-wide call resolution by simple name + arity (best effort; all
/// same-signature candidates contribute).
class CallIndex {
public:
    explicit CallIndex(const std::vector<EhRegionMap>& maps);
    std::vector<const MethodInfo*> resolve(const CallSite& call) const;

private:
    std::map<std::pair<std::string, int>, std::vector<const MethodInfo*>> by_name_arity_;
};

std::vector<InvokingExceptionHierarchy> build_invoking_hierarchy(
    const TryBlockInfo& try_block, const CallIndex& call_index,
    std::vector<std::string>* warnings = nullptr);

} // namespace ehaudit

#pragma once

#include "ehaudit/eh_model.hpp"
#include "ehaudit/hierarchy.hpp"

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace ehaudit {

enum class MutationOperator { CBR, CBI, CBD, PTL, CRE, FBD, TSD };

const char* to_string(MutationOperator op);
std::optional<MutationOperator> parse_operator(const std::string& name);
const std::vector<MutationOperator>& all_operators();

struct NotApplicable : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct GenerationSkipped : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MutationSite {
    std::string file_id;
    MutationOperator op = MutationOperator::TSD;
    SourceSpan anchor;       // construct being mutated
    std::string variant_key; // replacement-type discriminator, else empty

    // indices into the file's region map, set by find_eligible_sites
    int try_index = -1;
    int clause_index = -1;
    int throw_index = -1;
};

/// One contiguous byte-range replacement against the pristine source.
struct TextEdit {
    std::size_t begin = 0;
    std::string original;
    std::string replacement;
};

struct Mutant {
    std::string mutant_id; // stable hash of the site
    MutationSite site;
    std::vector<TextEdit> edits; // ascending, non-overlapping (1 or 2)
    std::string description;
};

/// Semantic hierarchy plus per-file/per-try invoking hierarchies.
struct ProjectHierarchies {
    SemanticExceptionHierarchy semantic;
    // file_id -> per try block -> per catch clause
    std::map<std::string, std::vector<std::vector<InvokingExceptionHierarchy>>> invoking;
    std::vector<std::string> warnings;
};

ProjectHierarchies build_hierarchies(const std::vector<EhRegionMap>& maps);

/// Every applicable (operator, anchor, variant) triple for the project,
/// deterministically ordered by (file, position, operator, variant).
std::vector<MutationSite> find_eligible_sites(const std::vector<EhRegionMap>& maps,
                                              const ProjectHierarchies& hierarchies,
                                              const std::set<MutationOperator>& operators);

/// Produces the site's transformation against the given pristine source.
/// NotApplicable when the source no longer matches the site; GenerationSkipped
/// when the transformation is syntactically impossible at this site.
Mutant generate_mutant(const MutationSite& site, const std::string& source_text,
                       const ProjectHierarchies& hierarchies);

std::string apply_edits(const std::string& pristine, const std::vector<TextEdit>& edits);
std::string revert_edits(const std::string& mutated, const std::vector<TextEdit>& edits);

std::string stable_site_hash(const MutationSite& site);

/// Minimal unified diff (single hunk, three context lines) between the
/// pristine and mutated file contents.
std::string unified_diff(const std::string& before, const std::string& after,
                         const std::string& path);

} // namespace ehaudit

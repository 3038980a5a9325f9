#pragma once

#include "ehaudit/source_span.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ehaudit {

/// A method invocation observed inside a try body, resolved later by simple
/// name + arity against the project's own methods.
struct CallSite {
    std::string name;
    int arity = 0;

    friend auto operator<=>(const CallSite&, const CallSite&) = default;
};

struct CatchClause {
    std::vector<std::string> exception_types; // >1 only for multi-catch
    std::vector<SourceSpan> type_spans;       // one per entry above
    std::string parameter_name;
    SourceSpan clause_span; // 'catch' keyword through the handler's '}'
    SourceSpan body_span;   // '{' .. '}' of the handler body

    friend bool operator==(const CatchClause&, const CatchClause&) = default;
};

struct TryBlockInfo {
    SourceSpan try_body_span; // 'try' keyword (incl. resource header) .. '}' of try body
    std::vector<CatchClause> catch_clauses;
    std::optional<SourceSpan> finally_span; // 'finally' keyword .. '}'
    bool resources_present = false;

    SourceSpan statement_span; // whole try statement incl. all clauses
    std::vector<CallSite> calls_in_body;

    std::size_t body_open_offset = 0;  // '{' of the try body
    std::size_t body_close_offset = 0; // matching '}'
    // '}' closing the block that directly contains this try statement;
    // 0 when unknown (top level). Used to find trailing sibling statements.
    std::size_t enclosing_block_end_offset = 0;
    int enclosing_method_index = -1; // into EhRegionMap::methods

    // Identifiers declared or assigned in the try body (lexical heuristic)
    // and the maximal run of trailing sibling statements that reference any
    // of them; both feed the statement-relocation mutation.
    std::set<std::string> body_defined_names;
    std::optional<SourceSpan> trailing_use_run;

    friend bool operator==(const TryBlockInfo&, const TryBlockInfo&) = default;
};

struct MethodInfo {
    std::string name; // constructors use the type name
    int arity = 0;
    SourceSpan signature_span; // declaration start through params/throws
    std::optional<SourceSpan> body_span;
    std::vector<std::string> throws_types;
    bool declared_return_is_void = false;

    SourceSpan full_span; // declaration start .. body '}' (or ';')
    std::vector<std::string> thrown_new_types; // T of every `throw new T(...)` in the body
    std::optional<SourceSpan> throws_clause_span; // "throws A, B" text, when present
    std::size_t params_end_offset = 0; // just past ')' of the parameter list

    friend bool operator==(const MethodInfo&, const MethodInfo&) = default;
};

/// A class/interface/enum declaration; feeds the semantic exception hierarchy.
struct TypeDecl {
    std::string name;
    std::string extends; // empty when none declared
    bool is_class = false;

    friend bool operator==(const TypeDecl&, const TypeDecl&) = default;
};

struct EhRegionMap {
    std::string file_id;
    std::vector<TryBlockInfo> try_blocks;
    std::vector<SourceSpan> throw_spans;
    std::vector<MethodInfo> methods;
    std::vector<TypeDecl> type_decls;

    friend bool operator==(const EhRegionMap&, const EhRegionMap&) = default;
};

/// Parses one Java source file into its exception-handling region model.
/// Throws ParseError on structurally broken input (unbalanced braces,
/// unterminated literals). Pure: identical input yields identical maps.
EhRegionMap extract_eh_regions(std::string_view source_text, const std::string& file_id);

/// Region classes whose span contains `line`; {NONE} when no other applies.
std::set<RegionClass> classify_line(const EhRegionMap& map, int line);

} // namespace ehaudit

#pragma once

#include <compare>
#include <cstddef>
#include <string>

namespace ehaudit {

/// Inclusive 1-based line/column range inside one source file.
/// Columns are 0 when only line granularity is known.
struct SourceSpan {
    std::string file_id;
    int start_line = 1;
    int end_line = 1;
    int start_col = 0;
    int end_col = 0;

    // Byte offsets into the original text; used by the mutation engine for
    // exact patching. Half-open [begin, end).
    std::size_t begin_offset = 0;
    std::size_t end_offset = 0;

    bool contains_line(int line) const { return line >= start_line && line <= end_line; }

    friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

enum class RegionClass {
    TRY,
    CATCH,
    FINALLY,
    THROW,
    METHOD_WITH_THROWS,
    NONE,
};

const char* to_string(RegionClass c);

} // namespace ehaudit

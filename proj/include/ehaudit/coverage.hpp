#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace ehaudit {

struct MalformedReport : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CoverageLine {
    int line_no = 0;
    long mi = 0; // missed instructions
    long ci = 0; // covered instructions
    long mb = 0; // missed branches
    long cb = 0; // covered branches
};

struct Counter {
    long missed = 0;
    long covered = 0;
};

struct MethodCoverage {
    std::string class_name; // bytecode name, e.g. org/example/Foo
    std::string name;       // <init> for constructors
    std::string desc;
    int decl_line = 0; // first line attributed by the report
    Counter instructions;
    Counter branches;
    bool covered = false; // METHOD counter covered > 0 (falls back to instructions)
};

struct FileCoverage {
    std::string key; // package path + source file name: org/example/Foo.java
    std::vector<CoverageLine> lines;
    std::map<std::string, Counter> summary; // INSTRUCTION/BRANCH/METHOD/...
    std::vector<MethodCoverage> methods;
};

struct CoverageModel {
    std::vector<FileCoverage> files;
    std::vector<std::string> warnings; // summary/line mismatches on ingest
};

/// Parses a JaCoCo-format XML report. Line data wins over summary counters
/// when they disagree (a warning records the mismatch). Unknown elements are
/// ignored.
CoverageModel parse_coverage_report(const std::string& xml_text);

CoverageModel parse_coverage_report_file(const std::string& path);

} // namespace ehaudit

#pragma once

// Random Java fixture generator for property tests: emits structurally valid
// source with a known census of try/catch/finally/throw constructs.

#include <random>
#include <sstream>
#include <string>

namespace testsupport {

struct GeneratedFixture {
    std::string source;
    int try_count = 0;
    int catch_count = 0;
    int finally_count = 0;
    int throw_count = 0;
};

class FixtureBuilder {
public:
    explicit FixtureBuilder(std::mt19937& rng) : rng_(rng) {}

    GeneratedFixture build() {
        out_ << "package gen;\n\npublic class Fixture {\n";
        int methods = 1 + pick(3);
        for (int m = 0; m < methods; ++m) {
            out_ << "    public void m" << m << "() {\n";
            statements(2, 2 + pick(4));
            out_ << "    }\n";
        }
        out_ << "}\n";
        fixture_.source = out_.str();
        return fixture_;
    }

private:
    std::mt19937& rng_;
    std::ostringstream out_;
    GeneratedFixture fixture_;
    int next_var_ = 0;
    int next_exc_ = 0;

    int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

    void indent(int depth) {
        for (int i = 0; i < depth; ++i) out_ << "    ";
    }

    void plain_statement(int depth) {
        indent(depth);
        int v = next_var_++;
        switch (pick(3)) {
            case 0: out_ << "int v" << v << " = " << pick(100) << ";\n"; break;
            case 1: out_ << "System.out.println(\"s" << v << "\");\n"; break;
            default: out_ << "long v" << v << " = System.nanoTime();\n"; break;
        }
    }

    void throw_statement(int depth) {
        indent(depth);
        out_ << "throw new IllegalStateException(\"e" << next_exc_++ << "\");\n";
        fixture_.throw_count += 1;
    }

    void try_statement(int depth) {
        fixture_.try_count += 1;
        int catches = pick(3);       // 0..2
        bool has_finally = catches == 0 || pick(2) == 1;

        indent(depth);
        out_ << "try {\n";
        statements(depth + 1, 1 + pick(3));
        indent(depth);
        out_ << "}";
        const char* types[] = {"RuntimeException", "IllegalArgumentException", "Exception"};
        for (int c = 0; c < catches; ++c) {
            fixture_.catch_count += 1;
            // keep broader types later so the source stays plausible
            out_ << " catch (" << types[c == catches - 1 ? 2 : c] << " e" << next_exc_++
                 << ") {\n";
            statements(depth + 1, 1 + pick(2));
            indent(depth);
            out_ << "}";
        }
        if (has_finally) {
            fixture_.finally_count += 1;
            out_ << " finally {\n";
            statements(depth + 1, 1 + pick(2));
            indent(depth);
            out_ << "}";
        }
        out_ << "\n";
    }

    void statements(int depth, int count) {
        for (int i = 0; i < count; ++i) {
            int roll = pick(10);
            if (roll < 2 && depth < 5) try_statement(depth);
            else if (roll < 4) throw_statement(depth);
            else plain_statement(depth);
        }
    }
};

inline GeneratedFixture generate_fixture(std::mt19937& rng) {
    return FixtureBuilder(rng).build();
}

} // namespace testsupport

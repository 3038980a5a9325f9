// Compares the OpenMP triangulation kernel against the serial reference on
// synthetic projects and checks they agree exactly.

#include "ehaudit/triangulate.hpp"

#include <cstdio>
#include <omp.h>
#include <random>

using namespace ehaudit;

namespace {

SourceSpan span(const std::string& file, int a, int b) {
    SourceSpan s;
    s.file_id = file;
    s.start_line = a;
    s.end_line = b;
    return s;
}

void synthesize(int files, int lines_per_file, unsigned seed, CoverageModel& model,
                std::vector<EhRegionMap>& regions) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> count(0, 9);
    std::uniform_int_distribution<int> coin(0, 1);

    for (int f = 0; f < files; ++f) {
        std::string name = "F" + std::to_string(f) + ".java";
        EhRegionMap map;
        map.file_id = "src/" + name;

        int cursor = 1;
        while (cursor + 12 < lines_per_file) {
            std::uniform_int_distribution<int> gap(1, 40);
            cursor += gap(rng);
            if (cursor + 12 >= lines_per_file) break;
            TryBlockInfo tb;
            int body = 2 + count(rng);
            tb.try_body_span = span(map.file_id, cursor, cursor + body);
            int at = cursor + body;
            CatchClause cc;
            cc.exception_types = {"Exception"};
            cc.parameter_name = "e";
            cc.clause_span = span(map.file_id, at, at + 3);
            cc.body_span = span(map.file_id, at + 1, at + 3);
            tb.catch_clauses.push_back(cc);
            tb.statement_span = span(map.file_id, cursor, at + 3);
            if (coin(rng)) {
                tb.finally_span = span(map.file_id, at + 4, at + 6);
                tb.statement_span.end_line = at + 6;
            }
            map.try_blocks.push_back(tb);
            cursor = tb.statement_span.end_line + 1;
        }
        for (int t = 0; t < 5; ++t) {
            std::uniform_int_distribution<int> pick(1, lines_per_file);
            int line = pick(rng);
            map.throw_spans.push_back(span(map.file_id, line, line));
        }
        regions.push_back(std::move(map));

        FileCoverage fc;
        fc.key = name;
        for (int l = 1; l <= lines_per_file; ++l) {
            CoverageLine cl;
            cl.line_no = l;
            cl.mi = count(rng);
            cl.ci = count(rng);
            cl.mb = coin(rng);
            cl.cb = coin(rng);
            fc.lines.push_back(cl);
        }
        model.files.push_back(std::move(fc));
    }
}

} // namespace

int main(int argc, char** argv) {
    int files = argc > 1 ? std::atoi(argv[1]) : 400;
    int lines = argc > 2 ? std::atoi(argv[2]) : 4000;
    int reps = argc > 3 ? std::atoi(argv[3]) : 3;

    CoverageModel model;
    std::vector<EhRegionMap> regions;
    synthesize(files, lines, 42, model, regions);
    std::printf("synthetic project: %d files x %d lines\n", files, lines);

    RegionCoverageCounts serial;
    double best_serial = 1e18;
    for (int r = 0; r < reps; ++r) {
        double t0 = omp_get_wtime();
        serial = triangulate_reference(model, regions);
        best_serial = std::min(best_serial, omp_get_wtime() - t0);
    }
    std::printf("serial reference: %.3fs\n", best_serial);

    for (int threads : {1, 2, 4, omp_get_max_threads()}) {
        RegionCoverageCounts parallel;
        double best = 1e18;
        for (int r = 0; r < reps; ++r) {
            double t0 = omp_get_wtime();
            parallel = triangulate(model, regions, threads);
            best = std::min(best, omp_get_wtime() - t0);
        }
        bool same = parallel == serial;
        std::printf("openmp %2d threads: %.3fs  speedup %.2fx  %s\n", threads, best,
                    best_serial / best, same ? "matches reference" : "MISMATCH");
        if (!same) return 1;
    }
    return 0;
}

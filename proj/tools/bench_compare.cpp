// Benchmark: serial vs OpenMP-parallel finite-model search, plus the
// classification fan-out. Both code paths produce identical results; the
// serial run is the reference, the parallel run partitions the search
// space across threads.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "tkb/oracle.hpp"
#include "tkb/parser.hpp"
#include "tkb/reasoner.hpp"

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct Case {
    const char* name;
    const char* text;
};

// Mixed satisfiable/unsatisfiable inputs; the unsatisfiable ones force a
// full sweep of every domain size, which is the expensive path.
const Case kCases[] = {
    {"chain_tbox", R"(
Movie SUBCLASS Production.
Series SUBCLASS Production.
liveAction SUBCLASS Movie.
Production SUBCLASS NOT Person.
Actor SUBCLASS Person.
a : Actor.
m : liveAction.
a starredIn m.
starredIn DOMAIN Person.
starredIn RANGE Production.
)"},
    {"forced_split", R"(
Actor SUBCLASS DeadActor OR LivingActor.
canAct SUBCLASS NOT DeadActor.
activeActor SUBCLASS (lives SOME Actor) AND (lives ONLY canAct).
a : activeActor.
b : Actor.
c : Actor.
)"},
    {"unsat_cycle", R"(
A SUBCLASS r SOME B.
B SUBCLASS r SOME A.
A SUBCLASS NOT B.
TOP SUBCLASS A OR B.
a : A.
b : B.
a r b.
)"},
    {"cardinality", R"(
Hub SUBCLASS MIN 2 link Spoke.
Spoke SUBCLASS NOT Hub.
TOP SUBCLASS Hub OR Spoke.
h : Hub.
s : Spoke.
h link s.
)"},
};

} // namespace

int main(int argc, char** argv) {
    int repetitions = 3;
    int max_domain = 5;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--repetitions") && i + 1 < argc) {
            repetitions = std::atoi(argv[++i]);
        } else if (!std::strcmp(argv[i], "--max-domain") && i + 1 < argc) {
            max_domain = std::atoi(argv[++i]);
        } else {
            std::fprintf(stderr, "usage: %s [--repetitions N] [--max-domain D]\n", argv[0]);
            return 2;
        }
    }

#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (built without OpenMP)\n");
#endif
    std::printf("%-14s %10s %10s %8s  %s\n", "case", "serial[s]", "parallel[s]", "speedup",
                "agreement");

    for (const auto& c : kCases) {
        auto kb = tkb::parse_dl(c.text);

        tkb::OracleOptions serial_opts;
        serial_opts.parallel = false;
        tkb::OracleOptions parallel_opts;
        parallel_opts.parallel = true;

        bool serial_found = false, parallel_found = false;
        std::string serial_table, parallel_table;

        auto t0 = std::chrono::steady_clock::now();
        for (int r = 0; r < repetitions; ++r) {
            auto model = tkb::find_model(kb, max_domain, serial_opts);
            serial_found = model.has_value();
            if (model) serial_table = model->to_table();
        }
        const double serial_s = seconds_since(t0) / repetitions;

        t0 = std::chrono::steady_clock::now();
        for (int r = 0; r < repetitions; ++r) {
            auto model = tkb::find_model(kb, max_domain, parallel_opts);
            parallel_found = model.has_value();
            if (model) parallel_table = model->to_table();
        }
        const double parallel_s = seconds_since(t0) / repetitions;

        const bool agree = serial_found == parallel_found && serial_table == parallel_table;
        std::printf("%-14s %10.4f %10.4f %8.2f  %s\n", c.name, serial_s, parallel_s,
                    parallel_s > 0 ? serial_s / parallel_s : 0.0, agree ? "ok" : "MISMATCH");
        if (!agree) return 1;
    }

    {
        // Classification fan-out on a wider TBox.
        std::string text;
        for (char c = 'B'; c <= 'K'; ++c) {
            text += std::string(1, c) + " SUBCLASS A.\n";
            text += std::string(1, c) + " SUBCLASS r SOME A.\n";
        }
        text += "L EQUIV B.\n";
        auto kb = tkb::parse_dl(text);
        auto t0 = std::chrono::steady_clock::now();
        auto hierarchy = tkb::classify(kb);
        std::printf("classify: %zu classes in %.4fs\n", hierarchy.nodes.size(),
                    seconds_since(t0));
    }
    return 0;
}

#include <kgraph/suites.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

using namespace kgraph;

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria, one line per criterion"};
    SuiteOptions opt;
    opt.corpus_path = KGRAPH_DEFAULT_CORPUS;
    int jobs = 1;
    bool verbose = false;
    app.add_option("--seed", opt.seed);
    app.add_option("--corpus", opt.corpus_path);
    app.add_option("--jobs", jobs)->check(CLI::Range(1, 64));
    app.add_flag("-v,--verbose", verbose, "list failing inputs");
    CLI11_PARSE(app, argc, argv);

    auto reports = run_suites(suite_names(), opt, jobs);
    bool all = true;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto& r = reports[i];
        all = all && r.passed();
        std::printf("[%s] %zu %s: %s (%zu checks, %.1f s)\n", r.passed() ? "PASS" : "FAIL", i + 1, r.name.c_str(),
                    r.summary.c_str(), r.checks, r.seconds);
        if (verbose || !r.passed())
            for (const auto& f : r.failures) std::printf("       %s\n", f.c_str());
    }
    return all ? 0 : 1;
}

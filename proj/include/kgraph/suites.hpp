#ifndef KGRAPH_SUITES_HPP
#define KGRAPH_SUITES_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace kgraph {

// Outcome of one relation suite; failures hold the first few offending inputs.
struct SuiteReport {
    std::string name;
    std::string summary;
    std::size_t checks = 0;
    std::size_t failed = 0;
    std::vector<std::string> failures;  // at most the first eight
    double seconds = 0;

    bool passed() const { return failed == 0 && checks > 0; }
};

struct SuiteOptions {
    std::uint64_t seed = 1;
    std::string corpus_path;  // tree expressions, one per line
};

std::vector<std::string> suite_names();  // in acceptance order
SuiteReport run_suite(const std::string& name, const SuiteOptions& opt = {});
// runs the suites on up to jobs threads; reports keep the order of names
std::vector<SuiteReport> run_suites(const std::vector<std::string>& names, const SuiteOptions& opt, int jobs);

std::string to_json(const SuiteReport& r);

} // namespace kgraph

#endif // KGRAPH_SUITES_HPP

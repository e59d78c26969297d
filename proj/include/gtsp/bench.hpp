#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gtsp/generators.hpp"
#include "gtsp/oracle.hpp"
#include "gtsp/pipeline.hpp"
#include "gtsp/rational.hpp"

namespace gtsp {

inline constexpr const char* kBenchHeader =
    "instance,family,n,m,maxdeg,olp_num,olp_den,opt,ms_edges,christofides_edges,best_edges,circ_cost,"
    "ratio_best_over_olp,chosen,err,runtime_ms";

/// One tour-mode benchmark result. Fields past `family` are empty when
/// `err` is set.
struct BenchRow {
    std::string instance;
    std::string family;
    int n = 0;
    int m = 0;
    int maxdeg = 0;
    Rational olp;
    std::optional<std::int64_t> opt;
    std::int64_t ms_edges = 0;
    std::int64_t christofides_edges = 0;
    std::int64_t best_edges = 0;
    std::int64_t circ_cost = 0;
    std::string chosen;
    std::string err;
    double runtime_ms = 0;
};

struct BenchOptions {
    SolveOptions solve;
    /// Oracle optimum is filled in for n at most this.
    int oracle_cutoff = kOracleDefaultCutoff;
    unsigned workers = 0;  // 0: hardware concurrency
    bool timing = true;
};

std::string format_bench_row(const BenchRow& row, bool timing = true);

/// Solves every spec (concurrently) and writes the CSV in spec order.
std::vector<BenchRow> bench(const std::vector<InstanceSpec>& specs, std::ostream& out, const BenchOptions& opt = {});

/// Non-empty, non-comment lines of a spec file.
std::vector<InstanceSpec> read_spec_file(std::istream& in);

}  // namespace gtsp

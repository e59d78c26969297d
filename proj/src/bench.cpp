#include "gtsp/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

namespace gtsp {

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

BenchRow run_one(const InstanceSpec& spec, const BenchOptions& opt) {
    BenchRow row;
    row.instance = spec.text;
    row.family = spec.family;
    const auto start = std::chrono::steady_clock::now();
    try {
        const Graph g = generate(spec);
        row.n = g.vertex_count();
        row.m = g.edge_count();
        row.maxdeg = g.max_degree();
        const TourSolution sol = tsp_tour(g, opt.solve);
        const auto& c = sol.certificate;
        row.olp = c.olp;
        row.ms_edges = c.ms_edges;
        row.christofides_edges = c.christofides_edges;
        row.best_edges = sol.edge_count;
        row.circ_cost = c.circulation_cost;
        row.chosen = c.chosen;
        if (row.n <= opt.oracle_cutoff && row.n <= kOracleHardCap) {
            row.opt = oracle_opt_tour(g, std::min(opt.oracle_cutoff, kOracleHardCap));
            GTSP_ENSURE(c.olp <= Rational(static_cast<long>(*row.opt)) && *row.opt <= row.best_edges,
                        "olp <= opt <= best violated");
        }
    } catch (const std::exception& e) {
        row.err = e.what();
    }
    row.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return row;
}

}  // namespace

std::string format_bench_row(const BenchRow& r, bool timing) {
    std::ostringstream ss;
    ss << csv_field(r.instance) << ',' << csv_field(r.family) << ',';
    if (r.err.empty()) {
        ss << r.n << ',' << r.m << ',' << r.maxdeg << ',' << r.olp.get_num().get_str() << ','
           << r.olp.get_den().get_str() << ',' << (r.opt ? std::to_string(*r.opt) : "") << ',' << r.ms_edges << ','
           << r.christofides_edges << ',' << r.best_edges << ',' << r.circ_cost << ','
           << (sgn(r.olp) > 0 ? to_decimal(Rational(static_cast<long>(r.best_edges)) / r.olp, 6) : "") << ','
           << csv_field(r.chosen) << ",,";
    } else {
        ss << ",,,,,,,,,,,," << csv_field(r.err) << ',';
    }
    if (timing) {
        std::ostringstream t;
        t.setf(std::ios::fixed);
        t.precision(3);
        t << r.runtime_ms;
        ss << t.str();
    }
    return ss.str();
}

std::vector<BenchRow> bench(const std::vector<InstanceSpec>& specs, std::ostream& out, const BenchOptions& opt) {
    out << kBenchHeader << '\n';
    std::vector<BenchRow> rows(specs.size());
    std::vector<char> done(specs.size(), 0);
    std::mutex mu;
    std::condition_variable cv;
    std::atomic<std::size_t> next{0};
    unsigned workers = opt.workers ? opt.workers : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(specs.size(), 1)));

    auto work = [&] {
        for (std::size_t i = next++; i < specs.size(); i = next++) {
            BenchRow row = run_one(specs[i], opt);
            std::lock_guard lock(mu);
            rows[i] = std::move(row);
            done[i] = 1;
            cv.notify_all();
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    // The calling thread writes rows as soon as their predecessors are out.
    for (std::size_t i = 0; i < specs.size(); ++i) {
        std::unique_lock lock(mu);
        cv.wait(lock, [&] { return done[i] != 0; });
        out << format_bench_row(rows[i], opt.timing) << '\n';
    }
    out.flush();
    for (auto& t : pool) t.join();
    return rows;
}

std::vector<InstanceSpec> read_spec_file(std::istream& in) {
    std::vector<InstanceSpec> specs;
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto last = line.find_last_not_of(" \t\r");
        specs.push_back(parse_instance_spec(line.substr(first, last - first + 1)));
    }
    return specs;
}

}  // namespace gtsp

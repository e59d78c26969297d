#include "gtsp/solution_io.hpp"

#include <ostream>
#include <sstream>

namespace gtsp {

std::string to_decimal(const Rational& q, int digits) {
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    const bool negative = sgn(q) < 0;
    const Rational a = negative ? Rational(-q) : q;
    BigInt scaled;
    mpz_fdiv_q(scaled.get_mpz_t(), BigInt(a.get_num() * scale).get_mpz_t(), a.get_den_mpz_t());
    std::string s = scaled.get_str();
    if (digits > 0) {
        if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
        s.insert(s.size() - static_cast<std::size_t>(digits), ".");
    }
    return (negative ? "-" : "") + s;
}

namespace {

void write_walk(std::ostream& out, const std::vector<WalkStep>& walk) {
    for (const WalkStep& w : walk) out << w.from << ' ' << w.to << '\n';
}

std::string ratio(std::int64_t edges, const Rational& lower) {
    if (sgn(lower) <= 0) return "n/a";
    return to_decimal(Rational(static_cast<long>(edges)) / lower, 6);
}

}  // namespace

void write_tour(std::ostream& out, const TourSolution& sol) {
    const auto& c = sol.certificate;
    out << "tour " << sol.edge_count << '\n';
    write_walk(out, sol.walk);
    out << '\n';
    out << "olp=" << to_string(c.olp) << '\n';
    out << "circulation_cost=" << c.circulation_cost << '\n';
    out << "ms_edges=" << c.ms_edges << '\n';
    out << "christofides_edges=" << c.christofides_edges << '\n';
    out << "bound_lemma4=" << to_string(c.bound_lemma4) << '\n';
    out << "bound_christofides=" << to_string(c.bound_christofides) << '\n';
    out << "chosen=" << c.chosen << '\n';
    out << "blocks=" << c.blocks << '\n';
    out << "ratio=" << ratio(sol.edge_count, c.olp) << '\n';
}

std::string format_tour(const TourSolution& sol) {
    std::ostringstream ss;
    write_tour(ss, sol);
    return ss.str();
}

void write_path(std::ostream& out, const PathSolution& sol) {
    const auto& c = sol.certificate;
    out << "path " << sol.s << ' ' << sol.t << ' ' << sol.edge_count << '\n';
    write_walk(out, sol.walk);
    out << '\n';
    out << "lower_bound=" << to_string(c.lower_bound) << '\n';
    out << "olp_path=" << to_string(c.olp_path) << '\n';
    out << "olp_prime=" << to_string(c.olp_prime) << '\n';
    out << "dist=" << c.dist << '\n';
    out << "d=" << to_string(c.d) << '\n';
    out << "zeta=" << to_string(c.zeta) << '\n';
    out << "circulation_cost=" << c.circulation_cost << '\n';
    out << "ms_edges=" << c.ms_edges << '\n';
    out << "baseline_edges=" << c.baseline_edges << '\n';
    out << "bound_main=" << to_string(c.bound_main) << '\n';
    out << "bound_baseline=" << c.bound_baseline << '\n';
    out << "constant_c=" << to_string(c.constant_c) << '\n';
    out << "chosen=" << c.chosen << '\n';
    out << "blocks=" << c.blocks << '\n';
    out << "ratio=" << ratio(sol.edge_count, c.lower_bound) << '\n';
}

std::string format_path(const PathSolution& sol) {
    std::ostringstream ss;
    write_path(ss, sol);
    return ss.str();
}

}  // namespace gtsp

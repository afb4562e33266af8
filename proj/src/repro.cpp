#include "helstrom/repro.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>

#include "helstrom/errors.hpp"
#include "helstrom/models.hpp"
#include "helstrom/quantum.hpp"

namespace helstrom::repro {
namespace {

constexpr double kPi = std::numbers::pi;

void add(ReproReport& report, std::string group, std::string quantity, double expected,
         double computed, double tolerance) {
    ReproRow row{std::move(group), std::move(quantity), expected, computed, tolerance,
                 false};
    row.pass = row.diff() <= tolerance;
    report.all_pass = report.all_pass && row.pass;
    report.rows.push_back(std::move(row));
}

quantum::BlochVector random_bloch(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double d[3] = {g(rng), g(rng), g(rng)};
    double n = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
    if (n < 1e-12) n = 1.0;
    const double r = std::cbrt(u(rng));
    return {r * d[0] / n, r * d[1] / n, r * d[2] / n};
}

double bloch_gap(const quantum::BlochVector& a, const quantum::BlochVector& b) {
    const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

Vec random_distribution(std::mt19937_64& rng, std::size_t d) {
    std::uniform_real_distribution<double> u(1e-12, 1.0);
    Vec s(d);
    double sum = 0.0;
    for (auto& v : s) {
        v = -std::log(u(rng)) + 1e-3;
        sum += v;
    }
    for (auto& v : s) v /= sum;
    return s;
}

void qubit_binary_case(ReproReport& report, std::uint64_t seed) {
    const char* g = "qubit-binary";
    auto spectral = [](const quantum::BlochVector& b1, const quantum::BlochVector& b2,
                       double p1, double p2) {
        return quantum::quantum_binary_helstrom(quantum::bloch_to_density(b1),
                                                quantum::bloch_to_density(b2), p1, p2)
            .p_success;
    };

    add(report, g, "pure states along the x and y axes",
        0.5 * (1.0 + std::sqrt(2.0) / 2.0), spectral({1, 0, 0}, {0, 1, 0}, 0.5, 0.5),
        1e-9);
    add(report, g, "antipodal pair at radius 0.3", 0.65,
        spectral({0.3, 0, 0}, {-0.3, 0, 0}, 0.5, 0.5), 1e-9);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> up(0.05, 0.95);
    double d_closed = 0.0, d_family = 0.0, d_trace = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        quantum::BlochVector b1 = random_bloch(rng), b2 = random_bloch(rng);
        while (bloch_gap(b1, b2) < 1e-6) b2 = random_bloch(rng);

        const double ps = spectral(b1, b2, 0.5, 0.5);
        const double closed = 0.5 * (1.0 + 0.5 * bloch_gap(b1, b2));
        d_closed = std::max(d_closed, std::abs(ps - closed));
        d_family =
            std::max(d_family, std::abs(quantum::qubit_geometric_family(b1, b2).ratio - ps));

        const double p1 = up(rng);
        auto diff = quantum::scale(p1, quantum::bloch_to_density(b1).matrix()) -
                    quantum::scale(1.0 - p1, quantum::bloch_to_density(b2).matrix());
        const double form = 0.5 * (1.0 + quantum::trace_norm(diff));
        d_trace = std::max(d_trace, std::abs(spectral(b1, b2, p1, 1.0 - p1) - form));
    }
    add(report, g, "Bloch closed form vs spectral route, max diff of 200", 0.0, d_closed,
        1e-9);
    add(report, g, "family ratio vs spectral route, max diff of 200", 0.0, d_family, 1e-9);
    add(report, g, "trace-norm form, non-uniform priors, max diff of 200", 0.0, d_trace,
        1e-9);
}

void symmetric_case(ReproReport& report) {
    const char* g = "symmetric";
    add(report, g, "three states at polar angle pi/2", 2.0 / 3.0,
        quantum::symmetric_optimal(3, kPi / 2).achieved_success, 1e-9);
    add(report, g, "eight states at polar angle pi/3", (1.0 + std::sin(kPi / 3)) / 8.0,
        quantum::symmetric_optimal(8, kPi / 3).achieved_success, 1e-9);

    double d_success = 0.0, d_bound = 0.0, r_complete = 0.0, r_annihilate = 0.0;
    double d_argmax = 0.0;
    for (std::size_t n = 2; n <= 8; ++n) {
        for (int k = 1; k <= 20; ++k) {
            const double theta = (kPi / 2) * k / 20.0;
            auto res = quantum::symmetric_optimal(n, theta);
            const double formula = (1.0 + std::sin(theta)) / static_cast<double>(n);
            d_success = std::max(d_success, std::abs(res.achieved_success - formula));
            const double qmax = quantum::symmetric_conjugate_weight(
                theta, quantum::symmetric_optimal_angle(theta));
            d_bound = std::max(
                d_bound, std::abs(1.0 / (static_cast<double>(n) * qmax) - res.p_success));
            r_complete = std::max(r_complete, res.povm_completeness_residual);
            r_annihilate = std::max(r_annihilate, res.annihilation_residual);
        }
    }
    for (int k = 1; k <= 20; ++k) {
        const double theta = (kPi / 2) * k / 20.0;
        // Golden-section maximization of the conjugate weight over [0, pi/4].
        const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
        double lo = 0.0, hi = kPi / 4;
        double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
        double f1 = quantum::symmetric_conjugate_weight(theta, x1);
        double f2 = quantum::symmetric_conjugate_weight(theta, x2);
        for (int it = 0; it < 200; ++it) {
            if (f1 < f2) {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + phi * (hi - lo);
                f2 = quantum::symmetric_conjugate_weight(theta, x2);
            } else {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - phi * (hi - lo);
                f1 = quantum::symmetric_conjugate_weight(theta, x1);
            }
        }
        const double argmax = 0.5 * (lo + hi);
        d_argmax =
            std::max(d_argmax, std::abs(argmax - quantum::symmetric_optimal_angle(theta)));
    }
    add(report, g, "measured success vs (1+sin theta)/n, max diff of grid", 0.0, d_success,
        1e-9);
    add(report, g, "ratio bound 1/(n q) vs optimum, max diff of grid", 0.0, d_bound, 1e-9);
    add(report, g, "measurement completeness, max residual of grid", 0.0, r_complete,
        1e-10);
    add(report, g, "conjugate annihilation, max residual of grid", 0.0, r_annihilate,
        1e-10);
    add(report, g, "weight argmax vs pi/4 - theta/2, max error of 20", 0.0, d_argmax, 1e-6);
}

void square_binary_case(ReproReport& report, std::uint64_t seed) {
    const char* g = "square-binary";
    add(report, g, "states (0.2,0.5) and (0.7,0.5)", 0.75,
        models::square_binary({0.2, 0.5}, {0.7, 0.5}).p_success, 1e-12);
    add(report, g, "states (0,0.1) and (0.2,0), clamped conjugate", 0.6,
        models::square_binary({0.0, 0.1}, {0.2, 0.0}).p_success, 1e-12);

    std::mt19937_64 rng(seed ^ 0x5157u);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto sq = models::square_space();
    double d_lp = 0.0;
    int certified = 0, trials = 0;
    while (trials < 100) {
        Point s1 = {u(rng), u(rng)}, s2 = {u(rng), u(rng)};
        if (dist2(s1, s2) < 1e-3) continue;
        ++trials;
        auto res = models::square_binary(s1, s2);
        DiscriminationInstance inst(sq, {s1, s2}, {0.5, 0.5});
        d_lp = std::max(d_lp, std::abs(res.p_success - helstrom_bound_lp(inst).value));
        if (res.certified) ++certified;
    }
    add(report, g, "closed form vs optimization, max diff of 100", 0.0, d_lp, 1e-8);
    add(report, g, "certified fraction of 100", 1.0, certified / 100.0, 0.0);
}

void square_pure_case(ReproReport& report) {
    const char* g = "square-pure";
    auto res = models::square_pure_state_discrimination();
    add(report, g, "four pure states, optimum", 0.5, res.p_success, 1e-9);
    add(report, g, "measured success of the four-outcome observable", 0.5,
        success_probability(res.instance, res.observable), 1e-9);
    add(report, g, "certificate max conjugate value", 0.0,
        res.certification.max_conjugate_value, 1e-9);
}

void classical_binary_case(ReproReport& report, std::uint64_t seed) {
    const char* g = "classical-binary";
    auto frozen = models::classical_binary_family({0.7, 0.3}, {0.2, 0.8}, 0.4, 0.6);
    add(report, g, "bit pair (0.7,0.3)/(0.2,0.8), priors (0.4,0.6)", 0.76,
        frozen.p_success, 1e-12);
    DiscriminationInstance frozen_inst(models::classical_space(2),
                                       {{0.7, 0.3}, {0.2, 0.8}}, {0.4, 0.6});
    add(report, g, "same pair via optimization", 0.76, helstrom_bound_lp(frozen_inst).value,
        1e-9);

    std::mt19937_64 rng(seed ^ 0xC1A5u);
    std::uniform_real_distribution<double> up(0.05, 0.95);
    std::uniform_int_distribution<std::size_t> ud(2, 6);
    double d_map = 0.0, d_embed = 0.0;
    int certified = 0, trials = 0;
    while (trials < 100) {
        const std::size_t d = ud(rng);
        Vec s1 = random_distribution(rng, d), s2 = random_distribution(rng, d);
        if (dist2(s1, s2) < 1e-3) continue;
        ++trials;
        const double p1 = up(rng);
        auto res = models::classical_binary_family(s1, s2, p1, 1.0 - p1);
        DiscriminationInstance inst(models::classical_space(d), {s1, s2}, {p1, 1.0 - p1});
        d_map = std::max(d_map, std::abs(res.p_success - models::classical_map_oracle(inst)));
        if (res.family.has_value()) {
            auto cert = binary_certify_by_distinguishability(*res.family);
            if (cert.conjugates_distinguishable &&
                certify_optimal(*res.family, cert.observable).certified)
                ++certified;
        } else {
            ++certified;  // one-sided pair: the larger prior alone is optimal
        }
        if (trials <= 50) {
            auto q = quantum::quantum_binary_helstrom(models::classical_embed_quantum(s1),
                                                      models::classical_embed_quantum(s2),
                                                      p1, 1.0 - p1);
            d_embed = std::max(d_embed, std::abs(q.p_success - res.p_success));
        }
    }
    add(report, g, "closed form vs best-guess decoding, max diff of 100", 0.0, d_map, 1e-9);
    add(report, g, "certified fraction of 100", 1.0, certified / 100.0, 0.0);
    add(report, g, "diagonal embedding vs closed form, max diff of 50", 0.0, d_embed,
        1e-12);
}

}  // namespace

double ReproRow::diff() const { return std::abs(expected - computed); }

const std::vector<std::string>& case_names() {
    static const std::vector<std::string> names = {
        "qubit-binary", "symmetric", "square-binary", "square-pure", "classical-binary"};
    return names;
}

ReproReport run_repro(const std::string& which, std::uint64_t seed) {
    const auto& names = case_names();
    if (which != "all" && std::find(names.begin(), names.end(), which) == names.end()) {
        std::string all;
        for (const auto& n : names) all += " " + n;
        throw ValidationError("unknown case '" + which + "' (choose one of:" + all +
                              " all)");
    }
    ReproReport report;
    auto wants = [&](const char* name) { return which == "all" || which == name; };
    if (wants("qubit-binary")) qubit_binary_case(report, seed);
    if (wants("symmetric")) symmetric_case(report);
    if (wants("square-binary")) square_binary_case(report, seed);
    if (wants("square-pure")) square_pure_case(report);
    if (wants("classical-binary")) classical_binary_case(report, seed);
    return report;
}

std::string format_table(const ReproReport& report) {
    std::ostringstream out;
    char line[256];
    std::snprintf(line, sizeof(line), "%-17s %-52s %-22s %-22s %-10s %-8s %s\n", "case",
                  "quantity", "expected", "computed", "|diff|", "tol", "status");
    out << line;
    out << std::string(140, '-') << "\n";
    for (const auto& row : report.rows) {
        char exp[32], comp[32], diff[16], tol[16];
        std::snprintf(exp, sizeof(exp), "%.15g", row.expected);
        std::snprintf(comp, sizeof(comp), "%.15g", row.computed);
        std::snprintf(diff, sizeof(diff), "%.3e", row.diff());
        std::snprintf(tol, sizeof(tol), "%.0e", row.tolerance);
        std::snprintf(line, sizeof(line), "%-17s %-52s %-22s %-22s %-10s %-8s %s\n",
                      row.group.c_str(), row.quantity.c_str(), exp, comp, diff, tol,
                      row.pass ? "pass" : "FAIL");
        out << line;
    }
    out << std::string(140, '-') << "\n";
    std::size_t passed = 0;
    for (const auto& row : report.rows)
        if (row.pass) ++passed;
    out << (report.all_pass ? "all " : "") << passed << " of " << report.rows.size()
        << " checks passed" << (report.all_pass ? "" : "; FAILURES above") << "\n";
    return out.str();
}

}  // namespace helstrom::repro

// Acceptance suite: every criterion prints one PASS/FAIL line; the exit code
// is the number of failed criteria.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fdb/fdb.hpp"
#include "test_support.hpp"

using namespace fdb;

namespace {

int failures = 0;

void report(int criterion, const std::string& name, bool pass, const std::string& detail = "") {
    std::printf("%s criterion %d: %s%s%s\n", pass ? "PASS" : "FAIL", criterion, name.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!pass) ++failures;
}

bool within_rel(double a, double b, double tol) { return std::abs(a - b) <= tol * (1 + std::abs(b)); }

// Criteria 1 and 2: the partition sum versus nested differentiation on 200
// seeded problems, with the FD cross-oracle on the low-order subset.
void criterion_equivalence_and_fd() {
    std::mt19937 rng(1001);
    int bad_nested = 0, bad_fd = 0, fd_checked = 0;
    double worst_nested = 0, worst_fd = 0;
    for (int trial = 0; trial < 200; ++trial) {
        int n = trial % 5 + 1;
        auto problem = fdb_test::random_problem(rng, n);
        auto r = faa_di_bruno_eval(problem, n <= 3);
        for (std::size_t c = 0; c < r.value_faa.size(); ++c) {
            double rel = std::abs(r.value_faa[c] - r.value_nested[c]) /
                         (1 + std::abs(r.value_nested[c]));
            worst_nested = std::max(worst_nested, rel);
            if (rel > 1e-10) ++bad_nested;
        }
        if (r.value_fd) {
            ++fd_checked;
            for (std::size_t c = 0; c < r.value_faa.size(); ++c) {
                double rel =
                    std::abs(r.value_faa[c] - (*r.value_fd)[c]) / (1 + std::abs(r.value_faa[c]));
                worst_fd = std::max(worst_fd, rel);
                if (rel > 1e-4) ++bad_fd;
            }
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "200 problems, worst rel %.3g", worst_nested);
    report(1, "partition sum equals nested differentiation (1e-10)", bad_nested == 0, buf);
    std::snprintf(buf, sizeof buf, "%d problems, worst rel %.3g", fd_checked, worst_fd);
    report(2, "finite-difference cross-oracle (1e-4, n<=3)", bad_fd == 0, buf);
}

void criterion_chain_rule_base_case() {
    std::mt19937 rng(1003);
    int bad = 0;
    for (int trial = 0; trial < 50; ++trial) {
        auto problem = fdb_test::random_problem(rng, 1);
        auto r = faa_di_bruno_eval(problem, false);
        // direct chain rule: delta f(g(x); delta g(x; eta))
        auto gx = eval_function(problem.g, problem.x.x);
        auto dg = gateaux_md(problem.g, problem.x, problem.dirs);
        auto direct = gateaux_md(problem.f, EvalPoint{gx}, DirectionSet{{dg}});
        if (r.terms.size() != 1) ++bad;
        for (std::size_t c = 0; c < direct.size(); ++c)
            if (!within_rel(r.value_faa[c], direct[c], 1e-12)) ++bad;
    }
    report(3, "order 1 reduces to the chain rule (1e-12)", bad == 0);
}

void criterion_total_differential() {
    std::mt19937 rng(1004);
    int bad = 0;
    for (int trial = 0; trial < 50; ++trial) {
        int slots = std::uniform_int_distribution<int>(2, 3)(rng);
        std::vector<int> slot_dims;
        int m = 0;
        for (int s = 0; s < slots; ++s) {
            slot_dims.push_back(std::uniform_int_distribution<int>(1, 2)(rng));
            m += slot_dims.back();
        }
        auto fun = fdb_test::random_function(rng, "x", m, 2);
        EvalPoint x{fdb_test::random_vector(rng, m)};
        std::vector<std::vector<double>> etas;
        for (int d : slot_dims) etas.push_back(fdb_test::random_vector(rng, d));
        auto r = total_differential_check(fun, x, slot_dims, etas);
        for (std::size_t c = 0; c < r.lhs.size(); ++c)
            if (!within_rel(r.lhs[c], r.rhs[c], 1e-12)) ++bad;
    }
    report(4, "total differential equals the sum of partials (1e-12)", bad == 0);
}

void criterion_combinatorics() {
    bool ok = true;
    const std::uint64_t known[] = {1, 1, 2, 5, 15, 52, 203, 877, 4140};
    auto oracle = fdb_test::bell_triangle_oracle(8);
    for (int n = 0; n <= 8; ++n) {
        std::uint64_t stirling_sum = 0;
        for (int k = 0; k <= n; ++k) stirling_sum += fdb_test::stirling_oracle(n, k);
        ok = ok && bell_number(n) == known[n] && stirling_sum == known[n] &&
             oracle[static_cast<std::size_t>(n)] == known[n] &&
             enumerate_partitions(n).size() == known[n];
    }
    for (int n = 0; n <= 7 && ok; ++n) {
        auto extended = extend_partitions(enumerate_partitions(n));
        std::set<std::string> got;
        for (const auto& p : extended) got.insert(p.to_rgs());
        std::set<std::string> want;
        for (const auto& p : enumerate_partitions(n + 1)) want.insert(p.to_rgs());
        ok = ok && got.size() == extended.size() && got == want;
    }
    report(5, "Bell/Stirling counts and the extension recursion", ok);
}

void criterion_classical_reduction() {
    CompositeProblem problem;
    problem.f = parse_function("exp(y1)", "y");
    problem.g = parse_function("x1^2", "x");
    problem.x = EvalPoint{{1.0}};
    problem.dirs.dirs.assign(4, {1.0});
    auto r = faa_di_bruno_eval(problem, false);
    // 4th derivative of exp(x^2) at x=1: (12+48x^2+16x^4)exp(x^2) = 76e
    const double expected = 76 * std::exp(1.0);
    bool ok = within_rel(r.value_faa[0], expected, 1e-10) && r.terms.size() == 15;
    std::map<std::vector<std::size_t>, std::vector<double>> groups;
    for (const auto& t : r.terms) {
        std::vector<std::size_t> sig;
        for (const auto& b : t.partition.blocks) sig.push_back(b.size());
        std::sort(sig.rbegin(), sig.rend());
        groups[sig].push_back(t.value[0]);
    }
    ok = ok && groups[{1, 1, 1, 1}].size() == 1 && groups[{2, 1, 1}].size() == 6 &&
         groups[{2, 2}].size() == 3 && groups[{3, 1}].size() == 4 && groups[{4}].size() == 1;
    for (const auto& [sig, values] : groups)
        for (double v : values) ok = ok && within_rel(v, values.front(), 1e-12);
    char buf[80];
    std::snprintf(buf, sizeof buf, "value %.9g, expected %.9g", r.value_faa[0], expected);
    report(6, "classical order-4 reduction with 1/6/3/4/1 multiplicities", ok, buf);
}

void criterion_induction_step() {
    std::mt19937 rng(1007);
    int bad = 0;
    for (int target = 2; target <= 4; ++target) {
        for (int trial = 0; trial < 20; ++trial) {
            auto problem = fdb_test::random_problem(rng, target);
            auto r = induction_step_check(problem);
            for (std::size_t c = 0; c < r.value_direct.size(); ++c)
                if (!within_rel(r.value_regrouped[c], r.value_direct[c], 1e-12)) ++bad;
        }
    }
    report(7, "induction regrouping at orders 1->2, 2->3, 3->4 (1e-12)", bad == 0);
}

void criterion_symmetry_multilinearity() {
    std::mt19937 rng(1008);
    int bad = 0;
    for (int trial = 0; trial < 100; ++trial) {
        int n = std::uniform_int_distribution<int>(2, 4)(rng);
        int m = std::uniform_int_distribution<int>(1, 3)(rng);
        auto fun = fdb_test::random_function(rng, "x", m, 1);
        EvalPoint x{fdb_test::random_vector(rng, m)};
        DirectionSet dirs;
        for (int i = 0; i < n; ++i) dirs.dirs.push_back(fdb_test::random_vector(rng, m));
        double base = gateaux_md(fun, x, dirs)[0];
        DirectionSet shuffled = dirs;
        std::shuffle(shuffled.dirs.begin(), shuffled.dirs.end(), rng);
        if (!within_rel(gateaux_md(fun, x, shuffled)[0], base, 1e-12)) ++bad;
    }
    for (int trial = 0; trial < 100; ++trial) {
        int n = std::uniform_int_distribution<int>(1, 3)(rng);
        int m = std::uniform_int_distribution<int>(1, 3)(rng);
        auto fun = fdb_test::random_function(rng, "x", m, 1);
        EvalPoint x{fdb_test::random_vector(rng, m)};
        DirectionSet dirs;
        for (int i = 0; i < n; ++i) dirs.dirs.push_back(fdb_test::random_vector(rng, m));
        int slot = std::uniform_int_distribution<int>(0, n - 1)(rng);
        auto u = fdb_test::random_vector(rng, m);
        auto v = fdb_test::random_vector(rng, m);
        double alpha = std::uniform_real_distribution<double>(-2.0, 2.0)(rng);
        auto with_dir = [&](const std::vector<double>& d) {
            DirectionSet ds = dirs;
            ds.dirs[static_cast<std::size_t>(slot)] = d;
            return gateaux_md(fun, x, ds)[0];
        };
        std::vector<double> sum(u.size()), scaled(u.size());
        for (std::size_t j = 0; j < u.size(); ++j) {
            sum[j] = u[j] + v[j];
            scaled[j] = alpha * u[j];
        }
        if (!within_rel(with_dir(sum), with_dir(u) + with_dir(v), 1e-12)) ++bad;
        if (!within_rel(with_dir(scaled), alpha * with_dir(u), 1e-12)) ++bad;
    }
    report(8, "direction symmetry and multilinearity (1e-12, 100 checks each)", bad == 0);
}

void criterion_cli_determinism() {
    const char* invocations[] = {
        "diff --f \"exp(y1)\" --g \"x1^2\" --point 1 --dir 1 --order 2 --method all",
        "diff --f \"exp(y1)\" --g \"x1^2\" --point 1 --dir 1 --order 4 --format json",
        "diff --f \"sin(y1)+y2^2\" --g \"x1*x2;cos(x1)\" --point 0.3,0.8 --dir 1,0 --dir 0,1 "
        "--format json",
        "diff --f \"y1*y2*y3\" --g \"x1;x1^2;exp(x1)\" --point 0.5 --dir 1 --order 3 "
        "--format text",
        "expand --order 1",
        "expand --order 5 --format json",
        "partitions --n 4 --format rgs",
        "partitions --n 6",
    };
    bool ok = true;
    for (const char* inv : invocations) {
        auto a = fdb_test::run_cli(inv);
        auto b = fdb_test::run_cli(inv);
        ok = ok && a.exit_code == 0 && a.exit_code == b.exit_code && a.output == b.output &&
             !a.output.empty();
    }
    report(9, "CLI golden suite is byte-identical across runs", ok);
}

}  // namespace

int main() {
    criterion_equivalence_and_fd();
    criterion_chain_rule_base_case();
    criterion_total_differential();
    criterion_combinatorics();
    criterion_classical_reduction();
    criterion_induction_step();
    criterion_symmetry_multilinearity();
    criterion_cli_determinism();
    if (failures) std::printf("%d criterion(s) FAILED\n", failures);
    return failures;
}

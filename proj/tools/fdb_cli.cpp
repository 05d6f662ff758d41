// Command-line front end: evaluate the n-th order differential of f(g(x)) by
// the partition sum, by nested differentiation, and by finite differences;
// print the symbolic expansion; list set partitions.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fdb/fdb.hpp"
#include "json.hpp"

using json = nlohmann::ordered_json;

namespace {

constexpr double kDefaultTolNested = 1e-10;
constexpr double kDefaultTolFd = 1e-4;

std::vector<double> parse_csv(const std::string& text, const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            double v = std::stod(item, &used);
            while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used])))
                ++used;
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw fdb::error(what + ": cannot parse '" + item + "' as a real number");
        }
    }
    if (out.empty()) throw fdb::error(what + ": empty vector");
    return out;
}

std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string fmt9(const std::vector<double>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += fmt9(v[i]);
    }
    return out + "]";
}

// max_j |a_j - b_j| / (1 + |a_j|)
double relative_discrepancy(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0;
    for (std::size_t j = 0; j < a.size(); ++j)
        m = std::max(m, std::abs(a[j] - b[j]) / (1 + std::abs(a[j])));
    return m;
}

struct DiffOptions {
    std::string f_source, g_source, point_csv;
    std::vector<std::string> dir_csvs;
    int order = 0;
    std::string method = "all";
    std::string format = "text";
    std::optional<double> tol_nested;
    std::optional<double> tol_fd;
    std::string output_path;
};

json report_to_json(const fdb::CompositeProblem& problem, const fdb::DifferentialReport& report,
                    const std::optional<double>& disc_nested, const std::optional<double>& disc_fd,
                    double tol_nested, double tol_fd, bool have_faa, bool have_nested) {
    json j;
    j["order"] = report.order;
    j["point"] = problem.x.x;
    j["directions"] = problem.dirs.dirs;
    j["methods"]["faa"] = have_faa ? json(report.value_faa) : json(nullptr);
    j["methods"]["nested"] = have_nested ? json(report.value_nested) : json(nullptr);
    j["methods"]["fd"] = report.value_fd ? json(*report.value_fd) : json(nullptr);
    j["terms"] = json::array();
    if (have_faa)
        for (const auto& t : report.terms)
            j["terms"].push_back({{"partition", t.partition.to_block_form()}, {"value", t.value}});
    j["discrepancy"]["faa_nested"] = disc_nested ? json(*disc_nested) : json(nullptr);
    j["discrepancy"]["faa_fd"] = disc_fd ? json(*disc_fd) : json(nullptr);
    j["tolerance"]["faa_nested"] = tol_nested;
    j["tolerance"]["faa_fd"] = tol_fd;
    return j;
}

int run_diff(const DiffOptions& opt) {
    fdb::CompositeProblem problem;
    problem.f = fdb::parse_function(opt.f_source, "y");
    problem.g = fdb::parse_function(opt.g_source, "x");
    problem.x = fdb::EvalPoint{parse_csv(opt.point_csv, "--point")};

    std::vector<std::vector<double>> dirs;
    for (const auto& csv : opt.dir_csvs) dirs.push_back(parse_csv(csv, "--dir"));
    if (dirs.empty()) throw fdb::error("diff: at least one --dir is required");
    int order = opt.order > 0 ? opt.order : static_cast<int>(dirs.size());
    if (dirs.size() == 1 && order > 1)
        dirs.assign(static_cast<std::size_t>(order), dirs.front());  // replicate single direction
    if (static_cast<int>(dirs.size()) != order)
        throw fdb::error("diff: got " + std::to_string(dirs.size()) + " directions but --order " +
                         std::to_string(order));
    problem.dirs.dirs = std::move(dirs);
    problem.validate();

    const bool want_faa = opt.method == "faa" || opt.method == "all";
    const bool want_nested = opt.method == "nested" || opt.method == "all";
    const bool want_fd = opt.method == "fd" || (opt.method == "all" && order <= 3);
    if (opt.method == "fd" && order > fdb::kMaxFdOrder)
        throw fdb::size_error("diff: finite differences limited to order " +
                              std::to_string(fdb::kMaxFdOrder));

    fdb::DifferentialReport report;
    report.order = order;
    if (want_faa || want_nested) {
        report = fdb::faa_di_bruno_eval(problem, want_fd);
    }
    if (want_fd && !report.value_fd) report.value_fd = fdb::fd_value(problem);

    const double tol_nested = opt.tol_nested.value_or(kDefaultTolNested);
    const double tol_fd = opt.tol_fd.value_or(kDefaultTolFd);
    std::optional<double> disc_nested, disc_fd;
    bool agree = true;
    if (want_faa && want_nested) {
        disc_nested = relative_discrepancy(report.value_faa, report.value_nested);
        agree = agree && *disc_nested <= tol_nested;
    }
    if (want_faa && want_fd && report.value_fd) {
        disc_fd = relative_discrepancy(report.value_faa, *report.value_fd);
        agree = agree && *disc_fd <= tol_fd;
    }

    json j = report_to_json(problem, report, disc_nested, disc_fd, tol_nested, tol_fd, want_faa,
                            want_nested);
    if (opt.format == "json") {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "order: " << order << "\n";
        if (want_faa) std::cout << "faa:    " << fmt9(report.value_faa) << "\n";
        if (want_nested) std::cout << "nested: " << fmt9(report.value_nested) << "\n";
        if (report.value_fd) std::cout << "fd:     " << fmt9(*report.value_fd) << "\n";
        if (want_faa)
            for (const auto& t : report.terms)
                std::cout << "term " << t.partition.to_block_form() << " = " << fmt9(t.value)
                          << "\n";
        if (disc_nested)
            std::cout << "discrepancy faa-nested: " << fmt9(*disc_nested) << " (tol "
                      << fmt9(tol_nested) << ")\n";
        if (disc_fd)
            std::cout << "discrepancy faa-fd: " << fmt9(*disc_fd) << " (tol " << fmt9(tol_fd)
                      << ")\n";
        std::cout << "agreement: " << (agree ? "ok" : "FAILED") << "\n";
    }
    if (!opt.output_path.empty()) {
        std::ofstream out(opt.output_path);
        if (!out) throw fdb::error("cannot write --output file " + opt.output_path);
        out << j.dump(2) << "\n";
    }
    return agree ? 0 : 2;
}

int run_expand(int order, const std::string& format) {
    auto terms = fdb::symbolic_expansion(order);
    if (format == "json") {
        json arr = json::array();
        for (const auto& t : terms)
            arr.push_back({{"partition", t.partition.to_block_form()},
                           {"rgs", t.partition.to_rgs()},
                           {"outer_order", t.outer_order},
                           {"text", t.text}});
        std::cout << arr.dump(2) << "\n";
    } else {
        for (const auto& t : terms) std::cout << t.text << "\n";
    }
    return 0;
}

int run_partitions(int n, const std::string& format) {
    auto parts = fdb::enumerate_partitions(n);
    if (format == "json") {
        json j;
        j["n"] = n;
        j["count"] = parts.size();
        j["partitions"] = json::array();
        for (const auto& p : parts)
            j["partitions"].push_back({{"blocks", p.to_block_form()}, {"rgs", p.to_rgs()}});
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& p : parts) {
            std::string line = format == "rgs" ? p.to_rgs() : p.to_block_form();
            if (!line.empty()) std::cout << line << "\n";
        }
        std::cout << "count=" << parts.size() << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Higher-order directional differentials of composite functions"};
    app.require_subcommand(1);

    DiffOptions opt;
    auto* diff = app.add_subcommand("diff", "evaluate the n-th differential of f(g(x))");
    diff->add_option("--f", opt.f_source, "outer function, variables y1..yp")->required();
    diff->add_option("--g", opt.g_source, "inner function, variables x1..xm")->required();
    diff->add_option("--point", opt.point_csv, "evaluation point, comma-separated")->required();
    diff->add_option("--dir", opt.dir_csvs, "direction vector, comma-separated (repeatable)")
        ->required();
    diff->add_option("--order", opt.order, "differential order (default: number of --dir)");
    diff->add_option("--method", opt.method, "faa|nested|fd|all (default all)")
        ->check(CLI::IsMember({"faa", "nested", "fd", "all"}));
    diff->add_option("--format", opt.format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));
    double tol_nested_flag = 0, tol_fd_flag = 0;
    auto* tn = diff->add_option("--tolerance", tol_nested_flag, "faa-vs-nested tolerance override");
    auto* tf = diff->add_option("--fd-tolerance", tol_fd_flag, "faa-vs-fd tolerance override");
    diff->add_option("--output", opt.output_path, "write the JSON report to this path");

    int expand_order = 0;
    std::string expand_format = "text";
    auto* expand = app.add_subcommand("expand", "print the symbolic partition-sum expansion");
    expand->add_option("--order", expand_order, "expansion order")->required();
    expand->add_option("--format", expand_format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));

    int parts_n = -1;
    std::string parts_format = "block";
    auto* partitions = app.add_subcommand("partitions", "list set partitions of {1..n}");
    partitions->add_option("--n", parts_n, "ground-set size")->required();
    partitions->add_option("--format", parts_format, "block|rgs|json")
        ->check(CLI::IsMember({"block", "rgs", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (*diff) {
            if (tn->count()) opt.tol_nested = tol_nested_flag;
            if (tf->count()) opt.tol_fd = tol_fd_flag;
            return run_diff(opt);
        }
        if (*expand) return run_expand(expand_order, expand_format);
        return run_partitions(parts_n, parts_format);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

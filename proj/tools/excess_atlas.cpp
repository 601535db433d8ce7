#include <algorithm>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "excess/asymptotics.hpp"
#include "excess/config.hpp"
#include "excess/graph_gf.hpp"
#include "excess/oracle.hpp"
#include "excess/patchworks.hpp"
#include "excess/recurrence.hpp"
#include "excess/verify.hpp"

namespace {

using excess::Int;
using excess::Rational;
using json = nlohmann::json;

constexpr const char* kSchemaVersion = "1";

// ranges come as "a..b", "a,b,c", or a single integer
std::vector<int> parse_range(const std::string& text) {
    std::vector<int> out;
    auto dots = text.find("..");
    if (dots != std::string::npos) {
        int lo = std::stoi(text.substr(0, dots));
        int hi = std::stoi(text.substr(dots + 2));
        for (int v = lo; v <= hi; ++v) out.push_back(v);
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stoi(item));
    }
    return out;
}

struct TableSink {
    std::string format;  // text, csv, json
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    json params = json::object();

    void emit(std::ostream& os) const {
        if (format == "json") {
            json doc;
            doc["schema_version"] = kSchemaVersion;
            doc["params"] = params;
            json jrows = json::array();
            for (const auto& row : rows) {
                json r = json::object();
                for (size_t i = 0; i < header.size(); ++i) r[header[i]] = row[i];
                jrows.push_back(r);
            }
            doc["rows"] = jrows;
            os << doc.dump(2) << "\n";
        } else if (format == "csv") {
            for (size_t i = 0; i < header.size(); ++i)
                os << header[i] << (i + 1 < header.size() ? "," : "\n");
            for (const auto& row : rows)
                for (size_t i = 0; i < row.size(); ++i)
                    os << row[i] << (i + 1 < row.size() ? "," : "\n");
        } else {
            for (size_t i = 0; i < header.size(); ++i)
                os << header[i] << (i + 1 < header.size() ? "\t" : "\n");
            for (const auto& row : rows)
                for (size_t i = 0; i < row.size(); ++i)
                    os << row[i] << (i + 1 < row.size() ? "\t" : "\n");
        }
    }
};

std::string fmt_double(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

Int count_via_gf(int n, int k) {
    const excess::ExcessIndexedSeries& csg =
        excess::cached_connected_series(std::max(n, 1), std::max(k, 0));
    return excess::egf_count(csg.at(k), n);
}

int run_count(int n, int k, const std::string& method, bool all_methods, bool large_oracle,
              int threads) {
    long pairs = static_cast<long>(n) * (n - 1) / 2;
    long m = static_cast<long>(n) + k;
    if (k < -1 || m < 0 || m > pairs) {
        std::cout << 0 << "\n";
        return 0;
    }
    std::map<std::string, Int> results;
    std::vector<std::string> methods =
        all_methods ? std::vector<std::string>{"gf", "recurrence", "oracle"}
                    : std::vector<std::string>{method};
    for (const auto& name : methods) {
        if (name == "gf") {
            results["gf"] = count_via_gf(n, k);
        } else if (name == "recurrence") {
            results["recurrence"] = excess::connected_recurrence_count(n, static_cast<int>(m));
        } else if (name == "oracle") {
            if (n > excess::caps().max_oracle_n || (n == 8 && !large_oracle)) {
                if (all_methods) continue;  // skip the scan when not opted in
                throw CLI::ValidationError("count", "oracle method needs n <= 7 (or --large-oracle)");
            }
            excess::GraphCountTable t =
                excess::enum_graphs(n, {excess::GraphPredicate::Connected}, large_oracle, threads);
            results["oracle"] = t.row(excess::GraphPredicate::Connected)[static_cast<size_t>(m)];
        } else {
            throw CLI::ValidationError("count", "unknown method: " + name);
        }
    }
    bool agree = true;
    const Int& first = results.begin()->second;
    for (const auto& [name, value] : results) agree = agree && value == first;
    if (!agree) {
        std::cerr << "method disagreement:";
        for (const auto& [name, value] : results)
            std::cerr << " " << name << "=" << excess::to_string(value);
        std::cerr << "\n";
        return 1;
    }
    if (all_methods) {
        for (const auto& [name, value] : results)
            std::cout << name << " " << excess::to_string(value) << "\n";
    } else {
        std::cout << excess::to_string(first) << "\n";
    }
    return 0;
}

int run_series(const std::string& kind, int k, int order, const std::string& format) {
    TableSink sink;
    sink.format = format;
    sink.params = {{"kind", kind}, {"k", k}, {"order", order}};
    sink.header = {"n", "coefficient", "count"};
    excess::Series s(order);
    if (kind == "tree") {
        s = excess::tree_series(order);
    } else if (kind == "mv") {
        s = excess::unicycle_series(order).mv;
    } else if (kind == "v") {
        s = excess::unicycle_series(order).v;
    } else if (kind == "csg") {
        s = excess::cached_connected_series(order, std::max(k, 0)).at(k);
    } else if (kind == "sgpos") {
        s = excess::cached_sgpos_series(std::max(k, 1), order).at(k);
    } else if (kind == "mgpos") {
        s = excess::mgpos_series(k, order);
    } else if (kind == "mcore") {
        s = excess::mcore_series(k, order);
    } else if (kind == "core") {
        s = excess::cached_core_series(order, std::max(k, 0)).at(k);
    } else {
        throw CLI::ValidationError("series", "unknown kind: " + kind);
    }
    for (int n = 0; n <= order; ++n) {
        Rational scaled = s[n] * Rational(excess::factorial(static_cast<unsigned long>(n)));
        sink.rows.push_back({std::to_string(n), excess::to_string(s[n]),
                             excess::is_integer(scaled) ? excess::to_string(Int(scaled.get_num()))
                                                        : excess::to_string(scaled)});
    }
    sink.emit(std::cout);
    return 0;
}

int run_asymptotic(int n, int k, bool with_ratio, const std::string& format) {
    double ratio = static_cast<double>(k) / n;
    excess::SaddlePoint sp = excess::solve_saddle(ratio);
    excess::LogMagnitude dom = excess::dominant_term_log(n, k);
    json record;
    record["schema_version"] = kSchemaVersion;
    record["n"] = n;
    record["k"] = k;
    record["ratio"] = ratio;
    record["lambda"] = sp.lambda;
    record["zeta"] = sp.zeta;
    record["tree_at_zeta"] = sp.tzeta;
    record["log10_dominant"] = dom.log10_abs();
    if (with_ratio) {
        excess::ConnectedCountTable table(n, n + k);
        record["exact_over_dominant"] = excess::exact_over_dominant(table, n, k);
    }
    if (format == "text") {
        for (auto it = record.begin(); it != record.end(); ++it)
            std::cout << it.key() << "\t" << it.value().dump() << "\n";
    } else {
        std::cout << record.dump(2) << "\n";
    }
    return 0;
}

int run_table(const std::string& kind, const std::string& n_range, const std::string& k_range,
              const std::string& ratio_text, const std::string& format) {
    TableSink sink;
    sink.format = format;
    sink.params = {{"kind", kind}};

    if (kind == "csg") {
        std::vector<int> ns = parse_range(n_range), ks = parse_range(k_range);
        sink.params["n"] = n_range;
        sink.params["k"] = k_range;
        sink.header = {"n", "k", "count"};
        int n_max = *std::max_element(ns.begin(), ns.end());
        int k_max = std::max(0, *std::max_element(ks.begin(), ks.end()));
        const excess::ExcessIndexedSeries& csg = excess::cached_connected_series(n_max, k_max);
        for (int n : ns)
            for (int k : ks) {
                long m = static_cast<long>(n) + k;
                Int value(0);
                if (k >= -1 && m >= 0 && m <= static_cast<long>(n) * (n - 1) / 2)
                    value = excess::egf_count(csg.at(k), n);
                sink.rows.push_back({std::to_string(n), std::to_string(k), excess::to_string(value)});
            }
    } else if (kind == "core" || kind == "sgpos") {
        std::vector<int> ns = parse_range(n_range), ks = parse_range(k_range);
        sink.params["n"] = n_range;
        sink.params["k"] = k_range;
        sink.header = {"n", "k", "count"};
        int n_max = *std::max_element(ns.begin(), ns.end());
        int k_max = *std::max_element(ks.begin(), ks.end());
        if (kind == "core") {
            const excess::ExcessIndexedSeries& core = excess::cached_core_series(n_max, k_max);
            for (int n : ns)
                for (int k : ks)
                    sink.rows.push_back({std::to_string(n), std::to_string(k),
                                         excess::to_string(excess::egf_count(core.at(k), n))});
        } else {
            const excess::ExcessIndexedSeries& sg =
                excess::cached_sgpos_series(std::max(k_max, 1), n_max);
            for (int n : ns)
                for (int k : ks)
                    sink.rows.push_back({std::to_string(n), std::to_string(k),
                                         excess::to_string(excess::egf_count(sg.at(k), n))});
        }
    } else if (kind == "ratio") {
        std::vector<int> ns = parse_range(n_range);
        sink.params["n"] = n_range;
        sink.params["ratio"] = ratio_text;
        sink.header = {"n", "k", "exact_over_dominant"};
        Rational ratio(ratio_text);
        ratio.canonicalize();
        int n_max = 0, m_max = 0;
        std::vector<std::pair<int, int>> cells;
        for (int n : ns) {
            Rational kr = ratio * n;
            if (!excess::is_integer(kr))
                throw CLI::ValidationError("table", "ratio*n must be integral");
            int k = static_cast<int>(kr.get_num().get_si());
            cells.push_back({n, k});
            n_max = std::max(n_max, n);
            m_max = std::max(m_max, n + k);
        }
        excess::ConnectedCountTable table(n_max, m_max);
        for (auto [n, k] : cells)
            sink.rows.push_back({std::to_string(n), std::to_string(k),
                                 fmt_double(excess::exact_over_dominant(table, n, k))});
    } else if (kind == "wright") {
        std::vector<int> ks = parse_range(k_range);
        sink.params["k"] = k_range;
        sink.header = {"k", "degree", "coefficients"};
        for (int k : ks) {
            excess::WrightPolynomial q = excess::wright_polynomial(k);
            std::string coeffs;
            for (size_t j = 0; j < q.coeffs.size(); ++j) {
                coeffs += excess::to_string(q.coeffs[j]);
                if (j + 1 < q.coeffs.size()) coeffs += ";";
            }
            sink.rows.push_back({std::to_string(k), std::to_string(q.degree()), coeffs});
        }
    } else if (kind == "patchwork") {
        std::vector<int> ls = parse_range(k_range);
        sink.params["excess"] = k_range;
        sink.header = {"excess", "z_degree", "u_degree", "coefficient"};
        for (int l : ls) {
            const excess::PatchworkPolynomial& p = excess::cached_patchwork_star(l);
            for (int d = 0; d <= p.z_degree(); ++d)
                for (int t = 0; t <= p.u_degree(); ++t) {
                    Rational c = p.coeff(d, t);
                    if (c == 0) continue;
                    sink.rows.push_back({std::to_string(l), std::to_string(d), std::to_string(t),
                                         excess::to_string(c)});
                }
        }
    } else {
        throw CLI::ValidationError("table", "unknown kind: " + kind);
    }
    sink.emit(std::cout);
    return 0;
}

int run_verify(const std::string& suite, bool deep, const std::string& format) {
    std::vector<excess::VerifyReport> reports;
    if (suite == "all") {
        reports = excess::verify_all(deep);
    } else {
        reports.push_back(excess::verify_suite(suite, deep));
    }
    bool all_ok = true;
    if (format == "json") {
        json doc;
        doc["schema_version"] = kSchemaVersion;
        doc["params"] = {{"suite", suite}, {"deep", deep}};
        json jsuites = json::array();
        for (const auto& rep : reports) {
            json js;
            js["suite"] = rep.suite;
            js["checks"] = json::array();
            for (const auto& c : rep.checks) {
                js["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
                all_ok = all_ok && c.pass;
            }
            jsuites.push_back(js);
        }
        doc["rows"] = jsuites;
        std::cout << doc.dump(2) << "\n";
    } else {
        for (const auto& rep : reports) {
            std::cout << "suite " << rep.suite << "\n";
            for (const auto& c : rep.checks) {
                std::cout << "  " << c.name << ": " << (c.pass ? "OK" : "FAIL");
                if (!c.pass && !c.detail.empty()) std::cout << "  [" << c.detail << "]";
                std::cout << "\n";
                all_ok = all_ok && c.pass;
            }
        }
        std::cout << (all_ok ? "all checks passed" : "FAILURES present") << "\n";
    }
    return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact and asymptotic enumeration of connected graphs by excess"};
    app.require_subcommand(1);
    app.fallthrough();  // --format/--threads may follow the subcommand

    std::string format = "text";
    int threads = 0;
    app.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"text", "csv", "json"}));
    app.add_option("--threads", threads, "Cap worker threads (0 = hardware)");

    auto* count = app.add_subcommand("count", "Connected graph count for (n, k)");
    int cn = 0, ck = 0;
    std::string method = "recurrence";
    bool all_methods = false, large_oracle = false;
    count->add_option("--n", cn, "Vertex count")->required();
    count->add_option("--k", ck, "Excess (edges minus vertices)")->required();
    count->add_option("--method", method, "gf, recurrence, or oracle")
        ->check(CLI::IsMember({"gf", "recurrence", "oracle"}));
    count->add_flag("--all-methods", all_methods, "Run every method and require agreement");
    count->add_flag("--large-oracle", large_oracle, "Allow the n = 8 exhaustive scan");

    auto* series = app.add_subcommand("series", "Print one series' coefficients");
    std::string s_kind = "tree";
    int s_k = 0, s_order = 16;
    series->add_option("--kind", s_kind, "tree, mv, v, csg, sgpos, mgpos, mcore, core")->required();
    series->add_option("--k", s_k, "Excess index (for indexed kinds)");
    series->add_option("--order", s_order, "Truncation order")->check(CLI::Range(0, 512));

    auto* asym = app.add_subcommand("asymptotic", "Saddle point and dominant term");
    int an = 0, ak = 0;
    bool with_ratio = false;
    asym->add_option("--n", an, "Vertex count")->required();
    asym->add_option("--k", ak, "Excess")->required();
    asym->add_flag("--with-ratio", with_ratio, "Also compute the exact/asymptotic ratio");

    auto* table = app.add_subcommand("table", "Tabulate counts, ratios, or polynomials");
    std::string t_kind, t_n = "1..7", t_k = "0..1", t_ratio = "1";
    table->add_option("--kind", t_kind, "csg, core, sgpos, ratio, wright, patchwork")->required();
    table->add_option("--n", t_n, "n range (a..b or comma list)");
    table->add_option("--k", t_k, "k range (a..b or comma list); excess range for patchwork");
    table->add_option("--ratio", t_ratio, "Excess ratio k/n for ratio tables");

    auto* verify = app.add_subcommand("verify", "Run a verification suite");
    std::string v_suite = "all";
    bool v_deep = false;
    verify->add_option("--suite", v_suite, "series, patchworks, identities, asymptotics, appendix, all")
        ->check(CLI::IsMember({"series", "patchworks", "identities", "asymptotics", "appendix", "all"}));
    verify->add_flag("--deep", v_deep, "Include the long-running convergence checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (count->parsed()) return run_count(cn, ck, method, all_methods, large_oracle, threads);
        if (series->parsed()) return run_series(s_kind, s_k, s_order, format);
        if (asym->parsed()) {
            if (an < 1 || ak < 1) {
                std::cerr << "asymptotic: requires n >= 1 and k >= 1 (positive-ratio regime)\n";
                return 2;
            }
            return run_asymptotic(an, ak, with_ratio, format);
        }
        if (table->parsed()) return run_table(t_kind, t_n, t_k, t_ratio, format);
        if (verify->parsed()) return run_verify(v_suite, v_deep, format);
    } catch (const excess::identity_violation& e) {
        std::cerr << "identity violation: " << e.what() << "\n";
        return 1;
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

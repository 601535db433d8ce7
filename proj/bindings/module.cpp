#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "excess/asymptotics.hpp"
#include "excess/graph_gf.hpp"
#include "excess/oracle.hpp"
#include "excess/patchworks.hpp"
#include "excess/recurrence.hpp"
#include "excess/verify.hpp"

namespace py = pybind11;
using namespace excess;

namespace {

py::object to_py_int(const Int& v) {
    return py::module_::import("builtins").attr("int")(v.get_str());
}

py::object to_py_fraction(const Rational& v) {
    return py::module_::import("fractions").attr("Fraction")(to_string(v));
}

py::list series_counts(const Series& s) {
    py::list out;
    for (int n = 0; n <= s.order(); ++n)
        out.append(to_py_int(egf_count(s, n)));
    return out;
}

py::list series_fractions(const Series& s) {
    py::list out;
    for (int n = 0; n <= s.order(); ++n) out.append(to_py_fraction(s[n]));
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact and asymptotic enumeration of connected graphs by excess";

    m.def(
        "count",
        [](int n, int k, const std::string& method) {
            long pairs = static_cast<long>(n) * (n - 1) / 2;
            long edges = static_cast<long>(n) + k;
            if (k < -1 || edges < 0 || edges > pairs) return to_py_int(Int(0));
            if (method == "recurrence")
                return to_py_int(connected_recurrence_count(n, static_cast<int>(edges)));
            if (method == "gf")
                return to_py_int(
                    egf_count(cached_connected_series(n, std::max(k, 0)).at(k), n));
            if (method == "oracle") {
                GraphCountTable t = enum_graphs(n, {GraphPredicate::Connected});
                return to_py_int(t.row(GraphPredicate::Connected)[static_cast<size_t>(edges)]);
            }
            throw std::invalid_argument("method must be gf, recurrence, or oracle");
        },
        py::arg("n"), py::arg("k"), py::arg("method") = "recurrence",
        "Number of connected labeled graphs with n vertices and n+k edges");

    m.def(
        "tree_counts",
        [](int n_max) { return series_counts(tree_series(n_max)); },
        py::arg("n_max"), "Rooted labeled tree counts n^{n-1} for n = 0..n_max");

    m.def(
        "connected_counts",
        [](int n_max, int k) { return series_counts(cached_connected_series(n_max, std::max(k, 0)).at(k)); },
        py::arg("n_max"), py::arg("k"),
        "Connected counts with excess k for n = 0..n_max");

    m.def(
        "core_counts",
        [](int n_max, int k) { return series_counts(cached_core_series(n_max, k).at(k)); },
        py::arg("n_max"), py::arg("k"),
        "Counts of graphs with minimum degree >= 2 and excess k");

    m.def(
        "sgpos_counts",
        [](int n_max, int k) {
            return series_counts(cached_sgpos_series(std::max(k, 1), n_max).at(k));
        },
        py::arg("n_max"), py::arg("k"),
        "Counts of graphs whose components all have positive excess");

    m.def(
        "mgpos_weights",
        [](int n_max, int k) { return series_fractions(mgpos_series(k, n_max)); },
        py::arg("n_max"), py::arg("k"), "Weighted multigraph majorant coefficients");

    m.def(
        "wright_coefficients",
        [](int k) {
            py::list out;
            for (const auto& c : wright_polynomial(k).coeffs) out.append(to_py_fraction(c));
            return out;
        },
        py::arg("k"), "Coefficients of the numerator polynomial in the tree variable");

    m.def(
        "solve_saddle",
        [](double ratio) {
            SaddlePoint sp = solve_saddle(ratio);
            py::dict d;
            d["ratio"] = sp.ratio;
            d["lambda"] = sp.lambda;
            d["zeta"] = sp.zeta;
            d["tree_at_zeta"] = sp.tzeta;
            d["lambda_residual"] = sp.lambda_residual;
            d["saddle_residuals"] = py::make_tuple(sp.saddle_residuals[0], sp.saddle_residuals[1]);
            return d;
        },
        py::arg("ratio"), "Solve the saddle equations for the excess ratio k/n");

    m.def(
        "dominant_log10",
        [](long n, long k) { return dominant_term_log(n, k).log10_abs(); },
        py::arg("n"), py::arg("k"), "log10 of the dominant asymptotic term");

    m.def(
        "exact_over_dominant",
        [](int n, int k) {
            ConnectedCountTable table(n, n + k);
            return exact_over_dominant(table, n, k);
        },
        py::arg("n"), py::arg("k"), "Exact count divided by the dominant term");

    m.def(
        "c1_fit",
        [](const std::string& ratio, const std::vector<int>& n_list) {
            Rational r(ratio);
            r.canonicalize();
            return c1_fit(r, n_list);
        },
        py::arg("ratio"), py::arg("n_list"),
        "Extrapolated first-order correction at the given excess ratio");

    m.def(
        "s_value",
        [](int q, int d, int k) { return to_py_fraction(s_value(q, d, k).value); },
        py::arg("q"), py::arg("d"), py::arg("k"),
        "Normalized double-factorial composition sum S_{q,d,k}");

    m.def(
        "verify",
        [](const std::string& suite, bool deep) {
            VerifyReport rep = verify_suite(suite, deep);
            py::list out;
            for (const auto& c : rep.checks) out.append(py::make_tuple(c.name, c.pass, c.detail));
            return out;
        },
        py::arg("suite"), py::arg("deep") = false,
        "Run a verification suite; returns (name, pass, detail) tuples");

#ifdef VERSION_INFO
    m.attr("__version__") = VERSION_INFO;
#else
    m.attr("__version__") = "dev";
#endif
}

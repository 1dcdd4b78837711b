// figures.hpp — writes the reference parameter-sweep data sets as CSV files
// with JSON metadata sidecars. Parameter settings are baked in; axis ranges
// not fixed by the reference are recorded in the metadata.

#pragma once

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qsl/sweep.hpp"

namespace qsl::sweep {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline const std::vector<std::string>& figure_names() {
    static const std::vector<std::string> names = {
        "fig1a", "fig1b", "fig2", "fig3", "fig4", "fig5", "fig6a", "fig6b"};
    return names;
}

namespace detail {

inline void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw IoError("write failed on '" + path + "'");
}

inline std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i)
        v[i] = n == 1 ? lo : lo + i * (hi - lo) / (n - 1);
    return v;
}

struct FigureSink {
    std::string csv;
    nlohmann::ordered_json meta;
    std::chrono::steady_clock::time_point t0 =
        std::chrono::steady_clock::now();

    explicit FigureSink(const std::string& name) {
        meta["figure"] = name;
        meta["version"] = QSL_VERSION;
    }

    void header(const std::vector<std::string>& cols) {
        for (std::size_t i = 0; i < cols.size(); ++i) {
            if (i) csv += ',';
            csv += cols[i];
        }
        csv += '\n';
    }

    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) csv += ',';
            csv += cells[i];
        }
        csv += '\n';
    }

    void axis(const std::string& name, double lo, double hi, int n) {
        meta["axes"].push_back(
            {{"name", name}, {"min", lo}, {"max", hi}, {"count", n}});
    }

    std::vector<std::string> finish(const std::filesystem::path& dir,
                                    const std::string& stem) {
        namespace fs = std::filesystem;
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec) throw IoError("cannot create directory '" + dir.string() + "'");
        const std::string csv_path = (dir / (stem + ".csv")).string();
        const std::string meta_path = (dir / (stem + ".meta.json")).string();
        meta["wall_time_ms"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0)
                .count();
        meta["files"] = {csv_path, meta_path};
        write_text(csv_path, csv);
        write_text(meta_path, meta.dump(2) + "\n");
        return {csv_path, meta_path};
    }
};

// 2-D grids of the closed-form J-C bounds at lambda = 15, t = 1.
inline std::vector<std::string> figure_jc_surface(const std::string& name,
                                                  const std::string& out_dir,
                                                  double tol, BoundKind kind) {
    const int n = 201;
    const auto g0 = linspace(0.1, 20.0, n);
    const auto al = linspace(0.0, 1.0, n);
    FigureSink sink(name);
    sink.meta["model"] = "jc";
    sink.meta["parameters"] = {{"lambda", 15.0}, {"time", 1.0}, {"tol", tol}};
    sink.axis("gamma0", 0.1, 20.0, n);
    sink.axis("alpha", 0.0, 1.0, n);
    sink.header({"gamma0", "alpha",
                 kind == BoundKind::ml ? "t_ml" : "t_ni"});

    std::vector<double> vals(static_cast<std::size_t>(n) * n);
    detail::parallel_for_index(vals.size(), [&](std::size_t idx) {
        const JcParams p(15.0, g0[idx / n]);
        const PureQubit psi0(al[idx % n]);
        vals[idx] = kind == BoundKind::ml
                        ? ml_qsl_jc(1.0, psi0, p, tol).bound
                        : ni_qsl_jc(1.0, psi0, p, tol).bound;
    });
    for (std::size_t idx = 0; idx < vals.size(); ++idx)
        sink.row({fmt12(g0[idx / n]), fmt12(al[idx % n]), fmt12(vals[idx])});
    return sink.finish(out_dir, name);
}

inline std::vector<std::string> figure2(const std::string& out_dir,
                                        double tol) {
    const int n = 201;
    const auto g0 = linspace(0.1, 20.0, n);
    FigureSink sink("fig2");
    sink.meta["model"] = "jc";
    sink.meta["parameters"] = {{"lambda", 15.0},
                               {"alpha", std::numbers::sqrt2 / 2.0},
                               {"time", 1.0},
                               {"tol", tol}};
    sink.axis("gamma0", 0.1, 20.0, n);
    sink.header({"gamma0", "t_ml", "t_ni", "actual_time"});

    std::vector<std::pair<double, double>> vals(n);
    detail::parallel_for_index(vals.size(), [&](std::size_t idx) {
        const JcParams p(15.0, g0[idx]);
        const PureQubit psi0(std::numbers::sqrt2 / 2.0);
        vals[idx] = {ml_qsl_jc(1.0, psi0, p, tol).bound,
                     ni_qsl_jc(1.0, psi0, p, tol).bound};
    });
    for (int i = 0; i < n; ++i)
        sink.row({fmt12(g0[i]), fmt12(vals[i].first), fmt12(vals[i].second),
                  fmt12(1.0)});
    return sink.finish(out_dir, "fig2");
}

inline std::vector<std::string> figure3(const std::string& out_dir) {
    const int n = 201;
    const auto ss = linspace(0.05, 6.0, n);
    const auto ts = linspace(0.05, 10.0, n);
    FigureSink sink("fig3");
    sink.meta["model"] = "dephasing";
    sink.meta["parameters"] = nlohmann::ordered_json::object();
    sink.axis("s", 0.05, 6.0, n);
    sink.axis("t", 0.05, 10.0, n);
    sink.header({"s", "t", "rate_sign"});
    for (double s : ss)
        for (double t : ts)
            sink.row({fmt12(s), fmt12(t), to_string(rate_sign(s, t))});
    return sink.finish(out_dir, "fig3");
}

inline std::vector<std::string> figure4(const std::string& out_dir,
                                        double tol) {
    const int n = 201;
    const auto ss = linspace(2.0, 4.0, n);
    const auto es = linspace(0.1, 1.0, n);
    // upper layer: beta = 1/sqrt(2) (2 b sqrt(1-b^2) = 1);
    // lower layer: 2 b sqrt(1-b^2) = 0.5, i.e. beta = sin(pi/12)
    const PureQubit upper(std::numbers::sqrt2 / 2.0);
    const PureQubit lower(std::sin(std::numbers::pi / 12.0));
    FigureSink sink("fig4");
    sink.meta["model"] = "dephasing";
    sink.meta["parameters"] = {{"time", 3.0},
                               {"beta_upper", upper.excited_amp},
                               {"beta_lower", lower.excited_amp},
                               {"tol", tol}};
    sink.axis("s", 2.0, 4.0, n);
    sink.axis("eta", 0.1, 1.0, n);
    sink.header({"s", "eta", "t_ml_upper", "t_ml_lower"});

    std::vector<std::pair<double, double>> vals(static_cast<std::size_t>(n) *
                                                n);
    detail::parallel_for_index(vals.size(), [&](std::size_t idx) {
        const DephasingParams p(ss[idx / n], es[idx % n]);
        vals[idx] = {ml_qsl_dephasing(3.0, upper, p, tol).bound,
                     ml_qsl_dephasing(3.0, lower, p, tol).bound};
    });
    for (std::size_t idx = 0; idx < vals.size(); ++idx)
        sink.row({fmt12(ss[idx / n]), fmt12(es[idx % n]),
                  fmt12(vals[idx].first), fmt12(vals[idx].second)});
    return sink.finish(out_dir, "fig4");
}

inline std::vector<std::string> figure5(const std::string& out_dir,
                                        Horizon horizon) {
    const int n = 201;
    const auto g0 = linspace(0.1, 20.0, n);
    FigureSink sink("fig5");
    sink.meta["model"] = "jc";
    sink.meta["parameters"] = {{"lambda", 15.0}, {"horizon", horizon.str()}};
    sink.axis("gamma0", 0.1, 20.0, n);
    sink.header({"gamma0", "blp_raw", "blp_normalized"});

    std::vector<double> raw(n);
    for (int i = 0; i < n; ++i) {
        const JcParams p(15.0, g0[i]);
        raw[i] = blp_nonmarkovianity(
            p, horizon.automatic ? std::optional<double>{}
                                 : std::optional<double>{horizon.value});
    }
    const double peak = *std::max_element(raw.begin(), raw.end());
    sink.meta["normalization"] = {{"max_raw", peak}};
    for (int i = 0; i < n; ++i)
        sink.row({fmt12(g0[i]), fmt12(raw[i]),
                  fmt12(peak > 0.0 ? raw[i] / peak : 0.0)});
    return sink.finish(out_dir, "fig5");
}

inline std::vector<std::string> figure6(const std::string& name,
                                        const std::string& out_dir) {
    const bool panel_a = name == "fig6a";
    const int n = 201;
    const auto ss = linspace(0.05, 6.0, n);
    const auto ys =
        panel_a ? linspace(0.05, 10.0, n) : linspace(0.1, 1.0, n);
    FigureSink sink(name);
    sink.meta["model"] = "dephasing";
    if (panel_a)
        sink.meta["parameters"] = {{"eta", 0.6}};
    else
        sink.meta["parameters"] = {{"time", 3.0}, {"horizon", 3.0}};
    sink.axis("s", 0.05, 6.0, n);
    if (panel_a)
        sink.axis("t", 0.05, 10.0, n);
    else
        sink.axis("eta", 0.1, 1.0, n);
    sink.header({"s", panel_a ? "t" : "eta", "capacity_nm_raw",
                 "capacity_nm_normalized"});

    std::vector<double> raw(static_cast<std::size_t>(n) * n);
    detail::parallel_for_index(raw.size(), [&](std::size_t idx) {
        const double s = ss[idx / n], y = ys[idx % n];
        const DephasingParams p(s, panel_a ? 0.6 : y);
        raw[idx] = capacity_nonmarkovianity(p, panel_a ? y : 3.0);
    });
    const double peak = *std::max_element(raw.begin(), raw.end());
    sink.meta["normalization"] = {{"max_raw", peak}};
    for (std::size_t idx = 0; idx < raw.size(); ++idx)
        sink.row({fmt12(ss[idx / n]), fmt12(ys[idx % n]), fmt12(raw[idx]),
                  fmt12(peak > 0.0 ? raw[idx] / peak : 0.0)});
    return sink.finish(out_dir, name);
}

}  // namespace detail

/// Writes the named panel's CSV (and metadata sidecar) into out_dir and
/// returns the written paths. `horizon` only affects fig5.
inline std::vector<std::string> reproduce_figure(const std::string& name,
                                                 const std::string& out_dir,
                                                 double tol = 1e-10,
                                                 Horizon horizon = {}) {
    if (name == "fig1a")
        return detail::figure_jc_surface("fig1a", out_dir, tol, BoundKind::ml);
    if (name == "fig1b")
        return detail::figure_jc_surface("fig1b", out_dir, tol, BoundKind::ni);
    if (name == "fig2") return detail::figure2(out_dir, tol);
    if (name == "fig3") return detail::figure3(out_dir);
    if (name == "fig4") return detail::figure4(out_dir, tol);
    if (name == "fig5") return detail::figure5(out_dir, horizon);
    if (name == "fig6a" || name == "fig6b")
        return detail::figure6(name, out_dir);
    throw std::invalid_argument("unknown figure '" + name +
                                "' (expected fig1a..fig6b)");
}

}  // namespace qsl::sweep

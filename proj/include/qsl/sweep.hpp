// sweep.hpp — grid evaluation over the model parameters, deterministic CSV
// emission with JSON metadata sidecars, and reproduction of the reference
// parameter-sweep figures.

#pragma once

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <mutex>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "qsl/core.hpp"
#include "qsl/dephasing.hpp"
#include "qsl/jc.hpp"

#define QSL_VERSION "0.1.0"

namespace qsl::sweep {

/// Shortest round-trip decimal representation, capped at 12 significant
/// digits. CSV output is byte-identical across runs by construction.
inline std::string fmt12(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    std::string shortest(buf, res.ptr);
    int sig = 0;
    bool counting = false;
    for (char c : shortest) {
        if (c == 'e' || c == 'E') break;
        if (c >= '1' && c <= '9') counting = true;
        if (counting && c >= '0' && c <= '9') ++sig;
    }
    if (sig <= 12) return shortest;
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

/// One sweep axis: `count` evenly spaced grid points from min to max.
struct AxisSpec {
    std::string name;
    double min = 0.0;
    double max = 0.0;
    int count = 1;

    AxisSpec(std::string name_, double min_, double max_, int count_)
        : name(std::move(name_)), min(min_), max(max_), count(count_) {
        if (count < 1)
            throw std::invalid_argument("axis " + name + ": count < 1");
        if (!(min <= max))
            throw std::invalid_argument("axis " + name + ": min > max");
        if (count == 1 && min != max)
            throw std::invalid_argument("axis " + name +
                                        ": count = 1 requires min == max");
    }

    double at(int i) const {
        if (count == 1) return min;
        return min + i * (max - min) / (count - 1);
    }
};

enum class Model { jc, dephasing };
enum class MethodSel { closed, generic, both };

inline const char* to_string(Model m) {
    return m == Model::jc ? "jc" : "dephasing";
}
inline const char* to_string(MethodSel m) {
    switch (m) {
        case MethodSel::closed: return "closed";
        case MethodSel::generic: return "generic";
        default: return "both";
    }
}

/// Horizon for the non-Markovianity column: automatic (envelope cutoff for
/// the damped J-C model, the evolution time for dephasing) or a fixed value.
struct Horizon {
    bool automatic = true;
    double value = 0.0;

    static Horizon fixed(double v) { return Horizon{false, v}; }
    std::string str() const { return automatic ? "auto" : fmt12(value); }
};

/// Fully resolved configuration of one evaluation (or the base point of a
/// sweep; axis coordinates override the matching fields per grid point).
struct RunConfig {
    Model model = Model::jc;
    bool want_ml = true;
    bool want_ni = false;
    bool want_xu = false;
    MethodSel method = MethodSel::closed;
    double lambda = 15.0;
    double gamma0 = 1.0;
    double s = 1.0;
    double eta = 0.6;
    double state_amp = std::numbers::sqrt2 / 2.0;  // alpha (jc) / beta (dephasing)
    double theta = 0.0;
    double time = 1.0;
    double tol = 1e-10;
    Horizon horizon;
};

/// One emitted row: the swept coordinates, one formatted cell per result
/// column, and an error message when evaluation of this point failed.
struct OutputRow {
    std::vector<double> coords;
    std::vector<std::string> cells;
    std::string error;
};

namespace detail {

inline void apply_coordinate(RunConfig& cfg, const std::string& name,
                             double v) {
    if (name == "lambda") cfg.lambda = v;
    else if (name == "gamma0") cfg.gamma0 = v;
    else if (name == "s") cfg.s = v;
    else if (name == "eta") cfg.eta = v;
    else if (name == "alpha" || name == "beta") cfg.state_amp = v;
    else if (name == "theta") cfg.theta = v;
    else if (name == "time") cfg.time = v;
    else throw std::invalid_argument("unknown axis '" + name + "'");
}

inline bool axis_valid_for(Model m, const std::string& name) {
    if (name == "theta" || name == "time") return true;
    if (m == Model::jc)
        return name == "lambda" || name == "gamma0" || name == "alpha";
    return name == "s" || name == "eta" || name == "beta";
}

struct KindPlan {
    BoundKind kind;
    bool closed = false;
    bool generic = false;
};

inline std::vector<KindPlan> plan_kinds(const RunConfig& cfg) {
    std::vector<KindPlan> plan;
    const bool closed =
        cfg.method == MethodSel::closed || cfg.method == MethodSel::both;
    const bool generic =
        cfg.method == MethodSel::generic || cfg.method == MethodSel::both;
    if (cfg.want_ml) plan.push_back({BoundKind::ml, closed, generic});
    if (cfg.want_ni) plan.push_back({BoundKind::ni, closed, generic});
    if (cfg.want_xu && cfg.model == Model::jc)
        plan.push_back({BoundKind::xu, true, false});  // single closed route
    return plan;
}

}  // namespace detail

/// Constraint violations of a configuration; empty means valid.
inline std::vector<std::string> validate(const RunConfig& cfg) {
    std::vector<std::string> bad;
    if (cfg.model == Model::jc) {
        if (!(cfg.lambda > 0.0)) bad.push_back("lambda must be > 0");
        if (!(cfg.gamma0 > 0.0)) bad.push_back("gamma0 must be > 0");
    } else {
        if (!(cfg.s > 0.0)) bad.push_back("s must be > 0");
        if (!(cfg.eta > 0.0)) bad.push_back("eta must be > 0");
        if (cfg.want_xu) bad.push_back("bound 'xu' is only valid for model jc");
    }
    if (!(std::abs(cfg.state_amp) <= 1.0))
        bad.push_back("state amplitude must lie in [-1, 1]");
    if (!(cfg.time > 0.0)) bad.push_back("time must be > 0");
    if (!(cfg.tol > 0.0)) bad.push_back("tol must be > 0");
    if (!cfg.horizon.automatic && !(cfg.horizon.value > 0.0))
        bad.push_back("horizon must be > 0 or 'auto'");
    if (cfg.model == Model::jc && cfg.want_xu &&
        std::abs(std::abs(cfg.state_amp) - 1.0) > 1e-12)
        bad.push_back("bound 'xu' requires the excited initial state (alpha = 1)");
    if (!cfg.want_ml && !cfg.want_ni && !cfg.want_xu)
        bad.push_back("at least one bound kind must be requested");
    return bad;
}

/// Column names of the result block, fixed by the configuration.
inline std::vector<std::string> result_columns(const RunConfig& cfg) {
    std::vector<std::string> cols;
    for (const auto& kp : detail::plan_kinds(cfg)) {
        const std::string k = to_string(kp.kind);
        if (kp.closed && kp.generic) {
            cols.push_back("t_" + k + "_closed");
            cols.push_back("t_" + k + "_generic");
            cols.push_back("t_" + k + "_absdiff");
        } else {
            cols.push_back("t_" + k);
        }
        cols.push_back("accelerated_" + k);
    }
    cols.push_back("regime");
    cols.push_back("nonmarkovianity");
    cols.push_back("error");
    return cols;
}

/// Evaluates every requested quantity at one fully resolved configuration.
/// Model errors are captured into the row's error cell, not thrown.
inline OutputRow evaluate_point(const RunConfig& cfg) {
    OutputRow row;
    const auto plan = detail::plan_kinds(cfg);
    try {
        const PureQubit psi0(cfg.state_amp, cfg.theta);
        std::string regime;
        double nonmark = 0.0;
        std::optional<Trajectory> traj;

        if (cfg.model == Model::jc) {
            const JcParams p(cfg.lambda, cfg.gamma0);
            regime = to_string(p.regime());
            nonmark = blp_nonmarkovianity(
                p, cfg.horizon.automatic
                       ? std::optional<double>{}
                       : std::optional<double>{cfg.horizon.value});
            for (const auto& kp : plan) {
                QslResult closed{}, generic{};
                if (kp.closed) {
                    switch (kp.kind) {
                        case BoundKind::ml:
                            closed = ml_qsl_jc(cfg.time, psi0, p, cfg.tol);
                            break;
                        case BoundKind::ni:
                            closed = ni_qsl_jc(cfg.time, psi0, p, cfg.tol);
                            break;
                        default:
                            closed = xu_qsl_jc(cfg.time, p);
                            break;
                    }
                }
                if (kp.generic) {
                    if (!traj) traj = jc_trajectory(psi0, p);
                    generic = kp.kind == BoundKind::ml
                                  ? ml_qsl_generic(psi0, *traj, cfg.time, cfg.tol)
                                  : ni_qsl_generic(psi0, *traj, cfg.time, cfg.tol);
                }
                const QslResult& primary = kp.closed ? closed : generic;
                if (kp.closed && kp.generic) {
                    row.cells.push_back(fmt12(closed.bound));
                    row.cells.push_back(fmt12(generic.bound));
                    row.cells.push_back(
                        fmt12(std::abs(closed.bound - generic.bound)));
                } else {
                    row.cells.push_back(fmt12(primary.bound));
                }
                row.cells.push_back(primary.accelerated ? "1" : "0");
            }
        } else {
            const DephasingParams p(cfg.s, cfg.eta);
            const double nm_horizon =
                cfg.horizon.automatic ? cfg.time : cfg.horizon.value;
            nonmark = capacity_nonmarkovianity(p, nm_horizon);
            regime = nonmark > 0.0 ? "non_markovian" : "markovian";
            for (const auto& kp : plan) {
                QslResult closed{}, generic{};
                if (kp.closed) {
                    closed = kp.kind == BoundKind::ml
                                 ? ml_qsl_dephasing(cfg.time, psi0, p, cfg.tol)
                                 : ni_qsl_dephasing(cfg.time, p, cfg.tol);
                }
                if (kp.generic) {
                    if (!traj) traj = dephasing_trajectory(psi0, p);
                    generic = kp.kind == BoundKind::ml
                                  ? ml_qsl_generic(psi0, *traj, cfg.time, cfg.tol)
                                  : ni_qsl_generic(psi0, *traj, cfg.time, cfg.tol);
                }
                const QslResult& primary = kp.closed ? closed : generic;
                if (kp.closed && kp.generic) {
                    row.cells.push_back(fmt12(closed.bound));
                    row.cells.push_back(fmt12(generic.bound));
                    row.cells.push_back(
                        fmt12(std::abs(closed.bound - generic.bound)));
                } else {
                    row.cells.push_back(fmt12(primary.bound));
                }
                row.cells.push_back(primary.accelerated ? "1" : "0");
            }
        }
        row.cells.push_back(regime);
        row.cells.push_back(fmt12(nonmark));
        row.cells.push_back("");  // error column
    } catch (const std::exception& e) {
        row.cells.clear();
        std::size_t n = 0;
        for (const auto& kp : plan) n += (kp.closed && kp.generic) ? 4 : 2;
        row.cells.assign(n + 2, "");
        row.error = e.what();
        row.cells.push_back(row.error);
    }
    return row;
}

namespace detail {

// Deterministic parallel index map: worker threads pull indices from an
// atomic counter, results land in preallocated slots, output order is the
// index order regardless of scheduling.
inline void parallel_for_index(std::size_t n,
                               const std::function<void(std::size_t)>& body) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw < 2 || n < 32) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < hw; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace detail

struct SweepResult {
    std::vector<std::string> header;
    std::vector<OutputRow> rows;
    std::size_t error_count = 0;
};

/// Evaluates the Cartesian grid of up to three axes over the base config.
/// Rows come out in row-major order of the axes as declared (first axis
/// slowest); per-point failures land in the error column and the sweep
/// continues.
inline SweepResult run_sweep(const RunConfig& base,
                             const std::vector<AxisSpec>& axes) {
    if (axes.empty() || axes.size() > 3)
        throw std::invalid_argument("run_sweep: need between 1 and 3 axes");
    std::size_t total = 1;
    for (const auto& ax : axes) {
        if (!detail::axis_valid_for(base.model, ax.name))
            throw std::invalid_argument("axis '" + ax.name +
                                        "' is not a parameter of model " +
                                        to_string(base.model));
        total *= static_cast<std::size_t>(ax.count);
    }
    if (total > 10'000'000)
        throw std::invalid_argument("run_sweep: grid exceeds 1e7 points");

    SweepResult out;
    for (const auto& ax : axes) out.header.push_back(ax.name);
    for (auto& c : result_columns(base)) out.header.push_back(std::move(c));
    out.rows.resize(total);

    detail::parallel_for_index(total, [&](std::size_t idx) {
        RunConfig cfg = base;
        std::vector<double> coords(axes.size());
        std::size_t rem = idx;
        for (std::size_t a = axes.size(); a-- > 0;) {
            const int i = static_cast<int>(rem % axes[a].count);
            rem /= axes[a].count;
            coords[a] = axes[a].at(i);
        }
        for (std::size_t a = 0; a < axes.size(); ++a)
            detail::apply_coordinate(cfg, axes[a].name, coords[a]);
        OutputRow row = evaluate_point(cfg);
        row.coords = std::move(coords);
        out.rows[idx] = std::move(row);
    });
    for (const auto& r : out.rows)
        if (!r.error.empty()) ++out.error_count;
    return out;
}

/// Serializes a sweep result as CSV: single header row, comma separator,
/// '.' decimal point, values per fmt12.
inline std::string to_csv(const SweepResult& res) {
    std::string out;
    for (std::size_t i = 0; i < res.header.size(); ++i) {
        if (i) out += ',';
        out += res.header[i];
    }
    out += '\n';
    for (const auto& row : res.rows) {
        std::string line;
        for (double c : row.coords) {
            line += fmt12(c);
            line += ',';
        }
        for (std::size_t i = 0; i < row.cells.size(); ++i) {
            if (i) line += ',';
            line += row.cells[i];
        }
        out += line;
        out += '\n';
    }
    return out;
}

}  // namespace qsl::sweep

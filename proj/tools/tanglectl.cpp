#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tanglekit/bipartite.hpp"
#include "tanglekit/core.hpp"
#include "tanglekit/invariants.hpp"
#include "tanglekit/multipartite.hpp"
#include "tanglekit/roofs.hpp"
#include "tanglekit/symfam.hpp"
#include "tanglekit/threequbit.hpp"

using json = nlohmann::ordered_json;

namespace {

// exit codes: 0 ok, 1 unwritable output, 2 parse error / unknown name,
// 3 dimension (or state-kind) mismatch, 4 no classifier for these dims
struct dims_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct classify_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string dims_str(const tk::Dims& dims) {
    std::string s;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (i) s += 'x';
        s += std::to_string(dims[i]);
    }
    return s;
}

bool all_qubits(const tk::Dims& dims) {
    for (int d : dims)
        if (d != 2) return false;
    return true;
}

// Accept numerically pure density matrices wherever a state vector is needed.
std::optional<tk::PureState> as_pure(const tk::AnyState& st) {
    if (std::holds_alternative<tk::PureState>(st)) return std::get<tk::PureState>(st);
    const auto& rho = std::get<tk::DensityMatrix>(st);
    const tk::Eigh e = tk::eigh(rho.m);
    const int D = rho.dim();
    if (e.w(D - 1) < rho.trace() * (1.0 - 1e-8)) return std::nullopt;
    return tk::PureState(e.v.col(D - 1), rho.dims);
}

int thread_budget() {
    if (const char* env = std::getenv("TANGLEKIT_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

// ------------------------------------------------------------------ measure

tk::BoundValue run_one_measure(const std::string& name, const tk::AnyState& st,
                               std::uint64_t seed) {
    const tk::Dims dims = tk::state_dims(st);
    const int n = static_cast<int>(dims.size());
    const bool qubits3 = n == 3 && all_qubits(dims);
    const std::optional<tk::PureState> pure = as_pure(st);

    auto need = [&](bool ok, const char* what) {
        if (!ok)
            throw dims_error(name + ": needs " + what + ", got dims " + dims_str(dims) +
                             (pure ? " (pure)" : " (mixed)"));
    };

    if (name == "tau3") {
        need(qubits3, "three qubits");
        if (pure) return {tk::tau3(*pure), tk::BoundKind::Exact};
        return tk::tau3_mixed_lower_bound(tk::as_density(st), seed);
    }
    if (name == "negativity") {
        need(n >= 2, "at least two parties");
        return {tk::negativity(tk::as_density(st), 0), tk::BoundKind::Exact};
    }
    if (name == "concurrence") {
        if (pure && n >= 2) return {tk::i_concurrence(*pure, {0}), tk::BoundKind::Exact};
        need(n == 2 && all_qubits(dims), "two qubits (or a pure state)");
        return {tk::wootters_concurrence(tk::as_density(st)), tk::BoundKind::Exact};
    }
    if (name == "coa") {
        need(n == 2 && all_qubits(dims), "two qubits");
        return {tk::concurrence_of_assistance(tk::as_density(st)), tk::BoundKind::Exact};
    }
    if (name == "eof") {
        need(n == 2 && all_qubits(dims), "two qubits");
        const double c = tk::wootters_concurrence(tk::as_density(st));
        return {tk::eof_geometric_from_concurrence(c).eof, tk::BoundKind::Exact};
    }
    if (name == "gconc") {
        need(n == 2 && dims[0] == dims[1], "two equal-dimension parties");
        if (pure) return {tk::g_concurrence(*pure, {0}), tk::BoundKind::Exact};
        const double v =
            tk::evaluate_via_normal_form(tk::measure_g_concurrence(dims[0]), tk::as_density(st));
        return {v, tk::BoundKind::Lower};
    }
    if (name == "iconc") {
        need(n >= 2, "at least two parties");
        need(pure.has_value(), "a pure state");
        return {tk::i_concurrence(*pure, {0}), tk::BoundKind::Exact};
    }
    if (name == "gme") {
        need(n >= 3, "at least three parties");
        if (pure) return {tk::gme_concurrence_pure(*pure), tk::BoundKind::Exact};
        need(all_qubits(dims), "qubits (mixed-state bound)");
        return tk::gme_concurrence_bound(tk::as_density(st), tk::gme_ghz_pairs(n));
    }
    if (name == "global") {
        need(n >= 2, "at least two parties");
        need(pure.has_value(), "a pure state");
        return {tk::global_entanglement(*pure), tk::BoundKind::Exact};
    }
    if (name == "cren") {
        need(n == 2, "two parties");
        return tk::cren_upper(tk::as_density(st), seed);
    }
    if (name == "roof-concurrence") {
        need(n >= 2, "at least two parties");
        return tk::convex_roof_upper(tk::measure_pure_concurrence(), tk::as_density(st), 0, seed);
    }
    if (name == "tau3-witness") {
        need(qubits3, "three qubits");
        return {tk::tau3_witness_bound(tk::as_density(st)), tk::BoundKind::Lower};
    }
    throw std::runtime_error(
        "unknown measure '" + name +
        "' (known: tau3 negativity concurrence coa eof gconc iconc gme global cren "
        "roof-concurrence tau3-witness)");
}

int cmd_measure(const std::string& path, const std::vector<std::string>& names,
                std::uint64_t seed, bool csv) {
    const tk::AnyState st = tk::load_state_file(path);
    const tk::Dims dims = tk::state_dims(st);
    const bool is_pure = std::holds_alternative<tk::PureState>(st);

    std::vector<std::pair<std::string, tk::BoundValue>> results;
    results.reserve(names.size());
    for (const std::string& name : names) results.emplace_back(name, run_one_measure(name, st, seed));

    if (csv) {
        std::printf("# input=%s dims=%s kind=%s seed=%llu\n", path.c_str(),
                    dims_str(dims).c_str(), is_pure ? "pure" : "mixed",
                    static_cast<unsigned long long>(seed));
        std::printf("measure,value,kind\n");
        for (const auto& [name, bv] : results)
            std::printf("%s,%s,%s\n", name.c_str(), fmt12(bv.value).c_str(),
                        tk::bound_kind_name(bv.kind));
        return 0;
    }
    json j;
    j["command"] = "measure";
    j["input"] = path;
    j["dims"] = dims;
    j["kind"] = is_pure ? "pure" : "mixed";
    j["seed"] = seed;
    j["measures"] = json::array();
    for (const auto& [name, bv] : results)
        j["measures"].push_back({{"name", name}, {"value", bv.value}, {"kind", tk::bound_kind_name(bv.kind)}});
    std::cout << j.dump(2) << "\n";
    return 0;
}

// ----------------------------------------------------------------- classify

int cmd_classify(const std::string& path) {
    const tk::AnyState st = tk::load_state_file(path);
    const tk::Dims dims = tk::state_dims(st);
    const std::optional<tk::PureState> pure = as_pure(st);

    json j;
    j["command"] = "classify";
    j["input"] = path;
    j["dims"] = dims;
    j["kind"] = std::holds_alternative<tk::PureState>(st) ? "pure" : "mixed";
    json inv;

    if (dims == tk::Dims{2, 2, 2} && pure) {
        const tk::Class3 c = tk::pure_class3(*pure);
        j["class"] = tk::class3_name(c);
        inv["tau3"] = tk::tau3(*pure);
        inv["c_ab"] = tk::pairwise_concurrence(*pure, 0, 1);
        inv["c_ac"] = tk::pairwise_concurrence(*pure, 0, 2);
        inv["c_bc"] = tk::pairwise_concurrence(*pure, 1, 2);
    } else if (dims.size() == 2) {
        const tk::DensityMatrix rho = tk::as_density(st);
        const tk::SchmidtNumberBounds b = tk::schmidt_number_bounds(rho);
        const int r = std::max(b.r_from_negativity, b.r_from_concurrence);
        inv["negativity"] = tk::negativity(rho, 0);
        inv["schmidt_number_from_negativity"] = b.r_from_negativity;
        inv["schmidt_number_from_concurrence"] = b.r_from_concurrence;
        if (pure) {
            const int rank = tk::schmidt(*pure, {0}).rank;
            inv["schmidt_rank"] = rank;
            j["class"] = rank == 1 ? "separable"
                                   : "entangled, Schmidt number >= " + std::to_string(std::max(r, rank));
        } else if (r >= 2) {
            j["class"] = "entangled, Schmidt number >= " + std::to_string(r);
        } else {
            j["class"] = "not detected";
        }
    } else if (dims == tk::Dims{2, 2, 2}) {
        // mixed three-qubit states are classified inside the GHZ-symmetric family
        const tk::DensityMatrix rho = tk::as_density(st);
        const tk::GhzSymCoords c = tk::ghzsym_twirl(rho);
        if (!tk::ghzsym_physical(c, 1e-9))
            throw classify_error("no classifier: mixed three-qubit state outside the GHZ-symmetric family");
        const tk::DensityMatrix sigma = tk::ghzsym_state(c);
        if ((rho.m - sigma.m).cwiseAbs().maxCoeff() > 1e-9)
            throw classify_error("no classifier: mixed three-qubit state is not GHZ-symmetric");
        j["class"] = tk::ghzsym_class_name(tk::ghzsym_classify(c));
        inv["x"] = c.x;
        inv["y"] = c.y;
        inv["tau3"] = tk::ghzsym_tau3(c);
        inv["gme_concurrence"] = tk::ghzsym_gme_concurrence(c);
        inv["negativity"] = tk::ghzsym_negativity_exact(c);
    } else {
        throw classify_error("no classifier for dims " + dims_str(dims));
    }

    j["invariants"] = inv;
    std::cout << j.dump(2) << "\n";
    return 0;
}

// ------------------------------------------------------------------ witness

int cmd_witness(const std::string& path, const std::string& name) {
    tk::WitnessKind kind;
    if (name == "proj2qubit")
        kind = tk::WitnessKind::Proj2Qubit;
    else if (name == "ghz_proj")
        kind = tk::WitnessKind::GhzProj;
    else if (name == "ghz_opt")
        kind = tk::WitnessKind::GhzOpt;
    else
        throw std::runtime_error("unknown witness '" + name +
                                 "' (known: proj2qubit ghz_proj ghz_opt)");

    const tk::DensityMatrix rho = tk::as_density(tk::load_state_file(path));
    const int want = kind == tk::WitnessKind::Proj2Qubit ? 4 : 8;
    if (rho.dim() != want)
        throw dims_error("witness " + name + ": needs dimension " + std::to_string(want) +
                         ", got " + std::to_string(rho.dim()));
    const double v = tk::witness_value(rho, kind);

    json j;
    j["command"] = "witness";
    j["input"] = path;
    j["witness"] = name;
    j["value"] = v;
    j["detected"] = v < 0.0;
    std::cout << j.dump(2) << "\n";
    return 0;
}

// --------------------------------------------------------------------- scan

std::string ghzsym_row(double x, double y) {
    const tk::GhzSymCoords c{x, y};
    if (!tk::ghzsym_physical(c)) return {};
    std::string s = fmt12(x) + "," + fmt12(y) + ",";
    s += tk::ghzsym_class_name(tk::ghzsym_classify(c));
    s += "," + fmt12(tk::ghzsym_tau3(c));
    s += "," + fmt12(tk::ghzsym_gme_concurrence(c));
    s += "," + fmt12(tk::ghzsym_negativity_exact(c));
    return s;
}

std::string axi_row(double x, double y, int d) {
    const tk::AxiCoords c{x, y, d};
    if (!tk::axi_physical(c)) return {};
    std::string s = fmt12(x) + "," + fmt12(y) + ",";
    s += "k=" + std::to_string(tk::axi_schmidt_number(c));
    s += ",nan,nan," + fmt12(tk::axi_exact(c).at("negativity"));
    return s;
}

int cmd_scan(const std::string& family, int d, int grid, const std::string& out_path) {
    double x_lo, x_hi, y_lo, y_hi;
    if (family == "axi") {
        const tk::AxiRanges r = tk::axi_ranges(d);
        x_lo = r.x_lo;
        x_hi = r.x_hi;
        y_lo = r.y_lo;
        y_hi = r.y_hi;
    } else {
        x_lo = -0.5;
        x_hi = 0.5;
        y_lo = -1.0 / (4.0 * std::sqrt(3.0));
        y_hi = std::sqrt(3.0) / 4.0;
    }

    const int total = grid * grid;
    std::vector<std::string> rows(total);
    auto point = [&](int k) {
        const int i = k / grid, jj = k % grid;
        const double x = grid == 1 ? 0.0 : x_lo + (x_hi - x_lo) * i / (grid - 1);
        const double y = grid == 1 ? 0.0 : y_lo + (y_hi - y_lo) * jj / (grid - 1);
        rows[k] = family == "axi" ? axi_row(x, y, d) : ghzsym_row(x, y);
    };

    const int nthreads = std::min(thread_budget(), total);
    if (nthreads <= 1) {
        for (int k = 0; k < total; ++k) point(k);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (int t = 0; t < nthreads; ++t)
            pool.emplace_back([&, t] {
                for (int k = t; k < total; k += nthreads) point(k);
            });
        for (std::thread& th : pool) th.join();
    }

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!out_path.empty() && out_path != "-") {
        file.open(out_path);
        if (!file) {
            std::cerr << "tanglectl: cannot open '" << out_path << "' for writing\n";
            return 1;
        }
        out = &file;
    }
    *out << "# tanglectl scan family=" << family;
    if (family == "axi") *out << " d=" << d;
    *out << " grid=" << grid << "\n";
    *out << "x,y,class,tau3,gmec,negativity\n";
    for (const std::string& r : rows)
        if (!r.empty()) *out << r << "\n";
    out->flush();
    if (!out->good()) {
        std::cerr << "tanglectl: write to '" << out_path << "' failed\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"entanglement measures, classification, witnesses, and family scans"};
    app.require_subcommand(1);

    std::string state_path, classify_path, witness_path;
    std::vector<std::string> measures;
    std::uint64_t seed = 0;
    bool want_json = false, want_csv = false;

    CLI::App* m = app.add_subcommand("measure", "evaluate measures on a state file");
    m->add_option("--state", state_path, "state file (JSON)")->required();
    m->add_option("--measures", measures, "comma-separated measure names")
        ->required()
        ->delimiter(',');
    m->add_option("--seed", seed, "seed for optimizing bounds (default 0)");
    CLI::Option* oj = m->add_flag("--json", want_json, "JSON report (default)");
    m->add_flag("--csv", want_csv, "CSV report")->excludes(oj);

    CLI::App* c = app.add_subcommand("classify", "class label plus the deciding invariants");
    c->add_option("--state", classify_path, "state file (JSON)")->required();

    std::string family;
    int fam_d = 3, grid = 50;
    std::string out_path;
    CLI::App* s = app.add_subcommand("scan", "CSV grid scan of a symmetric family");
    s->add_option("--family", family, "axi or ghzsym")
        ->required()
        ->check(CLI::IsMember({"axi", "ghzsym"}));
    s->add_option("--d", fam_d, "local dimension (axi family, default 3)")->check(CLI::Range(2, 16));
    s->add_option("--grid", grid, "grid points per axis (default 50)")->check(CLI::Range(1, 4096));
    s->add_option("--out", out_path, "output CSV path (default stdout)");

    std::string witness_name;
    CLI::App* w = app.add_subcommand("witness", "witness expectation value and verdict");
    w->add_option("--state", witness_path, "state file (JSON)")->required();
    w->add_option("--witness", witness_name, "proj2qubit, ghz_proj, or ghz_opt")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const auto t0 = std::chrono::steady_clock::now();
    int rc = 0;
    try {
        if (m->parsed())
            rc = cmd_measure(state_path, measures, seed, want_csv);
        else if (c->parsed())
            rc = cmd_classify(classify_path);
        else if (s->parsed())
            rc = cmd_scan(family, fam_d, grid, out_path);
        else
            rc = cmd_witness(witness_path, witness_name);
    } catch (const dims_error& e) {
        std::cerr << "tanglectl: " << e.what() << "\n";
        return 3;
    } catch (const classify_error& e) {
        std::cerr << "tanglectl: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "tanglectl: " << e.what() << "\n";
        return 2;
    }
    const std::chrono::duration<double, std::milli> dt = std::chrono::steady_clock::now() - t0;
    std::fprintf(stderr, "# elapsed_ms=%.1f\n", dt.count());
    return rc;
}

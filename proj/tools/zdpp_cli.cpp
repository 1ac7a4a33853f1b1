// Command-line surface: evaluate kernels / correlation functions on grids and
// run the verification suites.  Output is CSV (17 significant digits) or JSON.

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "zdpp/correlation.hpp"
#include "zdpp/lauricella.hpp"
#include "zdpp/lifted.hpp"
#include "zdpp/verify.hpp"

namespace {

struct GridSpec {
    double start = 0.1, stop = 0.9;
    int count = 9;
    bool logspace = false;

    std::vector<double> points() const {
        std::vector<double> p;
        if (count == 1) {
            p.push_back(start);
            return p;
        }
        for (int i = 0; i < count; ++i) {
            double f = static_cast<double>(i) / (count - 1);
            if (logspace)
                p.push_back(start * std::pow(stop / start, f));
            else
                p.push_back(start + (stop - start) * f);
        }
        return p;
    }
};

GridSpec parse_grid(const std::string& s, bool logspace) {
    GridSpec g;
    g.logspace = logspace;
    if (std::sscanf(s.c_str(), "%lf:%lf:%d", &g.start, &g.stop, &g.count) != 3)
        throw CLI::ValidationError("grid must be start:stop:count");
    if (g.count < 1 || g.count > 100000)
        throw CLI::ValidationError("grid count out of range");
    return g;
}

zdpp::Complex parse_complex(const std::string& s) {
    double re = 0.0, im = 0.0;
    if (std::sscanf(s.c_str(), "%lf,%lf", &re, &im) >= 1) return {re, im};
    throw CLI::ValidationError("expected re or re,im");
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Row {
    std::vector<std::pair<std::string, std::string>> cells;
};

void emit_table(const std::vector<std::string>& header, const std::vector<Row>& rows,
                const std::string& format, std::ostream& os) {
    if (format == "json") {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : rows) {
            nlohmann::json obj;
            for (const auto& [k, v] : r.cells) {
                try {
                    obj[k] = std::stod(v);
                } catch (...) {
                    obj[k] = v;
                }
            }
            arr.push_back(obj);
        }
        os << arr.dump(2) << '\n';
        return;
    }
    for (size_t i = 0; i < header.size(); ++i)
        os << header[i] << (i + 1 < header.size() ? "," : "\n");
    for (const auto& r : rows) {
        for (size_t i = 0; i < r.cells.size(); ++i)
            os << r.cells[i].second << (i + 1 < r.cells.size() ? "," : "\n");
    }
}

int worker_count(int flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("ZDPP_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

template <typename Fn>
void parallel_for(int nitems, int workers, Fn&& fn) {
    if (workers <= 1 || nitems <= 1) {
        for (int i = 0; i < nitems; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errs(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            try {
                for (int i = next.fetch_add(1); i < nitems; i = next.fetch_add(1))
                    fn(i);
            } catch (...) {
                errs[w] = std::current_exception();
            }
        });
    for (auto& th : pool) th.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"z-measure point process calculator"};
    app.require_subcommand(1);

    std::string z_str = "0.3,0.4", zp_str;
    std::string grid_str = "0.1:0.9:9", format = "csv", outpath;
    std::string kind, suite = "all";
    bool grid_log = false, unchecked = false;
    double x_single = 0.0;
    bool have_x = false;
    int n_flag = 12;
    double tol_scale = 1.0;
    int workers_flag = 0;
    long long seed = 0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--z", z_str, "z as re or re,im");
        cmd->add_option("--zp", zp_str, "z' (defaults to conj(z))");
        cmd->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--out", outpath, "output path (default stdout)");
        cmd->add_option("--tol", tol_scale, "tolerance scale factor");
        cmd->add_option("--seed", seed, "seed recorded in the run (determinism contract)");
        cmd->add_option("--workers", workers_flag, "worker threads (0 = auto)");
    };

    CLI::App* ev = app.add_subcommand("eval", "evaluate a quantity on a grid");
    ev->add_option("kind", kind,
                   "rho1|rho_n|kernel_k|kernel_m|lifted_rho|asympt_k|fb")
        ->required();
    add_common(ev);
    ev->add_option("--grid", grid_str, "start:stop:count (linear)");
    ev->add_flag("--grid-log", grid_log, "grid is logarithmic");
    auto* xopt = ev->add_option("--x", x_single, "single evaluation point");
    ev->add_option("--n", n_flag, "n for rho_n/lifted_rho");
    ev->add_flag("--unchecked", unchecked, "skip admissibility (rho_n integral regime)");

    CLI::App* vf = app.add_subcommand("verify", "run a verification suite");
    vf->add_option("suite", suite,
                   "characters|normalization|moments|fb_routes|kernel_routes|"
                   "lifting|asymptotics|all")
        ->required();
    add_common(vf);
    vf->add_option("--nmax", n_flag, "size cap for characters/normalization");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code ? 2 : 0;
    }

    std::ofstream ofs;
    std::ostream* os = &std::cout;
    if (!outpath.empty()) {
        ofs.open(outpath);
        if (!ofs) {
            std::cerr << "cannot open output path " << outpath << "\n";
            return 2;
        }
        os = &ofs;
    }

    const int workers = worker_count(workers_flag);

    try {
        zdpp::Complex z = parse_complex(z_str);
        zdpp::Complex zp = zp_str.empty() ? std::conj(z) : parse_complex(zp_str);
        std::optional<zdpp::ZParams> params;
        try {
            params = zdpp::ZParams::make(z, zp);
        } catch (const zdpp::InadmissibleParams&) {
            if (!unchecked) throw;
        }
        have_x = xopt->count() > 0;

        if (ev->parsed()) {
            GridSpec grid = parse_grid(grid_str, grid_log);
            std::vector<double> pts = have_x ? std::vector<double>{x_single}
                                             : grid.points();
            std::vector<Row> rows;
            std::vector<std::string> header;

            if (kind == "rho1") {
                header = {"x", "value", "abs_err", "method"};
                rows.resize(pts.size());
                parallel_for(static_cast<int>(pts.size()), workers, [&](int i) {
                    auto r = zdpp::rho_1_closed(*params, pts[i]);
                    rows[i].cells = {{"x", fmt17(pts[i])},
                                     {"value", fmt17(r.value.real())},
                                     {"abs_err", fmt17(r.abs_err)},
                                     {"method", zdpp::method_name(r.method)}};
                });
            } else if (kind == "rho_n") {
                // grid points pair with scaled copies: x_i = x * (1, 0.8, ...)
                header = {"x", "value", "abs_err", "method"};
                rows.resize(pts.size());
                static const double scale[3] = {1.0, 0.8, 0.6};
                parallel_for(static_cast<int>(pts.size()), workers, [&](int i) {
                    std::vector<double> xs;
                    for (int k = 0; k < n_flag; ++k) xs.push_back(pts[i] * scale[k % 3]);
                    zdpp::CorrelationQuery q{*params, xs};
                    auto r = zdpp::rho_n_fb(q);
                    rows[i].cells = {{"x", fmt17(pts[i])},
                                     {"value", fmt17(r.value.real())},
                                     {"abs_err", fmt17(r.abs_err)},
                                     {"method", zdpp::method_name(r.method)}};
                });
            } else if (kind == "kernel_k" || kind == "kernel_m") {
                header = {"x", "y", "value"};
                const auto& xs = pts;
                rows.resize(xs.size() * xs.size());
                parallel_for(static_cast<int>(rows.size()), workers, [&](int idx) {
                    int i = idx / static_cast<int>(xs.size());
                    int j = idx % static_cast<int>(xs.size());
                    double v = (kind == "kernel_k")
                                   ? zdpp::whittaker_kernel(*params, {xs[i], xs[j]})
                                   : zdpp::kernel_m(*params, {xs[i], xs[j]}).real();
                    rows[idx].cells = {{"x", fmt17(xs[i])},
                                       {"y", fmt17(xs[j])},
                                       {"value", fmt17(v)}};
                });
            } else if (kind == "lifted_rho") {
                header = {"x", "value"};
                rows.resize(pts.size());
                static const double scale[3] = {1.0, 0.8, 0.6};
                parallel_for(static_cast<int>(pts.size()), workers, [&](int i) {
                    std::vector<double> xs;
                    for (int k = 0; k < n_flag; ++k) xs.push_back(pts[i] * scale[k % 3]);
                    rows[i].cells = {{"x", fmt17(pts[i])},
                                     {"value", fmt17(zdpp::lifted_rho_n(*params, xs))}};
                });
            } else if (kind == "asympt_k") {
                header = {"ratio", "value"};
                rows.resize(pts.size());
                parallel_for(static_cast<int>(pts.size()), workers, [&](int i) {
                    rows[i].cells = {{"ratio", fmt17(pts[i])},
                                     {"value", fmt17(zdpp::asympt_kernel_k(*params, pts[i]))}};
                });
            } else if (kind == "fb") {
                // F_B^[2] with the n=1 parameter set of the closed form
                header = {"y", "value", "abs_err", "method"};
                rows.resize(pts.size());
                zdpp::FBParams p{{1.0 - zp, -z}, {1.0 - z, -zp}, (1.0 - z) * (1.0 - zp)};
                parallel_for(static_cast<int>(pts.size()), workers, [&](int i) {
                    double y = pts[i];
                    if (y >= 0.0) throw zdpp::DomainError("fb: grid must be negative");
                    auto r = zdpp::fb_eval(p, {y, y});
                    rows[i].cells = {{"y", fmt17(y)},
                                     {"value", fmt17(r.value.real())},
                                     {"abs_err", fmt17(r.abs_err)},
                                     {"method", zdpp::method_name(r.method)}};
                });
            } else {
                std::cerr << "unknown eval kind: " << kind << "\n";
                return 2;
            }
            emit_table(header, rows, format, *os);
            return 0;
        }

        // verify
        zdpp::ToleranceOverrides tol{tol_scale};
        std::vector<zdpp::CheckReport> reports;
        if (suite == "characters")
            reports = zdpp::suite_characters(std::min(n_flag, 8), tol);
        else if (suite == "normalization")
            reports = zdpp::suite_normalization(*params, std::min(n_flag, 12), tol);
        else if (suite == "moments")
            reports = zdpp::suite_moments(*params, 4, tol);
        else if (suite == "fb_routes")
            reports = zdpp::suite_fb_routes(*params, tol);
        else if (suite == "kernel_routes")
            reports = zdpp::suite_kernel_routes(*params, tol);
        else if (suite == "lifting")
            reports = zdpp::suite_lifting(*params, tol);
        else if (suite == "asymptotics")
            reports = zdpp::suite_asymptotics(*params, tol);
        else if (suite == "all")
            reports = zdpp::route_matrix(*params, tol);
        else {
            std::cerr << "unknown suite: " << suite << "\n";
            return 2;
        }
        if (format == "json")
            *os << zdpp::reports_to_json(reports) << '\n';
        else
            *os << zdpp::reports_to_csv(reports);
        for (const auto& r : reports)
            if (!r.pass) return 1;
        return 0;
    } catch (const zdpp::Error& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

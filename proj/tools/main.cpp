// Command-line front end: evaluates the regulator cocycle on chain files,
// runs the direct quadrature, and builds the two bundled test-case families.

#include <array>
#include <complex>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "borelreg/chains.hpp"
#include "borelreg/io.hpp"
#include "borelreg/oracle.hpp"
#include "borelreg/parallel.hpp"

namespace {

using namespace borelreg;

constexpr int kExitOk = 0;
constexpr int kExitNumerical = 1; // budget/depth/convergence trouble
constexpr int kExitInput = 2;

struct CliOptions {
    ChainConfig cfg;
    std::string format = "table";
    bool no_skip_repeated = false;
    bool no_translate = false;
};

void add_config_flags(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--theta", opt.cfg.theta, "refinement norm threshold (0, 0.5)");
    cmd->add_option("--tol", opt.cfg.tol, "series truncation tolerance");
    cmd->add_option("--kmax", opt.cfg.k_max, "series level cap");
    cmd->add_option("--max-depth", opt.cfg.max_depth, "subdivision depth cap");
    cmd->add_option("--budget", opt.cfg.simplex_budget, "per-term simplex budget");
    cmd->add_option("--force-depth", opt.cfg.force_depth, "minimum acceptance depth");
    cmd->add_flag("--no-skip-repeated", opt.no_skip_repeated,
                  "evaluate terms with repeated entries instead of recording 0");
    cmd->add_flag("--no-translate", opt.no_translate,
                  "skip the right-translation making the last entry the identity");
    cmd->add_option("--format", opt.format, "output format: table or json")
        ->check(CLI::IsMember({"table", "json"}));
    cmd->add_option("--workers", opt.cfg.workers, "worker threads (0 = all processors)");
}

void finalize_config(CliOptions& opt) {
    opt.cfg.skip_repeated = !opt.no_skip_repeated;
    opt.cfg.translate = !opt.no_translate;
    if (opt.cfg.workers == 0) {
        if (const char* env = std::getenv("BORELREG_WORKERS")) {
            const int w = std::atoi(env);
            if (w > 0) opt.cfg.workers = w;
        }
    }
}

int report_exit_code(const PhiReport& report) {
    if (!report.refinement_complete || !report.tol_reached) return kExitNumerical;
    return kExitOk;
}

int emit_report(const PhiReport& report, const CliOptions& opt) {
    if (opt.format == "json")
        std::cout << report_to_json(report, opt.cfg) << "\n";
    else
        print_report_table(std::cout, report, opt.cfg);
    return report_exit_code(report);
}

int run_eval(const std::string& path, CliOptions& opt) {
    finalize_config(opt);
    const GroupChain chain = load_chain(path);
    const PhiReport report = phi_chain(chain, opt.cfg);
    return emit_report(report, opt);
}

int run_oracle(const std::string& path, int grid, bool compare, CliOptions& opt) {
    finalize_config(opt);
    const GroupChain chain = load_chain(path);
    if (chain.degree != 3) throw ParseError("oracle expects a degree-3 chain");

    cplx total{};
    double total_disc = 0;
    std::cout << std::setprecision(15);
    for (std::size_t i = 0; i < chain.terms.size(); ++i) {
        const GroupChain::Term& t = chain.terms[i];
        std::array<CMatrix, 4> verts{t.tuple[0], t.tuple[1], t.tuple[2], t.tuple[3]};
        const QuadratureResult q = quadrature_phi3(verts, grid);
        total += static_cast<double>(t.coeff) * q.richardson_estimate;
        total_disc += std::abs(static_cast<double>(t.coeff)) * q.discrepancy;
        const std::string label = t.label.empty() ? ("term " + std::to_string(i + 1)) : t.label;
        std::cout << label << ": value " << q.value << "  richardson "
                  << q.richardson_estimate << "  discrepancy " << q.discrepancy
                  << "  grid_points " << q.grid_points << "\n";
    }
    std::cout << "quadrature total (richardson): " << total
              << "  discrepancy sum: " << total_disc << "\n";

    if (compare) {
        const PhiReport report = phi_chain(chain, opt.cfg);
        const double diff = std::abs(report.total_value - total);
        const double allowed = 3.0 * (report.total_error_bound + total_disc);
        std::cout << "series total: " << report.total_value
                  << "  error bound: " << report.total_error_bound << "\n";
        std::cout << "|series - quadrature| = " << diff << "  allowed " << allowed << "  "
                  << (diff <= allowed ? "AGREE" : "DISAGREE") << "\n";
        if (diff > allowed) return kExitNumerical;
        return report_exit_code(report);
    }
    return kExitOk;
}

int run_testcase1(long long d, double u_re, double u_im, long long m, long long n,
                  CliOptions& opt) {
    finalize_config(opt);
    const GroupChain z = build_testcase1(d, cplx{u_re, u_im}, m, n);
    const PhiReport report = phi_chain(z, opt.cfg);
    return emit_report(report, opt);
}

int run_testcase2(int n, double v_re, double v_im, CliOptions& opt) {
    finalize_config(opt);
    const auto [z1, z2] = build_testcase2(n, cplx{v_re, v_im});
    std::cout << "== z1 ==\n";
    const PhiReport r1 = phi_chain(z1, opt.cfg);
    int code = emit_report(r1, opt);
    std::cout << "== z2 ==\n";
    const PhiReport r2 = phi_chain(z2, opt.cfg);
    code = std::max(code, emit_report(r2, opt));
    return code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"regulator cocycle evaluator for 3-simplices of invertible matrices"};
    app.require_subcommand(1);

    CliOptions opt;

    std::string eval_path;
    CLI::App* eval = app.add_subcommand("eval", "evaluate a chain file");
    eval->add_option("file", eval_path, "chain JSON file")->required();
    add_config_flags(eval, opt);

    std::string oracle_path;
    int grid = 24;
    bool compare = false;
    CLI::App* oracle = app.add_subcommand("oracle", "direct quadrature of a chain file");
    oracle->add_option("file", oracle_path, "chain JSON file")->required();
    oracle->add_option("--grid", grid, "subdivisions per axis (coarse level)");
    oracle->add_flag("--compare", compare, "also run the series pipeline and compare");
    add_config_flags(oracle, opt);

    long long tc1_d = 3, tc1_m = 1, tc1_n = 1;
    double tc1_ure = 1.0, tc1_uim = 0.0;
    CLI::App* tc1 = app.add_subcommand("testcase1", "six-term GL_2 cycle family");
    tc1->add_option("--d", tc1_d, "squarefree positive integer under the radical");
    tc1->add_option("--u-re", tc1_ure, "real part of u");
    tc1->add_option("--u-im", tc1_uim, "imaginary part of u");
    tc1->add_option("--m", tc1_m, "upper-triangular parameter m");
    tc1->add_option("--n", tc1_n, "upper-triangular parameter n");
    add_config_flags(tc1, opt);

    int tc2_n = 3;
    double tc2_vre = 1.0, tc2_vim = 0.0;
    CLI::App* tc2 = app.add_subcommand("testcase2", "GL_3 root-of-unity family (z1, z2)");
    tc2->add_option("--n", tc2_n, "order of the root of unity (>= 3)");
    tc2->add_option("--v-re", tc2_vre, "real part of v");
    tc2->add_option("--v-im", tc2_vim, "imaginary part of v");
    add_config_flags(tc2, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? kExitInput : kExitOk;
    }

    try {
        if (eval->parsed()) return run_eval(eval_path, opt);
        if (oracle->parsed()) return run_oracle(oracle_path, grid, compare, opt);
        if (tc1->parsed()) return run_testcase1(tc1_d, tc1_ure, tc1_uim, tc1_m, tc1_n, opt);
        if (tc2->parsed()) return run_testcase2(tc2_n, tc2_vre, tc2_vim, opt);
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitInput;
}

// psq - phase-space quantization toolkit, command-line front end.
//
// Exit codes: 0 success (or colorable), 1 verification failure,
// 2 input error, 3 uncolorable.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>

#include "psq/fock.hpp"
#include "psq/kscolor.hpp"
#include "psq/op_poly.hpp"
#include "psq/parse.hpp"
#include "psq/quantize.hpp"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInputError = 2;
constexpr int kExitUncolorable = 3;

struct Check {
    std::string name;
    bool passed;
    double measured;
    double tolerance;
};

struct Report {
    std::string command;
    json inputs = json::object();
    json result = json::object();
    std::vector<Check> checks;
    std::vector<std::string> human;

    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }

    void print(bool as_json) const {
        // Machine stream on stdout when requested; human text then moves to
        // stderr so both remain visible and golden tests can pin the JSON.
        std::ostream& hs = as_json ? std::cerr : std::cout;
        for (const auto& line : human) hs << line << "\n";
        for (const auto& c : checks)
            hs << (c.passed ? "[pass] " : "[FAIL] ") << c.name << "  measured=" << c.measured
               << "  tolerance=" << c.tolerance << "\n";
        if (!as_json) return;
        json out;
        out["command"] = command;
        out["inputs"] = inputs;
        out["result"] = result;
        json jc = json::array();
        for (const auto& c : checks)
            jc.push_back({{"name", c.name},
                          {"passed", c.passed},
                          {"measured", c.measured},
                          {"tolerance", c.tolerance}});
        out["checks"] = jc;
        std::cout << out.dump(2) << "\n";
    }
};

psq::Scheme parse_scheme(const std::string& s) {
    if (s == "weyl") return psq::Scheme::Weyl;
    if (s == "antiwick") return psq::Scheme::AntiWick;
    throw CLI::ValidationError("--scheme must be 'weyl' or 'antiwick'");
}

int run_quantize(const std::string& expr, const std::string& scheme_name, bool as_json) {
    psq::Scheme scheme = parse_scheme(scheme_name);
    psq::PhasePoly a = psq::parse_phase_expr(expr);
    psq::OpPoly q = psq::quantize(a, scheme);
    psq::OpPoly xp = q.alphabet() == psq::Alphabet::XP ? q : psq::change_alphabet(q, psq::Alphabet::XP);
    psq::OpPoly ladder =
        q.alphabet() == psq::Alphabet::Ladder ? q : psq::change_alphabet(q, psq::Alphabet::Ladder);
    bool self_adjoint = psq::op_equal(psq::adjoint(q), q);

    Report report;
    report.command = "quantize";
    report.inputs = {{"scheme", psq::to_string(scheme)}, {"expr", a.to_string()}};
    report.result = {{"xp_standard", xp.to_string()},
                     {"ladder_antinormal", ladder.to_string()},
                     {"self_adjoint", self_adjoint}};
    report.human = {std::string(psq::to_string(scheme)) + "[" + a.to_string() + "]",
                    "  standard order   : " + xp.to_string(),
                    "  anti-normal order: " + ladder.to_string()};
    report.print(as_json);
    return kExitOk;
}

int run_symbol(const std::string& expr, const std::string& scheme_name, bool as_json) {
    psq::Scheme scheme = parse_scheme(scheme_name);
    psq::OpPoly op = psq::parse_op_expr(expr);
    psq::PhasePoly sym = psq::symbol(op, scheme);
    Report report;
    report.command = "symbol";
    report.inputs = {{"scheme", psq::to_string(scheme)}, {"expr", op.to_string()}};
    report.result = {{"symbol", sym.to_string()}};
    report.human = {std::string(psq::to_string(scheme)) + "-symbol[" + op.to_string() + "]",
                    "  " + sym.to_string()};
    report.print(as_json);
    return kExitOk;
}

int run_ks2b(const std::string& expr_a, const std::string& expr_b, const std::string& scheme_name,
             bool as_json) {
    psq::Scheme scheme = parse_scheme(scheme_name);
    psq::PhasePoly a = psq::parse_phase_expr(expr_a);
    psq::PhasePoly b = psq::parse_phase_expr(expr_b);
    psq::DiscrepancyReport rep = psq::ks2b_report(a, b, scheme);
    Report report;
    report.command = "ks2b";
    report.inputs = {{"scheme", psq::to_string(scheme)},
                     {"a", a.to_string()},
                     {"b", b.to_string()}};
    report.result = {{"product_symbol", rep.product_symbol.to_string()},
                     {"classical_product", rep.classical_product.to_string()},
                     {"discrepancy", rep.discrepancy.to_string()},
                     {"discrepancy_zero", rep.discrepancy.is_zero()},
                     {"commute", rep.commute}};
    report.human = {
        "symbol of (A^ B^)  : " + rep.product_symbol.to_string(),
        "classical product  : " + rep.classical_product.to_string(),
        "discrepancy        : " + rep.discrepancy.to_string(),
        std::string("operators commute  : ") + (rep.commute ? "yes" : "no")};
    report.print(as_json);
    return kExitOk;
}

// ---------------------------------------------------------------- verify ---

void verify_wigner_coherent(const psq::FockConfig& config, Report& report) {
    using namespace psq;
    const double pi = std::numbers::pi;
    FockMatrix proj = coherent_projector(0.0, 0.0, config);
    double peak = wigner_function(proj, 0.0, 0.0);
    report.checks.push_back(
        {"peak_value_1_over_pi_hbar", std::abs(peak - 1.0 / (pi * config.hbar)) < 1e-6,
         std::abs(peak - 1.0 / (pi * config.hbar)), 1e-6});

    PhaseGrid grid{-3.0 * config.l, 3.0 * config.l, -3.0 * config.hbar / config.l,
                   3.0 * config.hbar / config.l, 25, 25};
    Eigen::MatrixXd values = wigner_function_grid(proj, grid);
    double max_err = 0.0;
    for (int ix = 0; ix < grid.nx; ++ix) {
        double x = grid.x_min + (grid.x_max - grid.x_min) * ix / (grid.nx - 1.0);
        for (int ip = 0; ip < grid.np; ++ip) {
            double p = grid.p_min + (grid.p_max - grid.p_min) * ip / (grid.np - 1.0);
            double gauss = std::exp(-x * x / (config.l * config.l) -
                                    config.l * config.l * p * p / (config.hbar * config.hbar)) /
                           (pi * config.hbar);
            max_err = std::max(max_err, std::abs(values(ix, ip) - gauss));
        }
    }
    report.checks.push_back({"gaussian_shape_max_abs_error", max_err < 1e-6, max_err, 1e-6});
}

void verify_husimi_expect(const psq::FockConfig& config, Report& report) {
    using namespace psq;
    PhaseGrid grid = default_phase_grid(config);
    std::vector<std::pair<std::string, FockMatrix>> states;
    states.push_back({"vacuum", coherent_projector(0.0, 0.0, config)});
    states.push_back({"coherent(1,-1)", coherent_projector(1.0, -1.0, config)});
    const char* exprs[] = {"1", "x", "x^2", "x^2 - l^2/2", "x*p", "p^2"};
    double worst = 0.0;
    for (const auto& [name, rho] : states) {
        for (const char* text : exprs) {
            PhasePoly a = parse_phase_expr(text);
            double lhs = husimi_expectation(a, rho, grid);
            double rhs = (op_to_matrix(antiwick_quantize(a), config).mat * rho.mat).trace().real();
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    }
    report.checks.push_back({"trace_identity_max_abs_error", worst < 1e-8, worst, 1e-8});
}

void verify_toeplitz(const psq::FockConfig& config, Report& report) {
    using namespace psq;
    PhaseGrid grid = default_phase_grid(config);
    int half = config.cutoff / 2;
    double id_err = toeplitz_identity_error(config, grid);
    report.checks.push_back({"resolution_of_identity", id_err < 1e-8, id_err, 1e-8});
    FockMatrix t = toeplitz_quantize(parse_phase_expr("x^2"), config, grid);
    FockMatrix direct = op_to_matrix(parse_op_expr("X^2 + l^2/2"), config);
    double err = (t.mat.topLeftCorner(half, half) - direct.mat.topLeftCorner(half, half))
                     .cwiseAbs()
                     .maxCoeff();
    report.checks.push_back({"x2_matches_X2_plus_half_l2", err < 1e-8, err, 1e-8});
}

void verify_projector_symbol(const psq::FockConfig& config, Report& report) {
    using namespace psq;
    FockMatrix proj = position_range_projector(-1.0, 1.0, config);
    double inside = wigner_symbol(proj, 0.0, 0.0);
    double outside = wigner_symbol(proj, 3.0, 0.0);
    report.checks.push_back({"inside_value_near_1", std::abs(inside - 1.0) < 5e-2,
                             std::abs(inside - 1.0), 5e-2});
    report.checks.push_back({"outside_value_near_0", std::abs(outside) < 5e-2, std::abs(outside),
                             5e-2});
}

void verify_bohmian(const psq::FockConfig& config, Report& report) {
    using namespace psq;
    const int n = 1601;
    Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(n, -8.0 * config.l, 8.0 * config.l);
    CVector psi(n);
    for (int j = 0; j < n; ++j)
        psi(j) = std::pow(std::numbers::pi * config.l * config.l, -0.25) *
                 std::exp(-x(j) * x(j) / (2.0 * config.l * config.l));
    BohmianField field = bohmian_momentum(x, psi, config.hbar);
    double max_p = 0.0;
    for (int j = 0; j < n; ++j)
        if (field.valid[j]) max_p = std::max(max_p, std::abs(field.momentum(j)));
    report.checks.push_back({"ground_state_momentum_zero", max_p < 1e-12, max_p, 1e-12});
    double bohm = bohmian_p2_expectation(field, psi);
    report.checks.push_back({"bohmian_p2_zero", bohm == 0.0, bohm, 0.0});
    double quantum = (op_to_matrix(parse_op_expr("P^2"), config).mat *
                      coherent_projector(0.0, 0.0, config).mat)
                         .trace()
                         .real();
    double expected = config.hbar * config.hbar / (2.0 * config.l * config.l);
    report.checks.push_back({"quantum_p2_half_hbar2_over_l2", std::abs(quantum - expected) < 1e-8,
                             std::abs(quantum - expected), 1e-8});
    report.checks.push_back(
        {"guidance_vs_trace_gap", quantum - bohm > 0.9 * expected, quantum - bohm, 0.9 * expected});
    report.result["bohmian_p2"] = bohm;
    report.result["quantum_p2"] = quantum;
}

int run_verify(const std::string& suite, std::optional<int> cutoff, double hbar, double l,
               bool as_json) {
    psq::FockConfig config;
    config.hbar = hbar;
    config.l = l;
    Report report;
    report.command = "verify";
    if (suite == "wigner-coherent") {
        config.cutoff = cutoff.value_or(64);
        verify_wigner_coherent(config, report);
    } else if (suite == "husimi-expect") {
        config.cutoff = cutoff.value_or(64);
        verify_husimi_expect(config, report);
    } else if (suite == "toeplitz") {
        config.cutoff = cutoff.value_or(64);
        verify_toeplitz(config, report);
    } else if (suite == "projector-symbol") {
        config.cutoff = cutoff.value_or(128);
        verify_projector_symbol(config, report);
    } else if (suite == "bohmian") {
        config.cutoff = cutoff.value_or(16);
        verify_bohmian(config, report);
    } else {
        std::cerr << "error: unknown suite '" << suite << "'\n";
        return kExitInputError;
    }
    report.inputs = {{"suite", suite},
                     {"cutoff", config.cutoff},
                     {"hbar", config.hbar},
                     {"l", config.l}};
    report.human.push_back("verify " + suite + " (cutoff " + std::to_string(config.cutoff) + ")");
    report.print(as_json);
    return report.all_passed() ? kExitOk : kExitCheckFailed;
}

// --------------------------------------------------------------- kscolor ---

int run_kscolor(const std::string& path, std::optional<int> drop_basis, double tol,
                bool normalize, bool as_json) {
    psq::LoadOptions options;
    options.normalize_floats = normalize;
    psq::VectorSet vs = psq::load_vector_set(path, options);
    psq::BasisList bl = psq::find_bases(vs, tol);
    if (drop_basis) {
        if (*drop_basis < 0 || *drop_basis >= static_cast<int>(bl.bases.size()))
            throw std::runtime_error("--drop-basis index out of range");
        bl.bases.erase(bl.bases.begin() + *drop_basis);
    }
    psq::Verdict verdict = psq::search_valuation(bl);

    Report report;
    report.command = "kscolor";
    report.inputs = {{"path", path},
                     {"vectors", vs.size()},
                     {"dim", vs.dim},
                     {"dropped_basis", drop_basis ? json(*drop_basis) : json(nullptr)}};
    report.result = {{"bases", bl.bases.size()},
                     {"colorable", verdict.colorable},
                     {"nodes_explored", verdict.nodes_explored}};
    for (const auto& w : vs.warnings) report.human.push_back("warning: " + w);
    if (vs.dim == 2)
        report.human.push_back(
            "note: dim 2 sets are outside the scope of the colorability obstruction");
    report.human.push_back("bases found: " + std::to_string(bl.bases.size()));
    if (verdict.colorable) {
        json w = json::array();
        std::string line = "witness:";
        for (int v = 0; v < bl.vector_count; ++v) {
            w.push_back(verdict.witness->values[v]);
            if (verdict.witness->values[v] == 1) line += " " + vs.labels[v];
        }
        report.result["witness"] = w;
        report.human.push_back("colorable, value 1 on:" + line.substr(8));
        report.checks.push_back({"witness_satisfies_all_bases",
                                 psq::verify_valuation(*verdict.witness, bl), 1.0, 1.0});
    } else {
        json core = json::array();
        for (int b : *verdict.contradiction_core) core.push_back(b);
        report.result["contradiction_core"] = core;
        report.human.push_back("uncolorable (nodes explored: " +
                               std::to_string(verdict.nodes_explored) + ")");
    }
    report.print(as_json);
    return verdict.colorable ? kExitOk : kExitUncolorable;
}

// ----------------------------------------------------------------- dumps ---

struct DumpState {
    std::optional<std::string> op_expr;
    std::vector<double> coherent;  // x0 p0
    std::optional<int> fock;
};

psq::FockMatrix dump_matrix(const DumpState& state, const psq::FockConfig& config) {
    int chosen = int(state.op_expr.has_value()) + int(!state.coherent.empty()) +
                 int(state.fock.has_value());
    if (chosen > 1) throw std::runtime_error("choose one of operator expression, --coherent, --fock");
    if (state.op_expr) return psq::op_to_matrix(psq::parse_op_expr(*state.op_expr), config);
    if (state.fock) {
        if (*state.fock < 0 || *state.fock >= config.cutoff)
            throw std::runtime_error("--fock level out of range");
        psq::CMatrix m = psq::CMatrix::Zero(config.cutoff, config.cutoff);
        m(*state.fock, *state.fock) = 1.0;
        return psq::FockMatrix{m, config};
    }
    double x0 = state.coherent.size() == 2 ? state.coherent[0] : 0.0;
    double p0 = state.coherent.size() == 2 ? state.coherent[1] : 0.0;
    if (!psq::coherent_truncation_ok(x0, p0, config))
        std::cerr << "warning: coherent center far from the origin for cutoff "
                  << config.cutoff << "; amplitudes near the cutoff are not negligible\n";
    return psq::coherent_projector(x0, p0, config);
}

void dump_csv(const Eigen::MatrixXd& values, const psq::PhaseGrid& grid, std::ostream& os) {
    os << "x,p,value\n";
    for (int ix = 0; ix < grid.nx; ++ix) {
        double x = grid.x_min + (grid.x_max - grid.x_min) * ix / (grid.nx - 1.0);
        for (int ip = 0; ip < grid.np; ++ip) {
            double p = grid.p_min + (grid.p_max - grid.p_min) * ip / (grid.np - 1.0);
            os << x << "," << p << "," << values(ix, ip) << "\n";
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"psq - exact quantization maps, Fock-basis numerics and KS colorability"};
    app.require_subcommand(1);
    app.fallthrough();
    bool as_json = false;
    app.add_flag("--json", as_json, "machine-readable JSON on stdout");

    std::string scheme = "weyl";
    std::string expr, expr_b, suite, path;
    std::optional<int> cutoff_opt, drop_basis, fock_level;
    double hbar = 1.0, l = 1.0, tol = 1e-9;
    bool normalize = false;

    auto* quantize = app.add_subcommand("quantize", "quantize a phase-space polynomial");
    quantize->add_option("--scheme", scheme, "weyl | antiwick")->capture_default_str();
    quantize->add_option("expr", expr, "expression, e.g. \"x*p\"")->required();

    auto* symbol = app.add_subcommand("symbol", "symbol (inverse map) of an operator polynomial");
    symbol->add_option("--scheme", scheme, "weyl | antiwick")->capture_default_str();
    symbol->add_option("expr", expr, "operator expression, e.g. \"X*P + P*X\"")->required();

    auto* ks2b = app.add_subcommand("ks2b", "product-rule discrepancy report");
    ks2b->add_option("--scheme", scheme, "weyl | antiwick")->capture_default_str();
    ks2b->add_option("exprA", expr, "first polynomial")->required();
    ks2b->add_option("exprB", expr_b, "second polynomial")->required();

    auto* verify = app.add_subcommand("verify", "run a named numeric verification suite");
    verify->add_option("suite", suite,
                       "wigner-coherent | husimi-expect | toeplitz | projector-symbol | bohmian")
        ->required();
    verify->add_option("--cutoff", cutoff_opt, "Fock cutoff override");
    verify->add_option("--hbar", hbar, "hbar value")->capture_default_str();
    verify->add_option("--l", l, "length scale l")->capture_default_str();

    auto* kscolor = app.add_subcommand("kscolor", "decide KS colorability of a vector-set file");
    kscolor->add_option("path", path, "vector-set JSON file")->required();
    kscolor->add_option("--drop-basis", drop_basis, "remove one basis by index before solving");
    kscolor->add_option("--tol", tol, "orthogonality tolerance (float input)")
        ->capture_default_str();
    kscolor->add_flag("--normalize", normalize, "accept unnormalized float vectors");

    psq::PhaseGrid grid{-6.0, 6.0, -6.0, 6.0, 61, 61};
    std::vector<double> coherent_args;
    std::string out_path;
    bool symbol_convention = false;
    for (auto* dump : {app.add_subcommand("wigner-dump", "CSV grid of a Wigner function"),
                       app.add_subcommand("husimi-dump", "CSV grid of a Husimi function")}) {
        dump->add_option("expr", expr, "operator expression (must be Hermitian / a density)");
        dump->add_option("--coherent", coherent_args, "coherent projector at x0 p0")->expected(2);
        dump->add_option("--fock", fock_level, "number-state projector |n><n|");
        dump->add_option("--cutoff", cutoff_opt, "Fock cutoff (default 64)");
        dump->add_option("--hbar", hbar, "hbar value")->capture_default_str();
        dump->add_option("--l", l, "length scale l")->capture_default_str();
        dump->add_option("--xmin", grid.x_min)->capture_default_str();
        dump->add_option("--xmax", grid.x_max)->capture_default_str();
        dump->add_option("--pmin", grid.p_min)->capture_default_str();
        dump->add_option("--pmax", grid.p_max)->capture_default_str();
        dump->add_option("--nx", grid.nx)->capture_default_str();
        dump->add_option("--np", grid.np)->capture_default_str();
        dump->add_option("--out", out_path, "write CSV here instead of stdout");
        if (dump->get_name() == "wigner-dump")
            dump->add_flag("--symbol", symbol_convention,
                           "dump the phase-space symbol instead of the normalized function");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (quantize->parsed()) return run_quantize(expr, scheme, as_json);
        if (symbol->parsed()) return run_symbol(expr, scheme, as_json);
        if (ks2b->parsed()) return run_ks2b(expr, expr_b, scheme, as_json);
        if (verify->parsed()) return run_verify(suite, cutoff_opt, hbar, l, as_json);
        if (kscolor->parsed()) return run_kscolor(path, drop_basis, tol, normalize, as_json);

        // dumps
        psq::FockConfig config{cutoff_opt.value_or(64), hbar, l};
        DumpState state;
        if (!expr.empty()) state.op_expr = expr;
        state.coherent = coherent_args;
        state.fock = fock_level;
        psq::FockMatrix m = dump_matrix(state, config);
        bool wigner = app.get_subcommand("wigner-dump")->parsed();
        Eigen::MatrixXd values;
        if (wigner)
            values = symbol_convention ? psq::wigner_symbol_grid(m, grid)
                                       : psq::wigner_function_grid(m, grid);
        else
            values = psq::husimi_grid(m, grid);
        if (out_path.empty()) {
            dump_csv(values, grid, std::cout);
        } else {
            std::ofstream out(out_path);
            if (!out) throw std::runtime_error("cannot open '" + out_path + "'");
            dump_csv(values, grid, out);
        }
        return kExitOk;
    } catch (const psq::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}

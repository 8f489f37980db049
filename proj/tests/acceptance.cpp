// Acceptance suite: runs every top-level criterion at its stated tolerance
// and prints one pass/fail line per criterion. Exit code 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "psq/fock.hpp"
#include "psq/kscolor.hpp"
#include "psq/parse.hpp"
#include "psq/quantize.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace psq;

namespace {

constexpr double kPi = std::numbers::pi;

struct Criterion {
    std::string name;
    std::function<bool(std::string&)> run;
};

bool c01_weyl_ordering_discrepancy(std::string& detail) {
    auto start = std::chrono::steady_clock::now();
    OpPoly lhs = weyl_quantize(parse_phase_expr("x*p"));
    bool ok = op_equal(lhs, parse_op_expr("(X*P + P*X)/2"));

    OpPoly square = op_mul(lhs, lhs);
    ok = ok && op_equal(square, parse_op_expr("X^2*P^2 - 2*i*hbar*X*P - hbar^2/4"));

    OpPoly direct = weyl_quantize(parse_phase_expr("x^2*p^2"));
    ok = ok && op_equal(direct, parse_op_expr("X^2*P^2 - 2*i*hbar*X*P - hbar^2/2"));

    OpPoly difference = direct - canonicalize(square, OrderTag::Standard);
    ok = ok && op_equal(difference, parse_op_expr("0 - hbar^2/4"));

    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
    ok = ok && ms < 1000.0;
    std::ostringstream os;
    os << "exact operator identities, difference -hbar^2/4, " << ms << " ms";
    detail = os.str();
    return ok;
}

bool c02_ks2b_reports(std::string& detail) {
    bool ok = true;
    DiscrepancyReport xp = ks2b_report(parse_phase_expr("x*p"), parse_phase_expr("x*p"),
                                       Scheme::Weyl);
    ok = ok && xp.discrepancy == parse_phase_expr("hbar^2/4") && xp.commute;
    for (int m = 0; m <= 5 && ok; ++m)
        for (int n = 0; n <= 5 && ok; ++n) {
            DiscrepancyReport r = ks2b_report(PhasePoly::x(m), PhasePoly::x(n), Scheme::Weyl);
            ok = r.discrepancy.is_zero() && r.commute;
        }
    DiscrepancyReport aw = ks2b_report(parse_phase_expr("x"), parse_phase_expr("x"),
                                       Scheme::AntiWick);
    ok = ok && aw.discrepancy == parse_phase_expr("0 - l^2/2") && aw.commute;
    detail = "weyl(xp,xp)=hbar^2/4, weyl(x^m,x^n)=0, antiwick(x,x)=-l^2/2, all exact";
    return ok;
}

bool c03_antiwick_exact(std::string& detail) {
    bool ok = op_equal(antiwick_quantize(parse_phase_expr("x^2")),
                       parse_op_expr("X^2 + l^2/2"));
    ok = ok && op_equal(antiwick_quantize(parse_phase_expr("p^2")),
                        parse_op_expr("P^2 + hbar^2/(2*l^2)"));
    detail = "AW(x^2) = X^2 + l^2/2 and AW(p^2) = P^2 + hbar^2/(2 l^2), exact";
    return ok;
}

bool c04_round_trips_and_permutation_sum(std::string& detail) {
    testgen::Rng rng(20250814);
    bool ok = true;
    for (int iter = 0; iter < 200 && ok; ++iter) {
        PhasePoly f = testgen::rand_phase_poly(rng, 6);
        ok = weyl_symbol(weyl_quantize(f)) == f && antiwick_symbol(antiwick_quantize(f)) == f;
    }
    int checked = 0;
    for (int j = 0; j <= 6 && ok; ++j)
        for (int k = 0; j + k <= 6 && ok; ++k) {
            OpPoly closed = weyl_quantize(PhasePoly::monomial({j, k}, Scalar::one()));
            ok = closed.terms() == oracle::weyl_permutation_sum(j, k).terms();
            ++checked;
        }
    std::ostringstream os;
    os << "200 exact round trips per scheme; closed form = permutation sum on " << checked
       << " monomials";
    detail = os.str();
    return ok;
}

bool c05_weierstrass(std::string& detail) {
    testgen::Rng rng(424211);
    bool ok = true;
    for (int iter = 0; iter < 50 && ok; ++iter) {
        OpPoly op = testgen::rand_op_poly(rng, iter % 2 ? Alphabet::XP : Alphabet::Ladder, 6);
        ok = weierstrass_transform(antiwick_symbol(op)) == weyl_symbol(op);
    }
    OpPoly x2 = parse_op_expr("X^2");
    ok = ok && antiwick_symbol(x2) == parse_phase_expr("x^2 - l^2/2") &&
         weierstrass_transform(antiwick_symbol(x2)) == parse_phase_expr("x^2");
    detail = "50 random operators, weierstrass(aw symbol) = weyl symbol exactly; x^2-l^2/2 -> x^2";
    return ok;
}

bool c06_linearity(std::string& detail) {
    testgen::Rng rng(7071);
    bool ok = true;
    for (int iter = 0; iter < 100 && ok; ++iter) {
        PhasePoly a = testgen::rand_phase_poly(rng, 5);
        PhasePoly b = testgen::rand_phase_poly(rng, 5);
        Scalar alpha(testgen::rand_rational(rng));
        Scalar beta(testgen::rand_rational(rng));
        for (Scheme scheme : {Scheme::Weyl, Scheme::AntiWick})
            ok = ok && op_equal(quantize(a * alpha + b * beta, scheme),
                                quantize(a, scheme) * alpha + quantize(b, scheme) * beta);
    }
    detail = "quantize(alpha A + beta B) = alpha A^ + beta B^ on 100 random tuples, both schemes";
    return ok;
}

bool c07_fock_backend(std::string& detail) {
    auto start = std::chrono::steady_clock::now();
    FockConfig c{64, 1.0, 1.0};
    LadderOps ops = build_ladder(c);
    CMatrix comm = ops.x.mat * ops.p.mat - ops.p.mat * ops.x.mat;
    double comm_err = (comm.topLeftCorner(63, 63) - Complex(0, 1) * CMatrix::Identity(63, 63))
                          .cwiseAbs()
                          .maxCoeff();

    PhaseGrid grid = default_phase_grid(c);
    FockMatrix t2 = toeplitz_quantize(parse_phase_expr("x^2"), c, grid);
    FockMatrix direct = op_to_matrix(parse_op_expr("X^2 + 1/2"), c);
    double t2_err = (t2.mat.topLeftCorner(32, 32) - direct.mat.topLeftCorner(32, 32))
                        .cwiseAbs()
                        .maxCoeff();
    double id_err = toeplitz_identity_error(c, grid);

    double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream os;
    os << "[X,P] err " << comm_err << " (tol 1e-12), toeplitz x^2 err " << t2_err
       << ", identity err " << id_err << " (tol 1e-8), " << sec << " s";
    detail = os.str();
    return comm_err < 1e-12 && t2_err < 1e-8 && id_err < 1e-8 && sec < 30.0;
}

bool c08_husimi_expectation_identity(std::string& detail) {
    FockConfig c{64, 1.0, 1.0};
    PhaseGrid grid{-9.0, 9.0, -9.0, 9.0, 150, 150};
    std::vector<FockMatrix> states;
    states.push_back(coherent_projector(0.0, 0.0, c));
    for (auto [x0, p0] : {std::pair{1.0, 1.0}, {1.0, -1.0}, {-1.0, 1.0}, {-1.0, -1.0}})
        states.push_back(coherent_projector(x0, p0, c));
    CMatrix mix = CMatrix::Zero(c.cutoff, c.cutoff);
    mix(0, 0) = 0.4;
    mix(1, 1) = 0.3;
    mix(2, 2) = 0.2;
    mix(3, 3) = 0.1;
    states.push_back(FockMatrix{mix, c});

    const char* exprs[] = {"1",   "x",       "p",   "x^2",         "x*p",
                           "p^2", "x^2*p^2", "x^4", "x^2 - l^2/2", "x^3*p"};
    double worst = 0.0;
    for (const FockMatrix& rho : states) {
        for (const char* text : exprs) {
            PhasePoly a = parse_phase_expr(text);
            double lhs = husimi_expectation(a, rho, grid);
            double rhs = (op_to_matrix(antiwick_quantize(a), c).mat * rho.mat).trace().real();
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    }
    std::ostringstream os;
    os << "max |integral - trace| = " << worst << " over 10 polynomials x 6 states (tol 1e-8)";
    detail = os.str();
    return worst < 1e-8;
}

bool c09_wigner_gaussian(std::string& detail) {
    FockConfig c{64, 1.0, 1.0};
    FockMatrix proj = coherent_projector(0.0, 0.0, c);
    PhaseGrid grid{-3.0, 3.0, -3.0, 3.0, 25, 25};
    Eigen::MatrixXd values = wigner_function_grid(proj, grid);
    double max_err = 0.0;
    for (int ix = 0; ix < grid.nx; ++ix) {
        double x = grid.x_min + 6.0 * ix / (grid.nx - 1.0);
        for (int ip = 0; ip < grid.np; ++ip) {
            double p = grid.p_min + 6.0 * ip / (grid.np - 1.0);
            double gauss = std::exp(-x * x - p * p) / kPi;
            max_err = std::max(max_err, std::abs(values(ix, ip) - gauss));
        }
    }
    std::ostringstream os;
    os << "max abs deviation from (1/pi hbar) gaussian = " << max_err
       << " on |x|,|p| <= 3 (tol 1e-6); prefactor fixed by the dx dp normalization";
    detail = os.str();
    return max_err < 1e-6;
}

bool c10_projector_symbol(std::string& detail) {
    auto probe = [](int cutoff, double& inside, double& outside) {
        FockConfig c{cutoff, 1.0, 1.0};
        FockMatrix proj = position_range_projector(-1.0, 1.0, c);
        inside = std::abs(wigner_symbol(proj, 0.0, 0.0) - 1.0);
        outside = std::abs(wigner_symbol(proj, 3.0, 0.0));
    };
    double in128, out128, in256, out256;
    probe(128, in128, out128);
    probe(256, in256, out256);
    bool ok = in128 < 5e-2 && out128 < 5e-2 && in256 < in128 && out256 < out128;
    std::ostringstream os;
    os << "cutoff 128: |W(0,0)-1| = " << in128 << ", |W(3,0)| = " << out128
       << " (tol 5e-2); cutoff 256: " << in256 << ", " << out256 << " (must shrink)";
    detail = os.str();
    return ok;
}

bool c11_delta_symbol_limit(std::string& detail) {
    FockConfig c{64, 1.0, 1.0};
    const double x0 = 0.5, p0 = -0.3;
    FockMatrix target = coherent_projector(x0, p0, c);
    bool ok = true;
    double last = 1e100, final_dist = 0.0;
    for (int k = 1; k <= 5; ++k) {
        double sigma = c.l / std::pow(2.0, k);
        double sp = sigma * c.hbar / (c.l * c.l);
        auto gauss = [&](double x, double p) {
            double dx = (x - x0) / sigma, dp = (p - p0) / sp;
            return 2.0 * kPi * c.hbar / (kPi * sigma * sp) * std::exp(-dx * dx - dp * dp);
        };
        PhaseGrid grid{x0 - 8 * sigma, x0 + 8 * sigma, p0 - 8 * sp, p0 + 8 * sp, 90, 90};
        FockMatrix t = toeplitz_quantize_fn(gauss, c, grid);
        double dist = block_distance(t.mat, target.mat, 32);
        ok = ok && dist < last;
        last = dist;
        final_dist = dist;
    }
    ok = ok && final_dist < 1e-3;
    std::ostringstream os;
    os << "Frobenius distance decreases along sigma = l/2 .. l/32; final " << final_dist
       << " (tol 1e-3)";
    detail = os.str();
    return ok;
}

bool c12_bohmian(std::string& detail) {
    FockConfig c{16, 1.0, 1.0};
    const int n = 1601;
    Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(n, -8.0, 8.0);
    CVector psi(n);
    for (int j = 0; j < n; ++j)
        psi(j) = std::pow(kPi, -0.25) * std::exp(-0.5 * x(j) * x(j));
    BohmianField field = bohmian_momentum(x, psi, c.hbar);
    double max_p = 0.0;
    for (int j = 0; j < n; ++j)
        if (field.valid[j]) max_p = std::max(max_p, std::abs(field.momentum(j)));
    double bohm_p2 = bohmian_p2_expectation(field, psi);
    double quantum = (op_to_matrix(parse_op_expr("P^2"), c).mat *
                      coherent_projector(0.0, 0.0, c).mat)
                         .trace()
                         .real();
    bool ok = max_p < 1e-12 && bohm_p2 == 0.0 && std::abs(quantum - 0.5) < 1e-8 &&
              bohm_p2 < quantum;
    std::ostringstream os;
    os << "max |p(x)| = " << max_p << ", <p^2>_guidance = " << bohm_p2
       << " != Tr(P^2 rho) = " << quantum << " (tol 1e-8 on 0.5)";
    detail = os.str();
    return ok;
}

bool c13_ks_colorability(std::string& detail) {
    const std::string data = PSQ_DATA_DIR;
    auto start = std::chrono::steady_clock::now();
    VectorSet ks = load_vector_set(data + "/ks18-d4.json");
    BasisList bl = find_bases(ks);
    Verdict verdict = search_valuation(bl);
    double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    bool ok = bl.bases.size() == 9 && !verdict.colorable && sec < 1.0;

    for (size_t drop = 0; drop < bl.bases.size() && ok; ++drop) {
        BasisList reduced = bl;
        reduced.bases.erase(reduced.bases.begin() + drop);
        ok = search_valuation(reduced).colorable;
    }

    // solver verdict matches exhaustive enumeration on every bundled set
    for (const char* file : {"/standard-basis-d3.json", "/two-bases-d3.json", "/ks18-d4.json"}) {
        VectorSet vs = load_vector_set(data + file);
        if (vs.size() > 20) continue;
        BasisList b = find_bases(vs);
        if (b.bases.empty()) continue;
        ok = ok && search_valuation(b).colorable == oracle::brute_force_colorable(b);
    }
    std::ostringstream os;
    os << "9 bases, uncolorable in " << sec << " s (" << verdict.nodes_explored
       << " nodes); any single basis dropped -> colorable; matches brute force";
    detail = os.str();
    return ok;
}

}  // namespace

int main() {
    std::vector<Criterion> criteria = {
        {"C01 weyl ordering discrepancy (xp example, exact)", c01_weyl_ordering_discrepancy},
        {"C02 product-rule discrepancy reports (exact)", c02_ks2b_reports},
        {"C03 anti-Wick x^2 and p^2 (exact)", c03_antiwick_exact},
        {"C04 symbol round trips + symmetrization sum (exact)", c04_round_trips_and_permutation_sum},
        {"C05 weierstrass consistency (exact)", c05_weierstrass},
        {"C06 linearity of both quantization maps (exact)", c06_linearity},
        {"C07 fock backend: commutator + toeplitz checks", c07_fock_backend},
        {"C08 husimi expectation equals trace formula", c08_husimi_expectation_identity},
        {"C09 wigner of coherent projector is the gaussian", c09_wigner_gaussian},
        {"C10 position-projector symbol is the indicator", c10_projector_symbol},
        {"C11 narrow-gaussian toeplitz -> coherent projector", c11_delta_symbol_limit},
        {"C12 guidance-equation momentum counterexample", c12_bohmian},
        {"C13 18-vector set colorability", c13_ks_colorability},
    };

    int failed = 0;
    for (auto& criterion : criteria) {
        std::string detail;
        bool ok = false;
        try {
            ok = criterion.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        if (!ok) ++failed;
        std::printf("[%s] %s - %s\n", ok ? "PASS" : "FAIL", criterion.name.c_str(),
                    detail.c_str());
        std::fflush(stdout);
    }
    if (failed) std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    else std::printf("all %zu criteria passed\n", criteria.size());
    return failed == 0 ? 0 : 1;
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "stg/expr.hpp"

using namespace stg;
using doctest::Approx;

namespace {

const std::array<std::string, 4> kCoords = {"t", "r", "theta", "phi"};
const std::vector<std::string> kParams = {"k", "alpha"};

Expr parse(const std::string& s) { return Expr::parse(s, kCoords, kParams); }

const std::map<std::string, double> kP = {{"k", 2.0}, {"alpha", 1.0}};

// Grammar-directed random expression source, kept inside safe domains so
// finite differences stay meaningful: denominators and sqrt/ln arguments
// are bounded away from zero, trig arguments away from poles.
std::string random_expr(std::mt19937& rng, int depth) {
    std::uniform_real_distribution<double> dist(0.2, 2.5);
    auto leaf = [&]() -> std::string {
        switch (rng() % 6) {
            case 0: return "t";
            case 1: return "r";
            case 2: return "theta";
            case 3: return "phi";
            case 4: return "k";
            default: {
                char buf[32];
                std::snprintf(buf, sizeof(buf), "%.3f", dist(rng));
                return buf;
            }
        }
    };
    if (depth <= 0) return leaf();
    auto sub = [&] { return random_expr(rng, depth - 1); };
    switch (rng() % 14) {
        case 0: return "(" + sub() + " + " + sub() + ")";
        case 1: return "(" + sub() + " - " + sub() + ")";
        case 2: return "(" + sub() + "*" + sub() + ")";
        case 3: return "(" + sub() + "/(1 + (" + sub() + ")^2))";
        case 4: return "(-" + sub() + ")";
        case 5: return "sin(" + sub() + ")";
        case 6: return "cos(" + sub() + ")";
        case 7: return "tan(0.5*sin(" + sub() + "))";
        case 8: return "cot(1 + 0.5*sin(" + sub() + "))";
        case 9: return "tanh(" + sub() + ")";
        case 10: return "exp(sin(" + sub() + "))";
        case 11: return "ln(1 + (" + sub() + ")^2)";
        case 12: return "sqrt(1 + (" + sub() + ")^2)";
        default: return "(1 + (" + sub() + ")^2)^" + std::to_string(int(rng() % 3) + 2);
    }
}

}  // namespace

TEST_CASE("parse examples") {
    Expr zeta = parse("sqrt(1 - k/r)");
    CHECK(zeta.free_symbols() == std::set<std::string>{"r", "k"});
    CHECK(zeta.eval({0, 4, 0, 0}, kP) == Approx(std::sqrt(0.5)));

    Expr zero = parse("0");
    CHECK(zero.free_symbols().empty());
    CHECK(zero.eval({1, 2, 3, 4}, kP) == 0.0);

    Expr rs = parse("r*sin(theta)");
    CHECK(rs.free_symbols() == std::set<std::string>{"r", "theta"});
    CHECK(rs.eval({0, 2, 3.14159265358979323846 / 2, 0}, kP) == Approx(2.0));
}

TEST_CASE("precedence") {
    CHECK(parse("1-2-3").eval({0, 0, 0, 0}, kP) == -4.0);
    CHECK(parse("2^3^2").eval({0, 0, 0, 0}, kP) == 512.0);
    // ^ binds tighter than unary minus
    CHECK(parse("-r^2").eval({0, 3, 0, 0}, kP) == -9.0);
    CHECK(parse("2^-2").eval({0, 0, 0, 0}, kP) == 0.25);
    CHECK(parse("2*3 + 4/2").eval({0, 0, 0, 0}, kP) == 8.0);
    CHECK(parse("pi").eval({0, 0, 0, 0}, kP) == Approx(3.14159265358979));
}

TEST_CASE("jet evaluation examples") {
    // zeta = sqrt(1 - k/r) at r = 4, k = 2
    Expr zeta = parse("sqrt(1 - k/r)");
    Jet2 j = zeta.eval_jet({0, 4, 0, 0}, kP);
    CHECK(j.value == Approx(std::sqrt(0.5)));
    // d zeta / dr = k / (2 r^2 zeta)
    CHECK(j.grad[1] == Approx(2.0 / (2 * 16 * std::sqrt(0.5))));

    Jet2 c = parse("3").eval_jet({1, 1, 1, 1}, kP);
    CHECK(c.value == 3.0);
    for (double g : c.grad) CHECK(g == 0.0);
    for (double h : c.hess) CHECK(h == 0.0);

    Jet2 r2 = parse("r^2").eval_jet({0, 3, 0, 0}, kP);
    CHECK(r2.value == 9.0);
    CHECK(r2.grad[1] == 6.0);
    CHECK(r2.hess_at(1, 1) == 2.0);
}

TEST_CASE("errors carry location and symbol information") {
    CHECK_THROWS_AS(parse(""), ParseError);
    CHECK_THROWS_AS(parse("1 +"), ParseError);
    CHECK_THROWS_AS(parse("(1 + 2"), ParseError);
    CHECK_THROWS_AS(parse("sin 1"), ParseError);

    try {
        parse("r + foo*2");
        FAIL("expected UndeclaredSymbolError");
    } catch (const UndeclaredSymbolError& e) {
        CHECK(e.symbol == "foo");
    }

    // domain errors name the offending subexpression and point; the pole
    // check triggers on exact floating-point zeros of sin
    CHECK_THROWS_AS(parse("cot(theta)").eval({0, 0, 0.0, 0}, kP), EvalDomainError);
    CHECK_THROWS_AS(parse("1/(r - 4)").eval({0, 4, 0, 0}, kP), EvalDomainError);
    CHECK_THROWS_AS(parse("sqrt(1 - k/r)").eval({0, 1, 0, 0}, kP), EvalDomainError);
    CHECK_THROWS_AS(parse("ln(r - 5)").eval({0, 3, 0, 0}, kP), EvalDomainError);
    try {
        parse("r + 1/(r - 4)").eval_jet({0, 4, 0, 0}, kP);
        FAIL("expected EvalDomainError");
    } catch (const EvalDomainError& e) {
        CHECK(std::string(e.what()).find("r - 4") != std::string::npos);
    }
}

TEST_CASE("500 random expressions: round-trip fixpoint and jet vs finite differences") {
    std::mt19937 rng(20240817);
    std::uniform_real_distribution<double> coord(0.3, 1.7);

    int checked_points = 0;
    for (int i = 0; i < 500; ++i) {
        std::string src = random_expr(rng, 2 + int(rng() % 5));  // depth <= 6
        Expr e = parse(src);

        // print -> parse -> print is a fixpoint and structurally identical
        std::string printed = e.print();
        Expr re = parse(printed);
        CHECK(re.structurally_equal(e));
        CHECK(re.print() == printed);

        for (int pt = 0; pt < 10; ++pt) {
            std::array<double, 4> x;
            for (auto& v : x) v = coord(rng);
            Jet2 j;
            try {
                j = e.eval_jet(x, kP);
            } catch (const EvalDomainError&) {
                continue;  // generator keeps these rare
            }
            if (!std::isfinite(j.value) || std::abs(j.value) > 1e6) continue;
            // finite differences cannot resolve anything beyond these scales
            bool conditionable = true;
            for (double g : j.grad) conditionable = conditionable && std::abs(g) < 1e5;
            for (double h : j.hess) conditionable = conditionable && std::abs(h) < 1e6;
            if (!conditionable) continue;
            ++checked_points;

            // gradient vs central differences, h = 1e-5, with the stencil's
            // own roundoff/convergence error added to the tolerance
            bool conditioned = true;
            for (int mu = 0; mu < 4 && conditioned; ++mu) {
                auto stencil = [&](double h) {
                    auto xp = x, xm = x;
                    xp[mu] += h;
                    xm[mu] -= h;
                    return (e.eval(xp, kP) - e.eval(xm, kP)) / (2 * h);
                };
                double coarse, fine;
                try {
                    coarse = stencil(1e-5);
                    fine = stencil(5e-6);
                } catch (const EvalDomainError&) {
                    conditioned = false;
                    break;
                }
                double fd = (4 * fine - coarse) / 3;
                double fd_err = 2 * std::abs(fine - coarse) + 1e-10 * std::abs(j.value);
                double scale = std::max({1.0, std::abs(j.grad[mu]), std::abs(fd)});
                CHECK(std::abs(j.grad[mu] - fd) < 1e-5 * scale + fd_err);
            }
            if (!conditioned) continue;

            // Hessian vs central differences, h = 1e-4. The second-order
            // stencil carries O(h^2 f'''') truncation, so Richardson-combine
            // two step sizes and widen the tolerance by the stencil's own
            // measured convergence error.
            for (int mu = 0; mu < 4 && conditioned; ++mu) {
                for (int nu = mu; nu < 4 && conditioned; ++nu) {
                    auto stencil = [&](double h) {
                        if (mu == nu) {
                            auto xp = x, xm = x;
                            xp[mu] += h;
                            xm[mu] -= h;
                            return (e.eval(xp, kP) - 2 * e.eval(x, kP) + e.eval(xm, kP)) / (h * h);
                        }
                        auto xpp = x, xpm = x, xmp = x, xmm = x;
                        xpp[mu] += h; xpp[nu] += h;
                        xpm[mu] += h; xpm[nu] -= h;
                        xmp[mu] -= h; xmp[nu] += h;
                        xmm[mu] -= h; xmm[nu] -= h;
                        return (e.eval(xpp, kP) - e.eval(xpm, kP) - e.eval(xmp, kP) +
                                e.eval(xmm, kP)) /
                               (4 * h * h);
                    };
                    double coarse, fine;
                    try {
                        coarse = stencil(1e-4);
                        fine = stencil(5e-5);
                    } catch (const EvalDomainError&) {
                        conditioned = false;
                        break;
                    }
                    double fd = (4 * fine - coarse) / 3;
                    double fd_err = 4 * std::abs(fine - coarse) + 1e-7 * std::abs(j.value);
                    double scale = std::max({1.0, std::abs(j.hess_at(mu, nu)), std::abs(fd)});
                    CHECK(std::abs(j.hess_at(mu, nu) - fd) < 1e-3 * scale + fd_err);
                }
            }
        }
    }
    // the corpus must actually exercise the comparison
    CHECK(checked_points > 3000);
}

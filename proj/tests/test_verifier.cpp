#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "pdm/errors.hpp"
#include "pdm/models.hpp"
#include "pdm/verifier.hpp"

using namespace pdm;

namespace {

int sign_changes(const std::vector<double>& v) {
    int c = 0;
    double prev = 0.0;
    for (double x : v) {
        if (std::abs(x) < 1e-12) continue;
        if (prev != 0.0 && x * prev < 0.0) ++c;
        prev = x;
    }
    return c;
}

bool has_note(const VerificationReport& r, const std::string& needle) {
    return std::any_of(r.notes.begin(), r.notes.end(),
                       [&](const std::string& s) { return s.find(needle) != std::string::npos; });
}

const RealFunction zero = [](double) { return 0.0; };
const RealFunction harmonic = [](double x) { return 0.5 * x * x; };

}  // namespace

TEST_CASE("particle in a box") {
    TridiagonalOperator op = discretize_pdm(constant_mass(), zero, std::nullopt, Grid{0.0, M_PI, 2001});
    auto ev = lowest_eigenvalues(op, 3);
    for (int k = 1; k <= 3; ++k) CHECK(ev[k - 1] == doctest::Approx(0.5 * k * k).epsilon(1e-5));
    GridFunction v = eigenvector(op, ev[0]);
    CHECK(sign_changes(v.values) == 0);
    double peak = *std::max_element(v.values.begin(), v.values.end());
    for (std::size_t i = 0; i < v.values.size(); i += 97)
        CHECK(v.values[i] / peak == doctest::Approx(std::sin(v.x[i])).epsilon(1e-4));
}

TEST_CASE("small stencil") {
    TridiagonalOperator op = discretize_pdm(constant_mass(), zero, std::nullopt, Grid{0.0, 3.0, 4});
    REQUIRE(op.diagonal.size() == 2u);
    REQUIRE(op.off_diagonal.size() == 1u);
    CHECK(op.diagonal[0] == doctest::Approx(1.0));
    CHECK(op.diagonal[1] == doctest::Approx(1.0));
    CHECK(op.off_diagonal[0] == doctest::Approx(-0.5));
}

TEST_CASE("harmonic oscillator") {
    TridiagonalOperator op = discretize_pdm(constant_mass(), harmonic, std::nullopt, Grid{-12.0, 12.0, 4001});
    auto ev = lowest_eigenvalues(op, 3);
    for (int k = 0; k < 3; ++k) CHECK(std::abs(ev[k] - (k + 0.5)) <= 1e-4);
    CHECK(sign_changes(eigenvector(op, ev[1]).values) == 1);
    CHECK(sign_changes(eigenvector(op, ev[2]).values) == 2);
}

TEST_CASE("operator is symmetric and checks its input") {
    TridiagonalOperator op = discretize_pdm(tanh_mass(1.0), harmonic, std::nullopt, Grid{-3.0, 3.0, 101});
    CHECK(op.off_diagonal.size() + 1 == op.diagonal.size());
    for (double d : op.diagonal) CHECK(std::isfinite(d));
    CHECK_THROWS_AS(discretize_pdm(constant_mass(), [](double x) { return 1.0 / x; }, std::nullopt, Grid{-1.0, 1.0, 3}),
                    SingularityError);
    CHECK_THROWS_AS(discretize_pdm(constant_mass(), zero, std::nullopt, Grid{1.0, 0.0, 10}), ParameterError);
    CHECK_THROWS_AS(discretize_pdm(constant_mass(), zero, std::nullopt, Grid{0.0, 1.0, 2}), ParameterError);
}

TEST_CASE("lowest_eigenvalues") {
    TridiagonalOperator op;
    op.diagonal = {2, 2, 2};
    op.off_diagonal = {-1, -1};
    auto ev = lowest_eigenvalues(op, 3);
    CHECK(std::abs(ev[0] - (2 - std::sqrt(2.0))) <= 1e-12);
    CHECK(std::abs(ev[1] - 2.0) <= 1e-12);
    CHECK(std::abs(ev[2] - (2 + std::sqrt(2.0))) <= 1e-12);
    TridiagonalOperator one;
    one.diagonal = {5};
    CHECK(std::abs(lowest_eigenvalues(one, 1)[0] - 5.0) <= 5e-12);
    GridFunction v = eigenvector(one, 5.0);
    CHECK(v.values == std::vector<double>{1.0});
    CHECK_THROWS_AS(lowest_eigenvalues(op, 0), ParameterError);
    CHECK_THROWS_AS(lowest_eigenvalues(op, 4), ParameterError);
    TridiagonalOperator osc = discretize_pdm(constant_mass(), harmonic, std::nullopt, Grid{-8.0, 8.0, 801});
    auto two = lowest_eigenvalues(osc, 2);
    CHECK(two[0] < two[1]);
    CHECK(lowest_eigenvalues(osc, 2) == two);
}

TEST_CASE("eigenvector residual") {
    TridiagonalOperator op = discretize_pdm(rational_mass(2.0), harmonic, std::nullopt, Grid{-10.0, 10.0, 3001});
    double lam = lowest_eigenvalues(op, 2)[1];
    GridFunction v = eigenvector(op, lam);
    double r = 0.0, nv = 0.0;
    for (std::size_t i = 0; i < v.values.size(); ++i) {
        double t = (op.diagonal[i] - lam) * v.values[i];
        if (i > 0) t += op.off_diagonal[i - 1] * v.values[i - 1];
        if (i + 1 < v.values.size()) t += op.off_diagonal[i] * v.values[i + 1];
        r += t * t;
        nv += v.values[i] * v.values[i];
    }
    CHECK(std::sqrt(r) <= 1e-8);
    CHECK(nv == doctest::Approx(1.0));
}

TEST_CASE("residual_norm of an exact discrete eigenpair") {
    Grid g{-6.0, 6.0, 121};
    MassProfile m = lorentzian_mass(1.0, 1.0);
    TridiagonalOperator op = discretize_pdm(m, harmonic, std::nullopt, g);
    double lam = lowest_eigenvalues(op, 1)[0];
    GridFunction v = eigenfunction(op, lam);
    auto phi = [&](double x) {
        long i = std::lround((x - g.left) / g.spacing());
        if (i <= 0 || i >= g.points - 1) return 0.0;
        return v.values[static_cast<std::size_t>(i - 1)];
    };
    CHECK(residual_norm(m, harmonic, std::nullopt, g, phi, lam) <= 1e-12);
    CHECK_THROWS_AS(residual_norm(m, harmonic, std::nullopt, g, zero, lam), ParameterError);
}

TEST_CASE("hydrogen") {
    RealFunction coulomb = [](double r) { return -1.0 / r; };
    Grid g{1e-3, 60.0, 6000};
    TridiagonalOperator op = discretize_pdm(constant_mass(), coulomb, 0.0, g, 0.0);
    auto ev = lowest_eigenvalues(op, 2);
    CHECK(std::abs(ev[0] + 0.5) <= 1e-3 * 0.5);
    CHECK(std::abs(ev[1] + 0.125) <= 1e-3 * 0.125);
    auto phi = [](double r) { return r * std::exp(-r); };
    double r1 = residual_norm(constant_mass(), coulomb, 0.0, g, phi, -0.5);
    CHECK(r1 <= 1e-4);
    double r2 = residual_norm(constant_mass(), coulomb, 0.0, Grid{1e-3, 60.0, 11999}, phi, -0.5);
    CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("pass rule") {
    CHECK(level_passes(0.5, 1e-4, 10.0, 1e-3));
    CHECK_FALSE(level_passes(0.5, 2e-3, 10.0, 1e-3));
    CHECK(level_passes(5e-4, 0.1, 0.005, 1e-3));
    CHECK_FALSE(level_passes(5e-3, 0.1, 0.005, 1e-3));
}

TEST_CASE("constant-mass identity") {
    TargetModel m = make_model(CaseId::A1, {{"delta", 1}});
    VerificationReport r = verify_model(m, m.descriptor().default_grid, 3, {0}, 1e-3);
    CHECK(r.all_pass());
    REQUIRE(r.levels.size() == 4u);
    for (const auto& lv : r.levels) CHECK(std::abs(lv.E_numeric - lv.E_reference) <= 1e-6 * std::abs(lv.E_reference));
}

TEST_CASE("hydrogenic B1a agrees between solvers") {
    TargetModel m = make_model(CaseId::B1a, {{"kappa", 0}, {"l", 0}, {"C", 1}});
    VerificationReport r = verify_model(m, Grid{1e-3, 60.0, 6000}, 1, {0}, 1e-3);
    CHECK(r.all_pass());
    CHECK(r.levels[0].E_numeric == doctest::Approx(-0.5).epsilon(1e-3));
    CHECK(r.levels[0].E_reference == doctest::Approx(r.levels[0].E_numeric).epsilon(1e-5));
}

TEST_CASE("isospectrality of the one-dimensional cases") {
    for (CaseId id : {CaseId::A1, CaseId::A2, CaseId::A3}) {
        TargetModel m = make_model(id, {});
        VerificationReport r = verify_model(m, m.descriptor().default_grid, 3, {0}, 1e-3);
        CHECK(r.all_pass());
        for (const auto& lv : r.levels) {
            INFO(to_string(id), " n=", lv.n);
            double eps = m.energy(lv.n);
            CHECK(std::abs(lv.E_numeric - lv.E_reference) <= std::max(1e-3 * std::abs(eps), 1e-5));
        }
    }
}

TEST_CASE("lowest levels are bound where the grid covers them") {
    for (CaseId id : {CaseId::A1, CaseId::A3}) {
        TargetModel m = make_model(id, {});
        Grid g = m.descriptor().default_grid;
        auto V = [&m](double x) { return m.potential(x); };
        auto ev = lowest_eigenvalues(discretize_pdm(m.profile, V, std::nullopt, g, anchor_for(m, g)), 4);
        for (double e : ev) CHECK(e < 0.0);
    }
}

TEST_CASE("dirichlet node at r_min biases hydrogen") {
    RealFunction coulomb = [](double r) { return -1.0 / r; };
    auto ev = lowest_eigenvalues(discretize_pdm(constant_mass(), coulomb, 0.0, Grid{1e-3, 60.0, 6000}), 1);
    // shift of about u'(0)^2 r_min / 2 with u = 2 r exp(-r)
    CHECK(ev[0] + 0.5 == doctest::Approx(2e-3).epsilon(0.05));
}

TEST_CASE("discrepancy notes") {
    TargetModel a1 = make_model(CaseId::A1, {});
    VerificationReport r1 = verify_model(a1, a1.descriptor().default_grid, 3, {0}, 1e-3);
    CHECK(has_note(r1, "eq 24 prints"));
    CHECK(has_note(r1, "sigma printed"));
    TargetModel a3 = make_model(CaseId::A3, {});
    VerificationReport r3 = verify_model(a3, a3.descriptor().default_grid, 3, {0}, 1e-3);
    CHECK(has_note(r3, "m^(+1/4) prefactor of eq 31"));
    for (const auto& lv : r3.levels) CHECK(lv.E_printed != lv.E_construction);
}

TEST_CASE("support") {
    TargetModel m = make_model(CaseId::B1a, {});
    CHECK_THROWS_AS(verify_model(m, Grid{1e-3, 3.0, 800}, 2, {1}, 1e-3, VerifyOptions{true}), SupportError);
    VerificationReport r = verify_model(m, Grid{1e-3, 3.0, 800}, 2, {1}, 1e-3);
    CHECK(r.levels[2].oracle == "reference_numeric");
    CHECK_THROWS_AS(verify_model(m, Grid{-1.0, 3.0, 800}, 2, {1}, 1e-3), DomainError);
}

TEST_CASE("convergence") {
    std::vector<Grid> box{{0.0, M_PI, 501}, {0.0, M_PI, 1001}, {0.0, M_PI, 2001}};
    ConvergenceStudy s = convergence_study(constant_mass(), zero, std::nullopt, box, 0, 0.5);
    CHECK(s.order >= 1.9);
    CHECK(s.order <= 2.1);
    std::vector<Grid> same{{0.0, M_PI, 501}, {0.0, M_PI, 501}, {0.0, M_PI, 501}};
    CHECK_THROWS_AS(convergence_study(constant_mass(), zero, std::nullopt, same, 0, 0.5), ParameterError);
    CHECK_THROWS_AS(convergence_study(constant_mass(), zero, std::nullopt, {box[0], box[1]}, 0, 0.5), ParameterError);

    TargetModel a3 = make_model(CaseId::A3, {});
    std::vector<Grid> grids{{-9.0, 450.0, 6001}, {-9.0, 450.0, 12001}, {-9.0, 450.0, 24001}};
    ConvergenceStudy c = convergence_study(a3, grids, 0, 0);
    CHECK(c.error[1] < c.error[0]);
    CHECK(c.error[2] < c.error[1]);
}

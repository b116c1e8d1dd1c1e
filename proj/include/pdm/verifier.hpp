#pragma once

// Finite-difference oracle for H = -1/2 d/dx (1/m) d/dx + V.
//
// Radial mode uses H = -1/2 (phi'/m)' + [l(l+1)/(2 m r^2) - m'/(2 m^2 r) + V] phi.
// Expanding the radial effective-mass operator with u = r R gives exactly this
// flux form plus the diagonal -m'/(2 m^2 r); no first-derivative term is left
// over, so no similarity transform is needed.
//
// A finite domain edge below grid.left (r = 0, or r = 1 on the log cases) may be
// used as the Dirichlet node ("anchor") when it is within one spacing of the
// first grid point; the first cell is then shorter than the rest and the
// operator is symmetrised with the dual cell widths.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pdm/catalog.hpp"
#include "pdm/grid.hpp"
#include "pdm/models.hpp"

namespace pdm {

struct TridiagonalOperator {
    std::vector<double> diagonal;
    std::vector<double> off_diagonal;
    // positions and dual cell widths of the unknowns; empty for hand-built operators
    std::vector<double> nodes;
    std::vector<double> cells;
};

using RealFunction = std::function<double(double)>;

TridiagonalOperator discretize_pdm(const MassProfile& mass, const RealFunction& V, std::optional<double> l,
                                   const Grid& grid, std::optional<double> anchor = std::nullopt);

std::vector<double> lowest_eigenvalues(const TridiagonalOperator& op, int k);

// Unit-norm eigenvector of op at lambda (inverse iteration).
GridFunction eigenvector(const TridiagonalOperator& op, double lambda);

// Eigenvector mapped back to function values at the operator nodes.
GridFunction eigenfunction(const TridiagonalOperator& op, double lambda);

// ||(H - E) phi||_2 / ||phi||_2 on the interior nodes of a uniform grid, with
// the stencil fed by the actual phi values at both end nodes.
double residual_norm(const MassProfile& mass, const RealFunction& V, std::optional<double> l, const Grid& grid,
                     const RealFunction& phi, double E);

struct LevelRecord {
    int n = 0;
    int l = 0;
    double E_construction = 0.0;
    double E_printed = 0.0;
    double E_numeric = 0.0;
    double abs_err = 0.0;
    double rel_err = 0.0;
    double residual = 0.0;
    bool pass = false;
    double E_reference = 0.0;
    std::string oracle;
};

struct VerificationReport {
    std::string case_id;
    Grid grid;
    double tol = 1e-3;
    std::vector<LevelRecord> levels;
    std::vector<std::string> notes;
    std::string generated_by;

    bool all_pass() const;
};

inline constexpr const char* kGeneratedBy = "pdm-pct 1.0.0";

struct VerifyOptions {
    // throw SupportError instead of falling back to the mapped reference oracle
    bool strict_support = false;
};

// pass rule: rel_err <= tol, or abs_err <= tol when |E| < 1
bool level_passes(double abs_err, double rel_err, double reference_energy, double tol);

VerificationReport verify_model(const TargetModel& model, const Grid& grid, int n_max, const std::vector<int>& l_set,
                                double tol, const VerifyOptions& options = {});

// Lowest k eigenvalues of the constant-mass reference on [y_l, y_r].
std::vector<double> solve_reference(const ReferencePotential& ref, double lp, double y_l, double y_r, int points,
                                    int k);

struct ConvergenceStudy {
    std::vector<double> spacing;
    std::vector<double> error;
    std::vector<double> orders;  // between successive grids
    double order = 0.0;          // from the two finest grids
};

ConvergenceStudy convergence_study(const MassProfile& mass, const RealFunction& V, std::optional<double> l,
                                   const std::vector<Grid>& grids, int n, double exact,
                                   std::optional<double> anchor = std::nullopt);
ConvergenceStudy convergence_study(const TargetModel& model, const std::vector<Grid>& grids, int n, int l);

// Finite domain edge used as the Dirichlet node for this grid, if any.
std::optional<double> anchor_for(const TargetModel& model, const Grid& grid);

}  // namespace pdm

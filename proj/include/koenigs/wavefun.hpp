#pragma once

#include <vector>

#include "koenigs/model.hpp"

namespace koenigs::wavefun {

// Poschl-Teller eigenfunction on u in (0, pi/2):
//   Phi_n^{(a,b)}(u) = C (sin u)^{a+1/2} (cos u)^{b+1/2} P_n^{(a,b)}(cos 2u),
// normalized so that int_0^{pi/2} Phi^2 du = 1.
double angular_pt(int n, double a, double b, double u);

enum class RadialKind { rho, shifted_ho, coulomb };

struct RadialParams {
    // rho: radial harmonic oscillator, R ~ r^{lambda+1/2}, int R^2 dr = 1.
    double lambda = 0.0;
    double scale = 1.0; // s = m omega~ / hbar
    // shifted_ho: Hermite oscillator of full frequency omega_full = 2 omega~
    // centered at y_E, int psi^2 dy = 1.
    double omega_full = 2.0;
    double center = 0.0;
    double m = 1.0;
    double hbar = 1.0;
    // coulomb: two-dimensional radial factor ~ r^lambda (lambda above),
    // Bohr-type length a = hbar^2/(m alpha~), normalized on int R^2 r dr = 1.
    double a_bohr = 1.0;
};

double radial_basis(RadialKind kind, int n, const RadialParams& p, double r_or_y);

// Display grid; coord1 is r (KI, KIII) or x (KII), coord2 is the angle
// phi (KI: (0,pi/2), KIII: (0,pi)) or y (KII).  Samples sit at cell
// midpoints, so singular boundaries are never touched.
struct GridSpec {
    double c1_lo = 0.0, c1_hi = 8.0;
    int n1 = 64;
    double c2_lo = 0.0, c2_hi = 1.5707963267948966;
    int n2 = 64;

    bool operator==(const GridSpec&) const = default;
};

struct WavefunctionGrid {
    GridSpec grid;
    std::vector<double> values;   // row-major [i1 * n2 + i2]
    std::vector<double> f_weight; // metric at the sample points
    EnergyLevel level;
    double norm_estimate = 0.0;
    // Quadrature cache over the window (for norms and overlaps).
    std::vector<double> q1, q2;   // per-axis nodes
    std::vector<double> qpsi;     // normalized psi at tensor nodes
    std::vector<double> qwf;      // weight * jacobian * f at tensor nodes
};

// Evaluates the separated bound state at its own energy, then rescales so
// that the quadrature of |psi|^2 f dA over the window equals 1.
// Throws when more than 1e-8 of the probability sits in the outermost
// panels of an unbounded direction (window too small).
WavefunctionGrid assemble_and_normalize(const SpaceSpec& spec, const EnergyLevel& level,
                                        const GridSpec& grid, const SolverSettings& settings,
                                        bool parallel = true);

// f-weighted inner product of two states on identical grids, evaluated
// with the same panel rule (pairwise-summed, hence symmetric and
// thread-count independent).
double overlap(const WavefunctionGrid& g1, const WavefunctionGrid& g2,
               const SpaceSpec& spec);

} // namespace koenigs::wavefun

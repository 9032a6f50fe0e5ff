#pragma once

#include "core.hpp"

namespace tk {

struct AxiCoords {
    double x, y;
    int d;
};

struct GhzSymCoords {
    double x, y;
};

// Physical parameter ranges of the axisymmetric family.
struct AxiRanges {
    double y_lo, y_hi, x_lo, x_hi;
};
AxiRanges axi_ranges(int d);

DensityMatrix werner_state(double p);               // two qubits, p in [-1/3, 1]
DensityMatrix isotropic_state(double p, int d);     // p in [-1/(d^2-1), 1]
bool axi_physical(const AxiCoords& c, double tol = 1e-12);
DensityMatrix axi_state(const AxiCoords& c);        // rejects non-PSD coordinates
DensityMatrix ghzsym_state(const GhzSymCoords& c);  // rejects points outside the triangle

bool ghzsym_physical(const GhzSymCoords& c, double tol = 1e-12);

AxiCoords axi_twirl(const DensityMatrix& rho);
double isotropic_twirl(const DensityMatrix& rho);  // recovers p from the Psi_d fidelity
GhzSymCoords ghzsym_twirl(const DensityMatrix& rho);

// negativity (exact), concurrence (exact, x >= 0 only), schmidt_number
MeasureReport axi_exact(const AxiCoords& c);
int axi_schmidt_number(const AxiCoords& c);

enum class GhzSymClass { Separable, Biseparable, W, GHZ };
const char* ghzsym_class_name(GhzSymClass c);
GhzSymClass ghzsym_classify(const GhzSymCoords& c);

// Point on the GHZ-W boundary curve, v in [0, 1].
std::pair<double, double> ghzsym_wcurve(double v);

// Linear interpolant along the pencil of lines through the GHZ+ corner,
// without the zero clamp: negative below the GHZ-W curve.  tau3 is the
// clamped value.  Defined on the whole physical triangle (|x| symmetry).
double ghzsym_tau3_interpolant(const GhzSymCoords& c);
double ghzsym_tau3(const GhzSymCoords& c);
double ghzsym_gme_concurrence(const GhzSymCoords& c);
double ghzsym_negativity_exact(const GhzSymCoords& c);    // equals direct PT
double ghzsym_negativity_printed(const GhzSymCoords& c);  // stored for comparison

// tau3, gme_concurrence, negativity (all exact; negativity from the direct form)
MeasureReport ghzsym_exact(const GhzSymCoords& c);

}  // namespace tk

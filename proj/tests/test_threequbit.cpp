#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "tanglekit/bipartite.hpp"
#include "tanglekit/core.hpp"
#include "tanglekit/invariants.hpp"
#include "tanglekit/multipartite.hpp"
#include "tanglekit/symfam.hpp"
#include "tanglekit/threequbit.hpp"

using namespace tk;
using doctest::Approx;

namespace {

constexpr double kR3 = 1.7320508075688772;
// zero of the GHZ-W superposition tangle at phi = 0
const double kP0 = 4.0 * std::cbrt(2.0) / (3.0 + 4.0 * std::cbrt(2.0));

AcinParams random_acin(Rng& rng) {
    double l[5];
    double s = 0.0;
    for (double& v : l) {
        v = rng.next_double() + 0.05;
        s += v * v;
    }
    s = std::sqrt(s);
    for (double& v : l) v /= s;
    return AcinParams(l[0], l[1], l[2], l[3], l[4], std::numbers::pi * rng.next_double());
}

GhzSymCoords random_family_point(Rng& rng) {
    const double y_lo = -1.0 / (4.0 * kR3);
    const double y = y_lo + (1.0 / (4.0 * kR3) + kR3 / 4.0) * rng.next_double();
    const double mu = kR3 * y / 2.0 + 0.125;
    const double x = (2.0 * rng.next_double() - 1.0) * mu;
    return GhzSymCoords{x, y};
}

DensityMatrix ghz_noise_mix(double p) {
    Mat rho = p * (ghz(3).a * ghz(3).a.adjoint()) + (1.0 - p) / 8.0 * Mat::Identity(8, 8);
    return DensityMatrix::trusted(rho, {2, 2, 2});
}

PureState ghz_minus() {
    Vec v = Vec::Zero(8);
    v(0) = 1.0 / std::sqrt(2.0);
    v(7) = -1.0 / std::sqrt(2.0);
    return PureState(v, {2, 2, 2});
}

}  // namespace

TEST_CASE("canonical three-qubit form and its measures") {
    const double r = 1.0 / std::sqrt(2.0);
    AcinParams ghz_form(r, 0.0, 0.0, 0.0, r, 0.0);
    CHECK((ghz_form.state().a - ghz(3).a).norm() <= 1e-14);
    AcinMeasures gm = acin_measures(ghz_form);
    CHECK(gm.tau3 == Approx(1.0).epsilon(1e-12));
    CHECK(gm.c_ab == Approx(0.0).epsilon(1e-12));
    CHECK(gm.c_ac == Approx(0.0).epsilon(1e-12));
    CHECK(gm.c_bc == Approx(0.0).epsilon(1e-12));
    CHECK(gm.c_a_bc == Approx(1.0).epsilon(1e-12));

    AcinMeasures zero = acin_measures(AcinParams(1.0, 0.0, 0.0, 0.0, 0.0, 0.0));
    CHECK(zero.tau3 == Approx(0.0).epsilon(1e-12));
    CHECK(zero.c_a_bc == Approx(0.0).epsilon(1e-12));

    CHECK_THROWS_AS(AcinParams(0.8, -0.6, 0.0, 0.0, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(AcinParams(0.5, 0.5, 0.5, 0.0, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(AcinParams(1.0, 0.0, 0.0, 0.0, 0.0, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(AcinParams(1.0, 0.0, 0.0, 0.0, 0.0, 3.2), std::invalid_argument);

    // closed forms against direct evaluation on the constructed state
    Rng rng(6101);
    for (int t = 0; t < 50; ++t) {
        AcinParams p = random_acin(rng);
        AcinMeasures m = acin_measures(p);  // also exercises the internal cross-check
        const PureState psi = p.state();
        CHECK(m.tau3 * m.tau3 == Approx(residual_tangle(psi)).epsilon(1e-9));
        CHECK(m.tau3 == Approx(tau3(psi)).epsilon(1e-10));
        CHECK(m.c_ab == Approx(pairwise_concurrence(psi, 0, 1)).epsilon(1e-10));
        CHECK(m.c_ac == Approx(pairwise_concurrence(psi, 0, 2)).epsilon(1e-10));
        CHECK(m.c_bc == Approx(pairwise_concurrence(psi, 1, 2)).epsilon(1e-10));
        CHECK(m.c_a_bc == Approx(i_concurrence(psi, {0})).epsilon(1e-10));
        CHECK(m.c_a_bc * m.c_a_bc + 1e-12 >=
              m.tau3 * m.tau3 + m.c_ab * m.c_ab + m.c_ac * m.c_ac);
    }
}

TEST_CASE("pure-state class assignment") {
    CHECK(pure_class3(ghz(3)) == Class3::GHZ);
    CHECK(pure_class3(wstate(3)) == Class3::W);
    CHECK(pure_class3(ghzw_superposition(kP0, 0.0)) == Class3::W);

    PureState zero1(Vec::Unit(2, 0), {2});
    CHECK(pure_class3(tensor_product(zero1, bell())) == Class3::BisepA_BC);
    PureState bell_last = tensor_product(bell(), zero1);
    CHECK(pure_class3(bell_last) == Class3::BisepC_AB);
    CHECK(pure_class3(permute_parties(bell_last, {0, 2, 1})) == Class3::BisepB_AC);

    Rng rng(6202);
    PureState prod = tensor_product(tensor_product(random_pure_state({2}, rng),
                                                   random_pure_state({2}, rng)),
                                    random_pure_state({2}, rng));
    CHECK(pure_class3(prod) == Class3::Separable);

    for (int t = 0; t < 20; ++t) {
        // generic canonical-form states carry a nonzero tangle
        CHECK(pure_class3(random_acin(rng).state()) == Class3::GHZ);
    }

    // the class is a SLOCC invariant: local invertible filters never move it
    const std::vector<PureState> bases = {
        ghz(3), wstate(3), tensor_product(zero1, bell()), bell_last, prod};
    Rng slrng(6210);
    for (const PureState& base : bases) {
        const Class3 expect = pure_class3(base);
        int kept = 0;
        for (int t = 0; t < 200; ++t) {
            LocalOperator a = random_local_sl({2, 2, 2}, slrng);
            PureState filtered = apply_local_operator(base, a, true).state;
            kept += pure_class3(filtered) == expect;
        }
        CHECK(kept == 200);
    }

    CHECK(class3_name(Class3::GHZ) == "GHZ");
    CHECK(class3_name(Class3::W) == "W");
    CHECK(class3_name(Class3::BisepA_BC) == "A-BC");
    CHECK(class3_name(Class3::BisepB_AC) == "B-AC");
    CHECK(class3_name(Class3::BisepC_AB) == "C-AB");
    CHECK(class3_name(Class3::Separable) == "separable");

    CHECK_THROWS_AS(pure_class3(bell()), std::invalid_argument);
    CHECK_THROWS_AS(pure_class3(ghz(4)), std::invalid_argument);
}

TEST_CASE("GHZ-W superposition tangle") {
    CHECK(ghzw_superposition_tangle(1.0, 0.0) == Approx(1.0).epsilon(1e-12));
    CHECK(ghzw_superposition_tangle(1.0, 2.7) == Approx(1.0).epsilon(1e-12));
    CHECK(ghzw_superposition_tangle(0.0, 1.3) == Approx(0.0).epsilon(1e-12));

    // the phi = 0 zero sits at p = 4 cbrt(2) / (3 + 4 cbrt(2))
    CHECK(ghzw_superposition_tangle(kP0, 0.0) <= 1e-9);
    CHECK(ghzw_superposition_tangle(kP0 + 1e-3, 0.0) > 1e-6);
    // at phi = pi both terms add
    CHECK(ghzw_superposition_tangle(kP0, std::numbers::pi) ==
          Approx(2.0 * kP0 * kP0).epsilon(1e-12));
    CHECK(ghzw_superposition_tangle(kP0, std::numbers::pi) == Approx(0.785884).epsilon(1e-5));

    // closed form matches the residual tangle of the built superposition
    for (double p : {0.1, 0.3, 0.5, 0.7, 0.9, 1.0}) {
        for (double phi : {0.0, std::numbers::pi / 3.0, 2.0, std::numbers::pi}) {
            CHECK(ghzw_superposition_tangle(p, phi) ==
                  Approx(residual_tangle(ghzw_superposition(p, phi))).epsilon(1e-10));
            // the phase enters only through 3*phi
            CHECK(ghzw_superposition_tangle(p, phi) ==
                  Approx(ghzw_superposition_tangle(p, phi + 2.0 * std::numbers::pi / 3.0))
                      .epsilon(1e-12));
        }
    }

    CHECK_THROWS_AS(ghzw_superposition_tangle(-0.1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(ghzw_superposition_tangle(1.1, 0.0), std::invalid_argument);
}

TEST_CASE("entanglement witnesses") {
    CHECK(make_witness(WitnessKind::Proj2Qubit).name == "two-qubit projection");
    CHECK(make_witness(WitnessKind::GhzProj).name == "GHZ projection");
    CHECK(make_witness(WitnessKind::GhzOpt).name == "GHZ improved");

    CHECK(witness_value(dm(bell()), WitnessKind::Proj2Qubit) == Approx(-0.5).epsilon(1e-12));
    DensityMatrix white4 = DensityMatrix::trusted(Mat::Identity(4, 4) / 4.0, {2, 2});
    CHECK(witness_value(white4, WitnessKind::Proj2Qubit) == Approx(0.25).epsilon(1e-12));
    PureState up_down(Vec::Unit(4, 1), {2, 2});
    CHECK(witness_value(dm(up_down), WitnessKind::Proj2Qubit) == Approx(0.5).epsilon(1e-12));

    DensityMatrix white8 = DensityMatrix::trusted(Mat::Identity(8, 8) / 8.0, {2, 2, 2});
    CHECK(witness_value(dm(ghz(3)), WitnessKind::GhzProj) == Approx(-0.25).epsilon(1e-12));
    CHECK(witness_value(white8, WitnessKind::GhzProj) == Approx(0.625).epsilon(1e-12));
    CHECK(witness_value(dm(wstate(3)), WitnessKind::GhzProj) == Approx(0.75).epsilon(1e-12));
    CHECK(witness_value(dm(ghz_minus()), WitnessKind::GhzProj) == Approx(0.75).epsilon(1e-12));

    CHECK(witness_value(dm(ghz(3)), WitnessKind::GhzOpt) == Approx(-0.25).epsilon(1e-12));
    CHECK(witness_value(dm(ghz_minus()), WitnessKind::GhzOpt) ==
          Approx(0.75 - 3.0 / 7.0).epsilon(1e-12));
    CHECK(witness_value(white8, WitnessKind::GhzOpt) == Approx(4.0 / 7.0).epsilon(1e-12));

    // closed forms on the GHZ-symmetric family
    Rng rng(6303);
    for (int t = 0; t < 100; ++t) {
        GhzSymCoords c = random_family_point(rng);
        const double mu = kR3 * c.y / 2.0 + 0.125;
        DensityMatrix rho = ghzsym_state(c);
        CHECK(witness_value(rho, WitnessKind::GhzProj) ==
              Approx(0.75 - mu - c.x).epsilon(1e-12));
        CHECK(witness_value(rho, WitnessKind::GhzOpt) ==
              Approx(0.75 - 10.0 * mu / 7.0 - 4.0 * c.x / 7.0).epsilon(1e-12));
    }

    // the improved witness detects a strict superset of the projection witness
    const int n = 200;
    int both = 0, only_opt = 0, only_proj = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            GhzSymCoords c{-0.5 + (i + 0.5) / n,
                           -1.0 / (4.0 * kR3) +
                               (1.0 / (4.0 * kR3) + kR3 / 4.0) * (j + 0.5) / n};
            if (!ghzsym_physical(c)) continue;
            DensityMatrix rho = ghzsym_state(c);
            const bool dp = witness_value(rho, WitnessKind::GhzProj) < 0.0;
            const bool io = witness_value(rho, WitnessKind::GhzOpt) < 0.0;
            both += dp && io;
            only_opt += io && !dp;
            only_proj += dp && !io;
        }
    }
    CHECK(both + only_proj == 1250);
    CHECK(both + only_opt == 2188);
    CHECK(only_opt == 938);
    CHECK(only_proj == 0);

    CHECK_THROWS_AS(witness_value(white8, WitnessKind::Proj2Qubit), std::invalid_argument);
    CHECK_THROWS_AS(witness_value(white4, WitnessKind::GhzProj), std::invalid_argument);
}

TEST_CASE("witness-based tangle bound") {
    CHECK(tau3_witness_bound(dm(ghz(3))) == Approx(1.0).epsilon(1e-12));
    // the off-diagonal sign ambiguity is resolved, so the minus state scores too
    CHECK(tau3_witness_bound(dm(ghz_minus())) == Approx(1.0).epsilon(1e-12));
    CHECK(tau3_witness_bound(ghz_noise_mix(0.9)) == Approx(25.7 / 7.0 - 3.0).epsilon(1e-12));
    DensityMatrix white8 = DensityMatrix::trusted(Mat::Identity(8, 8) / 8.0, {2, 2, 2});
    CHECK(tau3_witness_bound(white8) == Approx(0.0).epsilon(1e-12));
    CHECK(tau3_witness_bound(dm(wstate(3))) == Approx(0.0).epsilon(1e-12));

    // never exceeds the exact family tangle
    Rng rng(6404);
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
        GhzSymCoords c = random_family_point(rng);
        worst = std::max(worst, tau3_witness_bound(ghzsym_state(c)) - ghzsym_tau3(c));
    }
    CHECK(worst <= 1e-12);

    CHECK_THROWS_AS(tau3_witness_bound(dm(bell())), std::invalid_argument);
}

TEST_CASE("mixed-state tangle lower bound") {
    BoundValue pure_ghz = tau3_mixed_lower_bound(dm(ghz(3)));
    CHECK(pure_ghz.kind == BoundKind::Lower);
    CHECK(pure_ghz.value == Approx(1.0).epsilon(1e-9));

    CHECK(tau3_mixed_lower_bound(dm(wstate(3))).value <= 1e-8);

    const double exact_mix = 0.671546712185;  // family tangle of the p = 0.9 mixture
    CHECK(tau3_mixed_lower_bound(ghz_noise_mix(0.9)).value == Approx(exact_mix).epsilon(1e-6));

    // a local-unitary rotation must not hide the tangle
    Rng rng(6505);
    LocalOperator u = random_local_unitary({2, 2, 2}, rng);
    DensityMatrix rotated = apply_local_operator(ghz_noise_mix(0.9), u, false).state;
    CHECK(tau3_mixed_lower_bound(rotated).value == Approx(exact_mix).epsilon(1e-5));

    // family points: pipeline reproduces the exact value and never overshoots
    for (int t = 0; t < 20; ++t) {
        GhzSymCoords c = random_family_point(rng);
        const double exact = ghzsym_tau3(c);
        const double got = tau3_mixed_lower_bound(ghzsym_state(c)).value;
        CHECK(std::abs(got - exact) <= 1e-6);
        CHECK(got <= exact + 1e-9);
    }

    // seeded runs are reproducible
    DensityMatrix probe = ghz_noise_mix(0.8);
    CHECK(tau3_mixed_lower_bound(probe, 11).value == tau3_mixed_lower_bound(probe, 11).value);

    CHECK_THROWS_AS(tau3_mixed_lower_bound(dm(bell())), std::invalid_argument);
}

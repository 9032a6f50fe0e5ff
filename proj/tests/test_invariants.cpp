#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "tanglekit/bipartite.hpp"
#include "tanglekit/invariants.hpp"

using namespace tk;
using doctest::Approx;

namespace {

bool near_c(cx a, cx b, double tol = 1e-12) { return std::abs(a - b) <= tol; }

PureState frozen4() {
    Rng s = Rng(777).split(3);
    return random_pure_state({2, 2, 2, 2}, s);
}

PureState raw_table_state(double lam0000, double lam1111, double lamDicke) {
    Vec v = lamDicke * dicke(4, 2).a;
    v(0) += lam0000;
    v(15) += lam1111;
    return PureState(v, {2, 2, 2, 2}, true);
}

}  // namespace

TEST_CASE("three-qubit residual tangle") {
    CHECK(residual_tangle(ghz(3)) == Approx(1.0).epsilon(1e-12));
    CHECK(tau3(ghz(3)) == Approx(1.0).epsilon(1e-12));
    CHECK(residual_tangle(wstate(3)) <= 1e-12);
    CHECK(tau3(wstate(3)) <= 1e-6);

    // coefficient form and antilinear comb form agree
    Rng r(83);
    for (int t = 0; t < 200; ++t) {
        PureState psi = random_pure_state({2, 2, 2}, r);
        CHECK(std::abs(residual_tangle(psi) - residual_tangle_comb(psi)) < 1e-12);
    }

    // canonical-form route: tau3 = 2 l0 l4
    struct Acin {
        double l0, l1, l2, l3, l4, phi;
    };
    for (const Acin& a : {Acin{0.7, 0.1, 0.2, 0.3, std::sqrt(1.0 - 0.63), 0.4},
                          Acin{0.6, 0.0, 0.4, 0.2, std::sqrt(1.0 - 0.56), 0.0},
                          Acin{1.0 / std::sqrt(2.0), 0.0, 0.0, 0.0, 1.0 / std::sqrt(2.0), 0.0}}) {
        PureState psi = acin_state(a.l0, a.l1, a.l2, a.l3, a.l4, a.phi);
        CHECK(tau3(psi) == Approx(2.0 * a.l0 * a.l4).epsilon(1e-10));
    }

    // single-contraction expectation reaches 1 on GHZ at every position
    for (int a = 0; a < 3; ++a) CHECK(std::abs(b_degree4(ghz(3), a)) == Approx(1.0).epsilon(1e-12));

    // degree-4 homogeneity in the amplitudes
    PureState psi = random_pure_state({2, 2, 2}, std::uint64_t{19});
    PureState scaled(1.3 * psi.a, psi.dims, true);
    CHECK(residual_tangle(scaled) == Approx(std::pow(1.3, 4) * residual_tangle(psi)).epsilon(1e-12));

    // invariant under local SL filtering after weight compensation
    Rng rs(89);
    for (int t = 0; t < 10; ++t) {
        PureState p = random_pure_state({2, 2, 2}, rs);
        ApplyResult<PureState> fs = apply_local_operator(p, random_local_sl({2, 2, 2}, rs), true);
        CHECK(residual_tangle(fs.state) * fs.weight * fs.weight ==
              Approx(residual_tangle(p)).epsilon(1e-8));
    }
}

TEST_CASE("comb expectations") {
    // two-qubit completeness relation with the (-,+,+) metric on {0,1,3}
    Rng r(97);
    for (int t = 0; t < 100; ++t) {
        PureState psi = random_pure_state({2, 2}, r);
        const cx e0 = comb_expectation(psi, {0, 2});
        const cx e1 = comb_expectation(psi, {1, 2});
        const cx e3 = comb_expectation(psi, {3, 2});
        CHECK(std::abs(-e0 * e0 + e1 * e1 + e3 * e3) < 1e-12);
    }
    CHECK(std::abs(comb_expectation(bell(), {2, 2})) == Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(comb_expectation(bell(), {2, 2, 2}), std::invalid_argument);
    CHECK_THROWS_AS(comb_expectation(bell(), {4, 2}), std::invalid_argument);
}

TEST_CASE("four-qubit generators on the frozen fixture") {
    PureState psi = frozen4();
    REQUIRE(near_c(psi.a(0), cx(-0.0640784806487525, -7.39757682740451155e-03), 1e-12));
    REQUIRE(near_c(psi.a(15), cx(0.10270408794201415, -2.65760732602098426e-01), 1e-12));

    FourQubitGenerators g = four_qubit_generators(psi);
    CHECK(near_c(g.h, cx(0.07846991149007976, -0.38572708110926623)));
    CHECK(near_c(g.l, cx(0.009991908706792686, -0.005314430725537685)));
    CHECK(near_c(g.m, cx(-0.001290762092731738, 0.018274075427934074)));
    CHECK(near_c(g.n, cx(-0.008701146614060951, -0.012959644702396389)));
    CHECK(near_c(g.b12, cx(-0.2611940064330807, -0.560275461913229)));
    CHECK(near_c(g.b13, cx(0.15646103104184444, 0.06178748380179726)));
    CHECK(near_c(g.b14, cx(-0.32315058688420417, 0.31688015862760605)));

    FilterInvariants f = filters(psi);
    CHECK(near_c(f.f1, cx(0.1352780957398094, -0.07255046274623371)));
    CHECK(near_c(f.f2, cx(-0.02015851113962259, 0.037209320249349684)));
    CHECK(near_c(f.f3, cx(0.01745567914662185, 0.015781442470289408)));

    CHECK(near_c(hyperdeterminant4(psi),
                 cx(4.1886595164246127e-10, -1.1617866139274909e-10), 1e-15));
}

TEST_CASE("four-qubit generator identities") {
    Rng r(101);
    for (int t = 0; t < 100; ++t) {
        PureState psi = random_pure_state({2, 2, 2, 2}, r);
        FourQubitGenerators g = four_qubit_generators(psi);

        CHECK(std::abs(g.l + g.m + g.n) < 1e-12);
        CHECK(near_c(g.l, (g.b13 - g.b14) / 48.0));
        CHECK(near_c(g.m, (g.b14 - g.b12) / 48.0));
        CHECK(near_c(g.n, (g.b12 - g.b13) / 48.0));
        CHECK(near_c(g.h * g.h, (g.b12 + g.b13 + g.b14) / 3.0));

        const cx detAB = partial_trace(dm(psi), {0, 1}).m.determinant();
        const cx detAC = partial_trace(dm(psi), {0, 2}).m.determinant();
        const cx detAD = partial_trace(dm(psi), {0, 3}).m.determinant();
        CHECK(std::norm(g.l) == Approx(detAB.real()).epsilon(1e-10));
        CHECK(std::norm(g.m) == Approx(detAC.real()).epsilon(1e-10));
        CHECK(std::norm(g.n) == Approx(detAD.real()).epsilon(1e-10));

        // h equals the length-4 all-sigma2 comb
        CHECK(near_c(g.h, h_even(psi)));
    }

    FourQubitGenerators ghz4 = four_qubit_generators(ghz(4));
    CHECK(near_c(filters(ghz(4)).f1, cx(-1.0, 0.0)));
    CHECK(std::abs(ghz4.w) < 1e-12);
    CHECK(std::abs(ghz4.h - 1.0) < 1e-12);
}

TEST_CASE("symmetric-state table rows") {
    CHECK(std::abs(four_qubit_generators(dicke(4, 0)).h) < 1e-14);
    CHECK(std::abs(filters(dicke(4, 0)).f1) < 1e-14);
    CHECK(std::abs(four_qubit_generators(dicke(4, 1)).h) < 1e-14);
    CHECK(std::abs(filters(dicke(4, 1)).f1) < 1e-14);
    CHECK(near_c(four_qubit_generators(dicke(4, 2)).h, cx(1.0, 0.0)));
    CHECK(near_c(filters(dicke(4, 2)).f1, cx(-5.0 / 9.0, 0.0)));

    // double contraction at (0, j) reproduces h^2 = 1 on the middle Dicke state
    for (int j = 1; j < 4; ++j)
        CHECK(near_c(b_degree4(dicke(4, 2), 0, j), cx(1.0, 0.0)));

    // unnormalized table representative |0000> + D4(2)
    PureState raw = raw_table_state(1.0, 0.0, 1.0);
    CHECK(raw.a.squaredNorm() == Approx(2.0));
    CHECK(near_c(four_qubit_generators(raw, true).h, cx(1.0, 0.0)));
    CHECK(near_c(filters(raw).f1, cx(-5.0 / 9.0, 0.0), 1e-11));

    // the same row evaluated on the normalized state, scaled back by the
    // amplitude degrees (h: 2, f1: 6)
    PureState unit(raw.a / raw.a.norm(), raw.dims);
    const double n2 = raw.a.squaredNorm();
    CHECK(near_c(four_qubit_generators(unit).h, cx(0.5, 0.0)));
    CHECK(near_c(filters(unit).f1, cx(-0.069444444444444, 0.0), 1e-11));
    CHECK(near_c(four_qubit_generators(unit).h * n2, four_qubit_generators(raw, true).h));
    CHECK(near_c(filters(unit).f1 * std::pow(n2, 3), filters(raw).f1, 1e-10));

    // |0000> + |1111> + lam D4(2), evaluated raw
    struct Row {
        double lam, h, f1;
    };
    for (const Row& row : {Row{0.0, 2.0, -8.0}, Row{0.5, 2.25, -7.717013888889},
                           Row{1.0, 3.0, -15.888888888889}}) {
        PureState x = raw_table_state(1.0, 1.0, row.lam);
        CAPTURE(row.lam);
        CHECK(near_c(four_qubit_generators(x, true).h, cx(row.h, 0.0), 1e-10));
        CHECK(near_c(filters(x).f1, cx(row.f1, 0.0), 1e-9));
    }

    CHECK_THROWS_AS(four_qubit_generators(raw_table_state(1.0, 1.0, 0.5)),
                    std::invalid_argument);
}

TEST_CASE("filters vanish on biseparable states") {
    Rng r(103);
    std::vector<std::vector<int>> cuts = {{0}, {1}, {2}, {3}, {0, 1}, {0, 2}, {0, 3}};
    for (const auto& cut : cuts) {
        for (int t = 0; t < 5; ++t) {
            Dims da, db;
            std::vector<int> order(cut);
            for (int q = 0; q < 4; ++q)
                if (std::find(cut.begin(), cut.end(), q) == cut.end()) order.push_back(q);
            for (std::size_t i = 0; i < cut.size(); ++i) da.push_back(2);
            for (std::size_t i = cut.size(); i < 4; ++i) db.push_back(2);
            PureState prod = tensor_product(random_pure_state(da, r), random_pure_state(db, r));
            // order currently lists cut parties first; invert to scatter back
            std::vector<int> inv(4);
            for (int q = 0; q < 4; ++q) inv[order[q]] = q;
            PureState psi = permute_parties(prod, inv);
            FilterInvariants f = filters(psi);
            CAPTURE(cut[0]);
            CHECK(std::abs(f.f1) < 1e-9);
            CHECK(std::abs(f.f2) < 1e-9);
            CHECK(std::abs(f.f3) < 1e-9);
        }
    }
}

TEST_CASE("hyperdeterminant special values") {
    CHECK(std::abs(hyperdeterminant4(ghz(4))) < 1e-14);
    CHECK(std::abs(hyperdeterminant4(cluster4())) < 1e-14);
    CHECK(std::abs(hyperdeterminant4(wstate(4))) < 1e-14);
    CHECK(std::abs(hyperdeterminant4(dicke(4, 2))) < 1e-14);
    Rng r(107);
    PureState prod = tensor_product(random_pure_state({2}, r),
                                    random_pure_state({2, 2, 2}, r));
    CHECK(std::abs(hyperdeterminant4(prod)) < 1e-14);
    // the only generic member: |Det(X4)| = 2^-8 3^-9
    const double want = std::pow(2.0, -8) * std::pow(3.0, -9);
    CHECK(std::abs(std::abs(hyperdeterminant4(xstate4())) - want) < 1e-15);
}

TEST_CASE("degree-2 and degree-4 families for more qubits") {
    CHECK(std::abs(b_sym(wstate(5))) < 1e-12);
    CHECK(near_c(b_sym(ghz(5)), cx(5.0, 0.0)));
    for (int a = 0; a < 5; ++a) CHECK(near_c(b_degree4(ghz(5), a), cx(1.0, 0.0)));
    CHECK(std::abs(h_even(ghz(6)) - cx(-1.0, 0.0)) < 1e-12);  // (i sigma_y)^6 phase

    CHECK_THROWS_AS(h_even(ghz(3)), std::invalid_argument);
    CHECK_THROWS_AS(b_degree4(ghz(4), 0), std::invalid_argument);
    CHECK_THROWS_AS(b_degree4(ghz(3), 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(b_degree4(ghz(3), 3), std::invalid_argument);
    CHECK_THROWS_AS(b_degree4(ghz(4), 1, 1), std::invalid_argument);
}

TEST_CASE("bloch tensor and minkowski length") {
    BlochData bd = bloch_minkowski(dm(bell()));
    CHECK(bd.mink_len2 == Approx(4.0).epsilon(1e-12));
    CHECK(bd.purity == Approx(1.0).epsilon(1e-12));
    CHECK(bd.tensor[0] == Approx(1.0).epsilon(1e-12));

    Rng r(109);
    for (int t = 0; t < 20; ++t) {
        PureState v = random_pure_state({2}, r);
        Mat m = 0.6 * (v.a * v.a.adjoint()) + 0.4 * Mat::Identity(2, 2) / 2.0;
        DensityMatrix rho(m, {2});
        BlochData b1 = bloch_minkowski(rho);
        CHECK(b1.mink_len2 == Approx(rho.m.determinant().real()).epsilon(1e-10));
        CHECK(b1.purity == Approx(purity(rho)).epsilon(1e-12));
    }

    PureState a = random_pure_state({2, 2}, std::uint64_t{11});
    CHECK(concurrence_from_correlations(a) == Approx(pure_concurrence2(a)).epsilon(1e-10));
    Rng s = Rng(101).split(0);
    PureState pa = random_pure_state({2, 2}, s);
    CHECK(concurrence_from_correlations(pa) == Approx(0.5384577190699342).epsilon(1e-10));
    CHECK(concurrence_from_correlations(pa) == Approx(std::abs(h_even(pa))).epsilon(1e-10));
}

TEST_CASE("ghz-w superposition tangle zeros") {
    const double p0 = 0.6268510148499474;
    CHECK(residual_tangle(ghzw_superposition(p0, 0.0)) < 1e-12);
    CHECK(residual_tangle(ghzw_superposition(p0, 3.141592653589793)) ==
          Approx(0.785884).epsilon(1e-5));
    CHECK(residual_tangle(ghzw_superposition(1.0, 0.0)) == Approx(1.0).epsilon(1e-12));
    CHECK(residual_tangle(ghzw_superposition(0.0, 0.0)) < 1e-12);
}
